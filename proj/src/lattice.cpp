#include "gaugepeps/lattice.hpp"

namespace gaugepeps {

LatticeGeometry::LatticeGeometry(int width, int height, Boundary boundary)
    : width_(width), height_(height), boundary_(boundary) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("lattice dimensions must be positive");
  }
  link_lookup_.assign(2 * width_ * height_, -1);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      const Vertex v{x, y};
      for (Direction d : {Direction::d1, Direction::d2}) {
        Vertex t = v;
        if (d == Direction::d1) ++t.x; else ++t.y;
        if (!wrap(t)) continue;
        if (t == v) continue;  // width/height 1 with wrap-around
        link_lookup_[lookup_slot(v, d)] = static_cast<int>(links_.size());
        links_.push_back(LinkId{v, d});
      }
    }
  }
}

int LatticeGeometry::vertex_index(Vertex v) const {
  if (!contains(v)) throw std::out_of_range("vertex outside lattice");
  return v.y * width_ + v.x;
}

Vertex LatticeGeometry::vertex_at(int index) const {
  if (index < 0 || index >= n_vertices()) {
    throw std::out_of_range("vertex index out of range");
  }
  return Vertex{index % width_, index / width_};
}

int LatticeGeometry::parity(Vertex v) const {
  if (!contains(v)) throw std::out_of_range("vertex outside lattice");
  return ((v.x + v.y) % 2 == 0) ? +1 : -1;
}

bool LatticeGeometry::wrap(Vertex& v) const {
  if (v.x < 0 || v.x >= width_) {
    if (!periodic_x()) return false;
    v.x = ((v.x % width_) + width_) % width_;
  }
  if (v.y < 0 || v.y >= height_) {
    if (!periodic_y()) return false;
    v.y = ((v.y % height_) + height_) % height_;
  }
  return true;
}

bool LatticeGeometry::link_exists(LinkId l) const {
  if (!contains(l.origin)) return false;
  return link_lookup_[lookup_slot(l.origin, l.dir)] >= 0;
}

int LatticeGeometry::link_index(LinkId l) const {
  if (!contains(l.origin)) throw std::out_of_range("link origin outside lattice");
  const int idx = link_lookup_[lookup_slot(l.origin, l.dir)];
  if (idx < 0) throw std::out_of_range("link absent on open boundary");
  return idx;
}

Vertex LatticeGeometry::link_target(LinkId l) const {
  (void)link_index(l);
  Vertex t = l.origin;
  if (l.dir == Direction::d1) ++t.x; else ++t.y;
  wrap(t);
  return t;
}

std::vector<std::pair<LinkId, int>> LatticeGeometry::star_links(Vertex v) const {
  if (!contains(v)) throw std::out_of_range("vertex outside lattice");
  std::vector<std::pair<LinkId, int>> star;
  for (Direction d : {Direction::d1, Direction::d2}) {
    const LinkId out{v, d};
    if (link_exists(out)) star.emplace_back(out, +1);
  }
  for (Direction d : {Direction::d1, Direction::d2}) {
    Vertex o = v;
    if (d == Direction::d1) --o.x; else --o.y;
    if (!wrap(o)) continue;
    const LinkId in{o, d};
    if (link_exists(in)) star.emplace_back(in, -1);
  }
  return star;
}

OrientedPath LatticeGeometry::rectangle_loop(Vertex corner, int w, int h) const {
  if (w < 1 || h < 1) throw std::invalid_argument("rectangle sides must be positive");
  if (!contains(corner)) throw std::out_of_range("corner outside lattice");
  // Every traversed link must exist; on open boundaries the far corner must
  // stay inside the lattice.
  OrientedPath path;
  path.closed = true;
  Vertex v = corner;
  auto advance = [&](Direction d, int sign) {
    Vertex o = v;
    if (sign < 0) {  // backward step: the link originates at the shifted vertex
      if (d == Direction::d1) --o.x; else --o.y;
      if (!wrap(o)) throw std::out_of_range("rectangle exceeds lattice");
    }
    const LinkId l{o, d};
    if (!link_exists(l)) throw std::out_of_range("rectangle exceeds lattice");
    path.steps.push_back(PathStep{l, sign > 0});
    v = o;
    if (sign > 0) v = link_target(l);
  };
  for (int i = 0; i < w; ++i) advance(Direction::d1, +1);
  for (int i = 0; i < h; ++i) advance(Direction::d2, +1);
  for (int i = 0; i < w; ++i) advance(Direction::d1, -1);
  for (int i = 0; i < h; ++i) advance(Direction::d2, -1);
  return path;
}

}  // namespace gaugepeps
