#ifndef GAUGEPEPS_LATTICE_HPP
#define GAUGEPEPS_LATTICE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gaugepeps {

// Coordinates are (column, row), origin at the lower-left corner.
// Direction 1 points along +x, direction 2 along +y.
struct Vertex {
  int x = 0;
  int y = 0;
  bool operator==(const Vertex&) const = default;
};

enum class Boundary { open, periodic_x, periodic_y, torus };

enum class Direction : int { d1 = 1, d2 = 2 };

struct LinkId {
  Vertex origin;
  Direction dir = Direction::d1;
  bool operator==(const LinkId&) const = default;
};

// One step of an oriented path: a link traversed forward or backward.
struct PathStep {
  LinkId link;
  bool forward = true;
};

struct OrientedPath {
  std::vector<PathStep> steps;
  bool closed = false;
};

class LatticeGeometry {
 public:
  LatticeGeometry(int width, int height, Boundary boundary);

  int width() const { return width_; }
  int height() const { return height_; }
  Boundary boundary() const { return boundary_; }

  int n_vertices() const { return width_ * height_; }
  int n_links() const { return static_cast<int>(links_.size()); }

  bool periodic_x() const {
    return boundary_ == Boundary::periodic_x || boundary_ == Boundary::torus;
  }
  bool periodic_y() const {
    return boundary_ == Boundary::periodic_y || boundary_ == Boundary::torus;
  }

  bool contains(Vertex v) const {
    return v.x >= 0 && v.x < width_ && v.y >= 0 && v.y < height_;
  }

  // Row-major vertex indexing; this order also fixes the fermionic mode order
  // used everywhere (Jordan-Wigner strings follow it).
  int vertex_index(Vertex v) const;
  Vertex vertex_at(int index) const;

  // (-1)^(x1+x2), the staggering sign of the vertex.
  int parity(Vertex v) const;

  // Wraps a coordinate according to the boundary conditions.  Returns false
  // if the coordinate leaves an open direction.
  bool wrap(Vertex& v) const;

  bool link_exists(LinkId l) const;
  int link_index(LinkId l) const;
  LinkId link_at(int index) const { return links_.at(index); }
  const std::vector<LinkId>& links() const { return links_; }

  // Endpoint of a link (wrapped); link must exist.
  Vertex link_target(LinkId l) const;

  // The links entering the Gauss operator at v: outgoing links (v,1),(v,2)
  // with sign +1, ingoing (v-e1,1),(v-e2,2) with sign -1.  Absent links on
  // open boundaries are omitted.
  std::vector<std::pair<LinkId, int>> star_links(Vertex v) const;

  // Counterclockwise rectangle of size w x h with the given lower-left
  // corner.  Throws if the rectangle does not fit the lattice.
  OrientedPath rectangle_loop(Vertex corner, int w, int h) const;

  bool is_chain() const { return height_ == 1 && boundary_ == Boundary::open; }

 private:
  int width_;
  int height_;
  Boundary boundary_;
  std::vector<LinkId> links_;
  std::vector<int> link_lookup_;  // (vertex, dir) -> link index or -1

  int lookup_slot(Vertex v, Direction d) const {
    return 2 * (v.y * width_ + v.x) + (d == Direction::d1 ? 0 : 1);
  }
};

}  // namespace gaugepeps

#endif
