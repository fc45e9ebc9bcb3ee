#include "doctest.h"
#include "gaugepeps/lattice.hpp"

using namespace gaugepeps;

TEST_CASE("parity of staggered vertices") {
  const LatticeGeometry g(3, 3, Boundary::open);
  CHECK(g.parity({0, 0}) == +1);
  CHECK(g.parity({1, 0}) == -1);
  CHECK(g.parity({1, 1}) == +1);
  CHECK(g.parity({2, 1}) == -1);
  CHECK_THROWS(g.parity({3, 0}));
}

TEST_CASE("link counts per boundary") {
  CHECK(LatticeGeometry(2, 2, Boundary::torus).n_links() == 8);
  CHECK(LatticeGeometry(2, 2, Boundary::open).n_links() == 4);
  CHECK(LatticeGeometry(3, 2, Boundary::open).n_links() == 7);
  CHECK(LatticeGeometry(4, 1, Boundary::open).n_links() == 3);  // chain
  CHECK(LatticeGeometry(3, 3, Boundary::torus).n_links() == 18);
}

TEST_CASE("star links") {
  const LatticeGeometry torus(2, 2, Boundary::torus);
  auto star = torus.star_links({0, 0});
  REQUIRE(star.size() == 4);
  CHECK(star[0].second == +1);
  CHECK(star[1].second == +1);
  CHECK(star[2].second == -1);
  CHECK(star[3].second == -1);

  const LatticeGeometry open(2, 2, Boundary::open);
  auto corner = open.star_links({0, 0});
  REQUIRE(corner.size() == 2);
  CHECK(corner[0].second == +1);
  CHECK(corner[1].second == +1);
  auto far = open.star_links({1, 1});
  REQUIRE(far.size() == 2);
  CHECK(far[0].second == -1);
  CHECK(far[1].second == -1);
}

TEST_CASE("star signs cancel pairwise on the torus") {
  const LatticeGeometry g(3, 2, Boundary::torus);
  std::vector<int> sum(g.n_links(), 0);
  std::vector<int> count(g.n_links(), 0);
  for (int vi = 0; vi < g.n_vertices(); ++vi) {
    for (const auto& [l, s] : g.star_links(g.vertex_at(vi))) {
      sum[g.link_index(l)] += s;
      ++count[g.link_index(l)];
    }
  }
  for (int l = 0; l < g.n_links(); ++l) {
    CHECK(sum[l] == 0);
    CHECK(count[l] == 2);
  }
}

TEST_CASE("parity alternates along both axes") {
  const LatticeGeometry g(4, 3, Boundary::open);
  for (int y = 0; y < 3; ++y) {
    for (int x = 0; x + 1 < 4; ++x) {
      CHECK(g.parity({x, y}) == -g.parity({x + 1, y}));
    }
  }
  for (int x = 0; x < 4; ++x) {
    for (int y = 0; y + 1 < 3; ++y) {
      CHECK(g.parity({x, y}) == -g.parity({x, y + 1}));
    }
  }
}

TEST_CASE("rectangle loops") {
  const LatticeGeometry g(3, 3, Boundary::open);
  const OrientedPath p = g.rectangle_loop({0, 0}, 1, 1);
  CHECK(p.closed);
  CHECK(p.steps.size() == 4);
  CHECK(p.steps[0].forward);
  CHECK(p.steps[2].forward == false);

  CHECK(g.rectangle_loop({0, 0}, 2, 1).steps.size() == 6);
  CHECK_THROWS(g.rectangle_loop({1, 1}, 2, 2));

  // Wrapping loop on the torus is fine.
  const LatticeGeometry t(2, 2, Boundary::torus);
  CHECK(t.rectangle_loop({1, 1}, 2, 2).steps.size() == 8);
}

TEST_CASE("closed rectangle paths return to the start") {
  const LatticeGeometry g(4, 4, Boundary::torus);
  const OrientedPath p = g.rectangle_loop({1, 2}, 2, 1);
  Vertex v{1, 2};
  for (const PathStep& s : p.steps) {
    if (s.forward) {
      CHECK(g.vertex_index(s.link.origin) == g.vertex_index(v));
      v = g.link_target(s.link);
    } else {
      CHECK(g.vertex_index(g.link_target(s.link)) == g.vertex_index(v));
      v = s.link.origin;
    }
  }
  CHECK(v == Vertex{1, 2});
}
