#include "gaugepeps/toy_peps.hpp"

#include <cmath>
#include <stdexcept>

namespace gaugepeps {

ToyPeps::ToyPeps(LatticeGeometry geom, int j, int j_phys, int n)
    : geom_(std::move(geom)), j_(j), j_phys_(j_phys), n_(n) {
  if (j < 0 || j_phys < 0) throw std::invalid_argument("truncations must be >= 0");
  if (n < 2 * j + 1) throw std::invalid_argument("Z_N link space too small for the legs");
  if (!(geom_.periodic_x() && geom_.periodic_y())) {
    throw std::invalid_argument("toy PEPS is built on a torus");
  }
  std::vector<Factor> matter;
  for (int v = 0; v < geom_.n_vertices(); ++v) {
    matter.push_back({FactorKind::clock, 2 * j_phys + 1, "Q" + std::to_string(v)});
  }
  matter_space_ = std::make_shared<HilbertSpace>(matter);
  std::vector<Factor> gauged = matter;
  for (int l = 0; l < geom_.n_links(); ++l) {
    gauged.push_back({FactorKind::clock, n_, "link" + std::to_string(l)});
  }
  gauged_space_ = std::make_shared<HilbertSpace>(gauged);
}

int ToyPeps::matter_charge(std::int64_t basis, int vertex_index) const {
  return gauged_space_->local(basis, vertex_index) - j_phys_;
}

int ToyPeps::gauss_value(std::int64_t basis, Vertex v) const {
  int g = -matter_charge(basis, geom_.vertex_index(v));
  for (const auto& [link, sign] : geom_.star_links(v)) {
    const int idx = geom_.n_vertices() + geom_.link_index(link);
    g += sign * efield_value(gauged_space_->local(basis, idx), n_);
  }
  return g;
}

template <typename F>
void ToyPeps::for_each_virtual_config(F&& f) const {
  const int nl = geom_.n_links();
  const int d = 2 * j_ + 1;
  std::vector<int> v(nl, 0);  // leg value + j
  std::int64_t total = 1;
  for (int l = 0; l < nl; ++l) total *= d;
  for (std::int64_t c = 0; c < total; ++c) {
    std::int64_t rem = c;
    for (int l = 0; l < nl; ++l) {
      v[l] = static_cast<int>(rem % d) - j_;
      rem /= d;
    }
    f(v);
  }
}

StateVector ToyPeps::psi0() const {
  StateVector psi(matter_space_);
  const int nv = geom_.n_vertices();
  for_each_virtual_config([&](const std::vector<int>& legs) {
    // p(x) = r + u - l - d from the adjacent link values.
    std::int64_t basis = 0;
    for (int vi = 0; vi < nv; ++vi) {
      int p = 0;
      for (const auto& [link, sign] : geom_.star_links(geom_.vertex_at(vi))) {
        p += sign * legs[geom_.link_index(link)];
      }
      if (std::abs(p) > j_phys_) return;
      basis = matter_space_->replace_local(basis, vi, p + j_phys_);
    }
    psi.amps()[basis] += 1.0;
  });
  psi.normalize();
  return psi;
}

StateVector ToyPeps::psi_gauged() const {
  StateVector psi(gauged_space_);
  const int nv = geom_.n_vertices();
  const int nl = geom_.n_links();
  for_each_virtual_config([&](const std::vector<int>& legs) {
    std::int64_t basis = 0;
    for (int vi = 0; vi < nv; ++vi) {
      int p = 0;
      for (const auto& [link, sign] : geom_.star_links(geom_.vertex_at(vi))) {
        p += sign * legs[geom_.link_index(link)];
      }
      if (std::abs(p) > j_phys_) return;
      basis = gauged_space_->replace_local(basis, vi, p + j_phys_);
    }
    // Gauging copies each virtual leg value onto its link's field.
    for (int l = 0; l < nl; ++l) {
      basis = gauged_space_->replace_local(basis, nv + l, ((legs[l] % n_) + n_) % n_);
    }
    psi.amps()[basis] += 1.0;
  });
  psi.normalize();
  return psi;
}

double ToyPeps::global_invariance_defect(const StateVector& psi0, double lambda) const {
  StateVector rotated = psi0;
  for (std::int64_t b = 0; b < matter_space_->dim(); ++b) {
    int q_total = 0;
    for (int vi = 0; vi < geom_.n_vertices(); ++vi) {
      q_total += matter_space_->local(b, vi) - j_phys_;
    }
    rotated.amps()[b] *= std::polar(1.0, lambda * q_total);
  }
  return (rotated.amps() - psi0.amps()).norm() / psi0.amps().norm();
}

double ToyPeps::gauss_invariance_defect(const StateVector& psi, Vertex x,
                                        double lambda) const {
  StateVector rotated = psi;
  for (std::int64_t b = 0; b < gauged_space_->dim(); ++b) {
    rotated.amps()[b] *= std::polar(1.0, lambda * gauss_value(b, x));
  }
  return (rotated.amps() - psi.amps()).norm() / psi.amps().norm();
}

}  // namespace gaugepeps
