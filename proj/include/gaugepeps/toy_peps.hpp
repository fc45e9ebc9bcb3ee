#ifndef GAUGEPEPS_TOY_PEPS_HPP
#define GAUGEPEPS_TOY_PEPS_HPP

#include <memory>

#include "gaugepeps/hilbert.hpp"
#include "gaugepeps/lattice.hpp"
#include "gaugepeps/operator_builder.hpp"

namespace gaugepeps {

// Bosonic toy PEPS with Kronecker-delta site tensors A^p_{ruld} enforcing
// r+u = l+d+p, built densely as a cross-check of the four-step gauging
// recipe.  Matter charges live on vertices (clock of dimension 2J+1 holding
// Q eigenvalues -J..J); the gauged version adds a Z_N clock per link.
class ToyPeps {
 public:
  ToyPeps(LatticeGeometry geom, int j, int j_phys, int n);

  const LatticeGeometry& geometry() const { return geom_; }

  std::shared_ptr<const HilbertSpace> matter_space() const { return matter_space_; }
  std::shared_ptr<const HilbertSpace> gauged_space() const { return gauged_space_; }

  // Globally invariant |psi_0> (matter only) and the gauged |psi>.
  StateVector psi0() const;
  StateVector psi_gauged() const;

  // || e^{i lambda sum_x Q(x)} |psi0> - |psi0> || / || |psi0> ||
  double global_invariance_defect(const StateVector& psi0, double lambda) const;
  // || e^{i lambda G(x)} |psi> - |psi> || / || |psi> ||
  double gauss_invariance_defect(const StateVector& psi, Vertex x, double lambda) const;

  int matter_charge(std::int64_t basis, int vertex_index) const;
  int gauss_value(std::int64_t basis, Vertex v) const;  // on the gauged space

 private:
  LatticeGeometry geom_;
  int j_;       // virtual truncation: leg values -j..j
  int j_phys_;  // physical charge cutoff
  int n_;       // Z_N link dimension (>= 2j+1)
  std::shared_ptr<const HilbertSpace> matter_space_;
  std::shared_ptr<const HilbertSpace> gauged_space_;

  template <typename F>
  void for_each_virtual_config(F&& f) const;
};

}  // namespace gaugepeps

#endif
