#ifndef GAUGEPEPS_EXACT_ENGINE_HPP
#define GAUGEPEPS_EXACT_ENGINE_HPP

#include <memory>
#include <vector>

#include "gaugepeps/hilbert.hpp"
#include "gaugepeps/lattice.hpp"
#include "gaugepeps/operator_builder.hpp"

namespace gaugepeps {

struct HamiltonianParams {
  double mass = 0.0;      // M
  double hopping = 0.0;   // epsilon
  double coupling = 1.0;  // g, used by the Kogut-Susskind terms
};

enum class HamiltonianKind { h_f, h_f_gauged, h_ks, full };

// Dense-state model of staggered fermions on vertices coupled to Z_N gauge
// fields on links.  The factor order is: one fermion per vertex in row-major
// order, then one clock per link in link-index order.
class GaugedModel {
 public:
  GaugedModel(LatticeGeometry geom, int n,
              std::int64_t dim_cap = hilbert_dim_cap());

  const LatticeGeometry& geometry() const { return geom_; }
  int modulus() const { return n_; }
  std::shared_ptr<const HilbertSpace> space() const { return space_; }

  int fermion_factor(Vertex v) const { return geom_.vertex_index(v); }
  int link_factor(int link_index) const { return geom_.n_vertices() + link_index; }
  int link_factor(LinkId l) const { return link_factor(geom_.link_index(l)); }

  TermList hamiltonian_terms(const HamiltonianParams& p, HamiltonianKind kind) const;
  SparseOp build_hamiltonian(const HamiltonianParams& p, HamiltonianKind kind) const;

  // Staggered charge Q(x) = n(x) - (1 - (-1)^x)/2 of a basis state.
  int staggered_charge(std::int64_t basis, Vertex v) const;
  // Integer Gauss eigenvalue sum(signed E) - Q(x) of a basis state.
  int gauss_value(std::int64_t basis, Vertex v) const;

  SparseOp gauss_operator(Vertex v) const;  // diagonal in this basis

  // Controlled shift raising the link's electric field by psi^dag psi at the
  // link's origin; exactly unitary.
  SparseOp gauging_unitary(LinkId l) const;

  // Nonlocal 1D gauging: sets every link field to the staggered charge
  // accumulated to its left.  Requires an open chain geometry.
  SparseOp gauging_unitary_1d() const;

  // Projects onto the joint Gauss eigenspace with eigenvalues q(x) mod N.
  // q is indexed by vertex; an empty sector yields the zero vector.
  StateVector sector_project(const StateVector& state,
                             const std::vector<int>& q) const;

  StateVector basis_state(const std::vector<int>& occupations,
                          const std::vector<int>& link_values) const;
  StateVector vacuum() const;

 private:
  LatticeGeometry geom_;
  int n_;
  std::shared_ptr<const HilbertSpace> space_;

  TermList hopping_terms(const HamiltonianParams& p, int link_index, bool gauged) const;
  TermList mass_terms(const HamiltonianParams& p) const;
};

struct TrotterSchedule {
  std::vector<std::vector<int>> groups;  // link indices, disjoint vertices per group
};

// Groups links by direction and origin-coordinate parity (the standard
// four-coloring of the square lattice).
TrotterSchedule default_schedule(const LatticeGeometry& geom);

// Throws if two links within one group share a vertex.
void validate_schedule(const LatticeGeometry& geom, const TrotterSchedule& s);

// Symmetric (Strang) product of gauged link evolutions
// U_G(l) exp(-i H_l dt) U_G^dag(l); every factor commutes with all Gauss
// operators, so each step conserves the Gauss eigenvalues exactly.
class TrotterEvolver {
 public:
  TrotterEvolver(const GaugedModel& model, const HamiltonianParams& p,
                 TrotterSchedule schedule);

  StateVector evolve(const StateVector& state, double t, int n_steps) const;
  Eigen::MatrixXcd step_operator(double dt) const;

 private:
  const GaugedModel& model_;
  TrotterSchedule schedule_;
  std::vector<Eigen::MatrixXcd> link_evals_;  // cached eigensystems per link
  std::vector<Eigen::VectorXd> link_eigs_;

  void apply_link_exp(Eigen::VectorXcd& amps, int link, double dt) const;
};

// exp(scale * H) |state> through a dense Hermitian eigendecomposition.
StateVector evolve_exact(const GaugedModel& model, const SparseOp& hamiltonian,
                         const StateVector& state, cdouble scale);

}  // namespace gaugepeps

#endif
