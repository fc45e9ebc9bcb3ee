#ifndef GAUGEPEPS_OPERATOR_BUILDER_HPP
#define GAUGEPEPS_OPERATOR_BUILDER_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "gaugepeps/hilbert.hpp"

namespace gaugepeps {

using SparseOp = Eigen::SparseMatrix<cdouble>;

// One elementary factor of an operator product.  Products act right-to-left.
struct OpFactor {
  enum class Kind {
    create,          // a^dag on a fermion factor (JW string applied)
    annihilate,      // a on a fermion factor
    number,          // a^dag a (no string)
    majorana_c,      // a + a^dag on a fermion factor (JW string applied)
    spin_raise,      // sigma_+ on a spin factor (no string)
    spin_lower,      // sigma_- on a spin factor
    spin_number,     // sigma_+ sigma_-
    clock_shift,     // U^k: |j> -> |j+k mod N| on a clock factor
    clock_efield,    // E: diagonal j in the symmetric window
    clock_efield_sq, // E^2
    clock_proj,      // |k><k|
    clock_phase,     // exp(i theta E), diagonal phase with symmetric-window E
    minus_one_pow_e, // (-1)^j, diagonal; requires even N for Z2 consistency
  };
  Kind kind;
  int factor = 0;      // index into the Hilbert space factor list
  int k = 0;           // shift amount / projector value
  double theta = 0.0;  // phase angle for clock_phase
};

struct Term {
  cdouble coeff{1.0, 0.0};
  std::vector<OpFactor> factors;
  // Set by transformation pipelines that have already resolved fermionic
  // ordering; consumed by the hardcore substitution guard.
  bool statistics_resolved = false;
};

using TermList = std::vector<Term>;

// Symmetric-window electric eigenvalue of clock index j: values in
// floor(-N/2) .. ceil(N/2)-1.
int efield_value(int j, int n);

TermList adjoint(const TermList& terms);
TermList operator+(const TermList& a, const TermList& b);
TermList operator*(cdouble c, const TermList& t);

// Applies one term to a basis state.  Returns false if annihilated.
bool apply_term(const HilbertSpace& space, const Term& term, std::int64_t basis,
                std::int64_t& out_basis, cdouble& out_amp);

SparseOp build_sparse(const HilbertSpace& space, const TermList& terms);
Eigen::MatrixXcd build_dense(const HilbertSpace& space, const TermList& terms);

StateVector apply(const TermList& terms, const StateVector& in);

double frobenius_commutator(const SparseOp& a, const SparseOp& b);
double max_abs(const SparseOp& a);

bool is_hermitian(const Eigen::MatrixXcd& m, double tol = 1e-12);

}  // namespace gaugepeps

#endif
