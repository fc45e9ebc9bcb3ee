#ifndef GAUGEPEPS_COVARIANCE_HPP
#define GAUGEPEPS_COVARIANCE_HPP

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "gaugepeps/hilbert.hpp"

namespace gaugepeps {

// A fermionic mode operator label: a_mode or a_mode^dag.
struct FermiOp {
  int mode = 0;
  bool dagger = false;
};

// Fermionic Gaussian state in the Majorana representation.  Mode k carries
// the Majorana pair gamma_{2k} = a_k + a_k^dag, gamma_{2k+1} = i(a_k -
// a_k^dag), and Gamma_{pq} = (i/2) <[gamma_p, gamma_q]> of the normalized
// state.  log_norm accumulates the log of the true amplitude scale so norms
// survive long contraction chains without under/overflow.
class CovarianceState {
 public:
  static CovarianceState vacuum(int n_modes);
  // State exp(sum_ij T_ij a_i^dag b_j^dag)|Omega> with modes ordered
  // [a_0..a_{na-1}, b_0..b_{nb-1}]; log_norm records the normalization.
  static CovarianceState from_pairing(const Eigen::MatrixXcd& t);
  // Same state with the a/b modes placed at the listed positions of an
  // n_modes-mode register (remaining modes stay in the vacuum).
  static CovarianceState from_pairing_placed(int n_modes, const Eigen::MatrixXcd& t,
                                             const std::vector<int>& am,
                                             const std::vector<int>& bm);
  static CovarianceState zero(int n_modes);

  int n_modes() const { return n_modes_; }
  bool is_zero() const { return zero_; }
  const Eigen::MatrixXd& gamma() const { return gamma_; }
  double log_norm() const { return log_norm_; }
  void scale_log_norm(double delta) { log_norm_ += delta; }

  // Phase e^{i angle} on the mode's creation operator (an SO(2) rotation of
  // its Majorana pair); log_norm unchanged.
  void rotate_mode(int mode, double angle);

  CovarianceState tensor(const CovarianceState& other) const;

  // Contracts the listed modes against the bond state (bond mode i pairs
  // with modes[i]) and removes them.  A singular contraction kernel yields
  // the zero state, signalling an orthogonal projection.
  CovarianceState project_pair(const std::vector<int>& modes,
                               const CovarianceState& bond) const;
  CovarianceState project_pair(const std::vector<int>& modes_a,
                               const std::vector<int>& modes_b,
                               const CovarianceState& bond) const;

  double norm_squared() const;
  cdouble two_point(FermiOp o1, FermiOp o2) const;
  cdouble four_point(const std::array<FermiOp, 4>& ops) const;
  double occupation(int mode) const;

  double antisymmetry_defect() const;
  double purity_defect() const;  // ||Gamma Gamma^T - 1||_max

 private:
  CovarianceState(Eigen::MatrixXd gamma, double log_norm)
      : n_modes_(static_cast<int>(gamma.rows() / 2)),
        gamma_(std::move(gamma)),
        log_norm_(log_norm) {}

  static CovarianceState from_z(const Eigen::MatrixXcd& z);

  // <gamma_p gamma_q> = delta_pq - i Gamma_pq.
  cdouble majorana_two_point(int p, int q) const;

  int n_modes_ = 0;
  Eigen::MatrixXd gamma_;
  double log_norm_ = 0.0;
  bool zero_ = false;
};

}  // namespace gaugepeps

#endif
