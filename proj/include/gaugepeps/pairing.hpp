#ifndef GAUGEPEPS_PAIRING_HPP
#define GAUGEPEPS_PAIRING_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "gaugepeps/hilbert.hpp"

namespace gaugepeps {

// Phase-exact companion of CovarianceState: the state is kept in the
// exponential form  exp(log_coeff) * exp(1/2 a^dag^T Z a^dag) |Omega>.
// Used where amplitudes (with their phases) are needed, e.g. the exact Z_N
// contraction of the gauged fPEPS.
class PairingState {
 public:
  static PairingState vacuum(int n_modes);
  // Normalized exp(sum T_ij a_i^dag b_j^dag)|Omega>, modes [a..., b...].
  static PairingState from_pairing(const Eigen::MatrixXcd& t);
  static PairingState from_pairing_placed(int n_modes, const Eigen::MatrixXcd& t,
                                          const std::vector<int>& am,
                                          const std::vector<int>& bm);

  int n_modes() const { return static_cast<int>(z_.rows()); }
  bool is_zero() const { return zero_; }
  const Eigen::MatrixXcd& z() const { return z_; }
  cdouble log_coeff() const { return log_coeff_; }

  void rotate_mode(int mode, double angle);
  void scale(cdouble log_factor) { log_coeff_ += log_factor; }
  PairingState tensor(const PairingState& other) const;

  // Contracts the listed modes against <bond| (bond mode i pairs with
  // modes[i]); the bond is given as a ket PairingState.  Fails over to the
  // zero state when the contraction kernel is singular; breakdown==true
  // signals that the exponential form broke down (the caller should fall
  // back to a dense route) rather than a genuinely zero result.
  PairingState project(const std::vector<int>& modes, const PairingState& bond,
                       bool* breakdown = nullptr) const;

  double norm_squared() const;
  // Amplitude of the ascending-ordered occupied set.
  cdouble amplitude(const std::vector<int>& occupied_modes) const;
  // All 2^n amplitudes, bit m of the index = occupation of mode m.
  Eigen::VectorXcd amplitudes() const;

 private:
  PairingState(Eigen::MatrixXcd z, cdouble log_coeff)
      : z_(std::move(z)), log_coeff_(log_coeff) {}

  Eigen::MatrixXcd z_;
  cdouble log_coeff_{0.0, 0.0};
  bool zero_ = false;
};

}  // namespace gaugepeps

#endif
