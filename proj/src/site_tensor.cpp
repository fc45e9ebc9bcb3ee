#include "gaugepeps/site_tensor.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gaugepeps {

cdouble SiteTensorParams::eta_from_index(int k) {
  const int m = ((k % 8) + 8) % 8;
  return std::polar(1.0, std::numbers::pi * (2 * m + 1) / 4.0);
}

void SiteTensorParams::validate() const {
  if (t < 0) throw std::invalid_argument("t must be >= 0");
  const cdouble e4 = eta_p * eta_p * eta_p * eta_p;
  if (std::abs(e4 + cdouble(1, 0)) > 1e-12 || std::abs(std::abs(eta_p) - 1.0) > 1e-12) {
    throw std::invalid_argument("eta_p must satisfy |eta_p|=1 and eta_p^4 = -1");
  }
}

Eigen::MatrixXcd build_site_T(const SiteTensorParams& p) {
  p.validate();
  const cdouble eta = p.eta_p;
  const cdouble y = p.y;
  const cdouble zs = p.z / std::sqrt(2.0);
  Eigen::MatrixXcd t(5, 4);
  t.row(0) << p.t, eta * eta * p.t, eta * p.t, eta * eta * eta * p.t;
  // Virtual block tau, antisymmetric; row/column order (r, u, l, d).
  t.row(1) << 0, y, zs, zs;
  t.row(2) << -y, 0, -zs, zs;
  t.row(3) << -zs, zs, 0, y;
  t.row(4) << -zs, -zs, -y, 0;
  return t;
}

std::vector<int> site_a_modes(int parity) {
  if (parity > 0) return {kPhys, kRm, kUm, kLp, kDp};
  return {kPhys, kRp, kUp, kLm, kDm};
}

std::vector<int> site_b_modes(int parity) {
  if (parity > 0) return {kRp, kUp, kLm, kDm};
  return {kRm, kUm, kLp, kDp};
}

CovarianceState site_state(int parity, const SiteTensorParams& p) {
  return CovarianceState::from_pairing_placed(kModesPerSite, build_site_T(p),
                                              site_a_modes(parity),
                                              site_b_modes(parity));
}

PairingState site_state_pairing(int parity, const SiteTensorParams& p) {
  // Raw exponential form (unit vacuum coefficient), matching the covariance
  // route's convention of tracking the raw site norm in log_norm.
  PairingState s = PairingState::from_pairing_placed(
      kModesPerSite, build_site_T(p), site_a_modes(parity), site_b_modes(parity));
  s.scale(-s.log_coeff());
  return s;
}

double virtual_gauss_defect(int parity, const Eigen::MatrixXcd& site_T, double lambda) {
  CovarianceState s = CovarianceState::from_pairing_placed(
      kModesPerSite, site_T, site_a_modes(parity), site_b_modes(parity));
  CovarianceState rotated = s;
  // exp(i lambda G0) puts phase e^{-i lambda} on a-modes and e^{+i lambda}
  // on b-modes (the physical mode is an a-mode).
  for (int m : site_a_modes(parity)) rotated.rotate_mode(m, -lambda);
  for (int m : site_b_modes(parity)) rotated.rotate_mode(m, +lambda);
  return (rotated.gamma() - s.gamma()).cwiseAbs().maxCoeff();
}

double verify_virtual_gauss(int parity, const SiteTensorParams& p,
                            const std::vector<double>& lambdas) {
  const Eigen::MatrixXcd t = build_site_T(p);
  double worst = 0.0;
  for (double l : lambdas) {
    worst = std::max(worst, virtual_gauss_defect(parity, t, l));
  }
  return worst;
}

}  // namespace gaugepeps
