#include "gaugepeps/pairing.hpp"

#include <cmath>
#include <stdexcept>

#include "gaugepeps/pfaffian.hpp"

namespace gaugepeps {

PairingState PairingState::vacuum(int n_modes) {
  return PairingState(Eigen::MatrixXcd::Zero(n_modes, n_modes), cdouble(0, 0));
}

namespace {
double half_logdet_one_plus_ztz(const Eigen::MatrixXcd& z) {
  const int n = static_cast<int>(z.rows());
  const Eigen::LLT<Eigen::MatrixXcd> llt(Eigen::MatrixXcd::Identity(n, n) +
                                         z.adjoint() * z);
  double logdet = 0.0;
  for (int i = 0; i < n; ++i) logdet += 2.0 * std::log(std::real(llt.matrixL()(i, i)));
  return 0.5 * logdet;
}
}  // namespace

PairingState PairingState::from_pairing(const Eigen::MatrixXcd& t) {
  const int na = static_cast<int>(t.rows());
  const int nb = static_cast<int>(t.cols());
  const int n = na + nb;
  Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(n, n);
  z.topRightCorner(na, nb) = t;
  z.bottomLeftCorner(nb, na) = -t.transpose();
  const double ld = half_logdet_one_plus_ztz(z);
  return PairingState(std::move(z), cdouble(-0.5 * ld, 0.0));
}

PairingState PairingState::from_pairing_placed(int n_modes, const Eigen::MatrixXcd& t,
                                               const std::vector<int>& am,
                                               const std::vector<int>& bm) {
  if (static_cast<int>(am.size()) != t.rows() || static_cast<int>(bm.size()) != t.cols()) {
    throw std::invalid_argument("pairing matrix does not match mode lists");
  }
  Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(n_modes, n_modes);
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    for (Eigen::Index j = 0; j < t.cols(); ++j) {
      z(am[i], bm[j]) += t(i, j);
      z(bm[j], am[i]) -= t(i, j);
    }
  }
  const double ld = half_logdet_one_plus_ztz(z);
  return PairingState(std::move(z), cdouble(-0.5 * ld, 0.0));
}

void PairingState::rotate_mode(int mode, double angle) {
  const cdouble ph = std::polar(1.0, angle);
  z_.row(mode) *= ph;
  z_.col(mode) *= ph;
}

PairingState PairingState::tensor(const PairingState& other) const {
  const int n = n_modes() + other.n_modes();
  Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(n, n);
  z.topLeftCorner(n_modes(), n_modes()) = z_;
  z.bottomRightCorner(other.n_modes(), other.n_modes()) = other.z_;
  PairingState out(std::move(z), log_coeff_ + other.log_coeff_);
  out.zero_ = zero_ || other.zero_;
  return out;
}

PairingState PairingState::project(const std::vector<int>& modes,
                                   const PairingState& bond, bool* breakdown) const {
  if (breakdown) *breakdown = false;
  const int s = static_cast<int>(modes.size());
  if (s != bond.n_modes()) throw std::invalid_argument("bond mode count mismatch");
  std::vector<bool> used(n_modes(), false);
  for (int m : modes) {
    if (m < 0 || m >= n_modes() || used[m]) {
      throw std::invalid_argument("invalid contraction mode list");
    }
    used[m] = true;
  }
  std::vector<int> rest;
  for (int m = 0; m < n_modes(); ++m) {
    if (!used[m]) rest.push_back(m);
  }
  const int r = static_cast<int>(rest.size());

  Eigen::MatrixXcd zss(s, s), zrr(r, r), zrs(r, s);
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) zss(i, j) = z_(modes[i], modes[j]);
  }
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) zrr(i, j) = z_(rest[i], rest[j]);
    for (int j = 0; j < s; ++j) zrs(i, j) = z_(rest[i], modes[j]);
  }

  // <bond| = conj(coeff) <Omega| exp(1/2 a^T M a) with M = -conj(W_bond).
  const Eigen::MatrixXcd m = -bond.z_.conjugate();

  // <Omega_S| e^{1/2 aMa} e^{1/2 a^dag Z a^dag} |Omega> with a_R^dag sources:
  //   scalar = sigma_s Pf([[M, -1],[1, Z_SS]]),
  //   Z' = Z_RR + Z_RS M (1 + Z_SS M)^{-1} Z_RS^T.
  Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(2 * s, 2 * s);
  big.topLeftCorner(s, s) = m;
  big.topRightCorner(s, s) = -Eigen::MatrixXcd::Identity(s, s);
  big.bottomLeftCorner(s, s) = Eigen::MatrixXcd::Identity(s, s);
  big.bottomRightCorner(s, s) = zss;
  Pfaffian pf = pfaffian(big);
  const int half = s * (s - 1) / 2;
  if (half % 2 != 0) pf.phase = -pf.phase;

  const Eigen::MatrixXcd kernel = Eigen::MatrixXcd::Identity(s, s) + zss * m;
  const Eigen::FullPivLU<Eigen::MatrixXcd> lu(kernel);
  if (pf.zero || !lu.isInvertible()) {
    // A singular kernel cannot distinguish a genuinely orthogonal projection
    // from a breakdown of the exponential form; report and let the caller
    // decide (e.g. fall back to a dense contraction).
    if (breakdown) *breakdown = true;
    PairingState out = vacuum(r);
    out.zero_ = true;
    out.log_coeff_ = cdouble(-std::numeric_limits<double>::infinity(), 0.0);
    return out;
  }

  Eigen::MatrixXcd znew = zrr + zrs * m * lu.solve(zrs.transpose());
  znew = 0.5 * (znew - znew.transpose().eval());
  const cdouble log_scalar =
      cdouble(pf.log_abs, 0.0) + std::log(pf.phase) + std::conj(bond.log_coeff_);
  PairingState out(std::move(znew), log_coeff_ + log_scalar);
  out.zero_ = zero_ || bond.zero_;
  return out;
}

double PairingState::norm_squared() const {
  if (zero_) return 0.0;
  return std::exp(2.0 * std::real(log_coeff_) + half_logdet_one_plus_ztz(z_));
}

cdouble PairingState::amplitude(const std::vector<int>& occupied_modes) const {
  if (zero_) return {0.0, 0.0};
  const int k = static_cast<int>(occupied_modes.size());
  if (k % 2 != 0) return {0.0, 0.0};
  Eigen::MatrixXcd sub(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) sub(i, j) = z_(occupied_modes[i], occupied_modes[j]);
  }
  const Pfaffian pf = pfaffian(sub);
  return std::exp(log_coeff_) * pf.value();
}

Eigen::VectorXcd PairingState::amplitudes() const {
  const int n = n_modes();
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(std::int64_t(1) << n);
  for (std::int64_t b = 0; b < amps.size(); ++b) {
    std::vector<int> occ;
    for (int m = 0; m < n; ++m) {
      if ((b >> m) & 1) occ.push_back(m);
    }
    amps[b] = amplitude(occ);
  }
  return amps;
}

}  // namespace gaugepeps
