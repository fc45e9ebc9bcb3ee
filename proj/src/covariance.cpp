#include "gaugepeps/covariance.hpp"

#include <cmath>
#include <stdexcept>

#include "gaugepeps/pfaffian.hpp"

namespace gaugepeps {

namespace {
constexpr double kSingularCutoff = 1e-13;
}

CovarianceState CovarianceState::vacuum(int n_modes) {
  if (n_modes < 0) throw std::invalid_argument("negative mode count");
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int m = 0; m < n_modes; ++m) {
    g(2 * m, 2 * m + 1) = 1.0;
    g(2 * m + 1, 2 * m) = -1.0;
  }
  return CovarianceState(std::move(g), 0.0);
}

CovarianceState CovarianceState::zero(int n_modes) {
  CovarianceState s = vacuum(n_modes);
  s.zero_ = true;
  s.log_norm_ = -std::numeric_limits<double>::infinity();
  return s;
}

CovarianceState CovarianceState::from_pairing(const Eigen::MatrixXcd& t) {
  if (!t.allFinite()) throw std::invalid_argument("pairing matrix has non-finite entries");
  const int na = static_cast<int>(t.rows());
  const int nb = static_cast<int>(t.cols());
  const int n = na + nb;
  Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(n, n);
  z.topRightCorner(na, nb) = t;
  z.bottomLeftCorner(nb, na) = -t.transpose();
  return from_z(z);
}

CovarianceState CovarianceState::from_pairing_placed(int n_modes,
                                                     const Eigen::MatrixXcd& t,
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
  return from_z(z);
}

CovarianceState CovarianceState::from_z(const Eigen::MatrixXcd& z) {
  const int n = static_cast<int>(z.rows());
  const Eigen::MatrixXcd ztz = z.adjoint() * z;
  const Eigen::MatrixXcd x =
      (Eigen::MatrixXcd::Identity(n, n) + ztz).ldlt().solve(Eigen::MatrixXcd::Identity(n, n));
  const Eigen::MatrixXcd q = ztz * x;    // <a_i^dag a_j>
  const Eigen::MatrixXcd p = -z * x;     // <a_i a_j>

  // Assemble <gamma_p gamma_q> from the mode-operator moments.
  Eigen::MatrixXcd ca = Eigen::MatrixXcd::Zero(2 * n, n);  // gamma = ca a + cb a^dag
  Eigen::MatrixXcd cb = Eigen::MatrixXcd::Zero(2 * n, n);
  for (int m = 0; m < n; ++m) {
    ca(2 * m, m) = 1.0;
    cb(2 * m, m) = 1.0;
    ca(2 * m + 1, m) = cdouble(0, 1);
    cb(2 * m + 1, m) = cdouble(0, -1);
  }
  const Eigen::MatrixXcd aadag =
      Eigen::MatrixXcd::Identity(n, n) - q.transpose();       // <a_i a_j^dag>
  const Eigen::MatrixXcd adagadag = -p.conjugate();           // <a_i^dag a_j^dag>
  const Eigen::MatrixXcd g2 = ca * p * ca.transpose() + ca * aadag * cb.transpose() +
                              cb * q * ca.transpose() + cb * adagadag * cb.transpose();
  Eigen::MatrixXcd gamma_c =
      cdouble(0, 1) * (g2 - Eigen::MatrixXcd::Identity(2 * n, 2 * n));
  Eigen::MatrixXd gamma = gamma_c.real();
  gamma = 0.5 * (gamma - gamma.transpose().eval());

  // norm^2 = det(1 + Z^dag Z)^{1/2}
  const Eigen::LLT<Eigen::MatrixXcd> llt(Eigen::MatrixXcd::Identity(n, n) + ztz);
  double logdet = 0.0;
  for (int i = 0; i < n; ++i) logdet += 2.0 * std::log(std::real(llt.matrixL()(i, i)));
  return CovarianceState(std::move(gamma), 0.25 * logdet);
}

void CovarianceState::rotate_mode(int mode, double angle) {
  if (mode < 0 || mode >= n_modes_) throw std::out_of_range("mode out of range");
  const double c = std::cos(angle), s = std::sin(angle);
  Eigen::Matrix2d r;
  r << c, s, -s, c;
  const int i = 2 * mode;
  Eigen::MatrixXd rows = r * gamma_.middleRows<2>(i);
  gamma_.middleRows<2>(i) = rows;
  Eigen::MatrixXd cols = gamma_.middleCols<2>(i) * r.transpose();
  gamma_.middleCols<2>(i) = cols;
}

CovarianceState CovarianceState::tensor(const CovarianceState& other) const {
  const int n = n_modes_ + other.n_modes_;
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  g.topLeftCorner(2 * n_modes_, 2 * n_modes_) = gamma_;
  g.bottomRightCorner(2 * other.n_modes_, 2 * other.n_modes_) = other.gamma_;
  CovarianceState out(std::move(g), log_norm_ + other.log_norm_);
  out.zero_ = zero_ || other.zero_;
  return out;
}

CovarianceState CovarianceState::project_pair(const std::vector<int>& modes,
                                              const CovarianceState& bond) const {
  const int s = static_cast<int>(modes.size());
  if (s != bond.n_modes_) throw std::invalid_argument("bond mode count mismatch");
  if (bond.purity_defect() > 1e-8) throw std::invalid_argument("bond state must be pure");
  std::vector<bool> contracted(n_modes_, false);
  for (int m : modes) {
    if (m < 0 || m >= n_modes_ || contracted[m]) {
      throw std::invalid_argument("invalid contraction mode list");
    }
    contracted[m] = true;
  }
  std::vector<int> rest;
  rest.reserve(n_modes_ - s);
  for (int m = 0; m < n_modes_; ++m) {
    if (!contracted[m]) rest.push_back(m);
  }

  auto rows_of = [](const std::vector<int>& ms) {
    std::vector<int> r;
    r.reserve(2 * ms.size());
    for (int m : ms) {
      r.push_back(2 * m);
      r.push_back(2 * m + 1);
    }
    return r;
  };
  const std::vector<int> sr = rows_of(modes);
  const std::vector<int> rr = rows_of(rest);

  Eigen::MatrixXd gss(2 * s, 2 * s), grr(rr.size(), rr.size()), grs(rr.size(), 2 * s);
  for (int i = 0; i < 2 * s; ++i) {
    for (int j = 0; j < 2 * s; ++j) gss(i, j) = gamma_(sr[i], sr[j]);
  }
  for (std::size_t i = 0; i < rr.size(); ++i) {
    for (std::size_t j = 0; j < rr.size(); ++j) grr(i, j) = gamma_(rr[i], rr[j]);
    for (int j = 0; j < 2 * s; ++j) grs(i, j) = gamma_(rr[i], sr[j]);
  }

  const Eigen::MatrixXd k = gss + bond.gamma_;
  const Pfaffian pf = pfaffian_real(k);
  const int n_rest = n_modes_ - s;
  if (pf.zero || pf.log_abs < std::log(kSingularCutoff)) {
    return CovarianceState::zero(n_rest);
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(k);
  Eigen::MatrixXd gnew = grr + grs * lu.solve(grs.transpose());
  gnew = 0.5 * (gnew - gnew.transpose().eval());
  CovarianceState out(std::move(gnew), log_norm_ + bond.log_norm_ +
                                           0.5 * (pf.log_abs - s * std::log(2.0)));
  out.zero_ = zero_ || bond.zero_;
  return out;
}

CovarianceState CovarianceState::project_pair(const std::vector<int>& modes_a,
                                              const std::vector<int>& modes_b,
                                              const CovarianceState& bond) const {
  std::vector<int> modes = modes_a;
  modes.insert(modes.end(), modes_b.begin(), modes_b.end());
  return project_pair(modes, bond);
}

double CovarianceState::norm_squared() const {
  if (zero_) return 0.0;
  return std::exp(2.0 * log_norm_);
}

cdouble CovarianceState::majorana_two_point(int p, int q) const {
  return (p == q ? cdouble(1, 0) : cdouble(0, 0)) - cdouble(0, 1) * gamma_(p, q);
}

cdouble CovarianceState::two_point(FermiOp o1, FermiOp o2) const {
  for (FermiOp o : {o1, o2}) {
    if (o.mode < 0 || o.mode >= n_modes_) throw std::out_of_range("mode out of range");
  }
  // a = (gamma_{2m} - i gamma_{2m+1})/2, a^dag = (gamma_{2m} + i gamma_{2m+1})/2
  auto coeffs = [](FermiOp o) {
    const cdouble i(0, 1);
    return std::array<cdouble, 2>{0.5, o.dagger ? 0.5 * i : -0.5 * i};
  };
  const auto c1 = coeffs(o1);
  const auto c2 = coeffs(o2);
  cdouble val = 0;
  for (int p = 0; p < 2; ++p) {
    for (int q = 0; q < 2; ++q) {
      val += c1[p] * c2[q] * majorana_two_point(2 * o1.mode + p, 2 * o2.mode + q);
    }
  }
  return val;
}

cdouble CovarianceState::four_point(const std::array<FermiOp, 4>& o) const {
  return two_point(o[0], o[1]) * two_point(o[2], o[3]) -
         two_point(o[0], o[2]) * two_point(o[1], o[3]) +
         two_point(o[0], o[3]) * two_point(o[1], o[2]);
}

double CovarianceState::occupation(int mode) const {
  return std::real(two_point({mode, true}, {mode, false}));
}

double CovarianceState::antisymmetry_defect() const {
  if (n_modes_ == 0) return 0.0;
  return (gamma_ + gamma_.transpose()).cwiseAbs().maxCoeff();
}

double CovarianceState::purity_defect() const {
  if (n_modes_ == 0) return 0.0;
  return (gamma_ * gamma_.transpose() -
          Eigen::MatrixXd::Identity(2 * n_modes_, 2 * n_modes_))
      .cwiseAbs()
      .maxCoeff();
}

}  // namespace gaugepeps
