#ifndef GAUGEPEPS_TESTS_ORACLE_HPP
#define GAUGEPEPS_TESTS_ORACLE_HPP

// Brute-force Fock-space oracles used to certify the Gaussian formalism.
// Everything here works on dense amplitude vectors and never touches the
// covariance algebra it checks.

#include <array>
#include <random>
#include <vector>

#include "gaugepeps/covariance.hpp"
#include "gaugepeps/fock.hpp"

namespace gaugepeps::testing {

inline FockState apply_op(const FockState& state, FermiOp op) {
  FockState out = state;
  if (op.dagger) {
    out.apply_create(op.mode);
  } else {
    out.apply_annihilate(op.mode);
  }
  return out;
}

// <psi|o1 o2|psi> / <psi|psi>
inline cdouble oracle_two_point(const FockState& psi, FermiOp o1, FermiOp o2) {
  FockState rhs = apply_op(psi, o2);
  FermiOp o1d{o1.mode, !o1.dagger};
  FockState lhs = apply_op(psi, o1d);
  return lhs.overlap(rhs) / psi.norm_squared();
}

inline cdouble oracle_four_point(const FockState& psi, const std::array<FermiOp, 4>& ops) {
  FockState rhs = psi;
  for (int i = 3; i >= 2; --i) rhs = apply_op(rhs, ops[i]);
  FockState lhs = psi;
  for (int i = 0; i <= 1; ++i) lhs = apply_op(lhs, FermiOp{ops[i].mode, !ops[i].dagger});
  return lhs.overlap(rhs) / psi.norm_squared();
}

// Majorana covariance of a dense state: Gamma_pq = (i/2) <[g_p, g_q]>.
inline Eigen::MatrixXd oracle_covariance(const FockState& psi) {
  const int n = psi.n_modes();
  Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  auto majorana = [&](const FockState& s, int p) {
    const int mode = p / 2;
    FockState c = s;
    FockState d = s;
    c.apply_create(mode);
    d.apply_annihilate(mode);
    FockState out(s.n_modes());
    if (p % 2 == 0) {
      out.amps() = c.amps() + d.amps();  // a + a^dag
    } else {
      out.amps() = cdouble(0, 1) * (d.amps() - c.amps());  // i(a - a^dag)
    }
    return out;
  };
  const double n2 = psi.norm_squared();
  for (int p = 0; p < 2 * n; ++p) {
    FockState gp = majorana(psi, p);
    for (int q = 0; q < 2 * n; ++q) {
      if (p == q) continue;
      FockState gq = majorana(psi, q);
      // <g_p g_q> with p != q: [g_p,g_q] = 2 g_p g_q.
      const cdouble val = gp.overlap(gq) / n2;  // <psi| g_p g_q |psi>
      gamma(p, q) = std::real(cdouble(0, 1) * val);
    }
  }
  return gamma;
}

// A randomized contraction pipeline: some pairing-created states, mode
// rotations, and bond projections; mirrors the same steps through the
// covariance algebra and the dense oracle.
struct PipelineResult {
  CovarianceState cov = CovarianceState::vacuum(0);
  FockState fock = FockState::vacuum(0);
  double fock_log_norm = 0.0;  // dense norm accumulated alongside
  bool annihilated = false;
};

inline PipelineResult random_pipeline(std::mt19937_64& rng, int max_modes = 10) {
  std::uniform_real_distribution<double> unif(-1.2, 1.2);
  std::uniform_real_distribution<double> angle(0.0, 6.28318530717958648);
  auto random_t = [&](int rows, int cols) {
    Eigen::MatrixXcd t(rows, cols);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) t(i, j) = cdouble(unif(rng), unif(rng));
    }
    return t;
  };

  PipelineResult r;
  // Two pairing blocks.
  const int na1 = 2 + static_cast<int>(rng() % 2);
  const int nb1 = 2 + static_cast<int>(rng() % 2);
  int remaining = max_modes - (na1 + nb1);
  const int na2 = std::max(1, std::min<int>(2, remaining - 1));
  const int nb2 = remaining - na2;
  const Eigen::MatrixXcd t1 = random_t(na1, nb1);
  const Eigen::MatrixXcd t2 = random_t(na2, nb2);

  r.cov = CovarianceState::from_pairing(t1).tensor(CovarianceState::from_pairing(t2));
  FockState f1 = FockState::vacuum(na1 + nb1);
  std::vector<int> am1(na1), bm1(nb1);
  for (int i = 0; i < na1; ++i) am1[i] = i;
  for (int i = 0; i < nb1; ++i) bm1[i] = na1 + i;
  f1.apply_pairing_exp(t1, am1, bm1);
  f1.normalize_with(&r.fock_log_norm);
  FockState f2 = FockState::vacuum(na2 + nb2);
  std::vector<int> am2(na2), bm2(nb2);
  for (int i = 0; i < na2; ++i) am2[i] = i;
  for (int i = 0; i < nb2; ++i) bm2[i] = na2 + i;
  f2.apply_pairing_exp(t2, am2, bm2);
  f2.normalize_with(&r.fock_log_norm);
  r.fock = f1.tensor(f2);

  const int n = r.cov.n_modes();
  // A few rotations.
  for (int k = 0; k < 4; ++k) {
    const int m = static_cast<int>(rng() % n);
    const double a = angle(rng);
    r.cov.rotate_mode(m, a);
    r.fock.rotate_mode(m, a);
  }
  // One two-mode bond projection across the two blocks.
  const int ma = static_cast<int>(rng() % (na1 + nb1));
  const int mb = na1 + nb1 + static_cast<int>(rng() % (na2 + nb2));
  const Eigen::MatrixXcd tb = random_t(1, 1);
  const CovarianceState bond_cov = CovarianceState::from_pairing(tb);
  FockState bond_fock = FockState::vacuum(2);
  double bond_scale = 0.0;
  bond_fock.apply_pairing_exp(tb, {0}, {1});
  bond_fock.normalize_with(&bond_scale);
  r.fock_log_norm += bond_scale;
  r.cov = r.cov.project_pair({ma, mb}, bond_cov);
  r.fock = r.fock.project({ma, mb}, bond_fock);
  r.annihilated = r.cov.is_zero();
  return r;
}

}  // namespace gaugepeps::testing

#endif
