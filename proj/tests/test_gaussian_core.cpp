#include <random>

#include "doctest.h"
#include "gaugepeps/covariance.hpp"
#include "gaugepeps/pairing.hpp"
#include "gaugepeps/pfaffian.hpp"
#include "oracle.hpp"

using namespace gaugepeps;
using namespace gaugepeps::testing;

TEST_CASE("pfaffian on known matrices") {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(4, 4);
  a(0, 1) = 2.0;
  a(1, 0) = -2.0;
  a(2, 3) = 3.0;
  a(3, 2) = -3.0;
  CHECK(std::abs(pfaffian(a).value() - cdouble(6, 0)) < 1e-12);
  a(0, 2) = 1.0;
  a(2, 0) = -1.0;
  // Pf = a01 a23 - a02 a13 + a03 a12
  CHECK(std::abs(pfaffian(a).value() - cdouble(6, 0)) < 1e-12);
  a(1, 3) = cdouble(0, 5);
  a(3, 1) = cdouble(0, -5);
  CHECK(std::abs(pfaffian(a).value() - (cdouble(6, 0) - cdouble(0, 5))) < 1e-12);

  // Random antisymmetric: Pf^2 = det.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-1, 1);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(6, 6);
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      m(i, j) = cdouble(unif(rng), unif(rng));
      m(j, i) = -m(i, j);
    }
  }
  const cdouble pf = pfaffian(m).value();
  CHECK(std::abs(pf * pf - m.determinant()) < 1e-10);
}

TEST_CASE("vacuum covariance") {
  const CovarianceState v = CovarianceState::vacuum(1);
  CHECK(v.gamma()(0, 1) == doctest::Approx(1.0));
  CHECK(v.gamma()(1, 0) == doctest::Approx(-1.0));
  CHECK(v.norm_squared() == doctest::Approx(1.0));
  CHECK(std::abs(v.two_point({0, true}, {0, false})) < 1e-14);
  CHECK(std::abs(v.two_point({0, false}, {0, true}) - cdouble(1, 0)) < 1e-14);
  const CovarianceState empty = CovarianceState::vacuum(0);
  CHECK(empty.norm_squared() == doctest::Approx(1.0));
  CHECK(empty.log_norm() == 0.0);
}

TEST_CASE("single pair occupation and norm") {
  for (double t : {0.5, 1.0, 2.0}) {
    Eigen::MatrixXcd tm(1, 1);
    tm(0, 0) = t;
    const CovarianceState s = CovarianceState::from_pairing(tm);
    CHECK(s.occupation(0) == doctest::Approx(t * t / (1 + t * t)).epsilon(1e-12));
    CHECK(s.norm_squared() == doctest::Approx(1 + t * t).epsilon(1e-12));
    CHECK(s.purity_defect() < 1e-10);
  }
  // T = 0 is the vacuum.
  const CovarianceState v = CovarianceState::from_pairing(Eigen::MatrixXcd::Zero(2, 2));
  CHECK((v.gamma() - CovarianceState::vacuum(4).gamma()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("covariance matches dense oracle for pairing states") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    const int na = 1 + static_cast<int>(rng() % 3);
    const int nb = 1 + static_cast<int>(rng() % 3);
    Eigen::MatrixXcd t(na, nb);
    for (int i = 0; i < na; ++i) {
      for (int j = 0; j < nb; ++j) t(i, j) = cdouble(unif(rng), unif(rng));
    }
    const CovarianceState s = CovarianceState::from_pairing(t);
    FockState f = FockState::vacuum(na + nb);
    std::vector<int> am(na), bm(nb);
    for (int i = 0; i < na; ++i) am[i] = i;
    for (int j = 0; j < nb; ++j) bm[j] = na + j;
    f.apply_pairing_exp(t, am, bm);
    CHECK(s.norm_squared() == doctest::Approx(f.norm_squared()).epsilon(1e-10));
    f.normalize_with(nullptr);
    CHECK((s.gamma() - oracle_covariance(f)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("rotations match the oracle and preserve norms") {
  Eigen::MatrixXcd t(2, 2);
  t << cdouble(0.3, -0.2), cdouble(0.8, 0.1), cdouble(-0.5, 0.4), cdouble(0.2, 0.9);
  CovarianceState s = CovarianceState::from_pairing(t);
  FockState f = FockState::vacuum(4);
  f.apply_pairing_exp(t, {0, 1}, {2, 3});
  f.normalize_with(nullptr);
  const double n0 = s.norm_squared();
  s.rotate_mode(2, 1.1);
  f.rotate_mode(2, 1.1);
  CHECK((s.gamma() - oracle_covariance(f)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(s.norm_squared() == doctest::Approx(n0));
  // Full rotation is the identity.
  CovarianceState s2 = s;
  s2.rotate_mode(1, 2 * std::numbers::pi);
  CHECK((s2.gamma() - s.gamma()).cwiseAbs().maxCoeff() < 1e-12);
  s2.rotate_mode(3, 0.0);
  CHECK((s2.gamma() - s.gamma()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("pi rotation flips the pairing correlator sign") {
  Eigen::MatrixXcd t(1, 1);
  t(0, 0) = 0.7;
  CovarianceState s = CovarianceState::from_pairing(t);
  const cdouble before = s.two_point({0, false}, {1, false});
  s.rotate_mode(0, std::numbers::pi);
  const cdouble after = s.two_point({0, false}, {1, false});
  CHECK(std::abs(before + after) < 1e-12);
  CHECK(std::abs(before) > 0.1);
}

TEST_CASE("projecting a bond onto itself gives norm 1") {
  Eigen::MatrixXcd t(2, 2);
  t << 0, -1, -1, 0;
  CovarianceState bond = CovarianceState::from_pairing(t);
  bond.scale_log_norm(-bond.log_norm());  // unit-norm bond convention
  const CovarianceState result = bond.project_pair({0, 1, 2, 3}, bond);
  CHECK(result.n_modes() == 0);
  CHECK(result.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("vacuum bond annihilates pairing correlations") {
  Eigen::MatrixXcd t(1, 1);
  t(0, 0) = 0.9;
  // Pair modes (0,1) and (2,3), then project (1,2) onto the vacuum.
  const CovarianceState s =
      CovarianceState::from_pairing(t).tensor(CovarianceState::from_pairing(t));
  const CovarianceState out = s.project_pair({1, 2}, CovarianceState::vacuum(2));
  CHECK(!out.is_zero());
  CHECK(std::abs(out.two_point({0, false}, {1, false})) < 1e-12);

  FockState f1 = FockState::vacuum(2);
  f1.apply_pairing_exp(t, {0}, {1});
  double dense_log = 0.0;
  f1.normalize_with(&dense_log);
  const FockState f = f1.tensor(f1);
  const FockState fo = f.project({1, 2}, FockState::vacuum(2));
  CHECK(out.norm_squared() ==
        doctest::Approx(fo.norm_squared() * std::exp(4.0 * dense_log)).epsilon(1e-10));
  FockState fn = fo;
  fn.normalize_with(nullptr);
  CHECK((out.gamma() - oracle_covariance(fn)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("orthogonal projection is reported as the zero state") {
  // Occupied pair projected against the vacuum on both modes.
  Eigen::MatrixXcd t(1, 1);
  t(0, 0) = 1e8;  // nearly fully occupied pair
  CovarianceState s = CovarianceState::from_pairing(t);
  // Exactly occupied: build directly by rotating the vacuum is impossible,
  // so check the nearly-singular kernel path through a genuinely orthogonal
  // case instead: project |11> component onto <00| after forcing occupation.
  Eigen::MatrixXd g = -CovarianceState::vacuum(2).gamma();  // fully occupied pair
  // Assemble an occupied two-mode state via a fresh pairing limit check:
  CHECK(s.occupation(0) > 1 - 1e-10);
  const CovarianceState out = s.project_pair({0, 1}, CovarianceState::vacuum(2));
  (void)g;
  CHECK(out.norm_squared() < 1e-10);
}

TEST_CASE("random pipelines agree with the dense oracle") {
  std::mt19937_64 rng(1234);
  int checked = 0;
  for (int rep = 0; rep < 60; ++rep) {
    PipelineResult r = random_pipeline(rng);
    if (r.annihilated) continue;
    const double dense_norm2 = r.fock.norm_squared() * std::exp(2.0 * r.fock_log_norm);
    CHECK(r.cov.norm_squared() == doctest::Approx(dense_norm2).epsilon(1e-9));
    FockState fn = r.fock;
    fn.normalize_with(nullptr);
    CHECK((r.cov.gamma() - oracle_covariance(fn)).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(r.cov.antisymmetry_defect() < 1e-12);
    CHECK(r.cov.purity_defect() < 1e-8);
    // Spot-check 2- and 4-point functions.
    const int n = r.cov.n_modes();
    for (int k = 0; k < 3; ++k) {
      const FermiOp o1{static_cast<int>(rng() % n), (rng() & 1) != 0};
      const FermiOp o2{static_cast<int>(rng() % n), (rng() & 1) != 0};
      CHECK(std::abs(r.cov.two_point(o1, o2) - oracle_two_point(fn, o1, o2)) < 1e-10);
      const std::array<FermiOp, 4> ops{o1, o2,
                                       FermiOp{static_cast<int>(rng() % n), (rng() & 1) != 0},
                                       FermiOp{static_cast<int>(rng() % n), (rng() & 1) != 0}};
      CHECK(std::abs(r.cov.four_point(ops) - oracle_four_point(fn, ops)) < 1e-10);
    }
    ++checked;
  }
  CHECK(checked > 30);
}

TEST_CASE("norm is invariant under mode rotations") {
  std::mt19937_64 rng(5);
  PipelineResult r = random_pipeline(rng);
  if (!r.annihilated) {
    const double before = r.cov.norm_squared();
    r.cov.rotate_mode(0, 0.777);
    CHECK(r.cov.norm_squared() == doctest::Approx(before));
  }
}

TEST_CASE("pairing state amplitudes and norms") {
  Eigen::MatrixXcd t(2, 2);
  t << cdouble(0.4, 0.3), cdouble(-0.6, 0.2), cdouble(0.1, -0.8), cdouble(0.5, 0.5);
  const PairingState p = PairingState::from_pairing(t);
  FockState f = FockState::vacuum(4);
  f.apply_pairing_exp(t, {0, 1}, {2, 3});
  f.normalize_with(nullptr);
  const Eigen::VectorXcd pa = p.amplitudes();
  // Amplitudes agree up to the convention-free global phase, which is fixed
  // to be identical here (both vacuum components are real positive).
  CHECK((pa - f.amps()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(p.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pairing projection matches the dense route including phases") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unif(-0.9, 0.9);
  for (int rep = 0; rep < 25; ++rep) {
    auto random_t = [&](int rows, int cols) {
      Eigen::MatrixXcd t(rows, cols);
      for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) t(i, j) = cdouble(unif(rng), unif(rng));
      }
      return t;
    };
    const Eigen::MatrixXcd t1 = random_t(2, 2);
    const Eigen::MatrixXcd t2 = random_t(2, 2);
    const Eigen::MatrixXcd tb = random_t(2, 2);

    PairingState p = PairingState::from_pairing(t1).tensor(PairingState::from_pairing(t2));
    p.rotate_mode(1, 0.3);
    p.rotate_mode(5, -1.2);
    bool broke = false;
    // Contract modes (1,2) from block 1 with (4,7) from block 2.
    const PairingState bond = PairingState::from_pairing(tb);
    const PairingState out = p.project({1, 2, 4, 7}, bond, &broke);

    FockState f1 = FockState::vacuum(4);
    f1.apply_pairing_exp(t1, {0, 1}, {2, 3});
    f1.normalize_with(nullptr);
    FockState f2 = FockState::vacuum(4);
    f2.apply_pairing_exp(t2, {0, 1}, {2, 3});
    f2.normalize_with(nullptr);
    FockState f = f1.tensor(f2);
    f.rotate_mode(1, 0.3);
    f.rotate_mode(5, -1.2);
    FockState fb = FockState::vacuum(4);
    fb.apply_pairing_exp(tb, {0, 1}, {2, 3});
    fb.normalize_with(nullptr);
    const FockState fout = f.project({1, 2, 4, 7}, fb);

    if (broke || out.is_zero()) continue;
    const Eigen::VectorXcd pa = out.amplitudes();
    REQUIRE(pa.size() == fout.amps().size());
    CHECK((pa - fout.amps()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("pairing projection sign convention across contraction sizes") {
  // s = 2 contraction: single-mode bonds.
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unif(-0.8, 0.8);
  for (int rep = 0; rep < 10; ++rep) {
    Eigen::MatrixXcd t1(1, 1), tb(1, 1);
    t1(0, 0) = cdouble(unif(rng), unif(rng));
    tb(0, 0) = cdouble(unif(rng), unif(rng));
    PairingState p = PairingState::from_pairing(t1).tensor(PairingState::vacuum(1));
    const PairingState out = p.project({1, 2}, PairingState::from_pairing(tb));

    FockState f1 = FockState::vacuum(2);
    f1.apply_pairing_exp(t1, {0}, {1});
    f1.normalize_with(nullptr);
    FockState f = f1.tensor(FockState::vacuum(1));
    FockState fb = FockState::vacuum(2);
    fb.apply_pairing_exp(tb, {0}, {1});
    fb.normalize_with(nullptr);
    const FockState fo = f.project({1, 2}, fb);
    if (out.is_zero()) continue;
    CHECK((out.amplitudes() - fo.amps()).cwiseAbs().maxCoeff() < 1e-11);
  }
}
