#include <random>

#include "doctest.h"
#include "gaugepeps/fpeps.hpp"
#include "gaugepeps/toy_peps.hpp"

using namespace gaugepeps;

namespace {

SiteTensorParams generic_params() {
  SiteTensorParams p;
  p.t = 1.0;
  p.y = cdouble(0.35, 0.15);
  p.z = cdouble(-0.45, 0.25);
  p.eta_p = SiteTensorParams::eta_from_index(0);
  return p;
}

GaugeConfiguration random_config(const LatticeGeometry& geom, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 2 * std::numbers::pi);
  GaugeConfiguration phi;
  for (int l = 0; l < geom.n_links(); ++l) phi.angles.push_back(unif(rng));
  return phi;
}

}  // namespace

TEST_CASE("site T matrix structure") {
  SUBCASE("zero parameters give the zero matrix") {
    SiteTensorParams p;
    p.t = 0;
    p.y = p.z = 0;
    CHECK(build_site_T(p).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("virtual block is antisymmetric for any parameters") {
    const Eigen::MatrixXcd t = build_site_T(generic_params());
    const Eigen::MatrixXcd tau = t.bottomRows(4);
    CHECK((tau + tau.transpose()).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("first row for the reference parameters") {
    SiteTensorParams p;
    p.t = 1;
    p.y = p.z = 0;
    p.eta_p = std::polar(1.0, std::numbers::pi / 4);
    const Eigen::MatrixXcd t = build_site_T(p);
    CHECK(std::abs(t(0, 0) - cdouble(1, 0)) < 1e-15);
    CHECK(std::abs(t(0, 1) - cdouble(0, 1)) < 1e-15);
    CHECK(std::abs(t(0, 2) - std::polar(1.0, std::numbers::pi / 4)) < 1e-15);
    CHECK(std::abs(t(0, 3) - std::polar(1.0, 3 * std::numbers::pi / 4)) < 1e-15);
    CHECK(t.bottomRows(4).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("eta_p is validated") {
    SiteTensorParams p = generic_params();
    p.eta_p = 1.0;  // fourth power is +1
    CHECK_THROWS(build_site_T(p));
    p.eta_p = SiteTensorParams::eta_from_index(5);
    CHECK_NOTHROW(build_site_T(p));
  }
}

TEST_CASE("site states have even parity and unit trivial limit") {
  const SiteTensorParams p = generic_params();
  for (int parity : {+1, -1}) {
    const PairingState s = site_state_pairing(parity, p);
    const Eigen::VectorXcd amps = s.amplitudes();
    for (std::int64_t b = 0; b < amps.size(); ++b) {
      if (__builtin_popcountll(b) % 2 != 0) CHECK(std::abs(amps[b]) == 0.0);
    }
    // Parity expectation is +1.
    double even = 0, odd = 0;
    for (std::int64_t b = 0; b < amps.size(); ++b) {
      (__builtin_popcountll(b) % 2 ? odd : even) += std::norm(amps[b]);
    }
    CHECK(odd == 0.0);
    CHECK(even > 0.0);
  }
  SiteTensorParams trivial;
  trivial.t = 0;
  trivial.y = trivial.z = 0;
  const CovarianceState v = site_state(+1, trivial);
  CHECK((v.gamma() - CovarianceState::vacuum(9).gamma()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("virtual Gauss invariance of the site tensor") {
  const SiteTensorParams p = generic_params();
  CHECK(verify_virtual_gauss(+1, p, {0.0}) < 1e-14);
  CHECK(verify_virtual_gauss(+1, p, {std::numbers::pi / 3}) < 1e-10);
  CHECK(verify_virtual_gauss(-1, p, {0.3, 1.1, 2.2, 4.0}) < 1e-10);

  // Negative control: moving a pairing onto two negative modes breaks the
  // symmetry (any a-b pairing is invariant by construction, so the corrupt
  // state must break the a/b structure itself).
  std::vector<int> am = site_a_modes(+1);
  std::vector<int> bm = site_b_modes(+1);
  std::swap(am[1], bm[0]);  // pair psi with another a-mode
  CovarianceState corrupt =
      CovarianceState::from_pairing_placed(kModesPerSite, build_site_T(p), am, bm);
  CovarianceState rotated = corrupt;
  for (int m : site_a_modes(+1)) rotated.rotate_mode(m, -0.9);
  for (int m : site_b_modes(+1)) rotated.rotate_mode(m, +0.9);
  CHECK((rotated.gamma() - corrupt.gamma()).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("the three assembly routes agree") {
  const LatticeGeometry geom(2, 2, Boundary::torus);
  const FpepsAssembler assembler(geom, generic_params());
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 4; ++rep) {
    const GaugeConfiguration phi = random_config(geom, rng);
    const CovarianceState cov = assembler.assemble(phi);
    REQUIRE(!cov.is_zero());
    CHECK(cov.n_modes() == 4);
    CHECK(cov.antisymmetry_defect() < 1e-11);
    CHECK(cov.purity_defect() < 1e-8);

    bool broke = false;
    const PairingState pairing = assembler.assemble_pairing(phi, &broke);
    const Eigen::VectorXcd dense = assembler.assemble_dense_amplitudes(phi);
    CHECK(!broke);
    const Eigen::VectorXcd pa = pairing.amplitudes();
    CHECK((pa - dense).cwiseAbs().maxCoeff() < 1e-9 * dense.norm());

    // Norms agree across all three routes.
    const double n_cov = cov.norm_squared();
    const double n_dense = dense.squaredNorm();
    CHECK(n_cov == doctest::Approx(n_dense).epsilon(1e-9));

    // Two-point functions against the dense amplitudes.
    FockState f(4, dense);
    f.normalize_with(nullptr);
    for (int m = 0; m < 4; ++m) {
      FockState fm = f;
      fm.apply_annihilate(m);
      FockState fm2 = fm;
      const cdouble occ = fm.overlap(fm2);
      CHECK(std::abs(cov.two_point({m, true}, {m, false}) - occ) < 1e-9);
    }
  }
}

TEST_CASE("pure gauge limit at t = 0") {
  SiteTensorParams p = generic_params();
  p.t = 0.0;
  const LatticeGeometry geom(2, 2, Boundary::torus);
  const FpepsAssembler assembler(geom, p);
  const GaugeConfiguration phi = uniform_config(geom, 0.0);
  const CovarianceState psi = assembler.assemble(phi);
  REQUIRE(!psi.is_zero());
  for (int m = 0; m < 4; ++m) {
    CHECK(std::abs(psi.occupation(m)) < 1e-12);
  }
}

TEST_CASE("p(Phi) is invariant under star-signed gauge shifts") {
  const LatticeGeometry geom(2, 2, Boundary::torus);
  const FpepsAssembler assembler(geom, generic_params());
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unif(0.0, 2 * std::numbers::pi);
  for (int rep = 0; rep < 20; ++rep) {
    const GaugeConfiguration phi = random_config(geom, rng);
    const Vertex x{static_cast<int>(rng() % 2), static_cast<int>(rng() % 2)};
    const double lambda = unif(rng);
    const double w0 = assembler.log_weight(phi);
    const double w1 = assembler.log_weight(gauge_shifted(geom, phi, x, lambda));
    CHECK(w0 == doctest::Approx(w1).epsilon(1e-10));
  }
}

TEST_CASE("gauge shifts also preserve the weight on open boundaries") {
  const LatticeGeometry geom(2, 2, Boundary::open);
  const FpepsAssembler assembler(geom, generic_params());
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> unif(0.0, 2 * std::numbers::pi);
  for (int rep = 0; rep < 8; ++rep) {
    const GaugeConfiguration phi = random_config(geom, rng);
    const Vertex x{static_cast<int>(rng() % 2), static_cast<int>(rng() % 2)};
    const double lambda = unif(rng);
    CHECK(assembler.log_weight(phi) ==
          doctest::Approx(assembler.log_weight(gauge_shifted(geom, phi, x, lambda)))
              .epsilon(1e-10));
  }
}

TEST_CASE("corrupted bond breaks gauge invariance") {
  const LatticeGeometry geom(2, 2, Boundary::torus);
  const FpepsAssembler corrupted(geom, generic_params(), Corruption::wrong_bond_pairing);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unif(0.5, 2.5);
  double worst = 0.0;
  for (int rep = 0; rep < 10; ++rep) {
    const GaugeConfiguration phi = random_config(geom, rng);
    const double w0 = corrupted.log_weight(phi);
    const double w1 = corrupted.log_weight(gauge_shifted(geom, phi, {0, 0}, unif(rng)));
    if (std::isfinite(w0) && std::isfinite(w1)) {
      worst = std::max(worst, std::abs(w0 - w1));
    }
  }
  CHECK(worst > 1e-4);
}

TEST_CASE("charge conjugation and two-site translation invariance") {
  const LatticeGeometry geom(2, 2, Boundary::torus);
  const FpepsAssembler assembler(geom, generic_params());
  std::mt19937_64 rng(37);
  for (int rep = 0; rep < 10; ++rep) {
    const GaugeConfiguration phi = random_config(geom, rng);
    const double w = assembler.log_weight(phi);
    for (Direction d : {Direction::d1, Direction::d2}) {
      // One-site translation with angle negation is charge conjugation.
      const GaugeConfiguration cc = translated_negated(geom, phi, d);
      CHECK(w == doctest::Approx(assembler.log_weight(cc)).epsilon(1e-10));
      // Two applications undo the negation: plain two-site translation.
      const GaugeConfiguration tt = translated_negated(geom, cc, d);
      CHECK(w == doctest::Approx(assembler.log_weight(tt)).epsilon(1e-10));
    }
  }
}

TEST_CASE("measured electric field support") {
  const SiteTensorParams p = generic_params();

  SUBCASE("Z_3 exact contraction stays in the truncation window") {
    const LatticeGeometry geom(2, 2, Boundary::torus);
    const auto support = measured_field_support(geom, p, 3);
    double total = 0;
    for (const auto& [e, w] : support) {
      CHECK(std::abs(e) <= 1);
      total += w;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  }

  SUBCASE("Z_5 window shows no leakage beyond |E| = 1") {
    const LatticeGeometry geom(2, 2, Boundary::open);
    const auto support = measured_field_support(geom, p, 5);
    for (const auto& [e, w] : support) {
      if (std::abs(e) > 1) CHECK(w < 1e-12);
    }
    CHECK(support.at(0) > 0.0);
  }

  SUBCASE("trivial tensor concentrates on E = 0") {
    SiteTensorParams trivial;
    trivial.t = 0;
    trivial.y = trivial.z = 0;
    const LatticeGeometry geom(2, 2, Boundary::open);
    const auto support = measured_field_support(geom, trivial, 5);
    for (const auto& [e, w] : support) {
      if (e != 0) CHECK(w < 1e-12);
    }
    CHECK(support.at(0) == doctest::Approx(1.0));
  }

  SUBCASE("corrupted gauging leaks outside the window and is detected") {
    const LatticeGeometry geom(2, 2, Boundary::open);
    const auto support =
        measured_field_support(geom, p, 5, Corruption::double_gauging);
    double outside = 0;
    for (const auto& [e, w] : support) {
      if (std::abs(e) > 1) outside += w;
    }
    CHECK(outside > 1e-6);
  }
}

TEST_CASE("toy bosonic PEPS symmetries") {
  const LatticeGeometry geom(2, 2, Boundary::torus);
  const ToyPeps toy(geom, 1, 1, 3);
  const StateVector psi0 = toy.psi0();
  const StateVector psi = toy.psi_gauged();
  CHECK(psi0.norm() == doctest::Approx(1.0));
  CHECK(psi.norm() == doctest::Approx(1.0));

  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> unif(0.0, 2 * std::numbers::pi);
  for (int rep = 0; rep < 20; ++rep) {
    const double lambda = unif(rng);
    CHECK(toy.global_invariance_defect(psi0, lambda) < 1e-12);
    for (int vi = 0; vi < geom.n_vertices(); ++vi) {
      CHECK(toy.gauss_invariance_defect(psi, geom.vertex_at(vi), lambda) < 1e-12);
    }
  }

  SUBCASE("j = 0 gives the product state with all fields zero") {
    const ToyPeps frozen(geom, 0, 1, 3);
    const StateVector s = frozen.psi_gauged();
    int nonzero = 0;
    for (Eigen::Index b = 0; b < s.amps().size(); ++b) {
      if (std::abs(s.amps()[b]) > 0) {
        ++nonzero;
        for (int vi = 0; vi < geom.n_vertices(); ++vi) {
          CHECK(frozen.matter_charge(b, vi) == 0);
        }
      }
    }
    CHECK(nonzero == 1);
  }
}
