#ifndef GAUGEPEPS_SITE_TENSOR_HPP
#define GAUGEPEPS_SITE_TENSOR_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "gaugepeps/covariance.hpp"
#include "gaugepeps/pairing.hpp"

namespace gaugepeps {

// Parameters of the fPEPS site tensor A = exp(T_ij a_i^dag b_j^dag).
// eta_p is an eighth root of unity with eta_p^4 = -1.
struct SiteTensorParams {
  double t = 1.0;
  cdouble y{0.0, 0.0};
  cdouble z{0.0, 0.0};
  cdouble eta_p = eta_from_index(0);

  // The eight admissible roots exp(i pi (2k+1)/4), k = 0..7.
  static cdouble eta_from_index(int k);
  void validate() const;  // throws on t < 0 or eta_p^4 != -1
};

// Per-vertex virtual layout: one physical mode and four leg pairs.
// Canonical local mode order used throughout the fPEPS code.
enum LocalMode : int {
  kPhys = 0,
  kRp = 1, kRm = 2,  // right leg +/-
  kUp = 3, kUm = 4,  // up
  kLp = 5, kLm = 6,  // left
  kDp = 7, kDm = 8,  // down
};
constexpr int kModesPerSite = 9;

// The 5x4 pairing matrix: first row couples the physical mode to the four
// positive legs (t, eta^2 t, eta t, eta^3 t); the virtual 4x4 block is the
// antisymmetric tau of (y, z).
Eigen::MatrixXcd build_site_T(const SiteTensorParams& p);

// Negative (a) and positive (b) local modes of the virtual Gauss generator;
// the split swaps on the odd sublattice.
std::vector<int> site_a_modes(int parity);
std::vector<int> site_b_modes(int parity);

// Nine-mode Gaussian site state for a vertex of the given parity.
CovarianceState site_state(int parity, const SiteTensorParams& p);
PairingState site_state_pairing(int parity, const SiteTensorParams& p);

// Checks invariance of the site covariance under rotations generated by the
// virtual Gauss operator; returns the largest deviation over the lambdas.
double verify_virtual_gauss(int parity, const SiteTensorParams& p,
                            const std::vector<double>& lambdas);
double virtual_gauss_defect(int parity, const Eigen::MatrixXcd& site_T, double lambda);

}  // namespace gaugepeps

#endif
