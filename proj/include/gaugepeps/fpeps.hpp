#ifndef GAUGEPEPS_FPEPS_HPP
#define GAUGEPEPS_FPEPS_HPP

#include <map>
#include <optional>
#include <vector>

#include "gaugepeps/covariance.hpp"
#include "gaugepeps/fock.hpp"
#include "gaugepeps/lattice.hpp"
#include "gaugepeps/pairing.hpp"
#include "gaugepeps/site_tensor.hpp"

namespace gaugepeps {

// One angle per link, in the orientation where the Gauss law is the standard
// divergence: the assembler rotates the origin's outgoing legs by
// (-1)^x phi(link).
struct GaugeConfiguration {
  std::vector<double> angles;
};

GaugeConfiguration uniform_config(const LatticeGeometry& geom, double angle = 0.0);
GaugeConfiguration zn_config(const LatticeGeometry& geom, const std::vector<int>& ks, int n);
// Star-signed shift: outgoing links of x get +lambda, ingoing -lambda.
GaugeConfiguration gauge_shifted(const LatticeGeometry& geom, const GaugeConfiguration& phi,
                                 Vertex x, double lambda);
// Charge-conjugation companion map: phi'(x,i) = -phi(x+e_dir, i) on a torus.
GaugeConfiguration translated_negated(const LatticeGeometry& geom,
                                      const GaugeConfiguration& phi, Direction dir);

// Bond states: modes [z+, z-, w+, w-] for a link from leg z to leg w.
CovarianceState horizontal_bond();
CovarianceState vertical_bond();

// Dense counterparts used by the exact routes and the transfer matrix.
FockState fock_site_state(int parity, const SiteTensorParams& p);  // raw exponential
FockState fock_horizontal_bond();                                  // unit norm
FockState fock_vertical_bond();

// Deliberate corruptions used as negative controls.
enum class Corruption { none, double_gauging, wrong_bond_pairing };

class FpepsAssembler {
 public:
  FpepsAssembler(LatticeGeometry geom, SiteTensorParams params,
                 Corruption corruption = Corruption::none);

  const LatticeGeometry& geometry() const { return geom_; }
  const SiteTensorParams& params() const { return params_; }

  // Physical-fermion Gaussian state |psi(Phi)> with tracked norm; physical
  // modes come out in row-major vertex order.
  CovarianceState assemble(const GaugeConfiguration& phi) const;
  // log <psi(Phi)|psi(Phi)>; -inf at zero-norm points.
  double log_weight(const GaugeConfiguration& phi) const;

  // Phase-exact route used by exact Z_N enumerations.  On breakdown of the
  // exponential form the dense route below is the fallback.
  PairingState assemble_pairing(const GaugeConfiguration& phi, bool* breakdown) const;
  // Dense many-body route (small lattices only); amplitudes over the
  // physical modes in row-major vertex order.
  Eigen::VectorXcd assemble_dense_amplitudes(const GaugeConfiguration& phi) const;
  // Amplitudes via the pairing route with automatic dense fallback.
  Eigen::VectorXcd physical_amplitudes(const GaugeConfiguration& phi) const;

 private:
  LatticeGeometry geom_;
  SiteTensorParams params_;
  Corruption corruption_ = Corruption::none;

  struct RotationPlan {
    int vertex;      // vertex index
    int plus_mode;   // local index of z+
    int minus_mode;  // local z-
    int link;        // link index
    double sign;     // (-1)^x of the origin
  };
  std::vector<RotationPlan> rotations_;
  struct BondPlan {
    std::vector<std::pair<int, int>> legs;  // (vertex, local mode), z+,z-,w+,w-
    bool horizontal;
  };
  std::vector<BondPlan> bonds_;
  std::vector<std::pair<int, int>> dangling_;  // open-boundary legs

  CovarianceState site_even_, site_odd_;
  PairingState site_even_pairing_, site_odd_pairing_;
};

// Support of the physical electric field on the gauged state, via exact Z_N
// enumeration of the configuration basis.  Returns total weight per
// symmetric-window eigenvalue, accumulated over all links, normalized.
std::map<int, double> measured_field_support(const LatticeGeometry& geom,
                                             const SiteTensorParams& params, int n,
                                             Corruption corruption = Corruption::none);

}  // namespace gaugepeps

#endif
