#ifndef GAUGEPEPS_SAMPLER_HPP
#define GAUGEPEPS_SAMPLER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gaugepeps/fpeps.hpp"
#include "gaugepeps/lattice.hpp"

namespace gaugepeps {

struct ChainConfig {
  int n_chains = 1;
  std::int64_t n_sweeps = 10000;
  std::int64_t burn_in = 1000;
  double delta = 1.0;       // proposal half-width in radians (continuous mode)
  std::uint64_t seed = 1;   // per-chain streams derive from this
  int thinning = 1;
  int zn = 0;               // 0: continuous angles; N >= 2: Z_N proposals
  bool tune_delta = true;   // target 40-60% acceptance during burn-in

  void validate() const;
};

struct EstimateWithError {
  cdouble mean{0.0, 0.0};
  double std_error = 0.0;     // sqrt(se_re^2 + se_im^2), from blocking
  double std_error_re = 0.0;
  double std_error_im = 0.0;
  double tau_int = 1.0;       // integrated autocorrelation time (windowed)
  double n_eff = 0.0;
};

struct SweepRecord {
  std::int64_t sweep = 0;
  double log_weight = 0.0;
  double acceptance = 0.0;
};

struct ChainOutput {
  std::vector<GaugeConfiguration> samples;  // thinned, post burn-in
  std::vector<SweepRecord> log;
  double acceptance_rate = 0.0;
  double tuned_delta = 0.0;
  std::uint64_t seed = 0;
};

struct RunOutput {
  std::vector<ChainOutput> chains;
  std::vector<GaugeConfiguration> merged;  // deterministic chain-order merge
};

class GaugeSampler {
 public:
  GaugeSampler(LatticeGeometry geom, SiteTensorParams params);

  double log_weight(const GaugeConfiguration& phi) const;
  RunOutput run(const ChainConfig& config, int n_threads = 1) const;

  const LatticeGeometry& geometry() const { return geom_; }
  const FpepsAssembler& assembler() const { return assembler_; }

 private:
  LatticeGeometry geom_;
  FpepsAssembler assembler_;

  // Tabulated weights for Z_N runs with a small configuration space.
  mutable std::optional<std::vector<double>> weight_table_;
  mutable int table_n_ = 0;
  void ensure_table(int n) const;
  std::int64_t config_index(const std::vector<int>& ks, int n) const;

  ChainOutput run_chain(const ChainConfig& config, std::uint64_t seed) const;
};

// e^{i sum of signed angles} along the path for one configuration.
cdouble path_phase(const LatticeGeometry& geom, const GaugeConfiguration& phi,
                   const OrientedPath& path);

// Monte Carlo estimators over stored samples.
EstimateWithError wilson_loop(const LatticeGeometry& geom,
                              const std::vector<GaugeConfiguration>& samples,
                              const OrientedPath& closed_path);
EstimateWithError meson_string(const LatticeGeometry& geom, const FpepsAssembler& assembler,
                               Vertex x, Vertex y,
                               const std::vector<GaugeConfiguration>& samples,
                               const OrientedPath& open_path);

// Statistics over a complex sample series: blocking errors + windowed
// integrated autocorrelation time.
EstimateWithError estimate_series(const std::vector<cdouble>& samples);

// Exact weighted average over the full Z_N configuration space:
// sum_Phi p(Phi) O(Phi) / sum_Phi p(Phi).  The observable may use the
// per-configuration Gaussian state (null when p(Phi)=0).
using ConfigObservable =
    std::function<cdouble(const GaugeConfiguration&, const CovarianceState*)>;
cdouble exact_reference(const LatticeGeometry& geom, const SiteTensorParams& params,
                        int n, const ConfigObservable& observable);

ConfigObservable wilson_observable(const LatticeGeometry& geom, const OrientedPath& path);
ConfigObservable meson_observable(const LatticeGeometry& geom, Vertex x, Vertex y,
                                  const OrientedPath& path);

}  // namespace gaugepeps

#endif
