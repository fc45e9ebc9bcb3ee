#include "gaugepeps/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <map>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace gaugepeps {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Deterministic uniform double in [0,1) from the raw engine output, so runs
// are reproducible independent of the standard library's distributions.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0 ? a + kTwoPi : a;
}

std::int64_t pow_int(int base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

void ChainConfig::validate() const {
  if (delta <= 0 || delta > std::numbers::pi) {
    throw std::invalid_argument("proposal width must lie in (0, pi]");
  }
  if (n_chains < 1 || n_sweeps < 1 || burn_in < 0 || thinning < 1) {
    throw std::invalid_argument("invalid chain configuration");
  }
  if (zn != 0 && zn < 2) throw std::invalid_argument("Z_N modulus must be >= 2");
}

GaugeSampler::GaugeSampler(LatticeGeometry geom, SiteTensorParams params)
    : geom_(std::move(geom)), assembler_(geom_, params) {}

double GaugeSampler::log_weight(const GaugeConfiguration& phi) const {
  return assembler_.log_weight(phi);
}

std::int64_t GaugeSampler::config_index(const std::vector<int>& ks, int n) const {
  std::int64_t idx = 0;
  for (int l = geom_.n_links() - 1; l >= 0; --l) idx = idx * n + ks[l];
  return idx;
}

void GaugeSampler::ensure_table(int n) const {
  if (weight_table_ && table_n_ == n) return;
  const std::int64_t n_configs = pow_int(n, geom_.n_links());
  if (n_configs > 2'000'000) {
    weight_table_.reset();
    table_n_ = 0;
    return;  // too large to tabulate; fall back to direct evaluation
  }
  std::vector<double> table(n_configs);
  std::vector<int> ks(geom_.n_links(), 0);
  for (std::int64_t c = 0; c < n_configs; ++c) {
    std::int64_t rem = c;
    for (int l = 0; l < geom_.n_links(); ++l) {
      ks[l] = static_cast<int>(rem % n);
      rem /= n;
    }
    table[c] = assembler_.log_weight(zn_config(geom_, ks, n));
  }
  weight_table_ = std::move(table);
  table_n_ = n;
}

ChainOutput GaugeSampler::run_chain(const ChainConfig& config, std::uint64_t seed) const {
  const int nl = geom_.n_links();
  std::mt19937_64 rng(seed);
  ChainOutput out;
  out.seed = seed;

  const bool discrete = config.zn != 0;
  const int n = config.zn;
  if (discrete) ensure_table(n);
  const bool tabulated = discrete && weight_table_.has_value();

  std::vector<int> ks(nl, 0);
  GaugeConfiguration phi = uniform_config(geom_, 0.0);
  auto current_log_weight = [&]() {
    if (tabulated) return (*weight_table_)[config_index(ks, n)];
    return assembler_.log_weight(discrete ? zn_config(geom_, ks, n) : phi);
  };
  double logw = current_log_weight();
  double delta = config.delta;

  std::int64_t accepted = 0, proposed = 0;
  std::int64_t window_accepted = 0, window_proposed = 0;
  const std::int64_t total_sweeps = config.burn_in + config.n_sweeps;
  out.samples.reserve(config.n_sweeps / config.thinning + 1);

  for (std::int64_t sweep = 0; sweep < total_sweeps; ++sweep) {
    std::int64_t sweep_accepts = 0;
    for (int l = 0; l < nl; ++l) {
      ++proposed;
      ++window_proposed;
      double new_logw;
      int old_k = 0;
      double old_angle = 0;
      if (discrete) {
        old_k = ks[l];
        const int shift = 1 + static_cast<int>(uniform01(rng) * (n - 1));
        ks[l] = (old_k + shift) % n;
        new_logw = tabulated ? (*weight_table_)[config_index(ks, n)]
                             : assembler_.log_weight(zn_config(geom_, ks, n));
      } else {
        old_angle = phi.angles[l];
        phi.angles[l] = wrap_angle(old_angle + delta * (2.0 * uniform01(rng) - 1.0));
        new_logw = assembler_.log_weight(phi);
      }
      const double dl = new_logw - logw;
      const bool accept = std::isfinite(new_logw) &&
                          (dl >= 0 || uniform01(rng) < std::exp(dl));
      if (accept) {
        logw = new_logw;
        ++accepted;
        ++window_accepted;
        ++sweep_accepts;
      } else {
        if (discrete) ks[l] = old_k; else phi.angles[l] = old_angle;
      }
    }
    // Proposal-width tuning towards 40-60% acceptance during burn-in.
    if (!discrete && config.tune_delta && sweep < config.burn_in &&
        window_proposed >= 50 * nl) {
      const double rate = static_cast<double>(window_accepted) / window_proposed;
      if (rate < 0.4) delta = std::max(1e-3, delta * 0.8);
      if (rate > 0.6) delta = std::min(std::numbers::pi, delta * 1.25);
      window_accepted = window_proposed = 0;
    }
    if (sweep >= config.burn_in) {
      const std::int64_t k = sweep - config.burn_in;
      if (k % config.thinning == 0) {
        out.samples.push_back(discrete ? zn_config(geom_, ks, n) : phi);
      }
      out.log.push_back({sweep, logw, double(sweep_accepts) / nl});
    }
  }
  out.acceptance_rate = proposed > 0 ? static_cast<double>(accepted) / proposed : 0.0;
  out.tuned_delta = delta;
  return out;
}

RunOutput GaugeSampler::run(const ChainConfig& config, int n_threads) const {
  config.validate();
  if (config.zn != 0) ensure_table(config.zn);  // shared, built once up front
  RunOutput out;
  out.chains.resize(config.n_chains);
  const auto worker = [&](int chain) {
    // Distinct, well-separated streams per chain.
    const std::uint64_t seed = config.seed + 0x9e3779b97f4a7c15ULL * (chain + 1);
    out.chains[chain] = run_chain(config, seed);
  };
  if (n_threads <= 1 || config.n_chains == 1) {
    for (int c = 0; c < config.n_chains; ++c) worker(c);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    const int workers = std::min(n_threads, config.n_chains);
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&]() {
        for (int c = next.fetch_add(1); c < config.n_chains; c = next.fetch_add(1)) {
          worker(c);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  for (const ChainOutput& c : out.chains) {
    out.merged.insert(out.merged.end(), c.samples.begin(), c.samples.end());
  }
  return out;
}

cdouble path_phase(const LatticeGeometry& geom, const GaugeConfiguration& phi,
                   const OrientedPath& path) {
  double total = 0.0;
  for (const PathStep& s : path.steps) {
    const double a = phi.angles[geom.link_index(s.link)];
    total += s.forward ? a : -a;
  }
  return std::polar(1.0, total);
}

EstimateWithError estimate_series(const std::vector<cdouble>& samples) {
  EstimateWithError est;
  const std::int64_t n = static_cast<std::int64_t>(samples.size());
  if (n == 0) return est;
  cdouble mean(0, 0);
  for (const cdouble& s : samples) mean += s;
  mean /= static_cast<double>(n);
  est.mean = mean;

  // Blocking with automatic block-size doubling: use the largest block size
  // that still leaves at least 32 blocks and take the maximal (plateau)
  // error over the sizes explored.
  auto blocked_error = [&](auto&& component) {
    double best = 0.0;
    for (std::int64_t bs = 1; n / bs >= 32; bs *= 2) {
      const std::int64_t nb = n / bs;
      double var = 0.0;
      for (std::int64_t b = 0; b < nb; ++b) {
        double m = 0.0;
        for (std::int64_t i = 0; i < bs; ++i) m += component(samples[b * bs + i]);
        m /= bs;
        const double d = m - component(mean);
        var += d * d;
      }
      var /= (nb - 1.0);
      best = std::max(best, std::sqrt(var / nb));
    }
    if (best == 0.0 && n > 1) {  // series shorter than the minimum block count
      double var = 0.0;
      for (const cdouble& s : samples) {
        const double d = component(s) - component(mean);
        var += d * d;
      }
      best = std::sqrt(var / (n - 1.0) / n);
    }
    return best;
  };
  est.std_error_re = blocked_error([](const cdouble& c) { return c.real(); });
  est.std_error_im = blocked_error([](const cdouble& c) { return c.imag(); });
  est.std_error = std::hypot(est.std_error_re, est.std_error_im);

  // Integrated autocorrelation with a self-consistent window (on the
  // component with the larger variance).
  double var_re = 0, var_im = 0;
  for (const cdouble& s : samples) {
    var_re += (s.real() - mean.real()) * (s.real() - mean.real());
    var_im += (s.imag() - mean.imag()) * (s.imag() - mean.imag());
  }
  const bool use_re = var_re >= var_im;
  auto comp = [&](const cdouble& c) { return use_re ? c.real() : c.imag(); };
  const double var0 = (use_re ? var_re : var_im) / n;
  double tau = 1.0;
  if (var0 > 0) {
    for (std::int64_t t = 1; t < n / 2; ++t) {
      double rho = 0.0;
      for (std::int64_t i = 0; i + t < n; ++i) {
        rho += (comp(samples[i]) - comp(mean)) * (comp(samples[i + t]) - comp(mean));
      }
      rho /= (n - t) * var0;
      tau += 2.0 * rho;
      if (t >= 6.0 * tau) break;  // Sokal window
    }
  }
  est.tau_int = std::max(1.0, tau);
  est.n_eff = n / est.tau_int;
  return est;
}

EstimateWithError wilson_loop(const LatticeGeometry& geom,
                              const std::vector<GaugeConfiguration>& samples,
                              const OrientedPath& closed_path) {
  if (!closed_path.closed) throw std::invalid_argument("Wilson loop requires a closed path");
  std::vector<cdouble> values;
  values.reserve(samples.size());
  for (const GaugeConfiguration& phi : samples) {
    values.push_back(path_phase(geom, phi, closed_path));
  }
  return estimate_series(values);
}

EstimateWithError meson_string(const LatticeGeometry& geom, const FpepsAssembler& assembler,
                               Vertex x, Vertex y,
                               const std::vector<GaugeConfiguration>& samples,
                               const OrientedPath& open_path) {
  if (open_path.closed) throw std::invalid_argument("meson string requires an open path");
  const int mx = geom.vertex_index(x);
  const int my = geom.vertex_index(y);
  std::vector<cdouble> values;
  values.reserve(samples.size());
  // Discrete chains revisit few distinct configurations; memoize the
  // Gaussian inner value on exact angle bit patterns.
  std::map<std::vector<std::uint64_t>, cdouble> memo;
  for (const GaugeConfiguration& phi : samples) {
    std::vector<std::uint64_t> key(phi.angles.size());
    std::memcpy(key.data(), phi.angles.data(), phi.angles.size() * sizeof(double));
    auto it = memo.find(key);
    cdouble inner(0, 0);
    if (it != memo.end()) {
      inner = it->second;
    } else {
      const CovarianceState psi = assembler.assemble(phi);
      if (!psi.is_zero()) inner = psi.two_point({mx, true}, {my, false});
      if (memo.size() < 65536) memo.emplace(std::move(key), inner);
    }
    values.push_back(path_phase(geom, phi, open_path) * inner);
  }
  return estimate_series(values);
}

cdouble exact_reference(const LatticeGeometry& geom, const SiteTensorParams& params,
                        int n, const ConfigObservable& observable) {
  const FpepsAssembler assembler(geom, params);
  const int nl = geom.n_links();
  std::int64_t n_configs = 1;
  for (int l = 0; l < nl; ++l) {
    n_configs *= n;
    if (n_configs > 10'000'000) {
      throw std::invalid_argument("Z_N enumeration exceeds the configured cap");
    }
  }
  cdouble num(0, 0);
  double den = 0.0;
  std::vector<int> ks(nl, 0);
  for (std::int64_t c = 0; c < n_configs; ++c) {
    std::int64_t rem = c;
    for (int l = 0; l < nl; ++l) {
      ks[l] = static_cast<int>(rem % n);
      rem /= n;
    }
    const GaugeConfiguration phi = zn_config(geom, ks, n);
    const CovarianceState psi = assembler.assemble(phi);
    const double w = psi.is_zero() ? 0.0 : psi.norm_squared();
    if (w == 0.0) continue;
    num += w * observable(phi, psi.is_zero() ? nullptr : &psi);
    den += w;
  }
  if (den == 0.0) throw std::runtime_error("all configurations have zero weight");
  return num / den;
}

ConfigObservable wilson_observable(const LatticeGeometry& geom, const OrientedPath& path) {
  return [&geom, path](const GaugeConfiguration& phi, const CovarianceState*) {
    return path_phase(geom, phi, path);
  };
}

ConfigObservable meson_observable(const LatticeGeometry& geom, Vertex x, Vertex y,
                                  const OrientedPath& path) {
  const int mx = geom.vertex_index(x);
  const int my = geom.vertex_index(y);
  return [&geom, mx, my, path](const GaugeConfiguration& phi, const CovarianceState* psi) {
    cdouble inner(0, 0);
    if (psi != nullptr) inner = psi->two_point({mx, true}, {my, false});
    return path_phase(geom, phi, path) * inner;
  };
}

}  // namespace gaugepeps
