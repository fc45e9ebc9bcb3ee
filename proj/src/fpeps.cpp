#include "gaugepeps/fpeps.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gaugepeps/operator_builder.hpp"

namespace gaugepeps {

namespace {

Eigen::MatrixXcd horizontal_bond_T() {
  // omega_h = exp(l+^dag r-^dag + l-^dag r+^dag): in a^dag b^dag order with
  // a = (r+, r-), b = (l+, l-) the crossed pairs pick up a reordering sign.
  Eigen::MatrixXcd t(2, 2);
  t << 0, -1, -1, 0;
  return t;
}

Eigen::MatrixXcd vertical_bond_T() {
  // omega_v = exp(u+^dag d-^dag + u-^dag d+^dag), already in a^dag b^dag order.
  Eigen::MatrixXcd t(2, 2);
  t << 0, 1, 1, 0;
  return t;
}

Eigen::MatrixXcd wrong_bond_T() {
  // Uncrossed pairing, used only as a negative control.
  Eigen::MatrixXcd t(2, 2);
  t << 1, 0, 0, 1;
  return t;
}

FockState fock_bond(const Eigen::MatrixXcd& t) {
  FockState b = FockState::vacuum(4);
  b.apply_pairing_exp(t, {0, 1}, {2, 3});
  b.normalize_with(nullptr);
  return b;
}

// Index bookkeeping for sequential contractions: positions of live modes.
class ModeMap {
 public:
  explicit ModeMap(int n) : pos_(n) {
    for (int i = 0; i < n; ++i) pos_[i] = i;
  }
  int operator[](int original) const {
    if (pos_[original] < 0) throw std::logic_error("mode already contracted");
    return pos_[original];
  }
  void remove(const std::vector<int>& original_modes) {
    std::vector<int> removed;
    removed.reserve(original_modes.size());
    for (int m : original_modes) {
      removed.push_back(pos_[m]);
      pos_[m] = -1;
    }
    for (int& p : pos_) {
      if (p < 0) continue;
      int shift = 0;
      for (int r : removed) {
        if (r < p) ++shift;
      }
      p -= shift;
    }
  }

 private:
  std::vector<int> pos_;
};

}  // namespace

namespace {
// Bond states are normalized so that projecting a bond onto itself yields 1.
CovarianceState normalized_bond_cov(const Eigen::MatrixXcd& t) {
  CovarianceState b = CovarianceState::from_pairing(t);
  b.scale_log_norm(-b.log_norm());
  return b;
}
PairingState normalized_bond_pairing(const Eigen::MatrixXcd& t) {
  PairingState b = PairingState::from_pairing(t);
  return b;  // from_pairing already yields the unit-norm state
}
}  // namespace

CovarianceState horizontal_bond() { return normalized_bond_cov(horizontal_bond_T()); }
CovarianceState vertical_bond() { return normalized_bond_cov(vertical_bond_T()); }

FockState fock_site_state(int parity, const SiteTensorParams& p) {
  // Raw exponential form, matching the pairing route.
  FockState s = FockState::vacuum(kModesPerSite);
  s.apply_pairing_exp(build_site_T(p), site_a_modes(parity), site_b_modes(parity));
  return s;
}
FockState fock_horizontal_bond() { return fock_bond(horizontal_bond_T()); }
FockState fock_vertical_bond() { return fock_bond(vertical_bond_T()); }

GaugeConfiguration uniform_config(const LatticeGeometry& geom, double angle) {
  return GaugeConfiguration{std::vector<double>(geom.n_links(), angle)};
}

GaugeConfiguration zn_config(const LatticeGeometry& geom, const std::vector<int>& ks,
                             int n) {
  if (static_cast<int>(ks.size()) != geom.n_links()) {
    throw std::invalid_argument("one Z_N index per link required");
  }
  GaugeConfiguration phi;
  phi.angles.reserve(ks.size());
  for (int k : ks) phi.angles.push_back(2.0 * std::numbers::pi * k / n);
  return phi;
}

GaugeConfiguration gauge_shifted(const LatticeGeometry& geom, const GaugeConfiguration& phi,
                                 Vertex x, double lambda) {
  GaugeConfiguration out = phi;
  for (const auto& [link, sign] : geom.star_links(x)) {
    out.angles[geom.link_index(link)] += sign * lambda;
  }
  return out;
}

GaugeConfiguration translated_negated(const LatticeGeometry& geom,
                                      const GaugeConfiguration& phi, Direction dir) {
  if (!(geom.periodic_x() && geom.periodic_y())) {
    throw std::invalid_argument("translation map requires a torus");
  }
  GaugeConfiguration out = phi;
  for (int li = 0; li < geom.n_links(); ++li) {
    LinkId l = geom.link_at(li);
    Vertex shifted = l.origin;
    if (dir == Direction::d1) ++shifted.x; else ++shifted.y;
    geom.wrap(shifted);
    out.angles[li] = -phi.angles[geom.link_index(LinkId{shifted, l.dir})];
  }
  return out;
}

FpepsAssembler::FpepsAssembler(LatticeGeometry geom, SiteTensorParams params,
                               Corruption corruption)
    : geom_(std::move(geom)),
      params_(params),
      corruption_(corruption),
      site_even_(site_state(+1, params)),
      site_odd_(site_state(-1, params)),
      site_even_pairing_(site_state_pairing(+1, params)),
      site_odd_pairing_(site_state_pairing(-1, params)) {
  params_.validate();
  for (int li = 0; li < geom_.n_links(); ++li) {
    const LinkId l = geom_.link_at(li);
    const bool horizontal = l.dir == Direction::d1;
    const int ov = geom_.vertex_index(l.origin);
    const int tv = geom_.vertex_index(geom_.link_target(l));
    RotationPlan rot;
    rot.vertex = ov;
    rot.plus_mode = horizontal ? kRp : kUp;
    rot.minus_mode = horizontal ? kRm : kUm;
    rot.link = li;
    rot.sign = geom_.parity(l.origin);
    rotations_.push_back(rot);
    BondPlan bond;
    bond.horizontal = horizontal;
    if (horizontal) {
      bond.legs = {{ov, kRp}, {ov, kRm}, {tv, kLp}, {tv, kLm}};
    } else {
      bond.legs = {{ov, kUp}, {ov, kUm}, {tv, kDp}, {tv, kDm}};
    }
    bonds_.push_back(std::move(bond));
  }
  // Legs not served by any link terminate on the virtual vacuum.
  for (int vi = 0; vi < geom_.n_vertices(); ++vi) {
    const Vertex v = geom_.vertex_at(vi);
    const auto leg_absent = [&](Vertex origin, Direction d) {
      Vertex o = origin;
      return !geom_.wrap(o) || !geom_.link_exists(LinkId{o, d});
    };
    if (leg_absent(v, Direction::d1)) {
      dangling_.push_back({vi, kRp});
      dangling_.push_back({vi, kRm});
    }
    if (leg_absent(v, Direction::d2)) {
      dangling_.push_back({vi, kUp});
      dangling_.push_back({vi, kUm});
    }
    if (leg_absent(Vertex{v.x - 1, v.y}, Direction::d1)) {
      dangling_.push_back({vi, kLp});
      dangling_.push_back({vi, kLm});
    }
    if (leg_absent(Vertex{v.x, v.y - 1}, Direction::d2)) {
      dangling_.push_back({vi, kDp});
      dangling_.push_back({vi, kDm});
    }
  }
}

CovarianceState FpepsAssembler::assemble(const GaugeConfiguration& phi) const {
  if (static_cast<int>(phi.angles.size()) != geom_.n_links()) {
    throw std::invalid_argument("configuration does not cover all links");
  }
  const int nv = geom_.n_vertices();
  CovarianceState state = CovarianceState::vacuum(0);
  for (int vi = 0; vi < nv; ++vi) {
    state = state.tensor(geom_.parity(geom_.vertex_at(vi)) > 0 ? site_even_ : site_odd_);
  }
  for (const RotationPlan& r : rotations_) {
    const double theta = r.sign * phi.angles[r.link];
    state.rotate_mode(kModesPerSite * r.vertex + r.plus_mode, +theta);
    state.rotate_mode(kModesPerSite * r.vertex + r.minus_mode, -theta);
    if (corruption_ == Corruption::double_gauging) {
      // Negative control: also rotate the far end of the link, oriented so
      // the crossed bond doubles the transferred field instead of undoing it.
      const BondPlan& b = bonds_[r.link];
      state.rotate_mode(kModesPerSite * b.legs[2].first + b.legs[2].second, -theta);
      state.rotate_mode(kModesPerSite * b.legs[3].first + b.legs[3].second, +theta);
    }
  }
  const CovarianceState bond_h =
      corruption_ == Corruption::wrong_bond_pairing
          ? CovarianceState::from_pairing(wrong_bond_T())
          : horizontal_bond();
  const CovarianceState bond_v = corruption_ == Corruption::wrong_bond_pairing
                                     ? CovarianceState::from_pairing(wrong_bond_T())
                                     : vertical_bond();
  ModeMap pos(kModesPerSite * nv);
  for (const BondPlan& b : bonds_) {
    std::vector<int> original, current;
    for (const auto& [v, local] : b.legs) original.push_back(kModesPerSite * v + local);
    for (int m : original) current.push_back(pos[m]);
    state = state.project_pair(current, b.horizontal ? bond_h : bond_v);
    pos.remove(original);
    if (state.is_zero()) return state;
  }
  const CovarianceState edge = CovarianceState::vacuum(2);
  for (std::size_t i = 0; i + 1 < dangling_.size(); i += 2) {
    const int m1 = kModesPerSite * dangling_[i].first + dangling_[i].second;
    const int m2 = kModesPerSite * dangling_[i + 1].first + dangling_[i + 1].second;
    state = state.project_pair({pos[m1], pos[m2]}, edge);
    pos.remove({m1, m2});
    if (state.is_zero()) return state;
  }
  return state;
}

double FpepsAssembler::log_weight(const GaugeConfiguration& phi) const {
  const CovarianceState psi = assemble(phi);
  if (psi.is_zero()) return -std::numeric_limits<double>::infinity();
  return 2.0 * psi.log_norm();
}

PairingState FpepsAssembler::assemble_pairing(const GaugeConfiguration& phi,
                                              bool* breakdown) const {
  if (breakdown) *breakdown = false;
  const int nv = geom_.n_vertices();
  PairingState state = PairingState::vacuum(0);
  for (int vi = 0; vi < nv; ++vi) {
    state = state.tensor(geom_.parity(geom_.vertex_at(vi)) > 0 ? site_even_pairing_
                                                               : site_odd_pairing_);
  }
  for (const RotationPlan& r : rotations_) {
    const double theta = r.sign * phi.angles[r.link];
    state.rotate_mode(kModesPerSite * r.vertex + r.plus_mode, +theta);
    state.rotate_mode(kModesPerSite * r.vertex + r.minus_mode, -theta);
    if (corruption_ == Corruption::double_gauging) {
      const BondPlan& b = bonds_[r.link];
      state.rotate_mode(kModesPerSite * b.legs[2].first + b.legs[2].second, -theta);
      state.rotate_mode(kModesPerSite * b.legs[3].first + b.legs[3].second, +theta);
    }
  }
  const PairingState bond_h = corruption_ == Corruption::wrong_bond_pairing
                                  ? PairingState::from_pairing(wrong_bond_T())
                                  : PairingState::from_pairing(horizontal_bond_T());
  const PairingState bond_v = corruption_ == Corruption::wrong_bond_pairing
                                  ? PairingState::from_pairing(wrong_bond_T())
                                  : PairingState::from_pairing(vertical_bond_T());
  ModeMap pos(kModesPerSite * nv);
  bool broke = false;
  for (const BondPlan& b : bonds_) {
    std::vector<int> original, current;
    for (const auto& [v, local] : b.legs) original.push_back(kModesPerSite * v + local);
    for (int m : original) current.push_back(pos[m]);
    bool step_broke = false;
    state = state.project(current, b.horizontal ? bond_h : bond_v, &step_broke);
    broke = broke || step_broke;
    pos.remove(original);
  }
  const PairingState edge = PairingState::vacuum(2);
  for (std::size_t i = 0; i + 1 < dangling_.size(); i += 2) {
    const int m1 = kModesPerSite * dangling_[i].first + dangling_[i].second;
    const int m2 = kModesPerSite * dangling_[i + 1].first + dangling_[i + 1].second;
    bool step_broke = false;
    state = state.project({pos[m1], pos[m2]}, edge, &step_broke);
    broke = broke || step_broke;
    pos.remove({m1, m2});
  }
  if (breakdown) *breakdown = broke;
  return state;
}

Eigen::VectorXcd FpepsAssembler::assemble_dense_amplitudes(
    const GaugeConfiguration& phi) const {
  const int nv = geom_.n_vertices();
  const FockState fbond_h = fock_bond(corruption_ == Corruption::wrong_bond_pairing
                                          ? wrong_bond_T()
                                          : horizontal_bond_T());
  const FockState fbond_v = fock_bond(corruption_ == Corruption::wrong_bond_pairing
                                          ? wrong_bond_T()
                                          : vertical_bond_T());
  const FockState edge = FockState::vacuum(2);

  std::vector<int> pos(kModesPerSite * nv, -1);
  std::vector<bool> present(nv, false);
  std::vector<bool> bond_done(bonds_.size(), false);
  FockState state = FockState::vacuum(0);

  auto project_and_remove = [&](const std::vector<int>& originals, const FockState& bond) {
    std::vector<int> current;
    current.reserve(originals.size());
    for (int m : originals) current.push_back(pos[m]);
    state = state.project(current, bond);
    std::vector<int> sorted = current;
    std::sort(sorted.begin(), sorted.end());
    for (int m : originals) pos[m] = -2;
    for (int& p : pos) {
      if (p < 0) continue;
      int shift = 0;
      for (int r : sorted) {
        if (r < p) ++shift;
      }
      p -= shift;
    }
  };

  for (int vi = 0; vi < nv; ++vi) {
    const int parity = geom_.parity(geom_.vertex_at(vi));
    const int base = state.n_modes();
    state = state.tensor(fock_site_state(parity, params_));
    for (int m = 0; m < kModesPerSite; ++m) pos[kModesPerSite * vi + m] = base + m;
    present[vi] = true;
    for (const RotationPlan& r : rotations_) {
      if (r.vertex != vi) continue;
      const double theta = r.sign * phi.angles[r.link];
      state.rotate_mode(pos[kModesPerSite * vi + r.plus_mode], +theta);
      state.rotate_mode(pos[kModesPerSite * vi + r.minus_mode], -theta);
      if (corruption_ == Corruption::double_gauging) {
        const BondPlan& b = bonds_[r.link];
        // Applied when the far vertex joins, if it is not yet present.
        if (present[b.legs[2].first]) {
          state.rotate_mode(pos[kModesPerSite * b.legs[2].first + b.legs[2].second], -theta);
          state.rotate_mode(pos[kModesPerSite * b.legs[3].first + b.legs[3].second], +theta);
        }
      }
    }
    if (corruption_ == Corruption::double_gauging) {
      for (const RotationPlan& r : rotations_) {
        const BondPlan& b = bonds_[r.link];
        if (b.legs[2].first != vi || r.vertex == vi) continue;
        if (!present[r.vertex]) continue;
        const double theta = r.sign * phi.angles[r.link];
        state.rotate_mode(pos[kModesPerSite * vi + b.legs[2].second], -theta);
        state.rotate_mode(pos[kModesPerSite * vi + b.legs[3].second], +theta);
      }
    }
    for (std::size_t bi = 0; bi < bonds_.size(); ++bi) {
      if (bond_done[bi]) continue;
      const BondPlan& b = bonds_[bi];
      if (!present[b.legs[0].first] || !present[b.legs[2].first]) continue;
      std::vector<int> originals;
      for (const auto& [v, local] : b.legs) originals.push_back(kModesPerSite * v + local);
      project_and_remove(originals, b.horizontal ? fbond_h : fbond_v);
      bond_done[bi] = true;
    }
    for (std::size_t i = 0; i + 1 < dangling_.size(); i += 2) {
      if (dangling_[i].first != vi) continue;
      project_and_remove({kModesPerSite * dangling_[i].first + dangling_[i].second,
                          kModesPerSite * dangling_[i + 1].first + dangling_[i + 1].second},
                         edge);
    }
  }
  if (state.n_modes() != nv) throw std::logic_error("contraction left extra modes");
  // Remaining modes are the physical ones; their current order must be the
  // row-major vertex order.
  for (int vi = 0; vi < nv; ++vi) {
    if (pos[kModesPerSite * vi + kPhys] != vi) {
      throw std::logic_error("unexpected physical mode order");
    }
  }
  return state.amps();
}

Eigen::VectorXcd FpepsAssembler::physical_amplitudes(const GaugeConfiguration& phi) const {
  bool broke = false;
  const PairingState p = assemble_pairing(phi, &broke);
  if (!broke) return p.amplitudes();
  return assemble_dense_amplitudes(phi);
}

std::map<int, double> measured_field_support(const LatticeGeometry& geom,
                                             const SiteTensorParams& params, int n,
                                             Corruption corruption) {
  const FpepsAssembler assembler(geom, params, corruption);
  const int nl = geom.n_links();
  const int nv = geom.n_vertices();
  std::int64_t n_configs = 1;
  for (int l = 0; l < nl; ++l) {
    n_configs *= n;
    if (n_configs > 10'000'000) throw std::invalid_argument("Z_N enumeration too large");
  }
  const std::int64_t n_occ = std::int64_t(1) << nv;

  // Amplitudes of the full state in the configuration basis, then a DFT per
  // link to the electric basis.
  std::vector<Eigen::VectorXcd> table(n_configs);
  std::vector<int> ks(nl, 0);
  for (std::int64_t c = 0; c < n_configs; ++c) {
    std::int64_t rem = c;
    for (int l = 0; l < nl; ++l) {
      ks[l] = static_cast<int>(rem % n);
      rem /= n;
    }
    table[c] = assembler.physical_amplitudes(zn_config(geom, ks, n));
  }
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  for (int l = 0; l < nl; ++l) {
    std::int64_t stride = 1;
    for (int i = 0; i < l; ++i) stride *= n;
    std::vector<Eigen::VectorXcd> next(n_configs, Eigen::VectorXcd::Zero(n_occ));
    for (std::int64_t c = 0; c < n_configs; ++c) {
      const int k = static_cast<int>((c / stride) % n);
      for (int j = 0; j < n; ++j) {
        const std::int64_t target = c + (std::int64_t(j) - k) * stride;
        const cdouble w =
            std::polar(inv_sqrt_n, -2.0 * std::numbers::pi * j * k / n);
        next[target] += w * table[c];
      }
    }
    table = std::move(next);
  }

  std::map<int, double> weight;
  double total = 0.0;
  for (std::int64_t c = 0; c < n_configs; ++c) {
    const double w = table[c].squaredNorm();
    total += w;
    std::int64_t rem = c;
    for (int l = 0; l < nl; ++l) {
      const int j = static_cast<int>(rem % n);
      rem /= n;
      weight[efield_value(j, n)] += w;
    }
  }
  if (total > 0) {
    for (auto& [e, w] : weight) w /= total * nl;
  }
  return weight;
}

}  // namespace gaugepeps
