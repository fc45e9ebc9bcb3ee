#include "gaugepeps/fock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gaugepeps {

FockState::FockState(int n_modes)
    : n_modes_(n_modes),
      amps_(Eigen::VectorXcd::Zero(std::int64_t(1) << n_modes)) {
  if (n_modes < 0 || n_modes > 26) {
    throw std::invalid_argument("dense Fock space limited to 26 modes");
  }
}

FockState::FockState(int n_modes, Eigen::VectorXcd amps)
    : n_modes_(n_modes), amps_(std::move(amps)) {
  if (amps_.size() != (std::int64_t(1) << n_modes)) {
    throw std::invalid_argument("amplitude count mismatch");
  }
}

FockState FockState::vacuum(int n_modes) {
  FockState s(n_modes);
  s.amps_[0] = 1.0;
  return s;
}

void FockState::apply_create(int mode) {
  const std::int64_t bit = std::int64_t(1) << mode;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(amps_.size());
  for (std::int64_t b = 0; b < amps_.size(); ++b) {
    if (amps_[b] == cdouble(0, 0) || (b & bit)) continue;
    const double sign = count_below(b, mode) % 2 == 0 ? 1.0 : -1.0;
    out[b | bit] += sign * amps_[b];
  }
  amps_ = std::move(out);
}

void FockState::apply_annihilate(int mode) {
  const std::int64_t bit = std::int64_t(1) << mode;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(amps_.size());
  for (std::int64_t b = 0; b < amps_.size(); ++b) {
    if (amps_[b] == cdouble(0, 0) || !(b & bit)) continue;
    const double sign = count_below(b, mode) % 2 == 0 ? 1.0 : -1.0;
    out[b & ~bit] += sign * amps_[b];
  }
  amps_ = std::move(out);
}

void FockState::apply_pairing_exp(const Eigen::MatrixXcd& t, const std::vector<int>& am,
                                  const std::vector<int>& bm) {
  if (static_cast<int>(am.size()) != t.rows() || static_cast<int>(bm.size()) != t.cols()) {
    throw std::invalid_argument("pairing matrix does not match mode lists");
  }
  // Q = sum T_ij a^dag_i b^dag_j is nilpotent: exp truncates.
  auto apply_q = [&](const Eigen::VectorXcd& in) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(in.size());
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      for (Eigen::Index j = 0; j < t.cols(); ++j) {
        if (t(i, j) == cdouble(0, 0)) continue;
        const std::int64_t bi = std::int64_t(1) << am[i];
        const std::int64_t bj = std::int64_t(1) << bm[j];
        for (std::int64_t b = 0; b < in.size(); ++b) {
          if (in[b] == cdouble(0, 0) || (b & bj)) continue;
          // b^dag_j first, then a^dag_i.
          double sign = count_below(b, bm[j]) % 2 == 0 ? 1.0 : -1.0;
          const std::int64_t b1 = b | bj;
          if (b1 & bi) continue;
          sign *= count_below(b1, am[i]) % 2 == 0 ? 1.0 : -1.0;
          out[b1 | bi] += sign * t(i, j) * in[b];
        }
      }
    }
    return out;
  };
  Eigen::VectorXcd total = amps_;
  Eigen::VectorXcd power = amps_;
  const int max_order = static_cast<int>(std::min(am.size(), bm.size()));
  for (int k = 1; k <= max_order; ++k) {
    power = apply_q(power) / static_cast<double>(k);
    if (power.isZero(0.0)) break;
    total += power;
  }
  amps_ = std::move(total);
}

void FockState::rotate_mode(int mode, double angle) {
  const std::int64_t bit = std::int64_t(1) << mode;
  const cdouble ph = std::polar(1.0, angle);
  for (std::int64_t b = 0; b < amps_.size(); ++b) {
    if (b & bit) amps_[b] *= ph;
  }
}

FockState FockState::tensor(const FockState& other) const {
  FockState out(n_modes_ + other.n_modes_);
  for (std::int64_t b2 = 0; b2 < other.amps_.size(); ++b2) {
    if (other.amps_[b2] == cdouble(0, 0)) continue;
    for (std::int64_t b1 = 0; b1 < amps_.size(); ++b1) {
      out.amps_[(b2 << n_modes_) | b1] = amps_[b1] * other.amps_[b2];
    }
  }
  return out;
}

FockState FockState::project(const std::vector<int>& modes, const FockState& bond) const {
  const int s = static_cast<int>(modes.size());
  if (s != bond.n_modes_) throw std::invalid_argument("bond mode count mismatch");
  std::vector<bool> used(n_modes_, false);
  for (int m : modes) {
    if (m < 0 || m >= n_modes_ || used[m]) {
      throw std::invalid_argument("invalid projection mode list");
    }
    used[m] = true;
  }
  std::vector<int> rest;
  for (int m = 0; m < n_modes_; ++m) {
    if (!used[m]) rest.push_back(m);
  }
  const int r = static_cast<int>(rest.size());
  FockState out(r);

  // Iterate full-basis states; split occupations into (rest, contracted).
  for (std::int64_t b = 0; b < amps_.size(); ++b) {
    if (amps_[b] == cdouble(0, 0)) continue;
    std::int64_t rbits = 0;
    std::int64_t sbits = 0;  // in bond order
    for (int i = 0; i < r; ++i) {
      if ((b >> rest[i]) & 1) rbits |= std::int64_t(1) << i;
    }
    for (int i = 0; i < s; ++i) {
      if ((b >> modes[i]) & 1) sbits |= std::int64_t(1) << i;
    }
    if (bond.amps_[sbits] == cdouble(0, 0)) continue;
    // Sign of reordering the ascending-global creation string into
    // (rest ascending)(contracted in bond order).
    int inversions = 0;
    std::vector<int> occ_global;
    for (int m = 0; m < n_modes_; ++m) {
      if ((b >> m) & 1) occ_global.push_back(m);
    }
    std::vector<int> target;  // desired order of the same creators
    for (int i = 0; i < r; ++i) {
      if ((rbits >> i) & 1) target.push_back(rest[i]);
    }
    for (int i = 0; i < s; ++i) {
      if ((sbits >> i) & 1) target.push_back(modes[i]);
    }
    // Count the permutation parity between occ_global and target.
    std::vector<int> perm(target.size());
    for (std::size_t i = 0; i < target.size(); ++i) {
      perm[i] = static_cast<int>(
          std::find(occ_global.begin(), occ_global.end(), target[i]) -
          occ_global.begin());
    }
    for (std::size_t i = 0; i < perm.size(); ++i) {
      for (std::size_t j = i + 1; j < perm.size(); ++j) {
        if (perm[i] > perm[j]) ++inversions;
      }
    }
    // Odd-parity bond components pick up a crossing sign past the remaining
    // creators (our bonds are even, but keep this exact).
    if ((__builtin_popcountll(rbits) & 1) && (__builtin_popcountll(sbits) & 1)) {
      ++inversions;
    }
    const double sign = inversions % 2 == 0 ? 1.0 : -1.0;
    out.amps_[rbits] += sign * std::conj(bond.amps_[sbits]) * amps_[b];
  }
  return out;
}

cdouble FockState::overlap(const FockState& other) const {
  if (n_modes_ != other.n_modes_) throw std::invalid_argument("mode count mismatch");
  return amps_.dot(other.amps_);
}

void FockState::normalize_with(double* log_norm) {
  const double n = amps_.norm();
  if (n > 0) {
    amps_ /= n;
    if (log_norm) *log_norm += std::log(n);
  }
}

}  // namespace gaugepeps
