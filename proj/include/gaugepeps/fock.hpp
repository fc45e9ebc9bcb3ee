#ifndef GAUGEPEPS_FOCK_HPP
#define GAUGEPEPS_FOCK_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "gaugepeps/hilbert.hpp"

namespace gaugepeps {

// Dense many-body state of n fermionic modes.  Basis convention: bit m of
// the index is the occupation of mode m, and |S> = a^dag_{s1} a^dag_{s2} ...
// |Omega> with s1 < s2 < ... (ascending creation order, leftmost smallest).
class FockState {
 public:
  explicit FockState(int n_modes);
  FockState(int n_modes, Eigen::VectorXcd amps);

  static FockState vacuum(int n_modes);

  int n_modes() const { return n_modes_; }
  std::int64_t dim() const { return amps_.size(); }
  const Eigen::VectorXcd& amps() const { return amps_; }
  Eigen::VectorXcd& amps() { return amps_; }

  void apply_create(int mode);
  void apply_annihilate(int mode);
  // exp(sum_ij T_ij a^dag_{am[i]} a^dag_{bm[j]}), applied exactly (the
  // exponent is nilpotent).
  void apply_pairing_exp(const Eigen::MatrixXcd& t, const std::vector<int>& am,
                         const std::vector<int>& bm);
  // Phase e^{i angle} on the creation operator of the mode.
  void rotate_mode(int mode, double angle);

  // Appends the other state's modes above this one's (no reordering signs).
  FockState tensor(const FockState& other) const;

  // <bond| applied to the listed modes (bond mode i pairs with modes[i]);
  // the listed modes are removed from the result.
  FockState project(const std::vector<int>& modes, const FockState& bond) const;

  double norm_squared() const { return amps_.squaredNorm(); }
  cdouble overlap(const FockState& other) const;  // <this|other>

  void normalize_with(double* log_norm);

 private:
  int n_modes_;
  Eigen::VectorXcd amps_;

  static int count_below(std::int64_t bits, int mode) {
    const std::int64_t mask = (std::int64_t(1) << mode) - 1;
    return __builtin_popcountll(bits & mask);
  }
};

}  // namespace gaugepeps

#endif
