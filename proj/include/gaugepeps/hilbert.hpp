#ifndef GAUGEPEPS_HILBERT_HPP
#define GAUGEPEPS_HILBERT_HPP

#include <complex>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gaugepeps {

using cdouble = std::complex<double>;

// A local factor of the composite Hilbert space.  Fermion factors are
// two-dimensional occupation spaces with Jordan-Wigner strings running in
// factor order; clock factors are Z_N spaces in the electric basis, and
// spin factors are two-dimensional without any string.
enum class FactorKind { fermion, clock, spin };

struct Factor {
  FactorKind kind = FactorKind::fermion;
  int dim = 2;
  std::string label;
};

struct DimCapExceeded : std::runtime_error {
  explicit DimCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Reads GAUGEPEPS_DIM_CAP if set, otherwise 2^24 amplitudes.
std::int64_t hilbert_dim_cap();

class HilbertSpace {
 public:
  explicit HilbertSpace(std::vector<Factor> factors,
                        std::int64_t dim_cap = hilbert_dim_cap());

  std::int64_t dim() const { return dim_; }
  int n_factors() const { return static_cast<int>(factors_.size()); }
  const Factor& factor(int i) const { return factors_.at(i); }
  const std::vector<Factor>& factors() const { return factors_; }

  int local(std::int64_t basis, int factor_index) const {
    return static_cast<int>((basis / strides_[factor_index]) %
                            factors_[factor_index].dim);
  }
  std::int64_t replace_local(std::int64_t basis, int factor_index, int value) const {
    const int old = local(basis, factor_index);
    return basis + (static_cast<std::int64_t>(value) - old) * strides_[factor_index];
  }

  // Parity of the number of occupied fermion factors strictly before
  // factor_index (the Jordan-Wigner string sign).
  int jw_sign(std::int64_t basis, int factor_index) const;

  int find_factor(const std::string& label) const;

 private:
  std::vector<Factor> factors_;
  std::vector<std::int64_t> strides_;
  std::int64_t dim_ = 1;
};

class StateVector {
 public:
  explicit StateVector(std::shared_ptr<const HilbertSpace> space)
      : space_(std::move(space)),
        amps_(Eigen::VectorXcd::Zero(space_->dim())) {}
  StateVector(std::shared_ptr<const HilbertSpace> space, Eigen::VectorXcd amps)
      : space_(std::move(space)), amps_(std::move(amps)) {
    if (amps_.size() != space_->dim()) {
      throw std::invalid_argument("amplitude size mismatch");
    }
  }

  const HilbertSpace& space() const { return *space_; }
  std::shared_ptr<const HilbertSpace> space_ptr() const { return space_; }
  const Eigen::VectorXcd& amps() const { return amps_; }
  Eigen::VectorXcd& amps() { return amps_; }

  double norm() const { return amps_.norm(); }
  void normalize() {
    const double n = norm();
    if (n > 0) amps_ /= n;
  }

 private:
  std::shared_ptr<const HilbertSpace> space_;
  Eigen::VectorXcd amps_;
};

}  // namespace gaugepeps

#endif
