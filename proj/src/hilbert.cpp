#include "gaugepeps/hilbert.hpp"

#include <cstdlib>

namespace gaugepeps {

std::int64_t hilbert_dim_cap() {
  if (const char* env = std::getenv("GAUGEPEPS_DIM_CAP")) {
    const long long v = std::atoll(env);
    if (v > 0) return static_cast<std::int64_t>(v);
  }
  return std::int64_t(1) << 24;
}

HilbertSpace::HilbertSpace(std::vector<Factor> factors, std::int64_t dim_cap)
    : factors_(std::move(factors)) {
  strides_.resize(factors_.size());
  // The first factor varies fastest.
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].dim < 2) throw std::invalid_argument("factor dim must be >= 2");
    strides_[i] = dim_;
    dim_ *= factors_[i].dim;
    if (dim_ > dim_cap) {
      throw DimCapExceeded("Hilbert space dimension exceeds cap of " +
                           std::to_string(dim_cap) + " amplitudes");
    }
  }
}

int HilbertSpace::jw_sign(std::int64_t basis, int factor_index) const {
  int occupied = 0;
  for (int i = 0; i < factor_index; ++i) {
    if (factors_[i].kind == FactorKind::fermion && local(basis, i) == 1) ++occupied;
  }
  return (occupied % 2 == 0) ? +1 : -1;
}

int HilbertSpace::find_factor(const std::string& label) const {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].label == label) return static_cast<int>(i);
  }
  throw std::out_of_range("no factor labelled " + label);
}

}  // namespace gaugepeps
