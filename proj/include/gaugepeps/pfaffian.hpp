#ifndef GAUGEPEPS_PFAFFIAN_HPP
#define GAUGEPEPS_PFAFFIAN_HPP

#include <complex>

#include <Eigen/Dense>

namespace gaugepeps {

// Pfaffian in scale-split form: value = phase * exp(log_abs).  The phase is
// exact for the sign bookkeeping (unimodular for nonzero results) and the
// magnitude is kept in log scale so long contraction chains cannot overflow.
struct Pfaffian {
  std::complex<double> phase{1.0, 0.0};
  double log_abs = 0.0;
  bool zero = false;

  std::complex<double> value() const {
    return zero ? std::complex<double>(0, 0) : phase * std::exp(log_abs);
  }
};

// Parlett-Reid elimination with partial pivoting; row/column exchanges are
// tracked exactly in the phase.  The matrix must be antisymmetric.
Pfaffian pfaffian(Eigen::MatrixXcd a);
Pfaffian pfaffian_real(const Eigen::MatrixXd& a);

}  // namespace gaugepeps

#endif
