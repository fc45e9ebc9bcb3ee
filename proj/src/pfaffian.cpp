#include "gaugepeps/pfaffian.hpp"

#include <cmath>
#include <stdexcept>

namespace gaugepeps {

Pfaffian pfaffian(Eigen::MatrixXcd a) {
  const Eigen::Index n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("pfaffian: square matrix required");
  if (n == 0) return Pfaffian{};  // Pf of the empty matrix is 1
  if ((a + a.transpose()).cwiseAbs().maxCoeff() > 1e-10 * (1.0 + a.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("pfaffian: matrix not antisymmetric");
  }
  Pfaffian result;
  if (n % 2 != 0) {
    result.zero = true;
    return result;
  }
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    // Pivot: the largest entry in row k among columns > k.
    Eigen::Index piv = k + 1;
    double best = std::abs(a(k, k + 1));
    for (Eigen::Index j = k + 2; j < n; ++j) {
      if (std::abs(a(k, j)) > best) {
        best = std::abs(a(k, j));
        piv = j;
      }
    }
    if (best == 0.0) {
      result.zero = true;
      return result;
    }
    if (piv != k + 1) {
      a.row(piv).swap(a.row(k + 1));
      a.col(piv).swap(a.col(k + 1));
      result.phase = -result.phase;
    }
    const std::complex<double> pivot = a(k, k + 1);
    result.phase *= pivot / std::abs(pivot);
    result.log_abs += std::log(std::abs(pivot));
    // Schur complement of the leading 2x2 block:
    // A'_{ij} = A_{ij} - (A_{ik} A_{j,k+1} - A_{i,k+1} A_{jk}) / pivot.
    for (Eigen::Index i = k + 2; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const std::complex<double> upd =
            (a(i, k) * a(j, k + 1) - a(i, k + 1) * a(j, k)) / pivot;
        a(i, j) -= upd;
        a(j, i) += upd;
      }
    }
  }
  return result;
}

Pfaffian pfaffian_real(const Eigen::MatrixXd& a) {
  return pfaffian(a.cast<std::complex<double>>());
}

}  // namespace gaugepeps
