#include "gaugepeps/operator_builder.hpp"

#include <algorithm>
#include <cmath>

namespace gaugepeps {

int efield_value(int j, int n) {
  // Symmetric window: floor(-N/2) .. ceil(N/2)-1.
  return (j < (n + 1) / 2) ? j : j - n;
}

TermList adjoint(const TermList& terms) {
  TermList out;
  out.reserve(terms.size());
  for (const Term& t : terms) {
    Term a;
    a.coeff = std::conj(t.coeff);
    a.statistics_resolved = t.statistics_resolved;
    a.factors.assign(t.factors.rbegin(), t.factors.rend());
    for (OpFactor& f : a.factors) {
      switch (f.kind) {
        case OpFactor::Kind::create: f.kind = OpFactor::Kind::annihilate; break;
        case OpFactor::Kind::annihilate: f.kind = OpFactor::Kind::create; break;
        case OpFactor::Kind::spin_raise: f.kind = OpFactor::Kind::spin_lower; break;
        case OpFactor::Kind::spin_lower: f.kind = OpFactor::Kind::spin_raise; break;
        case OpFactor::Kind::clock_shift: f.k = -f.k; break;
        case OpFactor::Kind::clock_phase: f.theta = -f.theta; break;
        default: break;  // remaining kinds are self-adjoint
      }
    }
    out.push_back(std::move(a));
  }
  return out;
}

TermList operator+(const TermList& a, const TermList& b) {
  TermList out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

TermList operator*(cdouble c, const TermList& t) {
  TermList out = t;
  for (Term& term : out) term.coeff *= c;
  return out;
}

bool apply_term(const HilbertSpace& space, const Term& term, std::int64_t basis,
                std::int64_t& out_basis, cdouble& out_amp) {
  std::int64_t b = basis;
  cdouble amp = term.coeff;
  // Factors act right-to-left.
  for (auto it = term.factors.rbegin(); it != term.factors.rend(); ++it) {
    const OpFactor& f = *it;
    const Factor& fac = space.factor(f.factor);
    const int j = space.local(b, f.factor);
    switch (f.kind) {
      case OpFactor::Kind::create:
        if (j == 1) return false;
        amp *= space.jw_sign(b, f.factor);
        b = space.replace_local(b, f.factor, 1);
        break;
      case OpFactor::Kind::annihilate:
        if (j == 0) return false;
        amp *= space.jw_sign(b, f.factor);
        b = space.replace_local(b, f.factor, 0);
        break;
      case OpFactor::Kind::number:
      case OpFactor::Kind::spin_number:
        if (j == 0) return false;
        break;
      case OpFactor::Kind::majorana_c:
        amp *= space.jw_sign(b, f.factor);
        b = space.replace_local(b, f.factor, 1 - j);
        break;
      case OpFactor::Kind::spin_raise:
        if (j == 1) return false;
        b = space.replace_local(b, f.factor, 1);
        break;
      case OpFactor::Kind::spin_lower:
        if (j == 0) return false;
        b = space.replace_local(b, f.factor, 0);
        break;
      case OpFactor::Kind::clock_shift: {
        const int n = fac.dim;
        b = space.replace_local(b, f.factor, ((j + f.k) % n + n) % n);
        break;
      }
      case OpFactor::Kind::clock_efield:
        amp *= static_cast<double>(efield_value(j, fac.dim));
        if (amp == cdouble(0, 0)) return false;
        break;
      case OpFactor::Kind::clock_efield_sq: {
        const double e = efield_value(j, fac.dim);
        amp *= e * e;
        if (amp == cdouble(0, 0)) return false;
        break;
      }
      case OpFactor::Kind::clock_proj:
        if (j != ((f.k % fac.dim + fac.dim) % fac.dim)) return false;
        break;
      case OpFactor::Kind::clock_phase:
        amp *= std::polar(1.0, f.theta * efield_value(j, fac.dim));
        break;
      case OpFactor::Kind::minus_one_pow_e:
        if (efield_value(j, fac.dim) % 2 != 0) amp = -amp;
        break;
    }
  }
  out_basis = b;
  out_amp = amp;
  return true;
}

SparseOp build_sparse(const HilbertSpace& space, const TermList& terms) {
  std::vector<Eigen::Triplet<cdouble>> trip;
  trip.reserve(terms.size() * 4);
  for (std::int64_t basis = 0; basis < space.dim(); ++basis) {
    for (const Term& t : terms) {
      std::int64_t out;
      cdouble amp;
      if (apply_term(space, t, basis, out, amp)) {
        trip.emplace_back(static_cast<int>(out), static_cast<int>(basis), amp);
      }
    }
  }
  SparseOp op(space.dim(), space.dim());
  op.setFromTriplets(trip.begin(), trip.end());
  return op;
}

Eigen::MatrixXcd build_dense(const HilbertSpace& space, const TermList& terms) {
  return Eigen::MatrixXcd(build_sparse(space, terms));
}

StateVector apply(const TermList& terms, const StateVector& in) {
  StateVector out(in.space_ptr());
  const HilbertSpace& space = in.space();
  for (std::int64_t basis = 0; basis < space.dim(); ++basis) {
    const cdouble a = in.amps()[basis];
    if (a == cdouble(0, 0)) continue;
    for (const Term& t : terms) {
      std::int64_t ob;
      cdouble amp;
      if (apply_term(space, t, basis, ob, amp)) out.amps()[ob] += amp * a;
    }
  }
  return out;
}

double frobenius_commutator(const SparseOp& a, const SparseOp& b) {
  const SparseOp c = (a * b - b * a).pruned();
  return Eigen::Map<const Eigen::VectorXcd>(c.valuePtr(), c.nonZeros()).norm();
}

double max_abs(const SparseOp& a) {
  double m = 0;
  for (int k = 0; k < a.outerSize(); ++k) {
    for (SparseOp::InnerIterator it(a, k); it; ++it) {
      m = std::max(m, std::abs(it.value()));
    }
  }
  return m;
}

bool is_hermitian(const Eigen::MatrixXcd& m, double tol) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace gaugepeps
