#include "gaugepeps/exact_engine.hpp"

#include <algorithm>
#include <set>

namespace gaugepeps {

GaugedModel::GaugedModel(LatticeGeometry geom, int n, std::int64_t dim_cap)
    : geom_(std::move(geom)), n_(n) {
  if (n_ < 2) throw std::invalid_argument("Z_N modulus must be >= 2");
  std::vector<Factor> factors;
  factors.reserve(geom_.n_vertices() + geom_.n_links());
  for (int v = 0; v < geom_.n_vertices(); ++v) {
    factors.push_back({FactorKind::fermion, 2, "psi" + std::to_string(v)});
  }
  for (int l = 0; l < geom_.n_links(); ++l) {
    factors.push_back({FactorKind::clock, n_, "link" + std::to_string(l)});
  }
  space_ = std::make_shared<HilbertSpace>(std::move(factors), dim_cap);
}

TermList GaugedModel::mass_terms(const HamiltonianParams& p) const {
  TermList terms;
  if (p.mass == 0.0) return terms;
  for (int vi = 0; vi < geom_.n_vertices(); ++vi) {
    const Vertex v = geom_.vertex_at(vi);
    Term t;
    t.coeff = p.mass * geom_.parity(v);
    t.factors.push_back({OpFactor::Kind::number, fermion_factor(v)});
    terms.push_back(std::move(t));
  }
  return terms;
}

TermList GaugedModel::hopping_terms(const HamiltonianParams& p, int link_index,
                                    bool gauged) const {
  TermList terms;
  if (p.hopping == 0.0) return terms;
  const LinkId l = geom_.link_at(link_index);
  const Vertex a = l.origin;
  const Vertex b = geom_.link_target(l);
  Term t;
  t.coeff = p.hopping;
  t.factors.push_back({OpFactor::Kind::create, fermion_factor(a)});
  if (gauged) t.factors.push_back({OpFactor::Kind::clock_shift, link_factor(link_index), +1});
  t.factors.push_back({OpFactor::Kind::annihilate, fermion_factor(b)});
  TermList hc = adjoint({t});
  terms.push_back(std::move(t));
  terms.insert(terms.end(), hc.begin(), hc.end());
  return terms;
}

TermList GaugedModel::hamiltonian_terms(const HamiltonianParams& p,
                                        HamiltonianKind kind) const {
  TermList terms;
  const bool fermionic = kind != HamiltonianKind::h_ks;
  const bool gauged = kind == HamiltonianKind::h_f_gauged || kind == HamiltonianKind::full;
  const bool ks = kind == HamiltonianKind::h_ks || kind == HamiltonianKind::full;
  if (fermionic) {
    terms = mass_terms(p);
    for (int li = 0; li < geom_.n_links(); ++li) {
      TermList hop = hopping_terms(p, li, gauged);
      terms.insert(terms.end(), hop.begin(), hop.end());
    }
  }
  if (ks) {
    if (p.coupling <= 0.0) throw std::invalid_argument("coupling g must be > 0");
    const double g2 = p.coupling * p.coupling;
    for (int li = 0; li < geom_.n_links(); ++li) {
      Term t;
      t.coeff = 0.5 * g2;
      t.factors.push_back({OpFactor::Kind::clock_efield_sq, link_factor(li)});
      terms.push_back(std::move(t));
    }
    // H_B from the plaquette real part (U_p + U_p^dag)/2.
    for (int y = 0; y < geom_.height(); ++y) {
      for (int x = 0; x < geom_.width(); ++x) {
        const Vertex v{x, y};
        const LinkId b1{v, Direction::d1};
        const LinkId b2{v, Direction::d2};
        if (!geom_.link_exists(b1) || !geom_.link_exists(b2)) continue;
        const Vertex vx = geom_.link_target(b1);
        const Vertex vy = geom_.link_target(b2);
        const LinkId r{vx, Direction::d2};
        const LinkId u{vy, Direction::d1};
        if (!geom_.link_exists(r) || !geom_.link_exists(u)) continue;
        Term t;
        t.coeff = -0.5 / g2;
        t.factors.push_back({OpFactor::Kind::clock_shift, link_factor(b1), +1});
        t.factors.push_back({OpFactor::Kind::clock_shift, link_factor(r), +1});
        t.factors.push_back({OpFactor::Kind::clock_shift, link_factor(u), -1});
        t.factors.push_back({OpFactor::Kind::clock_shift, link_factor(b2), -1});
        TermList hc = adjoint({t});
        terms.push_back(std::move(t));
        terms.insert(terms.end(), hc.begin(), hc.end());
      }
    }
  }
  return terms;
}

SparseOp GaugedModel::build_hamiltonian(const HamiltonianParams& p,
                                        HamiltonianKind kind) const {
  return build_sparse(*space_, hamiltonian_terms(p, kind));
}

int GaugedModel::staggered_charge(std::int64_t basis, Vertex v) const {
  const int nocc = space_->local(basis, fermion_factor(v));
  return nocc - (geom_.parity(v) < 0 ? 1 : 0);
}

int GaugedModel::gauss_value(std::int64_t basis, Vertex v) const {
  int g = -staggered_charge(basis, v);
  for (const auto& [link, sign] : geom_.star_links(v)) {
    const int j = space_->local(basis, link_factor(link));
    g += sign * efield_value(j, n_);
  }
  return g;
}

SparseOp GaugedModel::gauss_operator(Vertex v) const {
  std::vector<Eigen::Triplet<cdouble>> trip;
  trip.reserve(space_->dim());
  for (std::int64_t b = 0; b < space_->dim(); ++b) {
    // Eigenvalues are defined mod N (reported in the symmetric window); only
    // the mod-N operator commutes with the Z_N-gauged Hamiltonian.
    const int g = efield_value(((gauss_value(b, v) % n_) + n_) % n_, n_);
    trip.emplace_back(static_cast<int>(b), static_cast<int>(b), cdouble(g, 0));
  }
  SparseOp op(space_->dim(), space_->dim());
  op.setFromTriplets(trip.begin(), trip.end());
  return op;
}

SparseOp GaugedModel::gauging_unitary(LinkId l) const {
  const int lf = link_factor(l);
  const int cf = fermion_factor(l.origin);
  std::vector<Eigen::Triplet<cdouble>> trip;
  trip.reserve(space_->dim());
  for (std::int64_t b = 0; b < space_->dim(); ++b) {
    std::int64_t out = b;
    if (space_->local(b, cf) == 1) {
      const int j = space_->local(b, lf);
      out = space_->replace_local(b, lf, (j + 1) % n_);
    }
    trip.emplace_back(static_cast<int>(out), static_cast<int>(b), cdouble(1, 0));
  }
  SparseOp op(space_->dim(), space_->dim());
  op.setFromTriplets(trip.begin(), trip.end());
  return op;
}

SparseOp GaugedModel::gauging_unitary_1d() const {
  if (!geom_.is_chain()) {
    throw std::invalid_argument("1D gauging requires an open chain geometry");
  }
  const int nv = geom_.n_vertices();
  std::vector<Eigen::Triplet<cdouble>> trip;
  trip.reserve(space_->dim());
  for (std::int64_t b = 0; b < space_->dim(); ++b) {
    std::int64_t out = b;
    int accumulated = 0;
    for (int x = 0; x + 1 < nv; ++x) {
      accumulated += staggered_charge(b, Vertex{x, 0});
      const int lf = link_factor(geom_.link_index(LinkId{Vertex{x, 0}, Direction::d1}));
      const int j = space_->local(out, lf);
      out = space_->replace_local(out, lf, ((j + accumulated) % n_ + n_) % n_);
    }
    trip.emplace_back(static_cast<int>(out), static_cast<int>(b), cdouble(1, 0));
  }
  SparseOp op(space_->dim(), space_->dim());
  op.setFromTriplets(trip.begin(), trip.end());
  return op;
}

StateVector GaugedModel::sector_project(const StateVector& state,
                                        const std::vector<int>& q) const {
  if (static_cast<int>(q.size()) != geom_.n_vertices()) {
    throw std::invalid_argument("one static charge per vertex required");
  }
  StateVector out(state.space_ptr());
  for (std::int64_t b = 0; b < space_->dim(); ++b) {
    bool in_sector = true;
    for (int vi = 0; vi < geom_.n_vertices() && in_sector; ++vi) {
      const int g = gauss_value(b, geom_.vertex_at(vi));
      in_sector = ((g - q[vi]) % n_ + n_) % n_ == 0;
    }
    if (in_sector) out.amps()[b] = state.amps()[b];
  }
  return out;
}

StateVector GaugedModel::basis_state(const std::vector<int>& occupations,
                                     const std::vector<int>& link_values) const {
  if (static_cast<int>(occupations.size()) != geom_.n_vertices() ||
      static_cast<int>(link_values.size()) != geom_.n_links()) {
    throw std::invalid_argument("basis state size mismatch");
  }
  std::int64_t b = 0;
  for (int v = 0; v < geom_.n_vertices(); ++v) {
    b = space_->replace_local(b, v, occupations[v]);
  }
  for (int l = 0; l < geom_.n_links(); ++l) {
    b = space_->replace_local(b, link_factor(l), ((link_values[l] % n_) + n_) % n_);
  }
  StateVector s(space_);
  s.amps()[b] = 1.0;
  return s;
}

StateVector GaugedModel::vacuum() const {
  StateVector s(space_);
  s.amps()[0] = 1.0;
  return s;
}

TrotterSchedule default_schedule(const LatticeGeometry& geom) {
  TrotterSchedule s;
  s.groups.assign(4, {});
  for (int li = 0; li < geom.n_links(); ++li) {
    const LinkId l = geom.link_at(li);
    const int axis_coord = l.dir == Direction::d1 ? l.origin.x : l.origin.y;
    const int color = 2 * (l.dir == Direction::d2 ? 1 : 0) + (axis_coord % 2);
    s.groups[color].push_back(li);
  }
  std::erase_if(s.groups, [](const auto& g) { return g.empty(); });
  return s;
}

void validate_schedule(const LatticeGeometry& geom, const TrotterSchedule& s) {
  for (const auto& group : s.groups) {
    std::set<int> touched;
    for (int li : group) {
      const LinkId l = geom.link_at(li);
      const int a = geom.vertex_index(l.origin);
      const int b = geom.vertex_index(geom.link_target(l));
      if (!touched.insert(a).second || !touched.insert(b).second) {
        throw std::invalid_argument("schedule group contains intersecting links");
      }
    }
  }
}

TrotterEvolver::TrotterEvolver(const GaugedModel& model, const HamiltonianParams& p,
                               TrotterSchedule schedule)
    : model_(model), schedule_(std::move(schedule)) {
  validate_schedule(model.geometry(), schedule_);
  const int nl = model.geometry().n_links();
  link_evals_.resize(nl);
  link_eigs_.resize(nl);
  // Per-link gauged Hamiltonian: hopping on the link plus the mass of both
  // endpoints split by their incidence count, conjugated by the per-link
  // gauging unitary.
  const LatticeGeometry& geom = model.geometry();
  std::vector<int> degree(geom.n_vertices(), 0);
  for (int li = 0; li < nl; ++li) {
    const LinkId l = geom.link_at(li);
    ++degree[geom.vertex_index(l.origin)];
    ++degree[geom.vertex_index(geom.link_target(l))];
  }
  for (int li = 0; li < nl; ++li) {
    const LinkId l = geom.link_at(li);
    TermList terms;
    Term hop;
    hop.coeff = p.hopping;
    hop.factors.push_back({OpFactor::Kind::create, model.fermion_factor(l.origin)});
    hop.factors.push_back({OpFactor::Kind::clock_shift, model.link_factor(li), +1});
    hop.factors.push_back({OpFactor::Kind::annihilate,
                           model.fermion_factor(geom.link_target(l))});
    TermList hc = adjoint({hop});
    terms.push_back(std::move(hop));
    terms.insert(terms.end(), hc.begin(), hc.end());
    for (const Vertex v : {l.origin, geom.link_target(l)}) {
      Term m;
      m.coeff = p.mass * geom.parity(v) / degree[geom.vertex_index(v)];
      m.factors.push_back({OpFactor::Kind::number, model.fermion_factor(v)});
      terms.push_back(std::move(m));
    }
    const Eigen::MatrixXcd h = build_dense(*model.space(), terms);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    link_evals_[li] = es.eigenvectors();
    link_eigs_[li] = es.eigenvalues();
  }
}

void TrotterEvolver::apply_link_exp(Eigen::VectorXcd& amps, int link, double dt) const {
  Eigen::VectorXcd coeffs = link_evals_[link].adjoint() * amps;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    coeffs[i] *= std::polar(1.0, -link_eigs_[link][i] * dt);
  }
  amps = link_evals_[link] * coeffs;
}

StateVector TrotterEvolver::evolve(const StateVector& state, double t, int n_steps) const {
  if (n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
  StateVector out = state;
  const double dt = t / n_steps;
  for (int s = 0; s < n_steps; ++s) {
    for (auto g = schedule_.groups.begin(); g != schedule_.groups.end(); ++g) {
      for (int li : *g) apply_link_exp(out.amps(), li, 0.5 * dt);
    }
    for (auto g = schedule_.groups.rbegin(); g != schedule_.groups.rend(); ++g) {
      for (auto li = g->rbegin(); li != g->rend(); ++li) {
        apply_link_exp(out.amps(), *li, 0.5 * dt);
      }
    }
  }
  return out;
}

Eigen::MatrixXcd TrotterEvolver::step_operator(double dt) const {
  const std::int64_t d = model_.space()->dim();
  Eigen::MatrixXcd step = Eigen::MatrixXcd::Identity(d, d);
  auto apply_all = [&](int li, double h) {
    Eigen::MatrixXcd phase = Eigen::MatrixXcd::Zero(d, d);
    for (std::int64_t i = 0; i < d; ++i) {
      phase(i, i) = std::polar(1.0, -link_eigs_[li][i] * h);
    }
    step = link_evals_[li] * phase * link_evals_[li].adjoint() * step;
  };
  for (auto g = schedule_.groups.begin(); g != schedule_.groups.end(); ++g) {
    for (int li : *g) apply_all(li, 0.5 * dt);
  }
  for (auto g = schedule_.groups.rbegin(); g != schedule_.groups.rend(); ++g) {
    for (auto li = g->rbegin(); li != g->rend(); ++li) apply_all(*li, 0.5 * dt);
  }
  return step;
}

StateVector evolve_exact(const GaugedModel& model, const SparseOp& hamiltonian,
                         const StateVector& state, cdouble scale) {
  const Eigen::MatrixXcd dense(hamiltonian);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);
  Eigen::VectorXcd coeffs = es.eigenvectors().adjoint() * state.amps();
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    coeffs[i] *= std::exp(scale * es.eigenvalues()[i]);
  }
  return StateVector(state.space_ptr(), es.eigenvectors() * coeffs);
}

}  // namespace gaugepeps
