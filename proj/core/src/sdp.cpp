#include "gsa/sdp.hpp"

#include <algorithm>

#include "gsa/dense.hpp"

namespace gsa {

SpanBasis::SpanBasis(std::vector<Mps> states,
                     const std::vector<std::pair<std::string, const Mpo*>>& ops,
                     double gram_rel_tol)
    : carriers_(std::move(states)) {
  if (carriers_.empty()) throw ArgumentError("span over an empty set");
  Eigen::Index p = static_cast<Eigen::Index>(carriers_.size());
  gram_.resize(p, p);
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = i; j < p; ++j) {
      gram_(i, j) = overlap(carriers_[i], carriers_[j]);
      gram_(j, i) = std::conj(gram_(i, j));
    }
  coeff_ = dense::gram_orthonormalize_coeffs(gram_, gram_rel_tol);

  for (const auto& [name, op] : ops) {
    MatC m(p, p);
    for (Eigen::Index i = 0; i < p; ++i)
      for (Eigen::Index j = i; j < p; ++j) {
        m(i, j) = matrix_element(carriers_[i], *op, carriers_[j]);
        m(j, i) = std::conj(m(i, j));
      }
    MatC proj = coeff_.adjoint() * m * coeff_;
    projected_[name] = 0.5 * (proj + proj.adjoint());
  }
}

const MatC& SpanBasis::projected(const std::string& name) const {
  auto it = projected_.find(name);
  if (it == projected_.end()) throw ArgumentError("no projected operator " + name);
  return it->second;
}

SpanBasis::Coords SpanBasis::express(const Mps& v) const {
  Eigen::Index p = static_cast<Eigen::Index>(carriers_.size());
  VecC ov(p);
  for (Eigen::Index i = 0; i < p; ++i) ov(i) = overlap(carriers_[i], v);
  Coords out;
  out.c = coeff_.adjoint() * ov;
  double vv = std::max(0.0, overlap(v, v).real());
  out.residual = std::sqrt(std::max(0.0, vv - out.c.squaredNorm()));
  return out;
}

Mps SpanBasis::realize(const VecC& coords) const {
  if (coords.size() != rank()) throw ShapeError("coordinate length != rank");
  VecC w = coeff_ * coords;
  std::vector<cplx> weights(w.data(), w.data() + w.size());
  return linear_combine(carriers_, weights);
}

std::vector<MatC> SpanBasis::cross_densities() const {
  Eigen::Index p = static_cast<Eigen::Index>(carriers_.size());
  Eigen::Index r = rank();
  int d = carriers_[0].phys_dim();
  std::vector<MatC> carrier_cross(p * p);
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = 0; j < p; ++j) {
      if (j < i) {
        carrier_cross[i * p + j] = carrier_cross[j * p + i].adjoint();
        continue;
      }
      carrier_cross[i * p + j] =
          last_site_cross_density(carriers_[i], carriers_[j]);
    }
  std::vector<MatC> out(r * r, MatC::Zero(d, d));
  for (Eigen::Index a = 0; a < r; ++a)
    for (Eigen::Index b = 0; b < r; ++b) {
      MatC acc = MatC::Zero(d, d);
      for (Eigen::Index i = 0; i < p; ++i)
        for (Eigen::Index j = 0; j < p; ++j) {
          cplx w = coeff_(i, a) * std::conj(coeff_(j, b));
          if (w != cplx(0.0)) acc += w * carrier_cross[i * p + j];
        }
      out[a * r + b] = std::move(acc);
    }
  return out;
}

namespace {

// T(sigma) on C^d (x) C^B from span-coordinate sigma, rows (s*B + beta).
MatC apply_partial_trace(const TrimProgram& p, const MatC& sigma) {
  Eigen::Index r = p.span_rank;
  int b = p.bond_dim, d = p.phys_dim;
  MatC out = MatC::Zero(d * b, d * b);
  for (Eigen::Index a = 0; a < r; ++a)
    for (Eigen::Index a2 = 0; a2 < r; ++a2) {
      const MatC& cd = p.cross_density[a * r + a2];
      for (int beta = 0; beta < b; ++beta)
        for (int beta2 = 0; beta2 < b; ++beta2) {
          cplx s = sigma(a * b + beta, a2 * b + beta2);
          if (s == cplx(0.0)) continue;
          for (int q = 0; q < d; ++q)
            for (int q2 = 0; q2 < d; ++q2)
              out(q * b + beta, q2 * b + beta2) += s * cd(q, q2);
        }
    }
  return out;
}

// W with tr(W sigma) = T(sigma)_{ij}, where i = (s_i, beta_i) and
// j = (s_j, beta_j) index C^d (x) C^B rows/columns.
MatC extraction_matrix(const TrimProgram& p, Eigen::Index i, Eigen::Index j) {
  Eigen::Index r = p.span_rank;
  int b = p.bond_dim;
  int si = static_cast<int>(i / b), bi = static_cast<int>(i % b);
  int sj = static_cast<int>(j / b), bj = static_cast<int>(j % b);
  MatC w = MatC::Zero(r * b, r * b);
  for (Eigen::Index a = 0; a < r; ++a)
    for (Eigen::Index a2 = 0; a2 < r; ++a2)
      w(a2 * b + bj, a * b + bi) = p.cross_density[a * r + a2](si, sj);
  return w;
}

MatC kron_bond(const MatC& m, int b) {
  return dense::kron(m, MatC::Identity(b, b));
}

struct TrimBlocks {
  // block order: sigma (r b), R (2 k), s_energy, s_nuclear [, s_feas]
  ipm::Problem prob;
  Eigen::Index m;  // sigma block size
  Eigen::Index k;  // d b
};

TrimBlocks build_trim_problem(const TrimProgram& p, bool phase1) {
  Eigen::Index r = p.span_rank;
  Eigen::Index m = r * p.bond_dim;
  Eigen::Index k = static_cast<Eigen::Index>(p.phys_dim) * p.bond_dim;

  TrimBlocks tb;
  tb.m = m;
  tb.k = k;
  auto& prob = tb.prob;
  prob.block_sizes = {m, 2 * k, 1, 1};
  if (phase1) prob.block_sizes.push_back(1);

  prob.objective.assign(prob.block_sizes.size(), MatC());
  for (std::size_t l = 0; l < prob.block_sizes.size(); ++l)
    prob.objective[l] = MatC::Zero(prob.block_sizes[l], prob.block_sizes[l]);
  if (phase1)
    prob.objective.back()(0, 0) = 1.0;
  else
    prob.objective[0] = p.minimize_left_energy ? kron_bond(p.h_left, p.bond_dim)
                                               : kron_bond(p.overlap_projector,
                                                           p.bond_dim);

  MatC one = MatC::Ones(1, 1);

  // trace(sigma) = 1
  prob.constraints.push_back({{{0, MatC::Identity(m, m)}}, 1.0});

  // energy: <H_L (x) 1, sigma> + s_E (- s_F) = y_bound
  {
    ipm::Problem::Constraint c;
    c.terms.push_back({0, kron_bond(p.h_left, p.bond_dim)});
    c.terms.push_back({2, one});
    if (phase1) c.terms.push_back({4, -one});
    c.rhs = p.y_bound;
    prob.constraints.push_back(std::move(c));
  }

  // nuclear-norm epigraph: tr(R) + s_N (- 2 s_F) = xi
  {
    ipm::Problem::Constraint c;
    c.terms.push_back({1, MatC::Identity(2 * k, 2 * k)});
    c.terms.push_back({3, one});
    if (phase1) c.terms.push_back({4, -2.0 * one});
    c.rhs = p.xi;
    prob.constraints.push_back(std::move(c));
  }

  // coupling: offdiag(R) = T(sigma) - X, two real constraints per entry
  double inv_sqrt2 = 0.7071067811865475244;
  double sqrt2 = 1.4142135623730950488;
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) {
      MatC w = extraction_matrix(p, i, j);
      MatC g_re = 0.5 * (w + w.adjoint());
      MatC g_im = cplx(0.0, -0.5) * (w - w.adjoint());
      for (int part = 0; part < 2; ++part) {
        MatC f = MatC::Zero(2 * k, 2 * k);
        if (part == 0) {
          f(i, k + j) = inv_sqrt2;
          f(k + j, i) = inv_sqrt2;
        } else {
          f(i, k + j) = cplx(0.0, inv_sqrt2);
          f(k + j, i) = cplx(0.0, -inv_sqrt2);
        }
        // <sqrt2 G, sigma> - <F, R> = sqrt2 * X-part
        double rhs = (part == 0) ? sqrt2 * p.x_point(i, j).real()
                                 : sqrt2 * p.x_point(i, j).imag();
        ipm::Problem::Constraint c;
        c.terms.push_back({0, sqrt2 * ((part == 0) ? g_re : g_im)});
        c.terms.push_back({1, -f});
        c.rhs = rhs;
        prob.constraints.push_back(std::move(c));
      }
    }
  return tb;
}

}  // namespace

MatC trim_partial_trace(const TrimProgram& p, const MatC& sigma) {
  return apply_partial_trace(p, sigma);
}

ProgramSolution solve_trim_program(const TrimProgram& p, const ipm::Options& opts) {
  if (p.span_rank < 1 || p.bond_dim < 1) throw ArgumentError("empty trim program");
  if (p.x_point.rows() != p.phys_dim * p.bond_dim)
    throw ShapeError("net point has the wrong dimension");

  ProgramSolution out;

  // phase 1: minimal constraint relaxation
  auto tb1 = build_trim_problem(p, true);
  auto s1 = ipm::solve(tb1.prob, opts);
  double relax = s1.primal_objective;
  out.residuals["phase1_relaxation"] = relax;
  double feas_tol = 1e-7 * std::max({1.0, std::abs(p.y_bound), p.xi});
  if (s1.status == "max_iterations" || relax > feas_tol) {
    out.status = "infeasible";
    out.sigma = MatC::Zero(tb1.m, tb1.m);
    return out;
  }

  auto tb = build_trim_problem(p, false);
  auto s = ipm::solve(tb.prob, opts);
  out.sigma = s.x.empty() ? MatC::Zero(tb.m, tb.m) : s.x[0];
  out.sigma = 0.5 * (out.sigma + out.sigma.adjoint()).eval();
  out.objective = s.primal_objective;
  out.duality_gap = s.gap;
  out.status = s.status;

  // reported residuals against the original constraints
  out.residuals["trace"] = std::abs(out.sigma.trace().real() - 1.0);
  out.residuals["energy"] = std::max(
      0.0, (kron_bond(p.h_left, p.bond_dim) * out.sigma).trace().real() -
               p.y_bound);
  MatC tmx = apply_partial_trace(p, out.sigma) - p.x_point;
  out.residuals["trace_norm"] =
      std::max(0.0, dense::trace_norm(tmx) - p.xi / 2.0);
  Eigen::SelfAdjointEigenSolver<MatC> es(out.sigma, Eigen::EigenvaluesOnly);
  out.residuals["psd"] = std::max(0.0, -es.eigenvalues().minCoeff());
  out.residuals["solver_primal"] = s.primal_residual;
  out.residuals["solver_dual"] = s.dual_residual;
  return out;
}

ProgramSolution solve_gsa_program(const MatC& h_span,
                                  const std::vector<VecC>& prev_coords,
                                  double degeneracy_tol) {
  Eigen::Index r = h_span.rows();
  ProgramSolution out;

  MatC basis;  // orthonormal basis of the admissible subspace
  if (prev_coords.empty()) {
    basis = MatC::Identity(r, r);
  } else {
    MatC c(r, static_cast<Eigen::Index>(prev_coords.size()));
    for (std::size_t j = 0; j < prev_coords.size(); ++j) {
      if (prev_coords[j].size() != r)
        throw ArgumentError("previous state not expressed in this span");
      c.col(static_cast<Eigen::Index>(j)) = prev_coords[j];
    }
    MatC cnorm = dense::orthonormalize(c, 1e-12);
    MatC compl_proj = MatC::Identity(r, r) - cnorm * cnorm.adjoint();
    auto eg = dense::eigh(compl_proj);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index q = 0; q < r; ++q)
      if (eg.values(q) > 0.5) keep.push_back(q);
    if (keep.empty()) {
      out.status = "infeasible";
      out.sigma = MatC::Zero(r, r);
      return out;
    }
    basis.resize(r, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t q = 0; q < keep.size(); ++q)
      basis.col(static_cast<Eigen::Index>(q)) = eg.vectors.col(keep[q]);
  }

  MatC h_sub = basis.adjoint() * h_span * basis;
  h_sub = 0.5 * (h_sub + h_sub.adjoint()).eval();
  auto eg = dense::eigh(h_sub);
  double emin = eg.values(0);
  Eigen::Index mult = 1;
  while (mult < eg.values.size() && eg.values(mult) - emin <= degeneracy_tol)
    ++mult;
  MatC ground = basis * eg.vectors.leftCols(mult);
  out.sigma = (ground * ground.adjoint()) / double(mult);
  out.objective = emin;
  out.duality_gap = 0.0;
  out.status = "optimal";
  double worst = 0.0;
  for (const auto& c : prev_coords)
    worst = std::max(worst, std::abs((c.adjoint() * out.sigma * c)(0, 0)));
  out.residuals["prev_overlap"] = worst;
  out.residuals["trace"] = std::abs(out.sigma.trace().real() - 1.0);
  return out;
}

VecC demix(const MatC& sigma, const MatC& h_span, double eps0, double epsilon,
           double delta, int g, bool enforce_preconditions) {
  double energy = (h_span * sigma).trace().real();
  if (enforce_preconditions) {
    if (delta > 1.0 / (3.0 * g) + 1e-12)
      throw PreconditionError("demixing requires delta <= 1/(3g)");
    if (energy > eps0 + delta * epsilon / (2.0 * g + 1.0) + 1e-9)
      throw PreconditionError("demixing requires a low-energy mixed state");
  }
  auto eg = dense::eigh(sigma);
  Eigen::Index r = sigma.rows();
  double top = eg.values(r - 1);
  Eigen::Index best = r - 1;
  double best_energy = 1e300;
  for (Eigen::Index q = r - 1; q >= 0; --q) {
    if (top - eg.values(q) > 1e-8) break;
    VecC v = eg.vectors.col(q);
    double e = (v.adjoint() * h_span * v)(0).real();
    if (e < best_energy - 1e-12) {
      best_energy = e;
      best = q;
    }
  }
  return eg.vectors.col(best);
}

Mps orthogonalize(const Mps& v, const std::vector<Mps>& prev) {
  if (prev.empty()) return normalized(v);
  std::vector<Mps> states{v};
  std::vector<cplx> weights{cplx(1.0)};
  for (const auto& g : prev) {
    states.push_back(g);
    weights.push_back(-overlap(g, v));
  }
  Mps out = linear_combine(states, weights);
  if (out.norm() < 1e-10)
    throw DegenerateInputError("state lies in the span of the previous ones");
  out = normalized(out);
  // second classical Gram-Schmidt pass tightens the residual
  double worst = 0.0;
  for (const auto& g : prev) worst = std::max(worst, std::abs(overlap(g, out)));
  if (worst > 1e-11) {
    std::vector<Mps> states2{out};
    std::vector<cplx> weights2{cplx(1.0)};
    for (const auto& g : prev) {
      states2.push_back(g);
      weights2.push_back(-overlap(g, out));
    }
    out = normalized(linear_combine(states2, weights2));
  }
  return out;
}

}  // namespace gsa
