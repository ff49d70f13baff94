#include "gsa/viable.hpp"

#include <algorithm>
#include <chrono>

#include "gsa/dense.hpp"

namespace gsa {

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

bool nearly_duplicate(const Mps& candidate, const std::vector<Mps>& kept) {
  for (const auto& k : kept)
    if (std::abs(overlap(k, candidate)) > 1.0 - 1e-10) return true;
  return false;
}

void append_unique(std::vector<Mps>& out, const Mps& s) {
  if (!nearly_duplicate(s, out)) out.push_back(s);
}

}  // namespace

BoundaryContraction boundary_contraction(const Mps& v, int cut) {
  int n = v.length();
  if (cut < 1 || cut > n) throw ArgumentError("cut out of range");
  double nrm = v.norm();
  if (std::abs(nrm - 1.0) > 1e-8)
    throw ArgumentError("boundary contraction expects a normalized state");

  BoundaryContraction out;
  out.cut = cut;
  if (cut == n) {
    out.rank = 1;
    out.matrix = last_site_cross_density(v, v);
    return out;
  }
  auto sd = schmidt_decompose(v, cut);
  int rank = static_cast<int>(sd.coefficients.size());
  int d = v.phys_dim();
  out.rank = rank;
  out.matrix = MatC::Zero(d * rank, d * rank);
  std::vector<MatC> cross(rank * rank);
  for (int a = 0; a < rank; ++a)
    for (int b = 0; b < rank; ++b) {
      if (b < a) {
        cross[a * rank + b] = cross[b * rank + a].adjoint();
        continue;
      }
      cross[a * rank + b] =
          last_site_cross_density(sd.left_vectors[a], sd.left_vectors[b]);
    }
  for (int a = 0; a < rank; ++a)
    for (int b = 0; b < rank; ++b) {
      double w = sd.coefficients(a) * sd.coefficients(b);
      for (int s = 0; s < d; ++s)
        for (int t = 0; t < d; ++t)
          out.matrix(s * rank + a, t * rank + b) = w * cross[a * rank + b](s, t);
    }
  return out;
}

std::vector<double> energy_net(double eta) {
  if (eta <= 0.0) throw ArgumentError("energy net spacing must be positive");
  std::vector<double> out;
  for (int k = 0;; ++k) {
    double y = -1.0 + k * eta;
    if (y > 1.0 + eta + 1e-12) break;
    out.push_back(y);
  }
  // keep the displayed endpoint when the spacing does not divide the range
  if (out.back() < 1.0 + eta - 1e-12) out.push_back(1.0 + eta);
  return out;
}

std::vector<MatC> exhaustive_contraction_net(double xi, int d, int bond_rank,
                                             double cap) {
  if (xi <= 0.0) throw ArgumentError("net spacing must be positive");
  int k = d * bond_rank;
  double formula = std::pow(2.0 * std::ceil(bond_rank * d / xi) + 1.0,
                            4.0 * bond_rank * d);
  int grid_half = static_cast<int>(std::ceil(2.0 * k * k / xi));
  double per_axis = 2.0 * grid_half + 1.0;
  double count = std::pow(per_axis, 2.0 * k * k);
  if (formula > cap || count > cap)
    throw ArgumentError("exhaustive contraction net exceeds the configured cap");

  double spacing = 1.0 / grid_half;
  std::vector<double> axis;
  for (int q = -grid_half; q <= grid_half; ++q) axis.push_back(q * spacing);

  std::vector<MatC> out;
  long long total = static_cast<long long>(count);
  long long axes = static_cast<long long>(per_axis);
  for (long long code = 0; code < total; ++code) {
    MatC x(k, k);
    long long c = code;
    for (int r = 0; r < k; ++r)
      for (int cidx = 0; cidx < k; ++cidx) {
        double re = axis[c % axes];
        c /= axes;
        double im = axis[c % axes];
        c /= axes;
        x(r, cidx) = cplx(re, im);
      }
    out.push_back(std::move(x));
  }
  return out;
}

ViableSet extend(const ViableSet& s, int phys_dim) {
  ViableSet out;
  out.h = s.h;
  out.i = s.i + 1;
  out.stage = "S1";
  out.error = s.error;
  out.s_bound = phys_dim * std::max(1.0, s.s_bound);
  out.b_bound = std::max(1.0, s.b_bound);
  if (s.i == 0) {
    for (int q = 0; q < phys_dim; ++q)
      out.states.push_back(Mps::basis_state(1, phys_dim, {q}));
    return out;
  }
  for (const auto& st : s.states)
    for (int q = 0; q < phys_dim; ++q)
      out.states.push_back(extend_site(st, q));
  return out;
}

namespace {

struct CandidateBuilder {
  const SpanBasis& span;
  const TrimProgram& prog;
  const SweepContext& ctx;
  int cut;
  double left_energy_ref;
  const std::vector<double>& ys;
  std::vector<NetPoint>& points;
  MatC h_bond;  // H_L (x) 1_B in span coordinates

  bool duplicate_x(const MatC& x) const {
    for (const auto& p : points)
      if ((p.x - x).norm() <= 1e-10) return true;
    return false;
  }

  void add_for_all_y(const MatC& x, const std::string& provenance) {
    if (duplicate_x(x)) return;
    for (double y : ys) points.push_back({y, x, provenance});
  }

  // Coordinates of the left state of a globally defined dense state,
  // projected through the span; empty when the span barely supports it.
  std::optional<VecC> ls_coords(const VecC& w_dense) const {
    int n = ctx.hamiltonian->n();
    int d = ctx.hamiltonian->d();
    int b = prog.bond_dim;
    Eigen::Index r = span.rank();
    Mps w = Mps::from_dense(w_dense, n, d);
    VecC c = VecC::Zero(r * b);
    if (cut == n) {
      auto co = span.express(w);
      for (Eigen::Index a = 0; a < r; ++a) c(a * b) = co.c(a);
    } else {
      auto sd = schmidt_decompose(w, cut);
      int jmax = std::min<int>(b, static_cast<int>(sd.coefficients.size()));
      for (int j = 0; j < jmax; ++j) {
        auto co = span.express(sd.left_vectors[j]);
        for (Eigen::Index a = 0; a < r; ++a)
          c(a * b + j) = sd.coefficients(j) * co.c(a);
      }
    }
    double nrm = c.norm();
    if (nrm < 0.3) return std::nullopt;
    return VecC(c / nrm);
  }

  void add_from_coords(const VecC& c, const std::string& provenance) {
    MatC x = trim_partial_trace(prog, MatC(c * c.adjoint()));
    if (duplicate_x(x)) return;
    double tight = (c.adjoint() * h_bond * c)(0).real() - left_energy_ref;
    // smallest net point at or above the tight value (one-sided covering)
    double chosen = ys.back();
    for (double y : ys)
      if (y >= tight - 1e-12) {
        chosen = y;
        break;
      }
    points.push_back({chosen, x, provenance});
    for (double y : ys)
      if (y != chosen) points.push_back({y, x, provenance});
  }
};

VecC oracle_pass_witness(const SweepContext& ctx) {
  const Spectrum& spec = *ctx.oracle;
  int g = spec.degeneracy;
  MatC cols = spec.eigenvectors.leftCols(g);
  if (ctx.prev_states && !ctx.prev_states->empty()) {
    for (const auto& gamma : *ctx.prev_states) {
      VecC gd = gamma.dense();
      cols -= gd * (gd.adjoint() * cols);
    }
  }
  MatC on = dense::orthonormalize(cols, 1e-8);
  if (on.cols() == 0) return spec.eigenvectors.col(0);
  return on.col(0);
}

}  // namespace

ViableSet trim(const ViableSet& s1, const std::vector<Mps>& recycled,
               const SweepContext& ctx, double left_energy_ref,
               StageRecord* record) {
  double t0 = now_ms();
  const auto& h = *ctx.hamiltonian;
  const auto& cfg = ctx.cfg;
  int n = h.n(), d = h.d();
  int cut = s1.i;
  int total_g = 1;
  if (ctx.oracle) total_g = ctx.oracle->degeneracy;
  total_g = std::max(total_g, s1.h);

  // bond factor for the boundary contraction
  int bond_rank = 1;
  if (cut < n) {
    if (cfg.bond_rank > 0) {
      bond_rank = cfg.bond_rank;
    } else if (ctx.oracle) {
      VecC w = oracle_pass_witness(ctx);
      Mps wm = Mps::from_dense(w, n, d);
      auto sd = schmidt_decompose(wm, cut);
      bond_rank = std::min<int>(cfg.bond_rank_cap,
                                static_cast<int>(sd.coefficients.size()));
    } else {
      bond_rank = std::min(2, cfg.bond_rank_cap);
    }
    bond_rank = std::max(1, bond_rank);
  }

  // span over the extended set plus the recycled Schmidt vectors
  std::vector<Mps> carriers = s1.states;
  for (const auto& l : recycled) carriers.push_back(l);
  Mpo h_left = h.window_mpo(1, cut);
  SpanBasis span(carriers, {{"H_L", &h_left}}, cfg.gram_rel_tol);
  Eigen::Index r = span.rank();

  TrimProgram prog;
  prog.span_rank = r;
  prog.bond_dim = bond_rank;
  prog.phys_dim = d;
  prog.h_left = span.projected("H_L");
  prog.cross_density = span.cross_densities();
  prog.xi = cfg.xi;
  prog.overlap_projector = MatC::Zero(r, r);
  if (!recycled.empty()) {
    MatC cols(r, static_cast<Eigen::Index>(recycled.size()));
    for (std::size_t j = 0; j < recycled.size(); ++j)
      cols.col(static_cast<Eigen::Index>(j)) = span.express(recycled[j]).c;
    MatC on = dense::orthonormalize(cols, 1e-10);
    prog.overlap_projector = on * on.adjoint();
  }
  prog.minimize_left_energy = prog.overlap_projector.norm() < 1e-12;

  auto ys = energy_net(cfg.energy_spacing);
  std::vector<NetPoint> points;
  MatC h_bond = dense::kron(prog.h_left, MatC::Identity(bond_rank, bond_rank));
  CandidateBuilder builder{span, prog, ctx, cut, left_energy_ref,
                           ys, points, h_bond};

  if (cfg.net_mode == "exhaustive") {
    auto xs = exhaustive_contraction_net(cfg.xi, d, bond_rank,
                                         cfg.exhaustive_cap);
    for (const auto& x : xs) builder.add_for_all_y(x, "exhaustive");
  } else {
    if (ctx.oracle) {
      if (auto c = builder.ls_coords(oracle_pass_witness(ctx)))
        builder.add_from_coords(*c, "oracle_witness");
      int low = std::min<int>(cfg.low_energy_candidates,
                              static_cast<int>(ctx.oracle->eigenvalues.size()));
      for (int q = 0; q < low; ++q)
        if (auto c = builder.ls_coords(VecC(ctx.oracle->eigenvectors.col(q))))
          builder.add_from_coords(*c, "oracle_low_energy");
    }
    // lowest left-energy member of the span
    {
      Eigen::Index best = 0;
      double best_e = 1e300;
      for (std::size_t p = 0; p < carriers.size(); ++p) {
        double nn = std::max(1e-300, carriers[p].norm());
        double e = matrix_element(carriers[p], h_left, carriers[p]).real() / (nn * nn);
        if (e < best_e) {
          best_e = e;
          best = static_cast<Eigen::Index>(p);
        }
      }
      auto co = span.express(normalized(carriers[best]));
      VecC c = VecC::Zero(r * bond_rank);
      for (Eigen::Index a = 0; a < r; ++a) c(a * bond_rank) = co.c(a);
      if (c.norm() > 0.3) builder.add_from_coords(VecC(c.normalized()), "member");
    }
    if (ctx.rng) {
      for (int q = 0; q < cfg.random_candidates; ++q) {
        VecC c = dense::random_unit(r * bond_rank, *ctx.rng);
        builder.add_from_coords(c, "random");
      }
    }
  }

  double threshold = (cfg.eval_threshold > 0.0) ? cfg.eval_threshold
                                                : 1e-9 / double(total_g);
  ViableSet out;
  out.h = s1.h;
  out.i = cut;
  out.stage = "S2";
  out.error = {ErrorTag::Kind::Overlap, 0.01};

  int feasible_points = 0;
  for (const auto& pt : points) {
    TrimProgram local = prog;
    local.x_point = pt.x;
    local.y_bound = pt.y + left_energy_ref;
    auto sol = solve_trim_program(local, cfg.sdp);

    TrimPointRecord rec;
    rec.provenance = pt.provenance;
    rec.y = pt.y;
    rec.feasible = sol.feasible();
    rec.objective = sol.objective;
    if (sol.feasible()) {
      ++feasible_points;
      auto eg = dense::eigh(sol.sigma);
      double mass = 0.0;
      for (Eigen::Index q = eg.values.size() - 1; q >= 0; --q) {
        if (eg.values(q) < threshold) break;
        mass += eg.values(q);
        ++rec.kept_eigenvectors;
        // left Schmidt vectors of the eigenvector across the span|bond cut
        MatC vm(r, bond_rank);
        for (Eigen::Index a = 0; a < r; ++a)
          for (int b = 0; b < bond_rank; ++b) vm(a, b) = eg.vectors(a * bond_rank + b, q);
        Eigen::JacobiSVD<MatC> svd(vm, Eigen::ComputeThinU);
        for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
          if (svd.singularValues()(k) <=
              kSingularZeroRel * svd.singularValues()(0))
            break;
          Mps vec = span.realize(VecC(svd.matrixU().col(k)));
          if (vec.norm() > 1e-10) append_unique(out.states, normalized(vec));
        }
      }
      rec.kept_mass = mass;
    }
    if (record) record->net_points.push_back(rec);
  }

  if (feasible_points == 0)
    throw TrimFailureError(s1.h, cut, "S2",
                           "every net point left the trimming program infeasible");

  for (const auto& l : recycled) append_unique(out.states, l);
  out.s_bound = double(out.states.size());
  out.b_bound = double(out.max_bond());

  if (record) {
    record->h = out.h;
    record->i = out.i;
    record->stage = out.stage;
    record->set_size = static_cast<int>(out.states.size());
    record->max_bond = out.max_bond();
    record->s_bound = out.s_bound;
    record->b_bound = out.b_bound;
    record->error_kind = "delta";
    record->error_target = ctx.cfg.s2_delta_target;
    record->high_d_mass_floor_value = high_d_mass_floor(total_g) - 1e-9;
    record->wall_ms = now_ms() - t0;
  }
  return out;
}

ViableSet truncate_set(const ViableSet& s2, const std::vector<Mps>& recycled,
                       const ViableCfg& cfg) {
  ViableSet out;
  out.h = s2.h;
  out.i = s2.i;
  out.stage = "S3";
  out.error = {ErrorTag::Kind::Overlap, 0.2};
  for (const auto& s : s2.states) {
    if (s2.i < 2) {
      append_unique(out.states, s);
      continue;
    }
    auto tr = truncate_all_bonds(s, cfg.truncate_rank, s2.i - 1);
    append_unique(out.states, tr.state);
  }
  for (const auto& l : recycled) append_unique(out.states, l);
  out.s_bound = double(out.states.size());
  out.b_bound = double(out.max_bond());
  return out;
}

ViableSet reduce(const ViableSet& s3, const AgspOperator& agsp,
                 const std::vector<Mps>& recycled) {
  if (agsp.form != AgspOperator::Form::MpoForm)
    throw ArgumentError("reduce needs the AGSP in MPO form");
  int cut = s3.i;
  auto split = agsp.mpo_form.split_at_cut(cut);
  ViableSet out;
  out.h = s3.h;
  out.i = s3.i;
  out.stage = "S4";
  out.error = {ErrorTag::Kind::Energy, s3.error.value};
  for (const auto& s : s3.states) {
    for (std::size_t j = 0; j < split.left.size(); ++j) {
      auto applied = apply_mpo(split.left[j], s);
      Mps red = applied.state;
      if (red.norm() <= 1e-12) continue;
      red = reduce_rank(red, 1);
      append_unique(out.states, normalized(red));
    }
  }
  for (const auto& l : recycled) append_unique(out.states, l);
  out.s_bound = double(split.left.size()) * double(s3.states.size()) +
                double(recycled.size());
  out.b_bound = double(out.max_bond());
  return out;
}

ViableSet final_reduce(const ViableSet& s3, const AgspOperator& strong_agsp,
                       const std::vector<Mps>& prev, double eta, int g) {
  if (strong_agsp.form != AgspOperator::Form::MpoForm)
    throw ArgumentError("final reduce needs the AGSP in MPO form");
  ViableSet out;
  out.h = s3.h;
  out.i = s3.i;
  out.stage = "SN";
  double f = f_of_g(g);
  out.error = {ErrorTag::Kind::Energy, eta * eta / (4.0 * f)};
  for (const auto& s : s3.states) {
    auto applied = apply_mpo(strong_agsp.mpo_form, s);
    Mps red = applied.state;
    if (red.norm() <= 1e-12) continue;
    red = reduce_rank(red, 1);
    append_unique(out.states, normalized(red));
  }
  for (const auto& p : prev) append_unique(out.states, p);
  out.s_bound = double(s3.states.size()) + double(prev.size());
  out.b_bound = double(out.max_bond());
  return out;
}

namespace {

void run_hook(const SweepContext& ctx, const ViableSet& set, StageRecord& rec,
              double t0) {
  rec.h = set.h;
  rec.i = set.i;
  rec.stage = set.stage;
  rec.set_size = static_cast<int>(set.states.size());
  rec.max_bond = set.max_bond();
  if (rec.s_bound == 0) rec.s_bound = set.s_bound;
  if (rec.b_bound == 0) rec.b_bound = set.b_bound;
  rec.error_kind = (set.error.kind == ErrorTag::Kind::Overlap) ? "delta" : "Delta";
  rec.error_target = set.error.value;
  if (rec.wall_ms == 0.0) rec.wall_ms = now_ms() - t0;
  if (ctx.stage_hook) ctx.stage_hook(set, rec);
}

}  // namespace

ViableSet step(const ViableSet& s_prev, const std::vector<Mps>& recycled,
               const SweepContext& ctx, double left_energy_ref,
               std::vector<StageRecord>* records) {
  if (!ctx.step_agsp) throw ArgumentError("step needs the AGSP in context");
  int d = ctx.hamiltonian->d();
  std::vector<StageRecord> local;
  auto& recs = records ? *records : local;

  double t0 = now_ms();
  ViableSet s1 = extend(s_prev, d);
  recs.emplace_back();
  run_hook(ctx, s1, recs.back(), t0);

  t0 = now_ms();
  recs.emplace_back();
  StageRecord& trim_rec = recs.back();
  ViableSet s2 = trim(s1, recycled, ctx, left_energy_ref, &trim_rec);
  run_hook(ctx, s2, trim_rec, t0);

  t0 = now_ms();
  ViableSet s3 = truncate_set(s2, recycled, ctx.cfg);
  recs.emplace_back();
  run_hook(ctx, s3, recs.back(), t0);

  t0 = now_ms();
  ViableSet s4 = reduce(s3, *ctx.step_agsp, recycled);
  s4.error.value = ctx.cfg.s4_energy_target;
  recs.emplace_back();
  run_hook(ctx, s4, recs.back(), t0);
  return s4;
}

ViableSet final_step(const ViableSet& s_prev, const SweepContext& ctx,
                     double eta, int g, std::vector<StageRecord>* records) {
  if (!ctx.final_agsp) throw ArgumentError("final step needs the strong AGSP");
  int d = ctx.hamiltonian->d();
  std::vector<StageRecord> local;
  auto& recs = records ? *records : local;
  const std::vector<Mps> empty;
  const std::vector<Mps>& prev = ctx.prev_states ? *ctx.prev_states : empty;

  double t0 = now_ms();
  ViableSet s1 = extend(s_prev, d);
  recs.emplace_back();
  run_hook(ctx, s1, recs.back(), t0);

  t0 = now_ms();
  recs.emplace_back();
  StageRecord& trim_rec = recs.back();
  ViableSet s2 = trim(s1, prev, ctx, ctx.ground_energy_estimate, &trim_rec);
  run_hook(ctx, s2, trim_rec, t0);

  t0 = now_ms();
  ViableSet s3 = truncate_set(s2, prev, ctx.cfg);
  recs.emplace_back();
  run_hook(ctx, s3, recs.back(), t0);

  t0 = now_ms();
  ViableSet s4 = final_reduce(s3, *ctx.final_agsp, prev, eta, g);
  recs.emplace_back();
  run_hook(ctx, s4, recs.back(), t0);
  return s4;
}

}  // namespace gsa
