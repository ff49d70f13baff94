#include "gsa/agsp.hpp"

#include <algorithm>
#include <cmath>

#include "gsa/dense.hpp"

namespace gsa {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void fill_common(AgspSchedule& s) {
  s.x = 33.0 - 8.0 * std::log(s.zeta);
  s.zeta_prime = s.zeta * s.epsilon / (240000.0 * s.n);
}

void fill_times(AgspSchedule& s, double budget) {
  s.budget = budget;
  double sqrt2x = std::sqrt(2.0 * s.x);
  double sqrt2pix = std::sqrt(kTwoPi * s.x);
  double log_term = std::log(3.0 / budget);
  s.time_cutoff = (log_term > 0.0) ? sqrt2x / s.epsilon * std::sqrt(log_term) : 0.0;
  s.time_step = budget * sqrt2pix / (12.0 * s.epsilon);
  s.delta_t = std::exp(-s.epsilon * s.epsilon * s.time_cutoff * s.time_cutoff /
                       (2.0 * s.x));
  s.delta_d = 4.0 * s.epsilon * s.time_step / sqrt2pix;
  s.num_terms = (s.time_step > 0.0)
                    ? static_cast<long long>(std::ceil(s.time_cutoff / s.time_step))
                    : 0;
}

}  // namespace

AgspSchedule make_schedule(double zeta, double epsilon, int n) {
  if (zeta > 1.0) throw ArgumentError("zeta must satisfy 0 < zeta <= 1");
  if (zeta <= 0.0 || epsilon <= 0.0 || n < 2)
    throw ArgumentError("invalid schedule parameters");
  AgspSchedule s;
  s.zeta = zeta;
  s.epsilon = epsilon;
  s.n = n;
  fill_common(s);
  fill_times(s, s.zeta_prime);
  s.theoretical_T = s.time_cutoff;
  s.theoretical_tau = s.time_step;
  return s;
}

AgspSchedule make_desk_schedule(double zeta, double epsilon, int n,
                                double budget, int bond_budget) {
  if (zeta > 1.0) throw ArgumentError("zeta must satisfy 0 < zeta <= 1");
  if (zeta <= 0.0 || epsilon <= 0.0 || n < 2 || budget <= 0.0)
    throw ArgumentError("invalid schedule parameters");
  AgspSchedule s;
  s.zeta = zeta;
  s.epsilon = epsilon;
  s.n = n;
  s.desk_mode = true;
  s.bond_budget = bond_budget;
  fill_common(s);
  {
    AgspSchedule t = s;
    fill_times(t, s.zeta_prime);
    s.theoretical_T = t.time_cutoff;
    s.theoretical_tau = t.time_step;
  }
  fill_times(s, budget);
  return s;
}

AgspOperator exact_agsp(const MatC& h_dense, double eps0_ref, double epsilon,
                        double zeta) {
  if (!dense::is_hermitian(h_dense, 1e-9))
    throw ArgumentError("exact AGSP needs a Hermitian Hamiltonian");
  double x = 33.0 - 8.0 * std::log(zeta);
  AgspOperator out;
  out.form = AgspOperator::Form::Dense;
  out.eps0_ref = eps0_ref;
  out.schedule.zeta = zeta;
  out.schedule.epsilon = epsilon;
  out.schedule.x = x;
  out.dense_form = dense::hermitian_function(h_dense, [&](double lambda) {
    double w = lambda - eps0_ref;
    return std::exp(-x * w * w / (2.0 * epsilon * epsilon));
  });
  return out;
}

PropagatorResult propagator_mpo(const StandardHamiltonian& h, double t,
                                double target_err, int bond_cap) {
  int n = h.n(), d = h.d();
  if (t == 0.0) return {Mpo::identity(n, d), 0.0, true, 0};
  if (target_err <= 0.0) throw ArgumentError("target error must be positive");

  std::vector<int> odd_cuts, even_cuts;
  for (int k = 1; k <= n - 1; ++k) (k % 2 ? odd_cuts : even_cuts).push_back(k);

  Eigen::Index dim = dense::ipow(d, n);
  bool certify = dim <= (1 << 8);
  MatC u_exact;
  if (certify) u_exact = dense::unitary_exp(h.dense(), t);

  const int steps_cap = 50000;
  int steps = std::max(
      1, static_cast<int>(std::ceil(std::sqrt(
             std::min(1e12, 0.2 * n * std::abs(t) * t * t / target_err)))));
  steps = std::min(steps, steps_cap);
  PropagatorResult best;
  double best_err = 1e300;
  for (int attempt = 0; attempt < 7 && steps <= steps_cap; ++attempt) {
    double dt = t / steps;
    auto gates = [&](const std::vector<int>& cuts, double tau) {
      std::vector<MatC> gs;
      for (int c : cuts)
        gs.push_back(dense::unitary_exp(h.local_terms()[c - 1], tau));
      return gs;
    };
    Mpo half_odd = Mpo::gate_layer(n, d, odd_cuts, gates(odd_cuts, dt / 2));
    Mpo even = even_cuts.empty()
                   ? Mpo::identity(n, d)
                   : Mpo::gate_layer(n, d, even_cuts, gates(even_cuts, dt));
    Mpo step = mpo_product(mpo_product(half_odd, even), half_odd);
    double ctol = target_err / (20.0 * steps * std::sqrt(double(dim)));
    step = mpo_compress(step, ctol).op;

    Mpo u = step;
    for (int k = 1; k < steps; ++k) {
      u = mpo_product(u, step);
      auto comp = mpo_compress(u, ctol);
      u = std::move(comp.op);
      if (u.max_bond() > bond_cap)
        u = mpo_compress(u, 0.0, bond_cap).op;
    }

    PropagatorResult res{std::move(u), 0.0, certify, steps};
    if (!certify) return res;
    res.measured_error = dense::op_norm(res.op.dense() - u_exact);
    if (res.measured_error <= target_err) return res;
    bool stalled = res.measured_error > 0.8 * best_err;  // bond cap saturated
    if (res.measured_error < best_err) {
      best_err = res.measured_error;
      best = std::move(res);
    }
    if (stalled) break;
    steps *= 2;
  }
  throw BudgetExceededError("propagator tolerance unreachable", best_err);
}

AgspOperator approx_agsp(const StandardHamiltonian& h, double eps0_ref,
                         const AgspSchedule& schedule) {
  int n = h.n(), d = h.d();
  if (schedule.n != n) throw ArgumentError("schedule built for a different chain");
  double eps = schedule.epsilon;
  double tau = schedule.time_step;
  long long nterms = schedule.num_terms;
  double c0 = 2.0 * eps * tau / std::sqrt(kTwoPi * schedule.x);
  double a = eps * eps * tau * tau / (2.0 * schedule.x);

  std::vector<cplx> coeff(nterms + 1);
  double coeff_abs_sum = 0.0, coeff_weighted = 0.0;
  for (long long j = 0; j <= nterms; ++j) {
    double gauss = std::exp(-a * double(j) * double(j));
    coeff[j] = c0 * gauss * std::exp(cplx(0.0, eps0_ref * tau * double(j)));
    coeff_abs_sum += std::abs(coeff[j]);
    coeff_weighted += std::abs(coeff[j]) * double(j);
  }

  AgspOperator out;
  out.form = AgspOperator::Form::MpoForm;
  out.eps0_ref = eps0_ref;
  out.schedule = schedule;

  Eigen::Index dim = dense::ipow(d, n);
  bool certify = dim <= (1 << 8);

  Mpo k = Mpo::identity(n, d);
  k.scale(coeff[0]);

  if (nterms >= 1) {
    double prop_share = schedule.budget / 3.0;
    double e1 = 0.9 * prop_share / std::max(1.0, coeff_weighted);
    auto base = propagator_mpo(h, tau, e1, schedule.bond_budget);

    dense::Eigh eig;
    if (certify) eig = dense::eigh(h.dense());

    double add_rel = schedule.budget /
                     (30.0 * double(nterms + 1) * std::sqrt(double(dim)));
    Mpo u = base.op;
    for (long long j = 1; j <= nterms; ++j) {
      if (j > 1) {
        u = mpo_product(u, base.op);
        u = mpo_compress(u, add_rel).op;
      }
      if (certify) {
        VecC ph(dim);
        for (Eigen::Index q = 0; q < dim; ++q)
          ph(q) = std::exp(cplx(0.0, -eig.values(q) * tau * double(j)));
        MatC exact = eig.vectors * ph.asDiagonal() * eig.vectors.adjoint();
        out.propagator_error +=
            std::abs(coeff[j]) * dense::op_norm(u.dense() - exact);
      } else {
        out.propagator_error += std::abs(coeff[j]) * double(j) * e1;
      }
      double norm_before = mpo_frobenius(k);
      k = mpo_add({k, u}, {cplx(1.0), coeff[j]});
      auto comp = mpo_compress(k, add_rel);
      k = std::move(comp.op);
      out.compression_error +=
          std::sqrt(std::max(0.0, comp.discarded_weight)) *
          std::max(norm_before, mpo_frobenius(k));
    }
  }

  // store (K + K^dag)/2; downstream energy arguments assume near-commutation
  Mpo ksym = mpo_add({k, k.adjoint()}, {cplx(0.5), cplx(0.5)});
  ksym = mpo_compress(ksym, 0.0).op;
  {
    Mpo diff = mpo_add({k, k.adjoint()}, {cplx(0.5), cplx(-0.5)});
    out.symmetrization_change = mpo_frobenius(diff);
  }
  ksym.set_hermitian_flag(true);
  out.mpo_form = std::move(ksym);

  if (certify) {
    MatC a_dense = dense::hermitian_function(h.dense(), [&](double lambda) {
      double w = lambda - eps0_ref;
      return std::exp(-schedule.x * w * w / (2.0 * eps * eps));
    });
    out.dense_gap = dense::op_norm(a_dense - out.mpo_form.dense());
  }
  return out;
}

ShrinkReport shrink_report(const AgspOperator& op, const Spectrum& spec) {
  MatC m = (op.form == AgspOperator::Form::Dense) ? op.dense_form
                                                  : op.mpo_form.dense();
  if (m.rows() != spec.eigenvectors.rows())
    throw ShapeError("operator and spectrum dimensions differ");
  ShrinkReport out;
  Eigen::Index dim = spec.eigenvectors.cols();
  out.per_eigenvector.resize(dim);
  out.ground_retention_min = 1e300;
  out.excited_shrink_max = 0.0;
  for (Eigen::Index j = 0; j < dim; ++j) {
    double nrm = (m * spec.eigenvectors.col(j)).norm();
    out.per_eigenvector(j) = nrm;
    if (j < spec.degeneracy)
      out.ground_retention_min = std::min(out.ground_retention_min, nrm);
    else
      out.excited_shrink_max = std::max(out.excited_shrink_max, nrm);
  }
  return out;
}

VecR rectangle_filter_values(const VecR& energies, const AgspSchedule& schedule,
                             double eps0_ref, double* tail_bound) {
  double eps = schedule.epsilon;
  double tau = schedule.time_step;
  long long nterms = schedule.num_terms;
  double c0 = 2.0 * eps * tau / std::sqrt(kTwoPi * schedule.x);
  double a = eps * eps * tau * tau / (2.0 * schedule.x);

  VecR out(energies.size());
  double worst_tail = 0.0;

  if (nterms <= 200000) {
    for (Eigen::Index q = 0; q < energies.size(); ++q) {
      double w = (energies(q) - eps0_ref) * tau;
      double acc = 0.0;
      for (long long j = 0; j <= nterms; ++j)
        acc += std::exp(-a * double(j) * double(j)) * std::cos(w * double(j));
      out(q) = c0 * acc;
    }
    if (tail_bound) *tail_bound = 0.0;
    return out;
  }

  // Poisson-summation evaluation of the two-sided theta sum, then correct for
  // the one-sided range: Re sum_{j=0..N} = (sum_{-N..N} + 1)/2.
  double sqrt_pi_a = std::sqrt(3.14159265358979323846 / a);
  double n1 = double(nterms) + 1.0;
  double tail_geom = std::exp(-a * n1 * n1);
  double ratio = std::exp(-a * (2.0 * n1 + 1.0));
  if (ratio < 1.0) tail_geom /= (1.0 - ratio);
  for (Eigen::Index q = 0; q < energies.size(); ++q) {
    double w = (energies(q) - eps0_ref) * tau;
    double lo = (-w - 2.0 * std::sqrt(745.0 * a)) / kTwoPi;
    double hi = (-w + 2.0 * std::sqrt(745.0 * a)) / kTwoPi;
    double theta = 0.0;
    for (long long m = static_cast<long long>(std::floor(lo)) - 1;
         m <= static_cast<long long>(std::ceil(hi)) + 1; ++m) {
      double arg = w + kTwoPi * double(m);
      theta += sqrt_pi_a * std::exp(-arg * arg / (4.0 * a));
    }
    out(q) = c0 * 0.5 * (theta + 1.0);
    worst_tail = std::max(worst_tail, c0 * tail_geom);
  }
  if (tail_bound) *tail_bound = worst_tail;
  return out;
}

VecR gaussian_filter_values(const VecR& energies, const AgspSchedule& schedule,
                            double eps0_ref) {
  VecR out(energies.size());
  for (Eigen::Index q = 0; q < energies.size(); ++q) {
    double w = energies(q) - eps0_ref;
    out(q) = std::exp(-schedule.x * w * w /
                      (2.0 * schedule.epsilon * schedule.epsilon));
  }
  return out;
}

}  // namespace gsa
