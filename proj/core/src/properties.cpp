#include "gsa/properties.hpp"

#include <algorithm>
#include <functional>

#include <json.hpp>

#include "gsa/agsp.hpp"
#include "gsa/dense.hpp"
#include "gsa/driver.hpp"
#include "gsa/sdp.hpp"
#include "gsa/viable.hpp"

namespace gsa {

namespace {

struct Check {
  long trials = 0;
  long violations = 0;
  double worst = 1e300;

  void record(double slack) {
    ++trials;
    worst = std::min(worst, slack);
    if (slack < 0.0) ++violations;
  }
};

VecC low_energy_mixture(const Spectrum& spec, double emax, DetRng& rng) {
  VecC v = VecC::Zero(spec.eigenvectors.rows());
  for (Eigen::Index q = 0; q < spec.eigenvalues.size(); ++q)
    if (spec.eigenvalues(q) <= emax) v += rng.cnormal() * spec.eigenvectors.col(q);
  double nrm = v.norm();
  if (nrm < 1e-12) {
    v = spec.eigenvectors.col(0);
    nrm = 1.0;
  }
  return v / nrm;
}

VecC unit_with_overlap(const VecC& w, double target, DetRng& rng) {
  VecC r = dense::random_unit(w.size(), rng);
  r -= w.dot(r) * w;
  r.normalize();
  return (target * w + std::sqrt(std::max(0.0, 1.0 - target * target)) * r).eval();
}

using Suite = std::function<Check(long, DetRng&)>;

Check suite_interchangeability(long trials, DetRng& rng) {
  Check c;
  ModelParams p;
  p.values["h"] = 0.3;
  std::vector<StandardHamiltonian> models{make_model("ising_zero_field", 6),
                                          make_model("ising_transverse", 6, p)};
  std::vector<Spectrum> specs;
  for (auto& m : models) specs.push_back(diagonalize(m));
  std::vector<MatC> dense_h;
  for (auto& m : models) dense_h.push_back(m.dense());
  for (long t = 0; t < trials; ++t) {
    std::size_t pick = t % models.size();
    const auto& spec = specs[pick];
    const auto& hd = dense_h[pick];
    double w = rng.uniform();
    VecC v = (std::sqrt(w) * spec.eigenvectors.col(0) +
              std::sqrt(1 - w) * dense::random_unit(hd.rows(), rng))
                 .normalized();
    double energy = (v.adjoint() * hd * v)(0).real();
    double gover = ground_overlap(v, spec);
    double dl = (energy - spec.eps0) / spec.gap;
    c.record(gover - (1.0 - dl) + 1e-9);
    double delta = 1.0 - gover;
    c.record(spec.eps0 + 2.0 * delta * models[pick].n() - energy + 1e-9);
  }
  return c;
}

Check suite_omnibus(long trials, DetRng& rng) {
  Check c;
  Eigen::Index dim = 40;
  for (long t = 0; t < trials; ++t) {
    double d1 = 0.3 * rng.uniform(), d2 = 0.3 * rng.uniform();
    VecC w = dense::random_unit(dim, rng);
    VecC v = unit_with_overlap(w, 1 - d1, rng);
    VecC vp = unit_with_overlap(w, 1 - d2, rng);
    c.record(std::abs(v.dot(vp)) - (1 - 2 * (d1 + d2)) + 1e-9);

    MatC o = dense::random_hermitian(dim, rng);
    o /= dense::op_norm(o);
    double lhs = std::abs((v.adjoint() * o * v)(0).real() -
                          (w.adjoint() * o * w)(0).real());
    c.record(2.0 * std::sqrt(2.0 * d1) - lhs + 1e-9);

    VecC gamma = dense::random_unit(dim, rng);
    VecC u = dense::random_unit(dim, rng);
    double omega = std::abs(u.dot(gamma));
    VecC v3 = unit_with_overlap(u, 1 - d1, rng);
    c.record(omega + std::sqrt(2 * d1) - std::abs(v3.dot(gamma)) + 1e-9);

    VecC u1 = dense::random_unit(dim, rng);
    VecC u2 = dense::random_unit(dim, rng);
    VecC v1 = unit_with_overlap(u1, 1 - d1, rng);
    VecC v2 = unit_with_overlap(u2, 1 - d1, rng);
    c.record(std::abs(u1.dot(u2)) + std::sqrt(10 * d1) -
             std::abs(v1.dot(v2)) + 1e-9);
  }
  return c;
}

Check suite_orthogonalising(long trials, DetRng& rng) {
  Check c;
  auto h = make_model("ising_zero_field", 6);
  auto spec = diagonalize(h);
  MatC hd = h.dense();
  for (long t = 0; t < trials; ++t) {
    double delta = 0.05 + 0.3 * rng.uniform();
    VecC u = low_energy_mixture(spec, spec.eps0 + delta * spec.gap, rng);
    VecC v = low_energy_mixture(spec, spec.eps0 + delta * spec.gap, rng);
    double beta = std::abs(u.dot(v));
    if (beta > 0.6) continue;
    double eu = (u.adjoint() * hd * u)(0).real();
    double ev = (v.adjoint() * hd * v)(0).real();
    double de = std::max(eu, ev) - spec.eps0;
    VecC vp = (v - u * u.dot(v));
    vp.normalize();
    double eo = (vp.adjoint() * hd * vp)(0).real();
    c.record(spec.eps0 + de * (1 + beta) / (1 - beta) - eo + 1e-9);
  }
  return c;
}

Check suite_demixing(long trials, DetRng& rng) {
  Check c;
  auto h = make_model("ising_zero_field", 5);
  auto spec = diagonalize(h);
  Eigen::Index dim = 32;
  MatC h_span = MatC::Zero(dim, dim);
  for (Eigen::Index q = 0; q < dim; ++q) h_span(q, q) = spec.eigenvalues(q);
  int g = spec.degeneracy;
  for (long t = 0; t < trials; ++t) {
    double dl = (0.2 + 0.8 * rng.uniform()) / (3.0 * g);
    double target = spec.eps0 + dl * spec.gap / (2 * g + 1);
    MatC sigma = dense::random_density(dim, rng);
    MatC gs = MatC::Zero(dim, dim);
    for (int q = 0; q < g; ++q) gs(q, q) = 1.0 / g;
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 40; ++it) {
      double w = 0.5 * (lo + hi);
      double e = (h_span * (w * sigma + (1 - w) * gs)).trace().real();
      (e <= target ? lo : hi) = w;
    }
    MatC blended = lo * sigma + (1 - lo) * gs;
    blended /= blended.trace().real();
    if ((h_span * blended).trace().real() > target) continue;
    VecC lead = demix(blended, h_span, spec.eps0, spec.gap, dl, g);
    double energy = (lead.adjoint() * h_span * lead)(0).real();
    c.record(spec.eps0 + dl * spec.gap - energy + 1e-9);
  }
  return c;
}

Check suite_boundary_contraction_energy(long trials, DetRng& rng) {
  Check c;
  int n = 6, d = 2;
  ModelParams mp;
  mp.seed = 5;
  std::vector<StandardHamiltonian> models{
      make_model("ising_zero_field", n),
      make_model("ising_random_perturbed", n, mp)};
  for (long t = 0; t < trials; ++t) {
    const auto& h = models[t % models.size()];
    int cut = 2 + static_cast<int>(rng.integer(n - 3));
    Mps v = Mps::random(n, d, 2, rng);
    auto sd = schmidt_decompose(v, cut);
    int rank = static_cast<int>(sd.coefficients.size());
    Eigen::Index dl = dense::ipow(d, cut), dr = dense::ipow(d, n - cut);

    MatC uv = MatC::Zero(dr, rank);
    for (int j = 0; j < rank; ++j) uv.col(j) = sd.right_vectors[j].dense();

    MatC sigma = dense::random_density(dl * rank, rng);
    MatC embed = dense::kron(MatC::Identity(dl, dl), uv);
    MatC sigma_full = embed * sigma * embed.adjoint();

    MatC hd = h.dense();
    MatC hl_local = (cut >= 2) ? h.window_dense(1, cut) : MatC::Zero(dl, dl);
    MatC hl_sigma = dense::kron(hl_local, MatC::Identity(rank, rank));
    MatC hr_local = (cut <= n - 2) ? h.window_dense(cut + 1, n)
                                   : MatC::Zero(dr, dr);
    MatC hr = dense::kron(MatC::Identity(dl, dl), hr_local);
    MatC hi = dense::embed(h.local_terms()[cut - 1], n, d, cut, 2);

    VecC vd = v.dense();
    auto bc = boundary_contraction(v, cut);
    MatC reduced = dense::partial_trace_left(sigma, dense::ipow(d, cut - 1));
    double tn = dense::trace_norm(reduced - bc.matrix);

    double lhs = (hd * sigma_full).trace().real();
    double middle_right = (vd.adjoint() * (hi + hr) * vd)(0).real();
    double pif = dense::op_norm(hr_local * (uv * uv.adjoint()));
    double vr = (vd.adjoint() * hr * vd)(0).real();
    double rhs = (hl_sigma * sigma).trace().real() + middle_right +
                 tn * (1.0 + pif - vr);
    c.record(rhs - lhs + 1e-9);
  }
  return c;
}

Check suite_truncation_lemma(long trials, DetRng& rng) {
  Check c;
  (void)rng;
  ModelParams p;
  p.values["h"] = 0.3;
  std::vector<StandardHamiltonian> models{make_model("ising_zero_field", 6),
                                          make_model("ising_transverse", 6, p),
                                          make_model("ising_zero_field", 8)};
  long done = 0;
  while (done < trials) {
    for (const auto& h : models) {
      auto spec = diagonalize(h);
      for (int cut = 1; cut <= h.n() - 1 && done < trials; ++cut) {
        for (double t : {1.0, 5.0, 20.0, 99.0}) {
          auto tp = truncated_projectors(h, cut, t);
          Eigen::Index dim = tp.p.rows();
          for (int j = 0; j < spec.degeneracy && done < trials; ++j) {
            VecC gs = spec.eigenvectors.col(j);
            double np = ((dense::identity(dim) - tp.p) * gs).norm();
            double nq = ((dense::identity(dim) - tp.q) * gs).norm();
            c.record(nq - np + 1e-10);
            c.record(99.0 * std::pow(2.0, -t / 99.0) - nq + 1e-10);
            done += 2;
          }
        }
      }
    }
  }
  return c;
}

Check suite_eckart_young(long trials, DetRng& rng) {
  Check c;
  int n = 6, d = 2;
  long done = 0;
  while (done < trials) {
    Mps s = Mps::random(n, d, 4, rng);
    int cut = 1 + static_cast<int>(rng.integer(n - 1));
    int rank = 1 + static_cast<int>(rng.integer(3));
    auto sd = schmidt_decompose(s, cut);
    Mps tr = truncate_at_cut(s, cut, rank);
    double ours = std::abs(overlap(s, tr));
    double expect = std::sqrt(
        sd.coefficients.head(std::min<Eigen::Index>(rank, sd.coefficients.size()))
            .squaredNorm());
    c.record(1e-10 - std::abs(ours - expect));
    ++done;
    VecC sv = s.dense();
    for (int rep = 0; rep < 20 && done < trials; ++rep, ++done) {
      VecC w = VecC::Zero(sv.size());
      Eigen::Index dl = dense::ipow(d, cut), dr = dense::ipow(d, n - cut);
      for (int j = 0; j < rank; ++j) {
        VecC l = dense::random_unit(dl, rng), r = dense::random_unit(dr, rng);
        cplx wt = rng.cnormal();
        for (Eigen::Index a = 0; a < dl; ++a)
          for (Eigen::Index b = 0; b < dr; ++b) w(a * dr + b) += wt * l(a) * r(b);
      }
      w.normalize();
      c.record(ours - std::abs(w.dot(sv)) + 1e-10);
    }
  }
  return c;
}

Check suite_appendix_a(long trials, DetRng& rng) {
  Check c;
  Eigen::Index dim = 48;
  long done = 0;
  while (done < trials) {
    int g = 2 + static_cast<int>(rng.integer(3));
    double delta = 0.02 + 0.25 * rng.uniform();
    MatC gb = dense::orthonormalize(MatC::NullaryExpr(
        dim, g, [&](Eigen::Index, Eigen::Index) { return rng.cnormal(); }));
    MatC proj = gb * gb.adjoint();
    MatC vs(dim, g);
    bool ok = true;
    for (int i = 0; i < g; ++i) {
      VecC out = dense::random_unit(dim, rng);
      out -= proj * out;
      for (int j = 0; j < i; ++j) out -= vs.col(j).dot(out) * vs.col(j);
      if (out.norm() < 1e-8) {
        ok = false;
        break;
      }
      out.normalize();
      double eps = (delta / g) * rng.uniform();
      vs.col(i) = std::sqrt(1.0 - eps) * gb.col(i) + std::sqrt(eps) * out;
    }
    if (!ok) continue;
    vs = dense::orthonormalize(vs);
    if (vs.cols() != g) continue;

    for (int rep = 0; rep < 10 && done < trials; ++rep, ++done) {
      VecC v = (vs * dense::random_unit(g, rng)).normalized();
      c.record((v.adjoint() * proj * v)(0).real() - (1.0 - delta) + 1e-9);
      VecC vp = dense::random_unit(dim, rng);
      vp -= vs * (vs.adjoint() * vp);
      if (vp.norm() > 1e-8) {
        vp.normalize();
        c.record(delta - (vp.adjoint() * proj * vp)(0).real() + 1e-9);
      }
    }
    Eigen::JacobiSVD<MatC> svd(MatC(proj * vs));
    c.record(svd.singularValues()(g - 1));
    ++done;
  }
  return c;
}

Check suite_frustration(long trials, DetRng& rng) {
  Check c;
  ModelParams mp;
  mp.seed = 21;
  std::vector<StandardHamiltonian> models{
      make_model("ising_zero_field", 6),
      make_model("ising_random_perturbed", 6, mp)};
  std::vector<Spectrum> specs;
  for (auto& m : models) specs.push_back(diagonalize(m));
  for (long t = 0; t < trials; ++t) {
    std::size_t pick = t % models.size();
    const auto& h = models[pick];
    const auto& spec = specs[pick];
    int n = h.n(), d = h.d();
    int cut = 1 + static_cast<int>(rng.integer(n - 1));
    MatC hl = dense::kron(h.window_dense(1, cut),
                          dense::identity(dense::ipow(d, n - cut)));
    double de = 0.1 + 0.9 * rng.uniform();
    VecC v1 = low_energy_mixture(spec, spec.eps0 + de, rng);
    VecC v2 = low_energy_mixture(spec, spec.eps0 + de, rng);
    MatC hd = h.dense();
    double e1 = (v1.adjoint() * hd * v1)(0).real();
    double e2 = (v2.adjoint() * hd * v2)(0).real();
    double de_eff = std::max({e1, e2}) - spec.eps0;
    double l1 = (v1.adjoint() * hl * v1)(0).real();
    double l2 = (v2.adjoint() * hl * v2)(0).real();
    c.record(1.0 + de_eff - std::abs(l1 - l2) + 1e-9);
    // the same statement certifies the [-1, 1+eta] energy-net range
    c.record(1.0 + de_eff - std::abs(l1 - l2) + 1e-9);
  }
  return c;
}

Check suite_schmidt_dense(long trials, DetRng& rng) {
  Check c;
  long done = 0;
  while (done < trials) {
    int d = (rng.integer(3) == 0) ? 3 : 2;
    int n = (d == 2) ? 4 + static_cast<int>(rng.integer(7))   // up to 10
                     : 3 + static_cast<int>(rng.integer(4));  // up to 6
    Mps s = Mps::random(n, d, 3, rng);
    int cut = 1 + static_cast<int>(rng.integer(n - 1));
    auto sd = schmidt_decompose(s, cut);
    VecC v = s.dense();
    Eigen::Index dl = dense::ipow(d, cut), dr = dense::ipow(d, n - cut);
    MatC m(dl, dr);
    for (Eigen::Index a = 0; a < dl; ++a)
      for (Eigen::Index b = 0; b < dr; ++b) m(a, b) = v(a * dr + b);
    Eigen::BDCSVD<MatC> svd(m);
    for (Eigen::Index k = 0; k < sd.coefficients.size() && done < trials; ++k) {
      c.record(1e-10 - std::abs(sd.coefficients(k) - svd.singularValues()(k)));
      ++done;
    }
  }
  return c;
}

Check suite_apply_expectation(long trials, DetRng& rng) {
  Check c;
  ModelParams mp;
  mp.seed = 9;
  auto h = make_model("ising_random_perturbed", 6, mp);
  MatC hd = h.dense();
  for (long t = 0; t < trials; ++t) {
    Mps s = Mps::random(6, 2, 3, rng);
    auto applied = apply_mpo(h.mpo_form(), s);
    double via_mps = expectation(s, h.mpo_form());
    double via_overlap = overlap(s, applied.state).real();
    VecC sv = s.dense();
    double dense_val = (sv.adjoint() * hd * sv)(0).real();
    c.record(1e-9 - std::abs(via_mps - dense_val));
    c.record(1e-9 - std::abs(via_overlap - dense_val));
  }
  return c;
}

Check suite_trunc_overlap(long trials, DetRng& rng) {
  Check c;
  int n = 6, d = 2;
  for (long t = 0; t < trials; ++t) {
    int cut = 1 + static_cast<int>(rng.integer(n - 1));
    int rank_v = 1 + static_cast<int>(rng.integer(3));
    // |v> with Schmidt rank R; truncate |u> to R/delta and compare overlaps
    Mps u = Mps::random(n, d, 4, rng);
    auto sdv = schmidt_decompose(Mps::random(n, d, rank_v, rng), cut);
    int rank = static_cast<int>(sdv.coefficients.size());
    double delta = 0.05 + 0.5 * rng.uniform();
    int keep = std::max(1, static_cast<int>(std::ceil(rank / delta)));
    Mps tu = truncate_at_cut(u, cut, keep);
    // rebuild v densely
    VecC vv = VecC::Zero(dense::ipow(d, n));
    Eigen::Index dr = dense::ipow(d, n - cut);
    for (int j = 0; j < rank; ++j) {
      VecC l = sdv.left_vectors[j].dense();
      VecC r = sdv.right_vectors[j].dense();
      for (Eigen::Index a = 0; a < l.size(); ++a)
        for (Eigen::Index b = 0; b < dr; ++b)
          vv(a * dr + b) += sdv.coefficients(j) * l(a) * r(b);
    }
    double before = std::abs(vv.dot(u.dense()));
    double after = std::abs(vv.dot(tu.dense()));
    c.record(after - (before - delta) + 1e-9);
  }
  return c;
}

Check suite_agsp_chain(long trials, DetRng& rng) {
  Check c;
  auto h = make_model("ising_zero_field", 6);
  auto spec = diagonalize(h);
  double eps = std::min(1.0, spec.gap);
  for (double zeta : {0.25, 0.5}) {
    auto s = make_schedule(zeta, eps, 6);
    double tail = 0.0;
    VecR kv = rectangle_filter_values(spec.eigenvalues, s, spec.eps0, &tail);
    VecR av = gaussian_filter_values(spec.eigenvalues, s, spec.eps0);
    Eigen::Index dim = spec.eigenvalues.size();
    for (long t = 0; t < trials / 2; ++t) {
      double p0 = 16.0 / 25.0 + (1.0 - 16.0 / 25.0) * rng.uniform();
      VecC gpart = dense::random_unit(spec.degeneracy, rng);
      VecC epart = dense::random_unit(dim - spec.degeneracy, rng);
      VecC amp(dim);
      for (Eigen::Index j = 0; j < dim; ++j)
        amp(j) = (j < spec.degeneracy)
                     ? std::sqrt(p0) * gpart(j)
                     : std::sqrt(1.0 - p0) * epart(j - spec.degeneracy);
      double an = 0, kn = 0, ae = 0, ke = 0;
      for (Eigen::Index j = 0; j < dim; ++j) {
        double w = std::norm(amp(j));
        an += w * av(j) * av(j);
        kn += w * kv(j) * kv(j);
        ae += w * av(j) * av(j) * spec.eigenvalues(j);
        ke += w * kv(j) * kv(j) * spec.eigenvalues(j);
      }
      an = std::sqrt(an);
      kn = std::sqrt(kn);
      c.record(an - 0.2 + 1e-12);
      c.record(kn - 0.1 + 1e-12);
      c.record(spec.eps0 + zeta * eps / 80000.0 - ae / (an * an) + 1e-12);
      c.record(spec.eps0 + zeta * eps / 400.0 - ke / (kn * kn) + 1e-12);
    }
  }
  return c;
}

Check suite_schedule_identities(long trials, DetRng& rng) {
  Check c;
  for (long t = 0; t < trials; ++t) {
    double zeta = 0.01 + 0.99 * rng.uniform();
    double eps = 0.2 + 1.8 * rng.uniform();
    int n = 4 + static_cast<int>(rng.integer(8));
    auto s = make_schedule(zeta, eps, n);
    c.record(1e-12 - std::abs(s.x - (33.0 - 8.0 * std::log(zeta))));
    c.record(1e-15 - std::abs(s.zeta_prime - zeta * eps / (240000.0 * n)));
    c.record(s.zeta_prime / 3.0 - s.delta_t + 1e-18);
    c.record(s.zeta_prime / 3.0 - s.delta_d + 1e-18);
    double budget = 0.01 + rng.uniform();
    auto ds = make_desk_schedule(zeta, eps, n, budget);
    c.record(budget / 3.0 - ds.delta_t + 1e-15);
    c.record(budget / 3.0 - ds.delta_d + 1e-15);
  }
  return c;
}

Check suite_ground_halves(long trials, DetRng& rng) {
  Check c;
  (void)rng;
  ModelParams p;
  p.values["h"] = 0.4;
  std::vector<StandardHamiltonian> models{make_model("ising_zero_field", 6),
                                          make_model("ising_transverse", 6, p),
                                          make_model("heisenberg", 6)};
  long done = 0;
  while (done < trials) {
    for (const auto& h : models) {
      auto spec = diagonalize(h);
      int n = h.n(), d = h.d();
      for (int cut = 1; cut <= n - 1 && done < trials; ++cut) {
        auto part = partition(h, cut);
        Eigen::Index dim = dense::ipow(d, n);
        MatC hlp = dense::kron(part.left_dense(),
                               dense::identity(dense::ipow(d, n - cut))) -
                   part.eps_left * dense::identity(dim);
        MatC hrp = dense::kron(dense::identity(dense::ipow(d, cut)),
                               part.right_dense()) -
                   part.eps_right * dense::identity(dim);
        for (int j = 0; j < spec.degeneracy && done < trials; ++j, ++done) {
          VecC gs = spec.eigenvectors.col(j);
          double val = (gs.adjoint() * (hlp + hrp) * gs)(0).real();
          c.record(1.0 - val + 1e-9);
        }
      }
    }
  }
  return c;
}

Check suite_low_d(long trials, DetRng& rng) {
  Check c;
  (void)rng;
  for (long t = 0; t < trials; ++t) {
    int g = 2 + static_cast<int>(t % 3);
    double step = 0.9 / double(trials + 1);
    double d0 = step * t, d1 = step * (t + 1);
    c.record(low_d_delta(d1, theoretical_c_prime() / f_of_g(g)) -
             low_d_delta(d0, theoretical_c_prime() / f_of_g(g)) + 1e-12);
  }
  return c;
}

}  // namespace

std::vector<std::string> property_suite_names() {
  return {"interchangeability",
          "omnibus_overlap",
          "orthogonalising_energy",
          "demixing",
          "boundary_contraction_energy",
          "truncation_lemma",
          "eckart_young",
          "appendix_a_overlap_basis_fullness",
          "frustration_bound",
          "schmidt_dense_svd",
          "apply_expectation_dense",
          "truncation_overlap",
          "agsp_energy_chain",
          "schedule_budget_identities",
          "ground_halves_bound",
          "low_d_monotonicity"};
}

PropertyReport property_suite(const RunConfig& config) {
  std::vector<std::pair<std::string, Suite>> suites = {
      {"interchangeability", suite_interchangeability},
      {"omnibus_overlap", suite_omnibus},
      {"orthogonalising_energy", suite_orthogonalising},
      {"demixing", suite_demixing},
      {"boundary_contraction_energy", suite_boundary_contraction_energy},
      {"truncation_lemma", suite_truncation_lemma},
      {"eckart_young", suite_eckart_young},
      {"appendix_a_overlap_basis_fullness", suite_appendix_a},
      {"frustration_bound", suite_frustration},
      {"schmidt_dense_svd", suite_schmidt_dense},
      {"apply_expectation_dense", suite_apply_expectation},
      {"truncation_overlap", suite_trunc_overlap},
      {"agsp_energy_chain", suite_agsp_chain},
      {"schedule_budget_identities", suite_schedule_identities},
      {"ground_halves_bound", suite_ground_halves},
      {"low_d_monotonicity", suite_low_d},
  };

  PropertyReport out;
  out.all_pass = true;
  std::uint64_t tag = 0;
  for (auto& [name, fn] : suites) {
    DetRng rng = DetRng(config.seed).fork(0x5105 + tag++);
    Check c = fn(config.property_trials, rng);
    PropertySuiteResult r;
    r.name = name;
    r.trials = c.trials;
    r.violations = c.violations;
    r.worst_slack = c.worst;
    r.pass = (c.violations == 0);
    out.all_pass = out.all_pass && r.pass;
    out.suites.push_back(std::move(r));
  }
  return out;
}

std::string render_property_report(const RunConfig& config,
                                   const PropertyReport& report) {
  nlohmann::ordered_json j;
  j["kind"] = "properties";
  j["config"] = canonical_config(config);
  j["trials_per_suite"] = config.property_trials;
  nlohmann::ordered_json suites = nlohmann::ordered_json::array();
  for (const auto& s : report.suites)
    suites.push_back(nlohmann::ordered_json{{"name", s.name},
                                            {"trials", s.trials},
                                            {"violations", s.violations},
                                            {"worst_slack", s.worst_slack},
                                            {"pass", s.pass}});
  j["suites"] = suites;
  j["all_pass"] = report.all_pass;
  return j.dump(2) + "\n";
}

}  // namespace gsa
