#include "gsa/ipm.hpp"

#include <algorithm>

#include <Eigen/Cholesky>
#include <Eigen/LU>

namespace gsa::ipm {

namespace {

using Blocks = std::vector<MatC>;

double inner(const MatC& a, const MatC& b) {
  return (a.cwiseProduct(b.transpose())).sum().real();  // Re tr(a b)
}

Blocks identity_blocks(const std::vector<Eigen::Index>& sizes, double scale) {
  Blocks out;
  for (auto s : sizes) out.push_back(scale * MatC::Identity(s, s));
  return out;
}

double dot_constraint(const Problem::Constraint& c, const Blocks& x) {
  double acc = 0.0;
  for (const auto& [bl, coeff] : c.terms) acc += inner(coeff, x[bl]);
  return acc;
}

// Largest alpha in (0, 1] with X + alpha * dX psd, backed off by `frac`.
double max_step(const Blocks& x, const Blocks& dx, double frac) {
  double alpha = 1.0;
  for (std::size_t l = 0; l < x.size(); ++l) {
    if (x[l].rows() == 1) {
      double xv = x[l](0, 0).real(), dv = dx[l](0, 0).real();
      if (dv < 0.0) alpha = std::min(alpha, -frac * xv / dv);
      continue;
    }
    Eigen::LLT<MatC> llt(x[l]);
    if (llt.info() != Eigen::Success) return 0.0;
    MatC li = llt.matrixL().solve(MatC::Identity(x[l].rows(), x[l].rows()));
    MatC m = li * dx[l] * li.adjoint();
    Eigen::SelfAdjointEigenSolver<MatC> es(0.5 * (m + m.adjoint()),
                                           Eigen::EigenvaluesOnly);
    double lmin = es.eigenvalues().minCoeff();
    if (lmin < 0.0) alpha = std::min(alpha, -frac / lmin);
  }
  return alpha;
}

}  // namespace

Solution solve(const Problem& problem, const Options& options) {
  const auto& sizes = problem.block_sizes;
  const int nb = static_cast<int>(sizes.size());
  const int mc = static_cast<int>(problem.constraints.size());
  double nu = 0.0;
  for (auto s : sizes) nu += double(s);

  double bnorm = 0.0, cnorm = 0.0;
  for (const auto& c : problem.constraints) bnorm = std::max(bnorm, std::abs(c.rhs));
  for (const auto& c : problem.objective) cnorm = std::max(cnorm, c.norm());

  Blocks x = identity_blocks(sizes, std::max(1.0, bnorm));
  Blocks z = identity_blocks(sizes, std::max(1.0, cnorm));
  Eigen::VectorXd y = Eigen::VectorXd::Zero(mc);

  Solution sol;
  sol.status = "max_iterations";
  double prev_mu = 1e300;
  int stall = 0;

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    double mu = 0.0;
    for (int l = 0; l < nb; ++l) mu += inner(x[l], z[l]);
    mu /= nu;

    // residuals
    Eigen::VectorXd rp(mc);
    for (int i = 0; i < mc; ++i)
      rp(i) = problem.constraints[i].rhs - dot_constraint(problem.constraints[i], x);
    Blocks rd(nb);
    for (int l = 0; l < nb; ++l) rd[l] = problem.objective[l] - z[l];
    for (int i = 0; i < mc; ++i)
      for (const auto& [bl, coeff] : problem.constraints[i].terms)
        rd[bl] -= y(i) * coeff;

    double pobj = 0.0;
    for (int l = 0; l < nb; ++l) pobj += inner(problem.objective[l], x[l]);
    double dobj = 0.0;
    for (int i = 0; i < mc; ++i) dobj += problem.constraints[i].rhs * y(i);

    double pres = rp.norm() / (1.0 + bnorm);
    double dres = 0.0;
    for (int l = 0; l < nb; ++l) dres = std::max(dres, rd[l].norm());
    dres /= (1.0 + cnorm);
    double relgap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));

    sol.primal_objective = pobj;
    sol.dual_objective = dobj;
    sol.gap = relgap;
    sol.primal_residual = pres;
    sol.dual_residual = dres;
    sol.iterations = iter;

    if (pres <= options.tol_feas && dres <= options.tol_feas &&
        relgap <= options.tol_gap) {
      sol.status = "optimal";
      break;
    }
    if (mu > 0.9999 * prev_mu) {
      if (++stall > 12) {
        sol.status = "stalled";
        break;
      }
    } else {
      stall = 0;
    }
    prev_mu = mu;

    // factor Z
    std::vector<Eigen::LLT<MatC>> zf;
    zf.reserve(nb);
    bool ok = true;
    for (int l = 0; l < nb; ++l) {
      zf.emplace_back(z[l]);
      if (zf.back().info() != Eigen::Success) {
        ok = false;
        break;
      }
    }
    if (!ok) {
      sol.status = "stalled";
      break;
    }
    Blocks zinv(nb), zinv_rd_x(nb);
    for (int l = 0; l < nb; ++l) {
      zinv[l] = zf[l].solve(MatC::Identity(sizes[l], sizes[l]));
      zinv_rd_x[l] = zf[l].solve(rd[l]) * x[l];
    }

    // Schur complement M_ij = Re tr(A_i Z^-1 A_j X)
    Eigen::MatrixXd schur = Eigen::MatrixXd::Zero(mc, mc);
    std::vector<Blocks> zax(mc);
    for (int j = 0; j < mc; ++j) {
      zax[j].assign(nb, MatC());
      for (const auto& [bl, coeff] : problem.constraints[j].terms)
        zax[j][bl] = zf[bl].solve(coeff) * x[bl];
    }
    for (int i = 0; i < mc; ++i)
      for (const auto& [bl, coeff] : problem.constraints[i].terms)
        for (int j = 0; j < mc; ++j)
          if (zax[j][bl].size()) schur(i, j) += inner(coeff, zax[j][bl]);
    for (int i = 0; i < mc; ++i) schur(i, i) += 1e-13 * (1.0 + schur(i, i));
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(schur);

    auto newton = [&](double mu_target, const Blocks* corr) {
      // base_l = mu Z^-1 - X - Z^-1 Rd X - Z^-1 corr; solve M dy = rp - A(base)
      Blocks base(nb);
      for (int l = 0; l < nb; ++l) {
        base[l] = mu_target * zinv[l] - x[l] - zinv_rd_x[l];
        if (corr) base[l] -= zf[l].solve((*corr)[l]);
      }
      Eigen::VectorXd rhs = rp;
      for (int i = 0; i < mc; ++i)
        for (const auto& [bl, coeff] : problem.constraints[i].terms)
          rhs(i) -= inner(coeff, base[bl]);
      Eigen::VectorXd dy = lu.solve(rhs);
      Blocks dz(nb), dx(nb);
      for (int l = 0; l < nb; ++l) dz[l] = rd[l];
      for (int i = 0; i < mc; ++i)
        for (const auto& [bl, coeff] : problem.constraints[i].terms)
          dz[bl] -= dy(i) * coeff;
      for (int l = 0; l < nb; ++l) {
        MatC raw = base[l] + zinv_rd_x[l] - zf[l].solve(dz[l]) * x[l];
        dx[l] = 0.5 * (raw + raw.adjoint());
      }
      return std::make_tuple(dx, dy, dz);
    };

    // predictor
    auto [dxa, dya, dza] = newton(0.0, nullptr);
    double ap = max_step(x, dxa, options.step_fraction);
    double ad = max_step(z, dza, options.step_fraction);
    double mu_aff = 0.0;
    for (int l = 0; l < nb; ++l)
      mu_aff += inner(x[l] + ap * dxa[l], z[l] + ad * dza[l]);
    mu_aff /= nu;
    double sigma = std::pow(std::max(0.0, mu_aff / mu), 3.0);
    sigma = std::min(1.0, std::max(1e-8, sigma));

    // corrector with the second-order term dXa dZa
    Blocks corr(nb);
    for (int l = 0; l < nb; ++l) corr[l] = dza[l] * dxa[l];
    auto [dx, dy, dz] = newton(sigma * mu, &corr);

    double alpha_p = max_step(x, dx, options.step_fraction);
    double alpha_d = max_step(z, dz, options.step_fraction);
    if (alpha_p <= 1e-12 || alpha_d <= 1e-12) {
      sol.status = "stalled";
      break;
    }
    for (int l = 0; l < nb; ++l) {
      x[l] += alpha_p * dx[l];
      x[l] = 0.5 * (x[l] + x[l].adjoint()).eval();
      z[l] += alpha_d * dz[l];
      z[l] = 0.5 * (z[l] + z[l].adjoint()).eval();
    }
    y += alpha_d * dy;
  }

  sol.x = std::move(x);
  sol.y.assign(y.data(), y.data() + mc);
  return sol;
}

}  // namespace gsa::ipm
