#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gsa/dense.hpp"
#include "gsa/model.hpp"
#include "gsa/oracle.hpp"
#include "support.hpp"

using namespace gsa;

TEST_CASE("diagonalize: zero-field Ising frozen values") {
  auto spec = diagonalize(make_model("ising_zero_field", 4));
  CHECK(spec.eps0 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(spec.gap == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spec.degeneracy == 2);
  // projector sanity: G^2 = G, G = G^dagger, rank g
  const MatC& g = spec.ground_projector;
  CHECK((g * g - g).norm() <= 1e-10);
  CHECK((g - g.adjoint()).norm() <= 1e-10);
  CHECK(g.trace().real() == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("diagonalize: single term has eigenvalues {0,0,1,1}") {
  auto spec = diagonalize(make_model("ising_zero_field", 2));
  REQUIRE(spec.eigenvalues.size() == 4);
  CHECK(spec.eigenvalues(0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(spec.eigenvalues(1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(spec.eigenvalues(2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spec.eigenvalues(3) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("diagonalize: residuals and independent dense assembly") {
  ModelParams p;
  p.values["h"] = 0.3;
  auto h = make_model("ising_transverse", 6, p);
  auto spec = diagonalize(h);
  // independent dense rebuild straight from the local terms
  MatC hd = dense::chain_from_terms(h.local_terms(), h.n(), h.d());
  for (int k : {0, 1, 5, 20, 63}) {
    VecC v = spec.eigenvectors.col(k);
    CHECK((hd * v - spec.eigenvalues(k) * v).norm() <= 1e-9);
  }
  auto eg = dense::eigh(hd);
  CHECK((eg.values - spec.eigenvalues).norm() <= 1e-10);
}

TEST_CASE("diagonalize: dimension guard") {
  // d^n for n=16 at d=2 exceeds the oracle precondition
  std::vector<MatC> terms(15, test::ising_term());
  auto h = standardize(terms, 16, 2);
  CHECK_THROWS_AS(diagonalize(h), ArgumentError);
}

TEST_CASE("ground_overlap: eigenvectors and analytic mixtures") {
  auto h = make_model("ising_zero_field", 5);
  auto spec = diagonalize(h);
  CHECK(ground_overlap(VecC(spec.eigenvectors.col(0)), spec) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(ground_overlap(VecC(spec.eigenvectors.col(4)), spec) ==
        doctest::Approx(0.0).epsilon(1e-10));
  double a = 0.6, b = 0.8;
  VecC mix = a * spec.eigenvectors.col(0) + b * spec.eigenvectors.col(7);
  CHECK(ground_overlap(mix, spec) == doctest::Approx(a).epsilon(1e-10));
  VecC wrong = VecC::Ones(7);
  CHECK_THROWS_AS(ground_overlap(wrong, spec), ShapeError);
}

TEST_CASE("truncated_projectors: limits and PSD ordering") {
  ModelParams p;
  p.seed = 31;
  auto h = make_model("ising_random_perturbed", 6, p);
  int cut = 3;

  // huge t: both projectors are the identity
  auto big = truncated_projectors(h, cut, 1e6);
  Eigen::Index dim = dense::ipow(h.d(), h.n());
  CHECK((big.p - dense::identity(dim)).norm() <= 1e-10);
  CHECK((big.q - dense::identity(dim)).norm() <= 1e-10);

  // frustration-free model at t=0: Q_0 is (left ground) x (right ground)
  auto zf = make_model("ising_zero_field", 6);
  auto tp0 = truncated_projectors(zf, cut, 0.0);
  auto el = dense::eigh(zf.window_dense(1, cut));
  auto er = dense::eigh(zf.window_dense(cut + 1, 6));
  MatC pl = MatC::Zero(el.vectors.rows(), el.vectors.rows());
  for (Eigen::Index k = 0; k < el.values.size(); ++k)
    if (el.values(k) <= 1e-10) pl += el.vectors.col(k) * el.vectors.col(k).adjoint();
  MatC pr = MatC::Zero(er.vectors.rows(), er.vectors.rows());
  for (Eigen::Index k = 0; k < er.values.size(); ++k)
    if (er.values(k) <= 1e-10) pr += er.vectors.col(k) * er.vectors.col(k).adjoint();
  CHECK((tp0.q - dense::kron(pl, pr)).norm() <= 1e-9);

  // P_t >= Q_t as operators
  DetRng rng(5);
  for (double t : {0.0, 0.5, 1.5}) {
    auto tp = truncated_projectors(h, cut, t);
    auto eg = dense::eigh(tp.p - tp.q);
    CHECK(eg.values.minCoeff() >= -1e-10);
  }
  CHECK_THROWS_AS(truncated_projectors(h, cut, -1.0), ArgumentError);
}

TEST_CASE("truncation lemma: ordering and the 99 * 2^(-t/99) bound") {
  ModelParams p;
  p.values["h"] = 0.3;
  for (const char* name : {"ising_zero_field", "ising_transverse"}) {
    auto h = make_model(name, 6, p);
    auto spec = diagonalize(h);
    for (int cut = 1; cut <= h.n() - 1; ++cut) {
      for (double t : {1.0, 5.0, 20.0, 99.0}) {
        auto tp = truncated_projectors(h, cut, t);
        Eigen::Index dim = tp.p.rows();
        for (int j = 0; j < spec.degeneracy; ++j) {
          VecC gs = spec.eigenvectors.col(j);
          double np = ((dense::identity(dim) - tp.p) * gs).norm();
          double nq = ((dense::identity(dim) - tp.q) * gs).norm();
          CHECK(np <= nq + 1e-10);
          CHECK(nq <= 99.0 * std::pow(2.0, -t / 99.0) + 1e-10);
        }
      }
    }
  }
}

TEST_CASE("projector_distance: zero, orthogonal, identity check") {
  DetRng rng(41);
  int dim = 32, g = 2;
  MatC u = dense::orthonormalize(MatC::NullaryExpr(
      dim, 2 * g, [&](Eigen::Index, Eigen::Index) { return rng.cnormal(); }));
  MatC g1 = u.leftCols(g) * u.leftCols(g).adjoint();
  MatC g2 = u.rightCols(g) * u.rightCols(g).adjoint();

  auto same = projector_distance(g1, g1);
  CHECK(same.frobenius == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(same.trace == doctest::Approx(0.0).epsilon(1e-10));

  auto orth = projector_distance(g1, g2);
  CHECK(orth.frobenius == doctest::Approx(std::sqrt(2.0 * g)).epsilon(1e-10));

  // ||G - U||_F^2 = 2g - 2 Tr(G U) for rank-g projector pairs
  for (int trial = 0; trial < 20; ++trial) {
    MatC w = dense::orthonormalize(MatC::NullaryExpr(
        dim, g, [&](Eigen::Index, Eigen::Index) { return rng.cnormal(); }));
    MatC gp = w * w.adjoint();
    auto dist = projector_distance(g1, gp);
    double expect = 2.0 * g - 2.0 * (g1 * gp).trace().real();
    CHECK(dist.frobenius * dist.frobenius ==
          doctest::Approx(expect).epsilon(1e-9));
  }
  CHECK_THROWS_AS(projector_distance(g1, MatC::Identity(8, 8)), ShapeError);
}

TEST_CASE("appendix-A overlap, basis, and fullness lemmas") {
  DetRng rng(51);
  int dim = 48;
  for (int trial = 0; trial < 50; ++trial) {
    int g = 2 + static_cast<int>(rng.integer(3));
    double delta = 0.02 + 0.2 * rng.uniform();

    MatC gbasis = dense::orthonormalize(MatC::NullaryExpr(
        dim, g, [&](Eigen::Index, Eigen::Index) { return rng.cnormal(); }));
    MatC proj = gbasis * gbasis.adjoint();

    // orthonormal v_i with <v_i|G|v_i> >= 1 - delta/g: rotate each basis
    // vector slightly out of the space
    MatC vs(dim, g);
    for (int i = 0; i < g; ++i) {
      VecC inplane = gbasis.col(i);
      VecC out = dense::random_unit(dim, rng);
      out -= proj * out;
      for (int j = 0; j < i; ++j) out -= vs.col(j).dot(out) * vs.col(j);
      if (out.norm() < 1e-8) continue;
      out.normalize();
      double eps = (delta / g) * rng.uniform();
      vs.col(i) = std::sqrt(1.0 - eps) * inplane + std::sqrt(eps) * out;
    }
    // re-orthonormalize tiny drift
    vs = dense::orthonormalize(vs);
    REQUIRE(vs.cols() == g);

    // overlap lemma: any unit vector in span has <v|G|v> >= 1 - delta
    for (int rep = 0; rep < 20; ++rep) {
      VecC coeff = dense::random_unit(g, rng);
      VecC v = vs * coeff;
      v.normalize();
      double val = (v.adjoint() * proj * v)(0).real();
      CHECK(val >= 1.0 - delta - 1e-9);
    }

    // basis lemma: G v_i spans im(G)
    MatC gv = proj * vs;
    Eigen::JacobiSVD<MatC> svd(gv);
    CHECK(svd.singularValues()(g - 1) > 0.0);

    // fullness lemma: vectors orthogonal to the span have <v|G|v> <= delta
    for (int rep = 0; rep < 20; ++rep) {
      VecC v = dense::random_unit(dim, rng);
      v -= vs * (vs.adjoint() * v);
      if (v.norm() < 1e-8) continue;
      v.normalize();
      double val = (v.adjoint() * proj * v)(0).real();
      CHECK(val <= delta + 1e-9);
    }
  }
}
