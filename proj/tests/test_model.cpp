#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gsa/dense.hpp"
#include "gsa/model.hpp"
#include "gsa/oracle.hpp"
#include "support.hpp"

using namespace gsa;

TEST_CASE("standardize: already-standard terms are untouched") {
  int n = 4;
  auto h = standardize(test::ising_terms(n), n, 2);
  CHECK(h.metadata().scale == doctest::Approx(1.0));
  CHECK(h.metadata().total_shift() == doctest::Approx(0.0));
  for (int k = 0; k < n - 1; ++k)
    CHECK((h.local_terms()[k] - test::ising_term()).norm() <= 1e-14);
}

TEST_CASE("standardize: ferromagnetic coupling -ZZ becomes (1 - ZZ)/2") {
  MatC zz = dense::kron(test::pauli_z(), test::pauli_z());
  auto h = standardize({-zz, -zz}, 3, 2);
  MatC expect = 0.5 * (MatC::Identity(4, 4) - zz);
  for (const auto& t : h.local_terms()) CHECK((t - expect).norm() <= 1e-12);
  auto eg = dense::eigh(h.local_terms()[0]);
  CHECK(eg.values.minCoeff() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(eg.values.maxCoeff() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("standardize: random terms land in [0, 1]") {
  DetRng rng(7);
  int n = 6;
  std::vector<MatC> raw;
  for (int k = 0; k < n - 1; ++k)
    raw.push_back(3.0 * dense::random_hermitian(4, rng));
  auto h = standardize(raw, n, 2);
  for (const auto& t : h.local_terms()) {
    auto eg = dense::eigh(t);
    CHECK(eg.values.minCoeff() >= -1e-10);
    CHECK(eg.values.maxCoeff() <= 1.0 + 1e-10);
  }
  // the affine map reproduces raw energies
  MatC raw_h = dense::chain_from_terms(raw, n, 2);
  MatC std_h = h.dense();
  auto e_raw = dense::eigh(raw_h);
  auto e_std = dense::eigh(std_h);
  CHECK(h.metadata().to_original(e_std.values(0)) ==
        doctest::Approx(e_raw.values(0)).epsilon(1e-9));
}

TEST_CASE("standardize: non-Hermitian input rejected") {
  MatC bad = MatC::Random(4, 4);
  bad(0, 1) += cplx(0.0, 1.0);
  CHECK_THROWS_AS(standardize({bad, bad}, 3, 2), ArgumentError);
}

TEST_CASE("make_model: zero-field Ising ground data") {
  auto h = make_model("ising_zero_field", 4);
  auto spec = diagonalize(h);
  CHECK(spec.eps0 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(spec.gap == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spec.degeneracy == 2);
}

TEST_CASE("make_model: transverse field h=0 reduces to zero-field Ising") {
  int n = 5;
  ModelParams p;
  p.values["h"] = 0.0;
  auto tfi = make_model("ising_transverse", n, p);
  auto zfi = make_model("ising_zero_field", n);
  CHECK((tfi.dense() - zfi.dense()).norm() <= 1e-12);
}

TEST_CASE("make_model: seeded random model reproducible") {
  ModelParams p;
  p.seed = 99;
  p.values["lambda"] = 0.05;
  auto a = make_model("ising_random_perturbed", 5, p);
  auto b = make_model("ising_random_perturbed", 5, p);
  CHECK((a.dense() - b.dense()).norm() == 0.0);
  p.seed = 100;
  auto c = make_model("ising_random_perturbed", 5, p);
  CHECK((a.dense() - c.dense()).norm() > 1e-6);
}

TEST_CASE("make_model: unknown name") {
  CHECK_THROWS_AS(make_model("bogus", 4), ArgumentError);
}

TEST_CASE("mpo_form reconstructs the dense sum of terms") {
  for (const char* name : {"ising_zero_field", "heisenberg"}) {
    auto h = make_model(name, 6);
    CHECK((h.mpo_form().dense() - h.dense()).norm() <= 1e-9);
  }
}

TEST_CASE("partition: boundary cut and frustration-free halves") {
  auto h = make_model("ising_zero_field", 6);
  auto p1 = partition(h, 1);
  CHECK(p1.eps_left == doctest::Approx(0.0));
  CHECK(p1.left_dense().norm() == 0.0);  // H_[1,1] is the zero operator
  for (int cut = 1; cut <= 5; ++cut) {
    auto p = partition(h, cut);
    CHECK(p.eps_left == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(p.eps_right == doctest::Approx(0.0).epsilon(1e-10));
  }
  CHECK_THROWS_AS(partition(h, 0), ArgumentError);
  CHECK_THROWS_AS(partition(h, 6), ArgumentError);
}

TEST_CASE("partition: operator identity H = H_L + H_i + H_R") {
  DetRng rng(17);
  ModelParams p;
  p.seed = 3;
  auto h = make_model("ising_random_perturbed", 6, p);
  MatC full = h.dense();
  int n = h.n(), d = h.d();
  for (int cut = 1; cut <= n - 1; ++cut) {
    auto part = partition(h, cut);
    MatC hl = dense::kron(part.left_dense(),
                          dense::identity(dense::ipow(d, n - cut)));
    MatC hr = dense::kron(dense::identity(dense::ipow(d, cut)),
                          part.right_dense());
    CHECK((hl + part.middle_dense() + hr - full).norm() <= 1e-10);
  }
}

TEST_CASE("partition: half-chain energies match dense diagonalization") {
  ModelParams p;
  p.seed = 11;
  auto h = make_model("ising_random_perturbed", 8, p);
  auto part = partition(h, 4);
  auto eg = dense::eigh(h.window_dense(1, 4));
  CHECK(part.eps_left == doctest::Approx(eg.values.minCoeff()).epsilon(1e-9));
  // shifted halves are PSD
  CHECK(eg.values.minCoeff() - part.eps_left >= -1e-10);
}

TEST_CASE("window_ground_energy: Lanczos agrees with dense on a small window") {
  ModelParams p;
  p.seed = 5;
  auto h = make_model("ising_random_perturbed", 8, p);
  auto eg = dense::eigh(h.window_dense(1, 6));
  // force iterative path via a private-size window? exercise both paths on
  // the same window by calling through the public interface
  double e = window_ground_energy(h, 1, 6);
  CHECK(e == doctest::Approx(eg.values.minCoeff()).epsilon(1e-8));
}

TEST_CASE("frustration bound: low-energy states have close left energies") {
  // Appendix-C style bound: |<H_L>_1 - <H_L>_2| <= 1 + dE for any two states
  // with energy at most eps0 + dE.
  DetRng rng(23);
  ModelParams mp;
  mp.seed = 21;
  for (const char* name : {"ising_zero_field", "ising_random_perturbed"}) {
    auto h = make_model(name, 6, mp);
    auto spec = diagonalize(h);
    int n = h.n(), d = h.d();
    for (int cut : {1, 3, 5}) {
      MatC hl = dense::kron(h.window_dense(1, cut),
                            dense::identity(dense::ipow(d, n - cut)));
      for (int trial = 0; trial < 200; ++trial) {
        double de = 0.1 + 0.9 * rng.uniform();
        // random mixture of eigenvectors below eps0 + de
        std::vector<int> low;
        for (int k = 0; k < spec.eigenvalues.size(); ++k)
          if (spec.eigenvalues(k) <= spec.eps0 + de) low.push_back(k);
        auto sample = [&] {
          VecC v = VecC::Zero(spec.eigenvectors.rows());
          for (int k : low) v += rng.cnormal() * spec.eigenvectors.col(k);
          v.normalize();
          // mixtures can exceed the energy window only through cross terms
          // between degenerate levels; energies stay within the window
          return v;
        };
        VecC v1 = sample(), v2 = sample();
        double e1 = (v1.adjoint() * h.dense() * v1)(0).real();
        double e2 = (v2.adjoint() * h.dense() * v2)(0).real();
        double de_eff = std::max({e1, e2}) - spec.eps0;
        double l1 = (v1.adjoint() * hl * v1)(0).real();
        double l2 = (v2.adjoint() * hl * v2)(0).real();
        CHECK(std::abs(l1 - l2) <= 1.0 + de_eff + 1e-9);
      }
    }
  }
}

TEST_CASE("ground expectation of shifted halves is at most one") {
  for (const char* name :
       {"ising_zero_field", "ising_transverse", "heisenberg"}) {
    ModelParams p;
    p.values["h"] = 0.4;
    auto h = make_model(name, 6, p);
    auto spec = diagonalize(h);
    int n = h.n(), d = h.d();
    for (int cut = 1; cut <= n - 1; ++cut) {
      auto part = partition(h, cut);
      MatC hlp = dense::kron(part.left_dense(),
                             dense::identity(dense::ipow(d, n - cut))) -
                 part.eps_left * dense::identity(dense::ipow(d, n));
      MatC hrp = dense::kron(dense::identity(dense::ipow(d, cut)),
                             part.right_dense()) -
                 part.eps_right * dense::identity(dense::ipow(d, n));
      for (int j = 0; j < spec.degeneracy; ++j) {
        VecC gs = spec.eigenvectors.col(j);
        double val = (gs.adjoint() * (hlp + hrp) * gs)(0).real();
        CHECK(val <= 1.0 + 1e-9);
      }
    }
  }
}
