#include "gsa/oracle.hpp"

#include <algorithm>

#include "gsa/dense.hpp"

namespace gsa {

namespace {

// Gauge fix for degenerate eigenspaces: diagonalize a fixed generic Hermitian
// form inside each space, then rotate the leading entry of each column to be
// real positive. Keeps golden files stable; G itself is gauge invariant.
void gauge_fix_block(MatC& vectors, Eigen::Index first, Eigen::Index count) {
  if (count > 1) {
    DetRng rng(0xfeedbeefULL);  // fixed, independent of any run seed
    MatC f = dense::random_hermitian(vectors.rows(), rng);
    MatC block = vectors.middleCols(first, count);
    auto sub = dense::eigh(block.adjoint() * f * block);
    vectors.middleCols(first, count) = block * sub.vectors;
  }
  for (Eigen::Index c = first; c < first + count; ++c) {
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      double a = std::abs(vectors(r, c));
      if (a > 1e-9) {
        vectors.col(c) *= std::conj(vectors(r, c)) / a;
        break;
      }
    }
  }
}

}  // namespace

Spectrum diagonalize(const StandardHamiltonian& h, double degeneracy_tol) {
  Eigen::Index dim = dense::ipow(h.d(), h.n());
  if (dim > (1 << 14))
    throw ArgumentError("oracle limited to d^n <= 2^14");

  auto eg = dense::eigh(h.dense());
  Spectrum out;
  out.n = h.n();
  out.d = h.d();
  out.degeneracy_tol = degeneracy_tol;
  out.eigenvalues = eg.values;
  out.eigenvectors = eg.vectors;
  out.eps0 = eg.values(0);

  int g = 1;
  while (g < dim && eg.values(g) - out.eps0 <= degeneracy_tol) ++g;
  out.degeneracy = g;
  out.eps1 = (g < dim) ? eg.values(g) : out.eps0;
  out.gap = out.eps1 - out.eps0;

  // gauge-fix every degenerate block so exported eigenvectors are stable
  Eigen::Index k = 0;
  while (k < dim) {
    Eigen::Index j = k;
    while (j + 1 < dim && eg.values(j + 1) - eg.values(k) <= degeneracy_tol) ++j;
    gauge_fix_block(out.eigenvectors, k, j - k + 1);
    k = j + 1;
  }

  out.ground_projector =
      out.eigenvectors.leftCols(g) * out.eigenvectors.leftCols(g).adjoint();
  return out;
}

double ground_overlap(const VecC& state, const Spectrum& spec) {
  if (state.size() != spec.ground_projector.rows())
    throw ShapeError("state dimension does not match the oracle");
  return (spec.ground_projector * state).norm();
}

double ground_overlap(const Mps& state, const Spectrum& spec) {
  return ground_overlap(state.dense(), spec);
}

TruncatedProjectors truncated_projectors(const StandardHamiltonian& h, int cut,
                                         double t) {
  if (t < 0) throw ArgumentError("threshold t must be nonnegative");
  int n = h.n(), d = h.d();
  Eigen::Index dl = dense::ipow(d, cut), dr = dense::ipow(d, n - cut);

  MatC hl = (cut >= 2) ? h.window_dense(1, cut) : MatC::Zero(dl, dl);
  MatC hr = (cut <= n - 2) ? h.window_dense(cut + 1, n) : MatC::Zero(dr, dr);
  auto el = dense::eigh(hl);
  auto er = dense::eigh(hr);
  double eps_l = el.values.minCoeff();
  double eps_r = er.values.minCoeff();

  // P_t: identity on the left, right eigenvalues of H_R' at most t.
  MatC pr = MatC::Zero(dr, dr);
  for (Eigen::Index k = 0; k < dr; ++k)
    if (er.values(k) - eps_r <= t + 1e-12)
      pr += er.vectors.col(k) * er.vectors.col(k).adjoint();
  TruncatedProjectors out;
  out.p = dense::kron(MatC::Identity(dl, dl), pr);

  // Q_t: H_L' and H_R' commute, so eigenvectors are products and the
  // eigenvalues add.
  out.q = MatC::Zero(dl * dr, dl * dr);
  for (Eigen::Index a = 0; a < dl; ++a) {
    double la = el.values(a) - eps_l;
    if (la > t + 1e-12) continue;
    for (Eigen::Index b = 0; b < dr; ++b) {
      if (la + er.values(b) - eps_r > t + 1e-12) continue;
      VecC prod(dl * dr);
      for (Eigen::Index i = 0; i < dl; ++i)
        for (Eigen::Index j = 0; j < dr; ++j)
          prod(i * dr + j) = el.vectors(i, a) * er.vectors(j, b);
      out.q += prod * prod.adjoint();
    }
  }
  return out;
}

ProjectorDistance projector_distance(const MatC& g, const MatC& upsilon) {
  if (g.rows() != upsilon.rows() || g.cols() != upsilon.cols())
    throw ShapeError("projector shapes differ");
  MatC diff = g - upsilon;
  return {diff.norm(), dense::trace_norm(diff)};
}

}  // namespace gsa
