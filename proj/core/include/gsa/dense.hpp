#pragma once

// Dense linear-algebra helpers. These back the exact-diagonalization oracle
// and the desk-scale certification checks; the tensor-network code never
// calls into here on the hot path.

#include <functional>
#include <vector>

#include <Eigen/SVD>

#include "gsa/common.hpp"

namespace gsa::dense {

inline MatC kron(const MatC& a, const MatC& b) {
  MatC out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// kron of a list, left factor most significant.
inline MatC kron_all(const std::vector<MatC>& ms) {
  MatC out = MatC::Identity(1, 1);
  for (const auto& m : ms) out = kron(out, m);
  return out;
}

inline MatC identity(Eigen::Index n) { return MatC::Identity(n, n); }

inline bool is_hermitian(const MatC& m, double tol = 1e-10) {
  return m.rows() == m.cols() && (m - m.adjoint()).norm() <= tol * (1.0 + m.norm());
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
struct Eigh {
  VecR values;
  MatC vectors;
};

inline Eigh eigh(const MatC& m) {
  Eigen::SelfAdjointEigenSolver<MatC> es(m);
  if (es.info() != Eigen::Success) throw SolverError("eigh failed to converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

/// Largest singular value.
inline double op_norm(const MatC& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<MatC> svd(m);
  return svd.singularValues()(0);
}

/// Sum of singular values.
inline double trace_norm(const MatC& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<MatC> svd(m);
  return svd.singularValues().sum();
}

/// f(M) for Hermitian M via eigendecomposition.
inline MatC hermitian_function(const MatC& m, const std::function<double(double)>& f) {
  auto [w, v] = eigh(m);
  VecC fw(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) fw(k) = f(w(k));
  return v * fw.asDiagonal() * v.adjoint();
}

/// exp(-i * M * t) for Hermitian M.
inline MatC unitary_exp(const MatC& m, double t) {
  auto [w, v] = eigh(m);
  VecC ph(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k)
    ph(k) = std::exp(cplx(0.0, -w(k) * t));
  return v * ph.asDiagonal() * v.adjoint();
}

inline Eigen::Index ipow(int base, int exp) {
  Eigen::Index r = 1;
  for (int k = 0; k < exp; ++k) r *= base;
  return r;
}

/// Embed an operator acting on `sites` contiguous sites starting at `first`
/// (1-based) into an n-site chain; site 1 is the most significant index.
inline MatC embed(const MatC& op, int n, int d, int first, int sites) {
  MatC left = identity(ipow(d, first - 1));
  MatC right = identity(ipow(d, n - first - sites + 1));
  return kron(kron(left, op), right);
}

/// Sum of two-site terms on an n-site chain: terms[k] acts on (k+1, k+2).
inline MatC chain_from_terms(const std::vector<MatC>& terms, int n, int d) {
  Eigen::Index dim = ipow(d, n);
  MatC h = MatC::Zero(dim, dim);
  for (std::size_t k = 0; k < terms.size(); ++k)
    h += embed(terms[k], n, d, static_cast<int>(k) + 1, 2);
  return h;
}

/// rho lives on A (x) B with dim(A) = dim_out; trace out A.
inline MatC partial_trace_left(const MatC& rho, Eigen::Index dim_out) {
  Eigen::Index dim_keep = rho.rows() / dim_out;
  MatC out = MatC::Zero(dim_keep, dim_keep);
  for (Eigen::Index a = 0; a < dim_out; ++a)
    out += rho.block(a * dim_keep, a * dim_keep, dim_keep, dim_keep);
  return out;
}

/// rho lives on A (x) B with dim(A) = dim_keep; trace out B.
inline MatC partial_trace_right(const MatC& rho, Eigen::Index dim_keep) {
  Eigen::Index dim_out = rho.rows() / dim_keep;
  MatC out = MatC::Zero(dim_keep, dim_keep);
  for (Eigen::Index i = 0; i < dim_keep; ++i)
    for (Eigen::Index j = 0; j < dim_keep; ++j) {
      cplx s = 0.0;
      for (Eigen::Index b = 0; b < dim_out; ++b)
        s += rho(i * dim_out + b, j * dim_out + b);
      out(i, j) = s;
    }
  return out;
}

inline VecC random_unit(Eigen::Index n, DetRng& rng) {
  VecC v(n);
  for (Eigen::Index k = 0; k < n; ++k) v(k) = rng.cnormal();
  return v / v.norm();
}

inline MatC random_hermitian(Eigen::Index n, DetRng& rng) {
  MatC m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rng.cnormal();
  return 0.5 * (m + m.adjoint()).eval();
}

inline MatC random_density(Eigen::Index n, DetRng& rng) {
  MatC g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = rng.cnormal();
  MatC rho = g * g.adjoint();
  return rho / rho.trace().real();
}

/// Columns orthonormalized with a rank-revealing eigenvalue threshold on the
/// Gram matrix. Returns the coefficient matrix W: ortho columns = cols * W.
inline MatC gram_orthonormalize_coeffs(const MatC& gram, double rel_tol = 1e-10) {
  auto [w, v] = eigh(gram);
  double wmax = w.size() ? w.maxCoeff() : 0.0;
  if (wmax <= 0.0) throw DegenerateInputError("all states numerically zero");
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < w.size(); ++k)
    if (w(k) > rel_tol * wmax) keep.push_back(k);
  MatC coeff(gram.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c)
    coeff.col(static_cast<Eigen::Index>(c)) =
        v.col(keep[c]) / std::sqrt(w(keep[c]));
  return coeff;
}

inline MatC orthonormalize(const MatC& cols, double rel_tol = 1e-10) {
  MatC gram = cols.adjoint() * cols;
  return cols * gram_orthonormalize_coeffs(gram, rel_tol);
}

}  // namespace gsa::dense
