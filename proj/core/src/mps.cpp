#include "gsa/mps.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "gsa/dense.hpp"

namespace gsa {

namespace {

struct SvdResult {
  MatC u;
  VecR s;
  MatC vd;  // V^dagger
};

SvdResult thin_svd(const MatC& m) {
  // Jacobi is the most accurate for the small blocks we see; fall back to
  // BDC once matrices get big.
  if (std::max(m.rows(), m.cols()) <= 96) {
    Eigen::JacobiSVD<MatC> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return {svd.matrixU(), svd.singularValues(), svd.matrixV().adjoint()};
  }
  Eigen::BDCSVD<MatC> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV().adjoint()};
}

MatC stack_rows(const SiteTensor& t) {
  // rows indexed (s * left_dim + a)
  MatC m(t.left_dim() * t.phys_dim(), t.right_dim());
  for (int s = 0; s < t.phys_dim(); ++s)
    m.block(s * t.left_dim(), 0, t.left_dim(), t.right_dim()) = t.m[s];
  return m;
}

SiteTensor unstack_rows(const MatC& m, int d, Eigen::Index left_dim) {
  SiteTensor t;
  t.m.resize(d);
  for (int s = 0; s < d; ++s)
    t.m[s] = m.block(s * left_dim, 0, left_dim, m.cols());
  return t;
}

MatC stack_cols(const SiteTensor& t) {
  // cols indexed (s * right_dim + b)
  MatC m(t.left_dim(), t.right_dim() * t.phys_dim());
  for (int s = 0; s < t.phys_dim(); ++s)
    m.block(0, s * t.right_dim(), t.left_dim(), t.right_dim()) = t.m[s];
  return m;
}

SiteTensor unstack_cols(const MatC& m, int d, Eigen::Index right_dim) {
  SiteTensor t;
  t.m.resize(d);
  for (int s = 0; s < d; ++s)
    t.m[s] = m.block(0, s * right_dim, m.rows(), right_dim);
  return t;
}

// Thin QR with the R diagonal rotated to be real nonnegative, which makes
// repeated canonicalization a fixed point.
void signed_qr(const MatC& m, MatC& q, MatC& r) {
  Eigen::HouseholderQR<MatC> qr(m);
  Eigen::Index k = std::min(m.rows(), m.cols());
  q = qr.householderQ() * MatC::Identity(m.rows(), k);
  r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < k; ++j) {
    cplx diag = r(j, j);
    if (std::abs(diag) > 0.0) {
      cplx phase = diag / std::abs(diag);
      q.col(j) *= phase;
      r.row(j) *= std::conj(phase);
    }
  }
}

void left_normalize_qr(std::vector<SiteTensor>& ts, int d, int k) {
  MatC q, r;
  signed_qr(stack_rows(ts[k]), q, r);
  ts[k] = unstack_rows(q, d, ts[k].left_dim());
  for (auto& b : ts[k + 1].m) b = (r * b).eval();
}

void right_normalize_qr(std::vector<SiteTensor>& ts, int d, int k) {
  MatC q, r;
  signed_qr(stack_cols(ts[k]).adjoint(), q, r);
  ts[k] = unstack_cols(q.adjoint(), d, ts[k].right_dim());
  MatC l = r.adjoint();
  for (auto& b : ts[k - 1].m) b = (b * l).eval();
}

Eigen::Index rank_at_tol(const VecR& s, double rel_tol, int max_rank,
                         double* dropped_sq) {
  double smax = s.size() ? s(0) : 0.0;
  double total_sq = s.squaredNorm();
  Eigen::Index r = s.size();
  while (r > 1 && s(r - 1) <= kSingularZeroRel * smax) --r;
  if (max_rank > 0) r = std::min<Eigen::Index>(r, max_rank);
  if (rel_tol > 0.0 && total_sq > 0.0) {
    double budget = rel_tol * rel_tol * total_sq;
    double acc = 0.0;
    while (r > 1 && acc + s(r - 1) * s(r - 1) <= budget) {
      acc += s(r - 1) * s(r - 1);
      --r;
    }
  }
  if (dropped_sq) {
    double acc = 0.0;
    for (Eigen::Index j = r; j < s.size(); ++j) acc += s(j) * s(j);
    *dropped_sq = acc;
  }
  return r;
}

// Split site k by SVD, absorbing singular values to the right. Returns the
// relative discarded weight (fraction of squared Schmidt weight at the cut).
double left_split_svd(std::vector<SiteTensor>& ts, int d, int k,
                      double rel_tol, int max_rank) {
  auto [u, s, vd] = thin_svd(stack_rows(ts[k]));
  double dropped_sq = 0.0;
  Eigen::Index r = rank_at_tol(s, rel_tol, max_rank, &dropped_sq);
  double total_sq = s.squaredNorm();
  ts[k] = unstack_rows(u.leftCols(r), d, ts[k].left_dim());
  MatC carry = s.head(r).asDiagonal() * vd.topRows(r);
  for (auto& b : ts[k + 1].m) b = (carry * b).eval();
  return total_sq > 0.0 ? dropped_sq / total_sq : 0.0;
}

double right_split_svd(std::vector<SiteTensor>& ts, int d, int k,
                       double rel_tol, int max_rank) {
  auto [u, s, vd] = thin_svd(stack_cols(ts[k]));
  double dropped_sq = 0.0;
  Eigen::Index r = rank_at_tol(s, rel_tol, max_rank, &dropped_sq);
  double total_sq = s.squaredNorm();
  ts[k] = unstack_cols(vd.topRows(r), d, ts[k].right_dim());
  MatC carry = u.leftCols(r) * s.head(r).asDiagonal();
  for (auto& b : ts[k - 1].m) b = (b * carry).eval();
  return total_sq > 0.0 ? dropped_sq / total_sq : 0.0;
}

void fix_column_phases(MatC& u, MatC& vd) {
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
      double a = std::abs(u(i, j));
      if (a > 1e-13) {
        cplx phase = u(i, j) / a;
        u.col(j) *= std::conj(phase);
        vd.row(j) *= phase;
        break;
      }
    }
  }
}

}  // namespace

Mps::Mps(std::vector<SiteTensor> tensors, int phys_dim)
    : tensors_(std::move(tensors)), d_(phys_dim) {
  if (tensors_.empty()) throw ShapeError("mps needs at least one site");
  Eigen::Index bond = 1;
  for (std::size_t k = 0; k < tensors_.size(); ++k) {
    const auto& t = tensors_[k];
    if (t.phys_dim() != d_) throw ShapeError("physical dimension mismatch");
    if (t.left_dim() != bond) throw ShapeError("bond dimension mismatch");
    for (const auto& m : t.m)
      if (m.rows() != t.left_dim() || m.cols() != t.right_dim())
        throw ShapeError("ragged site tensor");
    bond = t.right_dim();
  }
  if (bond != 1) throw ShapeError("right boundary bond must be 1");
}

Mps Mps::basis_state(int n, int d, const std::vector<int>& configuration) {
  if (static_cast<int>(configuration.size()) != n)
    throw ArgumentError("configuration length != n");
  std::vector<SiteTensor> ts(n);
  for (int k = 0; k < n; ++k) {
    ts[k].m.resize(d);
    for (int s = 0; s < d; ++s)
      ts[k].m[s] = (s == configuration[k]) ? MatC::Ones(1, 1) : MatC::Zero(1, 1);
  }
  Mps out(std::move(ts), d);
  out.norm_cache_ = 1.0;
  return out;
}

Mps Mps::random(int n, int d, int bond, DetRng& rng) {
  std::vector<Eigen::Index> bonds(n + 1, 1);
  for (int k = 1; k < n; ++k) {
    double cap_l = std::pow(double(d), k);
    double cap_r = std::pow(double(d), n - k);
    bonds[k] = static_cast<Eigen::Index>(
        std::min({double(bond), cap_l, cap_r}));
  }
  std::vector<SiteTensor> ts(n);
  for (int k = 0; k < n; ++k) {
    ts[k].m.resize(d);
    for (int s = 0; s < d; ++s) {
      MatC m(bonds[k], bonds[k + 1]);
      for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rng.cnormal();
      ts[k].m[s] = m;
    }
  }
  return normalized(Mps(std::move(ts), d));
}

Mps Mps::from_dense(const VecC& v, int n, int d) {
  Eigen::Index dim = dense::ipow(d, n);
  if (v.size() != dim) throw ShapeError("dense vector has wrong length");
  std::vector<SiteTensor> ts(n);
  MatC m = v.transpose();  // (1 x d^n)
  Eigen::Index rest = dim;
  for (int k = 0; k < n - 1; ++k) {
    Eigen::Index rows = m.rows();
    rest /= d;
    MatC m2(rows * d, rest);
    for (Eigen::Index a = 0; a < rows; ++a)
      for (int s = 0; s < d; ++s)
        m2.row(a * d + s) = m.block(a, s * rest, 1, rest);
    auto [u, sv, vd] = thin_svd(m2);
    Eigen::Index r = rank_at_tol(sv, 0.0, 0, nullptr);
    ts[k].m.resize(d);
    for (int s = 0; s < d; ++s) {
      MatC blk(rows, r);
      for (Eigen::Index a = 0; a < rows; ++a) blk.row(a) = u.row(a * d + s).head(r);
      ts[k].m[s] = blk;
    }
    m = sv.head(r).asDiagonal() * vd.topRows(r);
  }
  ts[n - 1].m.resize(d);
  for (int s = 0; s < d; ++s) ts[n - 1].m[s] = m.col(s);
  return Mps(std::move(ts), d);
}

Eigen::Index Mps::bond_dim(int k) const {
  if (k <= 0 || k >= length()) return 1;
  return tensors_[k - 1].right_dim();
}

Eigen::Index Mps::max_bond() const {
  Eigen::Index b = 1;
  for (const auto& t : tensors_) b = std::max(b, t.right_dim());
  return b;
}

double Mps::norm() const {
  if (norm_cache_) return *norm_cache_;
  return std::sqrt(std::max(0.0, overlap(*this, *this).real()));
}

VecC Mps::dense() const {
  MatC accum = MatC::Ones(1, 1);
  Eigen::Index prefixes = 1;
  for (const auto& t : tensors_) {
    MatC next(prefixes * d_, t.right_dim());
    for (Eigen::Index p = 0; p < prefixes; ++p)
      for (int s = 0; s < d_; ++s)
        next.row(p * d_ + s) = accum.row(p) * t.m[s];
    accum = std::move(next);
    prefixes *= d_;
  }
  return accum.col(0);
}

void Mps::scale(cplx factor) {
  for (auto& m : tensors_[0].m) m *= factor;
  if (norm_cache_) norm_cache_ = *norm_cache_ * std::abs(factor);
}

Mps canonicalize(const Mps& state, int center) {
  if (center < 1 || center > state.length())
    throw ArgumentError("canonical center out of range");
  double nrm = state.norm();
  if (!(nrm > 1e-140))
    throw DegenerateInputError("cannot canonicalize a zero-norm state");
  Mps out = state;
  int c0 = center - 1;
  for (int k = 0; k < c0; ++k) left_normalize_qr(out.tensors_, out.d_, k);
  for (int k = out.length() - 1; k > c0; --k)
    right_normalize_qr(out.tensors_, out.d_, k);
  out.center_ = center;
  double csq = 0.0;
  for (const auto& m : out.tensors_[c0].m) csq += m.squaredNorm();
  out.norm_cache_ = std::sqrt(csq);
  return out;
}

Mps reduce_rank(const Mps& state, int center) {
  Mps out = state;
  int n = out.length();
  for (int k = 0; k < n - 1; ++k)
    left_split_svd(out.tensors_, out.d_, k, 0.0, 0);
  int c0 = std::max(0, std::min(center - 1, n - 1));
  for (int k = n - 1; k > c0; --k)
    right_split_svd(out.tensors_, out.d_, k, 0.0, 0);
  out.center_ = c0 + 1;
  double csq = 0.0;
  for (const auto& m : out.tensors_[c0].m) csq += m.squaredNorm();
  out.norm_cache_ = std::sqrt(csq);
  return out;
}

Mps normalized(const Mps& state) {
  double nrm = state.norm();
  if (!(nrm > 1e-140))
    throw DegenerateInputError("cannot normalize a zero-norm state");
  Mps out = state;
  out.scale(1.0 / nrm);
  return out;
}

namespace {

// Candidate left vectors for tie-breaking: prefix tensors plus one sliced
// column of U.
Mps left_vector_from_u(const std::vector<SiteTensor>& ts, int d, int cut,
                       const MatC& u, Eigen::Index col) {
  std::vector<SiteTensor> sub(ts.begin(), ts.begin() + cut);
  Eigen::Index ldim = ts[cut - 1].left_dim();
  SiteTensor last;
  last.m.resize(d);
  for (int s = 0; s < d; ++s)
    last.m[s] = u.block(s * ldim, col, ldim, 1);
  sub[cut - 1] = std::move(last);
  return Mps(std::move(sub), d);
}

// Deterministic ordering for exactly degenerate Schmidt values: descending
// coefficient, ties resolved lexicographically on the left vector's dense
// coefficient sequence (real part first, then imaginary).
std::vector<Eigen::Index> tie_break_order(const std::vector<SiteTensor>& ts,
                                          int d, int cut, const VecR& s,
                                          const MatC& u) {
  std::vector<Eigen::Index> order(s.size());
  std::iota(order.begin(), order.end(), 0);
  double smax = s.size() ? s(0) : 0.0;
  double tie_tol = 1e-12 * std::max(smax, 1.0);
  bool dense_ok = std::pow(double(d), cut) <= 4096.0;
  if (!dense_ok) return order;

  auto lex_greater = [&](Eigen::Index a, Eigen::Index b) {
    VecC va = left_vector_from_u(ts, d, cut, u, a).dense();
    VecC vb = left_vector_from_u(ts, d, cut, u, b).dense();
    for (Eigen::Index k = 0; k < va.size(); ++k) {
      if (std::abs(va(k).real() - vb(k).real()) > 1e-12)
        return va(k).real() > vb(k).real();
      if (std::abs(va(k).imag() - vb(k).imag()) > 1e-12)
        return va(k).imag() > vb(k).imag();
    }
    return false;
  };

  Eigen::Index i = 0;
  while (i < s.size()) {
    Eigen::Index j = i;
    while (j + 1 < s.size() && std::abs(s(j + 1) - s(i)) <= tie_tol) ++j;
    if (j > i)
      std::sort(order.begin() + i, order.begin() + j + 1, lex_greater);
    i = j + 1;
  }
  return order;
}

}  // namespace

SchmidtData schmidt_decompose(const Mps& state, int cut) {
  int n = state.length();
  if (cut < 1 || cut > n - 1) throw ArgumentError("cut out of range");
  double nrm = state.norm();
  if (!(nrm > 1e-140)) throw DegenerateInputError("zero-norm state");

  Mps canon = canonicalize(state, cut);
  int d = canon.phys_dim();
  int c0 = cut - 1;

  auto [u, s, vd] = thin_svd(stack_rows(canon.site(c0)));
  Eigen::Index r = rank_at_tol(s, 0.0, 0, nullptr);
  MatC uu = u.leftCols(r);
  VecR ss = s.head(r);
  MatC vv = vd.topRows(r);
  fix_column_phases(uu, vv);

  std::vector<SiteTensor> raw(n);
  for (int k = 0; k < n; ++k) raw[k] = canon.site(k);
  auto order = tie_break_order(raw, d, cut, ss, uu);

  SchmidtData out;
  out.cut = cut;
  out.input_norm = nrm;
  out.input_was_normalized = std::abs(nrm - 1.0) <= 1e-10;
  out.coefficients.resize(r);
  for (Eigen::Index j = 0; j < r; ++j)
    out.coefficients(j) = ss(order[j]) / nrm;

  for (Eigen::Index j = 0; j < r; ++j) {
    out.left_vectors.push_back(
        left_vector_from_u(raw, d, cut, uu, order[j]));
  }
  for (Eigen::Index j = 0; j < r; ++j) {
    std::vector<SiteTensor> sub(raw.begin() + cut, raw.end());
    SiteTensor first;
    first.m.resize(d);
    for (int s2 = 0; s2 < d; ++s2)
      first.m[s2] = vv.row(order[j]) * raw[cut].m[s2];
    sub[0] = std::move(first);
    out.right_vectors.push_back(Mps(std::move(sub), d));
  }
  return out;
}

Mps truncate_at_cut(const Mps& state, int cut, int max_rank) {
  if (max_rank <= 0) throw ArgumentError("truncation rank must be positive");
  int n = state.length();
  if (cut < 1 || cut > n - 1) throw ArgumentError("cut out of range");

  Mps canon = canonicalize(state, cut);
  int d = canon.phys_dim();
  int c0 = cut - 1;

  auto [u, s, vd] = thin_svd(stack_rows(canon.site(c0)));
  Eigen::Index r = rank_at_tol(s, 0.0, 0, nullptr);
  std::vector<SiteTensor> raw(n);
  for (int k = 0; k < n; ++k) raw[k] = canon.site(k);
  auto order = tie_break_order(raw, d, cut, s.head(r), u.leftCols(r));

  Eigen::Index keep = std::min<Eigen::Index>(max_rank, r);
  MatC uk(u.rows(), keep);
  MatC vk(keep, vd.cols());
  VecR sk(keep);
  for (Eigen::Index j = 0; j < keep; ++j) {
    uk.col(j) = u.col(order[j]);
    vk.row(j) = vd.row(order[j]);
    sk(j) = s(order[j]);
  }
  double kept_norm = sk.norm();
  if (!(kept_norm > 0.0)) throw DegenerateInputError("truncation removed all weight");

  Eigen::Index ldim = raw[c0].left_dim();
  SiteTensor center;
  center.m.resize(d);
  MatC us = uk * (sk / kept_norm).asDiagonal();
  for (int s2 = 0; s2 < d; ++s2)
    center.m[s2] = us.block(s2 * ldim, 0, ldim, keep);
  raw[c0] = std::move(center);
  for (auto& b : raw[cut].m) b = (vk * b).eval();

  Mps out(std::move(raw), d);
  out = canonicalize(out, cut);
  return out;
}

SweepTruncation truncate_all_bonds(const Mps& state, int max_rank,
                                   int cut_limit) {
  if (max_rank <= 0) throw ArgumentError("truncation rank must be positive");
  int n = state.length();
  int last_cut = (cut_limit < 1) ? n - 1 : std::min(cut_limit, n - 1);

  Mps work = canonicalize(state, 1);
  std::vector<SiteTensor> ts(n);
  for (int k = 0; k < n; ++k) ts[k] = work.site(k);
  int d = work.phys_dim();

  SweepTruncation out;
  out.per_cut_loss.assign(n - 1, 0.0);
  for (int k = 0; k < last_cut; ++k) {
    double dropped_frac = left_split_svd(ts, d, k, 0.0, max_rank);
    out.per_cut_loss[k] = std::sqrt(std::max(0.0, dropped_frac));
  }
  Mps res(std::move(ts), d);
  out.state = normalized(res);
  return out;
}

double compress_sweep(Mps& state, double rel_tol, int max_rank) {
  int n = state.length();
  int d = state.phys_dim();
  std::vector<SiteTensor> ts(n);
  {
    Mps swept = reduce_rank(state, n);
    for (int k = 0; k < n; ++k) ts[k] = swept.site(k);
  }
  double per_cut = (n > 1) ? rel_tol / std::sqrt(double(n - 1)) : rel_tol;
  double dropped = 0.0;
  for (int k = n - 1; k > 0; --k)
    dropped += right_split_svd(ts, d, k, per_cut, max_rank);
  state = Mps(std::move(ts), d);
  return dropped;
}

cplx overlap(const Mps& a, const Mps& b) {
  if (a.length() != b.length() || a.phys_dim() != b.phys_dim())
    throw ShapeError("overlap of mismatched states");
  MatC e = MatC::Ones(1, 1);
  for (int k = 0; k < a.length(); ++k) {
    const auto& ta = a.site(k);
    const auto& tb = b.site(k);
    MatC next = MatC::Zero(ta.right_dim(), tb.right_dim());
    for (int s = 0; s < a.phys_dim(); ++s)
      next.noalias() += ta.m[s].adjoint() * e * tb.m[s];
    e = std::move(next);
  }
  return e(0, 0);
}

Mps linear_combine(const std::vector<Mps>& states,
                   const std::vector<cplx>& weights) {
  if (states.empty() || states.size() != weights.size())
    throw ArgumentError("linear_combine needs matching nonempty inputs");
  int n = states[0].length();
  int d = states[0].phys_dim();
  for (const auto& s : states)
    if (s.length() != n || s.phys_dim() != d)
      throw ShapeError("linear_combine over mismatched states");

  if (states.size() == 1) {
    Mps out = states[0];
    out.scale(weights[0]);
    return out;
  }

  std::vector<SiteTensor> ts(n);
  if (n == 1) {
    ts[0].m.assign(d, MatC::Zero(1, 1));
    for (std::size_t i = 0; i < states.size(); ++i)
      for (int s = 0; s < d; ++s) ts[0].m[s] += weights[i] * states[i].site(0).m[s];
    return Mps(std::move(ts), d);
  }

  for (int k = 0; k < n; ++k) {
    Eigen::Index lsum = 0, rsum = 0;
    for (const auto& st : states) {
      lsum += st.site(k).left_dim();
      rsum += st.site(k).right_dim();
    }
    Eigen::Index rows = (k == 0) ? 1 : lsum;
    Eigen::Index cols = (k == n - 1) ? 1 : rsum;
    ts[k].m.assign(d, MatC::Zero(rows, cols));
    Eigen::Index lo = 0, ro = 0;
    for (std::size_t i = 0; i < states.size(); ++i) {
      const auto& t = states[i].site(k);
      cplx w = (k == 0) ? weights[i] : cplx(1.0);
      for (int s = 0; s < d; ++s) {
        Eigen::Index r0 = (k == 0) ? 0 : lo;
        Eigen::Index c0 = (k == n - 1) ? 0 : ro;
        ts[k].m[s].block(r0, c0, t.left_dim(), t.right_dim()) = w * t.m[s];
      }
      lo += t.left_dim();
      ro += t.right_dim();
    }
  }

  Mps direct(std::move(ts), d);
  double scale_ref = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i)
    scale_ref += std::abs(weights[i]) * states[i].norm();
  double nrm = direct.norm();
  if (nrm <= 1e-13 * std::max(scale_ref, 1e-300)) {
    direct.norm_cache_ = nrm;  // zero result, flagged through the norm
    return direct;
  }
  return reduce_rank(direct, 1);
}

Mps extend_site(const Mps& state, int basis_index) {
  int d = state.phys_dim();
  if (basis_index < 0 || basis_index >= d)
    throw ArgumentError("basis index out of range");
  std::vector<SiteTensor> ts;
  ts.reserve(state.length() + 1);
  for (int k = 0; k < state.length(); ++k) ts.push_back(state.site(k));
  SiteTensor last;
  last.m.resize(d);
  for (int s = 0; s < d; ++s)
    last.m[s] = (s == basis_index) ? MatC::Ones(1, 1) : MatC::Zero(1, 1);
  ts.push_back(std::move(last));
  return Mps(std::move(ts), d);
}

MatC last_site_cross_density(const Mps& a, const Mps& b) {
  if (a.length() != b.length() || a.phys_dim() != b.phys_dim())
    throw ShapeError("cross density of mismatched states");
  int n = a.length();
  int d = a.phys_dim();
  // E(alpha, beta) accumulates sum over prefixes of A-path * conj(B-path).
  MatC e = MatC::Ones(1, 1);
  for (int k = 0; k < n - 1; ++k) {
    const auto& ta = a.site(k);
    const auto& tb = b.site(k);
    MatC next = MatC::Zero(ta.right_dim(), tb.right_dim());
    for (int s = 0; s < d; ++s)
      next.noalias() += ta.m[s].transpose() * e * tb.m[s].conjugate();
    e = std::move(next);
  }
  MatC rho(d, d);
  for (int s = 0; s < d; ++s)
    for (int t = 0; t < d; ++t)
      rho(s, t) = (a.site(n - 1).m[s].transpose() * e *
                   b.site(n - 1).m[t].conjugate())(0, 0);
  return rho;
}

}  // namespace gsa
