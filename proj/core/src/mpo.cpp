#include "gsa/mpo.hpp"

#include <algorithm>

#include <Eigen/SVD>

#include "gsa/dense.hpp"

namespace gsa {

namespace {

struct OpSplit {
  std::vector<MatC> left;   // d x d factors
  std::vector<MatC> right;  // d x d factors
};

// Operator Schmidt split of a two-site operator: T = sum_r L_r (x) R_r.
OpSplit split_two_site(const MatC& term, int d) {
  if (term.rows() != d * d || term.cols() != d * d)
    throw ShapeError("two-site term has wrong dimension");
  MatC m(d * d, d * d);
  for (int s1 = 0; s1 < d; ++s1)
    for (int s1p = 0; s1p < d; ++s1p)
      for (int s2 = 0; s2 < d; ++s2)
        for (int s2p = 0; s2p < d; ++s2p)
          m(s1 * d + s1p, s2 * d + s2p) = term(s1 * d + s2, s1p * d + s2p);
  Eigen::JacobiSVD<MatC> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  double smax = s.size() ? s(0) : 0.0;
  OpSplit out;
  for (Eigen::Index r = 0; r < s.size(); ++r) {
    if (s(r) <= kSingularZeroRel * smax) break;
    double root = std::sqrt(s(r));
    MatC l(d, d), rgt(d, d);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        l(a, b) = root * svd.matrixU()(a * d + b, r);
        rgt(a, b) = root * std::conj(svd.matrixV()(a * d + b, r));
      }
    out.left.push_back(std::move(l));
    out.right.push_back(std::move(rgt));
  }
  return out;
}

// MPO <-> MPS bridging so the sweep machinery is written once.
std::vector<SiteTensor> as_site_tensors(const Mpo& op) {
  std::vector<SiteTensor> ts(op.length());
  for (int k = 0; k < op.length(); ++k) ts[k].m = op.site(k).w;
  return ts;
}

Mpo from_site_tensors(std::vector<SiteTensor> ts, int d, bool hermitian) {
  std::vector<OpTensor> ws(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) {
    ws[k].w = std::move(ts[k].m);
    ws[k].d = d;
  }
  return Mpo(std::move(ws), d, hermitian);
}

}  // namespace

Mpo::Mpo(std::vector<OpTensor> tensors, int phys_dim, bool hermitian)
    : tensors_(std::move(tensors)), d_(phys_dim), hermitian_(hermitian) {
  if (tensors_.empty()) throw ShapeError("mpo needs at least one site");
  Eigen::Index bond = 1;
  for (auto& t : tensors_) {
    t.d = d_;
    if (static_cast<int>(t.w.size()) != d_ * d_)
      throw ShapeError("op tensor physical dimension mismatch");
    if (t.left_dim() != bond) throw ShapeError("mpo bond mismatch");
    for (const auto& m : t.w)
      if (m.rows() != t.left_dim() || m.cols() != t.right_dim())
        throw ShapeError("ragged op tensor");
    bond = t.right_dim();
  }
  if (bond != 1) throw ShapeError("mpo right boundary bond must be 1");
}

Mpo Mpo::identity(int n, int d) {
  std::vector<OpTensor> ts(n);
  for (int k = 0; k < n; ++k) {
    ts[k].d = d;
    ts[k].w.resize(d * d);
    for (int s = 0; s < d; ++s)
      for (int t = 0; t < d; ++t)
        ts[k].w[s * d + t] = (s == t) ? MatC::Ones(1, 1) : MatC::Zero(1, 1);
  }
  return Mpo(std::move(ts), d, true);
}

Mpo Mpo::from_two_site_terms(const std::vector<MatC>& terms, int n, int d,
                             bool hermitian) {
  if (static_cast<int>(terms.size()) != n - 1)
    throw ArgumentError("need n-1 nearest-neighbour terms");
  if (hermitian)
    for (const auto& t : terms)
      if (!dense::is_hermitian(t)) throw ArgumentError("non-Hermitian term");

  std::vector<OpSplit> splits;
  splits.reserve(terms.size());
  for (const auto& t : terms) splits.push_back(split_two_site(t, d));

  // Bond layout at cut k (1..n-1): [init | mid_r of term k | done], where
  // init exists for k <= n-2 and done for k >= 2.
  auto has_init = [&](int k) { return k == 0 || k <= n - 2; };
  auto has_done = [&](int k) { return k == n || k >= 2; };
  auto rank_at = [&](int k) {
    return (k >= 1 && k <= n - 1) ? static_cast<int>(splits[k - 1].left.size())
                                  : 0;
  };
  auto dim_at = [&](int k) {
    if (k == 0 || k == n) return 1;
    return (has_init(k) ? 1 : 0) + rank_at(k) + (has_done(k) ? 1 : 0);
  };
  auto init_pos = [&](int) { return 0; };
  auto mid_pos = [&](int k, int r) { return (has_init(k) ? 1 : 0) + r; };
  auto done_pos = [&](int k) {
    if (k == n) return 0;
    return (has_init(k) ? 1 : 0) + rank_at(k);
  };

  std::vector<OpTensor> ws(n);
  MatC id = MatC::Identity(d, d);
  for (int k = 1; k <= n; ++k) {
    int li = dim_at(k - 1), ri = dim_at(k);
    ws[k - 1].d = d;
    ws[k - 1].w.assign(d * d, MatC::Zero(li, ri));
    auto put = [&](int row, int col, const MatC& op) {
      for (int s = 0; s < d; ++s)
        for (int t = 0; t < d; ++t) ws[k - 1].w[s * d + t](row, col) += op(s, t);
    };
    bool init_in = (k - 1 == 0) || has_init(k - 1);
    bool init_out = (k < n) && has_init(k);
    bool done_in = (k - 1 >= 2);
    bool done_out = (k == n) || has_done(k);
    if (init_in && init_out) put(init_pos(k - 1), init_pos(k), id);
    if (init_in && k <= n - 1)
      for (int r = 0; r < rank_at(k); ++r)
        put(init_pos(k - 1), mid_pos(k, r), splits[k - 1].left[r]);
    if (k >= 2)
      for (int r = 0; r < rank_at(k - 1); ++r)
        put(mid_pos(k - 1, r), done_pos(k), splits[k - 2].right[r]);
    if (done_in && done_out) put(done_pos(k - 1), done_pos(k), id);
  }
  return Mpo(std::move(ws), d, hermitian);
}

Mpo Mpo::gate_layer(int n, int d, const std::vector<int>& cuts,
                    const std::vector<MatC>& gates) {
  if (cuts.size() != gates.size()) throw ArgumentError("cuts/gates mismatch");
  std::vector<int> site_role(n + 1, 0);  // 0 free, 1 gate-left, 2 gate-right
  std::vector<int> gate_of(n + 1, -1);
  for (std::size_t g = 0; g < cuts.size(); ++g) {
    int c = cuts[g];
    if (c < 1 || c + 1 > n) throw ArgumentError("gate cut out of range");
    if (site_role[c] || site_role[c + 1])
      throw ArgumentError("gates must act on disjoint site pairs");
    site_role[c] = 1;
    site_role[c + 1] = 2;
    gate_of[c] = static_cast<int>(g);
    gate_of[c + 1] = static_cast<int>(g);
  }
  std::vector<OpSplit> splits(gates.size());
  for (std::size_t g = 0; g < gates.size(); ++g)
    splits[g] = split_two_site(gates[g], d);

  std::vector<OpTensor> ws(n);
  for (int k = 1; k <= n; ++k) {
    ws[k - 1].d = d;
    if (site_role[k] == 1) {
      const auto& sp = splits[gate_of[k]];
      int r = static_cast<int>(sp.left.size());
      ws[k - 1].w.assign(d * d, MatC::Zero(1, r));
      for (int j = 0; j < r; ++j)
        for (int s = 0; s < d; ++s)
          for (int t = 0; t < d; ++t) ws[k - 1].w[s * d + t](0, j) = sp.left[j](s, t);
    } else if (site_role[k] == 2) {
      const auto& sp = splits[gate_of[k]];
      int r = static_cast<int>(sp.right.size());
      ws[k - 1].w.assign(d * d, MatC::Zero(r, 1));
      for (int j = 0; j < r; ++j)
        for (int s = 0; s < d; ++s)
          for (int t = 0; t < d; ++t) ws[k - 1].w[s * d + t](j, 0) = sp.right[j](s, t);
    } else {
      ws[k - 1].w.assign(d * d, MatC::Zero(1, 1));
      for (int s = 0; s < d; ++s) ws[k - 1].w[s * d + s](0, 0) = 1.0;
    }
  }
  return Mpo(std::move(ws), d, false);
}

Eigen::Index Mpo::bond_dim(int k) const {
  if (k <= 0 || k >= length()) return 1;
  return tensors_[k - 1].right_dim();
}

Eigen::Index Mpo::max_bond() const {
  Eigen::Index b = 1;
  for (const auto& t : tensors_) b = std::max(b, t.right_dim());
  return b;
}

MatC Mpo::dense() const {
  int n = length();
  Eigen::Index dim = dense::ipow(d_, n);
  // accum rows indexed (prefix_out * prefixes + prefix_in)
  MatC accum = MatC::Ones(1, 1);
  Eigen::Index prefixes = 1;
  for (int k = 0; k < n; ++k) {
    const auto& t = tensors_[k];
    MatC next = MatC::Zero(prefixes * d_ * prefixes * d_, t.right_dim());
    for (Eigen::Index po = 0; po < prefixes; ++po)
      for (Eigen::Index pi = 0; pi < prefixes; ++pi)
        for (int so = 0; so < d_; ++so)
          for (int si = 0; si < d_; ++si) {
            Eigen::Index row = (po * d_ + so) * prefixes * d_ + (pi * d_ + si);
            next.row(row) = accum.row(po * prefixes + pi) * t.w[so * d_ + si];
          }
    accum = std::move(next);
    prefixes *= d_;
  }
  MatC out(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) out(r, c) = accum(r * dim + c, 0);
  return out;
}

Mpo Mpo::adjoint() const {
  std::vector<OpTensor> ts(tensors_.size());
  for (std::size_t k = 0; k < tensors_.size(); ++k) {
    ts[k].d = d_;
    ts[k].w.resize(d_ * d_);
    for (int s = 0; s < d_; ++s)
      for (int t = 0; t < d_; ++t)
        ts[k].w[s * d_ + t] = tensors_[k].w[t * d_ + s].conjugate();
  }
  return Mpo(std::move(ts), d_, hermitian_);
}

void Mpo::scale(cplx factor) {
  for (auto& m : tensors_[0].w) m *= factor;
  if (std::abs(factor.imag()) > 0.0) hermitian_ = false;
}

Mpo::CutSplit Mpo::split_at_cut(int cut) const {
  int n = length();
  if (cut < 1 || cut > n - 1) throw ArgumentError("cut out of range");
  Eigen::Index rank = bond_dim(cut);
  CutSplit out;
  for (Eigen::Index j = 0; j < rank; ++j) {
    std::vector<OpTensor> lt(tensors_.begin(), tensors_.begin() + cut);
    for (auto& m : lt[cut - 1].w) m = m.col(j).eval();
    out.left.emplace_back(std::move(lt), d_, false);
    std::vector<OpTensor> rt(tensors_.begin() + cut, tensors_.end());
    for (auto& m : rt[0].w) m = m.row(j).eval();
    out.right.emplace_back(std::move(rt), d_, false);
  }
  return out;
}

cplx matrix_element(const Mps& a, const Mpo& op, const Mps& b) {
  if (a.length() != b.length() || a.length() != op.length() ||
      a.phys_dim() != op.phys_dim() || b.phys_dim() != op.phys_dim())
    throw ShapeError("matrix element over mismatched shapes");
  int d = a.phys_dim();
  MatC e = MatC::Ones(1, 1);  // (a_bond) x (m_bond * b_bond)
  for (int k = 0; k < a.length(); ++k) {
    const auto& ta = a.site(k);
    const auto& tb = b.site(k);
    const auto& tw = op.site(k);
    Eigen::Index al = ta.left_dim(), ar = ta.right_dim();
    Eigen::Index bl = tb.left_dim(), br = tb.right_dim();
    Eigen::Index ml = tw.left_dim(), mr = tw.right_dim();
    MatC next = MatC::Zero(ar, mr * br);
    for (int s = 0; s < d; ++s)
      for (int t = 0; t < d; ++t) {
        const MatC& w = tw.at(s, t);
        if (w.isZero(0.0)) continue;
        for (Eigen::Index m0 = 0; m0 < ml; ++m0) {
          MatC tmp = e.block(0, m0 * bl, al, bl) * tb.m[t];  // al x br
          MatC contrib = ta.m[s].adjoint() * tmp;            // ar x br
          for (Eigen::Index m1 = 0; m1 < mr; ++m1) {
            cplx wv = w(m0, m1);
            if (wv != cplx(0.0)) next.block(0, m1 * br, ar, br) += wv * contrib;
          }
        }
      }
    e = std::move(next);
  }
  return e(0, 0);
}

double expectation(const Mps& state, const Mpo& op) {
  if (!op.hermitian_flag())
    throw ArgumentError("expectation of an operator without the Hermitian flag "
                        "would be complex-valued");
  cplx val = matrix_element(state, op, state);
  if (std::abs(val.imag()) > 1e-9 * std::max(1.0, std::abs(val.real())))
    throw GsaError("expectation value has a non-real component");
  return val.real();
}

ApplyResult apply_mpo(const Mpo& op, const Mps& state, double compress_tol) {
  if (op.length() != state.length() || op.phys_dim() != state.phys_dim())
    throw ShapeError("apply_mpo over mismatched shapes");
  int n = state.length();
  int d = state.phys_dim();
  std::vector<SiteTensor> ts(n);
  for (int k = 0; k < n; ++k) {
    const auto& tw = op.site(k);
    const auto& ta = state.site(k);
    Eigen::Index ml = tw.left_dim(), mr = tw.right_dim();
    Eigen::Index al = ta.left_dim(), ar = ta.right_dim();
    ts[k].m.assign(d, MatC::Zero(ml * al, mr * ar));
    for (int s = 0; s < d; ++s)
      for (int t = 0; t < d; ++t) {
        const MatC& w = tw.at(s, t);
        for (Eigen::Index i = 0; i < ml; ++i)
          for (Eigen::Index j = 0; j < mr; ++j) {
            cplx wv = w(i, j);
            if (wv != cplx(0.0))
              ts[k].m[s].block(i * al, j * ar, al, ar) += wv * ta.m[t];
          }
      }
  }
  ApplyResult out{Mps(std::move(ts), d), 0.0};
  if (compress_tol > 0.0)
    out.discarded_weight = compress_sweep(out.state, compress_tol);
  return out;
}

Mpo mpo_product(const Mpo& a, const Mpo& b) {
  if (a.length() != b.length() || a.phys_dim() != b.phys_dim())
    throw ShapeError("mpo product over mismatched shapes");
  int n = a.length();
  int d = a.phys_dim();
  std::vector<OpTensor> ts(n);
  for (int k = 0; k < n; ++k) {
    const auto& wa = a.site(k);
    const auto& wb = b.site(k);
    ts[k].d = d;
    ts[k].w.assign(d * d,
                   MatC::Zero(wa.left_dim() * wb.left_dim(),
                              wa.right_dim() * wb.right_dim()));
    for (int s = 0; s < d; ++s)
      for (int t = 0; t < d; ++t)
        for (int u = 0; u < d; ++u)
          ts[k].w[s * d + t] += dense::kron(wa.at(s, u), wb.at(u, t));
  }
  return Mpo(std::move(ts), d, false);
}

Mpo mpo_add(const std::vector<Mpo>& ops, const std::vector<cplx>& weights) {
  if (ops.empty() || ops.size() != weights.size())
    throw ArgumentError("mpo_add needs matching nonempty inputs");
  int n = ops[0].length();
  int d = ops[0].phys_dim();
  for (const auto& o : ops)
    if (o.length() != n || o.phys_dim() != d)
      throw ShapeError("mpo_add over mismatched shapes");

  if (n == 1) {
    std::vector<OpTensor> ts(1);
    ts[0].d = d;
    ts[0].w.assign(d * d, MatC::Zero(1, 1));
    for (std::size_t i = 0; i < ops.size(); ++i)
      for (int p = 0; p < d * d; ++p) ts[0].w[p] += weights[i] * ops[i].site(0).w[p];
    return Mpo(std::move(ts), d, false);
  }

  std::vector<OpTensor> ts(n);
  for (int k = 0; k < n; ++k) {
    Eigen::Index lsum = 0, rsum = 0;
    for (const auto& o : ops) {
      lsum += o.site(k).left_dim();
      rsum += o.site(k).right_dim();
    }
    Eigen::Index rows = (k == 0) ? 1 : lsum;
    Eigen::Index cols = (k == n - 1) ? 1 : rsum;
    ts[k].d = d;
    ts[k].w.assign(d * d, MatC::Zero(rows, cols));
    Eigen::Index lo = 0, ro = 0;
    for (std::size_t i = 0; i < ops.size(); ++i) {
      const auto& t = ops[i].site(k);
      cplx w = (k == 0) ? weights[i] : cplx(1.0);
      for (int p = 0; p < d * d; ++p) {
        Eigen::Index r0 = (k == 0) ? 0 : lo;
        Eigen::Index c0 = (k == n - 1) ? 0 : ro;
        ts[k].w[p].block(r0, c0, t.left_dim(), t.right_dim()) = w * t.w[p];
      }
      lo += t.left_dim();
      ro += t.right_dim();
    }
  }
  return Mpo(std::move(ts), d, false);
}

MpoCompression mpo_compress(const Mpo& op, double rel_tol, int max_rank) {
  int d = op.phys_dim();
  Mps carrier(as_site_tensors(op), d * d);
  double dropped = compress_sweep(carrier, rel_tol, max_rank);
  std::vector<SiteTensor> ts(carrier.length());
  for (int k = 0; k < carrier.length(); ++k) ts[k] = carrier.site(k);
  return {from_site_tensors(std::move(ts), d, op.hermitian_flag() && rel_tol <= 0.0),
          dropped};
}

double mpo_frobenius(const Mpo& op) {
  Mps carrier(as_site_tensors(op), op.phys_dim() * op.phys_dim());
  return carrier.norm();
}

}  // namespace gsa
