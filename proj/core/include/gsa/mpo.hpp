#pragma once

// Matrix product operators; houses Hamiltonians, propagators, and AGSPs.

#include <optional>
#include <vector>

#include "gsa/mps.hpp"

namespace gsa {

/// One rank-4 site tensor: w[s_out * d + s_in] is (left_bond x right_bond).
struct OpTensor {
  std::vector<MatC> w;
  int d = 0;

  const MatC& at(int s_out, int s_in) const { return w[s_out * d + s_in]; }
  MatC& at(int s_out, int s_in) { return w[s_out * d + s_in]; }
  Eigen::Index left_dim() const { return w.empty() ? 0 : w[0].rows(); }
  Eigen::Index right_dim() const { return w.empty() ? 0 : w[0].cols(); }
};

class Mpo {
 public:
  Mpo() = default;
  Mpo(std::vector<OpTensor> tensors, int phys_dim, bool hermitian = false);

  static Mpo identity(int n, int d);

  /// MPO of a sum of two-site terms; terms[k] acts on sites (k+1, k+2).
  static Mpo from_two_site_terms(const std::vector<MatC>& terms, int n, int d,
                                 bool hermitian);

  /// Product of disjoint two-site gates, one per cut in `cuts` (1-based).
  static Mpo gate_layer(int n, int d, const std::vector<int>& cuts,
                        const std::vector<MatC>& gates);

  int length() const { return static_cast<int>(tensors_.size()); }
  int phys_dim() const { return d_; }
  const OpTensor& site(int k) const { return tensors_[k]; }
  Eigen::Index bond_dim(int k) const;  // cut right of 1-based site k
  Eigen::Index max_bond() const;

  bool hermitian_flag() const { return hermitian_; }
  void set_hermitian_flag(bool v) { hermitian_ = v; }

  MatC dense() const;

  Mpo adjoint() const;
  void scale(cplx factor);

  /// Operator evaluated site tensors sliced at a cut: K = sum_j A_j (x) B_j.
  struct CutSplit {
    std::vector<Mpo> left;   // operators on [1, cut]
    std::vector<Mpo> right;  // operators on [cut+1, n]
  };
  CutSplit split_at_cut(int cut) const;

 private:
  std::vector<OpTensor> tensors_;
  int d_ = 0;
  bool hermitian_ = false;
};

/// <state| op |state>; requires the Hermitian flag, returns the real value.
double expectation(const Mps& state, const Mpo& op);

/// <a| op |b>.
cplx matrix_element(const Mps& a, const Mpo& op, const Mps& b);

struct ApplyResult {
  Mps state;
  double discarded_weight = 0.0;  // relative to the applied state's norm
};

/// op|state>. With compress_tol <= 0 the bond dimensions are exactly the
/// products of the inputs'; with a positive tolerance the result is swept
/// and small Schmidt weight is discarded (reported).
ApplyResult apply_mpo(const Mpo& op, const Mps& state, double compress_tol = 0.0);

Mpo mpo_product(const Mpo& a, const Mpo& b);  // a after b
Mpo mpo_add(const std::vector<Mpo>& ops, const std::vector<cplx>& weights);

struct MpoCompression {
  Mpo op;
  double discarded_weight = 0.0;  // relative Frobenius weight dropped
};

/// SVD compression sweep at a relative Frobenius tolerance (0 = drop only
/// numerically-zero singular values).
MpoCompression mpo_compress(const Mpo& op, double rel_tol, int max_rank = 0);

double mpo_frobenius(const Mpo& op);

}  // namespace gsa
