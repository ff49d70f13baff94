#pragma once

// Matrix product states on an open chain. Site tensors are stored as one
// (left-bond x right-bond) matrix per physical index; boundary bonds have
// dimension one.

#include <optional>
#include <vector>

#include "gsa/common.hpp"

namespace gsa {

class Mpo;

/// One rank-3 site tensor, physical index unrolled.
struct SiteTensor {
  std::vector<MatC> m;  // m[s] is (left_bond x right_bond)

  Eigen::Index left_dim() const { return m.empty() ? 0 : m[0].rows(); }
  Eigen::Index right_dim() const { return m.empty() ? 0 : m[0].cols(); }
  int phys_dim() const { return static_cast<int>(m.size()); }
};

class Mps {
 public:
  Mps() = default;
  Mps(std::vector<SiteTensor> tensors, int phys_dim);

  /// Product state |s_1 s_2 ... s_n>.
  static Mps basis_state(int n, int d, const std::vector<int>& configuration);

  /// Random normalized state with bond dimension capped at b.
  static Mps random(int n, int d, int bond, DetRng& rng);

  /// Exact MPS of a dense state vector (site 1 most significant).
  static Mps from_dense(const VecC& v, int n, int d);

  int length() const { return static_cast<int>(tensors_.size()); }
  int phys_dim() const { return d_; }
  const SiteTensor& site(int k) const { return tensors_[k]; }  // 0-based
  SiteTensor& site(int k) { return tensors_[k]; }

  /// Bond dimension on the cut right of 1-based site k (k = 0 is the left edge).
  Eigen::Index bond_dim(int k) const;
  Eigen::Index max_bond() const;

  std::optional<int> canonical_center() const { return center_; }
  std::optional<double> norm_cache() const { return norm_cache_; }

  double norm() const;
  VecC dense() const;  // feasible for d^n up to ~2^14

  void scale(cplx factor);

  friend class Mpo;

 private:
  friend Mps canonicalize(const Mps&, int);
  friend Mps reduce_rank(const Mps&, int);
  friend Mps linear_combine(const std::vector<Mps>&, const std::vector<cplx>&);
  friend double compress_sweep(Mps&, double, int);

  std::vector<SiteTensor> tensors_;
  int d_ = 0;
  std::optional<int> center_;
  std::optional<double> norm_cache_;
};

/// Schmidt decomposition of a state across the cut | between sites cut and
/// cut+1 (1-based).
struct SchmidtData {
  int cut = 0;
  VecR coefficients;              // nonincreasing, renormalized
  std::vector<Mps> left_vectors;  // orthonormal, on sites [1, cut]
  std::vector<Mps> right_vectors; // orthonormal, on sites [cut+1, n]
  bool input_was_normalized = true;
  double input_norm = 1.0;
};

/// Bring the state into mixed-canonical form with the given 1-based center.
/// Pure gauge move: the state (including its norm) is unchanged.
Mps canonicalize(const Mps& state, int center);

/// Gauge sweep that also drops numerically zero singular values everywhere
/// (relative threshold kSingularZeroRel); used after sums and MPO products.
Mps reduce_rank(const Mps& state, int center = 1);

Mps normalized(const Mps& state);

SchmidtData schmidt_decompose(const Mps& state, int cut);

/// Keep the D largest Schmidt terms at one cut; output renormalized.
Mps truncate_at_cut(const Mps& state, int cut, int max_rank);

struct SweepTruncation {
  Mps state;                          // renormalized once at the end
  std::vector<double> per_cut_loss;   // discarded weight norm per cut
};

/// Left-to-right truncation of every cut 1..cut_limit to rank max_rank.
/// cut_limit < 1 means all cuts.
SweepTruncation truncate_all_bonds(const Mps& state, int max_rank,
                                   int cut_limit = -1);

cplx overlap(const Mps& a, const Mps& b);  // <a|b>

/// In-place truncating sweep (left canonicalization, then a right-to-left
/// pass that discards relative Schmidt weight up to rel_tol). Does not
/// renormalize; returns the total relative squared weight discarded.
double compress_sweep(Mps& state, double rel_tol, int max_rank = 0);

/// Weighted sum of states on the same chain. Result rank-reduced; a zero
/// result is detectable through its cached norm.
Mps linear_combine(const std::vector<Mps>& states,
                   const std::vector<cplx>& weights);

/// Tensor-product extension by one site: |state> (x) |s>.
Mps extend_site(const Mps& state, int basis_index);

/// Partial trace of |a><b| over all but the last site, as a d x d matrix.
/// States must share length, physical dimension, and chain.
MatC last_site_cross_density(const Mps& a, const Mps& b);

}  // namespace gsa
