#pragma once

// Shared helpers for the test suites. The dense constructions here are the
// independent oracles the tensor-network code is checked against.

#include <vector>

#include "gsa/common.hpp"
#include "gsa/dense.hpp"
#include "gsa/mps.hpp"
#include "gsa/mpo.hpp"

namespace gsa::test {

inline MatC pauli_x() {
  MatC m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline MatC pauli_y() {
  MatC m(2, 2);
  m << cplx(0, 0), cplx(0, -1), cplx(0, 1), cplx(0, 0);
  return m;
}

inline MatC pauli_z() {
  MatC m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

/// Zero-field Ising term (1 - Z Z)/2: spectrum {0, 1}, frustration free.
inline MatC ising_term() {
  MatC zz = dense::kron(pauli_z(), pauli_z());
  return 0.5 * (MatC::Identity(4, 4) - zz);
}

inline std::vector<MatC> ising_terms(int n) {
  return std::vector<MatC>(n - 1, ising_term());
}

/// Dense matrix of an MPO-free Hamiltonian from its two-site terms.
inline MatC dense_chain(const std::vector<MatC>& terms, int n, int d = 2) {
  return dense::chain_from_terms(terms, n, d);
}

/// Random Schmidt-rank-limited dense state across the given cut.
inline VecC random_low_rank_state(int n, int d, int cut, int rank, DetRng& rng) {
  Eigen::Index dl = dense::ipow(d, cut), dr = dense::ipow(d, n - cut);
  VecC v = VecC::Zero(dl * dr);
  for (int r = 0; r < rank; ++r) {
    VecC l = dense::random_unit(dl, rng);
    VecC rv = dense::random_unit(dr, rng);
    cplx w = rng.cnormal();
    for (Eigen::Index i = 0; i < dl; ++i)
      for (Eigen::Index j = 0; j < dr; ++j) v(i * dr + j) += w * l(i) * rv(j);
  }
  return v / v.norm();
}

inline double vec_distance_up_to_phase(const VecC& a, const VecC& b) {
  cplx ov = a.dot(b);  // conj(a) . b
  double m = std::abs(ov);
  if (m < 1e-300) return std::max(a.norm(), b.norm());
  cplx phase = ov / m;
  return (a * phase - b).norm();
}

}  // namespace gsa::test
