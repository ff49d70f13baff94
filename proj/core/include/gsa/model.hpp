#pragma once

// Nearest-neighbour chain Hamiltonians in standard form (0 <= H_i <= 1),
// plus the cut partitions the sweep works with.

#include <map>
#include <string>
#include <vector>

#include "gsa/mpo.hpp"

namespace gsa {

/// Affine map recording how raw terms were brought into standard form, so
/// energies can be reported in the original units.
struct StandardizationMeta {
  std::vector<double> term_shifts;  // subtracted per raw term
  double scale = 1.0;               // global divisor
  double total_shift() const {
    double s = 0.0;
    for (double x : term_shifts) s += x;
    return s;
  }
  double to_original(double std_energy) const {
    return std_energy * scale + total_shift();
  }
};

class StandardHamiltonian {
 public:
  StandardHamiltonian(int n, int d, std::vector<MatC> local_terms,
                      StandardizationMeta meta);

  int n() const { return n_; }
  int d() const { return d_; }
  const std::vector<MatC>& local_terms() const { return terms_; }
  const Mpo& mpo_form() const { return mpo_; }
  const StandardizationMeta& metadata() const { return meta_; }

  /// MPO of H_[first, last] restricted to the sites [first, last] (1-based,
  /// inclusive); terms entirely inside the window.
  Mpo window_mpo(int first, int last) const;

  /// Dense H_[first, last] on the window's Hilbert space.
  MatC window_dense(int first, int last) const;

  /// H_[1, i] embedded as an MPO on the full chain (terms past i zeroed).
  Mpo prefix_mpo(int i) const;

  MatC dense() const { return window_dense(1, n_); }

 private:
  int n_;
  int d_;
  std::vector<MatC> terms_;
  Mpo mpo_;
  StandardizationMeta meta_;
};

struct Partition {
  int cut = 0;           // H = H_[1,cut] + H_cut + H_[cut+1,n]
  double eps_left = 0.0;   // least eigenvalue of H_[1,cut]
  double eps_right = 0.0;  // least eigenvalue of H_[cut+1,n]
  const StandardHamiltonian* hamiltonian = nullptr;

  Mpo left_mpo() const;   // H_L on sites [1, cut]
  MatC left_dense() const;
  MatC middle_dense() const;  // H_cut embedded on the full chain
  MatC right_dense() const;   // H_R on sites [cut+1, n]
};

/// Shift raw Hermitian two-site terms to be nonnegative and rescale so every
/// term fits in [0, 1]. Terms already satisfying 0 <= H_i <= 1 pass through
/// untouched.
StandardHamiltonian standardize(const std::vector<MatC>& raw_terms, int n, int d);

struct ModelParams {
  std::map<std::string, double> values;
  std::uint64_t seed = 0;
  double get(const std::string& key, double fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
  }
};

/// Catalog: ising_zero_field, ising_transverse (param h), heisenberg,
/// ising_random_perturbed (params lambda, seed).
StandardHamiltonian make_model(const std::string& name, int n,
                               const ModelParams& params = {});

Partition partition(const StandardHamiltonian& h, int cut);

/// Least eigenvalue of a window Hamiltonian; dense for small windows,
/// Lanczos with full reorthogonalization beyond.
double window_ground_energy(const StandardHamiltonian& h, int first, int last,
                            double tol = 1e-9);

}  // namespace gsa
