#pragma once

// Dense exact-diagonalization ground truth for small chains. Everything the
// sweep is validated against at desk scale comes from here.

#include "gsa/model.hpp"
#include "gsa/mps.hpp"

namespace gsa {

struct Spectrum {
  VecR eigenvalues;   // ascending
  MatC eigenvectors;  // orthonormal columns, ground-space basis gauge-fixed
  double eps0 = 0.0;
  double eps1 = 0.0;
  double gap = 0.0;
  int degeneracy = 0;
  MatC ground_projector;  // G

  int n = 0;
  int d = 0;
  double degeneracy_tol = 1e-8;
};

/// Full dense spectrum. Requires d^n <= 2^14.
Spectrum diagonalize(const StandardHamiltonian& h, double degeneracy_tol = 1e-8);

/// ||G |state>|| in [0, 1].
double ground_overlap(const Mps& state, const Spectrum& spec);
double ground_overlap(const VecC& state, const Spectrum& spec);

/// Truncated-Hilbert-space projectors at a cut: P_t projects onto (full left)
/// (x) (right eigenvalues of H_R' at most t); Q_t onto eigenvalues of
/// H_L' + H_R' at most t. P_t >= Q_t.
struct TruncatedProjectors {
  MatC p;
  MatC q;
};
TruncatedProjectors truncated_projectors(const StandardHamiltonian& h, int cut,
                                         double t);

struct ProjectorDistance {
  double frobenius = 0.0;
  double trace = 0.0;
};
ProjectorDistance projector_distance(const MatC& g, const MatC& upsilon);

}  // namespace gsa
