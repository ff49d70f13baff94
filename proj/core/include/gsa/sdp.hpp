#pragma once

// Span-coordinate reduction of viable sets, the two convex programs of the
// sweep, and the demixing / orthogonalization primitives.

#include <map>
#include <string>
#include <vector>

#include "gsa/ipm.hpp"
#include "gsa/mpo.hpp"
#include "gsa/mps.hpp"

namespace gsa {

/// Rank-revealing orthonormalization of a set of MPS (all on the same site
/// range) plus projections of named operators into the orthonormal basis.
class SpanBasis {
 public:
  SpanBasis(std::vector<Mps> states,
            const std::vector<std::pair<std::string, const Mpo*>>& ops,
            double gram_rel_tol = 1e-10);

  Eigen::Index rank() const { return coeff_.cols(); }
  const std::vector<Mps>& carriers() const { return carriers_; }
  const MatC& gram() const { return gram_; }
  const MatC& coeff() const { return coeff_; }

  const MatC& projected(const std::string& name) const;
  bool has(const std::string& name) const { return projected_.count(name) > 0; }

  /// Coordinates of an external state: c_a = <e_a | v>, plus the norm of the
  /// component outside the span.
  struct Coords {
    VecC c;
    double residual = 0.0;
  };
  Coords express(const Mps& v) const;

  /// State realized from span coordinates (rank-reduced MPS).
  Mps realize(const VecC& coords) const;

  /// Cross densities D_ab = Tr_{[1, last-1]} |e_a><e_b| on the last site,
  /// for the boundary-contraction constraint.
  std::vector<MatC> cross_densities() const;

 private:
  std::vector<Mps> carriers_;
  MatC gram_;
  MatC coeff_;  // carriers * coeff = orthonormal basis
  std::map<std::string, MatC> projected_;
};

struct ProgramSolution {
  MatC sigma;            // density matrix in span (x bond) coordinates
  double objective = 0.0;
  double duality_gap = 0.0;
  std::map<std::string, double> residuals;
  std::string status;    // optimal | infeasible | stalled | max_iterations
  bool feasible() const { return status == "optimal" || status == "stalled"; }
};

/// Inputs of the degenerate size-trimming program at one net point.
struct TrimProgram {
  Eigen::Index span_rank = 0;    // r
  int bond_dim = 1;              // B
  int phys_dim = 2;              // d
  MatC h_left;                   // r x r projected H_L
  MatC overlap_projector;        // r x r projected Pi (zero at h = 1)
  std::vector<MatC> cross_density;  // r*r entries (a*r+b), each d x d
  MatC x_point;                  // (dB x dB), (s,beta) row-major
  double y_bound = 0.0;          // Y + <gamma_1|H_L|gamma_1>
  double xi = 0.0;
  bool minimize_left_energy = false;  // h = 1: Pi = 0, use H_L as objective
};

/// The reduced matrix T(sigma) = Tr_{[1, i-1]} sigma on C^d (x) C^B.
MatC trim_partial_trace(const TrimProgram& p, const MatC& sigma);

/// min Tr(Pi sigma) over densities on span (x) C^B subject to the left-energy
/// and boundary-contraction constraints. Infeasibility is a status, not an
/// exception.
ProgramSolution solve_trim_program(const TrimProgram& p,
                                   const ipm::Options& opts = {});

/// min Tr(H sigma) with <gamma_j|sigma|gamma_j> = 0: solved exactly by
/// deflating the span against the previous states (the equality constraints
/// force sigma into their orthogonal complement).
ProgramSolution solve_gsa_program(const MatC& h_span,
                                  const std::vector<VecC>& prev_coords,
                                  double degeneracy_tol = 1e-9);

/// Leading eigenvector of a low-energy density matrix; ties in the leading
/// eigenvalue are broken by lower projected energy.
VecC demix(const MatC& sigma, const MatC& h_span, double eps0, double epsilon,
           double delta, int g, bool enforce_preconditions = true);

/// Gram-Schmidt against previously found states. Throws when v lies in their
/// span (residual below 1e-10).
Mps orthogonalize(const Mps& v, const std::vector<Mps>& prev);

}  // namespace gsa
