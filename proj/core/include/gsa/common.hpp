#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gsa {

using cplx = std::complex<double>;
using MatC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;
using VecR = Eigen::VectorXd;

/// Relative threshold below which singular values are treated as zero.
inline constexpr double kSingularZeroRel = 1e-12;

// ---------------------------------------------------------------------------
// Errors. Every failure mode has a concrete type so callers can react to the
// thing that actually happened instead of parsing message strings.
// ---------------------------------------------------------------------------

struct GsaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ShapeError : GsaError {
  using GsaError::GsaError;
};

struct ArgumentError : GsaError {
  using GsaError::GsaError;
};

/// Zero-norm or otherwise numerically degenerate input state.
struct DegenerateInputError : GsaError {
  using GsaError::GsaError;
};

struct PreconditionError : GsaError {
  using GsaError::GsaError;
};

/// A tolerance could not be met within a resource cap; carries what was reached.
struct BudgetExceededError : GsaError {
  double achieved;
  BudgetExceededError(const std::string& what, double achieved_)
      : GsaError(what), achieved(achieved_) {}
};

struct SolverError : GsaError {
  using GsaError::GsaError;
};

/// Failure of a pipeline sub-step, tagged with where in the sweep it happened.
struct StageError : GsaError {
  int h;
  int i;
  std::string stage;
  StageError(int h_, int i_, std::string stage_, const std::string& what)
      : GsaError("stage " + stage_ + " (h=" + std::to_string(h_) + ", i=" +
                 std::to_string(i_) + "): " + what),
        h(h_), i(i_), stage(std::move(stage_)) {}
};

struct TrimFailureError : StageError {
  using StageError::StageError;
};

// ---------------------------------------------------------------------------
// Deterministic random source. std::mt19937_64 is bit-exact everywhere, but
// the standard distributions are not; we only draw through the raw engine.
// ---------------------------------------------------------------------------

class DetRng {
 public:
  explicit DetRng(std::uint64_t seed) : s_{seed} {
    // splitmix64 expansion of the seed into the initial state
    for (auto& w : state_) w = next_seed();
  }

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller (deterministic across platforms).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  cplx cnormal() { return cplx(normal(), normal()); }

  std::uint64_t integer(std::uint64_t n) {  // uniform in [0, n)
    return next() % n;
  }

  /// Independent substream for a named purpose; keeps draws decoupled.
  DetRng fork(std::uint64_t tag) const {
    return DetRng(s_ ^ (0x9e3779b97f4a7c15ULL * (tag + 1)));
  }

 private:
  std::uint64_t next_seed() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // xoshiro256** core
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t next() {
    std::uint64_t r = rotl(state_[1] * 5, 7) * 9;
    std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return r;
  }

  std::uint64_t s_;
  std::uint64_t state_[4]{};
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace gsa
