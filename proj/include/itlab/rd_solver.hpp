#pragma once

#include <cstdint>
#include <vector>

#include "itlab/distributions.hpp"

namespace itlab {

// Per-symbol distortion matrix, normalized so min_y d(x,y) = 0 for each x.
class DistortionMeasure {
 public:
  DistortionMeasure(std::size_t nx, std::size_t ny, std::vector<double> entries);
  static DistortionMeasure hamming(std::size_t k);

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  double operator()(std::size_t x, std::size_t y) const { return d_[x * ny_ + y]; }
  const std::vector<double>& entries() const { return d_; }

  // Restrict to a subset of reproduction symbols, re-normalizing row minima
  // to zero. `shift` receives E_p[row minimum] of the restricted matrix.
  DistortionMeasure restrict_outputs(const std::vector<std::size_t>& keep, const Simplex& source,
                                     double* shift) const;

 private:
  std::size_t nx_, ny_;
  std::vector<double> d_;
};

struct RdSolution {
  double rate = 0.0;        // nats/symbol
  double distortion = 0.0;  // expected distortion under the solved joint
  double slope = 0.0;       // Lagrange parameter at the solution (0 when degenerate)
  Simplex source;
  Channel forward;          // P_{Y|X} on the retained alphabet
  Channel backward;         // P_{X|Y} on the retained alphabet
  Simplex output_marginal;  // P_Y on the retained alphabet
  std::vector<std::size_t> reduced_alphabet;  // retained symbols, indices into the original Y
  bool degenerate = false;  // zero-rate boundary solution
  std::uint64_t iterations = 0;
  bool converged = true;

  JointLaw joint() const { return JointLaw::from_source_and_channel(source, forward); }
};

struct RdSolverOptions {
  double inner_tol = 1e-13;       // L1 change of the output marginal per sweep
  std::uint64_t max_inner_iters = 200000;
  std::uint64_t max_bisect_iters = 200;
  std::uint64_t init_seed = 0;    // 0: deterministic base initialization
  double init_noise = 0.0;        // relative perturbation of the initial output marginal
};

// Alternating-minimization solve of R(D) with outer bisection on the slope.
// target_D must be > 0; a target at or above the best constant-output
// distortion returns the degenerate zero-rate solution.
RdSolution solve_rd(const Simplex& source, const DistortionMeasure& d, double target_D,
                    double tol = 1e-9, const RdSolverOptions& opts = {});

// Bayes inversion of (source, forward). Errors if some output symbol has
// zero marginal; such symbols must be removed by reduce_alphabet first.
Channel backward_channel(const Simplex& source, const Channel& forward, double zero_tol = 0.0);

// Drop output symbols with marginal mass below threshold and re-solve on the
// reduced alphabet. Errors if the reduction would empty the alphabet.
RdSolution reduce_alphabet(const RdSolution& sol, const DistortionMeasure& d, double target_D,
                           double tol = 1e-9, double threshold = 1e-9,
                           const RdSolverOptions& opts = {});

// True iff every backward conditional entry over positive-marginal output
// symbols is strictly positive.
bool check_membership_A(const JointLaw& joint);

struct UniquenessProbeReport {
  double max_deviation = 0.0;  // max entrywise gap among backward channels
  std::uint64_t restarts = 0;
  std::uint64_t failed_restarts = 0;
};

// Empirical check of backward-channel uniqueness: randomized restarts of the
// solver, comparing backward channels after reduction. Duplicate distortion
// columns are canonically merged before comparison.
UniquenessProbeReport backward_uniqueness_probe(const Simplex& source, const DistortionMeasure& d,
                                                double target_D, std::uint64_t num_restarts,
                                                std::uint64_t seed, double tol = 1e-9);

}  // namespace itlab
