#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "itlab/blocks.hpp"
#include "itlab/distributions.hpp"
#include "itlab/rd_solver.hpp"

namespace itlab {

// Deterministic block code: total encoder over X^n, decoder table over
// messages. The codebook may contain duplicate codewords. Immutable.
struct BlockCode {
  int n = 1;
  std::size_t x_alphabet = 2;
  std::size_t y_alphabet = 2;
  std::vector<std::uint32_t> encoder;                // |X|^n entries, message ids
  std::vector<std::vector<std::uint8_t>> codewords;  // M blocks of length n

  std::uint64_t M() const { return codewords.size(); }
  double rate() const { return std::log(static_cast<double>(M())) / n; }
  const std::vector<std::uint8_t>& reconstruction(std::uint64_t x_index) const {
    return codewords[encoder[x_index]];
  }
  bool decoder_bijective() const;
  void validate() const;  // totality + symbol-range checks
};

struct GoodnessReport {
  double rate_gap = 0.0;             // R_n - I(X;Y), nats
  double expected_distortion = 0.0;  // per-letter average
  double expected_tv_to_target = 0.0;  // E || T_{X^nY^n} - P_XY ||
  bool exact = true;
  double tv_standard_error = 0.0;    // 0 in exact mode
  std::uint64_t samples = 0;
};

// Block distortion (per-letter average) between a source block and codeword.
double block_distortion(const std::vector<std::uint8_t>& x, const std::vector<std::uint8_t>& y,
                        const DistortionMeasure& d);

// Minimum-distortion encoder over a fixed codebook, lowest-index tie-break.
std::vector<std::uint32_t> min_distortion_encoder(int n, std::size_t x_alphabet,
                                                  const std::vector<std::vector<std::uint8_t>>& codewords,
                                                  const DistortionMeasure& d,
                                                  std::uint64_t budget = kDefaultBlockBudget);

// Exhaustive search over M-multisets of Y^n codewords; minimizes expected
// distortion. Errors with a pointer at lloyd_code when the search space is
// too large.
BlockCode optimal_code_exhaustive(const Simplex& source, const DistortionMeasure& d, int n,
                                  std::uint64_t M, std::uint64_t search_budget = 2'000'000,
                                  std::uint64_t block_budget = kDefaultBlockBudget);

// Lloyd-style alternation of nearest-codeword partition and per-position
// centroid steps. Deterministic under fixed seed.
BlockCode lloyd_code(const Simplex& source, const DistortionMeasure& d, int n, std::uint64_t M,
                     std::uint64_t seed, std::uint64_t max_iters = 1000,
                     std::uint64_t budget = kDefaultBlockBudget);

// Best-of-seeds Lloyd wrapper (seeds seed..seed+restarts-1).
BlockCode lloyd_code_best(const Simplex& source, const DistortionMeasure& d, int n, std::uint64_t M,
                          std::uint64_t seed, std::uint64_t restarts,
                          std::uint64_t budget = kDefaultBlockBudget);

// Random codebook drawn i.i.d. from the n-fold product of the RD output
// marginal; minimum-distortion encoder. M = ceil(exp(n * rate)). When
// `distinct` is set the codebook is resampled (bounded retries) until the
// decoder is bijective.
BlockCode random_coordination_code(const RdSolution& rd, const DistortionMeasure& d, int n,
                                   double rate, std::uint64_t seed, bool distinct = false,
                                   std::uint64_t budget = kDefaultBlockBudget);

// Rate schedule R_n = base_rate + n^(-1/2 + delta).
double rate_schedule(double base_rate, int n, double delta);

// Theorem-2-style pathological modification: append the constant codeword
// y^n = (y,...,y) and remap x^n = (x,...,x) to it. Requires the backward
// mass of (x,y) to be exactly zero.
BlockCode append_pathological_codeword(const BlockCode& code, const Channel& backward_full,
                                       std::size_t x, std::size_t y);

// Goodness statistics against the target joint P_XY (and distortion measure).
// Exact enumeration when |X|^n fits the budget, otherwise Monte-Carlo.
GoodnessReport goodness_report(const BlockCode& code, const Simplex& source,
                               const DistortionMeasure& d, const JointLaw& target_joint,
                               double target_rate, std::uint64_t budget = kDefaultBlockBudget,
                               std::uint64_t mc_samples = 1'000'000, std::uint64_t mc_seed = 1);

}  // namespace itlab
