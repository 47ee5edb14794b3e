#pragma once

#include <cstdint>
#include <vector>

#include "itlab/codes.hpp"
#include "itlab/distributions.hpp"
#include "itlab/induced.hpp"

namespace itlab {

// Reinterpret a coordination code as a channel code over the backward DMC:
// message -> codeword g(m) -> channel P_{X|Y} -> decode with f. The decoder
// of the source code must be bijective (distinct codewords).
class ChannelExperiment {
 public:
  // Keeps a reference to the caller's code; the caller owns its lifetime.
  // Encoder/codebook tables are snapshotted so the P-side audit can detect
  // a pairing that was broken after construction.
  ChannelExperiment(const BlockCode& code, Channel backward_full);
  ChannelExperiment(BlockCode&&, Channel) = delete;  // would dangle

  const BlockCode& code() const { return *code_; }
  const Channel& backward() const { return backward_; }
  const std::vector<std::uint32_t>& encoder_snapshot() const { return encoder_snapshot_; }
  const std::vector<std::vector<std::uint8_t>>& codeword_snapshot() const {
    return codeword_snapshot_;
  }

 private:
  const BlockCode* code_;
  Channel backward_;
  std::vector<std::uint32_t> encoder_snapshot_;
  std::vector<std::vector<std::uint8_t>> codeword_snapshot_;
};

struct ErrorEstimate {
  double probability = 0.0;
  double standard_error = 0.0;  // 0 in exact mode
  bool exact = true;
  std::uint64_t samples = 0;
};

// Q(E_n): probability that f fails to recover the transmitted message.
// Exact mode sums 1 - (1/M) sum_x Q(x | g(f(x))); Monte-Carlo mode samples
// message -> channel -> decode with Wilson-interval standard errors.
ErrorEstimate error_probability_Q_exact(const ChannelExperiment& exp,
                                        std::uint64_t budget = kDefaultBlockBudget);
ErrorEstimate error_probability_Q_monte_carlo(const ChannelExperiment& exp, std::uint64_t samples,
                                              std::uint64_t seed);

// P(E_n): always zero by construction; executed as an audit over the
// P-support. Throws InvariantViolation if the code tables were corrupted
// after the experiment was built.
double error_probability_P(const ChannelExperiment& exp,
                           std::uint64_t budget = kDefaultBlockBudget);

// Sampling audit of the same invariant over source-drawn blocks.
double error_probability_P_sampled(const ChannelExperiment& exp, const Simplex& source,
                                   std::uint64_t samples, std::uint64_t seed);

// Q(E_n) - P(E_n): certified lower bound on ||P_{X^nY^n} - Q_{X^nY^n}||.
double tv_lower_bound(const ChannelExperiment& exp, std::uint64_t budget = kDefaultBlockBudget);

// Numeric audit of the message-extension TV equality: TV between the
// M-hat-extended joints equals tv_joint of the unextended pair.
struct ExtensionAudit {
  double tv_extended = 0.0;
  double tv_unextended = 0.0;
};
ExtensionAudit extend_with_message(const InducedPair& pair);

}  // namespace itlab
