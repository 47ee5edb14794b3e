#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "itlab/codes.hpp"
#include "itlab/distributions.hpp"

namespace itlab {

// The pair of blocklength-n joints induced by a deterministic code: the
// code's own P (sparse: one y-block per x-block) and the backward-DMC Q
// (evaluated pointwise, never materialized).
class InducedPair {
 public:
  // `backward_full` is the per-letter backward channel over the full Y
  // alphabet (rows may be absent only for symbols no codeword uses).
  InducedPair(BlockCode code, Simplex source, Channel backward_full,
              std::uint64_t budget = kDefaultBlockBudget);

  int n() const { return code_.n; }
  const BlockCode& code() const { return code_; }
  const Simplex& source() const { return source_; }
  const Channel& backward() const { return backward_; }
  std::uint64_t x_block_count() const { return count_; }

  double p_mass(std::uint64_t x_index) const { return std::exp(log_px_[x_index]); }
  double log_p_mass(std::uint64_t x_index) const { return log_px_[x_index]; }

  // Q_{Y^n} of a y-block: codeword multiplicity / M; zero off the codebook.
  double q_codebook_mass(const std::vector<std::uint8_t>& y_block) const;

  // Q(x^n, y^n) = Q_{Y^n}(y^n) * prod P_{X|Y}(x_i|y_i).
  double q_mass(const std::vector<std::uint8_t>& x_block,
                const std::vector<std::uint8_t>& y_block) const;
  // Same, but -inf when zero.
  double log_q_mass(const std::vector<std::uint8_t>& x_block,
                    const std::vector<std::uint8_t>& y_block) const;

  // Distinct codewords with their Q_{Y^n} and P_{Y^n} masses.
  struct CodewordMass {
    std::vector<std::uint8_t> word;
    double q = 0.0;  // multiplicity / M
    double p = 0.0;  // P_{Y^n}: total source mass encoded to this word
  };
  const std::vector<CodewordMass>& codeword_masses() const { return words_; }

 private:
  BlockCode code_;
  Simplex source_;
  Channel backward_;
  std::uint64_t count_ = 0;
  std::vector<double> log_px_;        // per x-block
  std::vector<std::uint32_t> word_of_msg_;  // message -> distinct-word id
  std::vector<CodewordMass> words_;
};

// (1/n) D(P||Q); +inf sentinel iff some P-support point has Q-mass zero.
double normalized_divergence(const InducedPair& pair);

struct ChainRuleTerms {
  double term1 = 0.0;  // D(P || P_{Y^n} Q_{X^n|Y^n})
  double term2 = 0.0;  // D(P_{Y^n} || Q_{Y^n})
};
ChainRuleTerms chain_rule_terms(const InducedPair& pair);

// (1/n) I(X^n;Y^n) under P; equals (1/n) H(Y^n) for deterministic codes.
double normalized_block_mi(const InducedPair& pair);

// (1/n) H(Y^n) under P.
double normalized_output_entropy(const InducedPair& pair);

// (1/n) sum_i P_{X_i Y_i}, computed as the P-expectation of the empirical type.
JointLaw averaged_single_letter_marginal(const InducedPair& pair);

// Independent route for the same object: accumulate per-position pair
// marginals directly. Used to audit the expectation-of-types identity.
JointLaw averaged_single_letter_marginal_direct(const InducedPair& pair);

// Exact variational distance between the blocklength-n joints.
double tv_joint(const InducedPair& pair);

}  // namespace itlab
