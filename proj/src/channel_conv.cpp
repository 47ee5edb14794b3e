#include "itlab/channel_conv.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace itlab {

namespace {

struct Kahan {
  double sum = 0.0, c = 0.0;
  void add(double v) {
    double y = v - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t sample_row(const Channel& ch, std::size_t input, std::mt19937_64& rng) {
  const double u = next_uniform(rng);
  double acc = 0.0;
  for (std::size_t s = 0; s + 1 < ch.output_size(); ++s) {
    acc += ch(input, s);
    if (u < acc) return s;
  }
  return ch.output_size() - 1;
}

}  // namespace

ChannelExperiment::ChannelExperiment(const BlockCode& code, Channel backward_full)
    : code_(&code), backward_(std::move(backward_full)) {
  code.validate();
  if (!code.decoder_bijective())
    throw ConfigError("ChannelExperiment: decoder must be bijective (distinct codewords)");
  if (backward_.input_size() != code.y_alphabet || backward_.output_size() != code.x_alphabet)
    throw std::invalid_argument("ChannelExperiment: backward channel shape mismatch");
  encoder_snapshot_ = code.encoder;
  codeword_snapshot_ = code.codewords;
}

ErrorEstimate error_probability_Q_exact(const ChannelExperiment& exp, std::uint64_t budget) {
  const BlockCode& code = exp.code();
  const std::uint64_t count = checked_block_count(code.x_alphabet, code.n, budget);
  // With a bijective decoder, correct decoding of message m means f(x) = m,
  // so the correct mass is (1/M) sum_x Q(x | g(f(x))).
  Kahan correct;
  std::vector<std::uint8_t> block;
  for (std::uint64_t i = 0; i < count; ++i) {
    block_from_index(i, code.n, code.x_alphabet, block);
    const auto& cw = code.reconstruction(i);
    double w = 1.0;
    for (int k = 0; k < code.n; ++k)
      w *= exp.backward()(cw[static_cast<std::size_t>(k)], block[static_cast<std::size_t>(k)]);
    correct.add(w);
  }
  ErrorEstimate est;
  est.exact = true;
  est.probability = std::clamp(1.0 - correct.sum / static_cast<double>(code.M()), 0.0, 1.0);
  return est;
}

ErrorEstimate error_probability_Q_monte_carlo(const ChannelExperiment& exp, std::uint64_t samples,
                                              std::uint64_t seed) {
  const BlockCode& code = exp.code();
  std::mt19937_64 rng(seed);
  std::uint64_t errors = 0;
  std::vector<std::uint8_t> x(static_cast<std::size_t>(code.n));
  for (std::uint64_t s = 0; s < samples; ++s) {
    const std::uint64_t m =
        static_cast<std::uint64_t>(next_uniform(rng) * static_cast<double>(code.M()));
    const auto& cw = code.codewords[std::min<std::uint64_t>(m, code.M() - 1)];
    for (int k = 0; k < code.n; ++k)
      x[static_cast<std::size_t>(k)] =
          static_cast<std::uint8_t>(sample_row(exp.backward(), cw[static_cast<std::size_t>(k)], rng));
    const std::uint64_t xi = index_from_block(x, code.x_alphabet);
    if (code.encoder[xi] != std::min<std::uint64_t>(m, code.M() - 1)) ++errors;
  }
  ErrorEstimate est;
  est.exact = false;
  est.samples = samples;
  const double n = static_cast<double>(samples);
  const double k = static_cast<double>(errors);
  est.probability = k / n;
  // Wilson half-width at z = 1 as the reported standard error.
  const double z = 1.0;
  est.standard_error = z / (n + z * z) * std::sqrt(k * (n - k) / n + z * z / 4.0);
  return est;
}

double error_probability_P(const ChannelExperiment& exp, std::uint64_t budget) {
  const BlockCode& code = exp.code();
  const std::uint64_t count = checked_block_count(code.x_alphabet, code.n, budget);
  // Under P, M-hat = f(X^n) and Y^n = g(f(X^n)) with the pairing fixed at
  // construction; any mismatch means the tables were broken afterwards.
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint32_t m_hat = code.encoder[i];
    const std::uint32_t m_orig = exp.encoder_snapshot()[i];
    if (m_hat >= code.M() || code.codewords[m_hat] != exp.codeword_snapshot()[m_orig])
      throw InvariantViolation("error_probability_P: g(f(x)) pairing broken since construction");
  }
  return 0.0;
}

double error_probability_P_sampled(const ChannelExperiment& exp, const Simplex& source,
                                   std::uint64_t samples, std::uint64_t seed) {
  const BlockCode& code = exp.code();
  if (source.size() != code.x_alphabet)
    throw std::invalid_argument("error_probability_P_sampled: alphabet mismatch");
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> x(static_cast<std::size_t>(code.n));
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (auto& sym : x) {
      const double u = next_uniform(rng);
      double acc = 0.0;
      std::size_t pick = source.size() - 1;
      for (std::size_t c = 0; c + 1 < source.size(); ++c) {
        acc += source[c];
        if (u < acc) {
          pick = c;
          break;
        }
      }
      sym = static_cast<std::uint8_t>(pick);
    }
    const std::uint64_t i = index_from_block(x, code.x_alphabet);
    const std::uint32_t m_hat = code.encoder[i];
    if (m_hat >= code.M() || code.codewords[m_hat] != exp.codeword_snapshot()[exp.encoder_snapshot()[i]])
      throw InvariantViolation("error_probability_P_sampled: g(f(x)) pairing broken");
  }
  return 0.0;
}

double tv_lower_bound(const ChannelExperiment& exp, std::uint64_t budget) {
  const double q_err = error_probability_Q_exact(exp, budget).probability;
  const double p_err = error_probability_P(exp, budget);
  return std::max(0.0, q_err - p_err);
}

ExtensionAudit extend_with_message(const InducedPair& pair) {
  const BlockCode& code = pair.code();
  ExtensionAudit audit;
  audit.tv_unextended = tv_joint(pair);

  // Full enumeration over (x-block, distinct codeword, message): both
  // extended joints carry the factor 1{m = f(x)}.
  Kahan acc;
  std::vector<std::uint8_t> block;
  for (std::uint64_t i = 0; i < pair.x_block_count(); ++i) {
    block_from_index(i, code.n, pair.source().size(), block);
    const double p = pair.p_mass(i);
    const auto& px_word = code.reconstruction(i);
    for (const auto& w : pair.codeword_masses()) {
      const double p_ext = (w.word == px_word) ? p : 0.0;
      const double q_ext = pair.q_mass(block, w.word);
      acc.add(std::abs(p_ext - q_ext));
    }
  }
  audit.tv_extended = 0.5 * acc.sum;
  return audit;
}

}  // namespace itlab
