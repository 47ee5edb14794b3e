#include "itlab/induced.hpp"

#include <algorithm>
#include <cmath>
#include <map>

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

}  // namespace

InducedPair::InducedPair(BlockCode code, Simplex source, Channel backward_full,
                         std::uint64_t budget)
    : code_(std::move(code)), source_(std::move(source)), backward_(std::move(backward_full)) {
  code_.validate();
  if (source_.size() != code_.x_alphabet)
    throw std::invalid_argument("InducedPair: source/code alphabet mismatch");
  if (backward_.input_size() != code_.y_alphabet || backward_.output_size() != source_.size())
    throw std::invalid_argument("InducedPair: backward channel shape mismatch");
  count_ = checked_block_count(source_.size(), code_.n, budget);

  std::vector<double> log_source(source_.size());
  for (std::size_t s = 0; s < source_.size(); ++s)
    log_source[s] = source_[s] > 0.0 ? std::log(source_[s]) : -kInfinity;
  log_px_.resize(count_);
  std::vector<std::uint8_t> block;
  for (std::uint64_t i = 0; i < count_; ++i) {
    block_from_index(i, code_.n, source_.size(), block);
    double acc = 0.0;
    for (std::uint8_t s : block) acc += log_source[s];
    log_px_[i] = acc;
  }

  // Distinct codewords with multiplicities (Q_{Y^n}) and encoded mass (P_{Y^n}).
  std::map<std::vector<std::uint8_t>, std::uint32_t> ids;
  word_of_msg_.resize(code_.codewords.size());
  for (std::size_t m = 0; m < code_.codewords.size(); ++m) {
    auto [it, inserted] = ids.try_emplace(code_.codewords[m], static_cast<std::uint32_t>(words_.size()));
    if (inserted) words_.push_back({code_.codewords[m], 0.0, 0.0});
    word_of_msg_[m] = it->second;
    words_[it->second].q += 1.0 / static_cast<double>(code_.M());
  }
  for (std::uint64_t i = 0; i < count_; ++i)
    words_[word_of_msg_[code_.encoder[i]]].p += std::exp(log_px_[i]);
}

double InducedPair::q_codebook_mass(const std::vector<std::uint8_t>& y_block) const {
  for (const auto& w : words_)
    if (w.word == y_block) return w.q;
  return 0.0;
}

double InducedPair::log_q_mass(const std::vector<std::uint8_t>& x_block,
                               const std::vector<std::uint8_t>& y_block) const {
  const double qy = q_codebook_mass(y_block);
  if (qy <= 0.0) return -kInfinity;
  double acc = std::log(qy);
  for (std::size_t i = 0; i < x_block.size(); ++i) {
    const double w = backward_(y_block[i], x_block[i]);
    if (w <= 0.0) return -kInfinity;
    acc += std::log(w);
  }
  return acc;
}

double InducedPair::q_mass(const std::vector<std::uint8_t>& x_block,
                           const std::vector<std::uint8_t>& y_block) const {
  const double lq = log_q_mass(x_block, y_block);
  return lq > -kInfinity ? std::exp(lq) : 0.0;
}

namespace {

// Log of the per-letter backward factor along the reconstruction of x-block i;
// -inf when some factor is zero.
double log_backward_product(const InducedPair& pair, const std::vector<std::uint8_t>& x_block,
                            const std::vector<std::uint8_t>& y_block) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x_block.size(); ++i) {
    const double w = pair.backward()(y_block[i], x_block[i]);
    if (w <= 0.0) return -kInfinity;
    acc += std::log(w);
  }
  return acc;
}

}  // namespace

double normalized_divergence(const InducedPair& pair) {
  const auto& code = pair.code();
  Kahan acc;
  std::vector<std::uint8_t> block;
  // Per-message log Q_{Y^n} so the word lookup happens once per message.
  std::vector<double> log_qy(code.M());
  for (std::size_t m = 0; m < code.M(); ++m)
    log_qy[m] = std::log(pair.q_codebook_mass(code.codewords[m]));

  for (std::uint64_t i = 0; i < pair.x_block_count(); ++i) {
    const double lp = pair.log_p_mass(i);
    if (lp == -kInfinity) continue;
    block_from_index(i, code.n, pair.source().size(), block);
    const std::uint32_t m = code.encoder[i];
    const double lw = log_backward_product(pair, block, code.codewords[m]);
    if (lw == -kInfinity) return kInfinity;
    acc.add(std::exp(lp) * (lp - log_qy[m] - lw));
  }
  return std::max(0.0, acc.sum) / pair.n();
}

ChainRuleTerms chain_rule_terms(const InducedPair& pair) {
  const auto& code = pair.code();
  ChainRuleTerms out;

  Kahan t2;
  for (const auto& w : pair.codeword_masses())
    if (w.p > 0.0) t2.add(w.p * std::log(w.p / w.q));
  out.term2 = std::max(0.0, t2.sum);

  // Per-message log P_{Y^n}.
  std::map<std::vector<std::uint8_t>, double> word_log;
  for (const auto& w : pair.codeword_masses())
    word_log[w.word] = w.p > 0.0 ? std::log(w.p) : -kInfinity;
  std::vector<double> log_py(code.M());
  for (std::size_t m = 0; m < code.M(); ++m) log_py[m] = word_log.at(code.codewords[m]);

  Kahan t1;
  std::vector<std::uint8_t> block;
  for (std::uint64_t i = 0; i < pair.x_block_count(); ++i) {
    const double lp = pair.log_p_mass(i);
    if (lp == -kInfinity) continue;
    block_from_index(i, code.n, pair.source().size(), block);
    const std::uint32_t m = code.encoder[i];
    const double lw = log_backward_product(pair, block, code.codewords[m]);
    if (lw == -kInfinity) {
      out.term1 = kInfinity;
      return out;
    }
    t1.add(std::exp(lp) * (lp - log_py[m] - lw));
  }
  out.term1 = std::max(0.0, t1.sum);
  return out;
}

double normalized_output_entropy(const InducedPair& pair) {
  Kahan acc;
  for (const auto& w : pair.codeword_masses())
    if (w.p > 0.0) acc.add(-w.p * std::log(w.p));
  return std::max(0.0, acc.sum) / pair.n();
}

double normalized_block_mi(const InducedPair& pair) {
  // Deterministic code: P(x^n, y^n) = P(x^n) on its support, so
  // I(X^n;Y^n) = sum_x P(x) log(1 / P_{Y^n}(g(f(x)))) = H(Y^n).
  const auto& code = pair.code();
  std::vector<double> log_py(code.M(), -kInfinity);
  for (std::size_t m = 0; m < code.M(); ++m)
    for (const auto& w : pair.codeword_masses())
      if (w.word == code.codewords[m] && w.p > 0.0) log_py[m] = std::log(w.p);

  Kahan acc;
  for (std::uint64_t i = 0; i < pair.x_block_count(); ++i) {
    const double lp = pair.log_p_mass(i);
    if (lp == -kInfinity) continue;
    acc.add(std::exp(lp) * (-log_py[code.encoder[i]]));
  }
  return std::max(0.0, acc.sum) / pair.n();
}

JointLaw averaged_single_letter_marginal(const InducedPair& pair) {
  const auto& code = pair.code();
  const std::size_t nx = pair.source().size(), ny = code.y_alphabet;
  std::vector<Kahan> cells(nx * ny);
  std::vector<std::uint8_t> block;
  for (std::uint64_t i = 0; i < pair.x_block_count(); ++i) {
    const double p = pair.p_mass(i);
    if (p <= 0.0) continue;
    block_from_index(i, code.n, nx, block);
    const auto& cw = code.reconstruction(i);
    const double unit = p / code.n;  // p * type increment 1/n
    for (int k = 0; k < code.n; ++k)
      cells[block[static_cast<std::size_t>(k)] * ny + cw[static_cast<std::size_t>(k)]].add(unit);
  }
  std::vector<double> mass(nx * ny);
  for (std::size_t i = 0; i < mass.size(); ++i) mass[i] = cells[i].sum;
  return JointLaw(nx, ny, std::move(mass));
}

JointLaw averaged_single_letter_marginal_direct(const InducedPair& pair) {
  const auto& code = pair.code();
  const std::size_t nx = pair.source().size(), ny = code.y_alphabet;
  std::vector<double> mass(nx * ny, 0.0);
  std::vector<std::uint8_t> block;
  // Outer loop over positions: accumulate P_{X_i Y_i}, then average.
  for (int k = 0; k < code.n; ++k) {
    std::vector<double> pos(nx * ny, 0.0);
    for (std::uint64_t i = 0; i < pair.x_block_count(); ++i) {
      const double p = pair.p_mass(i);
      if (p <= 0.0) continue;
      block_from_index(i, code.n, nx, block);
      const auto& cw = code.reconstruction(i);
      pos[block[static_cast<std::size_t>(k)] * ny + cw[static_cast<std::size_t>(k)]] += p;
    }
    for (std::size_t c = 0; c < mass.size(); ++c) mass[c] += pos[c] / code.n;
  }
  return JointLaw(nx, ny, std::move(mass));
}

double tv_joint(const InducedPair& pair) {
  // TV = 1/2 [ (1 - sum_x Q(x, y(x))) + sum_x |P(x) - Q(x, y(x))| ]:
  // P lives only on (x, g(f(x))); all other Q mass counts in full.
  const auto& code = pair.code();
  std::vector<double> log_qy(code.M());
  for (std::size_t m = 0; m < code.M(); ++m)
    log_qy[m] = std::log(pair.q_codebook_mass(code.codewords[m]));

  Kahan on_support_q, abs_diff;
  std::vector<std::uint8_t> block;
  for (std::uint64_t i = 0; i < pair.x_block_count(); ++i) {
    block_from_index(i, code.n, pair.source().size(), block);
    const std::uint32_t m = code.encoder[i];
    const double lw = log_backward_product(pair, block, code.codewords[m]);
    const double q = lw > -kInfinity ? std::exp(log_qy[m] + lw) : 0.0;
    const double p = pair.p_mass(i);
    on_support_q.add(q);
    abs_diff.add(std::abs(p - q));
  }
  const double tv = 0.5 * ((1.0 - on_support_q.sum) + abs_diff.sum);
  return std::clamp(tv, 0.0, 1.0);
}

}  // namespace itlab
