#include "itlab/codes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace itlab {

namespace {

// Portable uniform doubles / discrete sampling so that seeded runs are
// bit-reproducible across standard libraries.
double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t sample_simplex(const Simplex& p, std::mt19937_64& rng) {
  const double u = next_uniform(rng);
  double acc = 0.0;
  for (std::size_t s = 0; s + 1 < p.size(); ++s) {
    acc += p[s];
    if (u < acc) return s;
  }
  return p.size() - 1;
}

std::vector<double> block_log_probs(const Simplex& source, int n, std::uint64_t count) {
  std::vector<double> logp(source.size());
  for (std::size_t s = 0; s < source.size(); ++s)
    logp[s] = source[s] > 0.0 ? std::log(source[s]) : -kInfinity;
  std::vector<double> out(count);
  std::vector<std::uint8_t> block;
  for (std::uint64_t i = 0; i < count; ++i) {
    block_from_index(i, n, source.size(), block);
    double acc = 0.0;
    for (std::uint8_t s : block) acc += logp[s];
    out[i] = acc;
  }
  return out;
}

double code_expected_distortion(const BlockCode& code, const Simplex& source,
                                const DistortionMeasure& d) {
  const std::uint64_t count = pow_u64(source.size(), code.n);
  double acc = 0.0;
  std::vector<std::uint8_t> block;
  for (std::uint64_t i = 0; i < count; ++i) {
    block_from_index(i, code.n, source.size(), block);
    double p = 1.0;
    for (std::uint8_t s : block) p *= source[s];
    acc += p * block_distortion(block, code.reconstruction(i), d);
  }
  return acc;
}

double tv_type_to_target(const std::vector<std::uint32_t>& counts, int n, const JointLaw& target) {
  double acc = 0.0;
  const auto& t = target.mass();
  for (std::size_t i = 0; i < t.size(); ++i)
    acc += std::abs(static_cast<double>(counts[i]) / n - t[i]);
  return 0.5 * acc;
}

}  // namespace

bool BlockCode::decoder_bijective() const {
  std::vector<std::vector<std::uint8_t>> sorted = codewords;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

void BlockCode::validate() const {
  const std::uint64_t count = pow_u64(x_alphabet, n);
  if (encoder.size() != count) throw InvariantViolation("BlockCode: encoder not total");
  if (codewords.empty()) throw InvariantViolation("BlockCode: empty codebook");
  for (std::uint32_t m : encoder)
    if (m >= codewords.size()) throw InvariantViolation("BlockCode: encoder message out of range");
  for (const auto& cw : codewords) {
    if (cw.size() != static_cast<std::size_t>(n)) throw InvariantViolation("BlockCode: codeword length");
    for (std::uint8_t s : cw)
      if (s >= y_alphabet) throw InvariantViolation("BlockCode: codeword symbol out of range");
  }
}

double block_distortion(const std::vector<std::uint8_t>& x, const std::vector<std::uint8_t>& y,
                        const DistortionMeasure& d) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += d(x[i], y[i]);
  return acc / static_cast<double>(x.size());
}

std::vector<std::uint32_t> min_distortion_encoder(
    int n, std::size_t x_alphabet, const std::vector<std::vector<std::uint8_t>>& codewords,
    const DistortionMeasure& d, std::uint64_t budget) {
  const std::uint64_t count = checked_block_count(x_alphabet, n, budget);
  std::vector<std::uint32_t> enc(count);
  std::vector<std::uint8_t> block;
  for (std::uint64_t i = 0; i < count; ++i) {
    block_from_index(i, n, x_alphabet, block);
    double best = kInfinity;
    std::uint32_t best_m = 0;
    for (std::uint32_t m = 0; m < codewords.size(); ++m) {
      double dist = 0.0;
      const auto& cw = codewords[m];
      for (int k = 0; k < n; ++k) dist += d(block[static_cast<std::size_t>(k)], cw[static_cast<std::size_t>(k)]);
      if (dist < best) {
        best = dist;
        best_m = m;
      }
    }
    enc[i] = best_m;
  }
  return enc;
}

BlockCode optimal_code_exhaustive(const Simplex& source, const DistortionMeasure& d, int n,
                                  std::uint64_t M, std::uint64_t search_budget,
                                  std::uint64_t block_budget) {
  const std::uint64_t ycount = pow_u64(d.ny(), n);
  // Number of M-multisets of Y^n, C(ycount + M - 1, M), against the budget.
  double multisets = 1.0;
  for (std::uint64_t k = 0; k < M; ++k)
    multisets *= static_cast<double>(ycount + k) / static_cast<double>(k + 1);
  if (multisets > static_cast<double>(search_budget))
    throw ResourceError("optimal_code_exhaustive: search space too large; use lloyd_code instead");

  std::vector<std::vector<std::uint8_t>> all_words(ycount);
  for (std::uint64_t i = 0; i < ycount; ++i) block_from_index(i, n, d.ny(), all_words[i]);

  BlockCode best;
  double best_dist = kInfinity;

  // Non-decreasing index sequences enumerate multisets in lexicographic order,
  // so ties resolve to the lexicographically first codebook.
  std::vector<std::uint64_t> pick(M, 0);
  bool done = false;
  while (!done) {
    BlockCode cand;
    cand.n = n;
    cand.x_alphabet = source.size();
    cand.y_alphabet = d.ny();
    cand.codewords.reserve(M);
    for (std::uint64_t idx : pick) cand.codewords.push_back(all_words[idx]);
    cand.encoder = min_distortion_encoder(n, source.size(), cand.codewords, d, block_budget);
    const double dist = code_expected_distortion(cand, source, d);
    if (dist < best_dist - 1e-15) {
      best_dist = dist;
      best = std::move(cand);
    }
    // Advance the multiset.
    int pos = static_cast<int>(M) - 1;
    while (pos >= 0 && pick[static_cast<std::size_t>(pos)] == ycount - 1) --pos;
    if (pos < 0) {
      done = true;
    } else {
      const std::uint64_t v = pick[static_cast<std::size_t>(pos)] + 1;
      for (std::size_t k = static_cast<std::size_t>(pos); k < M; ++k) pick[k] = v;
    }
  }
  return best;
}

BlockCode lloyd_code(const Simplex& source, const DistortionMeasure& d, int n, std::uint64_t M,
                     std::uint64_t seed, std::uint64_t max_iters, std::uint64_t budget) {
  const std::uint64_t count = checked_block_count(source.size(), n, budget);
  std::mt19937_64 rng(seed);

  BlockCode code;
  code.n = n;
  code.x_alphabet = source.size();
  code.y_alphabet = d.ny();
  code.codewords.assign(M, std::vector<std::uint8_t>(static_cast<std::size_t>(n)));
  for (auto& cw : code.codewords)
    for (auto& s : cw) s = static_cast<std::uint8_t>(rng() % d.ny());

  std::vector<std::uint8_t> block;
  double prev = kInfinity;
  for (std::uint64_t it = 0; it < max_iters; ++it) {
    code.encoder = min_distortion_encoder(n, source.size(), code.codewords, d, budget);

    // Centroid step decomposes per position for additive distortion:
    // cost[m][i][y] = sum over blocks in cell m of P(x) d(x_i, y).
    std::vector<double> cost(M * static_cast<std::size_t>(n) * d.ny(), 0.0);
    std::vector<double> cell_mass(M, 0.0);
    for (std::uint64_t i = 0; i < count; ++i) {
      block_from_index(i, n, source.size(), block);
      double p = 1.0;
      for (std::uint8_t s : block) p *= source[s];
      const std::uint32_t m = code.encoder[i];
      cell_mass[m] += p;
      for (int k = 0; k < n; ++k)
        for (std::size_t y = 0; y < d.ny(); ++y)
          cost[(m * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)) * d.ny() + y] +=
              p * d(block[static_cast<std::size_t>(k)], y);
    }
    for (std::uint64_t m = 0; m < M; ++m) {
      if (cell_mass[m] <= 0.0) continue;  // empty cell: keep current codeword
      for (int k = 0; k < n; ++k) {
        double best = kInfinity;
        std::uint8_t best_y = 0;
        for (std::size_t y = 0; y < d.ny(); ++y) {
          const double c = cost[(m * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)) * d.ny() + y];
          if (c < best - 1e-18) {
            best = c;
            best_y = static_cast<std::uint8_t>(y);
          }
        }
        code.codewords[m][static_cast<std::size_t>(k)] = best_y;
      }
    }
    code.encoder = min_distortion_encoder(n, source.size(), code.codewords, d, budget);
    const double dist = code_expected_distortion(code, source, d);
    if (dist >= prev - 1e-15) break;
    prev = dist;
  }
  code.encoder = min_distortion_encoder(n, source.size(), code.codewords, d, budget);
  return code;
}

BlockCode lloyd_code_best(const Simplex& source, const DistortionMeasure& d, int n, std::uint64_t M,
                          std::uint64_t seed, std::uint64_t restarts, std::uint64_t budget) {
  BlockCode best;
  double best_dist = kInfinity;
  for (std::uint64_t r = 0; r < std::max<std::uint64_t>(restarts, 1); ++r) {
    BlockCode cand = lloyd_code(source, d, n, M, seed + r, 1000, budget);
    const double dist = code_expected_distortion(cand, source, d);
    if (dist < best_dist - 1e-15) {
      best_dist = dist;
      best = std::move(cand);
    }
  }
  return best;
}

double rate_schedule(double base_rate, int n, double delta) {
  return base_rate + std::pow(static_cast<double>(n), -0.5 + delta);
}

BlockCode random_coordination_code(const RdSolution& rd, const DistortionMeasure& d, int n,
                                   double rate, std::uint64_t seed, bool distinct,
                                   std::uint64_t budget) {
  const std::uint64_t M =
      static_cast<std::uint64_t>(std::ceil(std::exp(static_cast<double>(n) * rate)));
  checked_block_count(rd.source.size(), n, budget);

  std::size_t support = 0;
  for (std::size_t y = 0; y < rd.output_marginal.size(); ++y)
    if (rd.output_marginal[y] > 0.0) ++support;
  if (distinct && M > pow_u64(support, n))
    throw ConfigError("random_coordination_code: cannot draw " + std::to_string(M) +
                      " distinct codewords from a support of size " + std::to_string(support) +
                      "^" + std::to_string(n));

  std::mt19937_64 rng(seed);
  BlockCode code;
  code.n = n;
  code.x_alphabet = rd.source.size();
  code.y_alphabet = rd.output_marginal.size();
  code.codewords.assign(M, std::vector<std::uint8_t>(static_cast<std::size_t>(n)));

  const std::uint64_t max_attempts = 2000 * M + 10000;
  std::uint64_t attempts = 0;
  for (std::uint64_t m = 0; m < M; ++m) {
    while (true) {
      if (++attempts > max_attempts)
        throw InvariantViolation("random_coordination_code: distinct resampling budget exhausted");
      for (auto& s : code.codewords[m])
        s = static_cast<std::uint8_t>(sample_simplex(rd.output_marginal, rng));
      if (!distinct) break;
      bool dup = false;
      for (std::uint64_t k = 0; k < m; ++k)
        if (code.codewords[k] == code.codewords[m]) {
          dup = true;
          break;
        }
      if (!dup) break;
    }
  }
  code.encoder = min_distortion_encoder(n, rd.source.size(), code.codewords, d, budget);
  return code;
}

BlockCode append_pathological_codeword(const BlockCode& code, const Channel& backward_full,
                                       std::size_t x, std::size_t y) {
  if (y >= backward_full.input_size() || x >= backward_full.output_size())
    throw std::invalid_argument("append_pathological_codeword: symbol out of range");
  if (backward_full(y, x) > 0.0)
    throw std::invalid_argument(
        "append_pathological_codeword: pair has positive backward mass; nothing pathological here");

  BlockCode out = code;
  out.codewords.emplace_back(static_cast<std::size_t>(code.n), static_cast<std::uint8_t>(y));
  const std::vector<std::uint8_t> xblock(static_cast<std::size_t>(code.n),
                                         static_cast<std::uint8_t>(x));
  const std::uint64_t x_index = index_from_block(xblock, code.x_alphabet);
  out.encoder[x_index] = static_cast<std::uint32_t>(out.codewords.size() - 1);
  return out;
}

GoodnessReport goodness_report(const BlockCode& code, const Simplex& source,
                               const DistortionMeasure& d, const JointLaw& target_joint,
                               double target_rate, std::uint64_t budget, std::uint64_t mc_samples,
                               std::uint64_t mc_seed) {
  GoodnessReport rep;
  rep.rate_gap = code.rate() - target_rate;
  const std::uint64_t count = pow_u64(source.size(), code.n);
  std::vector<std::uint32_t> counts(source.size() * d.ny());
  std::vector<std::uint8_t> block;

  if (count <= budget) {
    rep.exact = true;
    double dist_acc = 0.0, tv_acc = 0.0;
    for (std::uint64_t i = 0; i < count; ++i) {
      block_from_index(i, code.n, source.size(), block);
      double p = 1.0;
      for (std::uint8_t s : block) p *= source[s];
      const auto& cw = code.reconstruction(i);
      std::fill(counts.begin(), counts.end(), 0u);
      double dist = 0.0;
      for (int k = 0; k < code.n; ++k) {
        ++counts[block[static_cast<std::size_t>(k)] * d.ny() + cw[static_cast<std::size_t>(k)]];
        dist += d(block[static_cast<std::size_t>(k)], cw[static_cast<std::size_t>(k)]);
      }
      dist_acc += p * dist / code.n;
      tv_acc += p * tv_type_to_target(counts, code.n, target_joint);
    }
    rep.expected_distortion = dist_acc;
    rep.expected_tv_to_target = tv_acc;
    return rep;
  }

  if (mc_samples == 0) throw ResourceError("goodness_report: enumeration over budget and sampling disabled");
  rep.exact = false;
  rep.samples = mc_samples;
  std::mt19937_64 rng(mc_seed);
  double dist_acc = 0.0, tv_acc = 0.0, tv_sq = 0.0;
  block.resize(static_cast<std::size_t>(code.n));
  for (std::uint64_t s = 0; s < mc_samples; ++s) {
    for (auto& sym : block) sym = static_cast<std::uint8_t>(sample_simplex(source, rng));
    const std::uint64_t i = index_from_block(block, source.size());
    const auto& cw = code.reconstruction(i);
    std::fill(counts.begin(), counts.end(), 0u);
    double dist = 0.0;
    for (int k = 0; k < code.n; ++k) {
      ++counts[block[static_cast<std::size_t>(k)] * d.ny() + cw[static_cast<std::size_t>(k)]];
      dist += d(block[static_cast<std::size_t>(k)], cw[static_cast<std::size_t>(k)]);
    }
    const double tv = tv_type_to_target(counts, code.n, target_joint);
    dist_acc += dist / code.n;
    tv_acc += tv;
    tv_sq += tv * tv;
  }
  const double nS = static_cast<double>(mc_samples);
  rep.expected_distortion = dist_acc / nS;
  rep.expected_tv_to_target = tv_acc / nS;
  const double var = std::max(0.0, tv_sq / nS - rep.expected_tv_to_target * rep.expected_tv_to_target);
  rep.tv_standard_error = std::sqrt(var / nS);
  return rep;
}

}  // namespace itlab
