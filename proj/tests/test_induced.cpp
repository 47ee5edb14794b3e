#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "itlab/induced.hpp"

using namespace itlab;

namespace {

std::vector<std::uint8_t> blk(std::uint64_t idx, std::uint64_t base, int n) {
  std::vector<std::uint8_t> out;
  block_from_index(idx, n, base, out);
  return out;
}

// n=1 identity code over a binary alphabet.
BlockCode identity_code() {
  BlockCode c;
  c.n = 1;
  c.x_alphabet = 2;
  c.y_alphabet = 2;
  c.codewords = {{0}, {1}};
  c.encoder = {0, 1};
  return c;
}

// n=2 binary code with codewords {00, 11}, min-Hamming encoder.
BlockCode repetition2() {
  BlockCode c;
  c.n = 2;
  c.x_alphabet = 2;
  c.y_alphabet = 2;
  c.codewords = {{0, 0}, {1, 1}};
  c.encoder = {0, 0, 1, 1};  // 00,01 -> 00; 10,11 -> 11 (lowest-index ties)
  return c;
}

}  // namespace

TEST_CASE("q mass hand products") {
  const Channel back = Channel::bsc(0.2);  // backward P_{X|Y}
  const InducedPair pair(repetition2(), Simplex::uniform(2), back);

  CHECK(pair.q_codebook_mass({0, 0}) == doctest::Approx(0.5));
  CHECK(pair.q_codebook_mass({1, 1}) == doctest::Approx(0.5));
  CHECK(pair.q_codebook_mass({0, 1}) == doctest::Approx(0.0));

  // Q(x=01, y=00) = 0.5 * P(0|0) P(1|0) = 0.5 * 0.8 * 0.2.
  CHECK(pair.q_mass({0, 1}, {0, 0}) == doctest::Approx(0.5 * 0.8 * 0.2).epsilon(1e-15));
  CHECK(pair.q_mass({0, 1}, {0, 1}) == doctest::Approx(0.0));
  CHECK(std::exp(pair.log_q_mass({1, 1}, {1, 1})) == doctest::Approx(0.5 * 0.64).epsilon(1e-14));

  // P side: uniform source, so each x-block has mass 1/4.
  CHECK(pair.p_mass(0) == doctest::Approx(0.25));

  // Duplicate codewords accumulate multiplicity in Q_{Y^n}.
  BlockCode dup = repetition2();
  dup.codewords.push_back({0, 0});
  dup.encoder = {0, 0, 1, 1};
  const InducedPair pd(dup, Simplex::uniform(2), back);
  CHECK(pd.q_codebook_mass({0, 0}) == doctest::Approx(2.0 / 3.0));
  CHECK(pd.q_codebook_mass({1, 1}) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("normalized divergence against direct enumeration") {
  const Channel back = Channel::bsc(0.3);
  const Simplex src({0.6, 0.4});
  const BlockCode code = repetition2();
  const InducedPair pair(code, src, back);

  // Direct oracle: sum over all 4 x-blocks of P(x) log(P(x)/Q(x, y(x))).
  const Simplex px = product_extension(src, 2);
  double acc = 0.0;
  for (std::uint64_t xi = 0; xi < 4; ++xi) {
    const auto xb = blk(xi, 2, 2);
    const auto& yb = code.reconstruction(xi);
    acc += px[xi] * std::log(px[xi] / pair.q_mass(xb, yb));
  }
  CHECK(normalized_divergence(pair) == doctest::Approx(acc / 2.0).epsilon(1e-12));
  CHECK(normalized_divergence(pair) >= 0.0);
}

TEST_CASE("divergence infinity sentinel on support violation") {
  // Backward channel with P(0|1)=0 while the code maps mass onto y=1 blocks
  // from x-blocks containing the symbol 0.
  const Channel back(2, 2, {1.0, 0.0, 0.0, 1.0});
  BlockCode c = repetition2();
  c.encoder = {0, 1, 1, 1};  // x=01 -> codeword 11, but P(x=0|y=1)=0
  const InducedPair pair(c, Simplex::uniform(2), back);
  CHECK(std::isinf(normalized_divergence(pair)));
  // Chain rule splits the infinity into term1.
  const ChainRuleTerms t = chain_rule_terms(pair);
  CHECK(std::isinf(t.term1));
}

TEST_CASE("chain rule identity") {
  const Channel back = Channel::bsc(0.25);
  for (double p0 : {0.5, 0.35}) {
    const Simplex src({p0, 1.0 - p0});
    const InducedPair pair(repetition2(), src, back);
    const ChainRuleTerms t = chain_rule_terms(pair);
    CHECK(t.term1 >= -1e-12);
    CHECK(t.term2 >= -1e-12);
    CHECK((t.term1 + t.term2) / 2.0 ==
          doctest::Approx(normalized_divergence(pair)).epsilon(1e-9));
  }
}

TEST_CASE("P equals Q for the saturating identity code") {
  // n=1, codebook = whole alphabet, source uniform, backward consistent with
  // a uniform output marginal: P and Q coincide exactly.
  const Channel back = Channel::bsc(0.0);  // X = Y a.s.
  const InducedPair pair(identity_code(), Simplex::uniform(2), back);
  CHECK(normalized_divergence(pair) == doctest::Approx(0.0));
  CHECK(tv_joint(pair) == doctest::Approx(0.0));
  const ChainRuleTerms t = chain_rule_terms(pair);
  CHECK(t.term1 == doctest::Approx(0.0));
  CHECK(t.term2 == doctest::Approx(0.0));
}

TEST_CASE("output entropy and block mutual information") {
  const Channel back = Channel::bsc(0.2);
  const Simplex src({0.7, 0.3});
  const BlockCode code = repetition2();
  const InducedPair pair(code, src, back);

  // P_{Y^n} is concentrated on the two codewords with masses equal to the
  // encoded source mass: P(00) = p(00)+p(01), P(11) = p(10)+p(11).
  const double p00 = 0.49 + 0.21, p11 = 0.21 + 0.09;
  const double h = -(p00 * std::log(p00) + p11 * std::log(p11));
  CHECK(normalized_output_entropy(pair) == doctest::Approx(h / 2.0).epsilon(1e-12));
  // Deterministic code: (1/n) I(X^n;Y^n) = (1/n) H(Y^n).
  CHECK(normalized_block_mi(pair) == doctest::Approx(h / 2.0).epsilon(1e-12));

  // Sandwich: (1/n) H(Y^n) <= rate = log(M)/n.
  CHECK(normalized_output_entropy(pair) <= code.rate() + 1e-12);

  // term2 = log M - H(Y^n) only when Q_{Y^n} is uniform on distinct words;
  // with distinct codewords here that identity holds.
  const ChainRuleTerms t = chain_rule_terms(pair);
  CHECK(t.term2 == doctest::Approx(std::log(2.0) - h).epsilon(1e-10));
}

TEST_CASE("expectation of empirical types equals averaged marginal") {
  const Channel back = Channel::bsc(0.15);
  const Simplex src({0.55, 0.45});
  BlockCode c;
  c.n = 3;
  c.x_alphabet = 2;
  c.y_alphabet = 2;
  c.codewords = {{0, 0, 0}, {1, 1, 0}};
  c.encoder = min_distortion_encoder(3, 2, c.codewords, DistortionMeasure::hamming(2));
  const InducedPair pair(c, src, back);

  const JointLaw a = averaged_single_letter_marginal(pair);
  const JointLaw b = averaged_single_letter_marginal_direct(pair);
  CHECK(variational_distance(a, b) < 1e-12);

  // Both routes must be proper joints with the product source marginal.
  const Simplex mx = marginal_x(a);
  CHECK(mx[0] == doctest::Approx(0.55).epsilon(1e-12));
}

TEST_CASE("tv joint") {
  const Channel back = Channel::bsc(0.2);

  SUBCASE("constant code reduces to a single-letter distance") {
    // M=1, codeword 0^n: P puts mass p(x^n) on (x^n, 0^n); Q puts
    // prod P_{X|Y}(x_i|0) on the same support. TV of the blocks equals TV of
    // the product laws, computable directly.
    const Simplex src({0.6, 0.4});
    BlockCode c;
    c.n = 2;
    c.x_alphabet = 2;
    c.y_alphabet = 2;
    c.codewords = {{0, 0}};
    c.encoder = {0, 0, 0, 0};
    const InducedPair pair(c, src, back);
    const Simplex px = product_extension(src, 2);
    double acc = 0.0;
    for (std::uint64_t xi = 0; xi < 4; ++xi) {
      const auto xb = blk(xi, 2, 2);
      double q = 1.0;
      for (auto s : xb) q *= back(0, s);
      acc += std::abs(px[xi] - q);
    }
    CHECK(tv_joint(pair) == doctest::Approx(acc / 2.0).epsilon(1e-12));
  }

  SUBCASE("bounds and Pinsker consistency") {
    const Simplex src = Simplex::uniform(2);
    const InducedPair pair(repetition2(), src, back);
    const double tv = tv_joint(pair);
    const double nd = normalized_divergence(pair);
    CHECK(tv >= 0.0);
    CHECK(tv <= 1.0);
    CHECK(tv <= std::sqrt(2.0 * nd / 2.0) + 1e-12);  // D(P||Q) = n * nd
  }
}

TEST_CASE("enumeration budget is enforced") {
  const Channel back = Channel::bsc(0.2);
  BlockCode c = repetition2();
  CHECK_THROWS_AS(InducedPair(c, Simplex::uniform(2), back, /*budget=*/2), ResourceError);
}
