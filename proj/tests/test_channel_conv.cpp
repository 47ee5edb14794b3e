#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "itlab/channel_conv.hpp"

using namespace itlab;

namespace {

BlockCode identity_code() {
  BlockCode c;
  c.n = 1;
  c.x_alphabet = 2;
  c.y_alphabet = 2;
  c.codewords = {{0}, {1}};
  c.encoder = {0, 1};
  return c;
}

BlockCode repetition2() {
  BlockCode c;
  c.n = 2;
  c.x_alphabet = 2;
  c.y_alphabet = 2;
  c.codewords = {{0, 0}, {1, 1}};
  c.encoder = {0, 0, 1, 1};
  return c;
}

}  // namespace

TEST_CASE("single-message code has zero error under Q") {
  BlockCode c;
  c.n = 2;
  c.x_alphabet = 2;
  c.y_alphabet = 2;
  c.codewords = {{0, 0}};
  c.encoder = {0, 0, 0, 0};
  const ChannelExperiment exp(c, Channel::bsc(0.3));
  CHECK(error_probability_Q_exact(exp).probability == doctest::Approx(0.0));
  CHECK(error_probability_P(exp) == doctest::Approx(0.0));
  CHECK(tv_lower_bound(exp) == doctest::Approx(0.0));
}

TEST_CASE("identity code over a BSC backward channel") {
  // Message m -> codeword y=m -> X ~ BSC(eps)(y) -> decode f(x)=x. The
  // decoded message differs from m exactly when the channel flips, so
  // Q(E) = eps for both messages.
  const double eps = 0.17;
  const BlockCode code = identity_code();
  const ChannelExperiment exp(code, Channel::bsc(eps));
  const ErrorEstimate q = error_probability_Q_exact(exp);
  CHECK(q.exact);
  CHECK(q.probability == doctest::Approx(eps).epsilon(1e-14));
  CHECK(error_probability_P(exp) == doctest::Approx(0.0));
  CHECK(tv_lower_bound(exp) == doctest::Approx(eps).epsilon(1e-14));
}

TEST_CASE("repetition code exact error by hand") {
  // Codewords 00 and 11 over backward BSC(eps); decoder maps 00,01->m0 and
  // 10,11->m1. From m0 (y=00): error iff first letter flips -> eps.
  // Same for m1 by symmetry, so Q(E) = eps.
  const double eps = 0.2;
  const BlockCode code = repetition2();
  const ChannelExperiment exp(code, Channel::bsc(eps));
  CHECK(error_probability_Q_exact(exp).probability == doctest::Approx(eps).epsilon(1e-14));
}

TEST_CASE("monte carlo agrees with exact within three standard errors") {
  const BlockCode code = repetition2();
  const ChannelExperiment exp(code, Channel::bsc(0.23));
  const double exact = error_probability_Q_exact(exp).probability;
  const ErrorEstimate mc = error_probability_Q_monte_carlo(exp, 300000, 11);
  CHECK_FALSE(mc.exact);
  CHECK(mc.standard_error > 0.0);
  CHECK(std::abs(mc.probability - exact) < 3.0 * mc.standard_error + 1e-4);
}

TEST_CASE("bijective decoder required") {
  BlockCode dup = repetition2();
  dup.codewords = {{0, 0}, {0, 0}};
  CHECK_THROWS_AS(ChannelExperiment(dup, Channel::bsc(0.1)), ConfigError);
}

TEST_CASE("corrupting the pairing trips the P-side audit") {
  BlockCode code = repetition2();
  const ChannelExperiment exp(code, Channel::bsc(0.1));
  CHECK(error_probability_P(exp) == doctest::Approx(0.0));
  code.encoder[0] = 1;  // break f/g consistency after the snapshot
  CHECK_THROWS_AS(error_probability_P(exp), InvariantViolation);
}

TEST_CASE("sampled P-side audit") {
  const BlockCode code = repetition2();
  const ChannelExperiment exp(code, Channel::bsc(0.1));
  CHECK(error_probability_P_sampled(exp, Simplex::uniform(2), 20000, 5) == doctest::Approx(0.0));
}

TEST_CASE("message extension preserves variational distance") {
  const Channel back = Channel::bsc(0.2);
  for (double p0 : {0.5, 0.65}) {
    const InducedPair pair(repetition2(), Simplex({p0, 1.0 - p0}), back);
    const ExtensionAudit audit = extend_with_message(pair);
    CHECK(std::abs(audit.tv_extended - audit.tv_unextended) < 1e-12);
    CHECK(audit.tv_unextended == doctest::Approx(tv_joint(pair)).epsilon(1e-14));
  }
}

TEST_CASE("error gap lower-bounds the joint distance") {
  const Channel back = Channel::bsc(0.25);
  const BlockCode code = repetition2();
  const InducedPair pair(code, Simplex::uniform(2), back);
  const ChannelExperiment exp(code, back);
  CHECK(tv_lower_bound(exp) <= tv_joint(pair) + 1e-12);
}
