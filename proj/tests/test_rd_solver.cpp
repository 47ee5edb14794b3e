#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "itlab/rd_solver.hpp"

using namespace itlab;

namespace {

double h2_nats(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log(p) - (1.0 - p) * std::log(1.0 - p);
}

// Independent grid-search oracle for R(D): exhaustive grid over forward
// channels, refined by repeated local shrinkage around the incumbent. The
// problem is convex in the channel, so shrinking local grids converge to the
// global minimum.
struct GridOracle {
  const Simplex& p;
  const DistortionMeasure& d;
  double target_D;

  double info(const std::vector<double>& w) const {
    std::vector<double> q(d.ny(), 0.0);
    for (std::size_t x = 0; x < d.nx(); ++x)
      for (std::size_t y = 0; y < d.ny(); ++y) q[y] += p[x] * w[x * d.ny() + y];
    double acc = 0.0;
    for (std::size_t x = 0; x < d.nx(); ++x)
      for (std::size_t y = 0; y < d.ny(); ++y) {
        const double v = w[x * d.ny() + y];
        if (v > 0.0) acc += p[x] * v * std::log(v / q[y]);
      }
    return acc;
  }

  double dist(const std::vector<double>& w) const {
    double acc = 0.0;
    for (std::size_t x = 0; x < d.nx(); ++x)
      for (std::size_t y = 0; y < d.ny(); ++y) acc += p[x] * w[x * d.ny() + y] * d(x, y);
    return acc;
  }

  // Enumerate per-row compositions with denominator `steps` around a center
  // channel restricted to +/- span grid cells, keep the feasible minimum.
  void search(std::vector<double>& best, double& best_info, const std::vector<double>& center,
              double cell, int span, int steps) const {
    const std::size_t ny = d.ny();
    std::vector<std::vector<std::vector<double>>> row_choices(d.nx());
    for (std::size_t x = 0; x < d.nx(); ++x) {
      // All lattice rows within span cells of the center row.
      std::vector<int> base(ny);
      for (std::size_t y = 0; y < ny; ++y)
        base[y] = static_cast<int>(std::lround(center[x * ny + y] / cell));
      std::vector<int> cur(ny, 0);
      std::vector<std::vector<double>> rows;
      const int total = steps;
      // Recursive enumeration over the first ny-1 coordinates.
      std::vector<int> offs(ny - 1, -span);
      while (true) {
        int sum = 0;
        bool ok = true;
        for (std::size_t y = 0; y + 1 < ny; ++y) {
          cur[y] = base[y] + offs[y];
          if (cur[y] < 0 || cur[y] > total) ok = false;
          sum += cur[y];
        }
        if (ok) {
          cur[ny - 1] = total - sum;
          if (cur[ny - 1] >= 0 && cur[ny - 1] <= total) {
            std::vector<double> row(ny);
            for (std::size_t y = 0; y < ny; ++y) row[y] = static_cast<double>(cur[y]) * cell;
            rows.push_back(std::move(row));
          }
        }
        std::size_t k = 0;
        while (k + 1 < ny && offs[k] == span) {
          offs[k] = -span;
          ++k;
        }
        if (k + 1 >= ny) break;
        ++offs[k];
      }
      row_choices[x] = std::move(rows);
    }

    std::vector<std::size_t> pick(d.nx(), 0);
    std::vector<double> w(d.nx() * ny);
    while (true) {
      for (std::size_t x = 0; x < d.nx(); ++x)
        for (std::size_t y = 0; y < ny; ++y) w[x * ny + y] = row_choices[x][pick[x]][y];
      if (dist(w) <= target_D + 1e-12) {
        const double i = info(w);
        if (i < best_info) {
          best_info = i;
          best = w;
        }
      }
      std::size_t k = 0;
      while (k < d.nx() && pick[k] + 1 == row_choices[k].size()) {
        pick[k] = 0;
        ++k;
      }
      if (k >= d.nx()) break;
      ++pick[k];
    }
  }

  double minimum_rate() const {
    // Coarse pass: full grid with steps0 cells per row.
    const int steps0 = 14;
    std::vector<double> center(d.nx() * d.ny(), 0.0);
    std::vector<double> best;
    double best_info = kInfinity;
    search(best, best_info, center, 1.0 / steps0, steps0, steps0);
    REQUIRE(std::isfinite(best_info));
    // Refinement passes: double resolution, local window around incumbent.
    int steps = steps0;
    for (int level = 0; level < 18; ++level) {
      steps *= 2;
      std::vector<double> c = best;
      double refined = best_info;
      std::vector<double> refined_w = best;
      search(refined_w, refined, c, 1.0 / steps, 3, steps);
      best = refined_w;
      best_info = refined;
    }
    return best_info;
  }
};

}  // namespace

TEST_CASE("binary uniform Hamming matches closed form") {
  const Simplex p = Simplex::uniform(2);
  const DistortionMeasure d = DistortionMeasure::hamming(2);
  for (double D : {0.05, 0.11, 0.2, 0.35, 0.45}) {
    const RdSolution sol = solve_rd(p, d, D, 1e-10);
    CHECK(sol.rate == doctest::Approx(std::log(2.0) - h2_nats(D)).epsilon(1e-8));
    CHECK(sol.distortion <= D + 1e-9);
    CHECK(mutual_information(sol.joint()) == doctest::Approx(sol.rate).epsilon(1e-10));
  }
}

TEST_CASE("binary-uniform closed form also matches the grid oracle") {
  const Simplex p = Simplex::uniform(2);
  const DistortionMeasure d = DistortionMeasure::hamming(2);
  GridOracle oracle{p, d, 0.2};
  const double r = oracle.minimum_rate();
  CHECK(r == doctest::Approx(std::log(2.0) - h2_nats(0.2)).epsilon(1e-5));
}

TEST_CASE("ternary uniform Hamming matches grid oracle") {
  const Simplex p = Simplex::uniform(3);
  const DistortionMeasure d = DistortionMeasure::hamming(3);
  GridOracle oracle{p, d, 0.2};
  const double oracle_rate = oracle.minimum_rate();
  const RdSolution sol = solve_rd(p, d, 0.2, 1e-10);
  CHECK(std::abs(sol.rate - oracle_rate) < 1e-3);
}

TEST_CASE("degenerate target gives zero rate") {
  const Simplex p({0.3, 0.7});
  const DistortionMeasure d = DistortionMeasure::hamming(2);
  // Best constant output is y=1 with distortion 0.3.
  const RdSolution sol = solve_rd(p, d, 0.5, 1e-9);
  CHECK(sol.degenerate);
  CHECK(sol.rate == doctest::Approx(0.0));
  CHECK(sol.distortion == doctest::Approx(0.3));
}

TEST_CASE("solver input validation") {
  const DistortionMeasure d = DistortionMeasure::hamming(2);
  CHECK_THROWS(solve_rd(Simplex::uniform(2), d, -0.1, 1e-9));
  CHECK_THROWS(solve_rd(Simplex({1.0, 0.0}), d, 0.1, 1e-9));
  CHECK_THROWS(DistortionMeasure(2, 2, {0.5, 1.0, 0.0, 1.0}));  // unnormalized row
  CHECK_THROWS(DistortionMeasure(2, 2, {0.0, -1.0, 1.0, 0.0}));
}

TEST_CASE("backward channel Bayes inversion") {
  // Uniform X through BSC: backward is the same BSC.
  const Channel bsc = Channel::bsc(0.15);
  const Channel back = backward_channel(Simplex::uniform(2), bsc);
  CHECK(back(0, 0) == doctest::Approx(0.85));
  CHECK(back(1, 0) == doctest::Approx(0.15));

  // Identity forward: backward identity for any full-support source.
  const Channel id_back = backward_channel(Simplex({0.2, 0.8}), Channel::identity(2));
  CHECK(id_back(0, 0) == doctest::Approx(1.0));
  CHECK(id_back(1, 1) == doctest::Approx(1.0));

  // Random full-support 2x3 forward against a direct Bayes oracle.
  const Simplex p({0.35, 0.65});
  const Channel fwd(2, 3, {0.5, 0.3, 0.2, 0.1, 0.6, 0.3});
  const Channel b = backward_channel(p, fwd);
  for (std::size_t y = 0; y < 3; ++y) {
    double marg = 0.0;
    for (std::size_t x = 0; x < 2; ++x) marg += p[x] * fwd(x, y);
    for (std::size_t x = 0; x < 2; ++x)
      CHECK(b(y, x) == doctest::Approx(p[x] * fwd(x, y) / marg).epsilon(1e-12));
  }

  // Zero-marginal output symbol must be rejected.
  const Channel dead_col(2, 2, {1.0, 0.0, 1.0, 0.0});
  CHECK_THROWS_AS(backward_channel(Simplex::uniform(2), dead_col), std::invalid_argument);
}

TEST_CASE("alphabet reduction") {
  const Simplex p = Simplex::uniform(2);

  SUBCASE("full-support solution unchanged") {
    const DistortionMeasure d = DistortionMeasure::hamming(2);
    const RdSolution sol = solve_rd(p, d, 0.2, 1e-9);
    const RdSolution red = reduce_alphabet(sol, d, 0.2, 1e-9);
    CHECK(red.reduced_alphabet.size() == 2);
    CHECK(red.rate == doctest::Approx(sol.rate));
  }

  SUBCASE("binary-Hamming just below 1/2 keeps both outputs") {
    const DistortionMeasure d = DistortionMeasure::hamming(2);
    const RdSolution sol = solve_rd(p, d, 0.47, 1e-9);
    const RdSolution red = reduce_alphabet(sol, d, 0.47, 1e-9);
    CHECK(red.reduced_alphabet.size() == 2);
    // Closed-form output marginal is uniform by symmetry.
    CHECK(red.output_marginal[0] == doctest::Approx(0.5).epsilon(1e-6));
  }

  SUBCASE("dominated reproduction symbol is removed without rate change") {
    // Column 2 is strictly worse than column 0 for every source letter.
    const DistortionMeasure d(2, 3, {0.0, 1.0, 2.0, 1.0, 0.0, 3.0});
    const RdSolution sol = solve_rd(p, d, 0.2, 1e-9);
    const RdSolution red = reduce_alphabet(sol, d, 0.2, 1e-9);
    CHECK(red.reduced_alphabet == std::vector<std::size_t>{0, 1});
    const DistortionMeasure dh = DistortionMeasure::hamming(2);
    const RdSolution ref = solve_rd(p, dh, 0.2, 1e-9);
    CHECK(std::abs(red.rate - ref.rate) < 1e-4);
    CHECK(check_membership_A(red.joint()));
  }

  SUBCASE("threshold removing everything raises") {
    const DistortionMeasure d = DistortionMeasure::hamming(2);
    const RdSolution sol = solve_rd(p, d, 0.2, 1e-9);
    CHECK_THROWS(reduce_alphabet(sol, d, 0.2, 1e-9, 2.0));
  }
}

TEST_CASE("membership in A") {
  CHECK(check_membership_A(JointLaw(2, 2, {0.25, 0.25, 0.25, 0.25})));
  CHECK_FALSE(check_membership_A(JointLaw(2, 2, {0.5, 0.25, 0.0, 0.25})));
  // Zero-marginal column is exempt.
  CHECK(check_membership_A(JointLaw(2, 2, {0.5, 0.0, 0.5, 0.0})));

  const RdSolution sol = solve_rd(Simplex::uniform(2), DistortionMeasure::hamming(2), 0.2, 1e-9);
  const RdSolution red = reduce_alphabet(sol, DistortionMeasure::hamming(2), 0.2, 1e-9);
  CHECK(check_membership_A(red.joint()));
}

TEST_CASE("rate nonincreasing in D") {
  const Simplex p({0.25, 0.45, 0.3});
  const DistortionMeasure d = DistortionMeasure::hamming(3);
  double prev = kInfinity;
  for (double D : {0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6}) {
    const RdSolution sol = solve_rd(p, d, D, 1e-9);
    CHECK(sol.rate <= prev + 1e-9);
    CHECK(mutual_information(sol.joint()) == doctest::Approx(sol.rate).epsilon(1e-8));
    // Feasibility: source marginal preserved, distortion within target.
    const Simplex mx = marginal_x(sol.joint());
    for (std::size_t x = 0; x < 3; ++x) CHECK(mx[x] == doctest::Approx(p[x]).epsilon(1e-12));
    CHECK(sol.distortion <= D + 1e-8);
    prev = sol.rate;
  }
}

TEST_CASE("backward uniqueness probe") {
  const DistortionMeasure dh = DistortionMeasure::hamming(2);
  const UniquenessProbeReport rep =
      backward_uniqueness_probe(Simplex::uniform(2), dh, 0.11, 10, 99);
  CHECK(rep.failed_restarts == 0);
  CHECK(rep.max_deviation < 1e-6);

  // Degenerate D >= D_max: all restarts give the same zero-rate law.
  const UniquenessProbeReport deg =
      backward_uniqueness_probe(Simplex({0.3, 0.7}), dh, 0.8, 4, 5);
  CHECK(deg.max_deviation == doctest::Approx(0.0));

  // Duplicate reproduction columns are merged before comparison.
  const DistortionMeasure dup(2, 3, {0.0, 1.0, 1.0, 1.0, 0.0, 0.0});
  const UniquenessProbeReport tied =
      backward_uniqueness_probe(Simplex::uniform(2), dup, 0.15, 6, 123);
  CHECK(tied.failed_restarts == 0);
  CHECK(tied.max_deviation < 1e-6);
}
