#include "itlab/rd_solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace itlab {

namespace {

constexpr double kRetainEps = 1e-12;  // dust threshold for "positive marginal" inside the solver

double expected_distortion(const Simplex& p, const Channel& fwd, const DistortionMeasure& d) {
  double acc = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = 0; y < fwd.output_size(); ++y) acc += p[x] * fwd(x, y) * d(x, y);
  return acc;
}

Simplex output_marginal_of(const Simplex& p, const Channel& fwd) {
  std::vector<double> q(fwd.output_size(), 0.0);
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = 0; y < fwd.output_size(); ++y) q[y] += p[x] * fwd(x, y);
  for (double& v : q) v = std::max(0.0, v);
  double total = 0.0;
  for (double v : q) total += v;
  for (double& v : q) v /= total;
  return Simplex(std::move(q));
}

double rate_of(const Simplex& p, const Channel& fwd) {
  const Simplex q = output_marginal_of(p, fwd);
  double acc = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = 0; y < fwd.output_size(); ++y) {
      const double w = fwd(x, y);
      if (p[x] > 0.0 && w > 0.0) acc += p[x] * w * std::log(w / q[y]);
    }
  return std::max(0.0, acc);
}

struct BaResult {
  Channel forward;
  double rate = 0.0;
  double dist = 0.0;
  std::uint64_t iters = 0;
  bool converged = false;
};

// Alternating minimization at fixed slope s: forward rows proportional to
// q(y) exp(-s d(x,y)), then q <- output marginal. Row weights handled in
// log space so large s does not underflow a whole row.
BaResult ba_fixed_slope(const Simplex& p, const DistortionMeasure& d, double s,
                        std::vector<double> q, const RdSolverOptions& opts) {
  const std::size_t nx = d.nx(), ny = d.ny();
  std::vector<double> fwd(nx * ny, 0.0);
  BaResult res{Channel::identity(1)};

  auto update_forward = [&]() {
    for (std::size_t x = 0; x < nx; ++x) {
      double best = -kInfinity;
      for (std::size_t y = 0; y < ny; ++y) {
        const double lw = q[y] > 0.0 ? std::log(q[y]) - s * d(x, y) : -kInfinity;
        fwd[x * ny + y] = lw;
        best = std::max(best, lw);
      }
      double row_sum = 0.0;
      for (std::size_t y = 0; y < ny; ++y) {
        fwd[x * ny + y] = fwd[x * ny + y] > -kInfinity ? std::exp(fwd[x * ny + y] - best) : 0.0;
        row_sum += fwd[x * ny + y];
      }
      for (std::size_t y = 0; y < ny; ++y) fwd[x * ny + y] /= row_sum;
    }
  };

  std::uint64_t it = 0;
  for (; it < opts.max_inner_iters; ++it) {
    update_forward();
    std::vector<double> qnew(ny, 0.0);
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < ny; ++y) qnew[y] += p[x] * fwd[x * ny + y];
    double delta = 0.0;
    for (std::size_t y = 0; y < ny; ++y) delta += std::abs(qnew[y] - q[y]);
    q = std::move(qnew);
    if (delta < opts.inner_tol) {
      res.converged = true;
      ++it;
      break;
    }
  }
  update_forward();

  Channel forward(nx, ny, fwd);
  res.forward = forward;
  res.rate = rate_of(p, forward);
  res.dist = expected_distortion(p, forward, d);
  res.iters = it;
  return res;
}

std::vector<double> initial_q(std::size_t ny, const RdSolverOptions& opts) {
  std::vector<double> q(ny, 1.0 / static_cast<double>(ny));
  if (opts.init_seed != 0 && opts.init_noise > 0.0) {
    std::mt19937_64 rng(opts.init_seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double total = 0.0;
    for (double& v : q) {
      v *= 1.0 + opts.init_noise * u(rng);
      total += v;
    }
    for (double& v : q) v /= total;
  }
  return q;
}

RdSolution make_solution(const Simplex& source, const DistortionMeasure& d, const Channel& forward,
                         double slope, std::uint64_t iters, bool converged) {
  const Simplex q = output_marginal_of(source, forward);
  std::vector<std::size_t> retained;
  for (std::size_t y = 0; y < q.size(); ++y)
    if (q[y] > kRetainEps) retained.push_back(y);

  // Backward rows over retained symbols only.
  std::vector<double> back(retained.size() * source.size());
  for (std::size_t k = 0; k < retained.size(); ++k) {
    const std::size_t y = retained[k];
    for (std::size_t x = 0; x < source.size(); ++x)
      back[k * source.size() + x] = source[x] * forward(x, y) / q[y];
    double row_sum = 0.0;
    for (std::size_t x = 0; x < source.size(); ++x) row_sum += back[k * source.size() + x];
    for (std::size_t x = 0; x < source.size(); ++x) back[k * source.size() + x] /= row_sum;
  }

  RdSolution sol{.rate = rate_of(source, forward),
                 .distortion = expected_distortion(source, forward, d),
                 .slope = slope,
                 .source = source,
                 .forward = forward,
                 .backward = Channel(retained.size(), source.size(), std::move(back)),
                 .output_marginal = q,
                 .reduced_alphabet = std::move(retained),
                 .degenerate = false,
                 .iterations = iters,
                 .converged = converged};
  return sol;
}

}  // namespace

DistortionMeasure::DistortionMeasure(std::size_t nx, std::size_t ny, std::vector<double> entries)
    : nx_(nx), ny_(ny), d_(std::move(entries)) {
  if (nx_ == 0 || ny_ == 0 || d_.size() != nx_ * ny_)
    throw std::invalid_argument("DistortionMeasure: bad shape");
  for (std::size_t x = 0; x < nx_; ++x) {
    double row_min = kInfinity;
    for (std::size_t y = 0; y < ny_; ++y) {
      if (!(d_[x * ny_ + y] >= 0.0)) throw std::invalid_argument("DistortionMeasure: negative entry");
      row_min = std::min(row_min, d_[x * ny_ + y]);
    }
    if (std::abs(row_min) > 1e-12)
      throw std::invalid_argument("DistortionMeasure: rows must have minimum 0 (normalize first)");
  }
}

DistortionMeasure DistortionMeasure::hamming(std::size_t k) {
  std::vector<double> d(k * k, 1.0);
  for (std::size_t i = 0; i < k; ++i) d[i * k + i] = 0.0;
  return DistortionMeasure(k, k, std::move(d));
}

DistortionMeasure DistortionMeasure::restrict_outputs(const std::vector<std::size_t>& keep,
                                                      const Simplex& source, double* shift) const {
  if (keep.empty()) throw std::invalid_argument("restrict_outputs: empty alphabet");
  std::vector<double> sub(nx_ * keep.size());
  double expected_min = 0.0;
  for (std::size_t x = 0; x < nx_; ++x) {
    double row_min = kInfinity;
    for (std::size_t k = 0; k < keep.size(); ++k) {
      sub[x * keep.size() + k] = d_[x * ny_ + keep[k]];
      row_min = std::min(row_min, sub[x * keep.size() + k]);
    }
    for (std::size_t k = 0; k < keep.size(); ++k) sub[x * keep.size() + k] -= row_min;
    expected_min += source[x] * row_min;
  }
  if (shift) *shift = expected_min;
  return DistortionMeasure(nx_, keep.size(), std::move(sub));
}

RdSolution solve_rd(const Simplex& source, const DistortionMeasure& d, double target_D, double tol,
                    const RdSolverOptions& opts) {
  if (source.size() != d.nx()) throw std::invalid_argument("solve_rd: shape mismatch");
  if (!source.strictly_positive())
    throw std::invalid_argument("solve_rd: source must be strictly positive");
  if (!(target_D > 0.0)) throw std::invalid_argument("solve_rd: target_D must be > 0");

  // Zero-rate boundary: best constant reproduction.
  double best_const = kInfinity;
  std::size_t best_y = 0;
  for (std::size_t y = 0; y < d.ny(); ++y) {
    double ed = 0.0;
    for (std::size_t x = 0; x < d.nx(); ++x) ed += source[x] * d(x, y);
    if (ed < best_const) {
      best_const = ed;
      best_y = y;
    }
  }
  if (target_D >= best_const) {
    std::vector<double> fwd(d.nx() * d.ny(), 0.0);
    for (std::size_t x = 0; x < d.nx(); ++x) fwd[x * d.ny() + best_y] = 1.0;
    RdSolution sol = make_solution(source, d, Channel(d.nx(), d.ny(), std::move(fwd)), 0.0, 0, true);
    sol.degenerate = true;
    return sol;
  }

  // Bracket the slope: D(s) is nonincreasing, D(s) -> 0 as s -> infinity.
  double lo = 0.0, hi = 1.0;
  BaResult res_hi = ba_fixed_slope(source, d, hi, initial_q(d.ny(), opts), opts);
  std::uint64_t total_iters = res_hi.iters;
  bool all_converged = res_hi.converged;
  int doublings = 0;
  while (res_hi.dist > target_D && doublings < 80) {
    lo = hi;
    hi *= 2.0;
    res_hi = ba_fixed_slope(source, d, hi, initial_q(d.ny(), opts), opts);
    total_iters += res_hi.iters;
    all_converged = all_converged && res_hi.converged;
    ++doublings;
  }
  BaResult res_lo = ba_fixed_slope(source, d, lo, initial_q(d.ny(), opts), opts);
  total_iters += res_lo.iters;

  for (std::uint64_t i = 0; i < opts.max_bisect_iters; ++i) {
    if (std::abs(res_hi.dist - target_D) <= tol || hi - lo < 1e-14 * (1.0 + hi)) break;
    const double mid = 0.5 * (lo + hi);
    BaResult res = ba_fixed_slope(source, d, mid, initial_q(d.ny(), opts), opts);
    total_iters += res.iters;
    all_converged = all_converged && res.converged;
    if (res.dist > target_D) {
      lo = mid;
      res_lo = res;
    } else {
      hi = mid;
      res_hi = res;
    }
  }

  if (std::abs(res_hi.dist - target_D) <= tol)
    return make_solution(source, d, res_hi.forward, hi, total_iters, all_converged);

  // Slope bracket collapsed without hitting the target: linear segment of the
  // curve. Time-share the two endpoint channels to meet the distortion exactly.
  const double gap = res_lo.dist - res_hi.dist;
  const double lambda = gap > 0.0 ? (target_D - res_hi.dist) / gap : 0.0;
  std::vector<double> mixed(d.nx() * d.ny());
  for (std::size_t i = 0; i < mixed.size(); ++i)
    mixed[i] = lambda * res_lo.forward.row_major()[i] + (1.0 - lambda) * res_hi.forward.row_major()[i];
  return make_solution(source, d, Channel(d.nx(), d.ny(), std::move(mixed)), hi, total_iters,
                       all_converged);
}

Channel backward_channel(const Simplex& source, const Channel& forward, double zero_tol) {
  if (source.size() != forward.input_size())
    throw std::invalid_argument("backward_channel: shape mismatch");
  const Simplex q = output_marginal_of(source, forward);
  for (std::size_t y = 0; y < q.size(); ++y)
    if (q[y] <= zero_tol)
      throw std::invalid_argument(
          "backward_channel: output symbol " + std::to_string(y) +
          " has zero marginal; remove it with reduce_alphabet before inverting");
  std::vector<double> back(q.size() * source.size());
  for (std::size_t y = 0; y < q.size(); ++y) {
    double row_sum = 0.0;
    for (std::size_t x = 0; x < source.size(); ++x) {
      back[y * source.size() + x] = source[x] * forward(x, y) / q[y];
      row_sum += back[y * source.size() + x];
    }
    for (std::size_t x = 0; x < source.size(); ++x) back[y * source.size() + x] /= row_sum;
  }
  return Channel(q.size(), source.size(), std::move(back));
}

RdSolution reduce_alphabet(const RdSolution& sol, const DistortionMeasure& d, double target_D,
                           double tol, double threshold, const RdSolverOptions& opts) {
  std::vector<std::size_t> keep;
  for (std::size_t y = 0; y < sol.output_marginal.size(); ++y)
    if (sol.output_marginal[y] >= threshold) keep.push_back(y);
  if (keep.empty())
    throw std::invalid_argument("reduce_alphabet: threshold removes every output symbol");
  if (keep.size() == sol.output_marginal.size()) return sol;

  double shift = 0.0;
  const DistortionMeasure sub = d.restrict_outputs(keep, sol.source, &shift);
  const double sub_target = std::max(target_D - shift, tol);
  RdSolution reduced = solve_rd(sol.source, sub, sub_target, tol, opts);
  // Report indices in terms of the original reproduction alphabet.
  for (std::size_t& y : reduced.reduced_alphabet) y = keep[y];
  return reduced;
}

bool check_membership_A(const JointLaw& joint) {
  const Simplex py = marginal_y(joint);
  for (std::size_t y = 0; y < joint.ny(); ++y) {
    if (py[y] <= 0.0) continue;  // unretained symbol, exempt
    for (std::size_t x = 0; x < joint.nx(); ++x)
      if (joint(x, y) <= 0.0) return false;
  }
  return true;
}

UniquenessProbeReport backward_uniqueness_probe(const Simplex& source, const DistortionMeasure& d,
                                                double target_D, std::uint64_t num_restarts,
                                                std::uint64_t seed, double tol) {
  if (num_restarts < 2) throw std::invalid_argument("backward_uniqueness_probe: need >= 2 restarts");

  // Canonical merge of duplicate reproduction columns: symmetric ties between
  // identical columns are resolved by keeping the first.
  std::vector<std::size_t> keep;
  for (std::size_t y = 0; y < d.ny(); ++y) {
    bool dup = false;
    for (std::size_t prev : keep) {
      bool same = true;
      for (std::size_t x = 0; x < d.nx(); ++x)
        if (std::abs(d(x, y) - d(x, prev)) > 1e-12) {
          same = false;
          break;
        }
      if (same) {
        dup = true;
        break;
      }
    }
    if (!dup) keep.push_back(y);
  }
  double shift = 0.0;
  const DistortionMeasure merged = d.restrict_outputs(keep, source, &shift);

  UniquenessProbeReport report;
  report.restarts = num_restarts;
  std::vector<RdSolution> solutions;
  for (std::uint64_t r = 0; r < num_restarts; ++r) {
    RdSolverOptions opts;
    opts.init_seed = seed + r + 1;
    opts.init_noise = 0.5;
    RdSolution sol = solve_rd(source, merged, target_D, tol, opts);
    sol = reduce_alphabet(sol, merged, target_D, tol, 1e-9, opts);
    if (!sol.converged) {
      ++report.failed_restarts;
      continue;
    }
    solutions.push_back(std::move(sol));
  }

  for (std::size_t a = 0; a < solutions.size(); ++a)
    for (std::size_t b = a + 1; b < solutions.size(); ++b) {
      const auto& A = solutions[a];
      const auto& B = solutions[b];
      // Compare backward rows on the intersection of retained alphabets.
      for (std::size_t i = 0; i < A.reduced_alphabet.size(); ++i)
        for (std::size_t j = 0; j < B.reduced_alphabet.size(); ++j) {
          if (A.reduced_alphabet[i] != B.reduced_alphabet[j]) continue;
          for (std::size_t x = 0; x < source.size(); ++x)
            report.max_deviation =
                std::max(report.max_deviation, std::abs(A.backward(i, x) - B.backward(j, x)));
        }
    }
  return report;
}

}  // namespace itlab
