#include "itlab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "itlab/serialize.hpp"

namespace itlab {

namespace {

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

DistortionMeasure normalized_distortion(std::size_t nx, std::size_t ny, std::vector<double> m) {
  for (std::size_t x = 0; x < nx; ++x) {
    double row_min = kInfinity;
    for (std::size_t y = 0; y < ny; ++y) row_min = std::min(row_min, m[x * ny + y]);
    for (std::size_t y = 0; y < ny; ++y) m[x * ny + y] -= row_min;
  }
  return DistortionMeasure(nx, ny, std::move(m));
}

// Surrogate distortion for coordination targets: -log of the target joint,
// capped on zero cells, rows shifted to minimum zero.
DistortionMeasure surrogate_distortion(const JointLaw& joint) {
  constexpr double kCap = 1e3;
  std::vector<double> m(joint.nx() * joint.ny());
  for (std::size_t x = 0; x < joint.nx(); ++x)
    for (std::size_t y = 0; y < joint.ny(); ++y) {
      const double p = joint(x, y);
      m[x * joint.ny() + y] = p > 0.0 ? std::min(-std::log(p), kCap) : kCap;
    }
  return normalized_distortion(joint.nx(), joint.ny(), std::move(m));
}

}  // namespace

void ExperimentConfig::validate() const {
  if (!target_joint && (!source || !distortion))
    throw ConfigError("config: need source+distortion or target_joint");
  if (!(target_d > 0.0)) throw ConfigError("config: target_d must be > 0");
  if (!(delta > 0.0)) throw ConfigError("config: delta must be > 0");
  for (std::size_t i = 1; i < n_grid.size(); ++i)
    if (n_grid[i] <= n_grid[i - 1]) throw ConfigError("config: n_grid must be strictly increasing");
  if (n_grid.empty()) throw ConfigError("config: empty n_grid");
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  if (j.contains("source"))
    cfg.source = Simplex(j.at("source").at("mass").get<std::vector<double>>());
  if (j.contains("distortion")) {
    const auto rows = j.at("distortion").at("matrix").get<std::vector<std::vector<double>>>();
    std::vector<double> flat;
    for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    cfg.distortion = normalized_distortion(rows.size(), rows.front().size(), std::move(flat));
  }
  if (j.contains("target_joint")) {
    const auto rows = j.at("target_joint").at("mass").get<std::vector<std::vector<double>>>();
    std::vector<double> flat;
    for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    cfg.target_joint = JointLaw(rows.size(), rows.front().size(), std::move(flat));
  }
  if (j.contains("target_d")) cfg.target_d = j.at("target_d").get<double>();
  if (j.contains("delta")) cfg.delta = j.at("delta").get<double>();
  if (j.contains("n_grid")) cfg.n_grid = j.at("n_grid").get<std::vector<int>>();
  if (j.contains("d_grid")) cfg.d_grid = j.at("d_grid").get<std::vector<double>>();
  if (j.contains("constructor")) {
    const std::string c = j.at("constructor").get<std::string>();
    if (c == "exhaustive")
      cfg.constructor = CodeConstructor::kExhaustive;
    else if (c == "lloyd")
      cfg.constructor = CodeConstructor::kLloyd;
    else if (c == "random")
      cfg.constructor = CodeConstructor::kRandom;
    else
      throw ConfigError("config: unknown constructor " + c);
  }
  if (j.contains("rate_mode")) {
    const std::string r = j.at("rate_mode").get<std::string>();
    if (r == "base")
      cfg.rate_mode = RateMode::kBase;
    else if (r == "schedule")
      cfg.rate_mode = RateMode::kSchedule;
    else
      throw ConfigError("config: unknown rate_mode " + r);
  }
  if (j.contains("distinct_codewords")) cfg.distinct_codewords = j.at("distinct_codewords").get<bool>();
  if (j.contains("append_pathological")) {
    const auto xy = j.at("append_pathological").get<std::vector<std::size_t>>();
    if (xy.size() != 2) throw ConfigError("config: append_pathological needs [x, y]");
    cfg.append_pathological = std::make_pair(xy[0], xy[1]);
  }
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("lloyd_restarts")) cfg.lloyd_restarts = j.at("lloyd_restarts").get<std::uint64_t>();
  if (j.contains("budget")) cfg.budget = j.at("budget").get<std::uint64_t>();
  if (j.contains("mc_samples")) cfg.mc_samples = j.at("mc_samples").get<std::uint64_t>();
  if (j.contains("solver_tol")) cfg.solver_tol = j.at("solver_tol").get<double>();
  if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: parse failure: ") + e.what());
  }
  return from_json(j);
}

ReducedProblem solve_and_reduce(const Simplex& source, const DistortionMeasure& d, double target_d,
                                double tol, double threshold) {
  DistortionMeasure cur = d;
  double cur_target = target_d;
  std::vector<std::size_t> kept(d.ny());
  for (std::size_t y = 0; y < d.ny(); ++y) kept[y] = y;

  for (int round = 0; round < 8; ++round) {
    RdSolution sol = solve_rd(source, cur, cur_target, tol);
    std::vector<std::size_t> keep;
    for (std::size_t y = 0; y < sol.output_marginal.size(); ++y)
      if (sol.output_marginal[y] >= threshold) keep.push_back(y);
    if (keep.empty()) throw InvariantViolation("solve_and_reduce: reduction emptied the alphabet");
    if (keep.size() == sol.output_marginal.size())
      return {std::move(cur), cur_target, std::move(sol), std::move(kept)};
    double shift = 0.0;
    DistortionMeasure next = cur.restrict_outputs(keep, source, &shift);
    cur = std::move(next);
    cur_target = std::max(cur_target - shift, tol);
    std::vector<std::size_t> new_kept(keep.size());
    for (std::size_t k = 0; k < keep.size(); ++k) new_kept[k] = kept[keep[k]];
    kept = std::move(new_kept);
  }
  throw InvariantViolation("solve_and_reduce: alphabet reduction did not stabilize");
}

SweepContext build_context(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.target_joint) {
    const JointLaw& joint = *cfg.target_joint;
    Simplex source = marginal_x(joint);
    if (!source.strictly_positive())
      throw ConfigError("context: coordination target needs a strictly positive source marginal");
    const Simplex py = marginal_y(joint);
    const ConditionedChannel back = condition_x_given_y(joint);
    for (bool def : back.defined)
      if (!def) throw ConfigError("context: coordination target has a zero-mass output symbol");
    const ConditionedChannel fwd = condition_y_given_x(joint);
    DistortionMeasure d = surrogate_distortion(joint);
    RdSolution rd{.rate = mutual_information(joint),
                  .distortion = 0.0,
                  .slope = 0.0,
                  .source = source,
                  .forward = fwd.rows,
                  .backward = back.rows,
                  .output_marginal = py,
                  .reduced_alphabet = {},
                  .degenerate = false,
                  .iterations = 0,
                  .converged = true};
    for (std::size_t y = 0; y < joint.ny(); ++y) rd.reduced_alphabet.push_back(y);
    double dist = 0.0;
    for (std::size_t x = 0; x < joint.nx(); ++x)
      for (std::size_t y = 0; y < joint.ny(); ++y) dist += joint(x, y) * d(x, y);
    rd.distortion = dist;
    return SweepContext{std::move(source), std::move(d),      joint,
                        back.rows,         rd.rate,           cfg.target_d,
                        std::move(rd)};
  }

  ReducedProblem red = solve_and_reduce(*cfg.source, *cfg.distortion, cfg.target_d, cfg.solver_tol);
  JointLaw target = red.rd.joint();
  Channel backward_full = backward_channel(*cfg.source, red.rd.forward);
  const double rate = mutual_information(target);
  return SweepContext{*cfg.source,        std::move(red.distortion), std::move(target),
                      std::move(backward_full), rate,                red.target_d,
                      std::move(red.rd)};
}

BlockCode build_code(const ExperimentConfig& cfg, const SweepContext& ctx, int n) {
  const double base = ctx.target_rate;
  const double rate =
      cfg.rate_mode == RateMode::kSchedule ? rate_schedule(base, n, cfg.delta) : base;
  const std::uint64_t M =
      std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(std::exp(n * rate))));

  BlockCode code;
  switch (cfg.constructor) {
    case CodeConstructor::kExhaustive:
      code = optimal_code_exhaustive(ctx.source, ctx.distortion, n, M, 2'000'000, cfg.budget);
      break;
    case CodeConstructor::kLloyd:
      code = lloyd_code_best(ctx.source, ctx.distortion, n, M, cfg.seed + static_cast<std::uint64_t>(n),
                             cfg.lloyd_restarts, cfg.budget);
      break;
    case CodeConstructor::kRandom:
      code = random_coordination_code(ctx.rd, ctx.distortion, n, rate,
                                      cfg.seed + static_cast<std::uint64_t>(n),
                                      cfg.distinct_codewords, cfg.budget);
      break;
  }
  if (cfg.append_pathological) {
    const auto [x, y] = *cfg.append_pathological;
    code = append_pathological_codeword(code, ctx.backward_full, x, y);
  }
  return code;
}

std::vector<Theorem2Row> theorem2_rows(const ExperimentConfig& cfg, const SweepContext& ctx) {
  auto run_one = [&](int n) -> Theorem2Row {
    Theorem2Row row;
    row.n = n;
    try {
      const BlockCode code = build_code(cfg, ctx, n);
      row.M = code.M();
      row.rate = code.rate();
      const InducedPair pair(code, ctx.source, ctx.backward_full, cfg.budget);
      const GoodnessReport rep = goodness_report(code, ctx.source, ctx.distortion, ctx.target,
                                                 ctx.target_rate, cfg.budget, cfg.mc_samples,
                                                 cfg.seed + 17 * static_cast<std::uint64_t>(n));
      row.expected_distortion = rep.expected_distortion;
      row.normalized_divergence = normalized_divergence(pair);
      const ChainRuleTerms terms = chain_rule_terms(pair);
      row.term1_per_n = terms.term1 / n;
      row.term2_per_n = terms.term2 / n;
      row.normalized_mi = normalized_block_mi(pair);
      row.tv_avg_marginal = variational_distance(averaged_single_letter_marginal(pair), ctx.target);
      row.tv_joint = tv_joint(pair);
      row.status = std::isinf(row.normalized_divergence) ? "infinite" : "ok";
    } catch (const ResourceError& e) {
      row.status = std::string("skipped:") + e.what();
    }
    return row;
  };

  std::vector<std::future<Theorem2Row>> futures;
  futures.reserve(cfg.n_grid.size());
  for (int n : cfg.n_grid)
    futures.push_back(std::async(std::launch::async, run_one, n));
  std::vector<Theorem2Row> rows;
  rows.reserve(futures.size());
  for (auto& f : futures) rows.push_back(f.get());
  return rows;
}

std::vector<Theorem6Row> theorem6_rows(const ExperimentConfig& cfg, const SweepContext& ctx) {
  auto run_one = [&](int n) -> Theorem6Row {
    Theorem6Row row;
    row.n = n;
    const double rate = rate_schedule(ctx.target_rate, n, cfg.delta);
    try {
      const BlockCode code = random_coordination_code(ctx.rd, ctx.distortion, n, rate,
                                                      cfg.seed + static_cast<std::uint64_t>(n),
                                                      /*distinct=*/true, cfg.budget);
      row.M = code.M();
      row.rate = code.rate();
      const ChannelExperiment exp(code, ctx.backward_full);
      const std::uint64_t count = pow_u64(code.x_alphabet, n);
      if (count <= cfg.budget) {
        const ErrorEstimate est = error_probability_Q_exact(exp, cfg.budget);
        row.q_error = est.probability;
        row.q_error_se = 0.0;
        row.tv_lower_bound = tv_lower_bound(exp, cfg.budget);
        const InducedPair pair(code, ctx.source, ctx.backward_full, cfg.budget);
        row.tv_joint = tv_joint(pair);
        row.tv_joint_exact = true;
        row.normalized_divergence = normalized_divergence(pair);
      } else {
        const ErrorEstimate est = error_probability_Q_monte_carlo(
            exp, cfg.mc_samples, cfg.seed + 31 * static_cast<std::uint64_t>(n));
        error_probability_P_sampled(exp, ctx.source, std::min<std::uint64_t>(cfg.mc_samples, 100000),
                                    cfg.seed + 37 * static_cast<std::uint64_t>(n));
        row.q_error = est.probability;
        row.q_error_se = est.standard_error;
        row.tv_lower_bound = est.probability;
        row.tv_joint_exact = false;
        row.status = "monte_carlo";
      }
    } catch (const ResourceError& e) {
      row.status = std::string("skipped:") + e.what();
    } catch (const ConfigError& e) {
      // Scheduled rate can demand more distinct codewords than |Y|^n at
      // small n; report the grid point as skipped instead of aborting.
      row.status = std::string("skipped:") + e.what();
    }
    return row;
  };

  std::vector<std::future<Theorem6Row>> futures;
  futures.reserve(cfg.n_grid.size());
  for (int n : cfg.n_grid)
    futures.push_back(std::async(std::launch::async, run_one, n));
  std::vector<Theorem6Row> rows;
  rows.reserve(futures.size());
  for (auto& f : futures) rows.push_back(f.get());
  return rows;
}

std::vector<RdCurveRow> rd_curve_rows(const ExperimentConfig& cfg) {
  if (!cfg.source || !cfg.distortion) throw ConfigError("rd-curve: needs source and distortion");
  if (cfg.d_grid.empty()) throw ConfigError("rd-curve: needs d_grid");
  std::vector<RdCurveRow> rows;
  for (double D : cfg.d_grid) {
    RdCurveRow row;
    row.target_d = D;
    try {
      const RdSolution sol = solve_rd(*cfg.source, *cfg.distortion, D, cfg.solver_tol);
      row.rate_nats = sol.rate;
      row.rate_bits = nats_to_bits(sol.rate);
      row.distortion = sol.distortion;
      if (!sol.converged) row.status = "non_converged";
    } catch (const std::exception& e) {
      row.status = std::string("failed:") + e.what();
    }
    rows.push_back(row);
  }
  return rows;
}

std::string theorem2_csv(const std::vector<Theorem2Row>& rows) {
  std::ostringstream out;
  out << "# itlab-csv v1 theorem2\n";
  out << "n,M,R_n,expected_distortion,normalized_divergence,term1_per_n,term2_per_n,"
         "normalized_mi,tv_avg_marginal,tv_joint,status\n";
  for (const auto& r : rows)
    out << r.n << "," << r.M << "," << fmt(r.rate) << "," << fmt(r.expected_distortion) << ","
        << fmt(r.normalized_divergence) << "," << fmt(r.term1_per_n) << "," << fmt(r.term2_per_n)
        << "," << fmt(r.normalized_mi) << "," << fmt(r.tv_avg_marginal) << "," << fmt(r.tv_joint)
        << "," << r.status << "\n";
  return out.str();
}

std::string theorem6_csv(const std::vector<Theorem6Row>& rows) {
  std::ostringstream out;
  out << "# itlab-csv v1 theorem6\n";
  out << "n,M,R_n,q_error,q_error_se,tv_lower_bound,tv_joint,tv_joint_exact,"
         "normalized_divergence,status\n";
  for (const auto& r : rows)
    out << r.n << "," << r.M << "," << fmt(r.rate) << "," << fmt(r.q_error) << ","
        << fmt(r.q_error_se) << "," << fmt(r.tv_lower_bound) << "," << fmt(r.tv_joint) << ","
        << (r.tv_joint_exact ? 1 : 0) << "," << fmt(r.normalized_divergence) << "," << r.status
        << "\n";
  return out.str();
}

std::string rd_curve_csv(const std::vector<RdCurveRow>& rows) {
  std::ostringstream out;
  out << "# itlab-csv v1 rd-curve\n";
  out << "target_d,rate_nats,rate_bits,distortion,status\n";
  for (const auto& r : rows)
    out << fmt(r.target_d) << "," << fmt(r.rate_nats) << "," << fmt(r.rate_bits) << ","
        << fmt(r.distortion) << "," << r.status << "\n";
  return out.str();
}

std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label, const std::vector<Series>& series) {
  constexpr double W = 800, H = 500, ML = 70, MR = 160, MT = 50, MB = 60;
  const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  double xmin = kInfinity, xmax = -kInfinity, ymin = kInfinity, ymax = -kInfinity;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  if (!std::isfinite(xmin)) {
    xmin = 0;
    xmax = 1;
    ymin = 0;
    ymax = 1;
  }
  if (xmax - xmin < 1e-12) xmax = xmin + 1;
  if (ymax - ymin < 1e-12) ymax = ymin + 1;

  auto px = [&](double x) { return ML + (x - xmin) / (xmax - xmin) * (W - ML - MR); };
  auto py = [&](double y) { return H - MB - (y - ymin) / (ymax - ymin) * (H - MT - MB); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << W / 2 << "\" y=\"25\" text-anchor=\"middle\" font-size=\"16\">" << title
      << "</text>\n";
  svg << "<line x1=\"" << ML << "\" y1=\"" << H - MB << "\" x2=\"" << W - MR << "\" y2=\"" << H - MB
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML << "\" y2=\"" << H - MB
      << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = xmin + (xmax - xmin) * t / 4.0;
    const double yv = ymin + (ymax - ymin) * t / 4.0;
    svg << "<text x=\"" << px(xv) << "\" y=\"" << H - MB + 20
        << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt(xv) << "</text>\n";
    svg << "<text x=\"" << ML - 8 << "\" y=\"" << py(yv) + 4
        << "\" text-anchor=\"end\" font-size=\"11\">" << fmt(yv) << "</text>\n";
    svg << "<line x1=\"" << ML << "\" y1=\"" << py(yv) << "\" x2=\"" << W - MR << "\" y2=\""
        << py(yv) << "\" stroke=\"#dddddd\"/>\n";
  }
  svg << "<text x=\"" << (ML + W - MR) / 2 << "\" y=\"" << H - 15
      << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label << "</text>\n";
  svg << "<text x=\"20\" y=\"" << (MT + H - MB) / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 20 "
      << (MT + H - MB) / 2 << ")\">" << y_label << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = palette[s % 6];
    std::ostringstream pts;
    for (const auto& [x, y] : series[s].points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      pts << px(x) << "," << py(y) << " ";
    }
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\""
        << pts.str() << "\"/>\n";
    for (const auto& [x, y] : series[s].points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      svg << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\"" << color
          << "\"/>\n";
    }
    svg << "<text x=\"" << W - MR + 10 << "\" y=\"" << MT + 20 * static_cast<double>(s)
        << "\" font-size=\"12\" fill=\"" << color << "\">" << series[s].name << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace

void run_theorem2_sweep(const ExperimentConfig& cfg) {
  const SweepContext ctx = build_context(cfg);
  const auto rows = theorem2_rows(cfg, ctx);
  std::filesystem::create_directories(cfg.out_dir);
  write_file(cfg.out_dir + "/theorem2.csv", theorem2_csv(rows));

  std::vector<Series> series(3);
  series[0].name = "(1/n) D(P||Q)";
  series[1].name = "term1 / n";
  series[2].name = "term2 / n";
  for (const auto& r : rows) {
    if (r.status != "ok") continue;
    series[0].points.emplace_back(r.n, r.normalized_divergence);
    series[1].points.emplace_back(r.n, r.term1_per_n);
    series[2].points.emplace_back(r.n, r.term2_per_n);
  }
  write_file(cfg.out_dir + "/theorem2.svg",
             render_line_chart("Normalized divergence vs blocklength", "n", "nats/symbol", series));
}

void run_theorem6_experiment(const ExperimentConfig& cfg) {
  const SweepContext ctx = build_context(cfg);
  const auto rows = theorem6_rows(cfg, ctx);
  std::filesystem::create_directories(cfg.out_dir);
  write_file(cfg.out_dir + "/theorem6.csv", theorem6_csv(rows));

  std::vector<Series> series(2);
  series[0].name = "TV lower bound Q(E_n)";
  series[1].name = "(1/n) D(P||Q)";
  for (const auto& r : rows) {
    if (r.status.rfind("skipped", 0) == 0) continue;
    series[0].points.emplace_back(r.n, r.tv_lower_bound);
    if (r.tv_joint_exact) series[1].points.emplace_back(r.n, r.normalized_divergence);
  }
  write_file(cfg.out_dir + "/theorem6.svg",
             render_line_chart("TV floor vs vanishing divergence", "n", "value", series));
}

void run_rd_curve(const ExperimentConfig& cfg) {
  const auto rows = rd_curve_rows(cfg);
  std::filesystem::create_directories(cfg.out_dir);
  write_file(cfg.out_dir + "/rd_curve.csv", rd_curve_csv(rows));

  // Backward-channel dump per grid point.
  nlohmann::json dump = nlohmann::json::array();
  for (double D : cfg.d_grid) {
    nlohmann::json rec;
    rec["target_d"] = D;
    try {
      const RdSolution sol = solve_rd(*cfg.source, *cfg.distortion, D, cfg.solver_tol);
      rec["backward"] = to_json(sol.backward);
      rec["output_marginal"] = to_json(sol.output_marginal);
      rec["retained"] = sol.reduced_alphabet;
    } catch (const std::exception& e) {
      rec["error"] = e.what();
    }
    dump.push_back(std::move(rec));
  }
  write_file(cfg.out_dir + "/rd_backward.json", dump.dump(2) + "\n");

  Series s;
  s.name = "R(D) (bits)";
  for (const auto& r : rows)
    if (r.status == "ok") s.points.emplace_back(r.target_d, r.rate_bits);
  write_file(cfg.out_dir + "/rd_curve.svg",
             render_line_chart("Rate-distortion curve", "D", "bits/symbol", {s}));
}

}  // namespace itlab
