#pragma once

#include <optional>
#include <string>
#include <vector>

#include "itlab/channel_conv.hpp"
#include "itlab/codes.hpp"
#include "itlab/distributions.hpp"
#include "itlab/induced.hpp"
#include "itlab/rd_solver.hpp"

#include "json.hpp"

namespace itlab {

enum class CodeConstructor { kExhaustive, kLloyd, kRandom };
enum class RateMode { kBase, kSchedule };

// Declarative batch-experiment configuration. Loaded from a single JSON
// file; every run is a pure function of (config, seeds).
struct ExperimentConfig {
  // Either an RD problem (source + distortion + target_d) or a direct
  // coordination target joint.
  std::optional<Simplex> source;
  std::optional<DistortionMeasure> distortion;
  double target_d = 0.2;
  std::optional<JointLaw> target_joint;  // coordination mode when set

  double delta = 0.25;  // exponent offset in the rate schedule
  std::vector<int> n_grid = {2, 4, 6, 8, 10};
  std::vector<double> d_grid;  // rd-curve only
  CodeConstructor constructor = CodeConstructor::kLloyd;
  RateMode rate_mode = RateMode::kBase;
  bool distinct_codewords = false;
  std::optional<std::pair<std::size_t, std::size_t>> append_pathological;  // (x, y)

  std::uint64_t seed = 1;
  std::uint64_t lloyd_restarts = 5;
  std::uint64_t budget = kDefaultBlockBudget;
  std::uint64_t mc_samples = 1'000'000;
  double solver_tol = 1e-9;
  std::string out_dir = ".";

  void validate() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig load(const std::string& path);
};

// Solved problem context shared by the sweeps: the (possibly reduced)
// alphabet, the target joint, its backward channel, and the reference rate.
struct SweepContext {
  Simplex source;
  DistortionMeasure distortion;  // on the working reproduction alphabet
  JointLaw target;               // P_XY
  Channel backward_full;         // P_{X|Y}, one row per working Y symbol
  double target_rate = 0.0;      // I(X;Y) in nats
  double target_d = 0.0;
  RdSolution rd;                 // solution on the working alphabet
};

SweepContext build_context(const ExperimentConfig& cfg);

// Repeated solve/reduce until every retained output symbol clears the
// threshold. Returns the final restricted distortion and shifted target.
struct ReducedProblem {
  DistortionMeasure distortion;
  double target_d;
  RdSolution rd;
  std::vector<std::size_t> kept;  // original Y indices of the working alphabet
};
ReducedProblem solve_and_reduce(const Simplex& source, const DistortionMeasure& d, double target_d,
                                double tol = 1e-9, double threshold = 1e-9);

struct Theorem2Row {
  int n = 0;
  std::uint64_t M = 0;
  double rate = 0.0;
  double expected_distortion = 0.0;
  double normalized_divergence = 0.0;
  double term1_per_n = 0.0;
  double term2_per_n = 0.0;
  double normalized_mi = 0.0;
  double tv_avg_marginal = 0.0;  // || P_{X_J Y_J} - P_XY ||
  double tv_joint = 0.0;
  std::string status = "ok";  // ok | infinite | skipped:<reason>
};

struct Theorem6Row {
  int n = 0;
  std::uint64_t M = 0;
  double rate = 0.0;
  double q_error = 0.0;
  double q_error_se = 0.0;
  double tv_lower_bound = 0.0;
  double tv_joint = 0.0;
  bool tv_joint_exact = false;
  double normalized_divergence = 0.0;  // same family, for the contrast plot
  std::string status = "ok";
};

struct RdCurveRow {
  double target_d = 0.0;
  double rate_nats = 0.0;
  double rate_bits = 0.0;
  double distortion = 0.0;
  std::string status = "ok";
};

BlockCode build_code(const ExperimentConfig& cfg, const SweepContext& ctx, int n);

std::vector<Theorem2Row> theorem2_rows(const ExperimentConfig& cfg, const SweepContext& ctx);
std::vector<Theorem6Row> theorem6_rows(const ExperimentConfig& cfg, const SweepContext& ctx);
std::vector<RdCurveRow> rd_curve_rows(const ExperimentConfig& cfg);

// CSV emission; schema version in the first line. Deterministic formatting.
std::string theorem2_csv(const std::vector<Theorem2Row>& rows);
std::string theorem6_csv(const std::vector<Theorem6Row>& rows);
std::string rd_curve_csv(const std::vector<RdCurveRow>& rows);

// Minimal static SVG line charts; a pure function of the row data.
struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
};
std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label, const std::vector<Series>& series);

// Full CLI verbs: write CSV (+ SVG + auxiliary dumps) under cfg.out_dir.
void run_theorem2_sweep(const ExperimentConfig& cfg);
void run_theorem6_experiment(const ExperimentConfig& cfg);
void run_rd_curve(const ExperimentConfig& cfg);

}  // namespace itlab
