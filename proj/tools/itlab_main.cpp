#include <cstdio>
#include <iostream>
#include <map>
#include <optional>

#include "CLI11.hpp"

#include "itlab/experiment.hpp"
#include "itlab/serialize.hpp"

namespace {

// Exit codes: 0 ok, 1 CLI parse error, 2 config error, 3 resource error,
// 4 invariant violation, 5 other failure.
constexpr int kExitConfig = 2;
constexpr int kExitResource = 3;
constexpr int kExitInvariant = 4;
constexpr int kExitOther = 5;

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> budget;
};

itlab::ExperimentConfig load_config(const CommonFlags& flags) {
  itlab::ExperimentConfig cfg = itlab::ExperimentConfig::load(flags.config_path);
  if (!flags.out_dir.empty()) cfg.out_dir = flags.out_dir;
  if (flags.seed) cfg.seed = *flags.seed;
  if (flags.budget) cfg.budget = *flags.budget;
  return cfg;
}

void add_common(CLI::App* sub, CommonFlags& flags) {
  sub->add_option("-c,--config", flags.config_path, "experiment config (JSON)")->required();
  sub->add_option("-o,--out", flags.out_dir, "output directory override");
  sub->add_option("--seed", flags.seed, "seed override");
  sub->add_option("--budget", flags.budget, "enumeration budget override");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-alphabet rate-distortion / coordination laboratory"};
  app.require_subcommand(1);

  CommonFlags t2_flags, t6_flags, rd_flags, build_flags;
  std::string build_out = "code.txt";
  int build_n = 2;
  std::string inspect_path;

  CLI::App* t2 = app.add_subcommand("theorem2-sweep", "divergence convergence sweep over n");
  add_common(t2, t2_flags);
  CLI::App* t6 = app.add_subcommand("theorem6-experiment", "TV floor vs divergence contrast");
  add_common(t6, t6_flags);
  CLI::App* rd = app.add_subcommand("rd-curve", "R(D) curve over a distortion grid");
  add_common(rd, rd_flags);
  CLI::App* cb = app.add_subcommand("code-build", "construct one code and serialize it");
  add_common(cb, build_flags);
  cb->add_option("-n,--blocklength", build_n, "blocklength")->required();
  cb->add_option("--code-out", build_out, "output path for the code file");
  CLI::App* ci = app.add_subcommand("code-inspect", "summarize a serialized code file");
  ci->add_option("file", inspect_path, "code file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (t2->parsed()) {
      itlab::run_theorem2_sweep(load_config(t2_flags));
    } else if (t6->parsed()) {
      itlab::run_theorem6_experiment(load_config(t6_flags));
    } else if (rd->parsed()) {
      itlab::run_rd_curve(load_config(rd_flags));
    } else if (cb->parsed()) {
      const itlab::ExperimentConfig cfg = load_config(build_flags);
      const itlab::SweepContext ctx = itlab::build_context(cfg);
      const itlab::BlockCode code = itlab::build_code(cfg, ctx, build_n);
      std::map<std::string, std::string> meta;
      meta["seed"] = std::to_string(cfg.seed);
      meta["delta"] = std::to_string(cfg.delta);
      meta["target_rate_nats"] = std::to_string(ctx.target_rate);
      itlab::save_code(code, build_out, meta);
      std::printf("wrote %s (n=%d M=%llu R_n=%.6f nats)\n", build_out.c_str(), code.n,
                  static_cast<unsigned long long>(code.M()), code.rate());
    } else if (ci->parsed()) {
      std::map<std::string, std::string> meta;
      const itlab::BlockCode code = itlab::load_code(inspect_path, &meta);
      std::printf("n=%d M=%llu x_alphabet=%zu y_alphabet=%zu rate=%.6f nats bijective=%s\n",
                  code.n, static_cast<unsigned long long>(code.M()), code.x_alphabet,
                  code.y_alphabet, code.rate(), code.decoder_bijective() ? "yes" : "no");
      for (const auto& [k, v] : meta) std::printf("meta %s=%s\n", k.c_str(), v.c_str());
    }
  } catch (const itlab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const itlab::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitResource;
  } catch (const itlab::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  }
  return 0;
}
