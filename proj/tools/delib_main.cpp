// delib: run, batch, reproduce and verify deliberation processes from the command line.
#include <iostream>

#include <CLI11.hpp>

#include "delib/cli.hpp"
#include "delib/errors.hpp"

namespace {

void add_run_options(CLI::App* app, delib::CliConfig& c) {
  app->add_option("-c,--config", c.config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app->add_option("--space", c.space, "euclidean | binary | ranking");
  app->add_option("--distance", c.distance, "l1 | l2 | linf | hamming | first-changed | swap");
  app->add_option("--rule", c.rule, "mean | floor-mean | median | majority-vnw | topk-majority-mw | "
                                    "kemeny | plurality | borda | copeland | stv");
  app->add_option("--epsilon", c.epsilon, "step size");
  app->add_option("--policy", c.policy, "default | seeded-random | scripted");
  app->add_option("--seed", c.seed, "generator and policy seed");
  app->add_option("--n", c.n, "number of agents for generated profiles");
  app->add_option("--m", c.m, "number of candidates");
  app->add_option("--k", c.k, "committee size (binary space)");
  app->add_option("--dim", c.dim, "euclidean dimension");
  app->add_option("--max-iters", c.max_iters, "cap on moving iterations");
  app->add_option("--profile", c.profile, "initial profile file")->check(CLI::ExistingFile);
}

void add_common(CLI::App* app, delib::CliConfig& c) {
  app->add_option("--out", c.out, "output directory");
  app->add_option("--format", c.format, "stdout format")->check(CLI::IsMember({"csv", "jsonl"}));
  app->add_flag("-q,--quiet", c.quiet, "no stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iterative deliberation over metric spaces with voting rules"};
  app.require_subcommand(1);
  delib::CliConfig cfg;

  auto* run = app.add_subcommand("run", "single run; exit 0 converged, 2 cycle, 3 cap reached");
  add_run_options(run, cfg);
  add_common(run, cfg);

  auto* batch = app.add_subcommand("batch", "one run per seed and configuration, summary CSV");
  add_run_options(batch, cfg);
  add_common(batch, cfg);
  std::string seeds;
  batch->add_option("--seeds", seeds, "seed list, e.g. 1..100 or 1,4,9");

  auto* reproduce = app.add_subcommand("reproduce", "replay a worked example and compare");
  reproduce->add_option("name", cfg.reproduce_name, "example name or 'all'")
      ->required()
      ->check(CLI::IsMember([] {
        auto names = delib::reproduce_names();
        names.push_back("all");
        return names;
      }()));
  reproduce->add_flag("-q,--quiet", cfg.quiet, "only report mismatches");

  auto* verify = app.add_subcommand("verify", "seeded check matrix as CSV; exit 4 on any failure");
  verify->add_option("--checks", cfg.checks, "restrict to these checks")
      ->delimiter(',')
      ->check(CLI::IsMember(delib::verify_check_names()));
  verify->add_option("--seeds", cfg.verify_seeds, "seeds per configuration")->check(CLI::PositiveNumber);
  verify->add_flag("--corrupt-rule", cfg.corrupt_rule, "negative control")->group("");
  verify->add_option("--out", cfg.out, "output directory");
  verify->add_flag("-q,--quiet", cfg.quiet, "no stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : delib::exit_code::kError;
  }

  if (run->parsed()) return delib::cmd_run(cfg, std::cout, std::cerr);
  if (batch->parsed()) {
    try {
      if (!seeds.empty()) cfg.seeds = delib::parse_seed_list(seeds);
    } catch (const delib::Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return delib::exit_code::kError;
    }
    return delib::cmd_batch(cfg, std::cout, std::cerr);
  }
  if (reproduce->parsed()) return delib::cmd_reproduce(cfg, std::cout, std::cerr);
  return delib::cmd_verify(cfg, std::cout, std::cerr);
}
