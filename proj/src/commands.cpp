#include <filesystem>
#include <fstream>
#include <ostream>

#include "delib/cli.hpp"
#include "delib/errors.hpp"
#include "delib/profiles.hpp"
#include "parallel.hpp"

namespace delib {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

int outcome_code(Outcome o) {
  switch (o) {
    case Outcome::Converged: return exit_code::kConverged;
    case Outcome::Cycle: return exit_code::kCycle;
    case Outcome::CapReached: return exit_code::kCapReached;
  }
  return exit_code::kError;
}

json load_config(const CliConfig& cfg) {
  return cfg.config_path ? read_json_file(*cfg.config_path) : json::object();
}

fs::path base_dir(const CliConfig& cfg) {
  return cfg.config_path ? cfg.config_path->parent_path() : fs::path{};
}

std::ofstream open_out(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream os(dir / name);
  if (!os) throw Error("cannot write " + (dir / name).string());
  return os;
}

SummaryRow summary_of(const RunSetup& s, const RunReport& r) {
  return {s.engine.space.label(), std::string(to_string(s.engine.rule.rule)), s.engine.epsilon, s.seed, &r};
}

json summary_json(const SummaryRow& row) {
  const RunReport& r = *row.report;
  json j = {{"space", row.space},          {"rule", row.rule},
            {"epsilon", row.epsilon},      {"seed", row.seed},
            {"outcome", to_string(r.outcome)}, {"iterations", r.iterations},
            {"states", r.states},          {"growth_detected", r.growth_detected}};
  j["final_winner"] = r.point ? point_to_json(*r.point) : json(nullptr);
  if (r.outcome == Outcome::Cycle) {
    j["cycle_period"] = r.cycle_period;
    j["cycle_first_index"] = r.cycle_first_index;
  }
  return j;
}

}  // namespace

int cmd_run(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const RunSetup s = resolve_run(load_config(cfg), cfg, base_dir(cfg));
    const RunReport r = run(s.initial, s.engine);
    const SummaryRow row = summary_of(s, r);

    if (cfg.out) {
      auto trace = open_out(*cfg.out, "trace.jsonl");
      write_trace_jsonl(trace, r);
      auto summary = open_out(*cfg.out, "summary.csv");
      summary << summary_csv_header() << '\n' << summary_csv_row(row) << '\n';
    }
    if (!cfg.quiet) {
      if (cfg.format == "jsonl") {
        write_trace_jsonl(out, r);
      } else {
        out << summary_csv_header() << '\n' << summary_csv_row(row) << '\n';
      }
      // The worked examples count displayed states; report both counts.
      err << to_string(r.outcome) << ": " << r.iterations << " moving iterations, " << r.states
          << " states";
      if (r.point) err << ", consensus " << to_string(*r.point);
      if (r.outcome == Outcome::Cycle)
        err << ", period " << r.cycle_period << " from iteration " << r.cycle_first_index;
      if (r.outcome == Outcome::CapReached) err << (r.growth_detected ? ", winner drifting" : "");
      err << '\n';
    }
    return outcome_code(r.outcome);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kError;
  }
}

int cmd_batch(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<RunSetup> setups;
  try {
    const json config = load_config(cfg);
    std::vector<std::uint64_t> seeds = cfg.seeds;
    if (seeds.empty() && config.contains("seeds")) {
      const json& sj = config.at("seeds");
      seeds = sj.is_string() ? parse_seed_list(sj.get<std::string>()) : sj.get<std::vector<std::uint64_t>>();
    }
    if (seeds.empty()) throw ConfigError("batch needs a non-empty seed list (--seeds or \"seeds\")");

    // "runs" lists configurations, each merged over the top-level keys.
    std::vector<json> runs;
    if (config.contains("runs")) {
      if (!config.at("runs").is_array() || config.at("runs").empty())
        throw ConfigError("\"runs\" must be a non-empty array");
      for (const auto& r : config.at("runs")) {
        json merged = config;
        merged.erase("runs");
        merged.erase("seeds");
        merged.update(r);
        runs.push_back(std::move(merged));
      }
    } else {
      runs.push_back(config);
    }

    for (const auto& rc : runs) {
      for (auto seed : seeds) {
        CliConfig o = cfg;
        o.seed = seed;
        setups.push_back(resolve_run(rc, o, base_dir(cfg)));
        setups.back().engine.keep_trace = false;
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kError;
  }

  struct Result {
    RunReport report;
    std::string error;
  };
  const auto results = detail::parallel_map<Result>(setups.size(), [&](std::size_t i) {
    Result res;
    try {
      res.report = run(setups[i].initial, setups[i].engine);
    } catch (const std::exception& e) {
      res.error = e.what();
    }
    return res;
  });

  int code = exit_code::kConverged;
  std::string csv = summary_csv_header() + '\n';
  std::string jsonl;
  for (std::size_t i = 0; i < setups.size(); ++i) {
    const SummaryRow row = summary_of(setups[i], results[i].report);
    if (!results[i].error.empty()) {
      err << "error in run " << i << " (seed " << setups[i].seed << "): " << results[i].error << '\n';
      code = exit_code::kError;
      csv += row.space + ',' + row.rule + ",,," + "ERROR,,,,\n";
      continue;
    }
    csv += summary_csv_row(row) + '\n';
    jsonl += summary_json(row).dump() + '\n';
  }

  try {
    if (cfg.out) open_out(*cfg.out, "summary.csv") << csv;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kError;
  }
  if (!cfg.quiet) out << (cfg.format == "jsonl" ? jsonl : csv);
  return code;
}

int cmd_reproduce(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<std::string> names;
  if (cfg.reproduce_name == "all") {
    names = reproduce_names();
  } else {
    names = {cfg.reproduce_name};
  }
  int code = exit_code::kConverged;
  for (const auto& name : names) {
    try {
      const ReproduceResult r = reproduce(name);
      if (!cfg.quiet) out << "== " << name << '\n' << r.table;
      if (!r.ok) {
        code = exit_code::kError;
        err << name << ": mismatch with printed values\n";
        for (const auto& m : r.mismatches) err << "  " << m << '\n';
      } else if (!cfg.quiet) {
        out << "matches printed values\n";
      }
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      code = exit_code::kError;
    }
  }
  return code;
}

int cmd_verify(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<VerifyRow> rows;
  try {
    VerifyOptions opt;
    opt.checks = cfg.checks;
    if (cfg.verify_seeds) opt.seeds = *cfg.verify_seeds;
    opt.corrupt_rule = cfg.corrupt_rule;
    rows = verify(opt);
    const std::string csv = verify_csv(rows);
    if (cfg.out) open_out(*cfg.out, "verify.csv") << csv;
    if (!cfg.quiet) out << csv;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kError;
  }
  const auto failed = std::count_if(rows.begin(), rows.end(), [](const VerifyRow& r) { return !r.pass; });
  err << rows.size() - static_cast<std::size_t>(failed) << "/" << rows.size() << " checks passed\n";
  return failed ? exit_code::kCheckFailed : exit_code::kConverged;
}

}  // namespace delib
