// Command-line front end: `run` trains one configuration across seeds and
// writes curve/Q-table/summary artifacts, `table` reproduces the benchmark
// comparison grid, `plotdata` flattens existing run directories into one
// long-format CSV for plotting tools.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "skipq/errors.hpp"
#include "skipq/experiment.hpp"
#include "skipq/schedule.hpp"

namespace {

using nlohmann::json;

double as_number(const json& value, const std::string& field) {
  if (!value.is_number()) throw skipq::ConfigError(field + ": expected a number");
  return value.get<double>();
}

int as_int(const json& value, const std::string& field) {
  if (!value.is_number_integer()) throw skipq::ConfigError(field + ": expected an integer");
  return value.get<int>();
}

std::string as_string(const json& value, const std::string& field) {
  if (!value.is_string()) throw skipq::ConfigError(field + ": expected a string");
  return value.get<std::string>();
}

skipq::Schedule schedule_from_json(const json& value) {
  if (value.is_string()) return skipq::Schedule::named(value.get<std::string>());
  if (!value.is_object()) {
    throw skipq::ConfigError("schedule: expected a name or an object with a 'kind'");
  }
  skipq::Schedule sched = skipq::Schedule::named(as_string(value.value("kind", json()), "schedule.kind"));
  for (const auto& [key, entry] : value.items()) {
    if (key == "kind") {
      continue;
    } else if (key == "eps_start") {
      sched.eps_start = as_number(entry, "schedule.eps_start");
    } else if (key == "eps_end") {
      sched.eps_end = as_number(entry, "schedule.eps_end");
    } else if (key == "eps") {
      sched.constant_eps = as_number(entry, "schedule.eps");
    } else {
      throw skipq::ConfigError("schedule." + key + ": unknown key");
    }
  }
  sched.validate();
  return sched;
}

skipq::DurationDist::Kind duration_kind_named(const std::string& name) {
  if (name == "zeta") return skipq::DurationDist::Kind::kZeta;
  if (name == "uniform") return skipq::DurationDist::Kind::kUniform;
  throw skipq::ConfigError("te_duration: expected zeta or uniform, got '" + name + "'");
}

std::vector<std::uint64_t> seeds_from_json(const json& value) {
  if (value.is_string()) return skipq::parse_seeds(value.get<std::string>());
  if (!value.is_array()) throw skipq::ConfigError("seeds: expected a string or an array");
  std::vector<std::uint64_t> seeds;
  for (const json& entry : value) {
    if (!entry.is_number_unsigned() && !entry.is_number_integer()) {
      throw skipq::ConfigError("seeds: expected non-negative integers");
    }
    const std::int64_t s = entry.get<std::int64_t>();
    if (s < 0) throw skipq::ConfigError("seeds: expected non-negative integers");
    seeds.push_back(static_cast<std::uint64_t>(s));
  }
  return seeds;
}

json parse_json_file(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw skipq::ConfigError(std::string(what) + ": cannot read '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw skipq::ConfigError(std::string(what) + " '" + path + "': " + e.what());
  }
}

void apply_config_file(const std::string& path, skipq::RunConfig& config) {
  const json j = parse_json_file(path, "config file");
  if (!j.is_object()) throw skipq::ConfigError("config file: expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "env") {
      config.env = as_string(value, key);
    } else if (key == "agent") {
      config.agent = as_string(value, key);
    } else if (key == "episodes") {
      config.episodes = as_int(value, key);
    } else if (key == "max_skip") {
      config.agent_cfg.max_skip = as_int(value, key);
    } else if (key == "schedule") {
      config.schedule = schedule_from_json(value);
    } else if (key == "alpha") {
      config.agent_cfg.alpha = as_number(value, key);
    } else if (key == "gamma") {
      config.agent_cfg.gamma = as_number(value, key);
    } else if (key == "q_init") {
      config.agent_cfg.q_init = as_number(value, key);
    } else if (key == "eval_every") {
      config.eval_every = as_int(value, key);
    } else if (key == "eval_repeats") {
      config.eval_repeats = as_int(value, key);
    } else if (key == "seeds") {
      config.seeds = seeds_from_json(value);
    } else if (key == "out") {
      config.out_dir = as_string(value, key);
    } else if (key == "jobs") {
      config.jobs = as_int(value, key);
    } else if (key == "te_duration") {
      config.te_duration.kind = duration_kind_named(as_string(value, key));
    } else if (key == "te_cap") {
      config.te_duration.cap = as_int(value, key);
    } else {
      throw skipq::ConfigError("config file: unknown key '" + key + "'");
    }
  }
}

std::string fmt(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  return buf;
}

void print_run_summary(const skipq::RunConfig& config, const skipq::RunSummary& summary) {
  std::cout << "env=" << config.env << " agent=" << config.agent << " episodes="
            << config.episodes << " seeds=" << summary.per_seed.size() << '\n';
  std::cout << "auc " << fmt(summary.auc_mean) << " (std " << fmt(summary.auc_std)
            << "), decisions " << fmt(summary.decisions_mean) << ", first success median ";
  if (summary.first_success_median) {
    std::cout << *summary.first_success_median;
  } else {
    std::cout << "n/a";
  }
  std::cout << ", wall clock " << fmt(summary.wall_clock_seconds) << "s\n";
  if (!config.out_dir.empty()) std::cout << "artifacts in " << config.out_dir << '\n';
}

// Rebuilds the tagged curves of one run directory from its summary.json
// config echo and the per-seed curve CSVs.
void load_run_dir(const std::string& dir, std::vector<skipq::NamedCurve>& curves) {
  const std::filesystem::path base = dir;
  const json summary = parse_json_file((base / "summary.json").string(), "run directory");
  if (!summary.is_object() || !summary.contains("config")) {
    throw skipq::ConfigError("run directory '" + dir + "': summary.json has no config echo");
  }
  const json& config = summary["config"];
  const std::string agent = as_string(config.value("agent", json()), "config.agent");
  const std::string env = as_string(config.value("env", json()), "config.env");
  if (!config.contains("schedule") || !config["schedule"].is_object()) {
    throw skipq::ConfigError("config.schedule: expected an object");
  }
  const std::string schedule =
      as_string(config["schedule"].value("kind", json()), "config.schedule.kind");
  for (const std::uint64_t seed : seeds_from_json(config.value("seeds", json()))) {
    const std::filesystem::path curve_path = base / ("curve_" + std::to_string(seed) + ".csv");
    std::ifstream in(curve_path, std::ios::binary);
    if (!in) throw skipq::ConfigError("run directory '" + dir + "': missing " + curve_path.filename().string());
    std::ostringstream text;
    text << in.rdbuf();
    curves.push_back({agent, env, schedule, seed, skipq::parse_curve_csv(text.str())});
  }
}

std::vector<std::string> split_csv_list(const std::string& text, const char* what) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    if (comma == pos) throw skipq::ConfigError(std::string(what) + ": empty entry in '" + text + "'");
    parts.push_back(text.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return parts;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tabular Q-learning benchmark runner with skip-aware agents"};
  app.require_subcommand(1);

  // --- run ---
  CLI::App* run_cmd = app.add_subcommand("run", "Train one configuration across seeds");
  std::string config_path;
  skipq::RunConfig flag_cfg;
  std::string schedule_name = "linear";
  std::string seeds_text = "0";
  std::string te_kind = "zeta";
  run_cmd->add_option("--config", config_path, "JSON config file; flags below override it");
  auto* opt_env = run_cmd->add_option(
      "--env", flag_cfg.env, "Builtin layout (cliff|bridge|zigzag|open23) or ASCII map file");
  auto* opt_agent =
      run_cmd->add_option("--agent", flag_cfg.agent, "Agent: q | tq | teq [tq]");
  auto* opt_episodes =
      run_cmd->add_option("--episodes", flag_cfg.episodes, "Training episodes [10000]");
  auto* opt_max_skip = run_cmd->add_option("--max-skip", flag_cfg.agent_cfg.max_skip,
                                           "Largest skip length J for tq [7]");
  auto* opt_schedule = run_cmd->add_option("--schedule", schedule_name,
                                           "Exploration schedule: linear | log | const [linear]");
  auto* opt_alpha = run_cmd->add_option("--alpha", flag_cfg.agent_cfg.alpha, "Learning rate [0.1]");
  auto* opt_gamma = run_cmd->add_option("--gamma", flag_cfg.agent_cfg.gamma, "Discount [0.99]");
  auto* opt_q_init =
      run_cmd->add_option("--q-init", flag_cfg.agent_cfg.q_init, "Initial Q value [0]");
  auto* opt_seeds = run_cmd->add_option(
      "--seeds", seeds_text, "Seed list, e.g. 0-19 or 3,5,7 [0]");
  auto* opt_eval_every = run_cmd->add_option("--eval-every", flag_cfg.eval_every,
                                             "Checkpoint every N episodes [1]");
  auto* opt_eval_repeats = run_cmd->add_option("--eval-repeats", flag_cfg.eval_repeats,
                                               "Evaluation rollouts per checkpoint [1]");
  auto* opt_out =
      run_cmd->add_option("--out", flag_cfg.out_dir, "Output directory (omit to skip artifacts)");
  auto* opt_jobs = run_cmd->add_option("--jobs", flag_cfg.jobs, "Seed-parallel worker threads [1]");
  auto* opt_te_kind = run_cmd->add_option(
      "--te-duration", te_kind, "teq exploration-duration distribution: zeta | uniform [zeta]");
  auto* opt_te_cap =
      run_cmd->add_option("--te-cap", flag_cfg.te_duration.cap, "zeta duration cap [100]");
  run_cmd->callback([&] {
    skipq::RunConfig config;
    if (!config_path.empty()) apply_config_file(config_path, config);
    if (opt_env->count()) config.env = flag_cfg.env;
    if (opt_agent->count()) config.agent = flag_cfg.agent;
    if (opt_episodes->count()) config.episodes = flag_cfg.episodes;
    if (opt_max_skip->count()) config.agent_cfg.max_skip = flag_cfg.agent_cfg.max_skip;
    if (opt_schedule->count()) config.schedule = skipq::Schedule::named(schedule_name);
    if (opt_alpha->count()) config.agent_cfg.alpha = flag_cfg.agent_cfg.alpha;
    if (opt_gamma->count()) config.agent_cfg.gamma = flag_cfg.agent_cfg.gamma;
    if (opt_q_init->count()) config.agent_cfg.q_init = flag_cfg.agent_cfg.q_init;
    if (opt_seeds->count()) config.seeds = skipq::parse_seeds(seeds_text);
    if (opt_eval_every->count()) config.eval_every = flag_cfg.eval_every;
    if (opt_eval_repeats->count()) config.eval_repeats = flag_cfg.eval_repeats;
    if (opt_out->count()) config.out_dir = flag_cfg.out_dir;
    if (opt_jobs->count()) config.jobs = flag_cfg.jobs;
    if (opt_te_kind->count()) config.te_duration.kind = duration_kind_named(te_kind);
    if (opt_te_cap->count()) config.te_duration.cap = flag_cfg.te_duration.cap;
    const skipq::RunSummary summary = skipq::run(config);
    print_run_summary(config, summary);
  });

  // --- table ---
  CLI::App* table_cmd =
      app.add_subcommand("table", "Reproduce the env x schedule x agent comparison table");
  skipq::TableRequest request;
  std::string envs_text = "cliff,bridge,zigzag";
  std::string schedules_text = "linear,log,const";
  std::string agents_text = "q,tq";
  std::string table_seeds_text = "0-19";
  std::string skips_text = "1-16";
  bool no_sweep = false;
  std::string table_out;
  table_cmd->add_option("--envs", envs_text, "Comma-separated layouts [cliff,bridge,zigzag]");
  table_cmd->add_option("--schedules", schedules_text,
                        "Comma-separated schedules [linear,log,const]");
  table_cmd->add_option("--agents", agents_text, "Comma-separated agents [q,tq]");
  table_cmd->add_option("--seeds", table_seeds_text, "Seed list [0-19]");
  table_cmd->add_option("--episodes", request.episodes, "Training episodes per cell [10000]");
  table_cmd->add_option("--max-skip", request.agent_cfg.max_skip, "tq skip length J [7]");
  table_cmd->add_option("--alpha", request.agent_cfg.alpha, "Learning rate [0.1]");
  table_cmd->add_option("--gamma", request.agent_cfg.gamma, "Discount [0.99]");
  table_cmd->add_option("--eval-every", request.eval_every, "Checkpoint every N episodes [1]");
  table_cmd->add_option("--jobs", request.jobs, "Seed-parallel worker threads [1]");
  table_cmd->add_option("--skips", skips_text,
                        "Skip-length sweep on zigzag/linear, e.g. 1-16 [1-16]");
  table_cmd->add_flag("--no-sweep", no_sweep, "Drop the skip-length sweep rows");
  table_cmd->add_option("--out", table_out, "Write the CSV here instead of stdout");
  table_cmd->callback([&] {
    request.envs = split_csv_list(envs_text, "envs");
    request.schedules = split_csv_list(schedules_text, "schedules");
    request.agents = split_csv_list(agents_text, "agents");
    request.seeds = skipq::parse_seeds(table_seeds_text);
    request.sweep_skips.clear();
    if (!no_sweep) {
      for (const std::uint64_t j : skipq::parse_seeds(skips_text)) {
        request.sweep_skips.push_back(static_cast<int>(j));
      }
    }
    const std::string csv = skipq::table_csv(skipq::reproduce_table(request));
    if (table_out.empty()) {
      std::cout << csv;
    } else {
      std::ofstream out(table_out, std::ios::binary | std::ios::trunc);
      if (!out) throw skipq::IoError("cannot open " + table_out + " for writing");
      out << csv;
      out.flush();
      if (!out) throw skipq::IoError("write to " + table_out + " failed");
      std::cout << "wrote " << table_out << '\n';
    }
  });

  // --- plotdata ---
  CLI::App* plot_cmd = app.add_subcommand(
      "plotdata", "Flatten run directories into one long-format CSV");
  std::vector<std::string> run_dirs;
  std::string metrics_text = "eval_reward,eval_decisions";
  std::string plot_out;
  plot_cmd->add_option("dirs", run_dirs, "Run output directories (from `run --out`)")
      ->required()
      ->expected(-1);
  plot_cmd->add_option("--metrics", metrics_text,
                       "Curve columns to emit [eval_reward,eval_decisions]");
  plot_cmd->add_option("--out", plot_out, "Write the CSV here instead of stdout");
  plot_cmd->callback([&] {
    std::vector<skipq::NamedCurve> curves;
    for (const std::string& dir : run_dirs) load_run_dir(dir, curves);
    const std::vector<std::string> metrics = split_csv_list(metrics_text, "metrics");
    if (plot_out.empty()) {
      skipq::emit_plot_data(curves, metrics, std::cout);
    } else {
      std::ofstream out(plot_out, std::ios::binary | std::ios::trunc);
      if (!out) throw skipq::IoError("cannot open " + plot_out + " for writing");
      skipq::emit_plot_data(curves, metrics, out);
      out.flush();
      if (!out) throw skipq::IoError("write to " + plot_out + " failed");
      std::cout << "wrote " << plot_out << '\n';
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const skipq::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const skipq::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
