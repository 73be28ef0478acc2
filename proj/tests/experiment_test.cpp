#include <unistd.h>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "skipq/errors.hpp"
#include "skipq/experiment.hpp"
#include "skipq/numfmt.hpp"
#include "skipq/rng.hpp"

using namespace skipq;
using doctest::Contains;

namespace {

// Unique scratch directory per call; callers never rely on prior contents.
std::filesystem::path fresh_dir(const std::string& tag) {
  static int counter = 0;
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() /
      ("skipq_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void spit(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  REQUIRE(out.good());
  out << text;
}

// Small, fast run used by most artifact tests.
RunConfig tiny_run_config() {
  RunConfig config;
  config.env = "cliff";
  config.agent = "tq";
  config.episodes = 40;
  config.seeds = {0, 1, 2};
  return config;
}

}  // namespace

TEST_SUITE_BEGIN("experiment");

TEST_CASE("parse_seeds handles singles, lists, and ranges") {
  CHECK(parse_seeds("4") == std::vector<std::uint64_t>{4});
  CHECK(parse_seeds("3,5,7") == std::vector<std::uint64_t>{3, 5, 7});
  CHECK(parse_seeds("0-3") == std::vector<std::uint64_t>{0, 1, 2, 3});
  CHECK(parse_seeds("0-2,9") == std::vector<std::uint64_t>{0, 1, 2, 9});
  CHECK(parse_seeds("0-19").size() == 20);
  CHECK(parse_seeds("0-19").back() == 19);
}

TEST_CASE("parse_seeds rejects malformed input") {
  CHECK_THROWS_AS(parse_seeds(""), ConfigError);
  CHECK_THROWS_AS(parse_seeds("1,"), ConfigError);
  CHECK_THROWS_AS(parse_seeds("a"), ConfigError);
  CHECK_THROWS_AS(parse_seeds("1,2x"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_seeds("5-3"), Contains("reversed"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_seeds("1,1"), Contains("duplicate"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_seeds("0-3,2"), Contains("duplicate"), ConfigError);
}

TEST_CASE("format_double emits shortest fixed decimals") {
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-1.0) == "-1");
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e-5) == "0.00001");
  CHECK(format_double(123.75) == "123.75");
}

TEST_CASE("format_double round-trips exactly") {
  Rng rng(99);
  for (int i = 0; i < 2000; ++i) {
    const double value = (rng.uniform01() * 2.0 - 1.0) * (i % 2 == 0 ? 1.0 : 1000.0);
    const std::string text = format_double(value);
    CHECK(std::strtod(text.c_str(), nullptr) == value);
  }
}

TEST_CASE("resolve_env finds builtins and map files") {
  CHECK(same_geometry(resolve_env("cliff"), builtin_grid("cliff")));
  CHECK(same_geometry(resolve_env("open23"), builtin_grid("open23")));

  const auto dir = fresh_dir("env");
  const std::string map_text = "limit=9\nG..\n.#.\nS..\n";
  spit(dir / "mini.map", map_text);
  const GridSpec from_file = resolve_env((dir / "mini.map").string());
  CHECK(same_geometry(from_file, load_grid(map_text)));
  CHECK(from_file.name() == "mini");

  CHECK_THROWS_WITH_AS(resolve_env((dir / "missing.map").string()), Contains("cannot read"),
                       ConfigError);
}

TEST_CASE("RunConfig validation rejects bad fields") {
  RunConfig ok = tiny_run_config();
  CHECK_NOTHROW(ok.validate());

  RunConfig c = ok;
  c.agent = "sarsa";
  CHECK_THROWS_WITH_AS(c.validate(), Contains("agent"), ConfigError);
  c = ok;
  c.episodes = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = ok;
  c.eval_every = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = ok;
  c.eval_repeats = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = ok;
  c.jobs = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = ok;
  c.seeds = {};
  CHECK_THROWS_WITH_AS(c.validate(), Contains("seeds"), ConfigError);
  c = ok;
  c.seeds = {1, 2, 1};
  CHECK_THROWS_WITH_AS(c.validate(), Contains("duplicate"), ConfigError);
  c = ok;
  c.agent_cfg.alpha = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("curve CSV has the documented header and row count") {
  SUBCASE("one row per checkpoint") {
    RunConfig config = tiny_run_config();
    config.agent = "q";
    config.episodes = 10;
    config.eval_every = 3;
    config.seeds = {0};
    const GridSpec spec = resolve_env(config.env);
    const SeedOutcome outcome = train_seed(spec, config, 0);
    const std::string csv = curve_csv(outcome.log);
    std::istringstream lines(csv);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "episode,eval_reward,eval_steps,eval_decisions,epsilon");
    int rows = 0;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 4);  // ceil(10 / 3)
  }
  SUBCASE("a single episode yields a single row") {
    RunConfig config = tiny_run_config();
    config.agent = "q";
    config.episodes = 1;
    config.schedule = Schedule::constant();
    config.seeds = {0};
    const GridSpec spec = resolve_env(config.env);
    const SeedOutcome outcome = train_seed(spec, config, 0);
    const std::string csv = curve_csv(outcome.log);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);  // header + 1 data row
  }
}

TEST_CASE("parse_curve_csv inverts curve_csv exactly") {
  TrainLog log;
  log.checkpoints.push_back({0, -1.0, 31.0, 31.0, 1.0});
  log.checkpoints.push_back({7, 0.123456789012345678, 14.5, 3.25, 1e-5});
  log.checkpoints.push_back({9, 1.0, 15.0, 4.0, 0.0});
  const TrainLog parsed = parse_curve_csv(curve_csv(log));
  REQUIRE(parsed.checkpoints.size() == log.checkpoints.size());
  for (std::size_t i = 0; i < log.checkpoints.size(); ++i) {
    CHECK(parsed.checkpoints[i].episode == log.checkpoints[i].episode);
    CHECK(parsed.checkpoints[i].eval_reward == log.checkpoints[i].eval_reward);
    CHECK(parsed.checkpoints[i].eval_steps == log.checkpoints[i].eval_steps);
    CHECK(parsed.checkpoints[i].eval_decisions == log.checkpoints[i].eval_decisions);
    CHECK(parsed.checkpoints[i].epsilon == log.checkpoints[i].epsilon);
  }
}

TEST_CASE("parse_curve_csv rejects malformed text") {
  CHECK_THROWS_WITH_AS(parse_curve_csv(""), Contains("empty"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_curve_csv("episode,nope\n"), Contains("header"), ConfigError);
  const std::string header = "episode,eval_reward,eval_steps,eval_decisions,epsilon\n";
  CHECK_THROWS_WITH_AS(parse_curve_csv(header + "0,1,2,3\n"), Contains("line 2"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_curve_csv(header + "0,1,2,3,4,5\n"), Contains("5 fields"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_curve_csv(header + "x,1,2,3,4\n"), Contains("bad episode"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_curve_csv(header + "0,1,oops,3,4\n"), Contains("bad number"),
                       ConfigError);
}

TEST_CASE("run writes per-seed curves, q-tables, and a summary") {
  RunConfig config = tiny_run_config();
  const auto dir = fresh_dir("run");
  config.out_dir = dir.string();
  const RunSummary summary = run(config);
  REQUIRE(summary.per_seed.size() == 3);
  for (const std::uint64_t seed : config.seeds) {
    CHECK(std::filesystem::exists(dir / ("curve_" + std::to_string(seed) + ".csv")));
    CHECK(std::filesystem::exists(dir / ("qtables_" + std::to_string(seed) + ".json")));
  }
  CHECK(std::filesystem::exists(dir / "summary.json"));
  CHECK(summary.wall_clock_seconds > 0.0);

  // The summary aggregates must be recomputable from what was written.
  const GridSpec spec = resolve_env(config.env);
  const nlohmann::json js = nlohmann::json::parse(slurp(dir / "summary.json"));
  double auc_acc = 0.0;
  for (std::size_t i = 0; i < config.seeds.size(); ++i) {
    const TrainLog log =
        parse_curve_csv(slurp(dir / ("curve_" + std::to_string(config.seeds[i]) + ".csv")));
    const LearningCurve curve = curve_of(log);
    const double auc = normalized_auc(curve, spec.reward_min(), spec.reward_max());
    CHECK(auc == summary.per_seed[i].auc);
    CHECK(mean_decisions(curve) == summary.per_seed[i].mean_decisions);
    CHECK(js["per_seed"][i]["auc"].get<double>() == auc);
    auc_acc += auc;
  }
  CHECK(js["aggregate"]["auc_mean"].get<double>() == auc_acc / 3.0);
  CHECK(js["aggregate"]["auc_mean"].get<double>() == summary.auc_mean);
}

TEST_CASE("identical configs produce byte-identical curve CSVs") {
  RunConfig config = tiny_run_config();
  const auto dir_a = fresh_dir("repro_a");
  const auto dir_b = fresh_dir("repro_b");
  config.out_dir = dir_a.string();
  run(config);
  config.out_dir = dir_b.string();
  run(config);
  for (const std::uint64_t seed : config.seeds) {
    const std::string name = "curve_" + std::to_string(seed) + ".csv";
    CHECK(slurp(dir_a / name) == slurp(dir_b / name));
  }
}

TEST_CASE("seed results do not depend on the worker count") {
  RunConfig config = tiny_run_config();
  config.seeds = {0, 1, 2, 3, 4};
  const GridSpec spec = resolve_env(config.env);
  config.jobs = 1;
  const std::vector<SeedOutcome> sequential = train_all_seeds(spec, config);
  config.jobs = 3;
  const std::vector<SeedOutcome> parallel = train_all_seeds(spec, config);
  REQUIRE(sequential.size() == parallel.size());
  for (std::size_t i = 0; i < sequential.size(); ++i) {
    CHECK(sequential[i].seed == parallel[i].seed);
    CHECK(sequential[i].behaviour.raw() == parallel[i].behaviour.raw());
    REQUIRE(parallel[i].skip.has_value());
    CHECK(sequential[i].skip->raw() == parallel[i].skip->raw());
    CHECK(curve_csv(sequential[i].log) == curve_csv(parallel[i].log));
  }
}

TEST_CASE("train_all_seeds preserves the requested seed order") {
  RunConfig config = tiny_run_config();
  config.agent = "q";
  config.episodes = 5;
  config.seeds = {5, 1, 9};
  const GridSpec spec = resolve_env(config.env);
  const std::vector<SeedOutcome> outcomes = train_all_seeds(spec, config);
  REQUIRE(outcomes.size() == 3);
  CHECK(outcomes[0].seed == 5);
  CHECK(outcomes[1].seed == 1);
  CHECK(outcomes[2].seed == 9);
}

TEST_CASE("first-success bookkeeping follows the evaluation reward") {
  // Crafted logs avoid depending on what an agent happens to learn.
  const GridSpec spec = resolve_env("cliff");
  SeedOutcome outcome{7, BehaviourQ(spec.num_states(), 0.0), std::nullopt, {}};
  outcome.log.checkpoints.push_back({0, -1.0, 5.0, 5.0, 1.0});
  outcome.log.checkpoints.push_back({1, 1.0, 15.0, 15.0, 0.5});
  outcome.log.checkpoints.push_back({2, 1.0, 15.0, 15.0, 0.0});
  const SeedSummary with_success = summarize_seed(spec, outcome);
  CHECK(with_success.seed == 7);
  REQUIRE(with_success.first_success_episode.has_value());
  CHECK(*with_success.first_success_episode == 1);

  outcome.log.checkpoints[1].eval_reward = 0.0;
  outcome.log.checkpoints[2].eval_reward = 0.0;
  CHECK_FALSE(summarize_seed(spec, outcome).first_success_episode.has_value());
}

TEST_CASE("first-success median orders failures after successes") {
  const GridSpec spec = resolve_env("cliff");
  auto outcome_with_first = [&](std::uint64_t seed, int episode) {
    SeedOutcome o{seed, BehaviourQ(spec.num_states(), 0.0), std::nullopt, {}};
    for (int e = 0; e < 6; ++e) {
      o.log.checkpoints.push_back({e, episode >= 0 && e >= episode ? 1.0 : 0.0, 10.0, 10.0, 0.1});
    }
    return o;
  };
  std::vector<SeedOutcome> outcomes;
  outcomes.push_back(outcome_with_first(0, 4));
  outcomes.push_back(outcome_with_first(1, 2));
  outcomes.push_back(outcome_with_first(2, -1));  // never succeeds
  const RunSummary odd = summarize(spec, outcomes);
  REQUIRE(odd.first_success_median.has_value());
  CHECK(*odd.first_success_median == 4.0);

  outcomes.push_back(outcome_with_first(3, -1));
  const RunSummary even = summarize(spec, outcomes);
  // Middle pair is {4, failure}: the median is undefined.
  CHECK_FALSE(even.first_success_median.has_value());
}

TEST_CASE("q-table save/load round-trips exactly") {
  RunConfig config = tiny_run_config();
  config.episodes = 60;
  config.seeds = {0};
  const GridSpec spec = resolve_env(config.env);
  const SeedOutcome outcome = train_seed(spec, config, 0);
  const auto dir = fresh_dir("qt");
  const std::string path = (dir / "qt.json").string();

  QTables saved{spec.name(), config.agent_cfg, outcome.behaviour, outcome.skip};
  save_qtables(path, saved);
  const QTables loaded = load_qtables(path);
  CHECK(loaded.env == spec.name());
  CHECK(loaded.config.max_skip == config.agent_cfg.max_skip);
  CHECK(loaded.behaviour.raw() == outcome.behaviour.raw());
  REQUIRE(loaded.skip.has_value());
  CHECK(loaded.skip->raw() == outcome.skip->raw());
}

TEST_CASE("vanilla q-table files carry an explicit null skip table") {
  const auto dir = fresh_dir("qt_null");
  const std::string path = (dir / "qt.json").string();
  BehaviourQ q(4, 0.0);
  q.at(2, 1) = -0.25;
  save_qtables(path, {"mini", AgentConfig{}, q, std::nullopt});
  CHECK(slurp(path).find("\"skip\":null") != std::string::npos);
  const QTables loaded = load_qtables(path);
  CHECK_FALSE(loaded.skip.has_value());
  CHECK(loaded.behaviour.raw() == q.raw());
}

TEST_CASE("q-table loading validates the document") {
  const auto dir = fresh_dir("qt_bad");
  const std::string path = (dir / "qt.json").string();
  BehaviourQ q(3, 0.0);
  SkipQ sq(3, 2, 0.0);
  save_qtables(path, {"mini", AgentConfig{0.1, 0.99, 2, 0.0}, q, sq});
  const std::string good = slurp(path);

  SUBCASE("truncated file") {
    spit(path, good.substr(0, good.size() / 2));
    CHECK_THROWS_AS(load_qtables(path), ConfigError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_WITH_AS(load_qtables((dir / "nope.json").string()), Contains("cannot read"),
                         ConfigError);
  }
  SUBCASE("wrong version") {
    nlohmann::json j = nlohmann::json::parse(good);
    j["version"] = 2;
    spit(path, j.dump());
    CHECK_THROWS_WITH_AS(load_qtables(path), Contains("version"), ConfigError);
  }
  SUBCASE("behaviour row of the wrong width") {
    nlohmann::json j = nlohmann::json::parse(good);
    j["behaviour"][1] = {0.0, 0.0, 0.0};
    spit(path, j.dump());
    CHECK_THROWS_WITH_AS(load_qtables(path), Contains("behaviour[1]"), ConfigError);
  }
  SUBCASE("skip table with too few states") {
    nlohmann::json j = nlohmann::json::parse(good);
    j["skip"].erase(2);
    spit(path, j.dump());
    CHECK_THROWS_WITH_AS(load_qtables(path), Contains("skip"), ConfigError);
  }
  SUBCASE("skip entry count disagrees with config.max_skip") {
    nlohmann::json j = nlohmann::json::parse(good);
    j["skip"][0][0] = {0.0};
    spit(path, j.dump());
    CHECK_THROWS_WITH_AS(load_qtables(path), Contains("skip[0][0]"), ConfigError);
  }
  SUBCASE("non-finite value") {
    // The JSON parser already refuses overflowing literals, so nothing
    // non-finite can reach the tables; the error still names the culprit.
    spit(path, std::string(good).replace(good.find("\"behaviour\":[[0.0"), 17,
                                         "\"behaviour\":[[1e999"));
    CHECK_THROWS_WITH_AS(load_qtables(path), Contains("1e999"), ConfigError);
  }
  SUBCASE("non-numeric value") {
    nlohmann::json j = nlohmann::json::parse(good);
    j["behaviour"][2][3] = nullptr;
    spit(path, j.dump());
    CHECK_THROWS_WITH_AS(load_qtables(path), Contains("behaviour[2][3]"), ConfigError);
  }
}

TEST_CASE("plot data is one long-format row per curve, metric, checkpoint") {
  TrainLog log;
  log.checkpoints.push_back({0, -1.0, 31.0, 31.0, 1.0});
  log.checkpoints.push_back({1, 1.0, 15.0, 4.0, 0.5});
  log.checkpoints.push_back({2, 1.0, 15.0, 4.0, 0.0});

  SUBCASE("row count and header") {
    std::ostringstream out;
    emit_plot_data({{"tq", "cliff", "linear", 0, log}}, {"eval_reward", "eval_decisions"}, out);
    std::istringstream lines(out.str());
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "agent,env,schedule,seed,episode,metric,value");
    std::vector<std::string> rows;
    while (std::getline(lines, line)) rows.push_back(line);
    REQUIRE(rows.size() == 6);  // 2 metrics x 3 checkpoints
    CHECK(rows[0] == "tq,cliff,linear,0,0,eval_reward,-1");
    CHECK(rows[3] == "tq,cliff,linear,0,0,eval_decisions,31");
  }
  SUBCASE("the seed column separates runs") {
    std::ostringstream out;
    emit_plot_data({{"q", "zigzag", "log", 3, log}, {"q", "zigzag", "log", 8, log}}, {"epsilon"},
                   out);
    CHECK(out.str().find("q,zigzag,log,3,0,epsilon,1") != std::string::npos);
    CHECK(out.str().find("q,zigzag,log,8,0,epsilon,1") != std::string::npos);
  }
  SUBCASE("bad input is rejected before the header is written") {
    std::ostringstream out;
    CHECK_THROWS_AS(emit_plot_data({}, {"eval_reward"}, out), ConfigError);
    CHECK_THROWS_AS(emit_plot_data({{"q", "cliff", "linear", 0, log}}, {}, out), ConfigError);
    CHECK_THROWS_WITH_AS(emit_plot_data({{"q", "cliff", "linear", 0, log}}, {"speed"}, out),
                         Contains("speed"), ConfigError);
    CHECK(out.str().empty());
  }
}

TEST_CASE("a table cell matches a standalone run of the same settings") {
  TableRequest request;
  request.envs = {"cliff"};
  request.schedules = {"const"};
  request.agents = {"q", "tq"};
  request.sweep_skips = {};
  request.seeds = {0, 1};
  request.episodes = 60;
  const std::vector<TableCell> cells = reproduce_table(request);
  REQUIRE(cells.size() == 2);

  RunConfig config;
  config.env = "cliff";
  config.agent = "tq";
  config.episodes = 60;
  config.schedule = Schedule::constant();
  config.seeds = {0, 1};
  const RunSummary standalone = run(config);
  CHECK(cells[1].agent == "tq");
  CHECK(cells[1].auc_mean == standalone.auc_mean);
  CHECK(cells[1].auc_std == standalone.auc_std);
  CHECK(cells[1].decisions_mean == standalone.decisions_mean);
  CHECK(cells[0].agent == "q");
  CHECK(cells[0].max_skip == 1);
}

TEST_CASE("the skip sweep reuses the grid cell it duplicates") {
  TableRequest request;
  request.envs = {"zigzag"};
  request.schedules = {"linear"};
  request.agents = {"tq"};
  request.agent_cfg.max_skip = 7;
  request.sweep_skips = {1, 7};
  request.seeds = {0};
  request.episodes = 30;
  const std::vector<TableCell> cells = reproduce_table(request);
  REQUIRE(cells.size() == 2);  // grid J=7 row, then sweep J=1; J=7 collapsed
  CHECK(cells[0].max_skip == 7);
  CHECK(cells[1].max_skip == 1);
}

TEST_CASE("table CSV carries the documented header") {
  const std::string csv = table_csv({{"cliff", "linear", "tq", 7, 20, 0.99, 0.001, 5.25, 0.5}});
  CHECK(csv ==
        "env,schedule,agent,max_skip,seeds,auc_mean,auc_std,decisions_mean,decisions_std\n"
        "cliff,linear,tq,7,20,0.99,0.001,5.25,0.5\n");
}

TEST_CASE("table request validation") {
  TableRequest request;
  request.seeds = {0};
  request.episodes = 10;
  SUBCASE("unknown agent") {
    request.agents = {"dqn"};
    CHECK_THROWS_WITH_AS(reproduce_table(request), Contains("dqn"), ConfigError);
  }
  SUBCASE("unknown schedule") {
    request.schedules = {"cosine"};
    CHECK_THROWS_AS(reproduce_table(request), ConfigError);
  }
  SUBCASE("empty seeds") {
    request.seeds = {};
    CHECK_THROWS_WITH_AS(reproduce_table(request), Contains("seed"), ConfigError);
  }
  SUBCASE("bad sweep length") {
    request.sweep_skips = {0};
    CHECK_THROWS_AS(reproduce_table(request), ConfigError);
  }
}

TEST_SUITE_END();
