#include "skipq/experiment.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <system_error>
#include <thread>
#include <tuple>
#include <utility>

#include "json.hpp"
#include "skipq/errors.hpp"
#include "skipq/numfmt.hpp"

namespace skipq {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::uint64_t parse_u64(std::string_view text) {
  std::uint64_t value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw ConfigError("seeds: invalid number '" + std::string(text) + "'");
  }
  return value;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write to " + path.string() + " failed");
}

std::string read_text_file(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(std::string(what) + ": cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

}  // namespace

void RunConfig::validate() const {
  if (env.empty()) throw ConfigError("env: must not be empty");
  if (agent != "q" && agent != "tq" && agent != "teq") {
    throw ConfigError("agent: expected q, tq, or teq, got '" + agent + "'");
  }
  if (episodes < 1) throw ConfigError("episodes: must be >= 1");
  if (eval_every < 1) throw ConfigError("eval_every: must be >= 1");
  if (eval_repeats < 1) throw ConfigError("eval_repeats: must be >= 1");
  if (jobs < 1) throw ConfigError("jobs: must be >= 1");
  if (seeds.empty()) throw ConfigError("seeds: at least one seed required");
  std::vector<std::uint64_t> sorted = seeds;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ConfigError("seeds: duplicate seed");
  }
  schedule.validate();
  agent_cfg.validate();
  te_duration.validate();
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view part = std::string_view(text).substr(pos, comma - pos);
    const std::size_t dash = part.find('-');
    if (dash == std::string_view::npos) {
      seeds.push_back(parse_u64(part));
    } else {
      const std::uint64_t lo = parse_u64(part.substr(0, dash));
      const std::uint64_t hi = parse_u64(part.substr(dash + 1));
      if (lo > hi) {
        throw ConfigError("seeds: reversed range '" + std::string(part) + "'");
      }
      for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    }
    pos = comma + 1;
  }
  std::vector<std::uint64_t> sorted = seeds;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ConfigError("seeds: duplicate seed in '" + text + "'");
  }
  return seeds;
}

GridSpec resolve_env(const std::string& env) {
  if (env == "cliff" || env == "bridge" || env == "zigzag" || env == "open23") {
    return builtin_grid(env);
  }
  const std::string text = read_text_file(env, "env");
  return load_grid(text, std::filesystem::path(env).stem().string());
}

SeedOutcome train_seed(const GridSpec& spec, const RunConfig& config, std::uint64_t seed) {
  if (config.agent == "tq") {
    SkipTrainResult r = train_skip_q(spec, config.agent_cfg, config.schedule, config.episodes,
                                     config.eval_every, seed, config.eval_repeats);
    return {seed, std::move(r.behaviour), std::move(r.skip), std::move(r.log)};
  }
  if (config.agent == "q") {
    auto [q, log] = train_vanilla_q(spec, config.agent_cfg, config.schedule, config.episodes,
                                    config.eval_every, seed, config.eval_repeats);
    return {seed, std::move(q), std::nullopt, std::move(log)};
  }
  if (config.agent == "teq") {
    auto [q, log] = train_te_greedy_q(spec, config.agent_cfg, config.schedule, config.episodes,
                                      config.eval_every, seed, config.te_duration,
                                      config.eval_repeats);
    return {seed, std::move(q), std::nullopt, std::move(log)};
  }
  throw ConfigError("agent: expected q, tq, or teq, got '" + config.agent + "'");
}

std::vector<SeedOutcome> train_all_seeds(const GridSpec& spec, const RunConfig& config) {
  config.validate();
  std::vector<std::optional<SeedOutcome>> slots(config.seeds.size());
  const int jobs = std::min<int>(config.jobs, static_cast<int>(slots.size()));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < slots.size(); ++i) {
      slots[i] = train_seed(spec, config, config.seeds[i]);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= slots.size()) return;
        try {
          slots[i] = train_seed(spec, config, config.seeds[i]);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }
  std::vector<SeedOutcome> outcomes;
  outcomes.reserve(slots.size());
  for (std::optional<SeedOutcome>& slot : slots) outcomes.push_back(std::move(*slot));
  return outcomes;
}

SeedSummary summarize_seed(const GridSpec& spec, const SeedOutcome& outcome) {
  const LearningCurve curve = curve_of(outcome.log);
  SeedSummary s{outcome.seed, normalized_auc(curve, spec.reward_min(), spec.reward_max()),
                mean_decisions(curve), std::nullopt};
  for (const Checkpoint& c : outcome.log.checkpoints) {
    if (c.eval_reward == spec.reward_max()) {
      s.first_success_episode = c.episode;
      break;
    }
  }
  return s;
}

namespace {

// Median over seeds where never-succeeding seeds order after every success;
// a median that lands on such a seed is reported as absent.
std::optional<double> median_first_success(const std::vector<SeedSummary>& per_seed) {
  std::vector<std::optional<int>> firsts;
  firsts.reserve(per_seed.size());
  for (const SeedSummary& s : per_seed) firsts.push_back(s.first_success_episode);
  std::sort(firsts.begin(), firsts.end(), [](const auto& a, const auto& b) {
    if (a.has_value() != b.has_value()) return a.has_value();
    return a.has_value() && *a < *b;
  });
  const std::size_t n = firsts.size();
  if (n % 2 == 1) {
    const auto& mid = firsts[n / 2];
    if (!mid) return std::nullopt;
    return static_cast<double>(*mid);
  }
  const auto& lo = firsts[n / 2 - 1];
  const auto& hi = firsts[n / 2];
  if (!lo || !hi) return std::nullopt;
  return (static_cast<double>(*lo) + static_cast<double>(*hi)) / 2.0;
}

double population_std(const std::vector<double>& values, double mean) {
  double var = 0.0;
  for (const double v : values) var += (v - mean) * (v - mean);
  return std::sqrt(var / static_cast<double>(values.size()));
}

}  // namespace

RunSummary summarize(const GridSpec& spec, const std::vector<SeedOutcome>& outcomes) {
  if (outcomes.empty()) throw std::invalid_argument("summarize: no outcomes");
  RunSummary summary;
  summary.per_seed.reserve(outcomes.size());
  std::vector<double> aucs;
  double decisions_acc = 0.0;
  for (const SeedOutcome& outcome : outcomes) {
    summary.per_seed.push_back(summarize_seed(spec, outcome));
    aucs.push_back(summary.per_seed.back().auc);
    decisions_acc += summary.per_seed.back().mean_decisions;
  }
  const double n = static_cast<double>(outcomes.size());
  summary.auc_mean = std::accumulate(aucs.begin(), aucs.end(), 0.0) / n;
  summary.auc_std = population_std(aucs, summary.auc_mean);
  summary.decisions_mean = decisions_acc / n;
  summary.first_success_median = median_first_success(summary.per_seed);
  return summary;
}

std::string curve_csv(const TrainLog& log) {
  std::string out = "episode,eval_reward,eval_steps,eval_decisions,epsilon\n";
  for (const Checkpoint& c : log.checkpoints) {
    out += std::to_string(c.episode);
    out += ',';
    out += format_double(c.eval_reward);
    out += ',';
    out += format_double(c.eval_steps);
    out += ',';
    out += format_double(c.eval_decisions);
    out += ',';
    out += format_double(c.epsilon);
    out += '\n';
  }
  return out;
}

namespace {

double parse_csv_double(std::string_view field, int line_no) {
  double value = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw ConfigError("curve csv line " + std::to_string(line_no) + ": bad number '" +
                      std::string(field) + "'");
  }
  return value;
}

}  // namespace

TrainLog parse_curve_csv(const std::string& text) {
  static constexpr const char* kHeader = "episode,eval_reward,eval_steps,eval_decisions,epsilon";
  TrainLog log;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      if (line != kHeader) throw ConfigError("curve csv line 1: expected header");
      continue;
    }
    std::array<std::string_view, 5> fields;
    const std::string_view view = line;
    std::size_t pos = 0;
    for (int f = 0; f < 5; ++f) {
      const std::size_t comma = view.find(',', pos);
      const bool last = f == 4;
      if (last != (comma == std::string_view::npos)) {
        throw ConfigError("curve csv line " + std::to_string(line_no) + ": expected 5 fields");
      }
      fields[f] = view.substr(pos, (last ? view.size() : comma) - pos);
      pos = comma + 1;
    }
    Checkpoint c{};
    int episode = 0;
    const auto res =
        std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), episode);
    if (fields[0].empty() || res.ec != std::errc{} ||
        res.ptr != fields[0].data() + fields[0].size()) {
      throw ConfigError("curve csv line " + std::to_string(line_no) + ": bad episode '" +
                        std::string(fields[0]) + "'");
    }
    c.episode = episode;
    c.eval_reward = parse_csv_double(fields[1], line_no);
    c.eval_steps = parse_csv_double(fields[2], line_no);
    c.eval_decisions = parse_csv_double(fields[3], line_no);
    c.epsilon = parse_csv_double(fields[4], line_no);
    log.checkpoints.push_back(c);
  }
  if (line_no == 0) throw ConfigError("curve csv: empty input");
  return log;
}

namespace {

ordered_json schedule_json(const Schedule& sched) {
  ordered_json j;
  j["kind"] = schedule_kind_name(sched.kind);
  if (sched.kind == ScheduleKind::kConstant) {
    j["eps"] = sched.constant_eps;
  } else {
    j["eps_start"] = sched.eps_start;
    j["eps_end"] = sched.eps_end;
  }
  return j;
}

ordered_json config_json(const RunConfig& config) {
  ordered_json j;
  j["env"] = config.env;
  j["agent"] = config.agent;
  j["episodes"] = config.episodes;
  j["max_skip"] = config.agent_cfg.max_skip;
  j["schedule"] = schedule_json(config.schedule);
  j["alpha"] = config.agent_cfg.alpha;
  j["gamma"] = config.agent_cfg.gamma;
  j["q_init"] = config.agent_cfg.q_init;
  j["eval_every"] = config.eval_every;
  j["eval_repeats"] = config.eval_repeats;
  j["seeds"] = config.seeds;
  j["out"] = config.out_dir;
  j["jobs"] = config.jobs;
  j["te_duration"] = {
      {"kind", config.te_duration.kind == DurationDist::Kind::kZeta ? "zeta" : "uniform"},
      {"cap", config.te_duration.cap}};
  return j;
}

void write_artifacts(const GridSpec& spec, const RunConfig& config,
                     const std::vector<SeedOutcome>& outcomes, const RunSummary& summary) {
  const std::filesystem::path dir = config.out_dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

  for (const SeedOutcome& outcome : outcomes) {
    const std::string tag = std::to_string(outcome.seed);
    write_text_file(dir / ("curve_" + tag + ".csv"), curve_csv(outcome.log));
    QTables tables{spec.name(), config.agent_cfg, outcome.behaviour, outcome.skip};
    save_qtables((dir / ("qtables_" + tag + ".json")).string(), tables);
  }

  ordered_json j;
  j["version"] = 1;
  j["config"] = config_json(config);
  ordered_json per_seed = ordered_json::array();
  for (const SeedSummary& s : summary.per_seed) {
    ordered_json entry;
    entry["seed"] = s.seed;
    entry["auc"] = s.auc;
    entry["mean_decisions"] = s.mean_decisions;
    if (s.first_success_episode) {
      entry["first_success_episode"] = *s.first_success_episode;
    } else {
      entry["first_success_episode"] = nullptr;
    }
    per_seed.push_back(std::move(entry));
  }
  j["per_seed"] = std::move(per_seed);
  j["aggregate"]["auc_mean"] = summary.auc_mean;
  j["aggregate"]["auc_std"] = summary.auc_std;
  j["aggregate"]["decisions_mean"] = summary.decisions_mean;
  if (summary.first_success_median) {
    j["aggregate"]["first_success_median"] = *summary.first_success_median;
  } else {
    j["aggregate"]["first_success_median"] = nullptr;
  }
  j["wall_clock_seconds"] = summary.wall_clock_seconds;
  write_text_file(dir / "summary.json", j.dump(2) + "\n");
}

}  // namespace

RunSummary run(const RunConfig& config) {
  config.validate();
  const GridSpec spec = resolve_env(config.env);
  const auto start = std::chrono::steady_clock::now();
  const std::vector<SeedOutcome> outcomes = train_all_seeds(spec, config);
  RunSummary summary = summarize(spec, outcomes);
  summary.wall_clock_seconds = std::chrono::duration<double>(
      std::chrono::steady_clock::now() - start).count();
  if (!config.out_dir.empty()) write_artifacts(spec, config, outcomes, summary);
  return summary;
}

void save_qtables(const std::string& path, const QTables& tables) {
  const int states = tables.behaviour.num_states();
  ordered_json j;
  j["version"] = 1;
  j["env"] = tables.env;
  j["actions"] = kNumActions;
  ordered_json behaviour = ordered_json::array();
  for (int s = 0; s < states; ++s) {
    ordered_json row = ordered_json::array();
    for (int a = 0; a < kNumActions; ++a) row.push_back(tables.behaviour.at(s, a));
    behaviour.push_back(std::move(row));
  }
  j["behaviour"] = std::move(behaviour);
  if (tables.skip) {
    ordered_json skip = ordered_json::array();
    for (int s = 0; s < states; ++s) {
      ordered_json per_action = ordered_json::array();
      for (int a = 0; a < kNumActions; ++a) {
        ordered_json per_skip = ordered_json::array();
        for (int k = 1; k <= tables.skip->max_skip(); ++k) {
          per_skip.push_back(tables.skip->at(s, a, k));
        }
        per_action.push_back(std::move(per_skip));
      }
      skip.push_back(std::move(per_action));
    }
    j["skip"] = std::move(skip);
  } else {
    j["skip"] = nullptr;
  }
  j["config"] = {{"alpha", tables.config.alpha},
                 {"gamma", tables.config.gamma},
                 {"max_skip", tables.config.max_skip},
                 {"q_init", tables.config.q_init}};
  write_text_file(path, j.dump() + "\n");
}

namespace {

double finite_number_at(const json& value, const std::string& field) {
  if (!value.is_number()) throw ConfigError(field + ": expected a number");
  const double d = value.get<double>();
  if (!std::isfinite(d)) throw ConfigError(field + ": expected a finite number");
  return d;
}

const json& array_at(const json& value, const std::string& field, std::size_t size) {
  if (!value.is_array()) throw ConfigError(field + ": expected an array");
  if (size != 0 && value.size() != size) {
    throw ConfigError(field + ": expected " + std::to_string(size) + " entries, got " +
                      std::to_string(value.size()));
  }
  return value;
}

}  // namespace

QTables load_qtables(const std::string& path) {
  const std::string text = read_text_file(path, "q-table file");
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError("q-table file '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw ConfigError("q-table file: expected a JSON object");
  for (const char* key : {"version", "env", "actions", "behaviour", "skip", "config"}) {
    if (!j.contains(key)) throw ConfigError(std::string(key) + ": missing field");
  }
  if (!j["version"].is_number_integer() || j["version"].get<int>() != 1) {
    throw ConfigError("version: expected 1");
  }
  if (!j["env"].is_string()) throw ConfigError("env: expected a string");
  if (!j["actions"].is_number_integer() || j["actions"].get<int>() != kNumActions) {
    throw ConfigError("actions: expected " + std::to_string(kNumActions));
  }
  const json& config = j["config"];
  if (!config.is_object()) throw ConfigError("config: expected an object");
  AgentConfig cfg;
  cfg.alpha = finite_number_at(config.value("alpha", json()), "config.alpha");
  cfg.gamma = finite_number_at(config.value("gamma", json()), "config.gamma");
  if (!config.contains("max_skip") || !config["max_skip"].is_number_integer()) {
    throw ConfigError("config.max_skip: expected an integer");
  }
  cfg.max_skip = config["max_skip"].get<int>();
  cfg.q_init = finite_number_at(config.value("q_init", json()), "config.q_init");
  cfg.validate();

  const json& behaviour = array_at(j["behaviour"], "behaviour", 0);
  if (behaviour.empty()) throw ConfigError("behaviour: expected at least one state");
  const int states = static_cast<int>(behaviour.size());
  BehaviourQ q(states, cfg.q_init);
  for (int s = 0; s < states; ++s) {
    const std::string field = "behaviour[" + std::to_string(s) + "]";
    const json& row = array_at(behaviour[s], field, kNumActions);
    for (int a = 0; a < kNumActions; ++a) {
      q.at(s, a) = finite_number_at(row[a], field + "[" + std::to_string(a) + "]");
    }
  }

  std::optional<SkipQ> sq;
  if (!j["skip"].is_null()) {
    const json& skip = array_at(j["skip"], "skip", static_cast<std::size_t>(states));
    sq.emplace(states, cfg.max_skip, cfg.q_init);
    for (int s = 0; s < states; ++s) {
      const std::string state_field = "skip[" + std::to_string(s) + "]";
      const json& per_action = array_at(skip[s], state_field, kNumActions);
      for (int a = 0; a < kNumActions; ++a) {
        const std::string action_field = state_field + "[" + std::to_string(a) + "]";
        const json& per_skip =
            array_at(per_action[a], action_field, static_cast<std::size_t>(cfg.max_skip));
        for (int k = 1; k <= cfg.max_skip; ++k) {
          sq->at(s, a, k) = finite_number_at(
              per_skip[k - 1], action_field + "[" + std::to_string(k - 1) + "]");
        }
      }
    }
  }
  return {j["env"].get<std::string>(), cfg, std::move(q), std::move(sq)};
}

namespace {

bool is_curve_metric(const std::string& metric) {
  return metric == "eval_reward" || metric == "eval_steps" || metric == "eval_decisions" ||
         metric == "epsilon";
}

double metric_value(const Checkpoint& c, const std::string& metric) {
  if (metric == "eval_reward") return c.eval_reward;
  if (metric == "eval_steps") return c.eval_steps;
  if (metric == "eval_decisions") return c.eval_decisions;
  return c.epsilon;
}

}  // namespace

void emit_plot_data(const std::vector<NamedCurve>& curves,
                    const std::vector<std::string>& metrics, std::ostream& out) {
  if (curves.empty()) throw ConfigError("plot data: need at least one curve");
  if (metrics.empty()) throw ConfigError("plot data: need at least one metric");
  for (const std::string& metric : metrics) {
    if (!is_curve_metric(metric)) {
      throw ConfigError("plot data: unknown metric '" + metric +
                        "' (expected a curve CSV column)");
    }
  }
  out << "agent,env,schedule,seed,episode,metric,value\n";
  for (const NamedCurve& curve : curves) {
    for (const std::string& metric : metrics) {
      for (const Checkpoint& c : curve.log.checkpoints) {
        out << curve.agent << ',' << curve.env << ',' << curve.schedule << ',' << curve.seed
            << ',' << c.episode << ',' << metric << ',' << format_double(metric_value(c, metric))
            << '\n';
      }
    }
  }
  if (!out) throw IoError("plot data: write failed");
}

void TableRequest::validate() const {
  if (envs.empty()) throw ConfigError("table: at least one env required");
  if (schedules.empty()) throw ConfigError("table: at least one schedule required");
  if (agents.empty()) throw ConfigError("table: at least one agent required");
  if (seeds.empty()) throw ConfigError("table: at least one seed required");
  if (episodes < 1) throw ConfigError("episodes: must be >= 1");
  if (eval_every < 1) throw ConfigError("eval_every: must be >= 1");
  if (jobs < 1) throw ConfigError("jobs: must be >= 1");
  agent_cfg.validate();
  for (const std::string& agent : agents) {
    if (agent != "q" && agent != "tq" && agent != "teq") {
      throw ConfigError("table: unknown agent '" + agent + "'");
    }
  }
  for (const std::string& schedule : schedules) Schedule::named(schedule);
  for (const int j : sweep_skips) {
    if (j < 1) throw ConfigError("table: sweep max-skip values must be >= 1");
  }
}

std::vector<TableCell> reproduce_table(const TableRequest& request) {
  request.validate();

  struct CellKey {
    std::string env;
    std::string schedule;
    std::string agent;
    int max_skip;
  };
  std::vector<CellKey> order;
  std::set<std::tuple<std::string, std::string, std::string, int>> seen;
  auto add = [&](CellKey key) {
    if (seen.insert({key.env, key.schedule, key.agent, key.max_skip}).second) {
      order.push_back(std::move(key));
    }
  };
  for (const std::string& env : request.envs) {
    for (const std::string& schedule : request.schedules) {
      for (const std::string& agent : request.agents) {
        add({env, schedule, agent, agent == "tq" ? request.agent_cfg.max_skip : 1});
      }
    }
  }
  // Skip-length sweep: always on zigzag with the linear schedule, matching
  // the benchmark layout the sweep is defined for.
  for (const int j : request.sweep_skips) add({"zigzag", "linear", "tq", j});

  std::vector<TableCell> cells;
  cells.reserve(order.size());
  for (const CellKey& key : order) {
    RunConfig rc;
    rc.env = key.env;
    rc.agent = key.agent;
    rc.episodes = request.episodes;
    rc.schedule = Schedule::named(key.schedule);
    rc.agent_cfg = request.agent_cfg;
    rc.agent_cfg.max_skip = key.agent == "tq" ? key.max_skip : request.agent_cfg.max_skip;
    rc.eval_every = request.eval_every;
    rc.seeds = request.seeds;
    rc.jobs = request.jobs;
    const GridSpec spec = resolve_env(key.env);
    const RunSummary summary = summarize(spec, train_all_seeds(spec, rc));
    std::vector<double> decisions;
    decisions.reserve(summary.per_seed.size());
    for (const SeedSummary& s : summary.per_seed) decisions.push_back(s.mean_decisions);
    cells.push_back({key.env, key.schedule, key.agent, key.max_skip,
                     static_cast<int>(request.seeds.size()), summary.auc_mean, summary.auc_std,
                     summary.decisions_mean,
                     population_std(decisions, summary.decisions_mean)});
  }
  return cells;
}

std::string table_csv(const std::vector<TableCell>& cells) {
  std::string out = "env,schedule,agent,max_skip,seeds,auc_mean,auc_std,decisions_mean,decisions_std\n";
  for (const TableCell& cell : cells) {
    out += cell.env;
    out += ',';
    out += cell.schedule;
    out += ',';
    out += cell.agent;
    out += ',';
    out += std::to_string(cell.max_skip);
    out += ',';
    out += std::to_string(cell.seeds);
    out += ',';
    out += format_double(cell.auc_mean);
    out += ',';
    out += format_double(cell.auc_std);
    out += ',';
    out += format_double(cell.decisions_mean);
    out += ',';
    out += format_double(cell.decisions_std);
    out += '\n';
  }
  return out;
}

}  // namespace skipq
