#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "skipq/agents.hpp"
#include "skipq/grid.hpp"
#include "skipq/metrics.hpp"
#include "skipq/schedule.hpp"

namespace skipq {

// Everything one experiment needs: which grid, which agent, how long, and
// where the artifacts go. `env` is a builtin layout name or the path of an
// ASCII map file; `agent` is q (vanilla), tq (skip-aware), or teq
// (temporally-extended epsilon-greedy). An empty `out_dir` keeps the run
// in memory.
struct RunConfig {
  std::string env = "cliff";
  std::string agent = "tq";
  int episodes = 10000;
  Schedule schedule;
  AgentConfig agent_cfg;
  DurationDist te_duration;  // exploration-event durations, teq only
  int eval_every = 1;
  int eval_repeats = 1;
  std::vector<std::uint64_t> seeds = {0};
  std::string out_dir;
  int jobs = 1;

  void validate() const;  // ConfigError on any invalid field
};

// Seed list syntax: comma-separated entries, each either a single number or
// an inclusive range "lo-hi" ("0-19", "3,5,7", "0-2,9"). Duplicates, empty
// entries, and reversed ranges raise ConfigError.
std::vector<std::uint64_t> parse_seeds(const std::string& text);

// Builtin layout name, else a map file path. Unknown names, unreadable
// files, and malformed maps raise ConfigError.
GridSpec resolve_env(const std::string& env);

// Result of training one seed: the learned tables plus the checkpoint log.
// `skip` is present only for the tq agent.
struct SeedOutcome {
  std::uint64_t seed;
  BehaviourQ behaviour;
  std::optional<SkipQ> skip;
  TrainLog log;
};

SeedOutcome train_seed(const GridSpec& spec, const RunConfig& config, std::uint64_t seed);

// All seeds of a run, in `config.seeds` order regardless of `jobs`. Workers
// own their env and RNG; the first worker exception is rethrown.
std::vector<SeedOutcome> train_all_seeds(const GridSpec& spec, const RunConfig& config);

struct SeedSummary {
  std::uint64_t seed;
  double auc;
  double mean_decisions;
  // First checkpoint whose evaluation reward equals the layout's maximum;
  // absent when no checkpoint reaches it.
  std::optional<int> first_success_episode;
};

struct RunSummary {
  std::vector<SeedSummary> per_seed;
  double auc_mean;
  double auc_std;  // population standard deviation across seeds
  double decisions_mean;
  // Median of the per-seed first-success episodes, with failures ordered
  // after every success; absent when the median lands on a failure.
  std::optional<double> first_success_median;
  double wall_clock_seconds = 0.0;
};

SeedSummary summarize_seed(const GridSpec& spec, const SeedOutcome& outcome);
RunSummary summarize(const GridSpec& spec, const std::vector<SeedOutcome>& outcomes);

// Checkpoint log as a curve CSV: header
// `episode,eval_reward,eval_steps,eval_decisions,epsilon`, one row per
// checkpoint, '\n' newlines, fixed shortest-round-trip decimals.
std::string curve_csv(const TrainLog& log);

// Inverse of curve_csv; recovers the exact doubles. Malformed text raises
// ConfigError naming the line.
TrainLog parse_curve_csv(const std::string& text);

// Trains every seed and, when `out_dir` is set, writes `curve_<seed>.csv`,
// `qtables_<seed>.json`, and `summary.json` (aggregates plus the full
// config echo). Invalid config raises ConfigError; filesystem failures
// raise IoError.
RunSummary run(const RunConfig& config);

// Learned tables with enough context to reload them. `skip` is absent for
// agents without a skip policy (saved as JSON null).
struct QTables {
  std::string env;
  AgentConfig config;
  BehaviourQ behaviour;
  std::optional<SkipQ> skip;
};

// JSON schema: {"version":1,"env":...,"actions":4,"behaviour":[states][4],
// "skip":[states][4][max_skip]|null,"config":{...}}. Serialization is
// value-exact, so save-then-load compares equal element-wise.
void save_qtables(const std::string& path, const QTables& tables);

// Validates version, dimensions, and finiteness; errors name the offending
// field. Unreadable or truncated files raise ConfigError with no partial
// result.
QTables load_qtables(const std::string& path);

// One learning curve tagged with the run coordinates that produced it.
struct NamedCurve {
  std::string agent;
  std::string env;
  std::string schedule;
  std::uint64_t seed;
  TrainLog log;
};

// Long-format CSV `agent,env,schedule,seed,episode,metric,value` with one
// row per (curve, metric, checkpoint), for external plotting tools. Metrics
// are column names of the curve CSV. Empty input or an unknown metric
// raises ConfigError.
void emit_plot_data(const std::vector<NamedCurve>& curves,
                    const std::vector<std::string>& metrics, std::ostream& out);

// Cartesian grid of benchmark settings plus the zigzag skip-length sweep.
struct TableRequest {
  std::vector<std::string> envs = {"cliff", "bridge", "zigzag"};
  std::vector<std::string> schedules = {"linear", "log", "const"};
  std::vector<std::string> agents = {"q", "tq"};
  // Extra tq cells on zigzag/linear, one per listed max-skip value.
  std::vector<int> sweep_skips = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16};
  std::vector<std::uint64_t> seeds = {0, 1, 2,  3,  4,  5,  6,  7,  8,  9,
                                      10, 11, 12, 13, 14, 15, 16, 17, 18, 19};
  int episodes = 10000;
  AgentConfig agent_cfg;
  int eval_every = 1;
  int jobs = 1;

  void validate() const;
};

// One aggregate row of the comparison table.
struct TableCell {
  std::string env;
  std::string schedule;
  std::string agent;
  int max_skip;  // 1 for agents without a skip policy
  int seeds;
  double auc_mean;
  double auc_std;
  double decisions_mean;
  double decisions_std;
};

// Runs every requested cell (duplicates collapsed) and returns the rows in
// request order: the env x schedule x agent grid first, then the sweep.
// Each cell matches a standalone run() with the same settings.
std::vector<TableCell> reproduce_table(const TableRequest& request);

// Table rows as CSV with header
// `env,schedule,agent,max_skip,seeds,auc_mean,auc_std,decisions_mean,decisions_std`.
std::string table_csv(const std::vector<TableCell>& cells);

}  // namespace skipq
