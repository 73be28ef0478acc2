#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "skipq/grid.hpp"
#include "skipq/rng.hpp"
#include "skipq/schedule.hpp"
#include "skipq/skip.hpp"

namespace skipq {

struct AgentConfig {
  double alpha = 0.1;
  double gamma = 0.99;
  int max_skip = 7;
  double q_init = 0.0;

  void validate() const;  // alpha, gamma in (0,1]; max_skip >= 1; q_init finite
};

// Dense Q(s,a) table. States are GridSpec::index values.
class BehaviourQ {
 public:
  BehaviourQ(int num_states, double init_value);

  int num_states() const { return num_states_; }
  double init_value() const { return init_value_; }

  double at(int state, int action) const { return values_[state * kNumActions + action]; }
  double& at(int state, int action) { return values_[state * kNumActions + action]; }

  double max_value(int state) const;

  const std::vector<double>& raw() const { return values_; }
  std::vector<double>& raw() { return values_; }

 private:
  int num_states_;
  double init_value_;
  std::vector<double> values_;
};

// Dense Q(s, j | a) table, skip lengths 1..max_skip.
class SkipQ {
 public:
  SkipQ(int num_states, int max_skip, double init_value);

  int num_states() const { return num_states_; }
  int max_skip() const { return max_skip_; }
  double init_value() const { return init_value_; }

  double at(int state, int action, int skip) const {
    return values_[(state * kNumActions + action) * max_skip_ + (skip - 1)];
  }
  double& at(int state, int action, int skip) {
    return values_[(state * kNumActions + action) * max_skip_ + (skip - 1)];
  }

  const std::vector<double>& raw() const { return values_; }
  std::vector<double>& raw() { return values_; }

 private:
  int num_states_;
  int max_skip_;
  double init_value_;
  std::vector<double> values_;
};

// Per-checkpoint greedy-evaluation results collected during training.
// Steps/decisions are means when eval_repeats > 1, hence doubles.
struct Checkpoint {
  int episode;
  double eval_reward;
  double eval_steps;
  double eval_decisions;
  double epsilon;
};

struct TrainLog {
  std::vector<Checkpoint> checkpoints;
};

// Epsilon-greedy selection. RNG draws, in order: one uniform01 for the
// epsilon test (only when epsilon > 0), then either one uniform_int for a
// random choice or one uniform_int to break a tie (only when several entries
// share the maximum). Argmax comparisons are exact.
Action select_action(const BehaviourQ& q, int state, double epsilon, Rng& rng);

// Same discipline over skip values 1..max_skip, conditioned on the action.
// max_skip == 1 is forced and consumes no draws.
int select_skip(const SkipQ& sq, int state, Action a, double epsilon, Rng& rng);

// One-step target: r + gamma * max_a' Q(s_next, a') (bootstrap dropped when
// terminal). Returns the updated cell value.
double td_update(BehaviourQ& q, int state, Action a, double reward, int next_state,
                 bool terminal, const AgentConfig& cfg);

// Skip target: R_c + gamma^length * max_a' Q(end, a'), bootstrapping from the
// behaviour table only — skip values never feed their own targets. Returns
// the updated cell value.
double td_update_skip(SkipQ& sq, const BehaviourQ& q, const GridSpec& spec,
                      const SkipConnection& conn, const AgentConfig& cfg);

// One action+skip decision applied to a live episode: select, execute,
// one-step update per transition, then a skip update per sub-skip connection.
// Returned counts let tests check the update bookkeeping.
struct SkipDecision {
  SkipTrajectory traj;
  int one_step_updates = 0;
  int skip_updates = 0;
};
SkipDecision skip_q_decision(GridEnv& env, BehaviourQ& q, SkipQ& sq, double epsilon,
                             const AgentConfig& cfg, Rng& rng);

// Exploration-event durations for temporally-extended epsilon-greedy: either
// a zeta(2) draw truncated at `cap`, or uniform over {1..max_skip}. A
// single-valued distribution consumes no draws.
struct DurationDist {
  enum class Kind { kZeta, kUniform };
  Kind kind = Kind::kZeta;
  int cap = 100;

  void validate() const;
};

// Training loops. One seeded RNG drives everything in a run, including the
// greedy evaluation rollouts; a checkpoint is taken after every episode e
// with e % eval_every == 0, using that episode's epsilon. eval_repeats > 1
// averages that many rollouts per checkpoint (deterministic grids only need
// more than one when tie-breaking leaves the greedy policy ambiguous).
std::pair<BehaviourQ, TrainLog> train_vanilla_q(const GridSpec& spec, const AgentConfig& cfg,
                                                const Schedule& sched, int episodes,
                                                int eval_every, uint64_t seed,
                                                int eval_repeats = 1);

struct SkipTrainResult {
  BehaviourQ behaviour;
  SkipQ skip;
  TrainLog log;
};
SkipTrainResult train_skip_q(const GridSpec& spec, const AgentConfig& cfg,
                             const Schedule& sched, int episodes, int eval_every,
                             uint64_t seed, int eval_repeats = 1);

// Vanilla Q-learning whose exploratory decisions persist a random action for
// a sampled duration (one-step updates throughout).
std::pair<BehaviourQ, TrainLog> train_te_greedy_q(const GridSpec& spec, const AgentConfig& cfg,
                                                  const Schedule& sched, int episodes,
                                                  int eval_every, uint64_t seed,
                                                  const DurationDist& dist = {},
                                                  int eval_repeats = 1);

}  // namespace skipq
