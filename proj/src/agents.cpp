#include "skipq/agents.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "skipq/errors.hpp"
#include "skipq/metrics.hpp"

namespace skipq {
namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in [0, 1]");
  }
}

// Index of an exact-equality argmax over values[0..n), breaking ties with a
// single uniform draw. No draw happens for a unique maximizer.
int argmax_tiebreak(const double* values, int n, Rng& rng) {
  double best = values[0];
  int count = 1;
  for (int i = 1; i < n; ++i) {
    if (values[i] > best) {
      best = values[i];
      count = 1;
    } else if (values[i] == best) {
      ++count;
    }
  }
  int rank = count == 1 ? 0 : rng.uniform_int(count);
  for (int i = 0; i < n; ++i) {
    if (values[i] == best && rank-- == 0) return i;
  }
  return n - 1;  // unreachable
}

}  // namespace

void AgentConfig::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in (0, 1]");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ConfigError("gamma must lie in (0, 1]");
  if (max_skip < 1) throw ConfigError("max_skip must be >= 1");
  if (!std::isfinite(q_init)) throw ConfigError("q_init must be finite");
}

BehaviourQ::BehaviourQ(int num_states, double init_value)
    : num_states_(num_states),
      init_value_(init_value),
      values_(static_cast<size_t>(num_states) * kNumActions, init_value) {
  if (num_states < 1) throw std::invalid_argument("BehaviourQ needs >= 1 state");
}

double BehaviourQ::max_value(int state) const {
  const double* row = &values_[static_cast<size_t>(state) * kNumActions];
  double best = row[0];
  for (int a = 1; a < kNumActions; ++a) best = std::max(best, row[a]);
  return best;
}

SkipQ::SkipQ(int num_states, int max_skip, double init_value)
    : num_states_(num_states),
      max_skip_(max_skip),
      init_value_(init_value),
      values_(static_cast<size_t>(num_states) * kNumActions * max_skip, init_value) {
  if (num_states < 1) throw std::invalid_argument("SkipQ needs >= 1 state");
  if (max_skip < 1) throw std::invalid_argument("SkipQ needs max_skip >= 1");
}

Action select_action(const BehaviourQ& q, int state, double epsilon, Rng& rng) {
  check_epsilon(epsilon);
  if (epsilon > 0.0 && rng.uniform01() < epsilon) {
    return static_cast<Action>(rng.uniform_int(kNumActions));
  }
  const double* row = &q.raw()[static_cast<size_t>(state) * kNumActions];
  return static_cast<Action>(argmax_tiebreak(row, kNumActions, rng));
}

int select_skip(const SkipQ& sq, int state, Action a, double epsilon, Rng& rng) {
  check_epsilon(epsilon);
  const int J = sq.max_skip();
  if (J == 1) return 1;
  if (epsilon > 0.0 && rng.uniform01() < epsilon) {
    return 1 + rng.uniform_int(J);
  }
  const double* row =
      &sq.raw()[(static_cast<size_t>(state) * kNumActions + static_cast<int>(a)) * J];
  return 1 + argmax_tiebreak(row, J, rng);
}

double td_update(BehaviourQ& q, int state, Action a, double reward, int next_state,
                 bool terminal, const AgentConfig& cfg) {
  double target = reward;
  if (!terminal) target += cfg.gamma * q.max_value(next_state);
  double& cell = q.at(state, static_cast<int>(a));
  cell += cfg.alpha * (target - cell);
  return cell;
}

double td_update_skip(SkipQ& sq, const BehaviourQ& q, const GridSpec& spec,
                      const SkipConnection& conn, const AgentConfig& cfg) {
  if (conn.length < 1 || conn.length > sq.max_skip()) {
    throw std::invalid_argument("connection length outside the skip table");
  }
  double target = conn.discounted_reward;
  if (!conn.end_terminal) {
    double pow_gamma = 1.0;
    for (int k = 0; k < conn.length; ++k) pow_gamma *= cfg.gamma;
    target += pow_gamma * q.max_value(spec.index(conn.end_state));
  }
  double& cell = sq.at(spec.index(conn.start_state), static_cast<int>(conn.action), conn.length);
  cell += cfg.alpha * (target - cell);
  return cell;
}

SkipDecision skip_q_decision(GridEnv& env, BehaviourQ& q, SkipQ& sq, double epsilon,
                             const AgentConfig& cfg, Rng& rng) {
  const GridSpec& spec = env.spec();
  const int state = spec.index(env.state());
  const Action a = select_action(q, state, epsilon, rng);
  const int j = select_skip(sq, state, a, epsilon, rng);

  SkipDecision out;
  out.traj = execute_skip(env, a, j);
  const SkipTrajectory& traj = out.traj;
  const int m = traj.length();
  for (int t = 0; t < m; ++t) {
    const bool terminal = t == m - 1 && traj.terminated;
    td_update(q, spec.index(traj.states[t]), a, traj.rewards[t],
              spec.index(traj.states[t + 1]), terminal, cfg);
    ++out.one_step_updates;
  }
  for (const SkipConnection& conn : build_connectedness_graph(traj, cfg.gamma)) {
    td_update_skip(sq, q, spec, conn, cfg);
    ++out.skip_updates;
  }
  return out;
}

namespace {

void check_train_args(const AgentConfig& cfg, const Schedule& sched, int episodes,
                      int eval_every, int eval_repeats) {
  cfg.validate();
  sched.validate();
  if (episodes < 1) throw ConfigError("episodes must be >= 1");
  if (eval_every < 1) throw ConfigError("eval_every must be >= 1");
  if (eval_repeats < 1) throw ConfigError("eval_repeats must be >= 1");
}

void log_checkpoint(TrainLog& log, const GridSpec& spec, const BehaviourQ& q,
                    const SkipQ* sq, int episode, int eval_every, double epsilon,
                    int repeats, Rng& rng) {
  if (episode % eval_every != 0) return;
  double reward = 0, steps = 0, decisions = 0;
  for (int i = 0; i < repeats; ++i) {
    const EvalRecord rec =
        sq ? evaluate_greedy(spec, q, *sq, rng) : evaluate_greedy(spec, q, rng);
    reward += rec.reward;
    steps += rec.steps;
    decisions += rec.decisions;
  }
  log.checkpoints.push_back(
      {episode, reward / repeats, steps / repeats, decisions / repeats, epsilon});
}

}  // namespace

std::pair<BehaviourQ, TrainLog> train_vanilla_q(const GridSpec& spec, const AgentConfig& cfg,
                                                const Schedule& sched, int episodes,
                                                int eval_every, uint64_t seed,
                                                int eval_repeats) {
  check_train_args(cfg, sched, episodes, eval_every, eval_repeats);
  Rng rng(seed);
  BehaviourQ q(spec.num_states(), cfg.q_init);
  TrainLog log;
  GridEnv env(spec);
  for (int e = 0; e < episodes; ++e) {
    const double eps = epsilon_at(sched, e, episodes);
    State s = env.reset();
    while (env.active()) {
      const int idx = spec.index(s);
      const Action a = select_action(q, idx, eps, rng);
      const StepOutcome out = env.step(a);
      td_update(q, idx, a, out.reward, spec.index(out.next_state), out.terminal, cfg);
      s = out.next_state;
    }
    log_checkpoint(log, spec, q, nullptr, e, eval_every, eps, eval_repeats, rng);
  }
  return {std::move(q), std::move(log)};
}

SkipTrainResult train_skip_q(const GridSpec& spec, const AgentConfig& cfg,
                             const Schedule& sched, int episodes, int eval_every,
                             uint64_t seed, int eval_repeats) {
  check_train_args(cfg, sched, episodes, eval_every, eval_repeats);
  Rng rng(seed);
  SkipTrainResult res{BehaviourQ(spec.num_states(), cfg.q_init),
                      SkipQ(spec.num_states(), cfg.max_skip, cfg.q_init),
                      TrainLog{}};
  GridEnv env(spec);
  for (int e = 0; e < episodes; ++e) {
    const double eps = epsilon_at(sched, e, episodes);
    env.reset();
    while (env.active()) {
      skip_q_decision(env, res.behaviour, res.skip, eps, cfg, rng);
    }
    log_checkpoint(res.log, spec, res.behaviour, &res.skip, e, eval_every, eps, eval_repeats,
                   rng);
  }
  return res;
}

void DurationDist::validate() const {
  if (cap < 1) throw ConfigError("duration cap must be >= 1");
}

namespace {

// Cumulative weights of P(k) proportional to k^-2, k = 1..cap.
std::vector<double> zeta_cdf(int cap) {
  std::vector<double> cdf(cap);
  double total = 0.0;
  for (int k = 1; k <= cap; ++k) {
    total += 1.0 / (static_cast<double>(k) * k);
    cdf[k - 1] = total;
  }
  for (double& c : cdf) c /= total;
  cdf.back() = 1.0;
  return cdf;
}

}  // namespace

std::pair<BehaviourQ, TrainLog> train_te_greedy_q(const GridSpec& spec, const AgentConfig& cfg,
                                                  const Schedule& sched, int episodes,
                                                  int eval_every, uint64_t seed,
                                                  const DurationDist& dist, int eval_repeats) {
  check_train_args(cfg, sched, episodes, eval_every, eval_repeats);
  dist.validate();
  const bool zeta = dist.kind == DurationDist::Kind::kZeta;
  const std::vector<double> cdf = zeta ? zeta_cdf(dist.cap) : std::vector<double>();
  auto sample_duration = [&](Rng& r) {
    if (zeta) {
      if (dist.cap == 1) return 1;
      const double u = r.uniform01();
      return 1 + static_cast<int>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    }
    if (cfg.max_skip == 1) return 1;
    return 1 + r.uniform_int(cfg.max_skip);
  };

  Rng rng(seed);
  BehaviourQ q(spec.num_states(), cfg.q_init);
  TrainLog log;
  GridEnv env(spec);
  for (int e = 0; e < episodes; ++e) {
    const double eps = epsilon_at(sched, e, episodes);
    State s = env.reset();
    while (env.active()) {
      Action a;
      int duration = 1;
      if (eps > 0.0 && rng.uniform01() < eps) {
        a = static_cast<Action>(rng.uniform_int(kNumActions));
        duration = sample_duration(rng);
      } else {
        a = select_action(q, spec.index(s), 0.0, rng);
      }
      for (int t = 0; t < duration && env.active(); ++t) {
        const int idx = spec.index(s);
        const StepOutcome out = env.step(a);
        td_update(q, idx, a, out.reward, spec.index(out.next_state), out.terminal, cfg);
        s = out.next_state;
      }
    }
    log_checkpoint(log, spec, q, nullptr, e, eval_every, eps, eval_repeats, rng);
  }
  return {std::move(q), std::move(log)};
}

}  // namespace skipq
