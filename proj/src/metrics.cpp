#include "skipq/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "skipq/skip.hpp"

namespace skipq {

LearningCurve curve_of(const TrainLog& log) {
  LearningCurve curve;
  curve.reserve(log.checkpoints.size());
  for (const Checkpoint& c : log.checkpoints) {
    curve.push_back({c.episode, c.eval_reward, c.eval_steps, c.eval_decisions});
  }
  return curve;
}

EvalRecord evaluate_greedy(const GridSpec& spec, const BehaviourQ& q, Rng& rng) {
  GridEnv env(spec);
  State s = env.reset();
  EvalRecord rec;
  while (env.active()) {
    const Action a = select_action(q, spec.index(s), 0.0, rng);
    const StepOutcome out = env.step(a);
    rec.reward += out.reward;
    ++rec.steps;
    ++rec.decisions;
    s = out.next_state;
  }
  return rec;
}

EvalRecord evaluate_greedy(const GridSpec& spec, const BehaviourQ& q, const SkipQ& sq,
                           Rng& rng) {
  GridEnv env(spec);
  State s = env.reset();
  EvalRecord rec;
  while (env.active()) {
    const int idx = spec.index(s);
    const Action a = select_action(q, idx, 0.0, rng);
    const int j = select_skip(sq, idx, a, 0.0, rng);
    const SkipTrajectory traj = execute_skip(env, a, j);
    for (double r : traj.rewards) rec.reward += r;
    rec.steps += traj.length();
    ++rec.decisions;
    s = traj.states.back();
  }
  return rec;
}

double normalized_auc(const LearningCurve& curve, double r_min, double r_max) {
  if (curve.empty()) throw std::invalid_argument("normalized_auc needs a nonempty curve");
  if (!(r_max > r_min)) throw std::invalid_argument("normalized_auc needs r_max > r_min");
  double sum = 0.0;
  for (const CurvePoint& p : curve) sum += (p.reward - r_min) / (r_max - r_min);
  return sum / static_cast<double>(curve.size());
}

double mean_decisions(const LearningCurve& curve) {
  if (curve.empty()) throw std::invalid_argument("mean_decisions needs a nonempty curve");
  double sum = 0.0;
  for (const CurvePoint& p : curve) sum += p.decisions;
  return sum / static_cast<double>(curve.size());
}

std::optional<int> shortest_path(const GridSpec& spec) {
  std::vector<int> dist(spec.num_states(), -1);
  std::deque<State> frontier;
  dist[spec.index(spec.start())] = 0;
  frontier.push_back(spec.start());
  while (!frontier.empty()) {
    const State s = frontier.front();
    frontier.pop_front();
    const int d = dist[spec.index(s)];
    for (Action a : kAllActions) {
      const State n = spec.next_cell(s, a);
      if (n == s) continue;  // border no-op
      if (spec.is_cliff(n)) continue;
      if (spec.is_goal(n)) return d + 1;
      if (dist[spec.index(n)] >= 0) continue;
      dist[spec.index(n)] = d + 1;
      frontier.push_back(n);
    }
  }
  return std::nullopt;
}

BehaviourQ value_iteration(const GridSpec& spec, double gamma, double tolerance) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("value_iteration needs gamma in (0, 1)");
  }
  if (!(tolerance > 0.0)) throw std::invalid_argument("value_iteration needs tolerance > 0");

  // Precompute the deterministic model: next cell and reward per (s, a).
  const int n = spec.num_states();
  std::vector<int> next(static_cast<size_t>(n) * kNumActions);
  std::vector<double> reward(static_cast<size_t>(n) * kNumActions);
  std::vector<bool> into_terminal(static_cast<size_t>(n) * kNumActions);
  for (int idx = 0; idx < n; ++idx) {
    const State s = spec.state_of(idx);
    for (Action a : kAllActions) {
      const State m = spec.next_cell(s, a);
      const size_t cell = static_cast<size_t>(idx) * kNumActions + static_cast<int>(a);
      next[cell] = spec.index(m);
      reward[cell] = spec.is_goal(m) ? 1.0 : spec.is_cliff(m) ? -1.0 : 0.0;
      into_terminal[cell] = spec.is_terminal(m);
    }
  }

  BehaviourQ q(n, 0.0);
  BehaviourQ fresh(n, 0.0);
  double change = tolerance;
  while (change >= tolerance) {
    change = 0.0;
    for (int idx = 0; idx < n; ++idx) {
      if (spec.is_terminal(spec.state_of(idx))) continue;  // terminal cells stay 0
      for (int a = 0; a < kNumActions; ++a) {
        const size_t cell = static_cast<size_t>(idx) * kNumActions + a;
        double v = reward[cell];
        if (!into_terminal[cell]) v += gamma * q.max_value(next[cell]);
        fresh.at(idx, a) = v;
        change = std::max(change, std::abs(v - q.at(idx, a)));
      }
    }
    std::swap(q.raw(), fresh.raw());
  }
  return q;
}

}  // namespace skipq
