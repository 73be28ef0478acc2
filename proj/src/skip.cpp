#include "skipq/skip.hpp"

#include <stdexcept>

namespace skipq {

SkipTrajectory execute_skip(GridEnv& env, Action action, int j) {
  if (j < 1) throw std::invalid_argument("skip length must be >= 1");
  if (!env.active()) throw std::logic_error("execute_skip on a finished episode");

  SkipTrajectory traj;
  traj.action = action;
  traj.states.reserve(static_cast<std::size_t>(j) + 1);
  traj.rewards.reserve(static_cast<std::size_t>(j));
  traj.states.push_back(env.state());
  for (int rep = 0; rep < j; ++rep) {
    const StepOutcome out = env.step(action);
    traj.states.push_back(out.next_state);
    traj.rewards.push_back(out.reward);
    if (out.terminal || out.timeout) {
      traj.terminated = out.terminal;
      traj.timed_out = out.timeout;
      break;
    }
  }
  return traj;
}

double discounted_skip_reward(const std::vector<double>& rewards, double gamma) {
  if (rewards.empty()) throw std::invalid_argument("discounted_skip_reward: empty reward list");
  double acc = 0.0;
  double pow = 1.0;
  for (double r : rewards) {
    acc += pow * r;
    pow *= gamma;
  }
  return acc;
}

std::vector<SkipConnection> build_connectedness_graph(const SkipTrajectory& traj,
                                                      double gamma) {
  const int m = traj.length();
  std::vector<SkipConnection> connections;
  connections.reserve(static_cast<std::size_t>(m) * (m + 1) / 2);
  for (int i = 0; i < m; ++i) {
    double acc = 0.0;
    double pow = 1.0;
    for (int k = i + 1; k <= m; ++k) {
      acc += pow * traj.rewards[k - 1];
      pow *= gamma;
      SkipConnection c;
      c.start_state = traj.states[i];
      c.action = traj.action;
      c.length = k - i;
      c.discounted_reward = acc;
      c.end_state = traj.states[k];
      c.end_terminal = (k == m) && traj.terminated;
      connections.push_back(c);
    }
  }
  return connections;
}

}  // namespace skipq
