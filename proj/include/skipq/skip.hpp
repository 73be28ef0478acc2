#pragma once

#include <vector>

#include "skipq/grid.hpp"

namespace skipq {

// One executed skip: the same action repeated up to the requested length,
// cut short only when the episode ends. states.size() == rewards.size() + 1.
struct SkipTrajectory {
  Action action = Action::kUp;
  std::vector<State> states;    // s_0 .. s_m
  std::vector<double> rewards;  // r_0 .. r_{m-1}, one per transition
  bool terminated = false;      // ended in a goal/cliff cell
  bool timed_out = false;       // ended by the step limit

  int length() const { return static_cast<int>(rewards.size()); }
};

// A skip transition <s, a, j>: action a repeated j times from start_state,
// with the discounted reward accumulated along the way.
struct SkipConnection {
  State start_state;
  Action action = Action::kUp;
  int length = 1;
  double discounted_reward = 0.0;
  State end_state;
  bool end_terminal = false;
};

// Repeats `action` until j steps have been taken or the episode ends,
// recording every intermediate state and one-step reward.
// Requires 1 <= j and an active episode.
SkipTrajectory execute_skip(GridEnv& env, Action action, int j);

// Sum_k gamma^k * rewards[k]. The list must be nonempty.
double discounted_skip_reward(const std::vector<double>& rewards, double gamma);

// All sub-skips observable inside one executed skip: one connection per index
// pair (i, k) with 0 <= i < k <= m, in lexicographic (i, k) order, m(m+1)/2
// in total. Connections that end where the trajectory timed out are reported
// non-terminal so their targets still bootstrap.
std::vector<SkipConnection> build_connectedness_graph(const SkipTrajectory& traj,
                                                      double gamma);

}  // namespace skipq
