#pragma once

#include <optional>
#include <vector>

#include "skipq/agents.hpp"
#include "skipq/grid.hpp"
#include "skipq/rng.hpp"

namespace skipq {

struct EvalRecord {
  double reward = 0.0;  // total episode reward
  int steps = 0;        // environment steps
  int decisions = 0;    // policy queries (one per action+skip pair)
};

struct CurvePoint {
  int episode;
  double reward;
  double steps;
  double decisions;
};
using LearningCurve = std::vector<CurvePoint>;

LearningCurve curve_of(const TrainLog& log);

// One greedy (epsilon = 0) episode; ties are broken with the caller's RNG.
EvalRecord evaluate_greedy(const GridSpec& spec, const BehaviourQ& q, Rng& rng);

// Skip-aware variant: each decision picks an action and a skip length, and
// the skip runs to completion unless the episode ends first.
EvalRecord evaluate_greedy(const GridSpec& spec, const BehaviourQ& q, const SkipQ& sq,
                           Rng& rng);

// Mean over checkpoints of (reward - r_min) / (r_max - r_min). Defaults match
// the builtin grids' reward range.
double normalized_auc(const LearningCurve& curve, double r_min = -1.0, double r_max = 1.0);

double mean_decisions(const LearningCurve& curve);

// BFS start->goal distance avoiding cliff cells; nullopt when unreachable.
std::optional<int> shortest_path(const GridSpec& spec);

// Exact Q* for the (infinite-horizon) grid MDP via synchronous value
// iteration to the given sup-norm tolerance. Terminal cells hold value 0.
BehaviourQ value_iteration(const GridSpec& spec, double gamma, double tolerance);

}  // namespace skipq
