#pragma once

#include <string>

namespace skipq {

enum class ScheduleKind { kLinear, kLog, kConstant };

// Exploration rate as a function of the training episode. `linear`
// interpolates eps_start -> eps_end over all episodes; `log` decays
// geometrically so that log eps is linear in the episode and the endpoint is
// hit exactly; `constant` ignores the episode.
struct Schedule {
  ScheduleKind kind = ScheduleKind::kLinear;
  double eps_start = 1.0;
  double eps_end = 0.0;
  double constant_eps = 0.1;

  static Schedule linear(double start = 1.0, double end = 0.0);
  static Schedule log(double start = 1.0, double end = 1e-5);
  static Schedule constant(double eps = 0.1);

  // Parses linear|log|const. Unknown names raise ConfigError.
  static Schedule named(const std::string& name);

  void validate() const;
};

const char* schedule_kind_name(ScheduleKind kind);

// Epsilon for the given episode, 0 <= episode < total_episodes. Decaying
// kinds need total_episodes >= 2.
double epsilon_at(const Schedule& sched, int episode, int total_episodes);

}  // namespace skipq
