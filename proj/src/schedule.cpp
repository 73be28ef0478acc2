#include "skipq/schedule.hpp"

#include <cmath>
#include <stdexcept>

#include "skipq/errors.hpp"

namespace skipq {

Schedule Schedule::linear(double start, double end) {
  Schedule s;
  s.kind = ScheduleKind::kLinear;
  s.eps_start = start;
  s.eps_end = end;
  s.validate();
  return s;
}

Schedule Schedule::log(double start, double end) {
  Schedule s;
  s.kind = ScheduleKind::kLog;
  s.eps_start = start;
  s.eps_end = end;
  s.validate();
  return s;
}

Schedule Schedule::constant(double eps) {
  Schedule s;
  s.kind = ScheduleKind::kConstant;
  s.constant_eps = eps;
  s.validate();
  return s;
}

Schedule Schedule::named(const std::string& name) {
  if (name == "linear") return linear();
  if (name == "log") return log();
  if (name == "const" || name == "constant") return constant();
  throw ConfigError("unknown schedule: " + name);
}

void Schedule::validate() const {
  auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  switch (kind) {
    case ScheduleKind::kConstant:
      if (!in_unit(constant_eps)) {
        throw ConfigError("constant epsilon must lie in [0, 1]");
      }
      return;
    case ScheduleKind::kLinear:
    case ScheduleKind::kLog:
      if (!in_unit(eps_start) || !in_unit(eps_end)) {
        throw ConfigError("epsilon bounds must lie in [0, 1]");
      }
      if (eps_start < eps_end) {
        throw ConfigError("decaying schedule needs eps_start >= eps_end");
      }
      if (kind == ScheduleKind::kLog && eps_end <= 0.0) {
        throw ConfigError("log schedule needs eps_end > 0");
      }
      return;
  }
  throw ConfigError("unknown schedule kind");
}

const char* schedule_kind_name(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::kLinear: return "linear";
    case ScheduleKind::kLog: return "log";
    case ScheduleKind::kConstant: return "const";
  }
  return "?";
}

double epsilon_at(const Schedule& sched, int episode, int total_episodes) {
  if (episode < 0 || episode >= total_episodes) {
    throw std::invalid_argument("episode out of range");
  }
  if (sched.kind == ScheduleKind::kConstant) return sched.constant_eps;
  if (total_episodes < 2) {
    throw std::invalid_argument("decaying schedule needs >= 2 episodes");
  }
  const double frac =
      static_cast<double>(episode) / static_cast<double>(total_episodes - 1);
  if (sched.kind == ScheduleKind::kLinear) {
    return sched.eps_start + (sched.eps_end - sched.eps_start) * frac;
  }
  // Geometric interpolation: eps_start * (eps_end / eps_start)^frac.
  return sched.eps_start * std::pow(sched.eps_end / sched.eps_start, frac);
}

}  // namespace skipq
