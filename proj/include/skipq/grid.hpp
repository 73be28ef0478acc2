#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "skipq/errors.hpp"

namespace skipq {

// Grid cell / agent position. Row 0 is the bottom row, column 0 the left
// column; this matches the usual way the benchmark layouts are drawn.
struct State {
  int row = 0;
  int col = 0;
  friend bool operator==(const State&, const State&) = default;
};

enum class Action : int { kUp = 0, kDown = 1, kLeft = 2, kRight = 3 };
inline constexpr int kNumActions = 4;
inline constexpr Action kAllActions[kNumActions] = {Action::kUp, Action::kDown,
                                                    Action::kLeft, Action::kRight};

const char* action_name(Action a);

// Immutable gridworld layout: geometry, start/goal/cliff cells and the
// episode step limit. Safe to share across concurrent runs.
class GridSpec {
 public:
  GridSpec(std::string name, int rows, int cols, State start,
           std::vector<State> goal_cells, std::vector<State> cliff_cells,
           int step_limit);

  const std::string& name() const { return name_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  State start() const { return start_; }
  const std::vector<State>& goal_cells() const { return goal_cells_; }
  const std::vector<State>& cliff_cells() const { return cliff_cells_; }
  int step_limit() const { return step_limit_; }

  int num_states() const { return rows_ * cols_; }
  int index(State s) const { return s.row * cols_ + s.col; }
  State state_of(int index) const { return {index / cols_, index % cols_}; }

  bool in_bounds(State s) const {
    return s.row >= 0 && s.row < rows_ && s.col >= 0 && s.col < cols_;
  }

  // Destination of one move, with border moves kept in place.
  State next_cell(State s, Action a) const;
  bool is_goal(State s) const { return kind_[index(s)] == CellKind::kGoal; }
  bool is_cliff(State s) const { return kind_[index(s)] == CellKind::kCliff; }
  bool is_terminal(State s) const { return kind_[index(s)] != CellKind::kFree; }

  // Smallest and largest per-episode reward the layout can emit.
  double reward_min() const { return cliff_cells_.empty() ? 0.0 : -1.0; }
  double reward_max() const { return 1.0; }

 private:
  enum class CellKind : std::uint8_t { kFree, kGoal, kCliff };

  std::string name_;
  int rows_;
  int cols_;
  State start_;
  std::vector<State> goal_cells_;   // sorted by index
  std::vector<State> cliff_cells_;  // sorted by index
  int step_limit_;
  std::vector<CellKind> kind_;
};

// Layout equality ignoring the name.
bool same_geometry(const GridSpec& a, const GridSpec& b);

struct StepOutcome {
  State next_state;
  double reward = 0.0;  // +1 entering a goal, -1 entering a cliff, else 0
  bool terminal = false;
  bool timeout = false;
};

// Episodic simulator over a GridSpec. Moves into the border are no-ops
// (the agent stays in place). Entering a goal or cliff cell terminates the
// episode; reaching the step limit first truncates it with `timeout` set and
// reward 0. Holds its own copy of the (small) spec, so temporaries are fine.
// Single-threaded mutable state; use one instance per rollout.
class GridEnv {
 public:
  explicit GridEnv(GridSpec spec) : spec_(std::move(spec)) { reset(); }

  State reset();
  StepOutcome step(Action a);

  const GridSpec& spec() const { return spec_; }
  State state() const { return state_; }
  int steps_taken() const { return steps_; }
  bool active() const { return !finished_; }

 private:
  GridSpec spec_;
  State state_{};
  int steps_ = 0;
  bool finished_ = false;
};

// Fixed benchmark layouts: cliff | bridge | zigzag | open23.
// Unknown names raise ConfigError.
GridSpec builtin_grid(const std::string& name);

// Parses the ASCII map format:
//
//   limit=200        <- optional first line, episode step limit
//   ..........G      <- top row (highest row index)
//   S..########.     <- bottom row is row 0
//
// 'S' start (exactly one), 'G' goal (at least one), '#' cliff, '.' free.
// Lines must form a rectangle. Default step limit is 100. Errors carry
// 1-based line/column positions.
GridSpec load_grid(const std::string& map_text, const std::string& name = "custom");

}  // namespace skipq
