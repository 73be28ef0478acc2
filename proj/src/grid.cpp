#include "skipq/grid.hpp"

#include <algorithm>
#include <sstream>

namespace skipq {

const char* action_name(Action a) {
  switch (a) {
    case Action::kUp: return "up";
    case Action::kDown: return "down";
    case Action::kLeft: return "left";
    case Action::kRight: return "right";
  }
  return "?";
}

namespace {

std::vector<State> sorted_by_index(std::vector<State> cells, int cols) {
  std::sort(cells.begin(), cells.end(), [cols](State a, State b) {
    return a.row * cols + a.col < b.row * cols + b.col;
  });
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return cells;
}

std::vector<State> block(int row_lo, int row_hi, int col_lo, int col_hi) {
  std::vector<State> cells;
  for (int r = row_lo; r <= row_hi; ++r)
    for (int c = col_lo; c <= col_hi; ++c) cells.push_back({r, c});
  return cells;
}

void append(std::vector<State>& dst, const std::vector<State>& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

}  // namespace

GridSpec::GridSpec(std::string name, int rows, int cols, State start,
                   std::vector<State> goal_cells, std::vector<State> cliff_cells,
                   int step_limit)
    : name_(std::move(name)),
      rows_(rows),
      cols_(cols),
      start_(start),
      goal_cells_(sorted_by_index(std::move(goal_cells), cols)),
      cliff_cells_(sorted_by_index(std::move(cliff_cells), cols)),
      step_limit_(step_limit) {
  if (rows_ < 1 || cols_ < 1) throw ConfigError("grid dimensions must be positive");
  if (step_limit_ < 1) throw ConfigError("step_limit must be >= 1");
  if (goal_cells_.empty()) throw ConfigError("grid needs at least one goal cell");
  if (!in_bounds(start_)) throw ConfigError("start cell out of bounds");

  kind_.assign(static_cast<std::size_t>(rows_) * cols_, CellKind::kFree);
  for (State g : goal_cells_) {
    if (!in_bounds(g)) throw ConfigError("goal cell out of bounds");
    kind_[index(g)] = CellKind::kGoal;
  }
  for (State c : cliff_cells_) {
    if (!in_bounds(c)) throw ConfigError("cliff cell out of bounds");
    if (kind_[index(c)] == CellKind::kGoal)
      throw ConfigError("goal and cliff cells must be disjoint");
    kind_[index(c)] = CellKind::kCliff;
  }
  if (is_terminal(start_)) throw ConfigError("start cell must not be a goal or cliff cell");
}

State GridSpec::next_cell(State s, Action a) const {
  State next = s;
  switch (a) {
    case Action::kUp: next.row += 1; break;
    case Action::kDown: next.row -= 1; break;
    case Action::kLeft: next.col -= 1; break;
    case Action::kRight: next.col += 1; break;
  }
  return in_bounds(next) ? next : s;
}

bool same_geometry(const GridSpec& a, const GridSpec& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a.start() == b.start() &&
         a.goal_cells() == b.goal_cells() && a.cliff_cells() == b.cliff_cells() &&
         a.step_limit() == b.step_limit();
}

State GridEnv::reset() {
  state_ = spec_.start();
  steps_ = 0;
  finished_ = false;
  return state_;
}

StepOutcome GridEnv::step(Action a) {
  if (finished_) throw std::logic_error("step() on a finished episode; call reset()");

  const State next = spec_.next_cell(state_, a);
  ++steps_;
  StepOutcome out;
  out.next_state = next;
  if (spec_.is_goal(next)) {
    out.reward = 1.0;
    out.terminal = true;
  } else if (spec_.is_cliff(next)) {
    out.reward = -1.0;
    out.terminal = true;
  } else if (steps_ >= spec_.step_limit()) {
    out.timeout = true;
  }
  finished_ = out.terminal || out.timeout;
  state_ = next;
  return out;
}

GridSpec builtin_grid(const std::string& name) {
  if (name == "cliff") {
    return GridSpec("cliff", 6, 10, {0, 0}, {{0, 9}}, block(0, 2, 2, 8), 100);
  }
  if (name == "bridge") {
    std::vector<State> cliffs = block(0, 1, 2, 8);
    append(cliffs, block(4, 5, 2, 8));
    return GridSpec("bridge", 6, 10, {0, 0}, {{0, 9}}, std::move(cliffs), 100);
  }
  if (name == "zigzag") {
    std::vector<State> cliffs = block(0, 3, 2, 3);
    append(cliffs, block(2, 5, 6, 7));
    return GridSpec("zigzag", 6, 10, {0, 0}, {{5, 9}}, std::move(cliffs), 100);
  }
  if (name == "open23") {
    // Obstacle-free 23x23: start at the top center, goal down and to the
    // left, sparse +1 on arrival, 1000-step episodes.
    return GridSpec("open23", 23, 23, {22, 11}, {{6, 5}}, {}, 1000);
  }
  throw ConfigError("unknown builtin grid '" + name +
                    "' (expected cliff|bridge|zigzag|open23)");
}

namespace {

[[noreturn]] void parse_fail(int line, int col, const std::string& msg) {
  std::ostringstream os;
  os << "map parse error at line " << line << ", column " << col << ": " << msg;
  throw ConfigError(os.str());
}

}  // namespace

GridSpec load_grid(const std::string& map_text, const std::string& name) {
  std::vector<std::string> lines;
  {
    std::istringstream in(map_text);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(line);
    }
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();

  int step_limit = 100;
  std::size_t first_row = 0;
  if (!lines.empty() && lines[0].rfind("limit=", 0) == 0) {
    const std::string value = lines[0].substr(6);
    try {
      std::size_t used = 0;
      step_limit = std::stoi(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      parse_fail(1, 7, "invalid step limit '" + value + "'");
    }
    first_row = 1;
  }

  if (first_row >= lines.size()) parse_fail(static_cast<int>(lines.size()) + 1, 1, "map has no rows");

  const int rows = static_cast<int>(lines.size() - first_row);
  const int cols = static_cast<int>(lines[first_row].size());

  State start{-1, -1};
  bool have_start = false;
  std::vector<State> goals;
  std::vector<State> cliffs;

  // The first map line is the TOP row; row indices count from the bottom.
  for (int r = 0; r < rows; ++r) {
    const int line_no = static_cast<int>(first_row) + r + 1;
    const std::string& line = lines[first_row + r];
    if (static_cast<int>(line.size()) != cols)
      parse_fail(line_no, static_cast<int>(line.size()) + 1,
                 "ragged map: expected " + std::to_string(cols) + " columns");
    const int row = rows - 1 - r;
    for (int c = 0; c < cols; ++c) {
      switch (line[c]) {
        case '.': break;
        case '#': cliffs.push_back({row, c}); break;
        case 'G': goals.push_back({row, c}); break;
        case 'S':
          if (have_start) parse_fail(line_no, c + 1, "duplicate start cell 'S'");
          have_start = true;
          start = {row, c};
          break;
        default:
          parse_fail(line_no, c + 1, std::string("unexpected character '") + line[c] + "'");
      }
    }
  }
  if (!have_start) parse_fail(static_cast<int>(lines.size()), 1, "map has no start cell 'S'");
  if (goals.empty()) parse_fail(static_cast<int>(lines.size()), 1, "map has no goal cell 'G'");

  return GridSpec(name, rows, cols, start, std::move(goals), std::move(cliffs), step_limit);
}

}  // namespace skipq
