#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tracegen/task.hpp"
#include "tracegen/value.hpp"

namespace tracegen {

namespace robot_detail {

struct Command {
  char dir = 'R';
  long long dist = 0;
};

inline std::vector<Command> parse_commands(const std::string& text) {
  std::vector<Command> out;
  for (const std::string& token : split_list(text)) {
    if (token.size() < 2 || (token[0] != 'U' && token[0] != 'D' && token[0] != 'L' &&
                             token[0] != 'R')) {
      throw std::invalid_argument("bad robot command: " + token);
    }
    const std::string digits = token.substr(1);
    if (!is_all_digits(digits)) {
      throw std::invalid_argument("bad robot distance: " + token);
    }
    out.push_back({token[0], std::stoll(digits)});
  }
  return out;
}

inline std::string render_position(long long x, long long y) {
  return "(" + std::to_string(x) + ", " + std::to_string(y) + ")";
}

}  // namespace robot_detail

// Walk a robot over the grid one command at a time, carrying the current
// coordinates from step to step.  Size metric: number of commands.
class RobotWalkTask final : public Task {
 public:
  std::string id() const override { return "robot-walk"; }
  AlgorithmFamily family() const override { return AlgorithmFamily::Simulation; }

  std::vector<std::string> query_templates() const override {
    return {
        "A robot starts at $(0, 0)$ on a grid and executes the commands {commands}, where "
        "R/L/U/D move it right/left/up/down by the given number of cells. Where does it end "
        "up? Give the answer as (x, y).",
        "Starting from the origin $(0, 0)$, a robot performs the moves {commands}. Each move "
        "is a direction letter (R, L, U, or D) followed by a distance. What are the robot's "
        "final coordinates (x, y)?",
        "A robot begins at $(0, 0)$ and follows the command list {commands}. R increases x, "
        "L decreases x, U increases y, and D decreases y. Report its final position as (x, y).",
    };
  }

  TaskInstance sample(RangeTag range, std::uint64_t seed,
                      const RangeBounds& bounds) const override {
    if (seed == kReferenceSeed) return reference_instance();
    const LengthBounds& lb = bounds.at(range);
    if (lb.lo < 1) {
      throw TaskError(TaskErrorKind::EmptyRange, id() + ": need at least one command");
    }
    Rng rng(derive_seed(seed, id()));
    const int n = static_cast<int>(rng.range(static_cast<std::uint64_t>(lb.lo),
                                             static_cast<std::uint64_t>(lb.hi)));
    static constexpr char kDirs[] = {'R', 'L', 'U', 'D'};
    std::vector<std::string> tokens;
    tokens.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const char dir = kDirs[rng.below(4)];
      tokens.push_back(dir + std::to_string(rng.range(1, 99)));
    }
    TaskInstance inst;
    inst.task_id = id();
    inst.range = range;
    inst.params["commands"] = render_list(tokens);
    inst.length = n;
    return inst;
  }

  TaskInstance reference_instance() const override {
    TaskInstance inst;
    inst.task_id = id();
    inst.params["commands"] = "[R2, U3, L5, D1]";
    inst.length = 4;
    inst.range = RangeTag::S;
    return inst;
  }

  std::string solve(const TaskInstance& inst) const override {
    long long x = 0, y = 0;
    for (const auto& cmd : commands(inst)) {
      apply(cmd, x, y);
    }
    return robot_detail::render_position(x, y);
  }

  std::string brute_force_oracle(const TaskInstance& inst) const override {
    // total displacement per axis instead of walking the path
    long long right = 0, left = 0, up = 0, down = 0;
    for (const auto& cmd : commands(inst)) {
      switch (cmd.dir) {
        case 'R': right += cmd.dist; break;
        case 'L': left += cmd.dist; break;
        case 'U': up += cmd.dist; break;
        default: down += cmd.dist; break;
      }
    }
    return robot_detail::render_position(right - left, up - down);
  }

  Trace emit_trace(const TaskInstance& inst) const override {
    const auto cmds = commands(inst);
    if (cmds.empty()) {
      throw TaskError(TaskErrorKind::IllegalInstance, id() + ": no commands");
    }
    std::vector<StepEvent> events;
    events.reserve(cmds.size());
    long long x = 0, y = 0;
    for (std::size_t i = 1; i <= cmds.size(); ++i) {
      const auto& cmd = cmds[i - 1];
      const std::string before = robot_detail::render_position(x, y);
      apply(cmd, x, y);
      const std::string after = robot_detail::render_position(x, y);
      const std::string token = cmd.dir + std::to_string(cmd.dist);
      StepEvent ev;
      ev.subtask = "command " + std::to_string(i);
      ev.loop_group = 1;
      const std::string c_sym = "c_" + std::to_string(i);
      const std::string prev_sym = "Pos_" + std::to_string(i - 1);
      const std::string cur_sym = "Pos_" + std::to_string(i);
      ev.review.push_back(single_review(c_sym, token, Origin::query()));
      // the starting position (0, 0) is part of the problem statement
      ev.review.push_back(single_review(
          prev_sym, before, i == 1 ? Origin::query() : Origin::output_of(i - 1)));
      ev.computation.text = "apply " + token + ": $" + before + " \\to " + after + "$";
      ev.computation.result_symbol = cur_sym;
      ev.computation.result = after;
      ev.computation.uses = {c_sym, prev_sym};
      ev.transition = i == cmds.size() ? Transition::final()
                                       : Transition::to("command " + std::to_string(i + 1));
      events.push_back(std::move(ev));
    }
    Trace trace = build_trace(id(), std::move(events));
    trace.friendly_preamble = "Let's follow the robot one command at a time.";
    trace.friendly_conclusion = "The robot ends up at $\\boxed{" + trace.final_answer + "}$.";
    return trace;
  }

  int length_of(const TaskInstance& inst) const override {
    return static_cast<int>(commands(inst).size());
  }

 private:
  std::vector<robot_detail::Command> commands(const TaskInstance& inst) const {
    return robot_detail::parse_commands(inst.param("commands"));
  }

  static void apply(const robot_detail::Command& cmd, long long& x, long long& y) {
    switch (cmd.dir) {
      case 'R': x += cmd.dist; break;
      case 'L': x -= cmd.dist; break;
      case 'U': y += cmd.dist; break;
      default: y -= cmd.dist; break;
    }
  }
};

}  // namespace tracegen
