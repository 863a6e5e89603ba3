#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tracegen/rng.hpp"
#include "tracegen/trace.hpp"

namespace tracegen {

enum class RangeTag { S, M, L };

inline const char* range_name(RangeTag r) {
  switch (r) {
    case RangeTag::S: return "S";
    case RangeTag::M: return "M";
    case RangeTag::L: return "L";
  }
  return "?";
}

inline RangeTag parse_range(std::string_view s) {
  if (s == "S" || s == "s") return RangeTag::S;
  if (s == "M" || s == "m") return RangeTag::M;
  if (s == "L" || s == "l") return RangeTag::L;
  throw std::invalid_argument("unknown range tag: " + std::string(s));
}

inline constexpr RangeTag kAllRanges[] = {RangeTag::S, RangeTag::M, RangeTag::L};

enum class AlgorithmFamily {
  Simulation,
  Recursion,
  Iteration,
  Greedy,
  Enumeration,
  DP,
  DivideAndConquer,
  Backtracking,
};

inline const char* family_name(AlgorithmFamily f) {
  switch (f) {
    case AlgorithmFamily::Simulation: return "simulation";
    case AlgorithmFamily::Recursion: return "recursion";
    case AlgorithmFamily::Iteration: return "iteration";
    case AlgorithmFamily::Greedy: return "greedy";
    case AlgorithmFamily::Enumeration: return "enumeration";
    case AlgorithmFamily::DP: return "dynamic-programming";
    case AlgorithmFamily::DivideAndConquer: return "divide-and-conquer";
    case AlgorithmFamily::Backtracking: return "backtracking";
  }
  return "?";
}

// Inclusive interval for a task's size metric.
struct LengthBounds {
  int lo = 0;
  int hi = 0;

  bool contains(int v) const { return v >= lo && v <= hi; }
  friend bool operator==(const LengthBounds&, const LengthBounds&) = default;
};

struct RangeBounds {
  LengthBounds s, m, l;

  const LengthBounds& at(RangeTag tag) const {
    switch (tag) {
      case RangeTag::S: return s;
      case RangeTag::M: return m;
      case RangeTag::L: return l;
    }
    return s;
  }
  friend bool operator==(const RangeBounds&, const RangeBounds&) = default;
};

// A fully sampled problem: the parameter map alone determines the answer.
// `length` is the task's size metric and must sit inside the bounds of
// `range` (the reserved reference instance, seed 0, keeps its own data).
struct TaskInstance {
  std::string task_id;
  std::map<std::string, std::string> params;
  int length = 0;
  RangeTag range = RangeTag::S;

  const std::string& param(const std::string& name) const;

  friend bool operator==(const TaskInstance&, const TaskInstance&) = default;
};

enum class TaskErrorKind { IllegalInstance, EmptyRange, OracleCapExceeded, UnknownTemplate };

class TaskError : public std::runtime_error {
 public:
  TaskError(TaskErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  TaskErrorKind kind() const { return kind_; }

 private:
  TaskErrorKind kind_;
};

inline const std::string& TaskInstance::param(const std::string& name) const {
  auto it = params.find(name);
  if (it == params.end()) {
    throw TaskError(TaskErrorKind::IllegalInstance,
                    task_id + ": missing parameter \"" + name + "\"");
  }
  return it->second;
}

// Seed value reserved for each task's pinned reference instance.
inline constexpr std::uint64_t kReferenceSeed = 0;

class Task {
 public:
  virtual ~Task() = default;

  virtual std::string id() const = 0;
  virtual AlgorithmFamily family() const = 0;
  virtual RangeBounds default_bounds() const { return {{5, 15}, {16, 35}, {36, 60}}; }
  // Hard tasks get smaller default corpus sizes.
  virtual bool hard() const { return false; }
  virtual std::vector<std::string> query_templates() const = 0;

  // Deterministic in (range, seed, bounds). Seed 0 returns the task's fixed
  // reference instance regardless of bounds.
  virtual TaskInstance sample(RangeTag range, std::uint64_t seed,
                              const RangeBounds& bounds) const = 0;
  virtual std::string solve(const TaskInstance& inst) const = 0;
  // Independent exhaustive check; structurally different from solve.
  virtual std::string brute_force_oracle(const TaskInstance& inst) const = 0;
  virtual Trace emit_trace(const TaskInstance& inst) const = 0;
  virtual int length_of(const TaskInstance& inst) const = 0;

  TaskInstance sample(RangeTag range, std::uint64_t seed) const {
    return sample(range, seed, default_bounds());
  }
  virtual TaskInstance reference_instance() const { return sample(RangeTag::S, kReferenceSeed); }
};

// Substitute "{name}" placeholders of the chosen template with parameter
// values.
inline std::string render_query(const Task& task, const TaskInstance& inst,
                                std::size_t template_id) {
  const std::vector<std::string> templates = task.query_templates();
  if (template_id >= templates.size()) {
    throw TaskError(TaskErrorKind::UnknownTemplate,
                    task.id() + ": template " + std::to_string(template_id) + " of " +
                        std::to_string(templates.size()));
  }
  const std::string& tmpl = templates[template_id];
  std::string out;
  out.reserve(tmpl.size() + 32);
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    const std::size_t open = tmpl.find('{', pos);
    if (open == std::string::npos) {
      out.append(tmpl, pos, std::string::npos);
      break;
    }
    out.append(tmpl, pos, open - pos);
    const std::size_t close = tmpl.find('}', open + 1);
    if (close == std::string::npos) {
      throw TaskError(TaskErrorKind::IllegalInstance,
                      task.id() + ": unterminated placeholder in template");
    }
    out += inst.param(tmpl.substr(open + 1, close - open - 1));
    pos = close + 1;
  }
  return out;
}

// --- small helpers shared by the task emitters ---

// "s_10" -> "s_{10}": brace multi-character subscripts for math mode.
inline std::string latex_subscript(const std::string& sym) {
  const std::size_t us = sym.find('_');
  if (us == std::string::npos || sym.size() - us - 1 <= 1) return sym;
  return sym.substr(0, us + 1) + "{" + sym.substr(us + 1) + "}";
}

inline OperandBinding bind(std::string symbol, std::string value, Origin origin) {
  return {std::move(symbol), std::move(value), origin};
}

inline ReviewGroup single_review(std::string symbol, std::string value, Origin origin) {
  ReviewGroup g;
  g.bracketed = false;
  g.bindings.push_back(bind(std::move(symbol), std::move(value), origin));
  return g;
}

inline ReviewGroup bracketed_review(std::vector<OperandBinding> bindings) {
  ReviewGroup g;
  g.bracketed = true;
  g.bindings = std::move(bindings);
  return g;
}

}  // namespace tracegen
