#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Structured reasoning traces. A trace is a linear run of machine states:
// each step names the subtask it works on, re-reads the operands it consumes
// (with their provenance), performs one computation, and hands control to the
// next state or halts. Renderers consume this structure; they never invent
// content of their own.

namespace tracegen {

enum class OriginKind { QueryInput, StepOutput };

// Where an operand value comes from: the original query, or the output of an
// earlier step (1-based index).
struct Origin {
  OriginKind kind = OriginKind::QueryInput;
  std::size_t step = 0;

  static Origin query() { return {OriginKind::QueryInput, 0}; }
  static Origin output_of(std::size_t k) { return {OriginKind::StepOutput, k}; }

  friend bool operator==(const Origin&, const Origin&) = default;
};

// One reviewed operand: symbol name (plain text, e.g. "s_5" or "Find"),
// its value, and where that value was established.
struct OperandBinding {
  std::string symbol;
  std::string value;
  Origin origin;

  friend bool operator==(const OperandBinding&, const OperandBinding&) = default;
};

// A review line. Bracketed groups render as "[($a_0=1$), ($a_1=2$), ...]";
// single bindings render as "$a = 1$".
struct ReviewGroup {
  std::vector<OperandBinding> bindings;
  bool bracketed = false;

  friend bool operator==(const ReviewGroup&, const ReviewGroup&) = default;
};

// The step's single unit of work. `text` is the rendered computation line
// (already in display form); `result_symbol`/`result` name and hold the value
// this step establishes; `uses` lists the symbols the computation consumed,
// which must all appear in the step's review.
struct Computation {
  std::string text;
  std::string result_symbol;
  std::string result;
  std::vector<std::string> uses;

  friend bool operator==(const Computation&, const Computation&) = default;
};

// Control handoff: either to the next subtask or to the final state.
struct Transition {
  bool halt = false;
  std::string next;

  static Transition to(std::string subtask) { return {false, std::move(subtask)}; }
  static Transition final() { return {true, ""}; }

  friend bool operator==(const Transition&, const Transition&) = default;
};

// Optional prose used by the user-friendly rendering. When absent the
// renderer falls back to generic phrasing built from the structured fields.
struct FriendlyLines {
  std::vector<std::string> intro;
  std::vector<std::string> review;
  std::vector<std::string> body;
  std::vector<std::string> transition;

  friend bool operator==(const FriendlyLines&, const FriendlyLines&) = default;
};

// What a task emitter produces for one step, before state numbering.
// loop_group tags steps that belong to the same loop (nonzero id); ablated
// renderings merge maximal runs of equal ids.
struct StepEvent {
  std::string subtask;
  std::vector<ReviewGroup> review;
  Computation computation;
  Transition transition;
  int loop_group = 0;
  std::optional<FriendlyLines> friendly;

  friend bool operator==(const StepEvent&, const StepEvent&) = default;
};

struct TraceStep {
  std::size_t state_index = 0;  // 1-based
  std::string subtask;
  std::vector<ReviewGroup> review;
  Computation computation;
  Transition transition;
  int loop_group = 0;
  std::optional<FriendlyLines> friendly;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct Trace {
  std::string task_id;
  std::vector<TraceStep> steps;
  std::string final_answer;
  std::size_t step_count = 0;
  // Optional text before the boxed answer, e.g. "Index " for searches.
  std::string answer_label;
  std::string friendly_preamble;
  std::string friendly_conclusion;

  friend bool operator==(const Trace&, const Trace&) = default;
};

enum class TraceBuildErrorKind { EmptyTrace, DanglingReference, MissingHalt, PrematureHalt };

class TraceBuildError : public std::runtime_error {
 public:
  TraceBuildError(TraceBuildErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  TraceBuildErrorKind kind() const { return kind_; }

 private:
  TraceBuildErrorKind kind_;
};

// Assemble a trace from emitted step events. Assigns state indices 1..n,
// checks the halt discipline and operand provenance, and lifts the last
// step's result into final_answer.
inline Trace build_trace(std::string task_id, std::vector<StepEvent> events) {
  if (events.empty()) {
    throw TraceBuildError(TraceBuildErrorKind::EmptyTrace, "trace for " + task_id + " has no steps");
  }
  Trace trace;
  trace.task_id = std::move(task_id);
  trace.steps.reserve(events.size());
  for (std::size_t i = 0; i < events.size(); ++i) {
    StepEvent& ev = events[i];
    const std::size_t index = i + 1;
    const bool last = index == events.size();
    if (ev.transition.halt && !last) {
      throw TraceBuildError(TraceBuildErrorKind::PrematureHalt,
                            trace.task_id + ": step " + std::to_string(index) + " halts early");
    }
    if (last && !ev.transition.halt) {
      throw TraceBuildError(TraceBuildErrorKind::MissingHalt,
                            trace.task_id + ": last step does not halt");
    }
    for (const ReviewGroup& group : ev.review) {
      for (const OperandBinding& binding : group.bindings) {
        if (binding.origin.kind == OriginKind::StepOutput &&
            (binding.origin.step == 0 || binding.origin.step >= index)) {
          throw TraceBuildError(TraceBuildErrorKind::DanglingReference,
                                trace.task_id + ": step " + std::to_string(index) + " reviews " +
                                    binding.symbol + " from step " +
                                    std::to_string(binding.origin.step));
        }
      }
    }
    TraceStep step;
    step.state_index = index;
    step.subtask = std::move(ev.subtask);
    step.review = std::move(ev.review);
    step.computation = std::move(ev.computation);
    step.transition = std::move(ev.transition);
    step.loop_group = ev.loop_group;
    step.friendly = std::move(ev.friendly);
    trace.steps.push_back(std::move(step));
  }
  trace.step_count = trace.steps.size();
  trace.final_answer = trace.steps.back().computation.result;
  return trace;
}

enum class ViolationKind {
  StateIndexGap,
  StepCountMismatch,
  EmptyValue,
  ValueLineBreak,
  DanglingReference,
  UnreviewedOperand,
  MissingHalt,
  PrematureHalt,
  FinalAnswerDetached,
  AnswerMismatch,
};

struct Violation {
  ViolationKind kind;
  std::size_t step = 0;  // 1-based; 0 means trace-level
  std::string detail;
};

inline const char* violation_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::StateIndexGap: return "state-index-gap";
    case ViolationKind::StepCountMismatch: return "step-count-mismatch";
    case ViolationKind::EmptyValue: return "empty-value";
    case ViolationKind::ValueLineBreak: return "value-line-break";
    case ViolationKind::DanglingReference: return "dangling-reference";
    case ViolationKind::UnreviewedOperand: return "unreviewed-operand";
    case ViolationKind::MissingHalt: return "missing-halt";
    case ViolationKind::PrematureHalt: return "premature-halt";
    case ViolationKind::FinalAnswerDetached: return "final-answer-detached";
    case ViolationKind::AnswerMismatch: return "answer-mismatch";
  }
  return "unknown";
}

// Structural audit of an assembled trace. `expected` is the independently
// computed answer the trace must end on; pass std::nullopt to skip that check.
inline std::vector<Violation> validate_trace(const Trace& trace,
                                             std::optional<std::string> expected = std::nullopt) {
  std::vector<Violation> out;
  auto add = [&out](ViolationKind kind, std::size_t step, std::string detail) {
    out.push_back({kind, step, std::move(detail)});
  };
  if (trace.steps.empty()) {
    add(ViolationKind::MissingHalt, 0, "trace has no steps");
    return out;
  }
  if (trace.step_count != trace.steps.size()) {
    add(ViolationKind::StepCountMismatch, 0,
        "declared " + std::to_string(trace.step_count) + ", actual " +
            std::to_string(trace.steps.size()));
  }
  auto check_value = [&add](std::size_t step, const std::string& what, const std::string& value) {
    if (value.empty()) {
      add(ViolationKind::EmptyValue, step, what + " is empty");
    } else if (value.find('\n') != std::string::npos) {
      add(ViolationKind::ValueLineBreak, step, what + " contains a line break");
    }
  };
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const TraceStep& step = trace.steps[i];
    const std::size_t index = i + 1;
    const bool last = index == trace.steps.size();
    if (step.state_index != index) {
      add(ViolationKind::StateIndexGap, index,
          "state index " + std::to_string(step.state_index) + " at position " +
              std::to_string(index));
    }
    check_value(index, "subtask", step.subtask);
    check_value(index, "computation text", step.computation.text);
    check_value(index, "result", step.computation.result);
    std::set<std::string> reviewed;
    for (const ReviewGroup& group : step.review) {
      for (const OperandBinding& binding : group.bindings) {
        check_value(index, "operand " + binding.symbol, binding.value);
        reviewed.insert(binding.symbol);
        if (binding.origin.kind == OriginKind::StepOutput &&
            (binding.origin.step == 0 || binding.origin.step >= index)) {
          add(ViolationKind::DanglingReference, index,
              binding.symbol + " refers to step " + std::to_string(binding.origin.step));
        }
      }
    }
    for (const std::string& symbol : step.computation.uses) {
      if (!reviewed.count(symbol)) {
        add(ViolationKind::UnreviewedOperand, index, symbol + " used but not reviewed");
      }
    }
    if (step.transition.halt && !last) {
      add(ViolationKind::PrematureHalt, index, "halt before the last step");
    }
    if (last && !step.transition.halt) {
      add(ViolationKind::MissingHalt, index, "last step does not halt");
    }
  }
  const TraceStep& final_step = trace.steps.back();
  if (trace.final_answer != final_step.computation.result) {
    add(ViolationKind::FinalAnswerDetached, trace.steps.size(),
        "final answer \"" + trace.final_answer + "\" is not the last step's result \"" +
            final_step.computation.result + "\"");
  }
  if (expected && trace.final_answer != *expected) {
    add(ViolationKind::AnswerMismatch, trace.steps.size(),
        "answer \"" + trace.final_answer + "\" != expected \"" + *expected + "\"");
  }
  return out;
}

}  // namespace tracegen
