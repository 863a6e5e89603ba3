#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "tracegen/trace.hpp"

using namespace tracegen;

namespace {

StepEvent step(std::string subtask, std::string result, bool halt,
               std::vector<OperandBinding> reviewed = {}, std::vector<std::string> uses = {}) {
  StepEvent ev;
  ev.subtask = std::move(subtask);
  if (!reviewed.empty()) ev.review.push_back({std::move(reviewed), false});
  ev.computation.text = "compute " + result;
  ev.computation.result_symbol = "r";
  ev.computation.result = std::move(result);
  ev.computation.uses = std::move(uses);
  ev.transition = halt ? Transition::final() : Transition::to("next");
  return ev;
}

bool has(const std::vector<Violation>& v, ViolationKind kind) {
  for (const auto& item : v) {
    if (item.kind == kind) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("build_trace numbers states and lifts the final answer") {
  auto trace = build_trace("demo", {step("t1", "5", false), step("t2", "9", true)});
  REQUIRE(trace.steps.size() == 2);
  CHECK(trace.steps[0].state_index == 1);
  CHECK(trace.steps[1].state_index == 2);
  CHECK(trace.step_count == 2);
  CHECK(trace.final_answer == "9");
  CHECK(validate_trace(trace, "9").empty());
}

TEST_CASE("build_trace rejects malformed runs") {
  CHECK_THROWS_AS(build_trace("demo", {}), TraceBuildError);
  try {
    build_trace("demo", {});
  } catch (const TraceBuildError& e) {
    CHECK(e.kind() == TraceBuildErrorKind::EmptyTrace);
  }

  try {
    build_trace("demo", {step("t1", "5", true), step("t2", "9", true)});
    FAIL("expected premature halt");
  } catch (const TraceBuildError& e) {
    CHECK(e.kind() == TraceBuildErrorKind::PrematureHalt);
  }

  try {
    build_trace("demo", {step("t1", "5", false)});
    FAIL("expected missing halt");
  } catch (const TraceBuildError& e) {
    CHECK(e.kind() == TraceBuildErrorKind::MissingHalt);
  }

  // A step may only consume outputs of strictly earlier steps.
  auto forward = step("t1", "5", false, {{"x", "9", Origin::output_of(2)}});
  try {
    build_trace("demo", {forward, step("t2", "9", true)});
    FAIL("expected dangling reference");
  } catch (const TraceBuildError& e) {
    CHECK(e.kind() == TraceBuildErrorKind::DanglingReference);
  }
}

TEST_CASE("validate_trace flags tampered state indices") {
  auto trace = build_trace("demo", {step("t1", "5", false), step("t2", "9", true)});
  trace.steps[1].state_index = 7;
  CHECK(has(validate_trace(trace), ViolationKind::StateIndexGap));

  trace = build_trace("demo", {step("t1", "5", false), step("t2", "9", true)});
  trace.step_count = 3;
  CHECK(has(validate_trace(trace), ViolationKind::StepCountMismatch));
}

TEST_CASE("validate_trace flags empty and multiline values") {
  auto trace = build_trace("demo", {step("t1", "5", true)});
  trace.steps[0].computation.result = "";
  trace.final_answer = "";
  CHECK(has(validate_trace(trace), ViolationKind::EmptyValue));

  trace = build_trace("demo", {step("t1", "5", true)});
  trace.steps[0].subtask = "line\nbreak";
  CHECK(has(validate_trace(trace), ViolationKind::ValueLineBreak));
}

TEST_CASE("validate_trace enforces review coverage of used operands") {
  auto ok = step("t1", "5", true, {{"a", "2", Origin::query()}, {"b", "3", Origin::query()}},
                 {"a", "b"});
  CHECK(validate_trace(build_trace("demo", {ok})).empty());

  auto bad = step("t1", "5", true, {{"a", "2", Origin::query()}}, {"a", "b"});
  CHECK(has(validate_trace(build_trace("demo", {bad})), ViolationKind::UnreviewedOperand));
}

TEST_CASE("validate_trace checks halts and the answer linkage") {
  auto trace = build_trace("demo", {step("t1", "5", false), step("t2", "9", true)});
  trace.steps[0].transition = Transition::final();
  CHECK(has(validate_trace(trace), ViolationKind::PrematureHalt));

  trace = build_trace("demo", {step("t1", "5", false), step("t2", "9", true)});
  trace.steps[1].transition = Transition::to("t3");
  CHECK(has(validate_trace(trace), ViolationKind::MissingHalt));

  trace = build_trace("demo", {step("t1", "5", false), step("t2", "9", true)});
  trace.final_answer = "8";
  CHECK(has(validate_trace(trace), ViolationKind::FinalAnswerDetached));

  trace = build_trace("demo", {step("t1", "5", false), step("t2", "9", true)});
  auto violations = validate_trace(trace, "10");
  CHECK(has(violations, ViolationKind::AnswerMismatch));
  CHECK(validate_trace(trace, "9").empty());
}

TEST_CASE("violation names are distinct") {
  CHECK(std::string(violation_name(ViolationKind::StateIndexGap)) == "state-index-gap");
  CHECK(std::string(violation_name(ViolationKind::AnswerMismatch)) == "answer-mismatch");
}
