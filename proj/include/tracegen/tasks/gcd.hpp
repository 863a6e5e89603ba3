#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "tracegen/task.hpp"
#include "tracegen/value.hpp"

namespace tracegen {

// Greatest common divisor via the Euclidean remainder chain, one division
// per step.  Size metric: decimal digits of the larger operand.
class GcdTask final : public Task {
 public:
  std::string id() const override { return "gcd"; }
  AlgorithmFamily family() const override { return AlgorithmFamily::Recursion; }
  RangeBounds default_bounds() const override { return {{2, 5}, {6, 10}, {11, 15}}; }

  std::vector<std::string> query_templates() const override {
    return {
        "Compute the greatest common divisor of ${a}$ and ${b}$.",
        "What is $\\gcd({a}, {b})$?",
        "Find the largest integer that divides both {a} and {b} without remainder.",
    };
  }

  TaskInstance sample(RangeTag range, std::uint64_t seed,
                      const RangeBounds& bounds) const override {
    if (seed == kReferenceSeed) return reference_instance();
    const LengthBounds& lb = bounds.at(range);
    if (lb.lo < 1 || lb.hi > 15) {
      throw TaskError(TaskErrorKind::EmptyRange, id() + ": supported sizes are 1 to 15 digits");
    }
    Rng rng(derive_seed(seed, id()));
    const int d = static_cast<int>(rng.range(static_cast<std::uint64_t>(lb.lo),
                                             static_cast<std::uint64_t>(lb.hi)));
    const int db = static_cast<int>(rng.range(1, static_cast<std::uint64_t>(d)));
    long long a = draw_with_digits(rng, d);
    long long b = draw_with_digits(rng, db);
    if (b > a) std::swap(a, b);
    TaskInstance inst;
    inst.task_id = id();
    inst.range = range;
    inst.params["a"] = std::to_string(a);
    inst.params["b"] = std::to_string(b);
    inst.length = d;
    return inst;
  }

  TaskInstance reference_instance() const override {
    TaskInstance inst;
    inst.task_id = id();
    inst.params["a"] = "48";
    inst.params["b"] = "18";
    inst.length = 2;
    inst.range = RangeTag::S;
    return inst;
  }

  std::string solve(const TaskInstance& inst) const override {
    long long x = operand(inst, "a");
    long long y = operand(inst, "b");
    while (y != 0) {
      const long long r = x % y;
      x = y;
      y = r;
    }
    return std::to_string(x);
  }

  std::string brute_force_oracle(const TaskInstance& inst) const override {
    // binary gcd: factor out twos, subtract, never divide
    unsigned long long x = static_cast<unsigned long long>(operand(inst, "a"));
    unsigned long long y = static_cast<unsigned long long>(operand(inst, "b"));
    if (x == 0) return std::to_string(y);
    if (y == 0) return std::to_string(x);
    int shift = 0;
    while (((x | y) & 1ULL) == 0) {
      x >>= 1;
      y >>= 1;
      ++shift;
    }
    while ((x & 1ULL) == 0) x >>= 1;
    while (y != 0) {
      while ((y & 1ULL) == 0) y >>= 1;
      if (x > y) std::swap(x, y);
      y -= x;
    }
    return std::to_string(x << shift);
  }

  Trace emit_trace(const TaskInstance& inst) const override {
    const long long a = operand(inst, "a");
    const long long b = operand(inst, "b");
    if (a < 1 || b < 1) {
      throw TaskError(TaskErrorKind::IllegalInstance, id() + ": operands must be positive");
    }
    std::vector<long long> r = {a, b};
    std::vector<StepEvent> events;
    const auto sym = [](std::size_t k) { return "r_" + std::to_string(k); };
    // r_0 and r_1 come from the query; r_k is produced by step k - 1
    const auto origin = [](std::size_t k) {
      return k <= 1 ? Origin::query() : Origin::output_of(k - 1);
    };
    std::size_t s = 1;
    while (true) {
      const long long hi = r[s - 1];
      const long long lo = r[s];
      const long long q = hi / lo;
      const long long rem = hi % lo;
      r.push_back(rem);
      StepEvent ev;
      ev.subtask = "division " + std::to_string(s);
      ev.loop_group = 1;
      ev.review.push_back(single_review(sym(s - 1), std::to_string(hi), origin(s - 1)));
      ev.review.push_back(single_review(sym(s), std::to_string(lo), origin(s)));
      ev.computation.text = "$" + std::to_string(hi) + " = " + std::to_string(q) + " \\times " +
                            std::to_string(lo) + " + " + std::to_string(rem) + "$, remainder $" +
                            latex_subscript(sym(s + 1)) + " = " + std::to_string(rem) + "$";
      ev.computation.result_symbol = sym(s + 1);
      ev.computation.result = std::to_string(rem);
      ev.computation.uses = {sym(s - 1), sym(s)};
      ev.transition = rem == 0 ? Transition::to("read off")
                               : Transition::to("division " + std::to_string(s + 1));
      events.push_back(std::move(ev));
      if (rem == 0) break;
      ++s;
    }
    {
      StepEvent ev;
      ev.subtask = "read off";
      ev.review.push_back(single_review(sym(s), std::to_string(r[s]), origin(s)));
      ev.computation.text = "the last nonzero remainder is the answer: $G = " +
                            std::to_string(r[s]) + "$";
      ev.computation.result_symbol = "G";
      ev.computation.result = std::to_string(r[s]);
      ev.computation.uses = {sym(s)};
      ev.transition = Transition::final();
      events.push_back(std::move(ev));
    }
    Trace trace = build_trace(id(), std::move(events));
    trace.friendly_preamble = "Let's run the remainder chain until it bottoms out.";
    trace.friendly_conclusion =
        "The greatest common divisor is $\\boxed{" + trace.final_answer + "}$.";
    return trace;
  }

  int length_of(const TaskInstance& inst) const override {
    const long long m = std::max(operand(inst, "a"), operand(inst, "b"));
    return static_cast<int>(std::to_string(m).size());
  }

 private:
  static long long draw_with_digits(Rng& rng, int digits) {
    long long lo = 1;
    for (int i = 1; i < digits; ++i) lo *= 10;
    const long long hi = lo * 10 - 1;
    return static_cast<long long>(
        rng.range(static_cast<std::uint64_t>(lo), static_cast<std::uint64_t>(hi)));
  }

  long long operand(const TaskInstance& inst, const char* name) const {
    const std::string& text = inst.param(name);
    if (!is_all_digits(text)) {
      throw TaskError(TaskErrorKind::IllegalInstance, id() + ": bad operand " + text);
    }
    return std::stoll(text);
  }
};

}  // namespace tracegen
