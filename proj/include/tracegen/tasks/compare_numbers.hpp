#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "tracegen/task.hpp"
#include "tracegen/tasks/large_number_addition.hpp"
#include "tracegen/value.hpp"

namespace tracegen {

// "Is a strictly greater than b?" over non-negative decimals. The run first
// compares integer-part widths, then scans aligned digit columns from the
// most significant position until one side wins.
class CompareNumbersTask final : public Task {
 public:
  std::string id() const override { return "compare-numbers"; }
  AlgorithmFamily family() const override { return AlgorithmFamily::Simulation; }

  std::vector<std::string> query_templates() const override {
    return {
        "Is ${a}$ greater than ${b}$? Answer YES or NO.",
        "Determine whether ${a}$ is strictly larger than ${b}$; answer YES or NO.",
        "Compare ${a}$ with ${b}$: is the first number greater? Reply YES or NO.",
    };
  }

  TaskInstance sample(RangeTag range, std::uint64_t seed,
                      const RangeBounds& bounds) const override {
    if (seed == kReferenceSeed) return reference_instance();
    const LengthBounds& lb = bounds.at(range);
    if (lb.lo < 1 || lb.hi < lb.lo) {
      throw TaskError(TaskErrorKind::EmptyRange, id() + ": bad bounds for range");
    }
    Rng rng(derive_seed(seed, id()));
    const int da = static_cast<int>(rng.range(lb.lo, lb.hi));
    const int db = static_cast<int>(rng.range(lb.lo, lb.hi));
    TaskInstance inst;
    inst.task_id = id();
    inst.range = range;
    inst.params["a"] = addition_detail::sample_operand(rng, da);
    inst.params["b"] = addition_detail::sample_operand(rng, db);
    // Make near-miss comparisons common: half the time b is a copy of a with
    // its tail resampled.
    if (rng.coin() && da >= 2) {
      std::string near = inst.params["a"];
      std::size_t cut = near.size() - 1 - rng.below(std::min<std::uint64_t>(3, near.size() - 1));
      for (std::size_t i = cut; i < near.size(); ++i) {
        if (near[i] != '.') near[i] = rng.digit();
      }
      // keep the sampled precision canonical: no trailing fractional zero
      if (near.back() == '0' && near.find('.') != std::string::npos) near.back() = rng.digit(false);
      inst.params["b"] = near;
    }
    inst.length = length_of(inst);
    return inst;
  }

  TaskInstance reference_instance() const override {
    TaskInstance inst;
    inst.task_id = id();
    inst.params["a"] = "123.45";
    inst.params["b"] = "67.89";
    inst.length = 5;
    inst.range = RangeTag::S;
    return inst;
  }

  std::string solve(const TaskInstance& inst) const override {
    const DecimalParts pa = split_decimal(inst.param("a"));
    const DecimalParts pb = split_decimal(inst.param("b"));
    if (pa.int_digits.size() != pb.int_digits.size()) {
      return pa.int_digits.size() > pb.int_digits.size() ? "YES" : "NO";
    }
    const auto al = addition_detail::align(inst.param("a"), inst.param("b"));
    for (std::size_t i = 0; i < al.a.size(); ++i) {
      if (al.a[i] != al.b[i]) return al.a[i] > al.b[i] ? "YES" : "NO";
    }
    return "NO";
  }

  std::string brute_force_oracle(const TaskInstance& inst) const override {
    using boost::multiprecision::cpp_int;
    const DecimalParts pa = split_decimal(inst.param("a"));
    const DecimalParts pb = split_decimal(inst.param("b"));
    const std::size_t frac = std::max(pa.frac_digits.size(), pb.frac_digits.size());
    auto scaled = [&](const DecimalParts& p) {
      std::string s = p.int_digits + p.frac_digits;
      s.append(frac - p.frac_digits.size(), '0');
      return cpp_int(canon_digits(s));
    };
    return scaled(pa) > scaled(pb) ? "YES" : "NO";
  }

  Trace emit_trace(const TaskInstance& inst) const override {
    const DecimalParts pa = split_decimal(inst.param("a"));
    const DecimalParts pb = split_decimal(inst.param("b"));
    std::vector<StepEvent> events;

    StepEvent widths;
    widths.subtask = "widths";
    widths.review.push_back(single_review("L_a", std::to_string(pa.int_digits.size()),
                                          Origin::query()));
    widths.review.push_back(single_review("L_b", std::to_string(pb.int_digits.size()),
                                          Origin::query()));
    widths.computation.uses = {"L_a", "L_b"};
    widths.computation.result_symbol = "cmp";
    if (pa.int_digits.size() != pb.int_digits.size()) {
      const bool greater = pa.int_digits.size() > pb.int_digits.size();
      widths.computation.text = "$L_a = " + std::to_string(pa.int_digits.size()) +
                                (greater ? " > " : " < ") + "L_b = " +
                                std::to_string(pb.int_digits.size()) +
                                "$, the integer parts decide: answer " +
                                (greater ? "YES" : "NO");
      widths.computation.result = greater ? "YES" : "NO";
      widths.transition = Transition::final();
      events.push_back(std::move(widths));
      return build_trace(id(), std::move(events));
    }
    widths.computation.text = "$L_a = L_b = " + std::to_string(pa.int_digits.size()) +
                              "$, widths tie; scan digit columns";
    widths.computation.result = "tie";
    widths.transition = Transition::to("column 1");
    events.push_back(std::move(widths));

    const auto al = addition_detail::align(inst.param("a"), inst.param("b"));
    std::size_t stop = al.a.size();  // first differing column, if any
    for (std::size_t i = 0; i < al.a.size(); ++i) {
      if (al.a[i] != al.b[i]) {
        stop = i;
        break;
      }
    }
    for (std::size_t i = 0; i <= stop && i < al.a.size(); ++i) {
      StepEvent ev;
      ev.subtask = "column " + std::to_string(i + 1);
      ev.loop_group = 1;
      const std::string ai = "a_" + std::to_string(i + 1);
      const std::string bi = "b_" + std::to_string(i + 1);
      ev.review.push_back(bracketed_review({
          bind(ai, std::string(1, al.a[i]), Origin::query()),
          bind(bi, std::string(1, al.b[i]), Origin::query()),
      }));
      ev.computation.uses = {ai, bi};
      ev.computation.result_symbol = "cmp";
      const bool last_column = i + 1 == al.a.size();
      if (al.a[i] != al.b[i]) {
        const bool greater = al.a[i] > al.b[i];
        ev.computation.text = "$" + ai + " = " + std::string(1, al.a[i]) +
                              (greater ? " > " : " < ") + bi + " = " + std::string(1, al.b[i]) +
                              "$, decided: answer " + (greater ? "YES" : "NO");
        ev.computation.result = greater ? "YES" : "NO";
        ev.transition = Transition::final();
      } else if (last_column) {
        ev.computation.text = "$" + ai + " = " + bi + " = " + std::string(1, al.a[i]) +
                              "$, all columns equal, $a = b$: answer NO";
        ev.computation.result = "NO";
        ev.transition = Transition::final();
      } else {
        ev.computation.text = "$" + ai + " = " + bi + " = " + std::string(1, al.a[i]) +
                              "$, still tied";
        ev.computation.result = "tie";
        ev.transition = Transition::to("column " + std::to_string(i + 2));
      }
      events.push_back(std::move(ev));
    }
    return build_trace(id(), std::move(events));
  }

  int length_of(const TaskInstance& inst) const override {
    return std::max(digit_count(inst.param("a")), digit_count(inst.param("b")));
  }
};

}  // namespace tracegen
