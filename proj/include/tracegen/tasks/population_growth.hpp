#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tracegen/task.hpp"
#include "tracegen/value.hpp"

namespace tracegen {

// Compound growth: population multiplies by a fixed integer factor each
// period; exactly one step per period.
class PopulationGrowthTask final : public Task {
 public:
  std::string id() const override { return "population-growth"; }
  AlgorithmFamily family() const override { return AlgorithmFamily::Iteration; }

  std::vector<std::string> query_templates() const override {
    return {
        "A population starts at {p0} and multiplies by {m} every period. "
        "What is the population after {k} periods?",
        "Starting from {p0} individuals, the population is multiplied by {m} each period. "
        "How large is it after {k} periods?",
        "A colony of {p0} grows by a factor of {m} per period. Give its size after {k} periods.",
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
    TaskInstance inst;
    inst.task_id = id();
    inst.range = range;
    inst.params["p0"] = std::to_string(rng.range(10, 999));
    inst.params["m"] = std::to_string(rng.range(2, 4));
    inst.params["k"] = std::to_string(rng.range(lb.lo, lb.hi));
    inst.length = length_of(inst);
    return inst;
  }

  TaskInstance reference_instance() const override {
    TaskInstance inst;
    inst.task_id = id();
    inst.params["p0"] = "100";
    inst.params["m"] = "2";
    inst.params["k"] = "3";
    inst.length = 3;
    inst.range = RangeTag::S;
    return inst;
  }

  std::string solve(const TaskInstance& inst) const override {
    const int m = parse_factor(inst);
    const int k = parse_periods(inst);
    std::string value = inst.param("p0");
    for (int t = 0; t < k; ++t) value = multiply_small(value, m);
    return value;
  }

  std::string brute_force_oracle(const TaskInstance& inst) const override {
    using boost::multiprecision::cpp_int;
    const cpp_int p0(inst.param("p0"));
    const cpp_int result = p0 * boost::multiprecision::pow(cpp_int(parse_factor(inst)),
                                                           static_cast<unsigned>(parse_periods(inst)));
    return result.str();
  }

  Trace emit_trace(const TaskInstance& inst) const override {
    const int m = parse_factor(inst);
    const int k = parse_periods(inst);
    std::string value = inst.param("p0");
    std::vector<StepEvent> events;
    for (int t = 1; t <= k; ++t) {
      const std::string prev = value;
      value = multiply_small(value, m);
      StepEvent ev;
      ev.subtask = "period " + std::to_string(t);
      ev.loop_group = 1;
      const std::string prev_sym = "P_" + std::to_string(t - 1);
      ev.review.push_back(single_review(prev_sym, prev,
                                        t == 1 ? Origin::query()
                                               : Origin::output_of(static_cast<std::size_t>(t) - 1)));
      ev.review.push_back(single_review("m", std::to_string(m), Origin::query()));
      const std::string cur_sym = "P_" + std::to_string(t);
      ev.computation.text = "$" + latex_subscript(cur_sym) + " = " + latex_subscript(prev_sym) +
                            " \\times " +
                            std::to_string(m) + " = " + prev + " \\times " + std::to_string(m) +
                            " = " + value + "$";
      ev.computation.result_symbol = cur_sym;
      ev.computation.result = value;
      ev.computation.uses = {prev_sym, "m"};
      ev.transition =
          t == k ? Transition::final() : Transition::to("period " + std::to_string(t + 1));
      events.push_back(std::move(ev));
    }
    return build_trace(id(), std::move(events));
  }

  int length_of(const TaskInstance& inst) const override { return parse_periods(inst); }

 private:
  int parse_factor(const TaskInstance& inst) const {
    const int m = std::stoi(inst.param("m"));
    if (m < 2 || m > 9) throw TaskError(TaskErrorKind::IllegalInstance, id() + ": bad factor");
    return m;
  }

  int parse_periods(const TaskInstance& inst) const {
    const int k = std::stoi(inst.param("k"));
    if (k < 1) throw TaskError(TaskErrorKind::IllegalInstance, id() + ": bad period count");
    return k;
  }

  // Digit-string multiplication by a single-digit factor.
  static std::string multiply_small(const std::string& digits, int m) {
    std::string out;
    int carry = 0;
    for (std::size_t i = digits.size(); i-- > 0;) {
      const int v = (digits[i] - '0') * m + carry;
      out.push_back(static_cast<char>('0' + v % 10));
      carry = v / 10;
    }
    while (carry > 0) {
      out.push_back(static_cast<char>('0' + carry % 10));
      carry /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
  }
};

}  // namespace tracegen
