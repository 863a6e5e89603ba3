#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "tracegen/task.hpp"

namespace tracegen {

// Running parity of the ones in a bit string, one step per bit.
class ParityTask final : public Task {
 public:
  std::string id() const override { return "parity"; }
  AlgorithmFamily family() const override { return AlgorithmFamily::Enumeration; }

  std::vector<std::string> query_templates() const override {
    return {
        "Is the number of $1$s in the bit string {bits} even or odd?",
        "Count the ones in {bits}: is that count even or odd?",
        "For the binary string {bits}, answer \"even\" or \"odd\" for the parity of its ones.",
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
    const int n = static_cast<int>(rng.range(lb.lo, lb.hi));
    std::string bits;
    for (int i = 0; i < n; ++i) bits.push_back(rng.coin() ? '1' : '0');
    TaskInstance inst;
    inst.task_id = id();
    inst.range = range;
    inst.params["bits"] = bits;
    inst.length = n;
    return inst;
  }

  TaskInstance reference_instance() const override {
    TaskInstance inst;
    inst.task_id = id();
    inst.params["bits"] = "1011";
    inst.length = 4;
    inst.range = RangeTag::S;
    return inst;
  }

  std::string solve(const TaskInstance& inst) const override {
    const std::string& bits = check(inst);
    bool odd = false;
    for (char c : bits) odd ^= c == '1';
    return odd ? "odd" : "even";
  }

  std::string brute_force_oracle(const TaskInstance& inst) const override {
    const std::string& bits = check(inst);
    return std::count(bits.begin(), bits.end(), '1') % 2 == 0 ? "even" : "odd";
  }

  Trace emit_trace(const TaskInstance& inst) const override {
    const std::string& bits = check(inst);
    std::vector<StepEvent> events;
    std::string parity = "even";
    for (std::size_t i = 1; i <= bits.size(); ++i) {
      const char bit = bits[i - 1];
      const std::string prev = parity;
      if (bit == '1') parity = parity == "even" ? "odd" : "even";
      StepEvent ev;
      ev.subtask = "bit " + std::to_string(i);
      ev.loop_group = 1;
      const std::string b_sym = "b_" + std::to_string(i);
      const std::string prev_sym = "p_" + std::to_string(i - 1);
      ev.review.push_back(single_review(b_sym, std::string(1, bit), Origin::query()));
      ev.review.push_back(
          single_review(prev_sym, prev, i == 1 ? Origin::query() : Origin::output_of(i - 1)));
      const std::string cur_sym = "p_" + std::to_string(i);
      ev.computation.text = "$" + latex_subscript(b_sym) + " = " + std::string(1, bit) + "$, " +
                            (bit == '1' ? "parity flips" : "parity keeps") + ": $" +
                            latex_subscript(cur_sym) + " = \\text{" + parity + "}$";
      ev.computation.result_symbol = cur_sym;
      ev.computation.result = parity;
      ev.computation.uses = {b_sym, prev_sym};
      ev.transition = i == bits.size() ? Transition::final()
                                       : Transition::to("bit " + std::to_string(i + 1));
      events.push_back(std::move(ev));
    }
    return build_trace(id(), std::move(events));
  }

  int length_of(const TaskInstance& inst) const override {
    return static_cast<int>(inst.param("bits").size());
  }

 private:
  const std::string& check(const TaskInstance& inst) const {
    const std::string& bits = inst.param("bits");
    if (bits.empty() || bits.find_first_not_of("01") != std::string::npos) {
      throw TaskError(TaskErrorKind::IllegalInstance, id() + ": not a bit string");
    }
    return bits;
  }
};

}  // namespace tracegen
