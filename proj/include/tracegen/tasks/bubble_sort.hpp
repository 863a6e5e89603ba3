#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "tracegen/task.hpp"
#include "tracegen/value.hpp"

namespace tracegen {

// Ascending bubble sort, one trace step per pass; swaps only on strict
// greater (stable). The run ends with the first clean pass.
class BubbleSortTask final : public Task {
 public:
  std::string id() const override { return "bubble-sort"; }
  AlgorithmFamily family() const override { return AlgorithmFamily::Iteration; }

  std::vector<std::string> query_templates() const override {
    return {
        "Sort the list ${list}$ in ascending order with bubble sort and give the result.",
        "Apply bubble sort to ${list}$; what is the sorted list?",
        "What does ${list}$ look like after sorting in increasing order?",
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
    std::vector<long long> list;
    for (int i = 0; i < n; ++i) list.push_back(rng.range(-9999, 9999));
    TaskInstance inst;
    inst.task_id = id();
    inst.range = range;
    inst.params["list"] = render_int_list(list);
    inst.length = n;
    return inst;
  }

  TaskInstance reference_instance() const override {
    TaskInstance inst;
    inst.task_id = id();
    inst.params["list"] = "[3, 1, 2]";
    inst.length = 3;
    inst.range = RangeTag::S;
    return inst;
  }

  std::string solve(const TaskInstance& inst) const override {
    std::vector<long long> list = parse_int_list(inst.param("list"));
    if (list.empty()) throw TaskError(TaskErrorKind::IllegalInstance, id() + ": empty list");
    for (;;) {
      if (bubble_pass(list) == 0) return render_int_list(list);
    }
  }

  std::string brute_force_oracle(const TaskInstance& inst) const override {
    std::vector<long long> list = parse_int_list(inst.param("list"));
    if (list.empty()) throw TaskError(TaskErrorKind::IllegalInstance, id() + ": empty list");
    if (list.size() <= 8) {
      // lexicographic minimum over every permutation of the multiset
      std::vector<long long> best;
      std::vector<long long> cur;
      std::vector<bool> used(list.size(), false);
      permute_min(list, used, cur, best);
      return render_int_list(best);
    }
    // repeated minimum extraction for sizes past the factorial horizon
    std::vector<long long> rest = list;
    std::vector<long long> out;
    while (!rest.empty()) {
      std::size_t mi = 0;
      for (std::size_t i = 1; i < rest.size(); ++i) {
        if (rest[i] < rest[mi]) mi = i;
      }
      out.push_back(rest[mi]);
      rest.erase(rest.begin() + static_cast<long>(mi));
    }
    return render_int_list(out);
  }

  Trace emit_trace(const TaskInstance& inst) const override {
    std::vector<long long> list = parse_int_list(inst.param("list"));
    if (list.empty()) throw TaskError(TaskErrorKind::IllegalInstance, id() + ": empty list");
    std::vector<StepEvent> events;
    for (std::size_t pass = 1;; ++pass) {
      StepEvent ev;
      ev.subtask = "pass " + std::to_string(pass);
      ev.loop_group = 1;
      std::vector<OperandBinding> cur;
      std::vector<std::string> syms;
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string sym = "x_" + std::to_string(i);
        syms.push_back(sym);
        cur.push_back(bind(sym, std::to_string(list[i]),
                           pass == 1 ? Origin::query() : Origin::output_of(pass - 1)));
      }
      ev.review.push_back(bracketed_review(std::move(cur)));
      const std::string before = render_int_list(list);
      const int swaps = bubble_pass(list);
      const std::string after = render_int_list(list);
      ev.computation.uses = syms;
      ev.computation.result_symbol = "A_" + std::to_string(pass);
      ev.computation.result = after;
      if (swaps == 0) {
        ev.computation.text = "bubble pass: $" + before + " \\to " + after + "$, swaps $= 0$, "
                              "already sorted";
        ev.transition = Transition::final();
        events.push_back(std::move(ev));
        break;
      }
      ev.computation.text = "bubble pass: $" + before + " \\to " + after + "$, swaps $= " +
                            std::to_string(swaps) + "$";
      ev.transition = Transition::to("pass " + std::to_string(pass + 1));
      events.push_back(std::move(ev));
    }
    return build_trace(id(), std::move(events));
  }

  int length_of(const TaskInstance& inst) const override {
    return static_cast<int>(parse_int_list(inst.param("list")).size());
  }

 private:
  static int bubble_pass(std::vector<long long>& list) {
    int swaps = 0;
    for (std::size_t i = 1; i < list.size(); ++i) {
      if (list[i - 1] > list[i]) {
        std::swap(list[i - 1], list[i]);
        ++swaps;
      }
    }
    return swaps;
  }

  static void permute_min(const std::vector<long long>& list, std::vector<bool>& used,
                          std::vector<long long>& cur, std::vector<long long>& best) {
    if (cur.size() == list.size()) {
      if (best.empty() || cur < best) best = cur;
      return;
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      cur.push_back(list[i]);
      permute_min(list, used, cur, best);
      cur.pop_back();
      used[i] = false;
    }
  }
};

}  // namespace tracegen
