#pragma once

#include <set>
#include <string>
#include <vector>

#include "tracegen/task.hpp"
#include "tracegen/value.hpp"

namespace tracegen {

// 0-based binary search over a sorted list of distinct integers; the target
// is always present. mid = floor((lo+hi)/2).
class BinarySearchTask final : public Task {
 public:
  std::string id() const override { return "binary-search"; }
  AlgorithmFamily family() const override { return AlgorithmFamily::DivideAndConquer; }

  std::vector<std::string> query_templates() const override {
    return {
        "Determine the index of ${target}$ in the sorted list ${list}$ with binary search "
        "(start from $0$).",
        "Find the index of ${target}$ in the sorted list ${list}$, starting from $0$.",
        "Provide the 0-based binary search index for ${target}$ in ${list}$.",
    };
  }

  TaskInstance sample(RangeTag range, std::uint64_t seed,
                      const RangeBounds& bounds) const override {
    if (seed == kReferenceSeed) return reference_instance();
    const LengthBounds& lb = bounds.at(range);
    if (lb.lo < 1 || lb.hi < lb.lo || lb.hi > 10000) {
      throw TaskError(TaskErrorKind::EmptyRange, id() + ": bad bounds for range");
    }
    Rng rng(derive_seed(seed, id()));
    const int n = static_cast<int>(rng.range(lb.lo, lb.hi));
    std::set<long long> values;
    while (static_cast<int>(values.size()) < n) values.insert(rng.range(-9999, 9999));
    std::vector<long long> list(values.begin(), values.end());
    TaskInstance inst;
    inst.task_id = id();
    inst.range = range;
    inst.params["list"] = render_int_list(list);
    inst.params["target"] = std::to_string(list[rng.below(list.size())]);
    inst.length = n;
    return inst;
  }

  TaskInstance reference_instance() const override {
    TaskInstance inst;
    inst.task_id = id();
    inst.params["list"] =
        "[-5957, -5259, -4195, -2263, 1289, 3514, 3632, 4284, 5991, 6578, 7333]";
    inst.params["target"] = "-5259";
    inst.length = 11;
    inst.range = RangeTag::S;
    return inst;
  }

  std::string solve(const TaskInstance& inst) const override {
    const std::vector<long long> list = parse_int_list(inst.param("list"));
    const long long target = std::stoll(inst.param("target"));
    for (std::size_t i = 1; i < list.size(); ++i) {
      if (list[i - 1] >= list[i]) {
        throw TaskError(TaskErrorKind::IllegalInstance, id() + ": list is not strictly sorted");
      }
    }
    int lo = 0, hi = static_cast<int>(list.size()) - 1;
    while (lo <= hi) {
      const int mid = (lo + hi) / 2;
      if (list[mid] == target) return std::to_string(mid);
      if (list[mid] > target) {
        hi = mid - 1;
      } else {
        lo = mid + 1;
      }
    }
    throw TaskError(TaskErrorKind::IllegalInstance, id() + ": target not present");
  }

  std::string brute_force_oracle(const TaskInstance& inst) const override {
    const std::vector<long long> list = parse_int_list(inst.param("list"));
    const long long target = std::stoll(inst.param("target"));
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (list[i] == target) return std::to_string(i);
    }
    throw TaskError(TaskErrorKind::IllegalInstance, id() + ": target not present");
  }

  Trace emit_trace(const TaskInstance& inst) const override {
    const std::vector<long long> list = parse_int_list(inst.param("list"));
    const long long target = std::stoll(inst.param("target"));
    solve(inst);  // sortedness/presence check

    std::vector<StepEvent> events;
    int lo = 0, hi = static_cast<int>(list.size()) - 1;
    for (;;) {
      const int mid = (lo + hi) / 2;
      const long long seen = list[mid];
      StepEvent ev;
      ev.subtask = interval(lo, hi);
      ev.loop_group = 1;
      std::vector<OperandBinding> slice;
      for (int i = lo; i <= hi; ++i) {
        slice.push_back(bind("s_" + std::to_string(i), std::to_string(list[i]), Origin::query()));
      }
      ev.review.push_back(bracketed_review(std::move(slice)));
      ev.review.push_back(single_review("Find", inst.param("target"), Origin::query()));
      const std::string mid_sym = "s_" + std::to_string(mid);
      const char* rel = seen == target ? " = " : (seen > target ? " > " : " < ");
      ev.computation.text = "$\\text{Mid} = " + std::to_string(mid) + ", " + latex_subscript(mid_sym) +
                            " = " + std::to_string(seen) + rel + "\\text{Find}$";
      ev.computation.uses = {mid_sym, "Find"};
      ev.friendly = friendly_step(list, lo, hi, mid, target);
      if (seen == target) {
        ev.computation.result_symbol = "index";
        ev.computation.result = std::to_string(mid);
        ev.transition = Transition::final();
        events.push_back(std::move(ev));
        break;
      }
      const int nlo = seen > target ? lo : mid + 1;
      const int nhi = seen > target ? mid - 1 : hi;
      ev.computation.result_symbol = "interval";
      ev.computation.result = interval(nlo, nhi);
      ev.transition = Transition::to(interval(nlo, nhi));
      events.push_back(std::move(ev));
      lo = nlo;
      hi = nhi;
    }
    Trace trace = build_trace(id(), std::move(events));
    trace.answer_label = "Index ";
    trace.friendly_preamble = "Let's perform the binary search step by step.";
    trace.friendly_conclusion = "The target number $" + inst.param("target") +
                                "$ is located at index $\\boxed{" + trace.final_answer + "}$.";
    return trace;
  }

  int length_of(const TaskInstance& inst) const override {
    return static_cast<int>(parse_int_list(inst.param("list")).size());
  }

 private:
  static std::string interval(int lo, int hi) {
    return "{" + std::to_string(lo) + "," + std::to_string(hi) + "}";
  }

  static FriendlyLines friendly_step(const std::vector<long long>& list, int lo, int hi, int mid,
                                     long long target) {
    FriendlyLines out;
    std::vector<std::string> slice;
    for (int i = lo; i <= hi; ++i) slice.push_back(std::to_string(list[i]));
    out.intro.push_back("The currently processed interval is $" + render_list(slice) + "$.");
    out.review.push_back("First we map each number to its index:");
    for (int i = lo; i <= hi; ++i) {
      out.review.push_back(" - Original index $" + std::to_string(i) + "$: $" +
                           std::to_string(list[i]) + "$");
    }
    out.review.push_back("The left boundary index is $" + std::to_string(lo) +
                         "$ and the right boundary index is $" + std::to_string(hi) + "$.");
    out.body.push_back("Median index $\\lfloor (" + std::to_string(lo) + " + " +
                       std::to_string(hi) + ")/2 \\rfloor = " + std::to_string(mid) +
                       "$, the median number is $" + std::to_string(list[mid]) + "$.");
    const long long seen = list[mid];
    if (seen == target) {
      out.transition.push_back("The target number $" + std::to_string(target) +
                               "$ is equal to the median number $" + std::to_string(seen) +
                               "$, the search ends.");
    } else {
      const bool left = seen > target;
      const int nlo = left ? lo : mid + 1;
      const int nhi = left ? mid - 1 : hi;
      std::vector<std::string> sub;
      for (int i = nlo; i <= nhi; ++i) sub.push_back(std::to_string(list[i]));
      out.transition.push_back("The target number $" + std::to_string(target) + "$ is " +
                               (left ? "less" : "greater") + " than the median number $" +
                               std::to_string(seen) + "$, continue these operations on the " +
                               (left ? "left" : "right") + " subinterval $" + render_list(sub) +
                               "$.");
    }
    return out;
  }
};

}  // namespace tracegen
