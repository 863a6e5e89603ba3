#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tracegen/task.hpp"
#include "tracegen/value.hpp"

namespace tracegen {

// Sort a list with bottom-up mergesort: every step merges two adjacent runs,
// and a trace over n numbers always takes exactly n steps (n - 1 merges plus
// the closing restatement).
class MergeSortTask final : public Task {
 public:
  std::string id() const override { return "merge-sort"; }
  AlgorithmFamily family() const override { return AlgorithmFamily::DivideAndConquer; }

  std::vector<std::string> query_templates() const override {
    return {
        "Sort the list {list} in ascending order.",
        "Arrange the numbers {list} from smallest to largest and give the resulting list.",
        "What is {list} after sorting it in increasing order?",
    };
  }

  TaskInstance sample(RangeTag range, std::uint64_t seed,
                      const RangeBounds& bounds) const override {
    if (seed == kReferenceSeed) return reference_instance();
    const LengthBounds& lb = bounds.at(range);
    if (lb.lo < 1) {
      throw TaskError(TaskErrorKind::EmptyRange, id() + ": need at least one element");
    }
    Rng rng(derive_seed(seed, id()));
    const int n = static_cast<int>(rng.range(static_cast<std::uint64_t>(lb.lo),
                                             static_cast<std::uint64_t>(lb.hi)));
    std::vector<long long> values;
    values.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      values.push_back(static_cast<long long>(rng.range(0, 199998)) - 99999);
    }
    TaskInstance inst;
    inst.task_id = id();
    inst.range = range;
    inst.params["list"] = render_int_list(values);
    inst.length = n;
    return inst;
  }

  TaskInstance reference_instance() const override {
    TaskInstance inst;
    inst.task_id = id();
    inst.params["list"] = "[38, 27, 43, 3, 9, 82, 10]";
    inst.length = 7;
    inst.range = RangeTag::S;
    return inst;
  }

  std::string solve(const TaskInstance& inst) const override {
    std::vector<std::vector<long long>> runs;
    for (long long v : values(inst)) runs.push_back({v});
    while (runs.size() > 1) {
      std::vector<std::vector<long long>> next;
      for (std::size_t i = 0; i + 1 < runs.size(); i += 2) {
        next.push_back(merge(runs[i], runs[i + 1]));
      }
      if (runs.size() % 2 == 1) next.push_back(runs.back());
      runs = std::move(next);
    }
    return render_int_list(runs.front());
  }

  std::string brute_force_oracle(const TaskInstance& inst) const override {
    // insertion sort: shift each element left until it fits
    std::vector<long long> v = values(inst);
    for (std::size_t i = 1; i < v.size(); ++i) {
      const long long key = v[i];
      std::size_t j = i;
      while (j > 0 && v[j - 1] > key) {
        v[j] = v[j - 1];
        --j;
      }
      v[j] = key;
    }
    return render_int_list(v);
  }

  Trace emit_trace(const TaskInstance& inst) const override {
    struct Run {
      std::vector<long long> items;
      std::string sym;
      Origin origin = Origin::query();
    };
    const std::vector<long long> input = values(inst);
    if (input.empty()) {
      throw TaskError(TaskErrorKind::IllegalInstance, id() + ": empty list");
    }
    std::vector<Run> runs;
    for (std::size_t i = 0; i < input.size(); ++i) {
      runs.push_back({{input[i]}, "x_" + std::to_string(i), Origin::query()});
    }
    const std::size_t merges = input.size() - 1;
    std::vector<StepEvent> events;
    events.reserve(merges + 1);
    std::size_t k = 0;
    while (runs.size() > 1) {
      std::vector<Run> next;
      for (std::size_t i = 0; i + 1 < runs.size(); i += 2) {
        const Run& left = runs[i];
        const Run& right = runs[i + 1];
        ++k;
        Run merged;
        merged.items = merge(left.items, right.items);
        merged.sym = "M_" + std::to_string(k);
        merged.origin = Origin::output_of(k);
        StepEvent ev;
        ev.subtask = "merge " + std::to_string(k);
        ev.loop_group = 1;
        ev.review.push_back(single_review(left.sym, render_int_list(left.items), left.origin));
        ev.review.push_back(single_review(right.sym, render_int_list(right.items), right.origin));
        ev.computation.text = "merge $" + render_int_list(left.items) + "$ and $" +
                              render_int_list(right.items) + "$ into $" +
                              render_int_list(merged.items) + "$";
        ev.computation.result_symbol = merged.sym;
        ev.computation.result = render_int_list(merged.items);
        ev.computation.uses = {left.sym, right.sym};
        ev.transition = Transition::to(
            k == merges ? std::string("restate") : "merge " + std::to_string(k + 1));
        events.push_back(std::move(ev));
        next.push_back(std::move(merged));
      }
      if (runs.size() % 2 == 1) next.push_back(runs.back());
      runs = std::move(next);
    }
    {
      const Run& whole = runs.front();
      StepEvent ev;
      ev.subtask = "restate";
      ev.review.push_back(single_review(whole.sym, render_int_list(whole.items), whole.origin));
      ev.computation.text = "the list is fully sorted: $" + render_int_list(whole.items) + "$";
      ev.computation.result_symbol = "Sorted";
      ev.computation.result = render_int_list(whole.items);
      ev.computation.uses = {whole.sym};
      ev.transition = Transition::final();
      events.push_back(std::move(ev));
    }
    Trace trace = build_trace(id(), std::move(events));
    trace.friendly_preamble = "Let's merge the runs pair by pair until one remains.";
    trace.friendly_conclusion = "The sorted list is $\\boxed{" + trace.final_answer + "}$.";
    return trace;
  }

  int length_of(const TaskInstance& inst) const override {
    return static_cast<int>(values(inst).size());
  }

 private:
  std::vector<long long> values(const TaskInstance& inst) const {
    return parse_int_list(inst.param("list"));
  }

  static std::vector<long long> merge(const std::vector<long long>& a,
                                      const std::vector<long long>& b) {
    std::vector<long long> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] <= b[j]) {
        out.push_back(a[i++]);
      } else {
        out.push_back(b[j++]);
      }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return out;
  }
};

}  // namespace tracegen
