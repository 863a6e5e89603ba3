#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "tracegen/task.hpp"
#include "tracegen/value.hpp"

namespace tracegen {

// 0/1 knapsack by capacity-indexed rows, one trace step per item plus a
// read-off step.
class Knapsack01Task final : public Task {
 public:
  std::string id() const override { return "knapsack-01"; }
  AlgorithmFamily family() const override { return AlgorithmFamily::DP; }
  RangeBounds default_bounds() const override { return {{3, 8}, {9, 14}, {15, 20}}; }
  bool hard() const override { return true; }

  std::vector<std::string> query_templates() const override {
    return {
        "Items have values ${values}$ and weights ${weights}$. Each can be taken at most once. "
        "What is the maximum total value within weight capacity ${capacity}$?",
        "Given item values ${values}$ and weights ${weights}$, pick a subset with total weight "
        "at most ${capacity}$ maximizing total value. Report that value.",
        "With capacity ${capacity}$, values ${values}$ and weights ${weights}$, what is the "
        "best achievable total value taking each item at most once?",
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
    std::vector<long long> values, weights;
    for (int i = 0; i < n; ++i) {
      values.push_back(rng.range(1, 99));
      weights.push_back(rng.range(1, 30));
    }
    TaskInstance inst;
    inst.task_id = id();
    inst.range = range;
    inst.params["values"] = render_int_list(values);
    inst.params["weights"] = render_int_list(weights);
    inst.params["capacity"] = std::to_string(rng.range(10, 50));
    inst.length = n;
    return inst;
  }

  TaskInstance reference_instance() const override {
    TaskInstance inst;
    inst.task_id = id();
    inst.params["values"] = "[60, 100, 120]";
    inst.params["weights"] = "[10, 20, 30]";
    inst.params["capacity"] = "50";
    inst.length = 3;
    inst.range = RangeTag::S;
    return inst;
  }

  std::string solve(const TaskInstance& inst) const override {
    const Parsed p = parse(inst);
    std::vector<long long> row(static_cast<std::size_t>(p.capacity) + 1, 0);
    for (std::size_t i = 0; i < p.values.size(); ++i) update_row(row, p.values[i], p.weights[i]);
    return std::to_string(row.back());
  }

  std::string brute_force_oracle(const TaskInstance& inst) const override {
    const Parsed p = parse(inst);
    if (p.values.size() > 22) {
      throw TaskError(TaskErrorKind::OracleCapExceeded, id() + ": too many items to enumerate");
    }
    long long best = 0;
    subset_best(p, 0, 0, 0, best);
    return std::to_string(best);
  }

  Trace emit_trace(const TaskInstance& inst) const override {
    const Parsed p = parse(inst);
    const std::size_t n = p.values.size();
    std::vector<StepEvent> events;
    std::vector<long long> row(static_cast<std::size_t>(p.capacity) + 1, 0);
    std::string prev_row_text = render_int_list(row);
    for (std::size_t i = 1; i <= n; ++i) {
      update_row(row, p.values[i - 1], p.weights[i - 1]);
      const std::string row_text = render_int_list(row);
      StepEvent ev;
      ev.subtask = "item " + std::to_string(i);
      ev.loop_group = 1;
      const std::string vi = "v_" + std::to_string(i);
      const std::string wi = "w_" + std::to_string(i);
      const std::string prev_sym = "R_" + std::to_string(i - 1);
      ev.review.push_back(bracketed_review({
          bind(vi, std::to_string(p.values[i - 1]), Origin::query()),
          bind(wi, std::to_string(p.weights[i - 1]), Origin::query()),
      }));
      ev.review.push_back(single_review("C", std::to_string(p.capacity), Origin::query()));
      ev.review.push_back(single_review(prev_sym, prev_row_text,
                                        i == 1 ? Origin::query() : Origin::output_of(i - 1)));
      const std::string cur_sym = "R_" + std::to_string(i);
      ev.computation.text = "fold item " + std::to_string(i) + " into the row: $" +
                            latex_subscript(cur_sym) + "[c] = \\max(" + latex_subscript(prev_sym) +
                            "[c], " + latex_subscript(prev_sym) + "[c - " +
                            std::to_string(p.weights[i - 1]) + "] + " +
                            std::to_string(p.values[i - 1]) + ")$, giving $" + row_text + "$";
      ev.computation.result_symbol = cur_sym;
      ev.computation.result = row_text;
      ev.computation.uses = {vi, wi, "C", prev_sym};
      ev.transition = Transition::to(i == n ? "read off" : "item " + std::to_string(i + 1));
      events.push_back(std::move(ev));
      prev_row_text = row_text;
    }
    StepEvent fin;
    fin.subtask = "read off";
    const std::string last_sym = "R_" + std::to_string(n);
    fin.review.push_back(single_review(last_sym, prev_row_text, Origin::output_of(n)));
    fin.review.push_back(single_review("C", std::to_string(p.capacity), Origin::query()));
    fin.computation.text = "$\\text{Best} = " + latex_subscript(last_sym) + "[" +
                           std::to_string(p.capacity) + "] = " + std::to_string(row.back()) + "$";
    fin.computation.result_symbol = "Best";
    fin.computation.result = std::to_string(row.back());
    fin.computation.uses = {last_sym, "C"};
    fin.transition = Transition::final();
    events.push_back(std::move(fin));
    return build_trace(id(), std::move(events));
  }

  int length_of(const TaskInstance& inst) const override {
    return static_cast<int>(parse_int_list(inst.param("values")).size());
  }

 private:
  struct Parsed {
    std::vector<long long> values, weights;
    long long capacity = 0;
  };

  Parsed parse(const TaskInstance& inst) const {
    Parsed p;
    p.values = parse_int_list(inst.param("values"));
    p.weights = parse_int_list(inst.param("weights"));
    p.capacity = std::stoll(inst.param("capacity"));
    if (p.values.empty() || p.values.size() != p.weights.size() || p.capacity < 0) {
      throw TaskError(TaskErrorKind::IllegalInstance, id() + ": inconsistent items");
    }
    for (std::size_t i = 0; i < p.values.size(); ++i) {
      if (p.values[i] < 0 || p.weights[i] < 1) {
        throw TaskError(TaskErrorKind::IllegalInstance, id() + ": bad item " + std::to_string(i));
      }
    }
    return p;
  }

  static void update_row(std::vector<long long>& row, long long value, long long weight) {
    for (long long c = static_cast<long long>(row.size()) - 1; c >= weight; --c) {
      row[static_cast<std::size_t>(c)] =
          std::max(row[static_cast<std::size_t>(c)],
                   row[static_cast<std::size_t>(c - weight)] + value);
    }
  }

  static void subset_best(const Parsed& p, std::size_t idx, long long weight, long long value,
                          long long& best) {
    if (weight > p.capacity) return;
    if (value > best) best = value;
    if (idx == p.values.size()) return;
    subset_best(p, idx + 1, weight + p.weights[idx], value + p.values[idx], best);
    subset_best(p, idx + 1, weight, value, best);
  }
};

}  // namespace tracegen
