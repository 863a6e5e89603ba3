#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "tracegen/task.hpp"
#include "tracegen/value.hpp"

namespace tracegen {

// Greedy coin counting over the canonical denomination set, one step per
// denomination. The set is canonical, so greedy matches the optimum.
class CoinChangeTask final : public Task {
 public:
  std::string id() const override { return "coin-change"; }
  AlgorithmFamily family() const override { return AlgorithmFamily::Greedy; }
  RangeBounds default_bounds() const override { return {{1, 2}, {3, 3}, {4, 4}}; }

  std::vector<std::string> query_templates() const override {
    return {
        "Using coins of denominations $200, 100, 50, 20, 10, 5, 2, 1$, what is the minimum "
        "number of coins that makes ${amount}$?",
        "What is the fewest number of coins of values $200, 100, 50, 20, 10, 5, 2, 1$ "
        "needed to pay exactly ${amount}$?",
        "Pay ${amount}$ with coins $200, 100, 50, 20, 10, 5, 2, 1$ using as few coins as "
        "possible. How many coins is that?",
    };
  }

  TaskInstance sample(RangeTag range, std::uint64_t seed,
                      const RangeBounds& bounds) const override {
    if (seed == kReferenceSeed) return reference_instance();
    const LengthBounds& lb = bounds.at(range);
    if (lb.lo < 1 || lb.hi < lb.lo || lb.hi > 9) {
      throw TaskError(TaskErrorKind::EmptyRange, id() + ": bad bounds for range");
    }
    Rng rng(derive_seed(seed, id()));
    const int digits = static_cast<int>(rng.range(lb.lo, lb.hi));
    long long lo = 1, hi = 9;
    for (int i = 1; i < digits; ++i) {
      lo *= 10;
      hi = hi * 10 + 9;
    }
    TaskInstance inst;
    inst.task_id = id();
    inst.range = range;
    inst.params["amount"] = std::to_string(rng.range(lo, hi));
    inst.length = digits;
    return inst;
  }

  TaskInstance reference_instance() const override {
    TaskInstance inst;
    inst.task_id = id();
    inst.params["amount"] = "567";
    inst.length = 3;
    inst.range = RangeTag::S;
    return inst;
  }

  std::string solve(const TaskInstance& inst) const override {
    long long rem = amount(inst);
    long long coins = 0;
    for (long long d : kDenoms) {
      coins += rem / d;
      rem %= d;
    }
    return std::to_string(coins);
  }

  std::string brute_force_oracle(const TaskInstance& inst) const override {
    const long long target = amount(inst);
    if (target > 1000000) {
      throw TaskError(TaskErrorKind::OracleCapExceeded, id() + ": amount too large for the table");
    }
    // smallest coin count by dynamic programming over amounts
    constexpr long long kUnset = -1;
    std::vector<long long> best(static_cast<std::size_t>(target) + 1, kUnset);
    best[0] = 0;
    for (long long v = 1; v <= target; ++v) {
      for (long long d : kDenoms) {
        if (d > v || best[static_cast<std::size_t>(v - d)] == kUnset) continue;
        const long long c = best[static_cast<std::size_t>(v - d)] + 1;
        if (best[static_cast<std::size_t>(v)] == kUnset || c < best[static_cast<std::size_t>(v)]) {
          best[static_cast<std::size_t>(v)] = c;
        }
      }
    }
    return std::to_string(best.back());
  }

  Trace emit_trace(const TaskInstance& inst) const override {
    long long rem = amount(inst);
    long long coins = 0;
    std::vector<StepEvent> events;
    for (std::size_t i = 0; i < kDenoms.size(); ++i) {
      const long long d = kDenoms[i];
      const long long take = rem / d;
      const long long next_rem = rem % d;
      StepEvent ev;
      ev.subtask = "denomination " + std::to_string(d);
      ev.loop_group = 1;
      const std::string rem_sym = "Rem_" + std::to_string(i);
      const std::string d_sym = "d_" + std::to_string(i + 1);
      ev.review.push_back(single_review(rem_sym, std::to_string(rem),
                                        i == 0 ? Origin::query() : Origin::output_of(i)));
      ev.review.push_back(single_review(d_sym, std::to_string(d), Origin::query()));
      coins += take;
      ev.computation.text = "$n = \\lfloor " + std::to_string(rem) + " / " + std::to_string(d) +
                            " \\rfloor = " + std::to_string(take) + "$, remainder $" +
                            std::to_string(next_rem) + "$, coins so far $" +
                            std::to_string(coins) + "$";
      ev.computation.result_symbol = "coins";
      ev.computation.result = std::to_string(coins);
      ev.computation.uses = {rem_sym, d_sym};
      rem = next_rem;
      ev.transition = i + 1 == kDenoms.size()
                          ? Transition::final()
                          : Transition::to("denomination " + std::to_string(kDenoms[i + 1]));
      events.push_back(std::move(ev));
    }
    return build_trace(id(), std::move(events));
  }

  int length_of(const TaskInstance& inst) const override {
    return digit_count(inst.param("amount"));
  }

 private:
  static constexpr std::array<long long, 8> kDenoms = {200, 100, 50, 20, 10, 5, 2, 1};

  long long amount(const TaskInstance& inst) const {
    const long long a = std::stoll(inst.param("amount"));
    if (a < 1) throw TaskError(TaskErrorKind::IllegalInstance, id() + ": non-positive amount");
    return a;
  }
};

}  // namespace tracegen
