#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "tracegen/task.hpp"

namespace tracegen {

// Substring containment as window-by-window enumeration; halts early on the
// first match.
class AnySubstringTask final : public Task {
 public:
  std::string id() const override { return "any-substring"; }
  AlgorithmFamily family() const override { return AlgorithmFamily::Enumeration; }

  std::vector<std::string> query_templates() const override {
    return {
        "Does the string \"{text}\" contain \"{pattern}\" as a substring? Answer YES or NO.",
        "Is \"{pattern}\" present anywhere inside \"{text}\"? Answer YES or NO.",
        "Check whether \"{pattern}\" occurs in \"{text}\" and answer YES or NO.",
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
    std::string text;
    for (int i = 0; i < n; ++i) text.push_back(static_cast<char>('a' + rng.below(6)));
    const int m = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(6, n))));
    std::string pattern;
    if (rng.coin()) {
      const std::size_t pos = rng.below(static_cast<std::uint64_t>(n - m + 1));
      pattern = text.substr(pos, static_cast<std::size_t>(m));
    } else {
      for (int tries = 0; tries < 100; ++tries) {
        pattern.clear();
        for (int i = 0; i < m; ++i) pattern.push_back(static_cast<char>('a' + rng.below(6)));
        if (text.find(pattern) == std::string::npos) break;
        if (tries == 99) break;  // keep whatever came last; a planted hit is fine
      }
    }
    TaskInstance inst;
    inst.task_id = id();
    inst.range = range;
    inst.params["text"] = text;
    inst.params["pattern"] = pattern;
    inst.length = n;
    return inst;
  }

  TaskInstance reference_instance() const override {
    TaskInstance inst;
    inst.task_id = id();
    inst.params["text"] = "abcabd";
    inst.params["pattern"] = "cab";
    inst.length = 6;
    inst.range = RangeTag::S;
    return inst;
  }

  std::string solve(const TaskInstance& inst) const override {
    const std::string& text = inst.param("text");
    const std::string& pattern = inst.param("pattern");
    check(text, pattern);
    for (std::size_t i = 0; i + pattern.size() <= text.size(); ++i) {
      bool all = true;
      for (std::size_t j = 0; j < pattern.size(); ++j) {
        if (text[i + j] != pattern[j]) {
          all = false;
          break;
        }
      }
      if (all) return "YES";
    }
    return "NO";
  }

  std::string brute_force_oracle(const TaskInstance& inst) const override {
    check(inst.param("text"), inst.param("pattern"));
    return inst.param("text").find(inst.param("pattern")) != std::string::npos ? "YES" : "NO";
  }

  Trace emit_trace(const TaskInstance& inst) const override {
    const std::string& text = inst.param("text");
    const std::string& pattern = inst.param("pattern");
    check(text, pattern);
    std::vector<StepEvent> events;
    const std::size_t last = text.size() - pattern.size();
    for (std::size_t i = 0; i <= last; ++i) {
      const std::string window = text.substr(i, pattern.size());
      const bool match = window == pattern;
      StepEvent ev;
      ev.subtask = "offset " + std::to_string(i);
      ev.loop_group = 1;
      const std::string wi = "W_" + std::to_string(i);
      ev.review.push_back(single_review(wi, window, Origin::query()));
      ev.review.push_back(single_review("P", pattern, Origin::query()));
      ev.computation.uses = {wi, "P"};
      ev.computation.result_symbol = "verdict";
      if (match) {
        ev.computation.text = "window \"" + window + "\" equals \"" + pattern +
                              "\": match found, answer YES";
        ev.computation.result = "YES";
        ev.transition = Transition::final();
        events.push_back(std::move(ev));
        break;
      }
      if (i == last) {
        ev.computation.text = "window \"" + window + "\" differs from \"" + pattern +
                              "\"; no offsets remain, answer NO";
        ev.computation.result = "NO";
        ev.transition = Transition::final();
      } else {
        ev.computation.text = "window \"" + window + "\" differs from \"" + pattern + "\"";
        ev.computation.result = "mismatch";
        ev.transition = Transition::to("offset " + std::to_string(i + 1));
      }
      events.push_back(std::move(ev));
    }
    return build_trace(id(), std::move(events));
  }

  int length_of(const TaskInstance& inst) const override {
    return static_cast<int>(inst.param("text").size());
  }

 private:
  void check(const std::string& text, const std::string& pattern) const {
    if (text.empty() || pattern.empty() || pattern.size() > text.size()) {
      throw TaskError(TaskErrorKind::IllegalInstance, id() + ": bad text/pattern sizes");
    }
  }
};

}  // namespace tracegen
