#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tracegen/task.hpp"
#include "tracegen/value.hpp"

namespace tracegen {

namespace addition_detail {

// Right-aligned digit columns of two unsigned decimal literals.
struct Alignment {
  std::string a, b;      // padded digit runs, no point, equal width
  int frac_width = 0;    // shared fractional width after padding
};

inline Alignment align(const std::string& lhs, const std::string& rhs) {
  const DecimalParts pa = split_decimal(lhs);
  const DecimalParts pb = split_decimal(rhs);
  Alignment out;
  out.frac_width = static_cast<int>(std::max(pa.frac_digits.size(), pb.frac_digits.size()));
  const std::size_t int_width = std::max(pa.int_digits.size(), pb.int_digits.size());
  auto pad = [&](const DecimalParts& p) {
    std::string s(int_width - p.int_digits.size(), '0');
    s += p.int_digits;
    s += p.frac_digits;
    s.append(static_cast<std::size_t>(out.frac_width) - p.frac_digits.size(), '0');
    return s;
  };
  out.a = pad(pa);
  out.b = pad(pb);
  return out;
}

// Digit-wise sum with carries, least significant first.
struct ColumnSum {
  std::vector<int> digits;   // digits[j] = output digit at position j+1 from the right
  std::vector<int> carries;  // carries[j] = carry out of position j+1
};

inline ColumnSum column_sum(const Alignment& al) {
  ColumnSum out;
  const std::size_t w = al.a.size();
  int carry = 0;
  for (std::size_t j = 0; j < w; ++j) {
    const int da = al.a[w - 1 - j] - '0';
    const int db = al.b[w - 1 - j] - '0';
    const int s = da + db + carry;
    out.digits.push_back(s % 10);
    carry = s / 10;
    out.carries.push_back(carry);
  }
  return out;
}

inline std::string assemble(const ColumnSum& cs, int frac_width) {
  std::string digits;
  if (!cs.carries.empty() && cs.carries.back() != 0) {
    digits.push_back(static_cast<char>('0' + cs.carries.back()));
  }
  for (std::size_t j = cs.digits.size(); j-- > 0;) {
    digits.push_back(static_cast<char>('0' + cs.digits[j]));
  }
  const std::string frac = digits.substr(digits.size() - frac_width);
  const std::string intp = digits.substr(0, digits.size() - frac_width);
  return canon_decimal(intp, frac);
}

inline std::string sample_operand(Rng& rng, int digits) {
  const bool decimal = digits >= 2 && rng.coin();
  const int frac = decimal ? 1 + static_cast<int>(rng.below(
                                     static_cast<std::uint64_t>(std::min(6, digits - 1))))
                           : 0;
  const int ip = digits - frac;
  std::string s;
  for (int i = 0; i < ip; ++i) {
    const bool leading = i == 0 && ip > 1;
    s.push_back(rng.digit(!leading));
  }
  if (frac > 0) {
    s.push_back('.');
    for (int i = 0; i < frac; ++i) {
      const bool last = i == frac - 1;  // keep the sampled precision canonical
      s.push_back(rng.digit(!last));
    }
  }
  return s;
}

}  // namespace addition_detail

class LargeNumberAdditionTask final : public Task {
 public:
  std::string id() const override { return "large-number-addition"; }
  AlgorithmFamily family() const override { return AlgorithmFamily::Simulation; }
  RangeBounds default_bounds() const override { return {{10, 30}, {31, 50}, {51, 70}}; }

  std::vector<std::string> query_templates() const override {
    return {
        "Calculate ${a} + {b}$.",
        "What is the sum of ${a}$ and ${b}$?",
        "Add ${a}$ and ${b}$ and report the result.",
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
    inst.length = length_of(inst);
    return inst;
  }

  TaskInstance reference_instance() const override {
    TaskInstance inst;
    inst.task_id = id();
    inst.params["a"] = "361";
    inst.params["b"] = "576";
    inst.length = 3;
    inst.range = RangeTag::S;
    return inst;
  }

  std::string solve(const TaskInstance& inst) const override {
    const auto al = addition_detail::align(inst.param("a"), inst.param("b"));
    return addition_detail::assemble(addition_detail::column_sum(al), al.frac_width);
  }

  std::string brute_force_oracle(const TaskInstance& inst) const override {
    using boost::multiprecision::cpp_int;
    const DecimalParts pa = split_decimal(inst.param("a"));
    const DecimalParts pb = split_decimal(inst.param("b"));
    const int frac =
        static_cast<int>(std::max(pa.frac_digits.size(), pb.frac_digits.size()));
    auto scaled = [&](const DecimalParts& p) {
      std::string s = p.int_digits + p.frac_digits;
      s.append(static_cast<std::size_t>(frac) - p.frac_digits.size(), '0');
      // strip leading zeros: cpp_int's parser reads them as an octal prefix
      return cpp_int(canon_digits(s.empty() ? "0" : s));
    };
    const cpp_int sum = scaled(pa) + scaled(pb);
    std::string digits = sum.str();
    if (static_cast<int>(digits.size()) <= frac) {
      digits.insert(digits.begin(), frac + 1 - digits.size(), '0');
    }
    return canon_decimal(digits.substr(0, digits.size() - frac),
                         digits.substr(digits.size() - frac));
  }

  Trace emit_trace(const TaskInstance& inst) const override {
    const auto al = addition_detail::align(inst.param("a"), inst.param("b"));
    const auto cs = addition_detail::column_sum(al);
    const std::size_t w = al.a.size();
    std::vector<StepEvent> events;
    for (std::size_t j = 1; j <= w; ++j) {
      const int da = al.a[w - j] - '0';
      const int db = al.b[w - j] - '0';
      const int cin = j == 1 ? 0 : cs.carries[j - 2];
      const int s = da + db + cin;
      StepEvent ev;
      ev.subtask = "position " + std::to_string(j);
      ev.loop_group = 1;
      const std::string aj = "a_" + std::to_string(j);
      const std::string bj = "b_" + std::to_string(j);
      const std::string cin_sym = "c_" + std::to_string(j - 1);
      ev.review.push_back(bracketed_review({
          bind(aj, std::to_string(da), Origin::query()),
          bind(bj, std::to_string(db), Origin::query()),
      }));
      ev.review.push_back(single_review(cin_sym, std::to_string(cin),
                                        j == 1 ? Origin::query() : Origin::output_of(j - 1)));
      ev.computation.text = "$" + aj + " + " + bj + " + " + cin_sym + " = " +
                            std::to_string(da) + " + " + std::to_string(db) + " + " +
                            std::to_string(cin) + " = " + std::to_string(s) + "$, digit $d_" +
                            std::to_string(j) + " = " + std::to_string(s % 10) + "$, carry $c_" +
                            std::to_string(j) + " = " + std::to_string(s / 10) + "$";
      ev.computation.result_symbol = "d_" + std::to_string(j);
      ev.computation.result = std::to_string(s % 10);
      ev.computation.uses = {aj, bj, cin_sym};
      ev.transition = j == w ? Transition::to("assembly")
                             : Transition::to("position " + std::to_string(j + 1));
      events.push_back(std::move(ev));
    }
    StepEvent fin;
    fin.subtask = "assembly";
    std::vector<OperandBinding> outs;
    for (std::size_t j = w; j >= 1; --j) {
      outs.push_back(bind("d_" + std::to_string(j), std::to_string(cs.digits[j - 1]),
                          Origin::output_of(j)));
    }
    fin.review.push_back(bracketed_review(std::move(outs)));
    const std::string cw = "c_" + std::to_string(w);
    fin.review.push_back(single_review(cw, std::to_string(cs.carries.back()),
                                      Origin::output_of(w)));
    const std::string answer = addition_detail::assemble(cs, al.frac_width);
    fin.computation.text = "$\\text{Sum} = " + answer + "$";
    fin.computation.result_symbol = "Sum";
    fin.computation.result = answer;
    for (std::size_t j = 1; j <= w; ++j) fin.computation.uses.push_back("d_" + std::to_string(j));
    fin.computation.uses.push_back(cw);
    fin.transition = Transition::final();
    events.push_back(std::move(fin));
    return build_trace(id(), std::move(events));
  }

  int length_of(const TaskInstance& inst) const override {
    return std::max(digit_count(inst.param("a")), digit_count(inst.param("b")));
  }
};

}  // namespace tracegen
