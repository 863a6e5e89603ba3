#pragma once

#include <cctype>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Canonical text forms shared by samplers, solvers and renderers. The rules
// are fixed so that identical data always serializes to identical bytes:
// integers carry no leading zeros or separators, decimals carry no trailing
// fractional zeros, lists render as "[a, b, c]" with a single space after
// each comma.

namespace tracegen {

inline bool is_all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

// Strip leading zeros from an unsigned digit run, keeping a single "0".
inline std::string canon_digits(std::string_view digits) {
  std::size_t i = 0;
  while (i + 1 < digits.size() && digits[i] == '0') ++i;
  return std::string(digits.substr(i));
}

// Canonical signed/decimal number from integer digits, fraction digits and a
// sign. Trailing fractional zeros are dropped; a zero value never keeps a sign.
inline std::string canon_decimal(std::string_view int_digits, std::string_view frac_digits,
                                 bool negative = false) {
  std::string ip = canon_digits(int_digits.empty() ? "0" : int_digits);
  std::string fp(frac_digits);
  while (!fp.empty() && fp.back() == '0') fp.pop_back();
  std::string out;
  if (ip == "0" && fp.empty()) return "0";
  if (negative) out.push_back('-');
  out += ip;
  if (!fp.empty()) {
    out.push_back('.');
    out += fp;
  }
  return out;
}

// Canonicalize a number literal like "-0012.3400" -> "-12.34".
// Throws std::invalid_argument when the text is not a plain number.
inline std::string canon_number(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  const std::size_t dot = s.find('.');
  std::string_view ip = dot == std::string_view::npos ? s : s.substr(0, dot);
  std::string_view fp = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  if (ip.empty() && fp.empty()) throw std::invalid_argument("empty number literal");
  if ((!ip.empty() && !is_all_digits(ip)) || (!fp.empty() && !is_all_digits(fp))) {
    throw std::invalid_argument("bad number literal: " + std::string(text));
  }
  return canon_decimal(ip, fp, negative);
}

inline std::string render_list(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ", ";
    out += items[i];
  }
  out += "]";
  return out;
}

inline std::string render_int_list(const std::vector<long long>& items) {
  std::vector<std::string> text;
  text.reserve(items.size());
  for (long long v : items) text.push_back(std::to_string(v));
  return render_list(text);
}

// Split "[a, b, c]" into element texts. Accepts any single-level bracketed
// list with comma separators; whitespace around elements is trimmed.
inline std::vector<std::string> split_list(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
    throw std::invalid_argument("not a list literal: " + std::string(text));
  }
  s = s.substr(1, s.size() - 2);
  std::vector<std::string> out;
  std::size_t start = 0;
  if (s.empty()) return out;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ',') {
      std::string_view item = s.substr(start, i - start);
      while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) {
        item.remove_prefix(1);
      }
      while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) {
        item.remove_suffix(1);
      }
      out.emplace_back(item);
      start = i + 1;
    }
  }
  return out;
}

inline std::vector<long long> parse_int_list(std::string_view text) {
  std::vector<long long> out;
  for (const std::string& item : split_list(text)) {
    out.push_back(std::stoll(item));
  }
  return out;
}

// Integer/fraction split of an unsigned decimal literal.
struct DecimalParts {
  std::string int_digits;
  std::string frac_digits;
};

inline DecimalParts split_decimal(std::string_view text) {
  const std::size_t dot = text.find('.');
  if (dot == std::string_view::npos) {
    if (!is_all_digits(text)) throw std::invalid_argument("bad decimal: " + std::string(text));
    return {std::string(text), ""};
  }
  std::string_view ip = text.substr(0, dot);
  std::string_view fp = text.substr(dot + 1);
  if (!is_all_digits(ip) || !is_all_digits(fp)) {
    throw std::invalid_argument("bad decimal: " + std::string(text));
  }
  return {std::string(ip), std::string(fp)};
}

// Digit count of an unsigned decimal literal, excluding the point.
inline int digit_count(std::string_view text) {
  int n = 0;
  for (char c : text) {
    if (c >= '0' && c <= '9') ++n;
  }
  return n;
}

}  // namespace tracegen
