#pragma once

#include "digitsum/types.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace digitsum {

/// Base-b expansion stored least significant digit first, so digits[i] is the
/// coefficient of b^i. The canonical form of a number has no trailing zero
/// entry and zero is the empty vector. Pattern words used by pattern_count are
/// also DigitVectors but are plain words over {0,...,b-1}: high zeros allowed.
struct DigitVector {
  std::vector<std::uint64_t> digits;
  Base base;

  bool canonical() const { return digits.empty() || digits.back() != 0; }

  friend bool operator==(const DigitVector&, const DigitVector&) = default;
};

inline DigitVector to_digits(const Natural& n, Base b) {
  require_natural(n, "n");
  DigitVector out{{}, b};
  Natural q = n, next, r;
  const Natural divisor(b.value());
  while (q != 0) {
    boost::multiprecision::divide_qr(q, divisor, next, r);
    out.digits.push_back(r.convert_to<std::uint64_t>());
    q.swap(next);
  }
  return out;
}

inline Natural from_digits(const DigitVector& d) {
  const std::uint64_t b = d.base.value();
  Natural value = 0;
  for (auto it = d.digits.rbegin(); it != d.digits.rend(); ++it) {
    if (*it >= b)
      throw error(error::kind::invalid_digit,
                  "digit " + std::to_string(*it) + " out of range for base " + std::to_string(b));
    value *= b;
    value += *it;
  }
  return value;
}

/// s_b(n): sum of the base-b digits of n. Repeated division, no digit vector.
inline Natural digit_sum(const Natural& n, Base b) {
  require_natural(n, "n");
  Natural total = 0, q = n, next, r;
  const Natural divisor(b.value());
  while (q != 0) {
    boost::multiprecision::divide_qr(q, divisor, next, r);
    total += r;
    q.swap(next);
  }
  return total;
}

/// nu_b(n): largest e with b^e | n. Undefined for n = 0.
inline Natural valuation(const Natural& n, Base b) {
  require_natural(n, "n");
  if (n == 0) throw error(error::kind::undefined_valuation, "valuation of 0 is undefined");
  Natural e = 0, q = n, next, r;
  const Natural divisor(b.value());
  for (;;) {
    boost::multiprecision::divide_qr(q, divisor, next, r);
    if (r != 0) break;
    ++e;
    q.swap(next);
  }
  return e;
}

/// Digit word of d in reading order (most significant first).
inline std::vector<std::uint64_t> reading_order(const DigitVector& d) {
  return {d.digits.rbegin(), d.digits.rend()};
}

/// Occurrences of pattern as a factor of the canonical digit word of n,
/// counted with overlaps. Both words are compared in reading order; the word
/// of 0 is empty, so every pattern has zero occurrences there.
inline Natural pattern_count(const Natural& n, Base b, const DigitVector& pattern) {
  if (pattern.digits.empty())
    throw error(error::kind::invalid_pattern, "pattern must be nonempty");
  if (!(pattern.base == b))
    throw error(error::kind::input, "pattern base does not match b");
  for (auto digit : pattern.digits)
    if (digit >= b.value())
      throw error(error::kind::invalid_digit,
                  "pattern digit " + std::to_string(digit) + " out of range for base " +
                      std::to_string(b.value()));
  require_natural(n, "n");
  if (n == 0) return Natural(0);

  const std::vector<std::uint64_t> word = reading_order(to_digits(n, b));
  const std::vector<std::uint64_t> factor = reading_order(pattern);
  if (factor.size() > word.size()) return Natural(0);

  std::uint64_t count = 0;
  for (std::size_t i = 0; i + factor.size() <= word.size(); ++i)
    if (std::equal(factor.begin(), factor.end(), word.begin() + i)) ++count;
  return Natural(count);
}

}  // namespace digitsum
