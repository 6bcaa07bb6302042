#pragma once

#include "digitsum/digits.hpp"
#include "digitsum/report.hpp"
#include "digitsum/types.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace digitsum {

inline const Natural default_oracle_cap = Natural(10'000'000);

/// S_b(n) = sum of s_b(j) for 1 <= j <= n - 1 (strict upper limit; S_b(0) and
/// S_b(1) are both 0).
///
/// Evaluated in one pass over the expansion of n. Counting j < n by the first
/// position where j's digit drops below n's, position i contributes
///   d_i * b^i * (digit sum of n above i)      (shared prefix)
/// + d_i (d_i - 1) / 2 * b^i                   (the smaller digit itself)
/// + d_i * i * (b(b-1)/2) * b^(i-1)            (free suffix columns),
/// and the suffix term of position i+1 is folded onto b^i so a single running
/// power suffices. Runtime is linear in the number of digits (quadratic in it
/// only through the width of the big-integer operands).
inline Natural summatory_digit_sum(const Natural& n, Base b) {
  require_natural(n, "n");
  if (n <= 1) return Natural(0);

  const DigitVector expansion = to_digits(n, b);
  const auto& d = expansion.digits;
  const std::size_t len = d.size();
  const Natural column = Natural(b.value()) * (b.value() - 1) / 2;

  Natural above = 0;
  for (auto digit : d) above += digit;

  Natural total = 0;
  Natural power = 1;  // b^i
  for (std::size_t i = 0; i < len; ++i) {
    above -= d[i];
    Natural coefficient = Natural(d[i]) * above;
    if (d[i] > 1) coefficient += Natural(d[i]) * (d[i] - 1) / 2;
    if (i + 1 < len) coefficient += Natural(d[i + 1]) * column * (i + 1);
    total += power * coefficient;
    power *= b.value();
  }
  return total;
}

/// Literal loop over j = 1..n-1. Independent reference for the kernel above;
/// refuses inputs beyond cap so accidental huge sweeps fail fast.
inline Natural summatory_digit_sum_oracle(const Natural& n, Base b,
                                          const Natural& cap = default_oracle_cap) {
  require_natural(n, "n");
  if (n > cap)
    throw error(error::kind::oracle_range,
                "oracle limited to n <= " + cap.str() + " (got " + n.str() + ")");
  Natural total = 0;
  for (Natural j = 1; j < n; ++j) total += digit_sum(j, b);
  return total;
}

/// |{m : 0 <= m < n, binary digit i of m is 1}|
///   = floor(n / 2^(i+1)) * 2^i + max(0, n mod 2^(i+1) - 2^i).
inline Natural bit_count_below(const Natural& n, std::size_t i) {
  require_natural(n, "n");
  const Natural q = n >> (i + 1);
  const Natural rem = n - (q << (i + 1));
  Natural count = q << i;
  const Natural half = Natural(1) << i;
  if (rem > half) count += rem - half;
  return count;
}

/// Weights lambda_i attached to binary digit positions: either the power
/// family lambda_i = 2^(p i) or an explicit finitely supported list (zero
/// beyond the stored values).
class WeightSequence {
 public:
  static WeightSequence power(double p) {
    if (!std::isfinite(p)) throw error(error::kind::input, "p must be finite");
    WeightSequence w;
    w.power_ = true;
    w.p_ = p;
    return w;
  }

  static WeightSequence from_values(std::vector<double> values) {
    for (double v : values)
      if (!std::isfinite(v) || v < 0)
        throw error(error::kind::input, "weights must be finite and nonnegative");
    WeightSequence w;
    w.values_ = std::move(values);
    return w;
  }

  double weight(std::size_t i) const {
    if (power_) return std::exp2(p_ * static_cast<double>(i));
    return i < values_.size() ? values_[i] : 0.0;
  }

  bool is_power() const noexcept { return power_; }
  double exponent() const noexcept { return p_; }

 private:
  WeightSequence() = default;

  bool power_ = false;
  double p_ = 0.0;
  std::vector<double> values_;
};

/// w_lambda(n) = sum of lambda_i over the set binary digits of n.
inline double weighted_digit_sum(const Natural& n, const WeightSequence& weights) {
  require_natural(n, "n");
  double total = 0.0;
  Natural m = n;
  std::size_t i = 0;
  while (m != 0) {
    if (boost::multiprecision::bit_test(m, 0)) total += weights.weight(i);
    m >>= 1;
    ++i;
  }
  return total;
}

/// W_lambda(n) = sum of w_lambda(m) for m < n, evaluated column-wise as
/// sum_i lambda_i * bit_count_below(n, i), truncated at the bit length of n.
inline double weighted_summatory(const Natural& n, const WeightSequence& weights) {
  require_natural(n, "n");
  if (n == 0) return 0.0;
  const std::size_t bits = boost::multiprecision::msb(n) + 1;
  double total = 0.0;
  for (std::size_t i = 0; i < bits; ++i)
    total += weights.weight(i) * bit_count_below(n, i).convert_to<double>();
  return total;
}

/// Checks S_b(b^x n) = b^x S_b(n) + (b-1)/2 * x * b^x * n. Both sides are
/// evaluated independently; holds requires exact equality.
inline DefectReport lemma1_check(const Natural& n, const Natural& x, Base b) {
  require_natural(n, "n");
  require_natural(x, "x");
  if (n < 1) throw error(error::kind::input, "lemma1_check requires n >= 1");
  if (x > 100'000) throw error(error::kind::range, "exponent too large");

  const Natural scale = boost::multiprecision::pow(Natural(b.value()), x.convert_to<unsigned>());
  const Natural lhs = summatory_digit_sum(scale * n, b);
  // (b-1) * x * b^x * n is even whenever nonzero: b odd makes b-1 even, b even
  // with x >= 1 makes b^x even.
  const Natural rhs = scale * summatory_digit_sum(n, b) + Natural(b.value() - 1) * x * scale * n / 2;

  DefectReport rep;
  rep.inequality_id = "lemma1";
  rep.inputs = {{"n", Value(n)}, {"x", Value(x)}, {"b", Value(Natural(b.value()))}};
  rep.defect = Value(rhs - lhs);
  rep.holds = (rhs == lhs);
  rep.lhs = Value(lhs);
  rep.rhs = Value(rhs);
  return rep;
}

namespace detail {

inline bool is_prime_u64(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t f = 2; f <= v / f; ++f)
    if (v % f == 0) return false;
  return true;
}

}  // namespace detail

/// nu_b(n!) by Legendre's formula (n - s_b(n)) / (b - 1), prime b only.
inline Natural factorial_valuation(const Natural& n, Base b) {
  require_natural(n, "n");
  if (!detail::is_prime_u64(b.value()))
    throw error(error::kind::non_prime_base,
                "factorial valuation by digit sum requires a prime base");
  // n == s_b(n) (mod b-1), so the division is exact.
  return (n - digit_sum(n, b)) / (b.value() - 1);
}

}  // namespace digitsum
