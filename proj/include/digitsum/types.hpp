#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace digitsum {

/// Arbitrary-precision integer. Public operands are nonnegative "naturals";
/// derived quantities such as defects may be negative.
using Natural = boost::multiprecision::cpp_int;

/// Absolute tolerance used for every real-valued comparison.
inline constexpr double real_tolerance = 1e-9;

class error : public std::runtime_error {
 public:
  enum class kind {
    invalid_digit,
    invalid_pattern,
    undefined_valuation,
    oracle_range,
    non_prime_base,
    ordering,
    input,
    range,
    construction_domain,
    domain,
    usage,
  };

  error(kind k, const std::string& message) : std::runtime_error(message), kind_(k) {}

  kind which() const noexcept { return kind_; }

 private:
  kind kind_;
};

/// Integer base b >= 2.
class Base {
 public:
  explicit Base(std::uint64_t b) : value_(b) {
    if (b < 2) throw error(error::kind::input, "base must be an integer >= 2");
  }

  std::uint64_t value() const noexcept { return value_; }

  friend bool operator==(Base, Base) = default;

 private:
  std::uint64_t value_;
};

inline void require_natural(const Natural& n, const char* what) {
  if (n.sign() < 0)
    throw error(error::kind::input, std::string(what) + " must be nonnegative");
}

/// Exact integer or double, as carried by reports.
class Value {
 public:
  Value() : v_(Natural(0)) {}
  Value(Natural n) : v_(std::move(n)) {}
  Value(double x) : v_(x) {}

  bool is_exact() const noexcept { return std::holds_alternative<Natural>(v_); }
  const Natural& exact() const { return std::get<Natural>(v_); }
  double real() const { return std::get<double>(v_); }

  double as_double() const {
    return is_exact() ? exact().convert_to<double>() : real();
  }

 private:
  std::variant<Natural, double> v_;
};

}  // namespace digitsum
