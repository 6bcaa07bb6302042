#pragma once

#include "digitsum/report.hpp"
#include "digitsum/summatory.hpp"
#include "digitsum/types.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace digitsum {

namespace detail {

inline DefectReport make_integer_report(std::string id,
                                        std::vector<std::pair<std::string, Value>> inputs,
                                        Natural lhs, Natural rhs) {
  DefectReport rep;
  rep.inequality_id = std::move(id);
  rep.inputs = std::move(inputs);
  rep.defect = Value(rhs - lhs);
  rep.holds = rhs >= lhs;
  rep.lhs = Value(std::move(lhs));
  rep.rhs = Value(std::move(rhs));
  return rep;
}

inline void require_sorted(const std::vector<Natural>& ns, const char* what) {
  for (std::size_t i = 0; i < ns.size(); ++i) {
    require_natural(ns[i], what);
    if (i > 0 && ns[i - 1] > ns[i])
      throw error(error::kind::input, std::string(what) + " must be sorted nondecreasing");
  }
}

inline std::vector<std::pair<std::string, Value>> tuple_inputs(Base b,
                                                               const std::vector<Natural>& ns,
                                                               const char* stem) {
  std::vector<std::pair<std::string, Value>> inputs;
  inputs.reserve(ns.size() + 1);
  inputs.emplace_back("b", Value(Natural(b.value())));
  for (std::size_t i = 0; i < ns.size(); ++i)
    inputs.emplace_back(stem + std::to_string(i + 1), Value(ns[i]));
  return inputs;
}

}  // namespace detail

/// S_2(n1) + S_2(n2) + n1 <= S_2(n1 + n2) for 0 <= n1 <= n2.
inline DefectReport graham_defect(const Natural& n1, const Natural& n2) {
  require_natural(n1, "n1");
  require_natural(n2, "n2");
  if (n1 > n2) throw error(error::kind::ordering, "graham_defect requires n1 <= n2");
  const Base two(2);
  Natural lhs = summatory_digit_sum(n1, two) + summatory_digit_sum(n2, two) + n1;
  Natural rhs = summatory_digit_sum(n1 + n2, two);
  return detail::make_integer_report("graham", {{"n1", Value(n1)}, {"n2", Value(n2)}},
                                     std::move(lhs), std::move(rhs));
}

/// sum_i S_b(n_i) + sum_{i<b} (b-i) n_i <= S_b(sum n_i) for a sorted b-tuple.
inline DefectReport bio_defect(Base b, const std::vector<Natural>& ns) {
  if (ns.size() != b.value())
    throw error(error::kind::input, "bio_defect requires exactly b addends");
  detail::require_sorted(ns, "ns");
  Natural sum = 0, lhs = 0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    sum += ns[i];
    lhs += summatory_digit_sum(ns[i], b);
    if (i + 1 < ns.size()) lhs += Natural(b.value() - 1 - i) * ns[i];
  }
  Natural rhs = summatory_digit_sum(sum, b);
  return detail::make_integer_report("bio", detail::tuple_inputs(b, ns, "n"), std::move(lhs),
                                     std::move(rhs));
}

/// The r-tuple form, 1 <= r <= b: sum_i S_b(n_i) + sum_{i<r} (r-i) n_i
/// <= S_b(sum n_i).
inline DefectReport partial_tuple_defect(Base b, const std::vector<Natural>& ns) {
  const std::size_t r = ns.size();
  if (r < 1 || r > b.value())
    throw error(error::kind::range, "partial_tuple_defect requires 1 <= r <= b");
  detail::require_sorted(ns, "ns");
  Natural sum = 0, lhs = 0;
  for (std::size_t i = 0; i < r; ++i) {
    sum += ns[i];
    lhs += summatory_digit_sum(ns[i], b);
    if (i + 1 < r) lhs += Natural(r - 1 - i) * ns[i];
  }
  Natural rhs = summatory_digit_sum(sum, b);
  auto inputs = detail::tuple_inputs(b, ns, "n");
  inputs.insert(inputs.begin() + 1, {"r", Value(Natural(r))});
  return detail::make_integer_report("partial_tuple", std::move(inputs), std::move(lhs),
                                     std::move(rhs));
}

/// S_b(sum k_i) + sum_{j<b} S_b(k_b - k_j) - b S_b(k_b) <= sum_{i<b} i k_i.
/// Only domination k_j <= k_b is required, not full sortedness.
inline DefectReport variation_defect(Base b, const std::vector<Natural>& ks) {
  if (ks.size() != b.value())
    throw error(error::kind::input, "variation_defect requires exactly b entries");
  for (const auto& k : ks) require_natural(k, "ks");
  const Natural& last = ks.back();
  for (const auto& k : ks)
    if (k > last)
      throw error(error::kind::input, "variation_defect requires k_j <= k_b for all j");
  Natural sum = 0, lhs = 0, rhs = 0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    sum += ks[i];
    if (i + 1 < ks.size()) {
      lhs += summatory_digit_sum(last - ks[i], b);
      rhs += Natural(i + 1) * ks[i];
    }
  }
  lhs += summatory_digit_sum(sum, b);
  lhs -= Natural(b.value()) * summatory_digit_sum(last, b);
  return detail::make_integer_report("variation", detail::tuple_inputs(b, ks, "k"),
                                     std::move(lhs), std::move(rhs));
}

/// The r-entry variation, 1 <= r <= b: S_b(sum m_j) + sum_{j<r} S_b(m_r - m_j)
/// - r S_b(m_r) <= sum_{j<r} (b-r+j) m_j, with m_j <= m_r.
inline DefectReport variation_partial_defect(Base b, const std::vector<Natural>& ms) {
  const std::size_t r = ms.size();
  if (r < 1 || r > b.value())
    throw error(error::kind::range, "variation_partial_defect requires 1 <= r <= b");
  for (const auto& m : ms) require_natural(m, "ms");
  const Natural& last = ms.back();
  for (const auto& m : ms)
    if (m > last)
      throw error(error::kind::input, "variation_partial_defect requires m_j <= m_r for all j");
  Natural sum = 0, lhs = 0, rhs = 0;
  for (std::size_t j = 0; j < r; ++j) {
    sum += ms[j];
    if (j + 1 < r) {
      lhs += summatory_digit_sum(last - ms[j], b);
      rhs += Natural(b.value() - r + j + 1) * ms[j];
    }
  }
  lhs += summatory_digit_sum(sum, b);
  lhs -= Natural(r) * summatory_digit_sum(last, b);
  auto inputs = detail::tuple_inputs(b, ms, "m");
  inputs.insert(inputs.begin() + 1, {"r", Value(Natural(r))});
  return detail::make_integer_report("variation_partial", std::move(inputs), std::move(lhs),
                                     std::move(rhs));
}

/// Base 3: S_3(m+k+l) + S_3(m-k) + S_3(m-l) - 3 S_3(m) <= 2k + l for
/// 0 <= l <= k <= m. This is the variation inequality at b = 3 applied to
/// (l, k, m); evaluated through that expansion.
inline DefectReport base3_defect(const Natural& m, const Natural& k, const Natural& l) {
  require_natural(m, "m");
  require_natural(k, "k");
  require_natural(l, "l");
  if (l > k || k > m)
    throw error(error::kind::ordering, "base3_defect requires 0 <= l <= k <= m");
  DefectReport rep = variation_defect(Base(3), {l, k, m});
  rep.inequality_id = "base3";
  rep.inputs = {{"m", Value(m)}, {"k", Value(k)}, {"l", Value(l)}};
  return rep;
}

/// S_b(m+k) + S_b(m-k) - 2 S_b(m) <= C k with C = floor((b+1)/2) when sharp,
/// C = b - 1 otherwise.
inline DefectReport symmetric_defect(Base b, const Natural& m, const Natural& k, bool sharp) {
  require_natural(m, "m");
  require_natural(k, "k");
  if (k > m) throw error(error::kind::ordering, "symmetric_defect requires k <= m");
  const std::uint64_t constant = sharp ? (b.value() + 1) / 2 : b.value() - 1;
  Natural lhs = summatory_digit_sum(m + k, b) + summatory_digit_sum(m - k, b) -
                2 * summatory_digit_sum(m, b);
  Natural rhs = Natural(constant) * k;
  DefectReport rep = detail::make_integer_report(
      "symmetric",
      {{"b", Value(Natural(b.value()))}, {"m", Value(m)}, {"k", Value(k)}}, std::move(lhs),
      std::move(rhs));
  rep.extras.emplace_back("constant", Value(Natural(constant)));
  return rep;
}

/// W_p(m+l) + W_p(m-l) - 2 W_p(m) <= l^(p+1); guaranteed for p in [0,1],
/// evaluated (and flagged) for other p.
inline DefectReport allaart_p_defect(double p, const Natural& m, const Natural& l) {
  if (!std::isfinite(p)) throw error(error::kind::input, "p must be finite");
  require_natural(m, "m");
  require_natural(l, "l");
  if (l > m) throw error(error::kind::ordering, "allaart_p_defect requires l <= m");
  const WeightSequence weights = WeightSequence::power(p);
  const double lhs = weighted_summatory(m + l, weights) + weighted_summatory(m - l, weights) -
                     2.0 * weighted_summatory(m, weights);
  const double rhs = std::pow(l.convert_to<double>(), p + 1.0);
  DefectReport rep;
  rep.inequality_id = "allaart_p";
  rep.inputs = {{"p", Value(p)}, {"m", Value(m)}, {"l", Value(l)}};
  rep.defect = Value(rhs - lhs);
  rep.holds = (rhs - lhs) >= -real_tolerance;
  rep.lhs = Value(lhs);
  rep.rhs = Value(rhs);
  if (p < 0.0 || p > 1.0) rep.note = "p outside [0,1]: the l^(p+1) bound is not guaranteed";
  return rep;
}

/// s_b(n+m) <= s_b(n) + s_b(m). When m is a power of b the report also
/// carries the tighter single-power margin s_b(n) + 1 - s_b(n+m).
inline DefectReport subadditivity_defect(Base b, const Natural& n, const Natural& m) {
  require_natural(n, "n");
  require_natural(m, "m");
  Natural sn = digit_sum(n, b);
  Natural sm = digit_sum(m, b);
  Natural snm = digit_sum(n + m, b);
  DefectReport rep = detail::make_integer_report(
      "subadditivity",
      {{"b", Value(Natural(b.value()))}, {"n", Value(n)}, {"m", Value(m)}}, snm, sn + sm);

  if (m >= 1) {
    Natural reduced = m, exponent = 0;
    while (reduced % b.value() == 0) {
      reduced /= b.value();
      ++exponent;
    }
    if (reduced == 1) {
      rep.extras.emplace_back("power_exponent", Value(exponent));
      rep.extras.emplace_back("power_case_defect", Value(sn + 1 - snm));
    }
  }
  return rep;
}

/// For prime b, s_b(n) + s_b(m) - s_b(n+m) = (b-1) * nu_b(C(n+m, n)); the
/// valuation comes from Legendre's formula. Both raw quantities are kept in
/// extras; holds requires exact equality.
inline DefectReport carry_identity_check(Base b, const Natural& n, const Natural& m,
                                         const Natural& cap = default_oracle_cap) {
  require_natural(n, "n");
  require_natural(m, "m");
  if (!detail::is_prime_u64(b.value()))
    throw error(error::kind::non_prime_base, "carry identity requires a prime base");
  if (n > cap || m > cap)
    throw error(error::kind::oracle_range, "carry identity limited to n, m <= " + cap.str());

  Natural delta = digit_sum(n, b) + digit_sum(m, b) - digit_sum(n + m, b);
  Natural val = factorial_valuation(n + m, b) - factorial_valuation(n, b) -
                factorial_valuation(m, b);
  DefectReport rep;
  rep.inequality_id = "carry_identity";
  rep.inputs = {{"b", Value(Natural(b.value()))}, {"n", Value(n)}, {"m", Value(m)}};
  Natural rhs = Natural(b.value() - 1) * val;
  rep.defect = Value(rhs - delta);
  rep.holds = (rhs == delta);
  rep.lhs = Value(delta);
  rep.rhs = Value(rhs);
  rep.extras.emplace_back("delta", Value(delta));
  rep.extras.emplace_back("binomial_valuation", Value(val));
  return rep;
}

}  // namespace digitsum
