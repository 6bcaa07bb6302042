#pragma once

#include "digitsum/digits.hpp"
#include "digitsum/inequalities.hpp"
#include "digitsum/report.hpp"
#include "digitsum/summatory.hpp"
#include "digitsum/types.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <mutex>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

namespace digitsum {

struct ScanOptions {
  unsigned parallelism = 1;
  std::size_t violation_cap = 32;
};

/// Nonnegative rational coefficient a/b for block scans.
struct Rational {
  std::int64_t num = 1;
  std::int64_t den = 1;

  std::string str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }
};

namespace detail {

inline bool lex_less(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

/// Reduction state of one scan. Merging is commutative and associative: min
/// defect with lexicographically smallest witness as tie-break, exact counts,
/// and violations kept as the lexicographically smallest cap entries. Any
/// partition of the grid therefore reduces to the same report.
template <class D>
struct ScanAccumulator {
  std::uint64_t instances = 0;
  std::uint64_t equality = 0;
  bool any = false;
  D min_defect{};
  std::vector<std::uint64_t> argmin;
  std::vector<std::vector<std::uint64_t>> violations;
  std::size_t cap = 32;

  static bool is_equality(D defect) {
    if constexpr (std::is_same_v<D, double>) return std::fabs(defect) <= real_tolerance;
    else return defect == 0;
  }

  static bool is_violation(D defect) {
    if constexpr (std::is_same_v<D, double>) return defect < -real_tolerance;
    else return defect < 0;
  }

  void note(std::span<const std::uint64_t> witness, D defect) {
    ++instances;
    if (is_equality(defect)) ++equality;
    if (!any || defect < min_defect ||
        (defect == min_defect && lex_less(witness, argmin))) {
      any = true;
      min_defect = defect;
      argmin.assign(witness.begin(), witness.end());
    }
    if (is_violation(defect)) add_violation(witness);
  }

  void add_violation(std::span<const std::uint64_t> witness) {
    auto pos = std::lower_bound(violations.begin(), violations.end(), witness,
                                [](const auto& a, std::span<const std::uint64_t> b) {
                                  return lex_less(a, b);
                                });
    if (violations.size() >= cap && pos == violations.end()) return;
    violations.emplace(pos, witness.begin(), witness.end());
    if (violations.size() > cap) violations.pop_back();
  }

  void merge(const ScanAccumulator& other) {
    instances += other.instances;
    equality += other.equality;
    if (other.any && (!any || other.min_defect < min_defect ||
                      (other.min_defect == min_defect && lex_less(other.argmin, argmin)))) {
      any = true;
      min_defect = other.min_defect;
      argmin = other.argmin;
    }
    for (const auto& v : other.violations) add_violation(v);
  }
};

/// Runs per_outer(o, sink) for o in [0, outer_count), on options.parallelism
/// threads. Outer slices are claimed from an atomic counter; each thread
/// reduces locally and the locals merge at the end, so the result does not
/// depend on scheduling.
template <class D, class PerOuter>
ScanAccumulator<D> run_scan(std::uint64_t outer_count, const ScanOptions& options,
                            PerOuter&& per_outer) {
  ScanAccumulator<D> total;
  total.cap = options.violation_cap;
  const unsigned threads =
      static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, options.parallelism),
                                                    std::max<std::uint64_t>(outer_count, 1)));
  if (threads <= 1) {
    for (std::uint64_t o = 0; o < outer_count; ++o) per_outer(o, total);
    return total;
  }

  std::atomic<std::uint64_t> next{0};
  std::mutex merge_mutex;
  auto worker = [&] {
    ScanAccumulator<D> local;
    local.cap = options.violation_cap;
    for (;;) {
      const std::uint64_t o = next.fetch_add(1, std::memory_order_relaxed);
      if (o >= outer_count) break;
      per_outer(o, local);
    }
    const std::lock_guard<std::mutex> lock(merge_mutex);
    total.merge(local);
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return total;
}

template <class RowFn>
struct RowSink {
  RowFn& fn;
  template <class D>
  void note(std::span<const std::uint64_t> witness, D defect) {
    fn(witness, defect);
  }
};

inline std::uint64_t digit_sum_u64(std::uint64_t v, std::uint64_t b) {
  std::uint64_t s = 0;
  while (v) {
    s += v % b;
    v /= b;
  }
  return s;
}

inline constexpr std::uint64_t max_table_entries = 80'000'000;
inline constexpr std::int64_t exact_limit = std::int64_t{1} << 62;

/// S_b(0..limit) as exact 64-bit values (prefix sums of digit sums).
inline std::vector<std::int64_t> summatory_table(std::uint64_t b, std::uint64_t limit) {
  if (limit > max_table_entries)
    throw error(error::kind::input, "scan grid too large for the table path");
  std::vector<std::int64_t> table(limit + 1, 0);
  std::uint64_t acc = 0;
  for (std::uint64_t j = 1; j <= limit; ++j) {
    acc += digit_sum_u64(j - 1, b);
    if (acc > static_cast<std::uint64_t>(exact_limit))
      throw error(error::kind::input, "scan values exceed the exact 64-bit range");
    table[j] = static_cast<std::int64_t>(acc);
  }
  return table;
}

/// s_b(0..limit).
inline std::vector<std::int64_t> digit_sum_table(std::uint64_t b, std::uint64_t limit) {
  if (limit > max_table_entries)
    throw error(error::kind::input, "scan grid too large for the table path");
  std::vector<std::int64_t> table(limit + 1, 0);
  for (std::uint64_t j = 1; j <= limit; ++j)
    table[j] = static_cast<std::int64_t>(digit_sum_u64(j, b));
  return table;
}

inline void require_exact_range(unsigned __int128 bound) {
  if (bound > static_cast<unsigned __int128>(exact_limit))
    throw error(error::kind::input, "grid values exceed the exact 64-bit range");
}

inline void require_feasible_instances(const Natural& count) {
  if (count > 4'000'000'000ull)
    throw error(error::kind::input,
                "grid holds " + count.str() + " instances; refusing to sweep");
}

inline Natural binomial(std::uint64_t n, std::uint64_t k) {
  Natural result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

inline std::int64_t clamped_i64(const Natural& v) {
  if (v > exact_limit) return exact_limit;
  if (v < -Natural(exact_limit)) return -exact_limit;
  return v.convert_to<std::int64_t>();
}

template <class D>
void fill_report(ScanReport& rep, const ScanAccumulator<D>& acc) {
  rep.instances_checked = acc.instances;
  rep.equality_count = acc.equality;
  if (acc.any) {
    if constexpr (std::is_same_v<D, double>) rep.min_defect = Value(acc.min_defect);
    else rep.min_defect = Value(Natural(acc.min_defect));
    rep.argmin_witness.assign(acc.argmin.begin(), acc.argmin.end());
  }
  rep.violations.reserve(acc.violations.size());
  for (const auto& v : acc.violations) rep.violations.emplace_back(v.begin(), v.end());
}

// ---- slice enumerators -----------------------------------------------------

template <class Sink>
void graham_slice(const std::vector<std::int64_t>& table, std::uint64_t max, std::uint64_t n1,
                  Sink& sink) {
  std::uint64_t witness[2] = {n1, 0};
  for (std::uint64_t n2 = n1; n2 <= max; ++n2) {
    witness[1] = n2;
    sink.note(std::span<const std::uint64_t>(witness, 2),
              table[n1 + n2] - table[n1] - table[n2] - static_cast<std::int64_t>(n1));
  }
}

// Sorted nondecreasing tuples; lhs accumulates sum_j (T[n_j] + (len-1-j) n_j).
template <class Sink>
void sorted_tuple_rec(const std::vector<std::int64_t>& table, std::uint64_t max,
                      std::vector<std::uint64_t>& tuple, std::size_t pos, std::uint64_t sum,
                      std::int64_t lhs, Sink& sink) {
  const std::size_t len = tuple.size();
  if (pos == len) {
    sink.note(std::span<const std::uint64_t>(tuple.data(), len), table[sum] - lhs);
    return;
  }
  const std::int64_t coefficient = static_cast<std::int64_t>(len - 1 - pos);
  for (std::uint64_t v = tuple[pos - 1]; v <= max; ++v) {
    tuple[pos] = v;
    sorted_tuple_rec(table, max, tuple, pos + 1, sum + v,
                     lhs + table[v] + coefficient * static_cast<std::int64_t>(v), sink);
  }
}

template <class Sink>
void sorted_tuple_slice(const std::vector<std::int64_t>& table, std::size_t len,
                        std::uint64_t max, std::uint64_t first, Sink& sink) {
  std::vector<std::uint64_t> tuple(len);
  tuple[0] = first;
  if (len == 1) {
    sink.note(std::span<const std::uint64_t>(tuple.data(), 1), std::int64_t{0});
    return;
  }
  sorted_tuple_rec(table, max, tuple, 1, first,
                   table[first] + static_cast<std::int64_t>(len - 1) * static_cast<std::int64_t>(first),
                   sink);
}

// Sorted tuples with fixed last entry t. Sortedness matters: the variation
// inequality can fail when only domination by the last entry holds (already
// (4,1,4) at b = 3 gives defect -3), and sorted tuples are what its proof
// covers. acc carries sum_j ((offset+j+1) k_j - T[t - k_j]).
template <class Sink>
void variation_tuple_rec(const std::vector<std::int64_t>& table, std::uint64_t t,
                         std::uint64_t offset, std::vector<std::uint64_t>& tuple,
                         std::size_t pos, std::uint64_t sum, std::int64_t acc, Sink& sink) {
  const std::size_t len = tuple.size();
  if (pos == len - 1) {
    const std::int64_t defect =
        acc - table[sum + t] + static_cast<std::int64_t>(len) * table[t];
    sink.note(std::span<const std::uint64_t>(tuple.data(), len), defect);
    return;
  }
  const std::int64_t coefficient = static_cast<std::int64_t>(offset + pos + 1);
  for (std::uint64_t v = pos == 0 ? 0 : tuple[pos - 1]; v <= t; ++v) {
    tuple[pos] = v;
    variation_tuple_rec(table, t, offset, tuple, pos + 1, sum + v,
                        acc + coefficient * static_cast<std::int64_t>(v) - table[t - v], sink);
  }
}

template <class Sink>
void variation_tuple_slice(const std::vector<std::int64_t>& table, std::size_t len,
                           std::uint64_t offset, std::uint64_t t, Sink& sink) {
  std::vector<std::uint64_t> tuple(len);
  tuple[len - 1] = t;
  if (len == 1) {
    // S_b(t) - 1 * S_b(t) against the empty right-hand sum
    sink.note(std::span<const std::uint64_t>(tuple.data(), 1), std::int64_t{0});
    return;
  }
  variation_tuple_rec(table, t, offset, tuple, 0, 0, 0, sink);
}

template <class Sink>
void base3_slice(const std::vector<std::int64_t>& table, std::uint64_t m, Sink& sink) {
  std::uint64_t witness[3] = {m, 0, 0};
  for (std::uint64_t k = 0; k <= m; ++k) {
    witness[1] = k;
    for (std::uint64_t l = 0; l <= k; ++l) {
      witness[2] = l;
      const std::int64_t spread =
          table[m + k + l] + table[m - k] + table[m - l] - 3 * table[m];
      sink.note(std::span<const std::uint64_t>(witness, 3),
                static_cast<std::int64_t>(2 * k + l) - spread);
    }
  }
}

template <class Sink>
void symmetric_slice(const std::vector<std::int64_t>& table, std::uint64_t constant,
                     std::uint64_t m, Sink& sink) {
  std::uint64_t witness[2] = {m, 0};
  for (std::uint64_t k = 0; k <= m; ++k) {
    witness[1] = k;
    const std::int64_t spread = table[m + k] + table[m - k] - 2 * table[m];
    sink.note(std::span<const std::uint64_t>(witness, 2),
              static_cast<std::int64_t>(constant * k) - spread);
  }
}

template <class Sink>
void allaart_slice(const std::vector<double>& wp_table, const std::vector<double>& bound_table,
                   std::uint64_t m, Sink& sink) {
  std::uint64_t witness[2] = {m, 0};
  for (std::uint64_t l = 0; l <= m; ++l) {
    witness[1] = l;
    const double spread = wp_table[m + l] + wp_table[m - l] - 2.0 * wp_table[m];
    sink.note(std::span<const std::uint64_t>(witness, 2), bound_table[l] - spread);
  }
}

template <class Sink>
void subadditivity_slice(const std::vector<std::int64_t>& digits, std::uint64_t max,
                         std::uint64_t n, Sink& sink) {
  std::uint64_t witness[2] = {n, 0};
  for (std::uint64_t m = 0; m <= max; ++m) {
    witness[1] = m;
    sink.note(std::span<const std::uint64_t>(witness, 2),
              digits[n] + digits[m] - digits[n + m]);
  }
}

template <class Sink>
void carry_slice(const std::vector<std::int64_t>& digits,
                 const std::vector<std::int64_t>& factorial, std::uint64_t b, std::uint64_t max,
                 std::uint64_t n, Sink& sink) {
  std::uint64_t witness[2] = {n, 0};
  for (std::uint64_t m = 0; m <= max; ++m) {
    witness[1] = m;
    const std::int64_t delta = digits[n] + digits[m] - digits[n + m];
    const std::int64_t val = factorial[n + m] - factorial[n] - factorial[m];
    const std::int64_t difference = static_cast<std::int64_t>(b - 1) * val - delta;
    sink.note(std::span<const std::uint64_t>(witness, 2),
              difference >= 0 ? -difference : difference);
  }
}

template <class Sink>
void block_slice(const std::vector<std::int64_t>& pattern_prefix, std::uint64_t max,
                 const Rational& coefficient, std::uint64_t n1, Sink& sink) {
  std::uint64_t witness[2] = {n1, 0};
  for (std::uint64_t n2 = n1; n2 <= max; ++n2) {
    witness[1] = n2;
    const std::int64_t scaled =
        coefficient.den *
            (pattern_prefix[n1 + n2] - pattern_prefix[n1] - pattern_prefix[n2]) -
        coefficient.num * static_cast<std::int64_t>(n1);
    sink.note(std::span<const std::uint64_t>(witness, 2), scaled);
  }
}

}  // namespace detail

// ---- integer grid scans ----------------------------------------------------

/// 0 <= n1 <= n2 <= max against S_2(n1) + S_2(n2) + n1 <= S_2(n1+n2).
inline ScanReport scan_graham(std::uint64_t max, const ScanOptions& options = {}) {
  const auto table = detail::summatory_table(2, 2 * max);
  detail::require_feasible_instances(Natural(max + 1) * (max + 2) / 2);
  detail::require_exact_range(
      static_cast<unsigned __int128>(table.back()) * 3 + max);
  auto acc = detail::run_scan<std::int64_t>(max + 1, options, [&](std::uint64_t n1, auto& sink) {
    detail::graham_slice(table, max, n1, sink);
  });
  ScanReport rep;
  rep.inequality_id = "graham";
  rep.grid = {{"max", std::to_string(max)}};
  detail::fill_report(rep, acc);
  return rep;
}

template <class RowFn>
void scan_graham_rows(std::uint64_t max, RowFn&& fn) {
  const auto table = detail::summatory_table(2, 2 * max);
  detail::RowSink<RowFn> sink{fn};
  for (std::uint64_t n1 = 0; n1 <= max; ++n1) detail::graham_slice(table, max, n1, sink);
}

namespace detail {

inline ScanReport tuple_scan(const char* id, Base b, std::size_t len, std::uint64_t max,
                             const ScanOptions& options, bool include_r) {
  const auto table = summatory_table(b.value(), len * max);
  require_feasible_instances(binomial(max + len, len));
  require_exact_range(static_cast<unsigned __int128>(table.back()) * (len + 1) +
                      static_cast<unsigned __int128>(len) * len * max);
  auto acc = run_scan<std::int64_t>(max + 1, options, [&](std::uint64_t first, auto& sink) {
    sorted_tuple_slice(table, len, max, first, sink);
  });
  ScanReport rep;
  rep.inequality_id = id;
  rep.grid = {{"b", std::to_string(b.value())}};
  if (include_r) rep.grid.emplace_back("r", std::to_string(len));
  rep.grid.emplace_back("max", std::to_string(max));
  fill_report(rep, acc);
  return rep;
}

inline ScanReport variation_scan(const char* id, Base b, std::size_t len, std::uint64_t max,
                                 const ScanOptions& options, bool include_r) {
  const auto table = summatory_table(b.value(), len * max);
  require_feasible_instances(binomial(max + len, len));
  require_exact_range(static_cast<unsigned __int128>(table.back()) * (2 * len + 1) +
                      static_cast<unsigned __int128>(b.value() + len) * len * max);
  const std::uint64_t offset = b.value() - len;
  auto acc = run_scan<std::int64_t>(max + 1, options, [&](std::uint64_t t, auto& sink) {
    variation_tuple_slice(table, len, offset, t, sink);
  });
  ScanReport rep;
  rep.inequality_id = id;
  rep.grid = {{"b", std::to_string(b.value())}};
  if (include_r) rep.grid.emplace_back("r", std::to_string(len));
  rep.grid.emplace_back("max", std::to_string(max));
  fill_report(rep, acc);
  return rep;
}

}  // namespace detail

/// All sorted b-tuples with entries <= max.
inline ScanReport scan_bio(Base b, std::uint64_t max, const ScanOptions& options = {}) {
  if (b.value() > 64) throw error(error::kind::input, "tuple scans support b <= 64");
  return detail::tuple_scan("bio", b, b.value(), max, options, false);
}

template <class RowFn>
void scan_bio_rows(Base b, std::uint64_t max, RowFn&& fn) {
  if (b.value() > 64) throw error(error::kind::input, "tuple scans support b <= 64");
  const auto table = detail::summatory_table(b.value(), b.value() * max);
  detail::RowSink<RowFn> sink{fn};
  for (std::uint64_t first = 0; first <= max; ++first)
    detail::sorted_tuple_slice(table, b.value(), max, first, sink);
}

/// All sorted r-tuples with entries <= max, 1 <= r <= b.
inline ScanReport scan_partial_tuple(Base b, std::uint64_t r, std::uint64_t max,
                                     const ScanOptions& options = {}) {
  if (r < 1 || r > b.value())
    throw error(error::kind::range, "partial tuple scan requires 1 <= r <= b");
  if (r > 64) throw error(error::kind::input, "tuple scans support r <= 64");
  return detail::tuple_scan("partial_tuple", b, r, max, options, true);
}

template <class RowFn>
void scan_partial_tuple_rows(Base b, std::uint64_t r, std::uint64_t max, RowFn&& fn) {
  if (r < 1 || r > b.value())
    throw error(error::kind::range, "partial tuple scan requires 1 <= r <= b");
  if (r > 64) throw error(error::kind::input, "tuple scans support r <= 64");
  const auto table = detail::summatory_table(b.value(), r * max);
  detail::RowSink<RowFn> sink{fn};
  for (std::uint64_t first = 0; first <= max; ++first)
    detail::sorted_tuple_slice(table, r, max, first, sink);
}

/// All sorted b-tuples with entries <= max, the family the variation
/// inequality is proved for. The single-instance evaluator accepts any tuple
/// dominated by its last entry and faithfully reports the negative defects
/// that regime can produce.
inline ScanReport scan_variation(Base b, std::uint64_t max, const ScanOptions& options = {}) {
  if (b.value() > 64) throw error(error::kind::input, "tuple scans support b <= 64");
  return detail::variation_scan("variation", b, b.value(), max, options, false);
}

template <class RowFn>
void scan_variation_rows(Base b, std::uint64_t max, RowFn&& fn) {
  if (b.value() > 64) throw error(error::kind::input, "tuple scans support b <= 64");
  const auto table = detail::summatory_table(b.value(), b.value() * max);
  detail::RowSink<RowFn> sink{fn};
  for (std::uint64_t t = 0; t <= max; ++t)
    detail::variation_tuple_slice(table, b.value(), 0, t, sink);
}

/// Sorted r-tuples with entries <= max, 1 <= r <= b.
inline ScanReport scan_variation_partial(Base b, std::uint64_t r, std::uint64_t max,
                                         const ScanOptions& options = {}) {
  if (r < 1 || r > b.value())
    throw error(error::kind::range, "variation partial scan requires 1 <= r <= b");
  if (r > 64) throw error(error::kind::input, "tuple scans support r <= 64");
  return detail::variation_scan("variation_partial", b, r, max, options, true);
}

template <class RowFn>
void scan_variation_partial_rows(Base b, std::uint64_t r, std::uint64_t max, RowFn&& fn) {
  if (r < 1 || r > b.value())
    throw error(error::kind::range, "variation partial scan requires 1 <= r <= b");
  if (r > 64) throw error(error::kind::input, "tuple scans support r <= 64");
  const auto table = detail::summatory_table(b.value(), r * max);
  detail::RowSink<RowFn> sink{fn};
  for (std::uint64_t t = 0; t <= max; ++t)
    detail::variation_tuple_slice(table, r, b.value() - r, t, sink);
}

/// 0 <= l <= k <= m <= max for the base-3 three-term inequality.
inline ScanReport scan_base3(std::uint64_t max, const ScanOptions& options = {}) {
  const auto table = detail::summatory_table(3, 3 * max);
  detail::require_feasible_instances(detail::binomial(max + 3, 3));
  detail::require_exact_range(static_cast<unsigned __int128>(table.back()) * 6 + 3 * max);
  auto acc = detail::run_scan<std::int64_t>(max + 1, options, [&](std::uint64_t m, auto& sink) {
    detail::base3_slice(table, m, sink);
  });
  ScanReport rep;
  rep.inequality_id = "base3";
  rep.grid = {{"max", std::to_string(max)}};
  detail::fill_report(rep, acc);
  return rep;
}

template <class RowFn>
void scan_base3_rows(std::uint64_t max, RowFn&& fn) {
  const auto table = detail::summatory_table(3, 3 * max);
  detail::RowSink<RowFn> sink{fn};
  for (std::uint64_t m = 0; m <= max; ++m) detail::base3_slice(table, m, sink);
}

/// 0 <= k <= m <= max against C k with C = floor((b+1)/2) (sharp) or b - 1.
inline ScanReport scan_symmetric(Base b, std::uint64_t max, bool sharp,
                                 const ScanOptions& options = {}) {
  const auto table = detail::summatory_table(b.value(), 2 * max);
  const std::uint64_t constant = sharp ? (b.value() + 1) / 2 : b.value() - 1;
  detail::require_feasible_instances(Natural(max + 1) * (max + 2) / 2);
  detail::require_exact_range(static_cast<unsigned __int128>(table.back()) * 4 +
                              static_cast<unsigned __int128>(constant) * max);
  auto acc = detail::run_scan<std::int64_t>(max + 1, options, [&](std::uint64_t m, auto& sink) {
    detail::symmetric_slice(table, constant, m, sink);
  });
  ScanReport rep;
  rep.inequality_id = "symmetric";
  rep.grid = {{"b", std::to_string(b.value())},
              {"sharp", sharp ? "true" : "false"},
              {"max", std::to_string(max)}};
  detail::fill_report(rep, acc);
  return rep;
}

template <class RowFn>
void scan_symmetric_rows(Base b, std::uint64_t max, bool sharp, RowFn&& fn) {
  const auto table = detail::summatory_table(b.value(), 2 * max);
  const std::uint64_t constant = sharp ? (b.value() + 1) / 2 : b.value() - 1;
  detail::RowSink<RowFn> sink{fn};
  for (std::uint64_t m = 0; m <= max; ++m)
    detail::symmetric_slice(table, constant, m, sink);
}

namespace detail {

inline std::pair<std::vector<double>, std::vector<double>> allaart_tables(double p,
                                                                          std::uint64_t max) {
  if (2 * max > max_table_entries)
    throw error(error::kind::input, "scan grid too large for the table path");
  const WeightSequence weights = WeightSequence::power(p);
  std::vector<double> wp(2 * max + 1, 0.0);
  for (std::uint64_t n = 0; n < 2 * max; ++n)
    wp[n + 1] = wp[n] + weighted_digit_sum(Natural(n), weights);
  std::vector<double> bound(max + 1, 0.0);
  for (std::uint64_t l = 0; l <= max; ++l)
    bound[l] = std::pow(static_cast<double>(l), p + 1.0);
  return {std::move(wp), std::move(bound)};
}

}  // namespace detail

/// 0 <= l <= m <= max for the weighted inequality at exponent p. Real-valued:
/// comparisons carry the library tolerance.
inline ScanReport scan_allaart(double p, std::uint64_t max, const ScanOptions& options = {}) {
  if (!std::isfinite(p)) throw error(error::kind::input, "p must be finite");
  auto [wp_table, bound_table] = detail::allaart_tables(p, max);
  detail::require_feasible_instances(Natural(max + 1) * (max + 2) / 2);
  auto acc = detail::run_scan<double>(max + 1, options, [&](std::uint64_t m, auto& sink) {
    detail::allaart_slice(wp_table, bound_table, m, sink);
  });
  ScanReport rep;
  rep.inequality_id = "allaart_p";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.12g", p);
  rep.grid = {{"p", buffer}, {"max", std::to_string(max)}};
  detail::fill_report(rep, acc);
  return rep;
}

template <class RowFn>
void scan_allaart_rows(double p, std::uint64_t max, RowFn&& fn) {
  if (!std::isfinite(p)) throw error(error::kind::input, "p must be finite");
  auto [wp_table, bound_table] = detail::allaart_tables(p, max);
  detail::RowSink<RowFn> sink{fn};
  for (std::uint64_t m = 0; m <= max; ++m)
    detail::allaart_slice(wp_table, bound_table, m, sink);
}

/// Full square 0 <= n, m <= max for digit-sum subadditivity.
inline ScanReport scan_subadditivity(Base b, std::uint64_t max, const ScanOptions& options = {}) {
  const auto digits = detail::digit_sum_table(b.value(), 2 * max);
  detail::require_feasible_instances(Natural(max + 1) * (max + 1));
  auto acc = detail::run_scan<std::int64_t>(max + 1, options, [&](std::uint64_t n, auto& sink) {
    detail::subadditivity_slice(digits, max, n, sink);
  });
  ScanReport rep;
  rep.inequality_id = "subadditivity";
  rep.grid = {{"b", std::to_string(b.value())}, {"max", std::to_string(max)}};
  detail::fill_report(rep, acc);
  return rep;
}

template <class RowFn>
void scan_subadditivity_rows(Base b, std::uint64_t max, RowFn&& fn) {
  const auto digits = detail::digit_sum_table(b.value(), 2 * max);
  detail::RowSink<RowFn> sink{fn};
  for (std::uint64_t n = 0; n <= max; ++n) detail::subadditivity_slice(digits, max, n, sink);
}

namespace detail {

inline std::vector<std::int64_t> factorial_valuation_table(std::uint64_t b,
                                                           std::uint64_t limit) {
  auto digits = digit_sum_table(b, limit);
  std::vector<std::int64_t> table(limit + 1, 0);
  for (std::uint64_t v = 0; v <= limit; ++v)
    table[v] = (static_cast<std::int64_t>(v) - digits[v]) / static_cast<std::int64_t>(b - 1);
  return table;
}

}  // namespace detail

/// Identity sweep: defect is -|(b-1) nu_b(C(n+m,n)) - (s_b(n)+s_b(m)-s_b(n+m))|,
/// so any mismatch surfaces as a violation.
inline ScanReport scan_carry_identity(Base b, std::uint64_t max,
                                      const ScanOptions& options = {}) {
  if (!detail::is_prime_u64(b.value()))
    throw error(error::kind::non_prime_base, "carry identity requires a prime base");
  const auto digits = detail::digit_sum_table(b.value(), 2 * max);
  const auto factorial = detail::factorial_valuation_table(b.value(), 2 * max);
  detail::require_feasible_instances(Natural(max + 1) * (max + 1));
  auto acc = detail::run_scan<std::int64_t>(max + 1, options, [&](std::uint64_t n, auto& sink) {
    detail::carry_slice(digits, factorial, b.value(), max, n, sink);
  });
  ScanReport rep;
  rep.inequality_id = "carry_identity";
  rep.grid = {{"b", std::to_string(b.value())}, {"max", std::to_string(max)}};
  detail::fill_report(rep, acc);
  return rep;
}

template <class RowFn>
void scan_carry_identity_rows(Base b, std::uint64_t max, RowFn&& fn) {
  if (!detail::is_prime_u64(b.value()))
    throw error(error::kind::non_prime_base, "carry identity requires a prime base");
  const auto digits = detail::digit_sum_table(b.value(), 2 * max);
  const auto factorial = detail::factorial_valuation_table(b.value(), 2 * max);
  detail::RowSink<RowFn> sink{fn};
  for (std::uint64_t n = 0; n <= max; ++n)
    detail::carry_slice(digits, factorial, b.value(), max, n, sink);
}

// ---- equivalence scans -----------------------------------------------------

/// Compares the digit-DP kernel against the literal running sum at every
/// n <= max. Sequential by nature (the reference is a prefix sum); defect is
/// -|difference|.
inline ScanReport scan_oracle_equivalence(Base b, std::uint64_t max,
                                          const Natural& cap = default_oracle_cap,
                                          const ScanOptions& options = {}) {
  if (Natural(max) > cap)
    throw error(error::kind::oracle_range,
                "oracle equivalence limited to max <= " + cap.str());
  detail::ScanAccumulator<std::int64_t> acc;
  acc.cap = options.violation_cap;
  Natural running = 0;
  for (std::uint64_t n = 0; n <= max; ++n) {
    if (n > 0) running += digit_sum(Natural(n - 1), b);
    const Natural fast = summatory_digit_sum(Natural(n), b);
    const Natural difference = fast - running;
    const std::uint64_t witness[1] = {n};
    acc.note(std::span<const std::uint64_t>(witness, 1),
             difference == 0 ? std::int64_t{0}
                             : detail::clamped_i64(difference < 0 ? difference : -difference));
  }
  ScanReport rep;
  rep.inequality_id = "oracle_equivalence";
  rep.grid = {{"b", std::to_string(b.value())}, {"max", std::to_string(max)}};
  detail::fill_report(rep, acc);
  return rep;
}

inline constexpr std::uint64_t lemma1_default_seed = 0x5eed0d16;

/// Random sample of the one-step recursion S_b(bn) = b S_b(n) + b(b-1)/2 n.
inline ScanReport scan_lemma1_random(std::uint64_t samples = 1000,
                                     std::uint64_t n_max = 1'000'000, std::uint64_t b_min = 2,
                                     std::uint64_t b_max = 10,
                                     std::uint64_t seed = lemma1_default_seed,
                                     const ScanOptions& options = {}) {
  if (b_min < 2 || b_min > b_max) throw error(error::kind::input, "bad base range");
  if (n_max == 0) throw error(error::kind::input, "n_max must be positive");
  detail::ScanAccumulator<std::int64_t> acc;
  acc.cap = options.violation_cap;
  std::mt19937_64 rng(seed);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const std::uint64_t n = 1 + rng() % n_max;
    const std::uint64_t b = b_min + rng() % (b_max - b_min + 1);
    const Base base(b);
    const Natural lhs = summatory_digit_sum(Natural(b) * n, base);
    const Natural rhs =
        Natural(b) * summatory_digit_sum(Natural(n), base) + Natural(b) * (b - 1) / 2 * n;
    const Natural difference = rhs - lhs;
    const std::uint64_t witness[2] = {n, b};
    acc.note(std::span<const std::uint64_t>(witness, 2),
             difference == 0 ? std::int64_t{0}
                             : detail::clamped_i64(difference < 0 ? difference : -difference));
  }
  ScanReport rep;
  rep.inequality_id = "lemma1_random";
  rep.grid = {{"samples", std::to_string(samples)},
              {"n_max", std::to_string(n_max)},
              {"bases", std::to_string(b_min) + ".." + std::to_string(b_max)},
              {"seed", std::to_string(seed)}};
  detail::fill_report(rep, acc);
  return rep;
}

/// Exhaustive S_b(b^x n) identity over b in [b_min, b_max], n <= n_max,
/// x <= x_max (n = 1 covers the closed form for S_b(b^x) itself).
inline ScanReport scan_lemma1_powers(std::uint64_t n_max = 1000, std::uint64_t x_max = 10,
                                     std::uint64_t b_min = 2, std::uint64_t b_max = 6,
                                     const ScanOptions& options = {}) {
  if (b_min < 2 || b_min > b_max) throw error(error::kind::input, "bad base range");
  detail::ScanAccumulator<std::int64_t> acc;
  acc.cap = options.violation_cap;
  for (std::uint64_t b = b_min; b <= b_max; ++b) {
    const Base base(b);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
      for (std::uint64_t x = 0; x <= x_max; ++x) {
        const DefectReport check = lemma1_check(Natural(n), Natural(x), base);
        const Natural& difference = check.defect.exact();
        const std::uint64_t witness[3] = {n, x, b};
        acc.note(std::span<const std::uint64_t>(witness, 3),
                 difference == 0
                     ? std::int64_t{0}
                     : detail::clamped_i64(difference < 0 ? difference : -difference));
      }
    }
  }
  ScanReport rep;
  rep.inequality_id = "lemma1_powers";
  rep.grid = {{"bases", std::to_string(b_min) + ".." + std::to_string(b_max)},
              {"n_max", std::to_string(n_max)},
              {"x_max", std::to_string(x_max)}};
  detail::fill_report(rep, acc);
  return rep;
}

// ---- block counting --------------------------------------------------------

namespace detail {

inline std::vector<std::int64_t> pattern_prefix_table(const DigitVector& pattern, Base b,
                                                      std::uint64_t limit) {
  if (limit > max_table_entries)
    throw error(error::kind::input, "scan grid too large for the table path");
  std::vector<std::int64_t> table(limit + 1, 0);
  for (std::uint64_t j = 1; j <= limit; ++j)
    table[j] = table[j - 1] + pattern_count(Natural(j - 1), b, pattern).convert_to<std::int64_t>();
  return table;
}

}  // namespace detail

/// Probes T(n1+n2) - T(n1) - T(n2) - c n1 >= 0 for the summatory pattern count
/// T(n) = sum_{j<n} pattern occurrences in j. No claim is made: the minimum
/// may well be negative. The defect is evaluated exactly on the common
/// denominator of c.
inline ScanReport block_scan(const DigitVector& pattern, Base b, std::uint64_t max,
                             Rational coefficient, const ScanOptions& options = {}) {
  if (coefficient.den <= 0)
    throw error(error::kind::input, "coefficient denominator must be positive");
  pattern_count(Natural(0), b, pattern);  // validates the pattern itself
  const auto prefix = detail::pattern_prefix_table(pattern, b, 2 * max);
  detail::require_feasible_instances(Natural(max + 1) * (max + 2) / 2);
  detail::require_exact_range(
      static_cast<unsigned __int128>(coefficient.den) * 3 *
          static_cast<unsigned __int128>(prefix.back() > 0 ? prefix.back() : 1) +
      static_cast<unsigned __int128>(coefficient.num > 0 ? coefficient.num : -coefficient.num) *
          max);
  auto acc = detail::run_scan<std::int64_t>(max + 1, options, [&](std::uint64_t n1, auto& sink) {
    detail::block_slice(prefix, max, coefficient, n1, sink);
  });

  ScanReport rep;
  rep.inequality_id = "block";
  std::string word;
  for (auto it = pattern.digits.rbegin(); it != pattern.digits.rend(); ++it) {
    if (!word.empty() && b.value() > 10) word += ',';
    word += std::to_string(*it);
  }
  rep.grid = {{"pattern", word},
              {"b", std::to_string(b.value())},
              {"coefficient", coefficient.str()},
              {"max", std::to_string(max)}};
  detail::fill_report(rep, acc);
  if (acc.any && coefficient.den != 1) {
    // scaled integer minimum back to the rational's scale
    rep.min_defect = Value(static_cast<double>(acc.min_defect) /
                           static_cast<double>(coefficient.den));
  }
  return rep;
}

template <class RowFn>
void block_scan_rows(const DigitVector& pattern, Base b, std::uint64_t max,
                     Rational coefficient, RowFn&& fn) {
  if (coefficient.den <= 0)
    throw error(error::kind::input, "coefficient denominator must be positive");
  pattern_count(Natural(0), b, pattern);
  const auto prefix = detail::pattern_prefix_table(pattern, b, 2 * max);
  auto scaled_fn = [&](std::span<const std::uint64_t> witness, std::int64_t scaled) {
    if (coefficient.den == 1) fn(witness, scaled);
    else fn(witness, static_cast<double>(scaled) / static_cast<double>(coefficient.den));
  };
  detail::RowSink<decltype(scaled_fn)> sink{scaled_fn};
  for (std::uint64_t n1 = 0; n1 <= max; ++n1)
    detail::block_slice(prefix, max, coefficient, n1, sink);
}

// ---- constructions and series ----------------------------------------------

/// The explicit failing tuple for r >= b + 1: r - b - 1 zeros, b ones, b^x.
/// Direct evaluation is cross-checked against the two closed forms
/// S_b(b^x) + b + b^x and S_b(b^x) + b(b+1)/2.
inline CounterexampleWitness optimality_counterexample(Base b, std::uint64_t r, std::uint64_t x) {
  if (r < b.value() + 1)
    throw error(error::kind::construction_domain,
                "counterexample construction requires r >= b + 1");
  if (x < 2)
    throw error(error::kind::construction_domain, "counterexample construction requires x >= 2");
  if (r > 1'000'000 || x > 100'000)
    throw error(error::kind::range, "witness size too large");

  CounterexampleWitness witness{b, r, x, {}, Natural(0), Natural(0), Natural(0)};
  witness.ns.assign(r - b.value() - 1, Natural(0));
  witness.ns.insert(witness.ns.end(), static_cast<std::size_t>(b.value()), Natural(1));
  const Natural power = boost::multiprecision::pow(Natural(b.value()), static_cast<unsigned>(x));
  witness.ns.push_back(power);

  Natural total = 0, summatory_sum = 0;
  for (const auto& n : witness.ns) {
    total += n;
    summatory_sum += summatory_digit_sum(n, b);
  }
  witness.lhs = summatory_sum + total;
  witness.rhs = summatory_digit_sum(total, b);

  const Natural s_power = summatory_digit_sum(power, b);
  if (witness.lhs != s_power + b.value() + power ||
      witness.rhs != s_power + Natural(b.value()) * (b.value() + 1) / 2)
    throw std::logic_error("counterexample closed forms disagree with direct evaluation");

  witness.margin = witness.lhs - witness.rhs;
  return witness;
}

/// Delta = w_p(2^k) - w_p(2^k - 1) for p > 1, against the bound 1 that the
/// weighted inequality would impose at l = 1, m = 2^k. The report is framed so
/// holds confirms the divergence (defect = Delta - 1 >= 0); the closed form
/// (2^(pk)(2^p - 1) - 2^(pk) + 1) / (2^p - 1) rides along in extras.
inline DefectReport p_gt_one_divergence(double p, std::uint64_t k) {
  if (!std::isfinite(p) || p <= 1.0)
    throw error(error::kind::domain, "divergence probe requires p > 1");
  if (k < 1) throw error(error::kind::domain, "divergence probe requires k >= 1");
  if (k > 500) throw error(error::kind::range, "k too large for double evaluation");

  const WeightSequence weights = WeightSequence::power(p);
  const Natural m = Natural(1) << k;
  const double delta = weighted_digit_sum(m, weights) - weighted_digit_sum(m - 1, weights);
  const double two_p = std::exp2(p);
  const double closed =
      (std::exp2(p * static_cast<double>(k)) * (two_p - 1.0) -
       std::exp2(p * static_cast<double>(k)) + 1.0) /
      (two_p - 1.0);

  DefectReport rep;
  rep.inequality_id = "p_gt_one_divergence";
  rep.inputs = {{"p", Value(p)}, {"k", Value(Natural(k))}};
  rep.lhs = Value(1.0);
  rep.rhs = Value(delta);
  rep.defect = Value(delta - 1.0);
  rep.holds = (delta - 1.0) >= -real_tolerance;
  rep.extras.emplace_back("closed_form", Value(closed));
  rep.note = "holds reports w_p(2^k) - w_p(2^k - 1) > 1, violating the p in [0,1] bound";
  return rep;
}

/// Emits (n, S_b(n)/n - (b-1)/2 * log_b(n)) for 1 <= n <= n_max: the residual
/// around the logarithmic mean whose graph is the blancmange-like curve.
template <class Emit>
void fluctuation_series(Base b, const Natural& n_max, Emit&& emit) {
  require_natural(n_max, "N");
  if (n_max < 2) throw error(error::kind::input, "fluctuation series requires N >= 2");
  if (n_max > 100'000'000) throw error(error::kind::range, "series too long");
  const std::uint64_t limit = n_max.convert_to<std::uint64_t>();
  const double half_slope = static_cast<double>(b.value() - 1) / 2.0;
  const double log_base = std::log(static_cast<double>(b.value()));
  unsigned __int128 running = 0;  // S_b(n)
  for (std::uint64_t n = 1; n <= limit; ++n) {
    if (n > 1) running += detail::digit_sum_u64(n - 1, b.value());
    const double mean = static_cast<double>(running) / static_cast<double>(n);
    const double residual =
        mean - half_slope * std::log(static_cast<double>(n)) / log_base;
    emit(n, residual);
  }
}

inline std::vector<std::pair<std::uint64_t, double>> fluctuation_series(Base b,
                                                                        const Natural& n_max) {
  std::vector<std::pair<std::uint64_t, double>> series;
  series.reserve(n_max.convert_to<std::size_t>());
  fluctuation_series(b, n_max, [&](std::uint64_t n, double residual) {
    series.emplace_back(n, residual);
  });
  return series;
}

// ---- dispatcher ------------------------------------------------------------

struct ScanParams {
  std::uint64_t max = 0;
  std::uint64_t b = 2;
  std::uint64_t r = 0;  // 0 picks r = b
  double p = 0.0;
  bool sharp = true;
  DigitVector pattern{{}, Base(2)};
  Rational coefficient{1, 1};
  Natural oracle_cap = default_oracle_cap;
  ScanOptions options;
};

/// Single entry point over every grid scan; unknown identifiers are usage
/// errors.
inline ScanReport scan(const std::string& inequality_id, const ScanParams& params) {
  const Base b(params.b);
  const std::uint64_t r = params.r == 0 ? params.b : params.r;
  if (inequality_id == "graham") return scan_graham(params.max, params.options);
  if (inequality_id == "bio") return scan_bio(b, params.max, params.options);
  if (inequality_id == "partial_tuple")
    return scan_partial_tuple(b, r, params.max, params.options);
  if (inequality_id == "variation") return scan_variation(b, params.max, params.options);
  if (inequality_id == "variation_partial")
    return scan_variation_partial(b, r, params.max, params.options);
  if (inequality_id == "base3") return scan_base3(params.max, params.options);
  if (inequality_id == "symmetric")
    return scan_symmetric(b, params.max, params.sharp, params.options);
  if (inequality_id == "allaart_p") return scan_allaart(params.p, params.max, params.options);
  if (inequality_id == "subadditivity")
    return scan_subadditivity(b, params.max, params.options);
  if (inequality_id == "carry_identity")
    return scan_carry_identity(b, params.max, params.options);
  if (inequality_id == "oracle_equivalence")
    return scan_oracle_equivalence(b, params.max, params.oracle_cap, params.options);
  if (inequality_id == "lemma1_random") return scan_lemma1_random();
  if (inequality_id == "lemma1_powers") return scan_lemma1_powers();
  if (inequality_id == "block")
    return block_scan(params.pattern, b, params.max, params.coefficient, params.options);
  throw error(error::kind::usage, "unknown inequality id: " + inequality_id);
}

}  // namespace digitsum
