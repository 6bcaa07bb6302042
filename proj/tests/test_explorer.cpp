#include "digitsum/explorer.hpp"
#include "digitsum/report_io.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace digitsum;

TEST_CASE("optimality_counterexample reproduces the construction") {
  const CounterexampleWitness small = optimality_counterexample(Base(2), 3, 2);
  CHECK(small.ns == std::vector<Natural>{1, 1, 4});
  CHECK(small.lhs == 10);
  CHECK(small.rhs == 7);
  CHECK(small.margin == 3);

  const CounterexampleWitness ternary = optimality_counterexample(Base(3), 4, 2);
  CHECK(ternary.ns == std::vector<Natural>{1, 1, 1, 9});
  CHECK(ternary.lhs == 30);
  CHECK(ternary.rhs == 24);
  CHECK(ternary.margin == 6);

  const CounterexampleWitness padded = optimality_counterexample(Base(2), 4, 2);
  CHECK(padded.ns == std::vector<Natural>{0, 1, 1, 4});
  CHECK(padded.margin == 3);

  SECTION("desk grid: strict violation and the proof's closed forms") {
    for (std::uint64_t b = 2; b <= 5; ++b)
      for (std::uint64_t r = b + 1; r <= b + 3; ++r)
        for (std::uint64_t x = 2; x <= 5; ++x) {
          const CounterexampleWitness w = optimality_counterexample(Base(b), r, x);
          REQUIRE(w.margin > 0);
          const Natural power = boost::multiprecision::pow(Natural(b), unsigned(x));
          const Natural s_power = summatory_digit_sum(power, Base(b));
          REQUIRE(w.lhs == s_power + b + power);
          REQUIRE(w.rhs == s_power + Natural(b) * (b + 1) / 2);
          REQUIRE(w.ns.size() == r);
        }
  }

  SECTION("domain errors") {
    CHECK_THROWS_MATCHES(optimality_counterexample(Base(3), 3, 2), error,
                         Catch::Matchers::Predicate<error>([](const error& e) {
                           return e.which() == error::kind::construction_domain;
                         }));
    CHECK_THROWS_AS(optimality_counterexample(Base(2), 3, 1), error);
  }
}

TEST_CASE("scan_graham") {
  const ScanReport report = scan_graham(16);
  CHECK(report.instances_checked == 153);
  CHECK(report.min_defect.exact() == 0);
  CHECK(report.equality_count == 82);
  CHECK(report.argmin_witness == std::vector<Natural>{0, 0});
  CHECK(report.violations.empty());
  CHECK(report.holds());

  SECTION("count matches the triangle cardinality") {
    for (std::uint64_t max : {0u, 1u, 7u, 33u})
      CHECK(scan_graham(max).instances_checked == (max + 1) * (max + 2) / 2);
  }
}

TEST_CASE("scan determinism across parallelism degrees") {
  const auto render = [](const ScanReport& r) { return to_json(r).dump(); };

  ScanOptions serial, four, eight;
  four.parallelism = 4;
  eight.parallelism = 8;

  CHECK(render(scan_graham(100, serial)) == render(scan_graham(100, four)));
  CHECK(render(scan_graham(100, serial)) == render(scan_graham(100, eight)));
  CHECK(render(scan_bio(Base(3), 12, serial)) == render(scan_bio(Base(3), 12, eight)));
  CHECK(render(scan_variation(Base(4), 9, serial)) == render(scan_variation(Base(4), 9, four)));
  CHECK(render(scan_allaart(0.5, 64, serial)) == render(scan_allaart(0.5, 64, eight)));
  CHECK(render(scan_base3(25, serial)) == render(scan_base3(25, four)));

  // a failing scan must also merge violations deterministically
  const DigitVector pat{{1, 1}, Base(2)};
  CHECK(render(block_scan(pat, Base(2), 64, Rational{1, 1}, serial)) ==
        render(block_scan(pat, Base(2), 64, Rational{1, 1}, eight)));
}

TEST_CASE("tuple scans") {
  const ScanReport bio = scan_bio(Base(3), 5);
  CHECK(bio.instances_checked == 56);  // C(8,3)
  CHECK(bio.min_defect.exact() == 0);
  CHECK(bio.holds());

  const ScanReport partial = scan_partial_tuple(Base(4), 2, 10);
  CHECK(partial.instances_checked == 66);  // C(12,2)
  CHECK(partial.min_defect.exact() == 0);
  CHECK(partial.holds());

  CHECK(scan_partial_tuple(Base(5), 1, 30).equality_count == 31);

  CHECK_THROWS_AS(scan_partial_tuple(Base(3), 4, 5), error);
}

TEST_CASE("variation scans sweep the sorted families") {
  const ScanReport variation = scan_variation(Base(3), 8);
  CHECK(variation.instances_checked == 165);  // C(11,3)
  CHECK(variation.min_defect.exact() == 0);
  CHECK(variation.equality_count == 21);
  CHECK(variation.holds());

  const ScanReport partial = scan_variation_partial(Base(4), 2, 8);
  CHECK(partial.instances_checked == 45);  // C(10,2)
  CHECK(partial.min_defect.exact() == 0);
  CHECK(partial.equality_count == 9);
  CHECK(partial.holds());

  CHECK(scan_variation(Base(2), 20).holds());
  CHECK(scan_variation_partial(Base(4), 4, 6).holds());
}

TEST_CASE("scan_base3") {
  const ScanReport report = scan_base3(10);
  CHECK(report.instances_checked == 286);  // C(13,3)
  CHECK(report.min_defect.exact() == 0);
  CHECK(report.equality_count == 27);
  CHECK(report.argmin_witness == std::vector<Natural>{0, 0, 0});
  CHECK(report.holds());
}

TEST_CASE("scan_symmetric") {
  const ScanReport sharp = scan_symmetric(Base(4), 40, true);
  CHECK(sharp.instances_checked == 861);
  CHECK(sharp.min_defect.exact() == 0);
  CHECK(sharp.holds());
  CHECK(sharp.equality_count >= 41);  // at least the whole k = 0 line

  // even bases attain the sharp constant away from k = 0 at m = k = b/2
  CHECK(symmetric_defect(Base(4), Natural(2), Natural(2), true).defect.exact() == 0);
  CHECK(symmetric_defect(Base(6), Natural(3), Natural(3), true).defect.exact() == 0);

  const ScanReport loose = scan_symmetric(Base(4), 40, false);
  CHECK(loose.holds());
  CHECK(loose.grid[1].second == "false");
}

TEST_CASE("sharp constant attainment away from k = 0") {
  // Exhaustive minima over k >= 1, m <= 500. Even bases reach equality at
  // m = k = b/2; for b = 3 and b = 5 the floor((b+1)/2) constant is not
  // attained anywhere on this grid (minimum defects 1 and 2), so the sharp
  // bound is approached only asymptotically there.
  auto min_positive_k = [](std::uint64_t b, std::uint64_t max) {
    std::int64_t minimum = std::numeric_limits<std::int64_t>::max();
    scan_symmetric_rows(Base(b), max, true,
                        [&](std::span<const std::uint64_t> witness, std::int64_t defect) {
                          if (witness[1] >= 1) minimum = std::min(minimum, defect);
                        });
    return minimum;
  };
  CHECK(min_positive_k(2, 500) == 0);
  CHECK(min_positive_k(4, 500) == 0);
  CHECK(min_positive_k(6, 500) == 0);
  CHECK(min_positive_k(3, 500) == 1);
  CHECK(min_positive_k(5, 500) == 2);
}

TEST_CASE("scan_allaart") {
  for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const ScanReport report = scan_allaart(p, 64);
    CHECK(report.instances_checked == 2145);
    CHECK(report.holds());
    CHECK(report.min_defect.real() >= -real_tolerance);
  }
  CHECK(scan_allaart(1.0, 64).equality_count == 2145);  // identically zero column
}

TEST_CASE("scan_subadditivity and scan_carry_identity") {
  const ScanReport subadd = scan_subadditivity(Base(10), 30);
  CHECK(subadd.instances_checked == 961);
  CHECK(subadd.min_defect.exact() == 0);
  CHECK(subadd.holds());

  const ScanReport carry = scan_carry_identity(Base(3), 40);
  CHECK(carry.instances_checked == 1681);
  CHECK(carry.equality_count == 1681);  // identity holds everywhere
  CHECK(carry.min_defect.exact() == 0);
  CHECK(carry.holds());

  CHECK_THROWS_AS(scan_carry_identity(Base(6), 10), error);
}

TEST_CASE("scan_oracle_equivalence") {
  const ScanReport binary = scan_oracle_equivalence(Base(2), 2000);
  CHECK(binary.instances_checked == 2001);
  CHECK(binary.equality_count == 2001);
  CHECK(binary.holds());

  CHECK(scan_oracle_equivalence(Base(10), 500).holds());

  CHECK_THROWS_MATCHES(scan_oracle_equivalence(Base(2), 101, Natural(100)), error,
                       Catch::Matchers::Predicate<error>([](const error& e) {
                         return e.which() == error::kind::oracle_range;
                       }));
}

TEST_CASE("lemma1 scans") {
  const ScanReport random = scan_lemma1_random(200, 100'000, 2, 10);
  CHECK(random.instances_checked == 200);
  CHECK(random.equality_count == 200);
  CHECK(random.holds());

  const ScanReport powers = scan_lemma1_powers(150, 6, 2, 6);
  CHECK(powers.instances_checked == 5 * 150 * 7);
  CHECK(powers.equality_count == powers.instances_checked);
  CHECK(powers.holds());
}

TEST_CASE("p_gt_one_divergence") {
  const DefectReport probe = p_gt_one_divergence(2.0, 3);
  CHECK(probe.rhs.real() == 43.0);
  CHECK(probe.holds);
  CHECK(probe.extras[0].second.real() == Catch::Approx(43.0).margin(1e-9));

  CHECK(p_gt_one_divergence(2.0, 1).rhs.real() == 3.0);

  SECTION("closed form and direct evaluation agree") {
    for (double p : {1.5, 2.0})
      for (std::uint64_t k = 1; k <= 12; ++k) {
        const DefectReport report = p_gt_one_divergence(p, k);
        const double delta = report.rhs.real();
        const double closed = report.extras[0].second.real();
        REQUIRE(std::fabs(delta - closed) <= 1e-9 * std::max(1.0, std::fabs(closed)));
      }
  }

  SECTION("delta exceeds 1 and grows in k") {
    for (double p : {1.5, 2.0}) {
      double previous = 1.0;
      for (std::uint64_t k = 1; k <= 12; ++k) {
        const double delta = p_gt_one_divergence(p, k).rhs.real();
        REQUIRE(delta > previous);
        previous = delta;
      }
    }
  }

  SECTION("domain") {
    CHECK_THROWS_MATCHES(p_gt_one_divergence(1.0, 3), error,
                         Catch::Matchers::Predicate<error>([](const error& e) {
                           return e.which() == error::kind::domain;
                         }));
    CHECK_THROWS_AS(p_gt_one_divergence(0.5, 3), error);
    CHECK_THROWS_AS(p_gt_one_divergence(2.0, 0), error);
  }
}

TEST_CASE("fluctuation_series") {
  const auto series = fluctuation_series(Base(2), Natural(64));
  REQUIRE(series.size() == 64);
  CHECK(series.front().first == 1);
  CHECK(series.front().second == 0.0);

  SECTION("residual vanishes at powers of the base") {
    for (auto b : {2u, 3u}) {
      const std::uint64_t limit = b == 2 ? 1024 : 59049;
      const auto values = fluctuation_series(Base(b), Natural(limit));
      for (std::uint64_t power = 1; power <= limit; power *= b)
        REQUIRE(std::fabs(values[power - 1].second) <= real_tolerance);
    }
  }

  CHECK_THROWS_AS(fluctuation_series(Base(2), Natural(1)), error);
}

TEST_CASE("block_scan") {
  const DigitVector single_one{{1}, Base(2)};
  const ScanReport ones = block_scan(single_one, Base(2), 64, Rational{1, 1});
  const ScanReport graham = scan_graham(64);
  CHECK(ones.instances_checked == graham.instances_checked);
  CHECK(ones.min_defect.exact() == graham.min_defect.exact());
  CHECK(ones.equality_count == graham.equality_count);
  CHECK(ones.violations == graham.violations);

  const DigitVector pair{{1, 1}, Base(2)};
  const ScanReport probe = block_scan(pair, Base(2), 64, Rational{1, 1});
  CHECK(probe.min_defect.exact() == -32);
  CHECK(probe.argmin_witness == std::vector<Natural>{32, 64});
  CHECK_FALSE(probe.holds());
  CHECK(probe.violations.size() == 32);  // capped

  const ScanReport free_probe = block_scan(pair, Base(2), 64, Rational{0, 1});
  CHECK(free_probe.min_defect.exact() == 0);
  CHECK(free_probe.holds());

  SECTION("fractional coefficients stay exact in the scaled domain") {
    const ScanReport half = block_scan(single_one, Base(2), 32, Rational{1, 2});
    CHECK_FALSE(half.min_defect.is_exact());
    CHECK(half.holds());  // c = 1/2 is weaker than c = 1
  }

  SECTION("violation cap is configurable") {
    ScanOptions options;
    options.violation_cap = 5;
    CHECK(block_scan(pair, Base(2), 64, Rational{1, 1}, options).violations.size() == 5);
  }
}

TEST_CASE("scan dispatcher") {
  ScanParams params;
  params.max = 16;
  CHECK(scan("graham", params).instances_checked == 153);

  params.b = 3;
  CHECK(scan("bio", params).inequality_id == "bio");
  CHECK(scan("partial_tuple", params).grid[1].second == "3");  // r defaults to b

  params.b = 2;
  params.pattern = DigitVector{{1}, Base(2)};
  CHECK(scan("block", params).min_defect.exact() == 0);

  SECTION("every id dispatches to a matching report") {
    const char* ids[] = {"graham",        "bio",
                         "partial_tuple", "variation",
                         "variation_partial", "base3",
                         "symmetric",     "allaart_p",
                         "subadditivity", "carry_identity",
                         "oracle_equivalence", "lemma1_random",
                         "lemma1_powers", "block"};
    ScanParams small;
    small.max = 8;
    small.b = 3;
    small.p = 0.5;
    small.pattern = DigitVector{{1}, Base(3)};
    for (const char* id : ids) {
      const ScanReport report = scan(id, small);
      CHECK(report.inequality_id == id);
      CHECK(report.instances_checked > 0);
    }
  }

  CHECK_THROWS_MATCHES(scan("nonsense", params), error,
                       Catch::Matchers::Predicate<error>([](const error& e) {
                         return e.which() == error::kind::usage;
                       }));
}

TEST_CASE("row enumeration matches the aggregated report") {
  std::uint64_t rows = 0;
  std::int64_t min_defect = 0;
  bool any = false;
  scan_graham_rows(16, [&](std::span<const std::uint64_t> witness, std::int64_t defect) {
    ++rows;
    REQUIRE(witness.size() == 2);
    if (!any || defect < min_defect) min_defect = defect;
    any = true;
  });
  const ScanReport report = scan_graham(16);
  CHECK(rows == report.instances_checked);
  CHECK(Natural(min_defect) == report.min_defect.exact());

  std::uint64_t allaart_rows = 0;
  double allaart_min = 1e300;
  scan_allaart_rows(0.5, 20, [&](std::span<const std::uint64_t>, double defect) {
    ++allaart_rows;
    allaart_min = std::min(allaart_min, defect);
  });
  const ScanReport allaart = scan_allaart(0.5, 20);
  CHECK(allaart_rows == allaart.instances_checked);
  CHECK(allaart_min == allaart.min_defect.real());
}

TEST_CASE("grid guards refuse infeasible sweeps") {
  CHECK_THROWS_MATCHES(scan_bio(Base(12), 64), error,
                       Catch::Matchers::Predicate<error>([](const error& e) {
                         return e.which() == error::kind::input;
                       }));
}
