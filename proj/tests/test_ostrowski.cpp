// Tests for digit numeration against a continued fraction: the digit
// constraint checker, exact greedy encoding, rigorous decoding, the
// prefix-to-integer bijection that characterizes valid digit strings, and
// sparse support streams.

#include <doctest.h>

#include <cfcircle/ostrowski.hpp>

#include <functional>
#include <optional>
#include <set>
#include <vector>

using namespace cfcircle;

namespace {

bool holds(const Enclosure& e, const Rat& pin) {
  const Rat tiny(Int(1), ipow(Int(10), 15));
  return e.widened(tiny).contains(pin);
}

Rat dec18(long long scaled) { return Rat(Int(scaled), ipow(Int(10), 18)); }

const Rat kNarrow(Int(1), ipow(Int(10), 14));

}  // namespace

TEST_CASE("validate flags range and carry violations with the right index") {
  ContinuedFraction golden(CFDigits::golden());
  // All partial quotients are 1: d_0 must be 0 and d_k <= 1 afterwards.
  const auto bad_range =
      OstrowskiDigits::from_list({0, 2}, CFDigits::golden(), "bad-range");
  const ValidationResult r1 = validate(golden, bad_range, 5);
  CHECK_FALSE(r1.ok);
  CHECK(r1.violation_index == 1);
  CHECK(r1.rule == "range");

  ContinuedFraction silver(CFDigits::silver());
  // d_1 = a_2 = 2 demands d_0 = 0.
  const auto bad_carry =
      OstrowskiDigits::from_list({1, 2}, CFDigits::silver(), "bad-carry");
  const ValidationResult r2 = validate(silver, bad_carry, 5);
  CHECK_FALSE(r2.ok);
  CHECK(r2.violation_index == 1);
  CHECK(r2.rule == "carry");

  // A saturated digit is fine when its predecessor vanishes.
  const auto good =
      OstrowskiDigits::from_list({0, 2, 0, 2}, CFDigits::silver(), "ok");
  const ValidationResult r3 = validate(silver, good, 3);
  CHECK(r3.ok);
  CHECK(r3.unsaturated_even_count == 2);  // k = 0 and k = 2 both below cap

  const auto zero = OstrowskiDigits::zero(CFDigits::silver());
  CHECK(validate(silver, zero, 50).ok);
}

TEST_CASE("decode pins single-term and two-term values") {
  ContinuedFraction golden(CFDigits::golden());

  const auto d2 =
      OstrowskiDigits::from_list({0, 0, 1}, CFDigits::golden(), "theta2");
  const Enclosure e2 = decode(golden, d2, 10, kNarrow);
  CHECK(e2.width() <= kNarrow);  // known-zero tail adds nothing
  CHECK(holds(e2, dec18(236067977499789696)));  // theta_2 = 2 alpha - 1

  const auto d14 =
      OstrowskiDigits::from_list({0, 1, 0, 0, 1}, CFDigits::golden(), "t1+t4");
  const Enclosure e14 = decode(golden, d14, 10, kNarrow);
  CHECK(holds(e14, dec18(-291796067500630911)));  // 6 alpha - 4

  const Enclosure ez =
      decode(golden, OstrowskiDigits::zero(CFDigits::golden()), 10, kNarrow);
  CHECK(ez.is_point());
  CHECK(ez.lo == 0);
}

TEST_CASE("decode of an open-ended stream pays the tail allowance") {
  ContinuedFraction golden(CFDigits::golden());
  // Infinite support: digits 1 at 2, 12, 22, 32, ...
  const auto sparse = OstrowskiDigits::from_support(
      [](long long i) -> std::optional<SupportPoint> {
        return SupportPoint{2 + 10 * i, 1};
      },
      CFDigits::golden(), "arithmetic-support");
  CHECK_FALSE(sparse.zero_beyond(1000));
  const long long K = 12;
  const Rat tail = decode_tail_bound(golden, sparse, K);
  CHECK(tail == golden.theta_abs_upper(K) + golden.theta_abs_upper(K + 1));
  const Enclosure e = decode(golden, sparse, K, kNarrow);
  CHECK(e.width() <= kNarrow + 2 * tail);
  // The head through K = 12 is theta_2 + theta_12; the full value differs
  // from it by less than the tail bound.
  CHECK(e.width() > 2 * golden.theta_abs_lower(K + 2));
}

TEST_CASE("encode pins: zero and 1/4 over the all-ones stream") {
  ContinuedFraction golden(CFDigits::golden());

  const auto zeros = encode_form(golden, LinearForm::rational(Rat(0)), 15);
  for (long long v : zeros) CHECK(v == 0);

  const OstrowskiDigits q = encode(golden, Rat(1, 4), 12);
  const auto sup = q.support(12);
  REQUIRE(sup.size() == 2);
  CHECK(sup[0] == 2);
  CHECK(sup[1] == 8);
  CHECK(q.at(2) == 1);
  CHECK(q.at(8) == 1);

  // Decoding the digits and allowing for the truncated tail recovers 1/4.
  const Enclosure back = decode(golden, q, 12, kNarrow);
  const Rat allowance =
      golden.theta_abs_upper(12) + golden.theta_abs_upper(13);
  CHECK(back.widened(allowance).contains(Rat(1, 4)));
  CHECK_FALSE(back.contains(Rat(1, 4)));  // the expansion does not terminate
}

TEST_CASE("encode rejects values outside the fundamental interval") {
  ContinuedFraction golden(CFDigits::golden());
  CHECK_THROWS_AS(encode(golden, Rat(2, 5), 10), std::invalid_argument);
  CHECK_THROWS_AS(encode(golden, Rat(-7, 10), 10), std::invalid_argument);
  ContinuedFraction silver(CFDigits::silver());
  CHECK_NOTHROW(encode(silver, Rat(2, 5), 10));  // inside (-0.414.., 0.585..)
}

TEST_CASE("greedy remainder after depth K stays within |theta_K|") {
  ContinuedFraction golden(CFDigits::golden());
  ContinuedFraction silver(CFDigits::silver());
  const long long K = 25;
  for (std::uint64_t i = 0; i < 24; ++i) {
    // Seeded rationals in (-0.41, 0.38), valid for both streams.
    const long long numer =
        static_cast<long long>(seeded_draw(31, i) % 790) - 410;
    const Rat beta(numer, 1000);
    for (ContinuedFraction* cf : {&golden, &silver}) {
      const auto digits = encode_form(*cf, LinearForm::rational(beta), K);
      const auto d = OstrowskiDigits::from_list(digits, cf->digits(), "rt");
      CHECK(validate(*cf, d, K).ok);
      // |beta - head| <= |theta_K|, checked by exact sign decisions.
      const LinearForm rem =
          LinearForm::rational(beta) - decode_head_form(*cf, d, K);
      const LinearForm uK = cf->theta_abs_form(K);
      CHECK(cf->sign(uK - rem) >= 0);
      CHECK(cf->sign(uK + rem) >= 0);
      // And the rigorous decode interval, plus that allowance, contains beta.
      const Rat allowance =
          cf->theta_abs_upper(K) + cf->theta_abs_upper(K + 1);
      const Enclosure back = decode(*cf, d, K, kNarrow);
      CHECK(back.widened(allowance).contains(beta));
    }
  }
}

TEST_CASE("theta_n itself encodes as the single digit at n") {
  ContinuedFraction golden(CFDigits::golden());
  for (long long n = 1; n <= 10; ++n) {
    const auto digits = encode_form(golden, golden.theta_form(n), n + 3);
    for (long long k = 0; k < static_cast<long long>(digits.size()); ++k)
      CHECK(digits[static_cast<size_t>(k)] == (k == n ? 1 : 0));
  }
  // theta_0 = alpha is representable when alpha < 1/2.
  ContinuedFraction silver(CFDigits::silver());
  const auto digits = encode_form(silver, silver.theta_form(0), 6);
  CHECK(digits[0] == 1);
  for (size_t k = 1; k < digits.size(); ++k) CHECK(digits[k] == 0);
}

TEST_CASE("valid digit prefixes biject onto [0, q_n - 1]") {
  // The map (d_0..d_{n-1}) -> sum d_k q_k is the counting bijection between
  // constraint-satisfying prefixes and residues; this pins both the counts
  // and the constraint checker at once.
  const auto enumerate = [](const ContinuedFraction& cf, long long n) {
    std::set<Int> values;
    std::vector<long long> d(static_cast<size_t>(n), 0);
    const std::function<void(long long)> rec = [&](long long k) {
      if (k == n) {
        Int v = 0;
        for (long long j = 0; j < n; ++j)
          v += Int(d[static_cast<size_t>(j)]) * cf.q(j);
        CHECK(values.insert(v).second);  // injective
        return;
      }
      const long long cap = (k == 0) ? cf.a(1) - 1 : cf.a(k + 1);
      for (long long v = 0; v <= cap; ++v) {
        if (v == cap && k > 0 && d[static_cast<size_t>(k - 1)] != 0) continue;
        d[static_cast<size_t>(k)] = v;
        rec(k + 1);
      }
      d[static_cast<size_t>(k)] = 0;
    };
    rec(0);
    return values;
  };

  ContinuedFraction golden(CFDigits::golden());
  const auto gv = enumerate(golden, 6);
  CHECK(Int(gv.size()) == golden.q(6));  // 13
  CHECK(*gv.begin() == 0);
  CHECK(*gv.rbegin() == golden.q(6) - 1);

  ContinuedFraction silver(CFDigits::silver());
  const auto sv = enumerate(silver, 4);
  CHECK(Int(sv.size()) == silver.q(4));  // 29
  CHECK(*sv.begin() == 0);
  CHECK(*sv.rbegin() == silver.q(4) - 1);

  ContinuedFraction mixed(CFDigits::from_list({3, 1, 4, 1, 5}, "pi-ish"));
  const auto mv = enumerate(mixed, 5);
  CHECK(Int(mv.size()) == mixed.q(5));
}

TEST_CASE("sparse support streams answer digit and range queries") {
  const auto finite = OstrowskiDigits::from_support(
      [](long long i) -> std::optional<SupportPoint> {
        if (i >= 3) return std::nullopt;
        const long long idx[] = {2, 7, 11};
        return SupportPoint{idx[i], i + 1};
      },
      CFDigits::silver(), "three-points");
  CHECK(finite.at(2) == 1);
  CHECK(finite.at(7) == 2);
  CHECK(finite.at(11) == 3);
  CHECK(finite.at(3) == 0);
  CHECK(finite.at(100) == 0);
  CHECK(finite.zero_beyond(11));
  CHECK_FALSE(finite.zero_beyond(10));

  const auto sup = finite.support(100);
  REQUIRE(sup.size() == 3);
  CHECK(sup[2] == 11);
  const auto in = finite.support_in(3, 11);
  REQUIRE(in.size() == 2);
  CHECK(in[0].index == 7);
  CHECK(in[1].digit == 3);

  const auto empty_range = finite.support_in(3, 6);
  CHECK(empty_range.empty());
}

TEST_CASE("support generators must produce increasing positive entries") {
  const auto repeat = OstrowskiDigits::from_support(
      [](long long) -> std::optional<SupportPoint> {
        return SupportPoint{3, 1};
      },
      CFDigits::silver(), "stuck");
  CHECK_THROWS_AS(repeat.at(5), std::invalid_argument);

  const auto nonpositive = OstrowskiDigits::from_support(
      [](long long i) -> std::optional<SupportPoint> {
        return SupportPoint{i + 1, 0};
      },
      CFDigits::silver(), "zero-digit");
  CHECK_THROWS_AS(nonpositive.at(5), std::invalid_argument);
}

TEST_CASE("list streams read zero past their end") {
  const auto d = OstrowskiDigits::from_list({0, 1}, CFDigits::golden(), "d1");
  CHECK(d.at(1) == 1);
  CHECK(d.at(2) == 0);
  CHECK(d.at(1000) == 0);
  CHECK(d.zero_beyond(1));
  CHECK_FALSE(d.zero_beyond(0));
  CHECK_THROWS_AS(d.at(-1), std::invalid_argument);
  CHECK(d.name() == "d1");
  CHECK(d.descriptor() == d.descriptor());
}
