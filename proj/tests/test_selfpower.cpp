#include <gtest/gtest.h>

#include <random>

#include "liouville/errors.hpp"
#include "liouville/selfpower.hpp"
#include "oracle.hpp"

namespace {

using namespace liouville;

BigRational tol(long bits) { return 1 / BigRational(BigInt(1) << static_cast<unsigned long>(bits)); }

BigRational random_unit(std::mt19937_64& rng, const BigRational& lo, const BigRational& hi) {
  std::uniform_int_distribution<long> n(0, 1L << 40);
  return lo + (hi - lo) * BigRational(n(rng), 1L << 40);
}

TEST(SelfPower, Values) {
  EXPECT_TRUE(self_power(IntervalReal(BigRational(1))).contains(BigRational(1)));
  EXPECT_TRUE(self_power(IntervalReal(BigRational(2))).contains(BigRational(4)));
  IntervalReal m = self_power(inv_e(300));
  EXPECT_GE(m.lower(), BigRational(6922006275, 10000000000));
  EXPECT_LE(m.upper(), BigRational(6922006277, 10000000000));
  EXPECT_TRUE(m.contains(self_power_min(300).midpoint()));
  EXPECT_THROW(self_power(IntervalReal(BigRational(0))), DomainError);
}

TEST(SelfPower, MatchesOracle) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 200; ++i) {
    BigRational x = random_unit(rng, BigRational(1, 1000), BigRational(3));
    IntervalReal v = self_power(IntervalReal(x));
    auto [lo, hi] = oracle::self_power(x);
    ASSERT_LE(v.lower(), lo);
    ASSERT_GE(v.upper(), hi);
    ASSERT_LE(v.width(), tol(240));
  }
}

TEST(DerivativeBounds, Values) {
  auto one = derivative_bounds(BigRational(1));
  EXPECT_TRUE(one.m.contains(BigRational(1)));
  EXPECT_TRUE(one.M.contains(BigRational(1)));
  auto half = derivative_bounds(BigRational(1, 2));
  EXPECT_NEAR(to_double(half.m.midpoint()), 0.21697770945227393, 1e-12);
  EXPECT_FALSE(half.near_critical);
  // 1/e = 0.36787944117...
  auto close = derivative_bounds(BigRational(367880, 1000000));
  EXPECT_TRUE(close.near_critical);
  EXPECT_GT(close.m.lower(), 0);
  EXPECT_THROW(derivative_bounds(BigRational(36787, 100000)), DomainError);
  EXPECT_THROW(derivative_bounds(BigRational(11, 10)), DomainError);
}

TEST(DerivativeBounds, SandwichAndBiLipschitz) {
  std::mt19937_64 rng(32);
  const BigRational delta(2, 5);
  auto d = derivative_bounds(delta);
  BigRational t = tol(kDefaultBudgetBits / 2);
  for (int i = 0; i < 500; ++i) {
    BigRational x = random_unit(rng, delta, BigRational(1));
    BigRational y = random_unit(rng, delta, BigRational(1));
    IntervalReal fp = self_power_derivative(IntervalReal(x));
    ASSERT_GE(fp.lower(), d.m.lower() - t);
    ASSERT_LE(fp.upper(), d.M.upper() + t);
    IntervalReal diff = abs(self_power(IntervalReal(x)) - self_power(IntervalReal(y)));
    BigRational gap = abs(x - y);
    ASSERT_LE(d.m.lower() * gap, diff.upper() + t);
    ASSERT_LE(diff.lower(), d.M.upper() * gap + t);
  }
}

TEST(PhiLipschitz, Values) {
  auto e1 = phi_lipschitz(inv_e(300));
  EXPECT_EQ(e1.lower(), 1);
  EXPECT_EQ(e1.upper(), 1);
  auto e2 = phi_lipschitz(interval_exp(IntervalReal(BigRational(-2), 300)));
  EXPECT_EQ(e2.lower(), 1);
  EXPECT_LE(e2.upper() - 1, tol(250));
  auto p = phi_lipschitz(IntervalReal(BigRational(1, 20)));
  EXPECT_NEAR(to_double(p.midpoint()), 1.9957322735539909, 1e-12);
  EXPECT_THROW(phi_lipschitz(IntervalReal(BigRational(1))), DomainError);
}

TEST(PhiLipschitz, BoundsDifferences) {
  std::mt19937_64 rng(33);
  for (BigRational delta : {BigRational(1, 20), BigRational(1, 3), BigRational(3, 4)}) {
    BigRational M = phi_lipschitz(IntervalReal(delta)).upper();
    for (int i = 0; i < 200; ++i) {
      BigRational a = random_unit(rng, delta, BigRational(1));
      BigRational b = random_unit(rng, delta, BigRational(1));
      IntervalReal diff = abs(xlogx(IntervalReal(a)) - xlogx(IntervalReal(b)));
      ASSERT_LE(diff.lower(), M * abs(a - b));
    }
  }
}

TEST(ExpLipschitz, NonPositiveReals) {
  std::mt19937_64 rng(34);
  for (int i = 0; i < 300; ++i) {
    BigRational u = random_unit(rng, BigRational(-30), BigRational(0));
    BigRational v = random_unit(rng, BigRational(-30), BigRational(0));
    IntervalReal diff = abs(interval_exp(IntervalReal(u)) - interval_exp(IntervalReal(v)));
    ASSERT_LE(diff.lower(), abs(u - v));
  }
}

TEST(InvertXlogx, Values) {
  IntervalReal minus = -inv_e(300);
  IntervalReal lo = invert_xlogx(minus, Branch::Lower);
  IntervalReal up = invert_xlogx(minus, Branch::Upper);
  BigRational e1 = inv_e(300).midpoint();
  EXPECT_TRUE(lo.contains(e1));
  EXPECT_TRUE(up.contains(e1));
  EXPECT_LT(up.width(), tol(80));  // square-root sensitivity at the fold
  EXPECT_TRUE(invert_xlogx(IntervalReal(BigRational(0)), Branch::Upper).contains(BigRational(1)));
  IntervalReal u(BigRational(-1, 5));
  EXPECT_NEAR(to_double(invert_xlogx(u, Branch::Lower).midpoint()), 0.078658360286851772, 1e-14);
  EXPECT_NEAR(to_double(invert_xlogx(u, Branch::Upper).midpoint()), 0.77169097401769413, 1e-14);
  EXPECT_THROW(invert_xlogx(IntervalReal(BigRational(-1, 2)), Branch::Upper), DomainError);
  EXPECT_THROW(invert_xlogx(IntervalReal(BigRational(1, 2)), Branch::Lower), DomainError);
}

TEST(InvertXlogx, InvertsPhiOnEachBranch) {
  std::mt19937_64 rng(35);
  for (int i = 0; i < 100; ++i) {
    BigRational xl = random_unit(rng, BigRational(1, 1000), BigRational(36, 100));
    BigRational xu = random_unit(rng, BigRational(38, 100), BigRational(5));
    IntervalReal rl = invert_xlogx(xlogx(IntervalReal(xl)), Branch::Lower);
    IntervalReal ru = invert_xlogx(xlogx(IntervalReal(xu)), Branch::Upper);
    ASSERT_TRUE(rl.contains(xl));
    ASSERT_TRUE(ru.contains(xu));
    ASSERT_LE(rl.width(), tol(200));
    ASSERT_LE(ru.width(), tol(200));
  }
}

TEST(InvertSelfPower, Trichotomy) {
  auto four = invert_self_power(IntervalReal(BigRational(4)));
  ASSERT_EQ(four.size(), 1u);
  EXPECT_TRUE(four[0].contains(BigRational(2)));
  auto crit = invert_self_power(self_power_min(300));
  ASSERT_EQ(crit.size(), 1u);
  EXPECT_TRUE(crit[0].contains(inv_e(300).midpoint()));
  auto two = invert_self_power(IntervalReal(BigRational(4, 5)));
  ASSERT_EQ(two.size(), 2u);
  EXPECT_NEAR(to_double(two[0].midpoint()), 0.094649710864924913, 1e-14);
  EXPECT_NEAR(to_double(two[1].midpoint()), 0.73953365001071037, 1e-14);
  EXPECT_TRUE(invert_self_power(IntervalReal(BigRational(1, 2))).empty());
  EXPECT_EQ(invert_self_power(IntervalReal(BigRational(1))).size(), 1u);
  EXPECT_THROW(invert_self_power(IntervalReal(BigRational(9, 10), BigRational(11, 10))), AmbiguousEnclosureError);
  EXPECT_THROW(invert_self_power(IntervalReal(BigRational(0))), DomainError);
}

TEST(InvertSelfPower, RoundTripAndCount) {
  std::mt19937_64 rng(36);
  const long budget = 200;  // about 60 digits
  BigRational c = self_power_min(400).midpoint();
  for (int i = 0; i < 200; ++i) {
    BigRational y = random_unit(rng, BigRational(1, 2), BigRational(3));
    auto roots = invert_self_power(IntervalReal(y, budget), budget);
    std::size_t want = y < c ? 0 : (y >= 1 ? 1 : 2);
    ASSERT_EQ(roots.size(), want) << y.get_str();
    for (const auto& x : roots) {
      IntervalReal back = self_power(x, budget);
      BigRational err = std::max(abs(back.lower() - y), abs(back.upper() - y));
      ASSERT_LE(err, BigRational(1, 10) * tol(130)) << y.get_str();
    }
  }
}

TEST(Scan, HalfHasNoViolations) {
  auto r = non_liouville_scan_serial(IntervalReal(BigRational(1, 2)), BigRational(3), 50);
  EXPECT_TRUE(r.violations.empty());
  // 2^-1/2 has bounded partial quotients: no fraction enters the b^-3 window
  EXPECT_EQ(r.scanned, 0);
  EXPECT_EQ(to_csv(r), "a,b,gap_sign,certified_gap\n");
}

TEST(Scan, ConstructedHit) {
  auto roots = invert_self_power(IntervalReal(BigRational(3, 4)));
  ASSERT_EQ(roots.size(), 2u);
  auto r = non_liouville_scan_serial(roots[1], BigRational(3), 10);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].a, 3);
  EXPECT_EQ(r.violations[0].b, 4);
  EXPECT_EQ(r.violations[0].certified_gap, 0);
  EXPECT_EQ(r.violations[0].gap_sign, 0);
  EXPECT_EQ(non_liouville_scan_serial(roots[1], BigRational(3), 0).scanned, 0);
  EXPECT_THROW(non_liouville_scan_serial(roots[0], BigRational(3), 10), DomainError);
  EXPECT_THROW(non_liouville_scan_serial(roots[1], BigRational(2), 10), DomainError);
}

TEST(Scan, ParallelMatchesSerial) {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 6; ++i) {
    BigRational x = random_unit(rng, BigRational(2, 5), BigRational(1));
    BigRational tau = i % 2 ? BigRational(5, 2) : BigRational(3);
    auto s = non_liouville_scan_serial(IntervalReal(x), tau, 2000);
    for (int jobs : {1, 2, 4}) {
      auto p = non_liouville_scan(IntervalReal(x), tau, 2000, jobs);
      EXPECT_EQ(p.violations, s.violations);
      EXPECT_EQ(p.scanned, s.scanned);
      EXPECT_EQ(to_csv(p), to_csv(s));
    }
  }
}

TEST(Scan, ViolationsAreGenuine) {
  // independent check of every reported pair at tau = 5/2 against the MPFR value
  auto r = non_liouville_scan(IntervalReal(BigRational(7, 10)), BigRational(5, 2), 3000);
  EXPECT_GT(r.scanned, 0);
  auto [lo, hi] = oracle::self_power(BigRational(7, 10));
  for (const auto& v : r.violations) {
    BigRational q = make_rational(v.a, v.b);
    double d = oracle::to_double(abs(lo - q));
    EXPECT_LT(d, std::pow(oracle::to_double(BigRational(v.b)), -2.5));
  }
}

TEST(Hausdorff, PartialSums) {
  auto h3 = hausdorff_series_partial(BigRational(1), BigRational(3), 1, 100);
  ASSERT_TRUE(h3.exact);
  EXPECT_TRUE(h3.convergent);
  EXPECT_NEAR(to_double(*h3.exact), 1.6349839001848929, 1e-14);
  auto h2 = hausdorff_series_partial(BigRational(2, 3), BigRational(3), 1, 10);
  EXPECT_FALSE(h2.convergent);
  EXPECT_EQ(*h2.exact, BigRational(7381, 2520));
  auto h4 = hausdorff_series_partial(BigRational(4, 3), BigRational(3), 1, 100);
  EXPECT_NEAR(to_double(*h4.exact), 1.2020074006596776, 1e-14);
  auto frac = hausdorff_series_partial(BigRational(1), BigRational(5, 2), 1, 100);
  EXPECT_FALSE(frac.exact);
  EXPECT_TRUE(frac.convergent);
  EXPECT_LT(frac.enclosure.width(), tol(200));
  EXPECT_GT(frac.enclosure.lower(), *h3.exact);
}

}  // namespace
