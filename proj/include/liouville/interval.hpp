#pragma once

#include <compare>
#include <optional>
#include <string>

#include "liouville/bigint.hpp"

namespace liouville {

/// Closed interval [lower, upper] with rational endpoints that is known to
/// contain some real quantity.  Every operation rounds outward, so the
/// result of an operation contains the true result for every choice of
/// points in the operands.
///
/// `budget` is the target enclosure width in bits used by transcendental
/// operations: exp/log/sqrt of a point produce an enclosure no wider than
/// 2^-budget (relative to the magnitude of the result for exp).
class IntervalReal {
 public:
  IntervalReal() = default;
  explicit IntervalReal(BigRational point, long budget = kDefaultBudgetBits);
  IntervalReal(BigRational lower, BigRational upper, long budget = kDefaultBudgetBits);

  const BigRational& lower() const { return lo_; }
  const BigRational& upper() const { return hi_; }
  long budget() const { return budget_; }

  BigRational width() const { return hi_ - lo_; }
  BigRational midpoint() const { return (lo_ + hi_) / 2; }
  bool is_point() const { return lo_ == hi_; }
  bool contains(const BigRational& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const IntervalReal& other) const {
    return lo_ <= other.lo_ && other.hi_ <= hi_;
  }
  bool positive() const { return lo_ > 0; }
  bool negative() const { return hi_ < 0; }

  IntervalReal with_budget(long budget) const;

  // Outward rounding of both endpoints to the 2^-bits grid.
  IntervalReal rounded(long bits) const;

  IntervalReal operator-() const;
  friend IntervalReal operator+(const IntervalReal& a, const IntervalReal& b);
  friend IntervalReal operator-(const IntervalReal& a, const IntervalReal& b);
  friend IntervalReal operator*(const IntervalReal& a, const IntervalReal& b);
  friend IntervalReal operator/(const IntervalReal& a, const IntervalReal& b);

  std::string to_string() const;

 private:
  void compact();

  BigRational lo_{0};
  BigRational hi_{0};
  long budget_ = kDefaultBudgetBits;
};

IntervalReal hull(const IntervalReal& a, const IntervalReal& b);
IntervalReal abs(const IntervalReal& x);

/// Certified enclosure of exp over the interval.  For inputs inside
/// (-inf, 0] the width is at most input width + 2^-budget.
IntervalReal interval_exp(const IntervalReal& x);

/// Certified enclosure of the natural log; DomainError unless lower > 0.
IntervalReal interval_log(const IntervalReal& x);

IntervalReal interval_sqrt(const IntervalReal& x);

/// x^y = exp(y log x) for x > 0.
IntervalReal interval_pow(const IntervalReal& x, const IntervalReal& y);

/// Exact integer power, x >= 0 or n even/odd handled by endpoint monotonicity.
IntervalReal interval_powi(const IntervalReal& x, unsigned long n);

IntervalReal ln2(long budget);
IntervalReal euler_e(long budget);

/// Definite order when the enclosures are disjoint (or both the same point),
/// nullopt when they overlap.
std::optional<std::strong_ordering> certified_compare(const IntervalReal& a,
                                                      const IntervalReal& b);

inline bool certainly_less(const IntervalReal& a, const IntervalReal& b) {
  return a.upper() < b.lower();
}
inline bool certainly_leq(const IntervalReal& a, const IntervalReal& b) {
  return a.upper() <= b.lower();
}

// Certified floor: the integer n with n <= x < n+1 for every x in the
// enclosure, or nullopt when the enclosure straddles an integer.
std::optional<BigInt> certified_floor(const IntervalReal& x);

}  // namespace liouville
