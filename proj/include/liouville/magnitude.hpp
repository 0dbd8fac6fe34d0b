#pragma once

#include <compare>
#include <memory>
#include <string>

#include <json.hpp>

#include "liouville/bigint.hpp"
#include "liouville/interval.hpp"

namespace liouville {

/// A non-negative real bound that may be far too small or too large to
/// materialize.
///
///   level 0:  an exact rational value
///   level k:  scale * base^(sign * E), where E is a level k-1 magnitude
///
/// so 3^(1-7625597484987) sits at level 1 (integer exponent) and
/// 3^(-3^7625597484987) at level 2.  Values are immutable and cheap to copy.
class ExtendedMagnitude {
 public:
  ExtendedMagnitude() = default;  // zero

  static ExtendedMagnitude zero() { return {}; }
  static ExtendedMagnitude from_rational(BigRational value);
  /// scale * base^(sign * exponent), kept in tower form as given.
  static ExtendedMagnitude tower(BigRational scale, BigInt base, int sign,
                                 ExtendedMagnitude exponent);

  int level() const { return level_; }
  bool is_zero() const { return level_ == 0 && value_ == 0; }

  // level 0: the value; level >= 1: the rational prefactor.
  const BigRational& value() const { return value_; }
  const BigRational& scale() const { return value_; }
  const BigInt& base() const { return base_; }
  int sign() const { return sign_; }
  const ExtendedMagnitude& exponent() const { return *exponent_; }

  friend bool operator==(const ExtendedMagnitude& a, const ExtendedMagnitude& b);

  std::string to_display() const;

 private:
  int level_ = 0;
  int sign_ = 1;
  BigRational value_{0};
  BigInt base_{0};
  std::shared_ptr<const ExtendedMagnitude> exponent_;
};

/// Enclosure of ln(v) for a positive magnitude v, possibly in iterated form:
///   depth 1:  ln v in w
///   depth d:  ln v = sign * exp^(d-1)(w)      (exp iterated d-1 times)
struct LogEnclosure {
  int depth = 1;
  int sign = 1;
  IntervalReal w;
};

LogEnclosure log_enclosure(const ExtendedMagnitude& m, long budget = kDefaultBudgetBits);

/// ln(m) as a plain interval; UnmaterializableError for tower depth > 1.
IntervalReal log_interval(const ExtendedMagnitude& m, long budget = kDefaultBudgetBits);

/// base^exponent in the lowest level able to hold it.
ExtendedMagnitude mag_from_power(const BigInt& base, const BigInt& exponent);
ExtendedMagnitude mag_from_power(const BigInt& base, int sign, const ExtendedMagnitude& exponent);

/// Total order.  Exact for level-0 pairs; otherwise decided on certified log
/// enclosures, retrying at up to 4x the budget before IncomparableError.
std::strong_ordering mag_compare(const ExtendedMagnitude& a, const ExtendedMagnitude& b,
                                 long budget = kDefaultBudgetBits);

/// m <= Q^(-N), decided in exponent space.  Q must exceed 1.
bool mag_leq_power(const ExtendedMagnitude& m, const ExtendedMagnitude& Q, const BigInt& N,
                   long budget = kDefaultBudgetBits);

/// m <= Q^(-N) for every N in the enclosure (true), for none (false);
/// IncomparableError when the enclosure straddles the threshold.
bool mag_leq_power(const ExtendedMagnitude& m, const ExtendedMagnitude& Q, const IntervalReal& N,
                   long budget = kDefaultBudgetBits);

ExtendedMagnitude mag_scale(const ExtendedMagnitude& m, const BigRational& factor);

/// Product; adds exponents when both sides share a base.  DomainError for
/// tower shapes it cannot combine exactly.
ExtendedMagnitude mag_mul(const ExtendedMagnitude& a, const ExtendedMagnitude& b);

struct MagnitudeSum {
  ExtendedMagnitude value;
  bool exact = true;  // false: value is a certified upper bound of the sum
};

MagnitudeSum mag_add(const ExtendedMagnitude& a, const ExtendedMagnitude& b,
                     long budget = kDefaultBudgetBits);

nlohmann::json to_json(const ExtendedMagnitude& m);
ExtendedMagnitude magnitude_from_json(const nlohmann::json& j);

}  // namespace liouville
