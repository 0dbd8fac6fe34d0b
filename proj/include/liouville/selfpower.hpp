#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "liouville/bigint.hpp"
#include "liouville/interval.hpp"

namespace liouville {

/// phi(t) = t log t, t > 0.
IntervalReal xlogx(const IntervalReal& t);

/// f(x) = x^x = exp(x log x).  Uses branch monotonicity when the enclosure
/// sits on one side of 1/e.
IntervalReal self_power(const IntervalReal& x, long budget = kDefaultBudgetBits);

/// f'(x) = x^x (log x + 1).
IntervalReal self_power_derivative(const IntervalReal& x, long budget = kDefaultBudgetBits);

IntervalReal inv_e(long budget);        // e^{-1}
IntervalReal self_power_min(long budget);  // e^{-1/e}

/// f' is increasing on [delta, 1] (f'' = x^x((log x + 1)^2 + 1/x) > 0), so
/// m = f'(delta) and M = f'(1) = 1.
struct DerivativeBounds {
  BigRational delta;
  IntervalReal m;
  IntervalReal M;
  bool near_critical = false;  // m < 2^-10: delta is close to 1/e
};

/// DomainError unless 1/e < delta <= 1 is certified.
DerivativeBounds derivative_bounds(const BigRational& delta, long budget = kDefaultBudgetBits);

/// max over [delta, 1] of |log t + 1|, i.e. max(1, |log delta + 1|).
IntervalReal phi_lipschitz(const IntervalReal& delta, long budget = kDefaultBudgetBits);

enum class Branch { Lower, Upper };  // (0, 1/e] and [1/e, inf)

/// Preimage of u under phi on one branch.  DomainError for u < -1/e, or
/// u >= 0 on the lower branch.  When u touches -1/e the enclosure reaches
/// the critical point.
IntervalReal invert_xlogx(const IntervalReal& u, Branch branch, long budget = kDefaultBudgetBits);

/// All preimages of y under f: none below e^{-1/e}, one at the minimum or
/// for y >= 1, two in between.  AmbiguousEnclosureError when y straddles 1 or
/// the minimum with a wide enclosure.
std::vector<IntervalReal> invert_self_power(const IntervalReal& y, long budget = kDefaultBudgetBits);

struct ScanViolation {
  BigInt a;
  BigInt b;
  int gap_sign = 0;          // sign of a/b - xi^xi, 0 when a/b lies in the enclosure
  BigRational certified_gap;  // lower bound of |xi^xi - a/b|
  friend bool operator==(const ScanViolation&, const ScanViolation&) = default;
};

struct ExclusionReport {
  IntervalReal xi;
  IntervalReal f_xi;
  BigRational tau;
  long b_max = 0;
  long scanned = 0;  // reduced fractions inside the b^-floor(tau) window, classified one by one
  std::vector<ScanViolation> violations;  // sorted by (b, a)
};

/// Every reduced a/b with b <= b_max whose distance to the enclosure of
/// xi^xi could be below b^-tau is classified as a certified violation
/// (|xi^xi - a/b| < b^-tau on the whole enclosure) or certified clear.
/// Fractions farther than b^-floor(tau) from the enclosure are clear without
/// further work.  b starts at 2: for b = 1, |xi^xi - 1| < 1 always holds.
/// IncomparableError lists pairs the precision cannot decide.
ExclusionReport non_liouville_scan_serial(const IntervalReal& xi, const BigRational& tau, long b_max,
                                          long budget = kDefaultBudgetBits);

/// Same result, denominators partitioned across OpenMP threads; jobs <= 0
/// uses the runtime default.
ExclusionReport non_liouville_scan(const IntervalReal& xi, const BigRational& tau, long b_max,
                                   int jobs = 0, long budget = kDefaultBudgetBits);

std::string to_csv(const ExclusionReport& r);
nlohmann::json to_json(const ExclusionReport& r);

struct HausdorffPartial {
  std::optional<BigRational> exact;  // when 1 - s tau is an integer
  IntervalReal enclosure;
  bool convergent = false;  // s tau > 2
};

/// sum_{b = b_lo}^{b_hi} b^{1 - s tau}.
HausdorffPartial hausdorff_series_partial(const BigRational& s, const BigRational& tau, long b_lo, long b_hi,
                                          long budget = kDefaultBudgetBits);

}  // namespace liouville
