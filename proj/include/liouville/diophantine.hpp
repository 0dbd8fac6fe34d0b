#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "liouville/bigint.hpp"
#include "liouville/interval.hpp"
#include "liouville/magnitude.hpp"

namespace liouville {

struct Convergent {
  BigInt p;
  BigInt q;
  BigRational value() const { return make_rational(p, q); }
  friend bool operator==(const Convergent&, const Convergent&) = default;
};

/// [a_0; a_1, a_2, ...] with the convergent table p_k/q_k, k = 0..n.
struct ContinuedFractionExpansion {
  BigInt integer_part;
  std::vector<BigInt> quotients;
  std::vector<Convergent> convergents;  // convergents[k] uses a_0..a_k

  /// Value of the finite expansion.
  BigRational value() const { return convergents.back().value(); }
};

ContinuedFractionExpansion cf_convergents(const BigInt& integer_part,
                                          const std::vector<BigInt>& quotients);

/// The first `depth` terms (a_0 included) shared by every point of the
/// enclosure.  Stops early if the expansion of an exact rational ends.
/// AmbiguousEnclosureError when a term is not pinned down.
ContinuedFractionExpansion cf_of_real(const IntervalReal& x, std::size_t depth);

/// Forced partial quotient per stage.  Forms:
///   "B^(E^n)"  e.g. 2^(2^n)
///   "ceil(e^(n^3))"
///   "const:K"
///   "list:K1,K2,..."
class ForcedSchedule {
 public:
  static ForcedSchedule parse(std::string_view spec);

  BigInt operator()(long n) const;
  const std::string& spec() const { return spec_; }

 private:
  enum class Kind { DoublePower, CeilExpCube, Const, List };
  Kind kind_ = Kind::Const;
  BigInt base_{1};
  BigInt inner_{1};
  std::vector<BigInt> list_;
  std::string spec_;
};

struct JarnikStage {
  long n = 0;
  std::size_t index = 0;  // position of the forced quotient (a_index)
  BigInt forced_quotient;
  Convergent approximant;  // p_{index-1} / q_{index-1}
  BigRational error_lower;  // 1 / (B (B' + B))
  BigRational error_upper;  // 1 / (B B'),  B' = q_index
  IntervalReal log_denominator;
  IntervalReal achieved_exponent;  // -log(error_upper) / log B
};

/// u = [-1; 1, (filler, g(1)), (filler, g(2)), ..., filler, filler, ...]:
/// the filler repeats forever after the last stage, so every stage sits at an
/// interior index and the error sandwich is strict.
struct JarnikTarget {
  std::string forced_spec;
  BigInt filler;
  ContinuedFractionExpansion cf;  // the materialized prefix through the last stage
  std::vector<JarnikStage> stages;
};

JarnikTarget jarnik_generate(const ForcedSchedule& g, const BigInt& filler, long stages,
                             long budget = kDefaultBudgetBits);

/// Enclosure of the infinite expansion: its value lies between the last two
/// convergents of the prefix extended by two fillers.
IntervalReal jarnik_value(const JarnikTarget& u);

/// r/s with s <= Q and a certified |alpha - r/s| <= 1/(sQ).
struct DirichletApprox {
  BigInt r;
  BigInt s;
};
DirichletApprox dirichlet_approx(const IntervalReal& alpha, const BigInt& Q);

struct ExpApproximant {
  BigRational U;
  long L = 0;
  BigRational value;            // sum_{k<=L} U^k / k!
  BigRational remainder_bound;  // |U|^{L+1} / (L+1)!
  BigInt B;                     // denominator of U
  bool divides_lcm_bound = false;        // Q | B^L lcm(1..L)
  bool divides_factorial_bound = false;  // Q | B^L L!
  IntervalReal log_Q;
  IntervalReal log_B;
  std::optional<IntervalReal> c2;  // (log Q - L log B) / (L log L), L >= 2
};

/// DomainError unless -1 <= U <= 0, unless `allow_any_U`.
ExpApproximant exp_taylor_rational(const BigRational& U, long L, bool allow_any_U = false,
                                   long budget = kDefaultBudgetBits);

struct LcmValue {
  BigInt value;
  IntervalReal log_value;
};
LcmValue lcm_upto(long L, long budget = kDefaultBudgetBits);

nlohmann::json to_json(const ContinuedFractionExpansion& cf);
nlohmann::json to_json(const JarnikTarget& u);
/// Rebuilds the target from its raw data (forced spec, filler, stage count)
/// and checks the stored quotient list against it.
JarnikTarget jarnik_from_json(const nlohmann::json& j, long budget = kDefaultBudgetBits);

}  // namespace liouville
