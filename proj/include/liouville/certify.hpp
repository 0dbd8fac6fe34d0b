#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "liouville/bigint.hpp"
#include "liouville/diophantine.hpp"
#include "liouville/interval.hpp"
#include "liouville/magnitude.hpp"
#include "liouville/schedule.hpp"

namespace liouville {

inline constexpr int kCertificateSchemaVersion = 1;

enum class CheckVerdict { Pass, Fail, Undecided };
std::string to_string(CheckVerdict v);

// ---------------------------------------------------------------- tuned data

/// V_j = floor(e^{j^3}) and B_j = V_j^j.
struct TunedParameters {
  BigInt V;
  BigInt B;
};
TunedParameters build_tuned_parameters(long j);

struct TunedStage {
  long j = 1;
  long m = 1;  // truncation level m_j
  BigInt U, V;
  BigInt A, B;
  friend bool operator==(const TunedStage&, const TunedStage&) = default;
};

struct TunedStageVerdict {
  long j = 0;
  CheckVerdict v_floor = CheckVerdict::Undecided;        // V >= floor(e^{j^3})
  CheckVerdict cond_ii = CheckVerdict::Undecided;        // v_floor and |phi(r_m) - U/V| <= V^{-j^2}
  CheckVerdict cond_iii = CheckVerdict::Undecided;       // B >= 2 and |e^{U/V} - A/B| <= B^{-j^2}
  CheckVerdict size_coupling = CheckVerdict::Undecided;  // log B <= j log V, i.e. B <= V^j
  IntervalReal cond_ii_gap;   // |phi(r_m) - U/V|
  IntervalReal cond_iii_gap;  // |e^{U/V} - A/B|
  std::optional<IntervalReal> cond_ii_order;   // -log(gap) / log V
  std::optional<IntervalReal> cond_iii_order;  // -log(gap) / log B
  bool all_pass() const;
};

/// Checks each stage against x with certified enclosures.  Undecided checks
/// can be retried at a larger budget.
std::vector<TunedStageVerdict> verify_tuned_certificate(const std::vector<TunedStage>& stages,
                                                        const SpiffyNumber& x,
                                                        long budget = kDefaultBudgetBits);

/// Stage j at level m: V, B from build_tuned_parameters, U/V the nearest
/// grid point to phi(r_m), A/B the nearest grid point to e^{U/V}.
TunedStage build_tuned_stage(const SpiffyNumber& x, long j, long m, long budget = kDefaultBudgetBits);

struct TuneResult {
  std::vector<int> block;  // digits at positions lo..hi
  BigRational r;           // truncation at hi with the chosen block
  IntervalReal gap;        // |phi(r) - target|
  bool met = false;        // gap certified <= tolerance
  bool exhaustive = false; // search completed: the block is optimal at the working precision
};

/// Chooses the digits at positions lo..hi (earlier digits come from x) to
/// bring phi(r_hi) close to `target`.  Branch and bound over the Cantor
/// ordering of blocks, best-so-far when the node budget runs out.  A miss is
/// reported through `met`, never thrown.
TuneResult tune_digits_search(const SpiffyNumber& x, const BigRational& target, long lo, long hi,
                              const ExtendedMagnitude& tolerance, long budget = kDefaultBudgetBits);

// ------------------------------------------------------------- error chains

struct ErrorTerm {
  std::string name;
  ExtendedMagnitude value;
};

struct ErrorChain {
  std::vector<ErrorTerm> terms;
  ExtendedMagnitude total;  // left fold of mag_add over terms
  bool total_exact = true;
  std::string dominant;
};

ErrorChain sum_terms(std::vector<ErrorTerm> terms, long budget = kDefaultBudgetBits);

/// |x^x - A/B| <= M_phi * tail + target gap + exp gap, with r_m as the lower
/// end of the Lipschitz interval.  The gaps are V^{-j^2} and B^{-j^2} when
/// the stage meets them, the certified measured gaps otherwise.
ErrorChain selfpower_error_chain(const SpiffyNumber& x, const TunedStage& stage,
                                 long budget = kDefaultBudgetBits);

// ------------------------------------------------------ self-power (exp(u))

struct SelfPowerStage {
  long n = 0;
  BigRational approximant;  // A_n / B_n
  long L = 0;
  BigInt P, Q;              // T_L(A_n/B_n) = P/Q
  ErrorChain error;
  std::optional<IntervalReal> achieved_exponent;  // -log(total) / log Q
};

/// e^U approximated by T_L(U), given |u - U| <= u_gap.
SelfPowerStage exp_stage(const BigRational& U, const BigRational& u_gap, long L,
                         long budget = kDefaultBudgetBits);

/// Degree rule: "n^K" or "const:K".
long apply_degree_rule(std::string_view rule, long n);

SelfPowerStage exp_of_jarnik_certificate(const JarnikTarget& u, long n, std::string_view L_rule,
                                         long budget = kDefaultBudgetBits);

// ------------------------------------------------------ polynomial closure

struct Monomial {
  BigInt coeff;
  std::vector<unsigned long> exps;
};

/// Integer polynomial in variables X1..Xt.
struct Polynomial {
  std::vector<Monomial> terms;
  std::size_t variables = 0;

  unsigned long total_degree() const;
  BigRational evaluate(const std::vector<BigRational>& at) const;
  IntervalReal evaluate(const std::vector<IntervalReal>& at) const;
  /// max_j sum over monomials of |c| * alpha_j: bounds |dP/dX_j| on [0,1]^t.
  BigInt gradient_bound() const;
  bool linear() const;
};

/// Sums of monomials such as "3*X^2*Y - 2*Z + 1" or "3^27*X - 3^27*Y - 2".
/// Variables: X, Y, Z, W, or X1, X2, ... (X and X1 are the same variable).
Polynomial parse_polynomial(std::string_view text);
std::string to_string(const Polynomial& p);

struct PolyClosureStage {
  long m = 0;
  BigRational R;         // P(r_m^(1), ..., r_m^(t))
  unsigned long D = 0;   // total degree
  bool B_divides_qD = false;
  BigInt M;              // gradient bound
  BigInt C;              // 3 M t
  ExtendedMagnitude tail;   // max over inputs of the digit-aware tail
  ExtendedMagnitude error;  // C * tail
  std::optional<IntervalReal> achieved_exponent;     // base B_m
  std::optional<IntervalReal> achieved_exponent_qm;  // base q_m = 3^{e_m}
  bool rational = false;  // P(x) = R exactly
};

/// DomainError for inputs on different schedules or t != variable count.
PolyClosureStage poly_closure_certificate(const Polynomial& P, const std::vector<SpiffyNumber>& inputs,
                                          long m, long budget = kDefaultBudgetBits);

/// True when x and y have the same digit at every index > m.
bool same_tail_after(const DigitSequence& x, const DigitSequence& y, long m);

// ---------------------------------------------------------------- pairwise

enum class GapRule { Literal, Relaxed };  // e' >= exp(e)  /  e' >= 2e

struct PairwiseStage {
  long k = 0;
  long m = 0;
  BigRational anchor;
  BigInt dirichlet_Q;
  bool dirichlet_capped = false;
  BigInt r, s;          // log a_k ~ r/s
  BigRational U_tilde;  // a_k r/s
  BigInt d;             // q_k s_k
  long L = 0;
  BigInt P, Q;
  ErrorChain error;
  std::optional<IntervalReal> achieved_exponent;
  std::optional<GapRule> gap_to_next;  // strongest rule met by (m_k, m_{k+1})
};

/// AnchorMismatchError unless x and y truncate to the same anchor at level
/// m; DomainError unless the anchor lies in (0, 1/e).
PairwiseStage pairwise_power_certificate(const SpiffyNumber& x, const SpiffyNumber& y,
                                         const std::vector<long>& levels, long k,
                                         long budget = kDefaultBudgetBits);

std::optional<GapRule> gap_rule_met(const ExponentSchedule& s, long m, long m_next,
                                    long budget = kDefaultBudgetBits);

// -------------------------------------------------------------- documents

nlohmann::json tuned_certificate(const SpiffyNumber& x, const std::vector<TunedStage>& stages,
                                 long budget = kDefaultBudgetBits);
nlohmann::json selfpower_certificate(const JarnikTarget& u, const std::vector<long>& stages,
                                     std::string_view L_rule, const std::vector<BigInt>& targets,
                                     long budget = kDefaultBudgetBits);
nlohmann::json poly_certificate(const Polynomial& P, const std::vector<SpiffyNumber>& inputs,
                                const std::vector<long>& levels, const std::vector<BigInt>& targets,
                                long budget = kDefaultBudgetBits);
nlohmann::json pairwise_certificate(const SpiffyNumber& x, const SpiffyNumber& y,
                                    const std::vector<long>& levels, GapRule required,
                                    const std::vector<BigInt>& targets, long budget = kDefaultBudgetBits);

/// Every requested N is met by some stage (exponent certified > N), or the
/// verdict is a rational escape; tuned documents also need every condition.
bool certificate_succeeded(const nlohmann::json& cert);

struct VerifyReport {
  enum class Status { Accepted, Rejected, Malformed };
  Status status = Status::Malformed;
  std::string verdict;        // "vacuous", "rational", "approximations"
  std::string failing_check;  // first failed check, empty when accepted
  std::vector<std::pair<long, std::optional<IntervalReal>>> achieved;  // stage -> exponent
};

/// Re-derives every stored value from the raw fields and rejects on the
/// first disagreement or failed inequality.  Uses the document's budget
/// unless `budget` is given.  IncomparableError propagates (retryable).
VerifyReport verify_certificate(const nlohmann::json& cert, std::optional<long> budget = std::nullopt);

nlohmann::json to_json(const SpiffyNumber& x);
SpiffyNumber spiffy_from_json(const nlohmann::json& j);

}  // namespace liouville
