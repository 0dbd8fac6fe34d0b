#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "liouville/bigint.hpp"
#include "liouville/interval.hpp"
#include "liouville/magnitude.hpp"

namespace liouville {

/// Strictly increasing exponents e_1 < e_2 < ... placing the nonzero ternary
/// digits.
class ExponentSchedule {
 public:
  enum class Kind { PaperTower, GeneralTower, Factorial, Custom };

  /// e_1 = 3, e_{n+1} = 3^{e_n}.
  static ExponentSchedule paper_tower();
  /// e_1 = first, e_{n+1} = base^{e_n}.
  static ExponentSchedule general_tower(BigInt base, BigInt first);
  /// e_n = (n + offset)!
  static ExponentSchedule factorial(long offset);
  /// Explicit list; when step > 0 the list continues arithmetically,
  /// otherwise indices past the list are a DomainError.
  static ExponentSchedule custom(std::vector<BigInt> values, BigInt step = 0);

  Kind kind() const { return kind_; }
  const BigInt& base() const { return base_; }
  const BigInt& first() const { return first_; }
  long offset() const { return offset_; }
  const std::vector<BigInt>& values() const { return values_; }
  const BigInt& step() const { return step_; }

  /// Indices past this are undefined (custom lists without a step).
  std::optional<long> length() const;

  /// False for schedules whose ratios e_{n+1}/e_n stay bounded.
  bool liouville_grade() const;

  friend bool operator==(const ExponentSchedule&, const ExponentSchedule&) = default;

 private:
  Kind kind_ = Kind::PaperTower;
  BigInt base_{3};
  BigInt first_{3};
  long offset_ = 0;
  std::vector<BigInt> values_;
  BigInt step_{0};
};

/// e_n as an exact integer when it fits under the materialization cap,
/// otherwise as a level-escalated magnitude.
ExtendedMagnitude schedule_exponent(const ExponentSchedule& s, long n);

/// e_n when it materializes; nullopt otherwise.
std::optional<BigInt> schedule_exponent_integer(const ExponentSchedule& s, long n);

/// Digits over {0, 2}: a finite prefix (positions 1..k) followed by a
/// constant or periodic tail.
class DigitSequence {
 public:
  enum class Tail { Constant, Periodic };

  DigitSequence() : DigitSequence({}, Tail::Constant, {2}) {}
  DigitSequence(std::vector<int> prefix, Tail tail, std::vector<int> pattern);

  static DigitSequence all(int digit) { return DigitSequence({}, Tail::Constant, {digit}); }

  int digit(long n) const;  // n >= 1

  /// First index > m carrying a 2, or nullopt when every later digit is 0.
  std::optional<long> next_two_after(long m) const;

  /// Infinitely many 2s, read off the tail rule.
  bool spiffy() const;

  const std::vector<int>& prefix() const { return prefix_; }
  Tail tail() const { return tail_; }
  const std::vector<int>& pattern() const { return pattern_; }

  friend bool operator==(const DigitSequence&, const DigitSequence&) = default;

 private:
  std::vector<int> prefix_;
  Tail tail_;
  std::vector<int> pattern_;
};

/// x = sum_n a_n 3^{-e_n}.
struct SpiffyNumber {
  ExponentSchedule schedule;
  DigitSequence digits;

  friend bool operator==(const SpiffyNumber&, const SpiffyNumber&) = default;
};

/// r_m = sum_{n<=m} a_n 3^{-e_n}.  UnmaterializableError when 3^{e_m} has
/// more than `cap_bits` bits.
BigRational truncate(const SpiffyNumber& x, long m,
                     std::size_t cap_bits = kMaterializationCapBits);

struct TailBound {
  ExtendedMagnitude generic;  // 3 * 3^{-e_{m+1}}
  ExtendedMagnitude refined;  // 3 * 3^{-e_{n'}}, n' the first later 2; zero if none
  std::optional<long> first_two;
};

TailBound tail_bound(const SpiffyNumber& x, long m);

/// (e_{m+1} - 1) / e_m.
BigRational liouville_exponent_lower(const SpiffyNumber& x, long m);

/// Enclosure of -log|x - r_m| / log q_m with q_m = 3^{e_m}; nullopt when the
/// tail vanishes.  Only needs e_m and e_{n'} as integers.
std::optional<IntervalReal> achieved_exponent(const SpiffyNumber& x, long m,
                                              long budget = kDefaultBudgetBits);

struct EpsilonStrongReport {
  bool holds = false;
  bool in_definition = true;  // false for eps <= 0
  IntervalReal required;      // (log q_m)^{1 + eps}
  std::optional<BigRational> achieved;  // -log_q(refined tail), when rational
};

EpsilonStrongReport epsilon_strong_check(const SpiffyNumber& x, const BigRational& eps, long m,
                                         long budget = kDefaultBudgetBits);

/// Smallest integer strictly greater than 3 N^{1/(1+eps)} + 2.
BigInt prop11_threshold(const BigInt& N, const BigRational& eps);

/// [r_m, r_m + refined tail]; an unmaterializable tail is replaced by a dyadic
/// upper bound below 2^-(budget + 64).
IntervalReal evaluate_enclosure(const SpiffyNumber& x, long m, long budget = kDefaultBudgetBits);

nlohmann::json to_json(const ExponentSchedule& s);
nlohmann::json to_json(const DigitSequence& d);
ExponentSchedule schedule_from_json(const nlohmann::json& j);
DigitSequence digits_from_json(const nlohmann::json& j);

// Mini-language used by the command line:
//   schedule: paper | tower:B:E1 | factorial[:OFFSET] | list:E1,E2,...[+STEP]
//   digits:   all2 | all0 | alt | list:D1,D2,...;tail:P1,P2,...
ExponentSchedule parse_schedule_spec(std::string_view spec);
DigitSequence parse_digit_spec(std::string_view spec);

}  // namespace liouville
