#include "liouville/schedule.hpp"

#include <algorithm>
#include <charconv>

#include "liouville/errors.hpp"

namespace liouville {

namespace {

// Factorials beyond this argument overflow the materialization cap.
constexpr long kFactorialArgCap = 200000;

const BigInt kThree(3);

void check_digit(int d) {
  if (d != 0 && d != 2) throw DomainError("digits must be 0 or 2");
}

bool fits_power_of_three(const BigInt& e, std::size_t cap_bits) {
  // bits(3^e) <= e * log2(3) + 1 < e * 1585/1000 + 1
  return e >= 0 && BigInt(e * 1585 / 1000 + 1) <= BigInt(static_cast<unsigned long>(cap_bits));
}

// 3 * 3^{-e}.
ExtendedMagnitude three_over_power(const ExtendedMagnitude& e) {
  if (e.level() == 0) return mag_from_power(kThree, BigInt(1 - e.value().get_num()));
  return mag_scale(mag_from_power(kThree, -1, e), BigRational(3));
}

BigInt require_integer(const ExponentSchedule& s, long n) {
  auto e = schedule_exponent_integer(s, n);
  if (!e) throw UnmaterializableError("e_" + std::to_string(n) + " is a tower");
  return *e;
}

// n' restricted to the indices the schedule defines.
std::optional<long> next_two(const SpiffyNumber& x, long m) {
  auto len = x.schedule.length();
  if (len && m >= *len) return std::nullopt;
  auto n = x.digits.next_two_after(m);
  if (n && len && *n > *len) return std::nullopt;
  return n;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<int> parse_digits(std::string_view text) {
  std::vector<int> out;
  if (text.empty()) return out;
  for (auto part : split(text, ',')) {
    int d = -1;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), d);
    if (ec != std::errc() || ptr != part.data() + part.size() || (d != 0 && d != 2)) {
      throw MalformedError("bad digit '" + std::string(part) + "'");
    }
    out.push_back(d);
  }
  return out;
}

}  // namespace

ExponentSchedule ExponentSchedule::paper_tower() { return {}; }

ExponentSchedule ExponentSchedule::general_tower(BigInt base, BigInt first) {
  if (base < 2 || first < 2) throw DomainError("tower needs base >= 2 and e_1 >= 2");
  ExponentSchedule s;
  s.kind_ = Kind::GeneralTower;
  s.base_ = std::move(base);
  s.first_ = std::move(first);
  return s;
}

ExponentSchedule ExponentSchedule::factorial(long offset) {
  if (offset < 0) throw DomainError("factorial offset must be >= 0");
  ExponentSchedule s;
  s.kind_ = Kind::Factorial;
  s.offset_ = offset;
  return s;
}

ExponentSchedule ExponentSchedule::custom(std::vector<BigInt> values, BigInt step) {
  if (values.empty()) throw DomainError("custom schedule needs at least one exponent");
  if (values.front() < 1) throw DomainError("exponents must be positive");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] <= values[i - 1]) throw DomainError("schedule must be strictly increasing");
  }
  if (step < 0) throw DomainError("negative schedule step");
  ExponentSchedule s;
  s.kind_ = Kind::Custom;
  s.values_ = std::move(values);
  s.step_ = std::move(step);
  return s;
}

std::optional<long> ExponentSchedule::length() const {
  if (kind_ == Kind::Custom && step_ == 0) return static_cast<long>(values_.size());
  return std::nullopt;
}

bool ExponentSchedule::liouville_grade() const { return kind_ != Kind::Custom; }

ExtendedMagnitude schedule_exponent(const ExponentSchedule& s, long n) {
  if (n < 1) throw DomainError("schedule index must be >= 1");
  switch (s.kind()) {
    case ExponentSchedule::Kind::PaperTower:
    case ExponentSchedule::Kind::GeneralTower: {
      ExtendedMagnitude e = ExtendedMagnitude::from_rational(BigRational(s.first()));
      for (long i = 1; i < n; ++i) {
        e = e.level() == 0 ? mag_from_power(s.base(), e.value().get_num())
                           : mag_from_power(s.base(), 1, e);
      }
      return e;
    }
    case ExponentSchedule::Kind::Factorial: {
      if (n + s.offset() > kFactorialArgCap) {
        throw UnmaterializableError("factorial exponent beyond the materialization cap");
      }
      return ExtendedMagnitude::from_rational(BigRational(factorial(n + s.offset())));
    }
    case ExponentSchedule::Kind::Custom: {
      const auto& v = s.values();
      if (static_cast<std::size_t>(n) <= v.size()) return ExtendedMagnitude::from_rational(BigRational(v[n - 1]));
      if (s.step() == 0) throw DomainError("index past the end of a finite schedule");
      BigInt e = v.back() + s.step() * static_cast<unsigned long>(n - static_cast<long>(v.size()));
      return ExtendedMagnitude::from_rational(BigRational(e));
    }
  }
  throw DomainError("unknown schedule kind");
}

std::optional<BigInt> schedule_exponent_integer(const ExponentSchedule& s, long n) {
  ExtendedMagnitude e = schedule_exponent(s, n);
  if (e.level() != 0) return std::nullopt;
  return e.value().get_num();
}

DigitSequence::DigitSequence(std::vector<int> prefix, Tail tail, std::vector<int> pattern)
    : prefix_(std::move(prefix)), tail_(tail), pattern_(std::move(pattern)) {
  for (int d : prefix_) check_digit(d);
  for (int d : pattern_) check_digit(d);
  if (pattern_.empty()) throw DomainError("digit tail rule needs a pattern");
  if (tail_ == Tail::Constant && pattern_.size() != 1) {
    throw DomainError("constant tail takes a single digit");
  }
}

int DigitSequence::digit(long n) const {
  if (n < 1) throw DomainError("digit index must be >= 1");
  if (static_cast<std::size_t>(n) <= prefix_.size()) return prefix_[n - 1];
  std::size_t k = static_cast<std::size_t>(n) - prefix_.size() - 1;
  return pattern_[k % pattern_.size()];
}

std::optional<long> DigitSequence::next_two_after(long m) const {
  long n = std::max(m, 0L) + 1;
  long stop = static_cast<long>(prefix_.size()) + static_cast<long>(pattern_.size());
  // one full period past the prefix decides the question
  for (long i = n; i <= n + stop; ++i) {
    if (digit(i) == 2) return i;
  }
  return std::nullopt;
}

bool DigitSequence::spiffy() const {
  return std::find(pattern_.begin(), pattern_.end(), 2) != pattern_.end();
}

BigRational truncate(const SpiffyNumber& x, long m, std::size_t cap_bits) {
  if (m < 1) throw DomainError("truncation level must be >= 1");
  if (auto len = x.schedule.length(); len && m > *len) m = *len;
  long last = 0;
  for (long n = 1; n <= m; ++n) {
    if (x.digits.digit(n) == 2) last = n;
  }
  if (last == 0) return BigRational(0);
  BigInt e_last = require_integer(x.schedule, last);
  if (!fits_power_of_three(e_last, cap_bits)) {
    throw UnmaterializableError("3^e_" + std::to_string(last) + " exceeds the materialization cap");
  }
  // Horner in base 3 over the scheduled positions.
  BigInt num = 0;
  BigInt prev = 0;
  for (long n = 1; n <= last; ++n) {
    BigInt e = require_integer(x.schedule, n);
    BigInt gap = e - prev;
    num *= pow(kThree, gap.get_ui());
    num += x.digits.digit(n);
    prev = e;
  }
  // the last digit is 2, so num is prime to 3 and the fraction is reduced
  BigRational r;
  mpz_swap(r.get_num_mpz_t(), num.get_mpz_t());
  r.get_den() = pow(kThree, e_last.get_ui());
  return r;
}

TailBound tail_bound(const SpiffyNumber& x, long m) {
  if (m < 1) throw DomainError("truncation level must be >= 1");
  TailBound t;
  auto len = x.schedule.length();
  if (!len || m < *len) t.generic = three_over_power(schedule_exponent(x.schedule, m + 1));
  t.first_two = next_two(x, m);
  if (t.first_two) t.refined = three_over_power(schedule_exponent(x.schedule, *t.first_two));
  return t;
}

BigRational liouville_exponent_lower(const SpiffyNumber& x, long m) {
  BigInt em = require_integer(x.schedule, m);
  BigInt next = require_integer(x.schedule, m + 1);
  return make_rational(next - 1, em);
}

std::optional<IntervalReal> achieved_exponent(const SpiffyNumber& x, long m, long budget) {
  auto n = next_two(x, m);
  if (!n) return std::nullopt;
  BigInt em = require_integer(x.schedule, m);
  BigInt en = require_integer(x.schedule, *n);
  // 2*3^{-e'} <= |x - r_m| < 3*3^{-e'}
  IntervalReal log3_2 = ln2(budget) / interval_log(IntervalReal(BigRational(3), budget));
  BigRational lo = make_rational(en - 1, em);
  BigRational hi = (BigRational(en) - log3_2.lower()) / BigRational(em);
  return IntervalReal(lo, hi, budget);
}

EpsilonStrongReport epsilon_strong_check(const SpiffyNumber& x, const BigRational& eps, long m,
                                         long budget) {
  if (eps < 0) throw DomainError("epsilon must be >= 0");
  EpsilonStrongReport r;
  r.in_definition = eps > 0;
  BigInt em = require_integer(x.schedule, m);
  IntervalReal log_q = IntervalReal(BigRational(em), budget) *
                       interval_log(IntervalReal(BigRational(3), budget));
  r.required = eps == 0 ? log_q : interval_pow(log_q, IntervalReal(BigRational(1 + eps), budget));
  ExtendedMagnitude q = mag_from_power(kThree, em);
  TailBound t = tail_bound(x, m);
  r.holds = mag_leq_power(t.refined, q, r.required, budget);
  if (t.first_two) {
    if (auto en = schedule_exponent_integer(x.schedule, *t.first_two)) {
      r.achieved = make_rational(*en - 1, em);
    }
  }
  return r;
}

BigInt prop11_threshold(const BigInt& N, const BigRational& eps) {
  if (N < 1) throw DomainError("N must be >= 1");
  if (eps <= 0) throw DomainError("epsilon must be positive");
  // 1/(1+eps) = q/(p+q); floor(3 N^{q/k}) = floor((3^k N^q)^{1/k}) with k = p+q
  const BigInt& p = eps.get_num();
  const BigInt& q = eps.get_den();
  BigInt k = p + q;
  if (!k.fits_ulong_p() || k > 4096) throw DomainError("epsilon denominator too large");
  unsigned long ku = k.get_ui();
  BigInt radicand = pow(kThree, ku) * pow(N, q.get_ui());
  return iroot_floor(radicand, ku) + 3;
}

IntervalReal evaluate_enclosure(const SpiffyNumber& x, long m, long budget) {
  BigRational r = truncate(x, m);
  TailBound t = tail_bound(x, m);
  if (t.refined.is_zero()) return IntervalReal(r, budget);
  if (t.refined.level() == 0) return IntervalReal(r, r + t.refined.value(), budget);
  BigRational cover = 1 / BigRational(BigInt(1) << static_cast<unsigned long>(budget + 64));
  if (mag_compare(t.refined, ExtendedMagnitude::from_rational(cover), budget) != std::strong_ordering::less) {
    throw UnmaterializableError("tail bound neither materializes nor falls below the working grid");
  }
  return IntervalReal(r, r + cover, budget);
}

nlohmann::json to_json(const ExponentSchedule& s) {
  switch (s.kind()) {
    case ExponentSchedule::Kind::PaperTower:
      return {{"kind", "paper_tower"}};
    case ExponentSchedule::Kind::GeneralTower:
      return {{"kind", "tower"}, {"base", to_string(s.base())}, {"e1", to_string(s.first())}};
    case ExponentSchedule::Kind::Factorial:
      return {{"kind", "factorial"}, {"offset", std::to_string(s.offset())}};
    case ExponentSchedule::Kind::Custom: {
      nlohmann::json vals = nlohmann::json::array();
      for (const auto& v : s.values()) vals.push_back(to_string(v));
      return {{"kind", "custom"}, {"values", vals}, {"step", to_string(s.step())}};
    }
  }
  throw DomainError("unknown schedule kind");
}

nlohmann::json to_json(const DigitSequence& d) {
  return {{"prefix", d.prefix()},
          {"tail", d.tail() == DigitSequence::Tail::Constant ? "constant" : "periodic"},
          {"pattern", d.pattern()}};
}

ExponentSchedule schedule_from_json(const nlohmann::json& j) {
  try {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "paper_tower") return ExponentSchedule::paper_tower();
    if (kind == "tower") {
      return ExponentSchedule::general_tower(parse_integer(j.at("base").get<std::string>()),
                                             parse_integer(j.at("e1").get<std::string>()));
    }
    if (kind == "factorial") {
      return ExponentSchedule::factorial(to_long(parse_integer(j.at("offset").get<std::string>())));
    }
    if (kind == "custom") {
      std::vector<BigInt> vals;
      for (const auto& v : j.at("values")) vals.push_back(parse_integer(v.get<std::string>()));
      return ExponentSchedule::custom(std::move(vals), parse_integer(j.at("step").get<std::string>()));
    }
    throw MalformedError("unknown schedule kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw MalformedError(std::string("schedule: ") + e.what());
  } catch (const DomainError& e) {
    throw MalformedError(std::string("schedule: ") + e.what());
  }
}

DigitSequence digits_from_json(const nlohmann::json& j) {
  try {
    std::string tail = j.at("tail").get<std::string>();
    if (tail != "constant" && tail != "periodic") throw MalformedError("unknown digit tail '" + tail + "'");
    return DigitSequence(j.at("prefix").get<std::vector<int>>(),
                         tail == "constant" ? DigitSequence::Tail::Constant : DigitSequence::Tail::Periodic,
                         j.at("pattern").get<std::vector<int>>());
  } catch (const nlohmann::json::exception& e) {
    throw MalformedError(std::string("digits: ") + e.what());
  } catch (const DomainError& e) {
    throw MalformedError(std::string("digits: ") + e.what());
  }
}

ExponentSchedule parse_schedule_spec(std::string_view spec) {
  try {
    if (spec == "paper") return ExponentSchedule::paper_tower();
    if (spec == "factorial") return ExponentSchedule::factorial(1);
    if (spec.starts_with("factorial:")) {
      return ExponentSchedule::factorial(to_long(parse_integer(spec.substr(10))));
    }
    if (spec.starts_with("tower:")) {
      auto parts = split(spec.substr(6), ':');
      if (parts.size() != 2) throw MalformedError("tower spec is tower:BASE:E1");
      return ExponentSchedule::general_tower(parse_integer(parts[0]), parse_integer(parts[1]));
    }
    if (spec.starts_with("list:")) {
      std::string_view body = spec.substr(5);
      BigInt step = 0;
      if (auto plus = body.find('+'); plus != std::string_view::npos) {
        step = parse_integer(body.substr(plus + 1));
        body = body.substr(0, plus);
      }
      std::vector<BigInt> vals;
      for (auto part : split(body, ',')) vals.push_back(parse_integer(part));
      return ExponentSchedule::custom(std::move(vals), step);
    }
  } catch (const DomainError& e) {
    throw MalformedError(std::string("schedule spec: ") + e.what());
  }
  throw MalformedError("unknown schedule spec '" + std::string(spec) + "'");
}

DigitSequence parse_digit_spec(std::string_view spec) {
  if (spec == "all2") return DigitSequence::all(2);
  if (spec == "all0") return DigitSequence::all(0);
  if (spec == "alt") return DigitSequence({}, DigitSequence::Tail::Periodic, {2, 0});
  if (spec.starts_with("list:")) {
    std::string_view body = spec.substr(5);
    std::vector<int> tail{0};
    if (auto semi = body.find(';'); semi != std::string_view::npos) {
      std::string_view t = body.substr(semi + 1);
      if (!t.starts_with("tail:")) throw MalformedError("digit spec tail must be 'tail:...'");
      tail = parse_digits(t.substr(5));
      if (tail.empty()) throw MalformedError("empty digit tail");
      body = body.substr(0, semi);
    }
    auto kind = tail.size() == 1 ? DigitSequence::Tail::Constant : DigitSequence::Tail::Periodic;
    return DigitSequence(parse_digits(body), kind, tail);
  }
  throw MalformedError("unknown digit spec '" + std::string(spec) + "'");
}

}  // namespace liouville
