#include "liouville/magnitude.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>

#include "liouville/errors.hpp"

namespace liouville {

namespace {

// Largest exponent argument we are willing to materialize when lowering an
// iterated log enclosure by one level.
const BigRational kLowerCap(20000);

BigRational neg_cap(long budget) { return BigRational(4 * budget + 64); }

std::strong_ordering reverse(std::strong_ordering o) {
  if (o == std::strong_ordering::less) return std::strong_ordering::greater;
  if (o == std::strong_ordering::greater) return std::strong_ordering::less;
  return o;
}

std::strong_ordering compare_exact(const BigRational& a, const BigRational& b) {
  int c = cmp(a, b);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// Lower bound of exp^(k)(x), saturating at cap.
BigRational exp_iter_lower(BigRational x, int k, const BigRational& cap, long budget) {
  for (int i = 0; i < k; ++i) {
    if (x >= cap) return cap;
    x = interval_exp(IntervalReal(x, budget)).lower();
  }
  return std::min(x, cap);
}

// Upper bound of e^-x for every x >= x_lo.
BigRational exp_neg_upper(const BigRational& x_lo, long budget) {
  BigRational x = std::min(x_lo, neg_cap(budget));
  return interval_exp(IntervalReal(BigRational(-x), budget)).upper();
}

BigRational max_abs(const IntervalReal& x) {
  return std::max(abs(x.lower()), abs(x.upper()));
}

// w' with exp^(k)(w') covering exp^(k)(w) + c.
IntervalReal shift(int k, const IntervalReal& w, const IntervalReal& c, long budget) {
  if (k == 0) return w + c;
  BigRational x_lo = exp_iter_lower(w.lower(), k - 1, neg_cap(budget), budget);
  BigRational rho = max_abs(c) * exp_neg_upper(x_lo, budget);
  if (rho > BigRational(1, 2)) {
    throw IncomparableError("iterated log correction too large to certify");
  }
  // ln(1 + y) lies in [-2|y|, |y|] for |y| <= 1/2.
  IntervalReal corr(BigRational(-2 * rho), BigRational(2 * rho), budget);
  return shift(k - 1, w, corr, budget);
}

std::optional<BigRational> try_materialize(const ExtendedMagnitude& m) {
  if (m.level() == 0) return m.value();
  if (m.level() != 1) return std::nullopt;
  const BigRational& e = m.exponent().value();
  if (e.get_den() != 1) return std::nullopt;
  const BigInt& n = e.get_num();
  if (!n.fits_ulong_p()) return std::nullopt;
  if (n.get_ui() * bit_length(m.base()) > kMaterializationCapBits) return std::nullopt;
  BigInt p = pow(m.base(), n.get_ui());
  return m.sign() > 0 ? BigRational(m.scale() * p) : BigRational(m.scale() / p);
}

// Signed exponent of a level-1 magnitude with an integer exponent.
std::optional<BigInt> integer_exponent(const ExtendedMagnitude& m) {
  if (m.level() != 1) return std::nullopt;
  const BigRational& e = m.exponent().value();
  if (e.get_den() != 1) return std::nullopt;
  return m.sign() > 0 ? BigInt(e.get_num()) : BigInt(-e.get_num());
}

bool lower_once(LogEnclosure& l) {
  if (l.depth < 2 || l.w.upper() > kLowerCap) return false;
  IntervalReal e = interval_exp(l.w);
  if (l.depth == 2) {
    l.w = l.sign > 0 ? e : -e;
    l.sign = 1;
  } else {
    l.w = e;
  }
  --l.depth;
  return true;
}

bool raise_once(LogEnclosure& l) {
  if (l.depth == 1) {
    if (l.w.contains(BigRational(0))) return false;
    l.sign = l.w.positive() ? 1 : -1;
    l.w = interval_log(abs(l.w));
  } else {
    if (l.w.lower() <= 0) return false;
    l.w = interval_log(l.w);
  }
  ++l.depth;
  return true;
}

std::optional<std::strong_ordering> compare_logs(LogEnclosure a, LogEnclosure b, long budget) {
  for (int guard = 0; guard < 64; ++guard) {
    if (a.depth == b.depth) {
      if (a.depth == 1) return certified_compare(a.w, b.w);
      if (a.sign != b.sign) {
        return a.sign < b.sign ? std::strong_ordering::less : std::strong_ordering::greater;
      }
      auto c = certified_compare(a.w, b.w);
      if (!c) return std::nullopt;
      return a.sign > 0 ? *c : reverse(*c);
    }
    bool a_deeper = a.depth > b.depth;
    LogEnclosure& deep = a_deeper ? a : b;
    LogEnclosure& shallow = a_deeper ? b : a;
    if (lower_once(deep)) continue;
    if (raise_once(shallow)) continue;
    if (shallow.depth > 1 && lower_once(shallow)) continue;
    if (shallow.depth > 1) return std::nullopt;
    // |ln shallow| is bounded by a small rational while |ln deep| is at
    // least exp^(depth-1)(w.lo): the deep side dominates.
    BigRational small = max_abs(shallow.w);
    BigRational big = exp_iter_lower(deep.w.lower(), deep.depth - 1, BigRational(1) << 64, budget);
    if (big <= small) return std::nullopt;
    auto deep_vs_shallow = deep.sign > 0 ? std::strong_ordering::greater : std::strong_ordering::less;
    return a_deeper ? deep_vs_shallow : reverse(deep_vs_shallow);
  }
  return std::nullopt;
}

LogEnclosure scale_log(LogEnclosure l, const IntervalReal& factor, long budget) {
  if (l.depth == 1) {
    l.w = l.w * factor;
  } else {
    l.w = shift(l.depth - 2, l.w, interval_log(factor), budget);
  }
  return l;
}

LogEnclosure negate_log(LogEnclosure l) {
  if (l.depth == 1) {
    l.w = -l.w;
  } else {
    l.sign = -l.sign;
  }
  return l;
}

void check_positive(const ExtendedMagnitude& m, const char* what) {
  if (m.is_zero()) throw DomainError(std::string("zero magnitude in ") + what);
}

}  // namespace

ExtendedMagnitude ExtendedMagnitude::from_rational(BigRational value) {
  if (value < 0) throw DomainError("magnitudes are non-negative");
  ExtendedMagnitude m;
  m.value_ = std::move(value);
  return m;
}

ExtendedMagnitude ExtendedMagnitude::tower(BigRational scale, BigInt base, int sign,
                                           ExtendedMagnitude exponent) {
  if (base < 2) throw DomainError("tower base must be >= 2");
  if (scale <= 0) throw DomainError("tower scale must be positive");
  if (sign != 1 && sign != -1) throw DomainError("tower sign must be +1 or -1");
  ExtendedMagnitude m;
  m.level_ = exponent.level_ + 1;
  m.sign_ = sign;
  m.value_ = std::move(scale);
  m.base_ = std::move(base);
  m.exponent_ = std::make_shared<const ExtendedMagnitude>(std::move(exponent));
  return m;
}

bool operator==(const ExtendedMagnitude& a, const ExtendedMagnitude& b) {
  if (a.level_ != b.level_ || a.value_ != b.value_) return false;
  if (a.level_ == 0) return true;
  return a.sign_ == b.sign_ && a.base_ == b.base_ && *a.exponent_ == *b.exponent_;
}

std::string ExtendedMagnitude::to_display() const {
  if (level_ == 0) {
    if (value_ == 0) return "0";
    std::string exact = liouville::to_string(value_);
    if (exact.size() <= 24) return exact;
    IntervalReal l = log_interval(*this, 64);
    double log10v = to_double(l.midpoint()) / std::log(10.0);
    double e = std::floor(log10v);
    char buf[64];
    std::snprintf(buf, sizeof buf, "~%.6fe%+.0f", std::pow(10.0, log10v - e), e);
    return buf;
  }
  std::string s = value_ == 1 ? "" : liouville::to_string(value_) + "*";
  std::string e = exponent_->to_display();
  return s + base_.get_str() + "^(" + (sign_ < 0 ? "-" : "") + e + ")";
}

LogEnclosure log_enclosure(const ExtendedMagnitude& m, long budget) {
  check_positive(m, "log_enclosure");
  if (m.level() == 0) return {1, 1, interval_log(IntervalReal(m.value(), budget))};
  IntervalReal lnb = interval_log(IntervalReal(BigRational(m.base()), budget));
  IntervalReal lns = interval_log(IntervalReal(m.scale(), budget));
  const ExtendedMagnitude& e = m.exponent();
  if (e.level() == 0) {
    IntervalReal term = IntervalReal(e.value(), budget) * lnb;
    return {1, 1, m.sign() > 0 ? lns + term : lns - term};
  }
  LogEnclosure le = log_enclosure(e, budget);
  BigRational ln_e_lo;
  if (le.depth == 1) {
    ln_e_lo = le.w.lower();
  } else {
    if (le.sign < 0) throw IncomparableError("tower exponent below 1");
    ln_e_lo = exp_iter_lower(le.w.lower(), le.depth - 1, neg_cap(budget), budget);
  }
  // ln v = sign * E ln b * (1 + delta), |delta| <= |ln s| / (E ln b)
  BigRational rho = max_abs(lns) / lnb.lower() * exp_neg_upper(ln_e_lo, budget);
  if (rho > BigRational(1, 2)) throw IncomparableError("tower prefactor dominates its exponent");
  IntervalReal c = interval_log(lnb) + IntervalReal(BigRational(-2 * rho), BigRational(2 * rho), budget);
  if (le.depth == 1) return {2, m.sign(), le.w + c};
  return {le.depth + 1, m.sign(), shift(le.depth - 1, le.w, c, budget)};
}

IntervalReal log_interval(const ExtendedMagnitude& m, long budget) {
  LogEnclosure l = log_enclosure(m, budget);
  while (l.depth > 1) {
    if (!lower_once(l)) throw UnmaterializableError("log of magnitude " + m.to_display());
  }
  return l.w;
}

ExtendedMagnitude mag_from_power(const BigInt& base, const BigInt& exponent) {
  if (base < 2) throw DomainError("mag_from_power: base must be >= 2");
  if (exponent == 0) return ExtendedMagnitude::from_rational(BigRational(1));
  BigInt n = exponent < 0 ? BigInt(-exponent) : exponent;
  if (n.fits_ulong_p() && n.get_ui() <= kMaterializationCapBits / bit_length(base)) {
    BigInt p = pow(base, n.get_ui());
    return ExtendedMagnitude::from_rational(exponent > 0 ? BigRational(p) : BigRational(1 / BigRational(p)));
  }
  return ExtendedMagnitude::tower(BigRational(1), base, exponent > 0 ? 1 : -1,
                                  ExtendedMagnitude::from_rational(BigRational(n)));
}

ExtendedMagnitude mag_from_power(const BigInt& base, int sign, const ExtendedMagnitude& exponent) {
  if (exponent.level() == 0 && exponent.value().get_den() == 1) {
    BigInt n = exponent.value().get_num();
    return mag_from_power(base, sign > 0 ? n : BigInt(-n));
  }
  if (exponent.is_zero()) return ExtendedMagnitude::from_rational(BigRational(1));
  return ExtendedMagnitude::tower(BigRational(1), base, sign, exponent);
}

std::strong_ordering mag_compare(const ExtendedMagnitude& a, const ExtendedMagnitude& b,
                                 long budget) {
  if (a.is_zero() || b.is_zero()) {
    if (a.is_zero() && b.is_zero()) return std::strong_ordering::equal;
    return a.is_zero() ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (a == b) return std::strong_ordering::equal;
  auto ma = try_materialize(a);
  auto mb = try_materialize(b);
  if (ma && mb) return compare_exact(*ma, *mb);
  // Same base, integer exponents: compare s1 * b^(e1 - e2) with s2 exactly.
  auto ea = integer_exponent(a);
  auto eb = integer_exponent(b);
  if (ea && eb && a.base() == b.base()) {
    BigInt d = *ea - *eb;
    BigInt n = d < 0 ? BigInt(-d) : d;
    if (n.fits_ulong_p() && n.get_ui() <= kMaterializationCapBits / bit_length(a.base())) {
      BigInt p = pow(a.base(), n.get_ui());
      return d >= 0 ? compare_exact(a.scale() * p, b.scale()) : compare_exact(a.scale(), b.scale() * p);
    }
  }
  for (long bits = budget; bits <= 4 * budget; bits *= 2) {
    auto r = compare_logs(log_enclosure(a, bits), log_enclosure(b, bits), bits);
    if (r) return *r;
  }
  throw IncomparableError("cannot separate " + a.to_display() + " and " + b.to_display());
}

namespace {

bool leq_power_logs(const ExtendedMagnitude& m, const ExtendedMagnitude& Q,
                    const IntervalReal& N, long budget) {
  for (long bits = budget; bits <= 4 * budget; bits *= 2) {
    LogEnclosure lq = log_enclosure(Q, bits);
    LogEnclosure target = negate_log(scale_log(lq, N.with_budget(bits), bits));
    auto r = compare_logs(log_enclosure(m, bits), target, bits);
    if (r) return *r != std::strong_ordering::greater;
  }
  throw IncomparableError("cannot decide " + m.to_display() + " <= (" + Q.to_display() + ")^-N");
}

void check_q(const ExtendedMagnitude& Q) {
  if (mag_compare(Q, ExtendedMagnitude::from_rational(BigRational(1))) != std::strong_ordering::greater) {
    throw DomainError("mag_leq_power: Q must exceed 1");
  }
}

}  // namespace

bool mag_leq_power(const ExtendedMagnitude& m, const ExtendedMagnitude& Q, const BigInt& N,
                   long budget) {
  if (N < 1) throw DomainError("mag_leq_power: N must be positive");
  check_q(Q);
  if (m.is_zero()) return true;
  auto mq = try_materialize(Q);
  auto mm = try_materialize(m);
  if (mq && mm && mq->get_den() == 1 && N.fits_ulong_p() &&
      N.get_ui() <= kMaterializationCapBits / bit_length(mq->get_num())) {
    BigInt qn = pow(mq->get_num(), N.get_ui());
    return *mm * qn <= 1;
  }
  if (auto e = integer_exponent(Q); e && Q.scale() == 1) {
    // Q = b^e exactly, so Q^-N = b^(-eN).
    ExtendedMagnitude target = mag_from_power(Q.base(), BigInt(-*e * N));
    return mag_compare(m, target, budget) != std::strong_ordering::greater;
  }
  return leq_power_logs(m, Q, IntervalReal(BigRational(N), budget), budget);
}

bool mag_leq_power(const ExtendedMagnitude& m, const ExtendedMagnitude& Q, const IntervalReal& N,
                   long budget) {
  if (N.lower() <= 0) throw DomainError("mag_leq_power: N must be positive");
  check_q(Q);
  if (m.is_zero()) return true;
  if (N.is_point() && N.lower().get_den() == 1) return mag_leq_power(m, Q, N.lower().get_num(), budget);
  return leq_power_logs(m, Q, N, budget);
}

ExtendedMagnitude mag_scale(const ExtendedMagnitude& m, const BigRational& factor) {
  if (factor < 0) throw DomainError("mag_scale: negative factor");
  if (factor == 0 || m.is_zero()) return ExtendedMagnitude::zero();
  if (m.level() == 0) return ExtendedMagnitude::from_rational(m.value() * factor);
  return ExtendedMagnitude::tower(m.scale() * factor, m.base(), m.sign(), m.exponent());
}

ExtendedMagnitude mag_mul(const ExtendedMagnitude& a, const ExtendedMagnitude& b) {
  if (a.level() == 0) return mag_scale(b, a.value());
  if (b.level() == 0) return mag_scale(a, b.value());
  if (a.base() == b.base() && a.level() == 1 && b.level() == 1) {
    BigRational e = a.sign() * a.exponent().value() + b.sign() * b.exponent().value();
    BigRational s = a.scale() * b.scale();
    if (e.get_den() == 1) return mag_scale(mag_from_power(a.base(), e.get_num()), s);
    return ExtendedMagnitude::tower(s, a.base(), e > 0 ? 1 : -1,
                                    ExtendedMagnitude::from_rational(abs(e)));
  }
  throw DomainError("mag_mul: cannot combine " + a.to_display() + " and " + b.to_display());
}

MagnitudeSum mag_add(const ExtendedMagnitude& a, const ExtendedMagnitude& b, long budget) {
  if (a.is_zero()) return {b, true};
  if (b.is_zero()) return {a, true};
  auto ma = try_materialize(a);
  auto mb = try_materialize(b);
  if (ma && mb) return {ExtendedMagnitude::from_rational(*ma + *mb), true};
  auto ea = integer_exponent(a);
  auto eb = integer_exponent(b);
  if (ea && eb && a.base() == b.base()) {
    BigInt lo = std::min(*ea, *eb);
    BigInt d = (*ea > *eb ? *ea : *eb) - lo;
    if (d.fits_ulong_p() && d.get_ui() <= kMaterializationCapBits / bit_length(a.base())) {
      BigInt p = pow(a.base(), d.get_ui());
      BigRational s = *ea > *eb ? BigRational(a.scale() * p + b.scale()) : BigRational(a.scale() + b.scale() * p);
      if (*ea == *eb) s = a.scale() + b.scale();
      return {mag_scale(mag_from_power(a.base(), lo), s), true};
    }
  }
  bool a_big = mag_compare(a, b, budget) != std::strong_ordering::less;
  const ExtendedMagnitude& big = a_big ? a : b;
  const ExtendedMagnitude& small = a_big ? b : a;
  BigRational eps = BigRational(1) / BigRational(BigInt(1) << budget);
  if (mag_compare(small, mag_scale(big, eps), budget) != std::strong_ordering::greater) {
    return {mag_scale(big, 1 + eps), false};
  }
  return {mag_scale(big, BigRational(2)), false};
}

nlohmann::json to_json(const ExtendedMagnitude& m) {
  nlohmann::json j;
  j["level"] = m.level();
  if (m.level() == 0) {
    j["sign"] = 1;
    j["body"] = to_string(m.value());
  } else {
    j["sign"] = m.sign();
    j["body"] = {{"scale", to_string(m.scale())},
                 {"base", to_string(m.base())},
                 {"exponent", to_json(m.exponent())}};
  }
  return j;
}

ExtendedMagnitude magnitude_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("level") || !j.contains("sign") || !j.contains("body")) {
    throw MalformedError("magnitude: expected {level, sign, body}");
  }
  if (!j["level"].is_number_integer() || !j["sign"].is_number_integer()) {
    throw MalformedError("magnitude: level and sign must be integers");
  }
  int level = j["level"].get<int>();
  int sign = j["sign"].get<int>();
  if (sign != 1 && sign != -1) throw MalformedError("magnitude: sign must be +1 or -1");
  const auto& body = j["body"];
  if (level == 0) {
    if (!body.is_string() || sign != 1) throw MalformedError("magnitude: level-0 body must be \"num/den\"");
    BigRational v = parse_rational(body.get<std::string>());
    if (v < 0) throw MalformedError("magnitude: negative value");
    return ExtendedMagnitude::from_rational(v);
  }
  if (!body.is_object() || !body.contains("scale") || !body.contains("base") ||
      !body.contains("exponent") || !body["scale"].is_string() || !body["base"].is_string()) {
    throw MalformedError("magnitude: tower body must hold scale, base, exponent");
  }
  BigRational scale = parse_rational(body["scale"].get<std::string>());
  BigInt base = parse_integer(body["base"].get<std::string>());
  if (scale <= 0 || base < 2) throw MalformedError("magnitude: bad tower scale or base");
  ExtendedMagnitude e = magnitude_from_json(body["exponent"]);
  if (e.level() != level - 1) throw MalformedError("magnitude: level does not match exponent depth");
  return ExtendedMagnitude::tower(scale, base, sign, e);
}

}  // namespace liouville
