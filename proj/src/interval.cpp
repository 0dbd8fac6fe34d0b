#include "liouville/interval.hpp"

#include <algorithm>
#include <utility>

#include "liouville/errors.hpp"

namespace liouville {

namespace {

constexpr long kGuardBits = 24;

// Interval of integers [lo, hi] at scale 2^-bits.
struct Fixed {
  BigInt lo;
  BigInt hi;
};

BigInt shifted_floor(const BigRational& q, long bits) {
  BigInt num = q.get_num() << bits;
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
  return r;
}

BigInt shifted_ceil(const BigRational& q, long bits) {
  BigInt num = q.get_num() << bits;
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
  return r;
}

BigInt tdiv(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_tdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

BigRational from_fixed(const BigInt& v, long bits) { return make_rational(v, BigInt(1) << bits); }

// Sum of t^i/i! at the exact fixed-point argument T/2^W, |T/2^W| <= 1/2.
// Returns the truncated sum S and an error bound E (in ulps of 2^-W).
std::pair<BigInt, BigInt> exp_series(const BigInt& T, long W) {
  const BigInt one = BigInt(1) << W;
  BigInt term = one;
  BigInt sum = one;
  long n = 0;
  // Each computed term is within 2 ulps of the exact one (|t| <= 1/2); once a
  // term truncates to zero the exact remainder is at most 2 ulps.
  for (long i = 1;; ++i) {
    term = tdiv(term * T, one * i);
    sum += term;
    n = i;
    if (term == 0) break;
  }
  return {sum, BigInt(2 * n + 4)};
}

// exp on an exact rational, enclosure at absolute grid 2^-bits.
std::pair<BigRational, BigRational> exp_rational(const BigRational& r, long bits) {
  if (r == 0) return {BigRational(1), BigRational(1)};
  const BigRational a = abs(r);
  if (r < 0 && a > 1) {
    // Keep relative precision for tiny results by inverting exp(|r|).
    long tiny_bits = bits + static_cast<long>(to_double(a) * 1.5) + 8;
    auto [lo, hi] = exp_rational(a, tiny_bits);
    BigRational inv_lo = 1 / hi;
    BigRational inv_hi = 1 / lo;
    return {round_down(inv_lo, tiny_bits), round_up(inv_hi, tiny_bits)};
  }
  long s = static_cast<long>(bit_length(floor(a))) + 1;
  long mag = r > 0 ? static_cast<long>(to_double(a) * 1.5) + 2 : 0;
  long W = bits + s + mag + kGuardBits + static_cast<long>(bit_length(BigInt(s)));
  BigRational t = r / BigRational(BigInt(1) << s);
  BigInt T_lo = shifted_floor(t, W);
  BigInt T_hi = shifted_ceil(t, W);
  auto [S_lo, E_lo] = exp_series(T_lo, W);
  auto [S_hi, E_hi] = exp_series(T_hi, W);
  Fixed f{S_lo - E_lo, S_hi + E_hi};
  if (f.lo < 0) f.lo = 0;
  for (long i = 0; i < s; ++i) {
    BigInt lo2 = f.lo * f.lo;
    BigInt hi2 = f.hi * f.hi;
    mpz_fdiv_q_2exp(f.lo.get_mpz_t(), lo2.get_mpz_t(), static_cast<mp_bitcnt_t>(W));
    mpz_cdiv_q_2exp(f.hi.get_mpz_t(), hi2.get_mpz_t(), static_cast<mp_bitcnt_t>(W));
  }
  return {round_down(from_fixed(f.lo, W), bits), round_up(from_fixed(f.hi, W), bits)};
}

// atanh(Z/2^W) for exact fixed-point |Z/2^W| <= 1/3.
std::pair<BigInt, BigInt> atanh_series(const BigInt& Z, long W) {
  const BigInt one = BigInt(1) << W;
  BigInt z2;
  mpz_tdiv_q_2exp(z2.get_mpz_t(), BigInt(Z * Z).get_mpz_t(), static_cast<mp_bitcnt_t>(W));
  BigInt power = Z;
  BigInt sum = Z;
  long n = 0;
  // Powers carry at most 2 ulps of error, each divided term at most 2 more;
  // the remainder after the first vanishing power is below 1 ulp.
  for (long i = 1;; ++i) {
    power = tdiv(power * z2, one);
    BigInt term = tdiv(power, BigInt(2 * i + 1));
    sum += term;
    n = i;
    if (power == 0) break;
  }
  return {sum, BigInt(4 * n + 6)};
}

std::pair<BigRational, BigRational> atanh_rational(const BigRational& z, long bits) {
  long W = bits + kGuardBits;
  auto [S_lo, E_lo] = atanh_series(shifted_floor(z, W), W);
  auto [S_hi, E_hi] = atanh_series(shifted_ceil(z, W), W);
  return {round_down(from_fixed(S_lo - E_lo, W), bits), round_up(from_fixed(S_hi + E_hi, W), bits)};
}

std::pair<BigRational, BigRational> ln2_bounds(long bits) {
  auto [lo, hi] = atanh_rational(BigRational(1, 3), bits + 2);
  return {round_down(2 * lo, bits), round_up(2 * hi, bits)};
}

std::pair<BigRational, BigRational> log_rational(const BigRational& r, long bits) {
  if (r <= 0) throw DomainError("log of a non-positive number");
  if (r == 1) return {BigRational(0), BigRational(0)};
  long k = static_cast<long>(bit_length(r.get_num())) - static_cast<long>(bit_length(r.get_den()));
  BigRational y = r;
  if (k > 0) y /= BigRational(BigInt(1) << k);
  if (k < 0) y *= BigRational(BigInt(1) << -k);
  BigRational z = (y - 1) / (y + 1);
  long W = bits + 4 + static_cast<long>(bit_length(BigInt(k < 0 ? -k : k)));
  auto [a_lo, a_hi] = atanh_rational(z, W);
  BigRational lo = 2 * a_lo;
  BigRational hi = 2 * a_hi;
  if (k != 0) {
    auto [l2_lo, l2_hi] = ln2_bounds(W);
    if (k > 0) {
      lo += k * l2_lo;
      hi += k * l2_hi;
    } else {
      lo += k * l2_hi;
      hi += k * l2_lo;
    }
  }
  return {round_down(lo, bits), round_up(hi, bits)};
}

long working_bits(long budget) { return budget + kGuardBits; }

}  // namespace

IntervalReal::IntervalReal(BigRational point, long budget)
    : lo_(point), hi_(std::move(point)), budget_(budget) {}

IntervalReal::IntervalReal(BigRational lower, BigRational upper, long budget)
    : lo_(std::move(lower)), hi_(std::move(upper)), budget_(budget) {
  if (hi_ < lo_) throw DomainError("interval with lower > upper");
}

IntervalReal IntervalReal::with_budget(long budget) const {
  IntervalReal r = *this;
  r.budget_ = budget;
  return r;
}

IntervalReal IntervalReal::rounded(long bits) const {
  return IntervalReal(round_down(lo_, bits), round_up(hi_, bits), budget_);
}

void IntervalReal::compact() {
  // Exact rational arithmetic on long products can blow up denominators;
  // once they exceed a few budgets, snap outward to the working grid.
  const std::size_t limit = static_cast<std::size_t>(4 * (budget_ + 64));
  if (bit_length(lo_.get_den()) > limit || bit_length(hi_.get_den()) > limit) {
    lo_ = round_down(lo_, 2 * (budget_ + 64));
    hi_ = round_up(hi_, 2 * (budget_ + 64));
  }
}

IntervalReal IntervalReal::operator-() const { return IntervalReal(-hi_, -lo_, budget_); }

IntervalReal operator+(const IntervalReal& a, const IntervalReal& b) {
  IntervalReal r(a.lo_ + b.lo_, a.hi_ + b.hi_, std::max(a.budget_, b.budget_));
  r.compact();
  return r;
}

IntervalReal operator-(const IntervalReal& a, const IntervalReal& b) { return a + (-b); }

IntervalReal operator*(const IntervalReal& a, const IntervalReal& b) {
  BigRational p1 = a.lo_ * b.lo_;
  BigRational p2 = a.lo_ * b.hi_;
  BigRational p3 = a.hi_ * b.lo_;
  BigRational p4 = a.hi_ * b.hi_;
  IntervalReal r(std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4}),
                 std::max(a.budget_, b.budget_));
  r.compact();
  return r;
}

IntervalReal operator/(const IntervalReal& a, const IntervalReal& b) {
  if (b.lo_ <= 0 && b.hi_ >= 0) throw DomainError("division by an interval containing 0");
  IntervalReal inv(1 / b.hi_, 1 / b.lo_, b.budget_);
  return a * inv;
}

std::string IntervalReal::to_string() const {
  return "[" + liouville::to_string(lo_) + ", " + liouville::to_string(hi_) + "]";
}

IntervalReal hull(const IntervalReal& a, const IntervalReal& b) {
  return IntervalReal(std::min(a.lower(), b.lower()), std::max(a.upper(), b.upper()),
                      std::max(a.budget(), b.budget()));
}

IntervalReal abs(const IntervalReal& x) {
  if (x.lower() >= 0) return x;
  if (x.upper() <= 0) return -x;
  return IntervalReal(BigRational(0), std::max(BigRational(-x.lower()), x.upper()), x.budget());
}

IntervalReal interval_exp(const IntervalReal& x) {
  long bits = working_bits(x.budget());
  auto lo = exp_rational(x.lower(), bits).first;
  auto hi = x.is_point() ? exp_rational(x.upper(), bits).second
                         : exp_rational(x.upper(), bits).second;
  return IntervalReal(lo, hi, x.budget());
}

IntervalReal interval_log(const IntervalReal& x) {
  if (x.lower() <= 0) throw DomainError("log of an enclosure that is not strictly positive");
  long bits = working_bits(x.budget());
  return IntervalReal(log_rational(x.lower(), bits).first, log_rational(x.upper(), bits).second,
                      x.budget());
}

IntervalReal interval_sqrt(const IntervalReal& x) {
  if (x.lower() < 0) throw DomainError("sqrt of an enclosure with negative part");
  long W = working_bits(x.budget());
  auto sqrt_fixed = [W](const BigRational& v, bool up) {
    BigInt scaled = up ? shifted_ceil(v, 2 * W) : shifted_floor(v, 2 * W);
    BigInt root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    if (up && root * root != scaled) root += 1;
    return from_fixed(root, W);
  };
  return IntervalReal(sqrt_fixed(x.lower(), false), sqrt_fixed(x.upper(), true), x.budget());
}

IntervalReal interval_pow(const IntervalReal& x, const IntervalReal& y) {
  return interval_exp(y * interval_log(x));
}

IntervalReal interval_powi(const IntervalReal& x, unsigned long n) {
  if (n == 0) return IntervalReal(BigRational(1), x.budget());
  BigRational a = pow(x.lower(), n);
  BigRational b = pow(x.upper(), n);
  if (x.lower() >= 0 || n % 2 == 1) return IntervalReal(a, b, x.budget());
  if (x.upper() <= 0) return IntervalReal(b, a, x.budget());
  return IntervalReal(BigRational(0), std::max(a, b), x.budget());
}

IntervalReal ln2(long budget) {
  auto [lo, hi] = ln2_bounds(working_bits(budget));
  return IntervalReal(lo, hi, budget);
}

IntervalReal euler_e(long budget) { return interval_exp(IntervalReal(BigRational(1), budget)); }

std::optional<std::strong_ordering> certified_compare(const IntervalReal& a,
                                                      const IntervalReal& b) {
  if (a.upper() < b.lower()) return std::strong_ordering::less;
  if (b.upper() < a.lower()) return std::strong_ordering::greater;
  if (a.is_point() && b.is_point() && a.lower() == b.lower()) return std::strong_ordering::equal;
  return std::nullopt;
}

std::optional<BigInt> certified_floor(const IntervalReal& x) {
  BigInt a = floor(x.lower());
  BigInt b = floor(x.upper());
  if (a != b) return std::nullopt;
  return a;
}

}  // namespace liouville
