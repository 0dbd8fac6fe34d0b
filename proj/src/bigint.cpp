#include "liouville/bigint.hpp"

#include <cctype>

#include "liouville/errors.hpp"

namespace liouville {

BigRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("zero denominator");
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const BigInt& z) { return z.get_str(10); }

std::string to_string(const BigRational& q) {
  return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

BigInt parse_integer(std::string_view text) {
  if (!is_integer_text(text)) {
    throw MalformedError("not an integer: '" + std::string(text) + "'");
  }
  std::string s(text);
  if (s[0] == '+') s.erase(0, 1);
  return BigInt(s, 10);
}

BigRational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return BigRational(parse_integer(text));
  BigInt num = parse_integer(text.substr(0, slash));
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
    throw MalformedError("signed denominator: '" + std::string(text) + "'");
  }
  BigInt den = parse_integer(den_text);
  if (den == 0) throw MalformedError("zero denominator: '" + std::string(text) + "'");
  return make_rational(num, den);
}

BigInt pow(const BigInt& base, unsigned long exponent) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

BigRational pow(const BigRational& base, unsigned long exponent) {
  BigRational r(pow(base.get_num(), exponent), pow(base.get_den(), exponent));
  return r;  // already canonical: gcd(n^k, d^k) = 1
}

std::size_t bit_length(const BigInt& z) {
  if (z == 0) return 0;
  return mpz_sizeinbase(z.get_mpz_t(), 2);
}

BigInt floor(const BigRational& q) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

BigInt ceil(const BigRational& q) {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

BigRational abs(const BigRational& q) { return q < 0 ? BigRational(-q) : q; }

BigRational round_down(const BigRational& q, long bits) {
  if (q.get_den() == 1) return q;
  BigInt scaled = q.get_num();
  BigInt r;
  if (bits >= 0) {
    scaled <<= bits;
    mpz_fdiv_q(r.get_mpz_t(), scaled.get_mpz_t(), q.get_den_mpz_t());
    return make_rational(r, BigInt(1) << bits);
  }
  BigInt den = q.get_den() << -bits;
  mpz_fdiv_q(r.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
  return BigRational(r << -bits);
}

BigRational round_up(const BigRational& q, long bits) { return -round_down(-q, bits); }

BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigInt iroot_floor(const BigInt& z, unsigned long k) {
  if (z < 0) throw DomainError("iroot_floor of a negative integer");
  BigInt r;
  mpz_root(r.get_mpz_t(), z.get_mpz_t(), k);
  return r;
}

double to_double(const BigRational& q) {
  // mpq_get_d truncates; good enough for display, and avoids overflow for
  // huge numerator/denominator pairs.
  return mpq_get_d(q.get_mpq_t());
}

long to_long(const BigInt& z) {
  if (!z.fits_slong_p()) throw DomainError("integer does not fit in a machine word");
  return z.get_si();
}

}  // namespace liouville
