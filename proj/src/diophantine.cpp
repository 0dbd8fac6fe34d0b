#include "liouville/diophantine.hpp"

#include <algorithm>

#include "liouville/errors.hpp"

namespace liouville {

namespace {

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(',', start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

BigInt ceil_exp_integer(const BigInt& x) {
  // e^x is irrational for integer x != 0, so enough precision always decides
  if (x == 0) return 1;
  // relative precision must cover the ~1.45 x integer bits of e^x
  for (long budget = 128 + 2 * to_long(abs(BigRational(x)).get_num()); budget < (1L << 22); budget *= 2) {
    IntervalReal v = interval_exp(IntervalReal(BigRational(x), budget));
    if (auto f = certified_floor(v)) return *f + 1;
  }
  throw AmbiguousEnclosureError("could not pin ceil(e^x)");
}

nlohmann::json strings(const std::vector<BigInt>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& z : v) a.push_back(to_string(z));
  return a;
}

nlohmann::json enclosure_json(const IntervalReal& x) {
  IntervalReal r = x.rounded(32);
  return {{"lower", to_string(r.lower())}, {"upper", to_string(r.upper())}};
}

}  // namespace

ContinuedFractionExpansion cf_convergents(const BigInt& integer_part,
                                          const std::vector<BigInt>& quotients) {
  ContinuedFractionExpansion cf;
  cf.integer_part = integer_part;
  cf.quotients = quotients;
  BigInt p2 = 1, q2 = 0;  // p_{k-1}, q_{k-1}
  BigInt p1 = integer_part, q1 = 1;
  cf.convergents.push_back({p1, q1});
  for (const BigInt& a : quotients) {
    if (a < 1) throw DomainError("partial quotients must be >= 1");
    BigInt p = a * p1 + p2;
    BigInt q = a * q1 + q2;
    p2 = std::move(p1);
    q2 = std::move(q1);
    p1 = p;
    q1 = q;
    cf.convergents.push_back({std::move(p), std::move(q)});
  }
  return cf;
}

ContinuedFractionExpansion cf_of_real(const IntervalReal& x, std::size_t depth) {
  if (depth == 0) throw DomainError("depth must be >= 1");
  BigRational lo = x.lower(), hi = x.upper();
  std::vector<BigInt> terms;
  while (terms.size() < depth) {
    BigInt a = floor(lo);
    if (floor(hi) != a) {
      throw AmbiguousEnclosureError("enclosure straddles an integer at term " + std::to_string(terms.size()));
    }
    terms.push_back(a);
    if (terms.size() == depth) break;
    BigRational f_lo = lo - a, f_hi = hi - a;
    if (f_lo == 0) {
      if (f_hi == 0) break;  // exact rational, expansion ends
      throw AmbiguousEnclosureError("enclosure touches a convergent at term " + std::to_string(terms.size()));
    }
    lo = 1 / f_hi;
    hi = 1 / f_lo;
  }
  return cf_convergents(terms.front(), std::vector<BigInt>(terms.begin() + 1, terms.end()));
}

ForcedSchedule ForcedSchedule::parse(std::string_view spec) {
  ForcedSchedule g;
  g.spec_ = std::string(spec);
  if (spec == "ceil(e^(n^3))") {
    g.kind_ = Kind::CeilExpCube;
    return g;
  }
  if (spec.starts_with("const:")) {
    g.kind_ = Kind::Const;
    g.base_ = parse_integer(spec.substr(6));
    if (g.base_ < 1) throw MalformedError("forced quotient must be >= 1");
    return g;
  }
  if (spec.starts_with("list:")) {
    g.kind_ = Kind::List;
    for (auto part : split_commas(spec.substr(5))) g.list_.push_back(parse_integer(part));
    for (std::size_t i = 0; i < g.list_.size(); ++i) {
      if (g.list_[i] < 1 || (i > 0 && g.list_[i] < g.list_[i - 1])) {
        throw MalformedError("forced list must be positive and nondecreasing");
      }
    }
    return g;
  }
  // B^(E^n)
  auto open = spec.find("^(");
  if (open != std::string_view::npos && spec.ends_with("^n)")) {
    std::string_view inner = spec.substr(open + 2, spec.size() - open - 2 - 3);
    g.kind_ = Kind::DoublePower;
    g.base_ = parse_integer(spec.substr(0, open));
    g.inner_ = parse_integer(inner);
    if (g.base_ < 2 || g.inner_ < 1) throw MalformedError("B^(E^n) needs B >= 2, E >= 1");
    return g;
  }
  throw MalformedError("unknown forced-quotient form '" + std::string(spec) + "'");
}

BigInt ForcedSchedule::operator()(long n) const {
  if (n < 1) throw DomainError("stage index must be >= 1");
  switch (kind_) {
    case Kind::Const:
      return base_;
    case Kind::List:
      if (static_cast<std::size_t>(n) > list_.size()) throw DomainError("forced list exhausted");
      return list_[n - 1];
    case Kind::CeilExpCube:
      return ceil_exp_integer(BigInt(n) * n * n);
    case Kind::DoublePower: {
      BigInt e = pow(inner_, static_cast<unsigned long>(n));
      if (!e.fits_ulong_p() || e.get_ui() * bit_length(base_) > kMaterializationCapBits) {
        throw UnmaterializableError("forced quotient exceeds the materialization cap");
      }
      return pow(base_, e.get_ui());
    }
  }
  throw DomainError("unknown forced schedule");
}

JarnikTarget jarnik_generate(const ForcedSchedule& g, const BigInt& filler, long stages, long budget) {
  if (filler < 1) throw DomainError("filler must be >= 1");
  if (stages < 0) throw DomainError("negative stage count");
  JarnikTarget u;
  u.forced_spec = g.spec();
  u.filler = filler;
  std::vector<BigInt> quotients{BigInt(1)};
  std::vector<std::pair<long, std::size_t>> forced_at;
  BigInt prev = 0;
  for (long n = 1; n <= stages; ++n) {
    BigInt gn = g(n);
    if (gn < 1 || gn < prev) throw DomainError("forced quotients must be >= 1 and nondecreasing");
    prev = gn;
    quotients.push_back(filler);
    quotients.push_back(gn);
    forced_at.emplace_back(n, quotients.size());
  }
  if (stages == 0) quotients.push_back(filler);
  u.cf = cf_convergents(BigInt(-1), quotients);
  for (auto [n, index] : forced_at) {
    JarnikStage s;
    s.n = n;
    s.index = index;
    s.forced_quotient = quotients[index - 1];
    s.approximant = u.cf.convergents[index - 1];
    const BigInt& B = s.approximant.q;
    const BigInt& Bn = u.cf.convergents[index].q;
    s.error_lower = make_rational(BigInt(1), B * (Bn + B));
    s.error_upper = make_rational(BigInt(1), B * Bn);
    s.log_denominator = interval_log(IntervalReal(BigRational(B), budget));
    s.achieved_exponent = interval_log(IntervalReal(BigRational(B * Bn), budget)) / s.log_denominator;
    u.stages.push_back(std::move(s));
  }
  return u;
}

IntervalReal jarnik_value(const JarnikTarget& u) {
  std::vector<BigInt> q = u.cf.quotients;
  q.push_back(u.filler);
  ContinuedFractionExpansion ext = cf_convergents(u.cf.integer_part, q);
  BigRational a = ext.convergents[ext.convergents.size() - 2].value();
  BigRational b = ext.convergents.back().value();
  return IntervalReal(std::min(a, b), std::max(a, b));
}

DirichletApprox dirichlet_approx(const IntervalReal& alpha, const BigInt& Q) {
  if (Q < 1) throw DomainError("Q must be >= 1");
  BigRational lo = alpha.lower(), hi = alpha.upper();
  BigInt p2 = 0, q2 = 1, p1 = 1, q1 = 0;
  std::optional<DirichletApprox> best;
  while (true) {
    BigInt a = floor(lo);
    if (floor(hi) != a) break;
    BigInt p = a * p1 + p2;
    BigInt q = a * q1 + q2;
    if (q > Q) break;
    best = DirichletApprox{p, q};
    p2 = std::move(p1);
    q2 = std::move(q1);
    p1 = std::move(p);
    q1 = std::move(q);
    BigRational f_lo = lo - a, f_hi = hi - a;
    if (f_lo == 0) break;
    lo = 1 / f_hi;
    hi = 1 / f_lo;
  }
  if (!best) throw AmbiguousEnclosureError("enclosure does not fix the integer part");
  BigRational c = make_rational(best->r, best->s);
  BigRational err = std::max(abs(alpha.lower() - c), abs(alpha.upper() - c));
  if (err > 1 / (BigRational(best->s) * BigRational(Q))) {
    throw AmbiguousEnclosureError("enclosure too wide to certify |alpha - r/s| <= 1/(sQ)");
  }
  return *best;
}

ExpApproximant exp_taylor_rational(const BigRational& U, long L, bool allow_any_U, long budget) {
  if (L < 1) throw DomainError("degree must be >= 1");
  if (!allow_any_U && (U < -1 || U > 0)) throw DomainError("U must lie in [-1, 0]");
  ExpApproximant t;
  t.U = U;
  t.L = L;
  t.B = U.get_den();
  BigRational term = 1;
  t.value = 1;
  for (long k = 1; k <= L; ++k) {
    term *= U / BigRational(k);
    t.value += term;
  }
  t.remainder_bound = pow(abs(U), static_cast<unsigned long>(L + 1)) /
                      BigRational(factorial(static_cast<unsigned long>(L + 1)));
  const BigInt& Q = t.value.get_den();
  BigInt BL = pow(t.B, static_cast<unsigned long>(L));
  t.divides_lcm_bound = mpz_divisible_p(BigInt(BL * lcm_upto(L, budget).value).get_mpz_t(), Q.get_mpz_t());
  t.divides_factorial_bound =
      mpz_divisible_p(BigInt(BL * factorial(static_cast<unsigned long>(L))).get_mpz_t(), Q.get_mpz_t());
  t.log_Q = interval_log(IntervalReal(BigRational(Q), budget));
  t.log_B = interval_log(IntervalReal(BigRational(t.B), budget));
  if (L >= 2) {
    IntervalReal Lr(BigRational(L), budget);
    t.c2 = (t.log_Q - Lr * t.log_B) / (Lr * interval_log(Lr));
  }
  return t;
}

LcmValue lcm_upto(long L, long budget) {
  if (L < 1) throw DomainError("L must be >= 1");
  BigInt v = 1;
  for (long k = 2; k <= L; ++k) mpz_lcm_ui(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(k));
  return {v, interval_log(IntervalReal(BigRational(v), budget))};
}

nlohmann::json to_json(const ContinuedFractionExpansion& cf) {
  return {{"integer_part", to_string(cf.integer_part)}, {"quotients", strings(cf.quotients)}};
}

nlohmann::json to_json(const JarnikTarget& u) {
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& s : u.stages) {
    stages.push_back({{"n", s.n},
                      {"index", s.index},
                      {"forced_quotient", to_string(s.forced_quotient)},
                      {"A", to_string(s.approximant.p)},
                      {"B", to_string(s.approximant.q)},
                      {"error_lower", to_string(s.error_lower)},
                      {"error_upper", to_string(s.error_upper)},
                      {"log_denominator", enclosure_json(s.log_denominator)},
                      {"achieved_exponent", enclosure_json(s.achieved_exponent)}});
  }
  return {{"type", "jarnik"},
          {"forced", u.forced_spec},
          {"filler", to_string(u.filler)},
          {"stage_count", static_cast<long>(u.stages.size())},
          {"cf", to_json(u.cf)},
          {"stages", stages}};
}

JarnikTarget jarnik_from_json(const nlohmann::json& j, long budget) {
  JarnikTarget u;
  try {
    if (j.at("type").get<std::string>() != "jarnik") throw MalformedError("not a Jarnik target");
    u = jarnik_generate(ForcedSchedule::parse(j.at("forced").get<std::string>()),
                        parse_integer(j.at("filler").get<std::string>()), j.at("stage_count").get<long>(), budget);
    if (to_json(u.cf) != j.at("cf")) throw MalformedError("stored quotients disagree with the forced schedule");
  } catch (const nlohmann::json::exception& e) {
    throw MalformedError(std::string("jarnik target: ") + e.what());
  } catch (const DomainError& e) {
    throw MalformedError(std::string("jarnik target: ") + e.what());
  }
  return u;
}

}  // namespace liouville
