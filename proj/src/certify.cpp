#include "liouville/certify.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

#include "liouville/errors.hpp"
#include "liouville/selfpower.hpp"

namespace liouville {

namespace {

using nlohmann::json;

BigRational nearest_integer(const BigRational& q) { return BigRational(floor(q + BigRational(1, 2))); }

BigRational recip(const BigInt& z) { return BigRational(1) / BigRational(z); }

IntervalReal log_of(const BigInt& z, long budget) {
  return interval_log(IntervalReal(BigRational(z), budget));
}

// -log(err) / logQ; nullopt when err is zero or logQ is not positive.
std::optional<IntervalReal> exponent_of(const ExtendedMagnitude& err, const IntervalReal& logQ, long budget) {
  if (err.is_zero() || !logQ.positive()) return std::nullopt;
  return -log_interval(err, budget) / logQ;
}

json enclosure_json(const IntervalReal& x) {
  IntervalReal r = x.rounded(32);
  return {{"lower", to_string(r.lower())}, {"upper", to_string(r.upper())}};
}

json optional_enclosure(const std::optional<IntervalReal>& x) {
  return x ? enclosure_json(*x) : json(nullptr);
}

std::string verdict_word(CheckVerdict v) { return to_string(v); }

long stage_budget(long budget, const BigInt& threshold_den) {
  return budget + static_cast<long>(bit_length(threshold_den)) + 64;
}

// <= on a certified gap against an exact threshold.
CheckVerdict within(const IntervalReal& gap, const BigRational& threshold) {
  if (gap.upper() <= threshold) return CheckVerdict::Pass;
  if (gap.lower() > threshold) return CheckVerdict::Fail;
  return CheckVerdict::Undecided;
}

BigInt floor_exp_integer(long x) {
  for (long budget = 128 + 2 * x; budget < (1L << 22); budget *= 2) {
    IntervalReal v = interval_exp(IntervalReal(BigRational(x), budget));
    if (auto f = certified_floor(v)) return *f;
  }
  throw AmbiguousEnclosureError("could not pin floor(e^x)");
}

BigInt exponent_at(const ExponentSchedule& s, long n) {
  auto e = schedule_exponent_integer(s, n);
  if (!e) throw UnmaterializableError("e_" + std::to_string(n) + " does not materialize");
  return *e;
}

BigRational ternary_weight(const ExponentSchedule& s, long n) {
  BigInt e = exponent_at(s, n);
  if (!e.fits_ulong_p() || e.get_ui() * 1585 / 1000 + 1 > kMaterializationCapBits) {
    throw UnmaterializableError("3^e_" + std::to_string(n) + " exceeds the materialization cap");
  }
  return BigRational(2) / BigRational(pow(BigInt(3), e.get_ui()));
}

std::optional<IntervalReal> phi_at(const BigRational& r, long budget) {
  if (r <= 0) return std::nullopt;
  return xlogx(IntervalReal(r, budget));
}

// Distance of a point to a rational hull [lo, hi].
BigRational hull_distance(const BigRational& t, const BigRational& lo, const BigRational& hi) {
  if (t < lo) return lo - t;
  if (t > hi) return t - hi;
  return BigRational(0);
}

}  // namespace

std::string to_string(CheckVerdict v) {
  switch (v) {
    case CheckVerdict::Pass: return "pass";
    case CheckVerdict::Fail: return "fail";
    case CheckVerdict::Undecided: return "undecided";
  }
  return "undecided";
}

// ---------------------------------------------------------------- tuned data

TunedParameters build_tuned_parameters(long j) {
  if (j < 1) throw DomainError("tuned stage index must be >= 1");
  if (j > 40) throw UnmaterializableError("e^{j^3} too large for j > 40");
  BigInt V = floor_exp_integer(j * j * j);
  return {V, pow(V, static_cast<unsigned long>(j))};
}

bool TunedStageVerdict::all_pass() const {
  return v_floor == CheckVerdict::Pass && cond_ii == CheckVerdict::Pass &&
         cond_iii == CheckVerdict::Pass && size_coupling == CheckVerdict::Pass;
}

std::vector<TunedStageVerdict> verify_tuned_certificate(const std::vector<TunedStage>& stages,
                                                        const SpiffyNumber& x, long budget) {
  std::vector<TunedStageVerdict> out;
  for (const auto& st : stages) {
    if (st.j < 1 || st.m < 1) throw DomainError("stage needs j >= 1 and m >= 1");
    if (st.V < 1 || st.B < 1) throw DomainError("stage denominators must be positive");
    TunedStageVerdict v;
    v.j = st.j;
    const auto jj = static_cast<unsigned long>(st.j * st.j);

    v.v_floor = st.V >= build_tuned_parameters(st.j).V ? CheckVerdict::Pass : CheckVerdict::Fail;

    BigInt Vpow = pow(st.V, jj);
    long b2 = stage_budget(budget, Vpow);
    auto phi = phi_at(truncate(x, st.m), b2);
    if (!phi) throw DomainError("phi(r_m) undefined: r_m = 0");
    v.cond_ii_gap = abs(*phi - IntervalReal(make_rational(st.U, st.V), b2));
    CheckVerdict gap_ii = within(v.cond_ii_gap, recip(Vpow));
    v.cond_ii = v.v_floor == CheckVerdict::Fail ? CheckVerdict::Fail : gap_ii;

    BigInt Bpow = pow(st.B, jj);
    long b3 = stage_budget(budget, Bpow);
    IntervalReal e = interval_exp(IntervalReal(make_rational(st.U, st.V), b3));
    v.cond_iii_gap = abs(e - IntervalReal(make_rational(st.A, st.B), b3));
    v.cond_iii = st.B < 2 ? CheckVerdict::Fail : within(v.cond_iii_gap, recip(Bpow));

    v.size_coupling = st.B <= pow(st.V, static_cast<unsigned long>(st.j)) ? CheckVerdict::Pass
                                                                          : CheckVerdict::Fail;

    if (st.V >= 2 && v.cond_ii_gap.lower() > 0) {
      v.cond_ii_order = -interval_log(v.cond_ii_gap) / log_of(st.V, b2);
    }
    if (st.B >= 2 && v.cond_iii_gap.lower() > 0) {
      v.cond_iii_order = -interval_log(v.cond_iii_gap) / log_of(st.B, b3);
    }
    out.push_back(std::move(v));
  }
  return out;
}

TunedStage build_tuned_stage(const SpiffyNumber& x, long j, long m, long budget) {
  TunedParameters p = build_tuned_parameters(j);
  const auto jj = static_cast<unsigned long>(j * j);
  long b2 = stage_budget(budget, pow(p.V, jj));
  auto phi = phi_at(truncate(x, m), b2);
  if (!phi) throw DomainError("phi(r_m) undefined: r_m = 0");
  TunedStage st{j, m, 0, p.V, 0, p.B};
  st.U = nearest_integer(phi->midpoint() * BigRational(p.V)).get_num();
  if (st.U > 0) st.U = 0;
  long b3 = stage_budget(budget, pow(p.B, jj));
  IntervalReal e = interval_exp(IntervalReal(make_rational(st.U, st.V), b3));
  st.A = nearest_integer(e.midpoint() * BigRational(p.B)).get_num();
  return st;
}

TuneResult tune_digits_search(const SpiffyNumber& x, const BigRational& target, long lo, long hi,
                              const ExtendedMagnitude& tolerance, long budget) {
  if (lo < 1 || hi < lo) throw DomainError("digit block needs 1 <= lo <= hi");
  BigRational base = 0;
  for (long n = 1; n < lo; ++n) {
    if (x.digits.digit(n) == 2) base += ternary_weight(x.schedule, n);
  }
  std::vector<BigRational> w;
  for (long n = lo; n <= hi; ++n) w.push_back(ternary_weight(x.schedule, n));
  const std::size_t k = w.size();

  auto gap_of = [&](const BigRational& r) -> std::optional<IntervalReal> {
    auto phi = phi_at(r, budget);
    if (!phi) return std::nullopt;
    return abs(*phi - IntervalReal(target, budget));
  };

  TuneResult best;
  std::optional<BigRational> best_mid;
  auto consider = [&](const std::vector<int>& block, const BigRational& r) {
    auto g = gap_of(r);
    if (!g) return;
    BigRational mid = g->midpoint();
    if (!best_mid || mid < *best_mid) {
      best_mid = mid;
      best.block = block;
      best.r = r;
      best.gap = *g;
    }
  };

  // Cantor order: every completion of a prefix lies in [s, s + rest], and
  // phi maps that range into the hull of its endpoint values (plus -1/e
  // when the range straddles the minimum).
  std::vector<BigRational> rest(k + 1, BigRational(0));
  for (std::size_t i = k; i-- > 0;) rest[i] = rest[i + 1] + w[i];
  const IntervalReal ie = inv_e(64);
  auto image_distance = [&](const BigRational& a, const BigRational& b) {
    auto pa = phi_at(a, 64);
    auto pb = phi_at(b, 64);
    if (!pb) return BigRational(-1);  // only r = 0: no candidate
    BigRational l = pa ? std::min(pa->lower(), pb->lower()) : std::min(pb->lower(), BigRational(0));
    BigRational h = pa ? std::max(pa->upper(), pb->upper()) : BigRational(0);
    if (a <= ie.upper() && b >= ie.lower()) l = -ie.upper();
    return hull_distance(target, l, h);
  };

  constexpr long kNodeBudget = 1L << 16;
  long nodes = 0;
  bool capped = false;
  std::vector<int> block(k, 0);
  auto dfs = [&](auto&& self, std::size_t i, const BigRational& s) -> void {
    if (++nodes > kNodeBudget) {
      capped = true;
      return;
    }
    if (i == k) {
      consider(block, s);
      return;
    }
    BigRational lo[2] = {s, s + w[i]};
    BigRational dist[2] = {image_distance(lo[0], lo[0] + rest[i + 1]), image_distance(lo[1], lo[1] + rest[i + 1])};
    int order[2] = {0, 1};
    if (dist[1] < dist[0]) std::swap(order[0], order[1]);
    for (int c : order) {
      if (dist[c] < 0) continue;
      // the certified gap carries at most 2^-60 of rounding beyond the hull distance
      if (best_mid && dist[c] > *best_mid + BigRational(1, BigInt(1) << 60)) continue;
      block[i] = 2 * c;
      self(self, i + 1, lo[c]);
    }
  };
  dfs(dfs, 0, base);
  best.exhaustive = !capped;
  if (!best_mid) throw DomainError("every candidate truncation is 0");
  best.met = mag_compare(ExtendedMagnitude::from_rational(best.gap.upper()), tolerance, budget) !=
             std::strong_ordering::greater;
  return best;
}

// ------------------------------------------------------------- error chains

ErrorChain sum_terms(std::vector<ErrorTerm> terms, long budget) {
  ErrorChain c;
  c.terms = std::move(terms);
  const ErrorTerm* dom = nullptr;
  for (const auto& t : c.terms) {
    MagnitudeSum s = mag_add(c.total, t.value, budget);
    c.total = s.value;
    c.total_exact = c.total_exact && s.exact;
    if (!dom || mag_compare(t.value, dom->value, budget) == std::strong_ordering::greater) dom = &t;
  }
  c.dominant = dom ? dom->name : "";
  return c;
}

ErrorChain selfpower_error_chain(const SpiffyNumber& x, const TunedStage& st, long budget) {
  if (st.U > 0) throw DomainError("U/V must be <= 0 for the exp Lipschitz bound");
  TunedStageVerdict v = verify_tuned_certificate({st}, x, budget).front();
  BigRational r = truncate(x, st.m);
  IntervalReal M_phi = phi_lipschitz(IntervalReal(r, budget), budget);
  ExtendedMagnitude tail = tail_bound(x, st.m).refined;
  const auto jj = static_cast<unsigned long>(st.j * st.j);
  long fine = budget + 64;

  ExtendedMagnitude target_gap = v.cond_ii == CheckVerdict::Pass
                                     ? ExtendedMagnitude::from_rational(recip(pow(st.V, jj)))
                                     : ExtendedMagnitude::from_rational(round_up(v.cond_ii_gap.upper(), fine));
  ExtendedMagnitude exp_gap = v.cond_iii == CheckVerdict::Pass
                                  ? ExtendedMagnitude::from_rational(recip(pow(st.B, jj)))
                                  : ExtendedMagnitude::from_rational(round_up(v.cond_iii_gap.upper(), fine));
  return sum_terms({{"tail_through_phi", mag_scale(tail, round_up(M_phi.upper(), 32))},
                    {"target_gap", target_gap},
                    {"exp_gap", exp_gap}},
                   budget);
}

// ------------------------------------------------------ self-power (exp(u))

SelfPowerStage exp_stage(const BigRational& U, const BigRational& u_gap, long L, long budget) {
  if (U > 0) throw DomainError("approximant must be <= 0");
  if (u_gap < 0) throw DomainError("negative gap");
  ExpApproximant t = exp_taylor_rational(U, L, false, budget);
  SelfPowerStage s;
  s.approximant = U;
  s.L = L;
  s.P = t.value.get_num();
  s.Q = t.value.get_den();
  s.error = sum_terms({{"target_gap", ExtendedMagnitude::from_rational(u_gap)},
                       {"taylor_remainder", ExtendedMagnitude::from_rational(t.remainder_bound)}},
                      budget);
  s.achieved_exponent = exponent_of(s.error.total, t.log_Q, budget);
  return s;
}

long apply_degree_rule(std::string_view rule, long n) {
  BigInt L;
  if (rule.starts_with("n^")) {
    long k = to_long(parse_integer(rule.substr(2)));
    if (k < 0 || k > 8) throw DomainError("degree rule exponent out of range");
    L = pow(BigInt(n), static_cast<unsigned long>(k));
  } else if (rule.starts_with("const:")) {
    L = parse_integer(rule.substr(6));
  } else {
    throw MalformedError("unknown degree rule '" + std::string(rule) + "'");
  }
  if (L < 1 || L > 100000) throw DomainError("Taylor degree must lie in [1, 100000]");
  return to_long(L);
}

SelfPowerStage exp_of_jarnik_certificate(const JarnikTarget& u, long n, std::string_view L_rule, long budget) {
  if (n < 1 || static_cast<std::size_t>(n) > u.stages.size()) throw DomainError("no such Jarnik stage");
  const JarnikStage& js = u.stages[static_cast<std::size_t>(n - 1)];
  SelfPowerStage s = exp_stage(js.approximant.value(), js.error_upper, apply_degree_rule(L_rule, n), budget);
  s.n = n;
  return s;
}

// ------------------------------------------------------ polynomial closure

unsigned long Polynomial::total_degree() const {
  unsigned long d = 0;
  for (const auto& m : terms) {
    unsigned long s = 0;
    for (auto e : m.exps) s += e;
    d = std::max(d, s);
  }
  return d;
}

BigRational Polynomial::evaluate(const std::vector<BigRational>& at) const {
  BigRational sum = 0;
  for (const auto& m : terms) {
    BigRational v = BigRational(m.coeff);
    for (std::size_t j = 0; j < m.exps.size(); ++j) {
      if (m.exps[j]) v *= pow(at.at(j), m.exps[j]);
    }
    sum += v;
  }
  return sum;
}

IntervalReal Polynomial::evaluate(const std::vector<IntervalReal>& at) const {
  long b = at.empty() ? kDefaultBudgetBits : at.front().budget();
  IntervalReal sum(BigRational(0), b);
  for (const auto& m : terms) {
    IntervalReal v(BigRational(m.coeff), b);
    for (std::size_t j = 0; j < m.exps.size(); ++j) {
      if (m.exps[j]) v = v * interval_powi(at.at(j), m.exps[j]);
    }
    sum = sum + v;
  }
  return sum;
}

BigInt Polynomial::gradient_bound() const {
  BigInt best = 0;
  for (std::size_t j = 0; j < variables; ++j) {
    BigInt s = 0;
    for (const auto& m : terms) {
      if (j < m.exps.size()) s += abs(BigRational(m.coeff)).get_num() * m.exps[j];
    }
    best = std::max(best, s);
  }
  return best;
}

bool Polynomial::linear() const { return total_degree() <= 1; }

Polynomial parse_polynomial(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw MalformedError("empty polynomial");
  std::size_t i = 0;
  auto fail = [&](const std::string& why) -> MalformedError {
    return MalformedError("polynomial '" + std::string(text) + "': " + why + " at offset " + std::to_string(i));
  };
  auto number = [&]() {
    std::size_t st = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (st == i) throw fail("expected a number");
    return BigInt(s.substr(st, i - st));
  };
  auto small_exponent = [&]() -> unsigned long {
    BigInt e = number();
    if (!e.fits_ulong_p() || e > 100000) throw fail("exponent too large");
    return e.get_ui();
  };

  std::map<std::vector<unsigned long>, BigInt> acc;
  std::size_t vars = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      throw fail("expected + or -");
    }
    BigInt coeff = sign;
    std::vector<unsigned long> exps;
    bool first = true;
    while (true) {
      if (!first) {
        if (i >= s.size() || s[i] != '*') break;
        ++i;
      }
      first = false;
      if (i >= s.size()) throw fail("dangling operator");
      if (std::isdigit(static_cast<unsigned char>(s[i]))) {
        BigInt v = number();
        if (i < s.size() && s[i] == '^') {
          ++i;
          v = pow(v, small_exponent());
        }
        coeff *= v;
        continue;
      }
      std::size_t idx;
      char c = s[i];
      if (c == 'X' || c == 'x') {
        ++i;
        if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
          BigInt k = number();
          if (k < 1 || k > 64) throw fail("variable index out of range");
          idx = k.get_ui() - 1;
        } else {
          idx = 0;
        }
      } else if (c == 'Y' || c == 'y') {
        ++i;
        idx = 1;
      } else if (c == 'Z' || c == 'z') {
        ++i;
        idx = 2;
      } else if (c == 'W' || c == 'w') {
        ++i;
        idx = 3;
      } else {
        throw fail("unexpected character");
      }
      unsigned long e = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        e = small_exponent();
      }
      if (exps.size() <= idx) exps.resize(idx + 1, 0);
      exps[idx] += e;
      vars = std::max(vars, idx + 1);
    }
    while (!exps.empty() && exps.back() == 0) exps.pop_back();
    acc[exps] += coeff;
  }
  Polynomial p;
  p.variables = vars;
  for (auto& [exps, c] : acc) {
    if (c == 0) continue;
    std::vector<unsigned long> e = exps;
    e.resize(vars, 0);
    p.terms.push_back({c, e});
  }
  return p;
}

std::string to_string(const Polynomial& p) {
  if (p.terms.empty()) return "0";
  static const char* kNames[] = {"X", "Y", "Z", "W"};
  std::string out;
  // highest total degree first
  std::vector<const Monomial*> order;
  for (const auto& m : p.terms) order.push_back(&m);
  std::stable_sort(order.begin(), order.end(), [](const Monomial* a, const Monomial* b) {
    unsigned long da = 0, db = 0;
    for (auto e : a->exps) da += e;
    for (auto e : b->exps) db += e;
    if (da != db) return da > db;
    return a->exps > b->exps;
  });
  for (const Monomial* m : order) {
    BigInt c = m->coeff;
    if (c < 0) {
      out += "-";
      c = -c;
    } else if (!out.empty()) {
      out += "+";
    }
    std::string factors;
    for (std::size_t j = 0; j < m->exps.size(); ++j) {
      if (!m->exps[j]) continue;
      if (!factors.empty()) factors += "*";
      factors += p.variables <= 4 ? std::string(kNames[j]) : "X" + std::to_string(j + 1);
      if (m->exps[j] > 1) factors += "^" + std::to_string(m->exps[j]);
    }
    if (factors.empty()) {
      out += c.get_str();
    } else {
      if (c != 1) out += c.get_str() + "*";
      out += factors;
    }
  }
  return out;
}

bool same_tail_after(const DigitSequence& x, const DigitSequence& y, long m) {
  auto period = [](const DigitSequence& d) -> long {
    return d.tail() == DigitSequence::Tail::Periodic ? static_cast<long>(d.pattern().size()) : 1;
  };
  long start = std::max<long>({m, static_cast<long>(x.prefix().size()), static_cast<long>(y.prefix().size())});
  long span = std::lcm(period(x), period(y));
  for (long n = m + 1; n <= start + span; ++n) {
    if (x.digit(n) != y.digit(n)) return false;
  }
  return true;
}

PolyClosureStage poly_closure_certificate(const Polynomial& P, const std::vector<SpiffyNumber>& inputs, long m,
                                          long budget) {
  if (inputs.empty() || inputs.size() != std::max<std::size_t>(P.variables, 1)) {
    throw DomainError("need exactly one input per polynomial variable");
  }
  for (const auto& x : inputs) {
    if (!(x.schedule == inputs.front().schedule)) throw DomainError("inputs do not share one schedule");
  }
  PolyClosureStage st;
  st.m = m;
  std::vector<BigRational> r;
  for (const auto& x : inputs) r.push_back(truncate(x, m));
  st.R = P.evaluate(r);
  st.D = P.total_degree();

  BigInt e_m = exponent_at(inputs.front().schedule, m);
  BigInt den = st.R.get_den();
  BigInt stripped;
  unsigned long threes = mpz_remove(stripped.get_mpz_t(), den.get_mpz_t(), BigInt(3).get_mpz_t());
  st.B_divides_qD = stripped == 1 && BigInt(threes) <= e_m * st.D;

  st.M = P.gradient_bound();
  st.C = 3 * st.M * static_cast<unsigned long>(inputs.size());
  for (const auto& x : inputs) {
    ExtendedMagnitude t = tail_bound(x, m).refined;
    if (mag_compare(t, st.tail, budget) == std::strong_ordering::greater) st.tail = t;
  }
  st.error = mag_scale(st.tail, BigRational(st.C));

  // Rational escape: every nonzero tail class of a linear P carries zero net coefficient.
  if (st.tail.is_zero()) {
    st.rational = true;
  } else if (P.linear()) {
    std::vector<BigInt> coeff(inputs.size(), 0);
    for (const auto& mono : P.terms) {
      for (std::size_t j = 0; j < mono.exps.size(); ++j) {
        if (mono.exps[j]) coeff[j] += mono.coeff;
      }
    }
    std::vector<bool> seen(inputs.size(), false);
    bool escape = true;
    for (std::size_t a = 0; a < inputs.size() && escape; ++a) {
      if (seen[a]) continue;
      BigInt sum = 0;
      for (std::size_t b = a; b < inputs.size(); ++b) {
        if (!seen[b] && same_tail_after(inputs[a].digits, inputs[b].digits, m)) {
          seen[b] = true;
          sum += coeff[b];
        }
      }
      if (sum != 0 && !tail_bound(inputs[a], m).refined.is_zero()) escape = false;
    }
    st.rational = escape;
  }

  if (!st.rational) {
    if (st.R.get_den() > 1) st.achieved_exponent = exponent_of(st.error, log_of(st.R.get_den(), budget), budget);
    IntervalReal log_q = IntervalReal(BigRational(e_m), budget) * interval_log(IntervalReal(BigRational(3), budget));
    st.achieved_exponent_qm = exponent_of(st.error, log_q, budget);
  }
  return st;
}

// ---------------------------------------------------------------- pairwise

std::optional<GapRule> gap_rule_met(const ExponentSchedule& s, long m, long m_next, long budget) {
  if (m_next <= m) throw DomainError("levels must increase");
  BigInt e = exponent_at(s, m);
  ExtendedMagnitude next = schedule_exponent(s, m_next);
  IntervalReal log_next = log_interval(next, budget);
  if (log_next.lower() >= BigRational(e)) return GapRule::Literal;
  if (mag_compare(next, ExtendedMagnitude::from_rational(BigRational(2 * e)), budget) !=
      std::strong_ordering::less) {
    return GapRule::Relaxed;
  }
  return std::nullopt;
}

PairwiseStage pairwise_power_certificate(const SpiffyNumber& x, const SpiffyNumber& y,
                                         const std::vector<long>& levels, long k, long budget) {
  if (k < 1 || static_cast<std::size_t>(k) > levels.size()) throw DomainError("no such pairwise stage");
  if (!(x.schedule == y.schedule)) throw DomainError("x and y must share one schedule");
  PairwiseStage st;
  st.k = k;
  st.m = levels[static_cast<std::size_t>(k - 1)];
  BigRational ax = truncate(x, st.m);
  BigRational ay = truncate(y, st.m);
  if (ax != ay) {
    throw AnchorMismatchError("x and y disagree before level " + std::to_string(st.m) + ": " + to_string(ax) +
                              " vs " + to_string(ay));
  }
  st.anchor = ax;
  if (st.anchor <= 0 || !certainly_less(IntervalReal(st.anchor, budget), inv_e(budget))) {
    throw DomainError("anchor must lie in (0, 1/e)");
  }
  BigInt e = exponent_at(x.schedule, st.m);

  // Q_d = ceil(e^{sqrt(e_m)}), capped so the log enclosure can still certify it.
  long cap_bits = std::max<long>(8, (budget - 64) / 2);
  IntervalReal root = interval_sqrt(IntervalReal(BigRational(e), budget));
  if (root.upper() * BigRational(145, 100) > BigRational(cap_bits)) {
    st.dirichlet_capped = true;
    st.dirichlet_Q = BigInt(1) << static_cast<unsigned long>(cap_bits);
  } else {
    st.dirichlet_Q = floor(interval_exp(root).upper()) + 1;
  }
  IntervalReal log_a = interval_log(IntervalReal(st.anchor, budget));
  DirichletApprox da = dirichlet_approx(log_a, st.dirichlet_Q);
  st.r = da.r;
  st.s = da.s;
  st.U_tilde = st.anchor * make_rational(da.r, da.s);
  st.d = st.anchor.get_den() * da.s;
  st.L = std::max<long>(1, to_long(iroot_floor(e, 3)));
  ExpApproximant t = exp_taylor_rational(st.U_tilde, st.L, false, budget);
  st.P = t.value.get_num();
  st.Q = t.value.get_den();

  ExtendedMagnitude tail_x = tail_bound(x, st.m).refined;
  ErrorTerm first;
  if (x == y) {
    IntervalReal M_phi = phi_lipschitz(IntervalReal(st.anchor, budget), budget);
    first = {"self_lipschitz", mag_scale(tail_x, round_up(M_phi.upper(), 32))};
  } else {
    // |y log x - a log a| <= |y - a| |log a| + a |log x - log a| <= tail_y |log a| + tail_x
    ExtendedMagnitude tail_y = tail_bound(y, st.m).refined;
    BigRational log_abs = round_up((-log_a).upper(), 32);
    first = {"pair_lipschitz", mag_add(mag_scale(tail_y, log_abs), tail_x, budget).value};
  }
  st.error = sum_terms({first,
                        {"log_approx", ExtendedMagnitude::from_rational(st.anchor / BigRational(da.s * st.dirichlet_Q))},
                        {"taylor_remainder", ExtendedMagnitude::from_rational(t.remainder_bound)}},
                       budget);
  st.achieved_exponent = exponent_of(st.error.total, t.log_Q, budget);
  if (static_cast<std::size_t>(k) < levels.size()) {
    st.gap_to_next = gap_rule_met(x.schedule, st.m, levels[static_cast<std::size_t>(k)], budget);
  }
  return st;
}

// -------------------------------------------------------------- documents

nlohmann::json to_json(const SpiffyNumber& x) {
  return {{"schedule", to_json(x.schedule)}, {"digits", to_json(x.digits)}};
}

SpiffyNumber spiffy_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw MalformedError("spiffy number must be an object");
  return {schedule_from_json(j.at("schedule")), digits_from_json(j.at("digits"))};
}

namespace {

json chain_json(const ErrorChain& c) {
  json terms = json::array();
  for (const auto& t : c.terms) terms.push_back({{"name", t.name}, {"value", to_json(t.value)}});
  return {{"terms", terms}, {"total", to_json(c.total)}, {"total_exact", c.total_exact}, {"dominant", c.dominant}};
}

json strings_of(const std::vector<BigInt>& v) {
  json a = json::array();
  for (const auto& z : v) a.push_back(to_string(z));
  return a;
}

json strings_of(const std::vector<long>& v) {
  json a = json::array();
  for (long z : v) a.push_back(std::to_string(z));
  return a;
}

std::string rule_name(std::optional<GapRule> r) {
  if (!r) return "none";
  return *r == GapRule::Literal ? "literal" : "relaxed";
}

// Verdict block shared by every document type.
json verdict_json(const std::vector<std::optional<IntervalReal>>& exps, const std::vector<BigInt>& targets,
                  bool rational, std::optional<std::string> rational_value) {
  json v;
  v["status"] = exps.empty() ? "vacuous" : rational ? "rational" : "approximations";
  if (rational_value) v["rational_value"] = *rational_value;
  std::optional<BigRational> best;
  for (const auto& e : exps) {
    if (e) {
      BigRational lo = e->rounded(32).lower();
      if (!best || lo > *best) best = lo;
    }
  }
  v["max_achieved_exponent"] = best ? json(to_string(*best)) : json(nullptr);
  json t = json::array();
  for (const auto& N : targets) {
    json stage = nullptr;
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (exps[i] && exps[i]->lower() > BigRational(N)) {
        stage = std::to_string(i + 1);
        break;
      }
    }
    t.push_back({{"N", to_string(N)}, {"stage", stage}});
  }
  v["targets"] = t;
  return v;
}

json document(const std::string& type, long budget) {
  return {{"schema_version", kCertificateSchemaVersion}, {"type", type}, {"constants", {{"budget", budget}}}};
}

}  // namespace

nlohmann::json tuned_certificate(const SpiffyNumber& x, const std::vector<TunedStage>& stages, long budget) {
  json doc = document("tuned", budget);
  doc["x"] = to_json(x);
  doc["targets"] = json::array();
  json arr = json::array();
  std::vector<std::optional<IntervalReal>> exps;
  bool all = true;
  for (const auto& st : stages) {
    TunedStageVerdict v = verify_tuned_certificate({st}, x, budget).front();
    all = all && v.all_pass();
    ErrorChain chain = selfpower_error_chain(x, st, budget);
    auto achieved = st.B >= 2 ? exponent_of(chain.total, log_of(st.B, budget), budget) : std::nullopt;
    exps.push_back(achieved);
    IntervalReal M_phi = phi_lipschitz(IntervalReal(truncate(x, st.m), budget), budget);
    arr.push_back({{"j", std::to_string(st.j)},
                   {"m", std::to_string(st.m)},
                   {"U", to_string(st.U)},
                   {"V", to_string(st.V)},
                   {"A", to_string(st.A)},
                   {"B", to_string(st.B)},
                   {"checks",
                    {{"v_floor", verdict_word(v.v_floor)},
                     {"cond_ii", verdict_word(v.cond_ii)},
                     {"cond_iii", verdict_word(v.cond_iii)},
                     {"size_coupling", verdict_word(v.size_coupling)}}},
                   {"cond_ii_order", optional_enclosure(v.cond_ii_order)},
                   {"cond_iii_order", optional_enclosure(v.cond_iii_order)},
                   {"M_phi", enclosure_json(M_phi)},
                   {"error", chain_json(chain)},
                   {"achieved_exponent", optional_enclosure(achieved)}});
  }
  doc["stages"] = arr;
  doc["verdict"] = verdict_json(exps, {}, false, std::nullopt);
  doc["verdict"]["conditions_met"] = all;
  return doc;
}

nlohmann::json selfpower_certificate(const JarnikTarget& u, const std::vector<long>& stages,
                                     std::string_view L_rule, const std::vector<BigInt>& targets, long budget) {
  json doc = document("selfpower", budget);
  doc["target"] = to_json(u);
  doc["l_rule"] = std::string(L_rule);
  doc["targets"] = strings_of(targets);
  json arr = json::array();
  std::vector<std::optional<IntervalReal>> exps;
  for (long n : stages) {
    SelfPowerStage s = exp_of_jarnik_certificate(u, n, L_rule, budget);
    exps.push_back(s.achieved_exponent);
    arr.push_back({{"n", std::to_string(n)},
                   {"approximant", to_string(s.approximant)},
                   {"L", std::to_string(s.L)},
                   {"P", to_string(s.P)},
                   {"Q", to_string(s.Q)},
                   {"error", chain_json(s.error)},
                   {"achieved_exponent", optional_enclosure(s.achieved_exponent)}});
  }
  doc["stages"] = arr;
  doc["verdict"] = verdict_json(exps, targets, false, std::nullopt);
  return doc;
}

namespace {

json polynomial_json(const Polynomial& P) {
  json monos = json::array();
  for (const auto& m : P.terms) {
    json e = json::array();
    for (auto x : m.exps) e.push_back(std::to_string(x));
    monos.push_back({{"coeff", to_string(m.coeff)}, {"exps", e}});
  }
  return {{"text", to_string(P)}, {"variables", std::to_string(P.variables)}, {"monomials", monos}};
}

Polynomial polynomial_from_json(const json& j) {
  Polynomial P;
  P.variables = static_cast<std::size_t>(to_long(parse_integer(j.at("variables").get<std::string>())));
  if (P.variables > 64) throw DomainError("too many variables");
  for (const auto& m : j.at("monomials")) {
    Monomial mono{parse_integer(m.at("coeff").get<std::string>()), {}};
    for (const auto& e : m.at("exps")) {
      BigInt v = parse_integer(e.get<std::string>());
      if (v < 0 || v > 100000) throw DomainError("monomial exponent out of range");
      mono.exps.push_back(v.get_ui());
    }
    if (mono.exps.size() != P.variables) throw DomainError("monomial arity differs from variable count");
    P.terms.push_back(std::move(mono));
  }
  return P;
}

}  // namespace

nlohmann::json poly_certificate(const Polynomial& P, const std::vector<SpiffyNumber>& inputs,
                                const std::vector<long>& levels, const std::vector<BigInt>& targets, long budget) {
  json doc = document("poly", budget);
  doc["poly"] = polynomial_json(P);
  json in = json::array();
  for (const auto& x : inputs) in.push_back(to_json(x));
  doc["inputs"] = in;
  doc["targets"] = strings_of(targets);
  json arr = json::array();
  std::vector<std::optional<IntervalReal>> exps;
  bool rational = false;
  std::optional<std::string> value;
  for (long m : levels) {
    PolyClosureStage s = poly_closure_certificate(P, inputs, m, budget);
    exps.push_back(s.achieved_exponent_qm);
    if (s.rational && !rational) {
      rational = true;
      value = to_string(s.R);
    }
    arr.push_back({{"m", std::to_string(m)},
                   {"R", to_string(s.R)},
                   {"D", std::to_string(s.D)},
                   {"B_divides_qD", s.B_divides_qD},
                   {"M", to_string(s.M)},
                   {"C", to_string(s.C)},
                   {"tail", to_json(s.tail)},
                   {"error", to_json(s.error)},
                   {"rational", s.rational},
                   {"achieved_exponent", optional_enclosure(s.achieved_exponent)},
                   {"achieved_exponent_qm", optional_enclosure(s.achieved_exponent_qm)}});
  }
  doc["stages"] = arr;
  doc["verdict"] = verdict_json(exps, targets, rational, value);
  return doc;
}

nlohmann::json pairwise_certificate(const SpiffyNumber& x, const SpiffyNumber& y, const std::vector<long>& levels,
                                    GapRule required, const std::vector<BigInt>& targets, long budget) {
  json doc = document("pairwise", budget);
  doc["x"] = to_json(x);
  doc["y"] = to_json(y);
  doc["levels"] = strings_of(levels);
  doc["gap_rule"] = rule_name(required);
  doc["targets"] = strings_of(targets);
  json arr = json::array();
  std::vector<std::optional<IntervalReal>> exps;
  bool gaps_ok = true;
  for (long k = 1; k <= static_cast<long>(levels.size()); ++k) {
    PairwiseStage s = pairwise_power_certificate(x, y, levels, k, budget);
    exps.push_back(s.achieved_exponent);
    if (static_cast<std::size_t>(k) < levels.size()) {
      bool ok = s.gap_to_next && (required == GapRule::Relaxed || *s.gap_to_next == GapRule::Literal);
      gaps_ok = gaps_ok && ok;
    }
    arr.push_back({{"k", std::to_string(k)},
                   {"m", std::to_string(s.m)},
                   {"anchor", to_string(s.anchor)},
                   {"dirichlet_Q", to_string(s.dirichlet_Q)},
                   {"dirichlet_capped", s.dirichlet_capped},
                   {"r", to_string(s.r)},
                   {"s", to_string(s.s)},
                   {"U_tilde", to_string(s.U_tilde)},
                   {"d", to_string(s.d)},
                   {"L", std::to_string(s.L)},
                   {"P", to_string(s.P)},
                   {"Q", to_string(s.Q)},
                   {"error", chain_json(s.error)},
                   {"achieved_exponent", optional_enclosure(s.achieved_exponent)},
                   {"gap_to_next", static_cast<std::size_t>(k) < levels.size() ? json(rule_name(s.gap_to_next))
                                                                               : json(nullptr)}});
  }
  doc["stages"] = arr;
  doc["constants"]["gap_rule_satisfied"] = gaps_ok;
  doc["verdict"] = verdict_json(exps, targets, false, std::nullopt);
  return doc;
}

bool certificate_succeeded(const nlohmann::json& cert) {
  const json& v = cert.at("verdict");
  if (v.at("status") == "rational") return true;
  for (const auto& t : v.at("targets")) {
    if (t.at("stage").is_null()) return false;
  }
  const std::string type = cert.at("type").get<std::string>();
  if (type == "tuned") return v.at("conditions_met").get<bool>();
  if (type == "pairwise") return cert.at("constants").at("gap_rule_satisfied").get<bool>();
  return true;
}

// ---------------------------------------------------------------- verifier

namespace {

struct Rejection {
  std::string check;
};

void require(bool ok, const std::string& check) {
  if (!ok) throw Rejection{check};
}

void require_keys(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  for (const char* k : keys) {
    if (!j.contains(k)) throw MalformedError(where + ": missing key '" + k + "'");
  }
}

std::vector<BigInt> integers_of(const json& a) {
  std::vector<BigInt> out;
  for (const auto& v : a) out.push_back(parse_integer(v.get<std::string>()));
  return out;
}

std::vector<long> longs_of(const json& a) {
  std::vector<long> out;
  for (const auto& v : a) out.push_back(to_long(parse_integer(v.get<std::string>())));
  return out;
}

BigInt int_field(const json& j, const char* key) { return parse_integer(j.at(key).get<std::string>()); }
BigRational rat_field(const json& j, const char* key) { return parse_rational(j.at(key).get<std::string>()); }

std::string stage_label(const std::string& unit, std::size_t i) { return unit + " " + std::to_string(i + 1); }

// |e^U - P/Q| <= remainder, with a certified exp.
void check_taylor(const BigRational& U, long L, const BigInt& P, const BigInt& Q, long budget,
                  const std::string& where) {
  require(Q >= 1, where + ": Q");
  ExpApproximant t = exp_taylor_rational(U, L, false, budget);
  require(t.value == make_rational(P, Q) && t.value.get_num() == P && t.value.get_den() == Q,
          where + ": taylor_polynomial");
  long need = budget + static_cast<long>(bit_length(t.remainder_bound.get_den())) + 64;
  IntervalReal e = interval_exp(IntervalReal(U, need));
  IntervalReal gap = abs(e - IntervalReal(make_rational(P, Q), need));
  require(gap.upper() <= t.remainder_bound, where + ": taylor_remainder");
}

// Stored total must dominate the stored terms.
void check_chain(const json& chain, long budget, const std::string& where) {
  ExtendedMagnitude sum;
  for (const auto& t : chain.at("terms")) sum = mag_add(sum, magnitude_from_json(t.at("value")), budget).value;
  ExtendedMagnitude total = magnitude_from_json(chain.at("total"));
  require(mag_compare(sum, total, budget) != std::strong_ordering::greater, where + ": error_total");
}

void verify_tuned(const json& cert, long budget) {
  SpiffyNumber x = spiffy_from_json(cert.at("x"));
  const json& arr = cert.at("stages");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& s = arr[i];
    TunedStage st{to_long(int_field(s, "j")), to_long(int_field(s, "m")), int_field(s, "U"), int_field(s, "V"),
                  int_field(s, "A"), int_field(s, "B")};
    TunedStageVerdict v = verify_tuned_certificate({st}, x, budget).front();
    const json& checks = s.at("checks");
    std::string where = stage_label("stage", i);
    require(checks.at("v_floor") == verdict_word(v.v_floor), where + ": v_floor");
    require(checks.at("cond_ii") == verdict_word(v.cond_ii), where + ": cond_ii");
    require(checks.at("cond_iii") == verdict_word(v.cond_iii), where + ": cond_iii");
    require(checks.at("size_coupling") == verdict_word(v.size_coupling), where + ": size_coupling");
    check_chain(s.at("error"), budget, where);
  }
}

void verify_selfpower(const json& cert, long budget) {
  const json& tj = cert.at("target");
  JarnikTarget u = jarnik_generate(ForcedSchedule::parse(tj.at("forced").get<std::string>()),
                                   parse_integer(tj.at("filler").get<std::string>()),
                                   tj.at("stage_count").get<long>(), budget);
  require(to_json(u.cf) == tj.at("cf"), "target: quotients");
  IntervalReal uval = jarnik_value(u);
  std::string rule = cert.at("l_rule").get<std::string>();
  const json& arr = cert.at("stages");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& s = arr[i];
    std::string where = stage_label("stage", i);
    long n = to_long(int_field(s, "n"));
    require(n >= 1 && static_cast<std::size_t>(n) <= u.stages.size(), where + ": n");
    const JarnikStage& js = u.stages[static_cast<std::size_t>(n - 1)];
    BigRational U = rat_field(s, "approximant");
    require(U == js.approximant.value(), where + ": approximant");
    // |u - A/B| <= 1/(B B') over the whole enclosure of u
    IntervalReal d = abs(uval - IntervalReal(U, budget));
    require(d.upper() <= js.error_upper, where + ": target_gap");
    long L = to_long(int_field(s, "L"));
    require(L == apply_degree_rule(rule, n), where + ": L");
    check_taylor(U, L, int_field(s, "P"), int_field(s, "Q"), budget, where);
    check_chain(s.at("error"), budget, where);
  }
}

void verify_poly(const json& cert, long budget) {
  Polynomial P = polynomial_from_json(cert.at("poly"));
  std::vector<SpiffyNumber> inputs;
  for (const auto& x : cert.at("inputs")) inputs.push_back(spiffy_from_json(x));
  const json& arr = cert.at("stages");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& s = arr[i];
    std::string where = stage_label("stage", i);
    long m = to_long(int_field(s, "m"));
    std::vector<BigRational> r;
    std::vector<IntervalReal> box;
    for (const auto& x : inputs) {
      r.push_back(truncate(x, m));
      box.push_back(evaluate_enclosure(x, m, budget));
    }
    BigRational R = rat_field(s, "R");
    require(R == P.evaluate(r), where + ": R");
    ExtendedMagnitude err = magnitude_from_json(s.at("error"));
    if (err.level() == 0) {
      IntervalReal diff = abs(P.evaluate(box) - IntervalReal(R, budget));
      require(diff.upper() <= err.value(), where + ": closure_bound");
    }
  }
}

void verify_pairwise(const json& cert, long budget) {
  SpiffyNumber x = spiffy_from_json(cert.at("x"));
  SpiffyNumber y = spiffy_from_json(cert.at("y"));
  std::vector<long> levels = longs_of(cert.at("levels"));
  const json& arr = cert.at("stages");
  require(arr.size() == levels.size(), "stages: count");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& s = arr[i];
    std::string where = stage_label("stage", i);
    long m = to_long(int_field(s, "m"));
    require(m == levels[i], where + ": m");
    BigRational a = rat_field(s, "anchor");
    require(a == truncate(x, m) && a == truncate(y, m), where + ": anchor");
    BigInt Qd = int_field(s, "dirichlet_Q");
    BigInt r = int_field(s, "r");
    BigInt sd = int_field(s, "s");
    require(sd >= 1 && sd <= Qd, where + ": s");
    IntervalReal gap = abs(interval_log(IntervalReal(a, budget)) - IntervalReal(make_rational(r, sd), budget));
    require(gap.upper() <= BigRational(1) / BigRational(sd * Qd), where + ": dirichlet");
    BigRational Ut = rat_field(s, "U_tilde");
    require(Ut == a * make_rational(r, sd), where + ": U_tilde");
    check_taylor(Ut, to_long(int_field(s, "L")), int_field(s, "P"), int_field(s, "Q"), budget, where);
    check_chain(s.at("error"), budget, where);
  }
}

json rebuild(const json& cert, long budget) {
  const std::string type = cert.at("type").get<std::string>();
  std::vector<long> stage_ids;
  if (type == "tuned") {
    SpiffyNumber x = spiffy_from_json(cert.at("x"));
    std::vector<TunedStage> stages;
    for (const auto& s : cert.at("stages")) {
      stages.push_back({to_long(int_field(s, "j")), to_long(int_field(s, "m")), int_field(s, "U"), int_field(s, "V"),
                        int_field(s, "A"), int_field(s, "B")});
    }
    return tuned_certificate(x, stages, budget);
  }
  if (type == "selfpower") {
    const json& tj = cert.at("target");
    JarnikTarget u = jarnik_generate(ForcedSchedule::parse(tj.at("forced").get<std::string>()),
                                     parse_integer(tj.at("filler").get<std::string>()),
                                     tj.at("stage_count").get<long>(), budget);
    for (const auto& s : cert.at("stages")) stage_ids.push_back(to_long(int_field(s, "n")));
    return selfpower_certificate(u, stage_ids, cert.at("l_rule").get<std::string>(),
                                 integers_of(cert.at("targets")), budget);
  }
  if (type == "poly") {
    std::vector<SpiffyNumber> inputs;
    for (const auto& x : cert.at("inputs")) inputs.push_back(spiffy_from_json(x));
    for (const auto& s : cert.at("stages")) stage_ids.push_back(to_long(int_field(s, "m")));
    return poly_certificate(polynomial_from_json(cert.at("poly")), inputs, stage_ids,
                            integers_of(cert.at("targets")), budget);
  }
  std::string rule = cert.at("gap_rule").get<std::string>();
  if (rule != "literal" && rule != "relaxed") throw DomainError("unknown gap rule");
  return pairwise_certificate(spiffy_from_json(cert.at("x")), spiffy_from_json(cert.at("y")),
                              longs_of(cert.at("levels")), rule == "literal" ? GapRule::Literal : GapRule::Relaxed,
                              integers_of(cert.at("targets")), budget);
}

// "/stages/1/P" -> "stage 2: P"
std::string describe_path(const std::string& path) {
  std::vector<std::string> parts;
  std::size_t start = 1;
  while (start <= path.size()) {
    std::size_t pos = path.find('/', start);
    parts.push_back(path.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  if (parts.size() >= 2 && parts[0] == "stages" && !parts[1].empty() &&
      std::all_of(parts[1].begin(), parts[1].end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    std::string rest;
    for (std::size_t i = 2; i < parts.size(); ++i) rest += (rest.empty() ? "" : "/") + parts[i];
    return "stage " + std::to_string(std::stoul(parts[1]) + 1) + ": " + (rest.empty() ? "stage" : rest);
  }
  return path.empty() ? "document" : path.substr(1);
}

void check_structure(const json& cert) {
  if (!cert.is_object()) throw MalformedError("certificate must be a JSON object");
  require_keys(cert, {"schema_version", "type", "stages", "constants", "verdict"}, "certificate");
  if (!cert["schema_version"].is_number_integer() || cert["schema_version"].get<long>() != kCertificateSchemaVersion) {
    throw MalformedError("unsupported schema_version");
  }
  if (!cert["type"].is_string()) throw MalformedError("type must be a string");
  if (!cert["stages"].is_array()) throw MalformedError("stages must be an array");
  if (!cert["constants"].is_object() || !cert["constants"].contains("budget") ||
      !cert["constants"]["budget"].is_number_integer()) {
    throw MalformedError("constants.budget must be an integer");
  }
  long b = cert["constants"]["budget"].get<long>();
  if (b < 32 || b > (1L << 20)) throw MalformedError("constants.budget out of range");
  const std::string type = cert["type"].get<std::string>();
  if (type == "tuned") {
    require_keys(cert, {"x"}, "tuned");
  } else if (type == "selfpower") {
    require_keys(cert, {"target", "l_rule", "targets"}, "selfpower");
  } else if (type == "poly") {
    require_keys(cert, {"poly", "inputs", "targets"}, "poly");
  } else if (type == "pairwise") {
    require_keys(cert, {"x", "y", "levels", "gap_rule", "targets"}, "pairwise");
  } else {
    throw MalformedError("unknown certificate type '" + type + "'");
  }
  for (const auto& s : cert["stages"]) {
    if (!s.is_object()) throw MalformedError("stage entries must be objects");
  }
}

}  // namespace

VerifyReport verify_certificate(const nlohmann::json& cert, std::optional<long> budget_override) {
  VerifyReport rep;
  try {
    check_structure(cert);
  } catch (const MalformedError& e) {
    rep.status = VerifyReport::Status::Malformed;
    rep.failing_check = e.what();
    return rep;
  }
  long budget = budget_override.value_or(cert["constants"]["budget"].get<long>());
  const std::string type = cert["type"].get<std::string>();
  try {
    if (type == "tuned") verify_tuned(cert, budget);
    if (type == "selfpower") verify_selfpower(cert, budget);
    if (type == "poly") verify_poly(cert, budget);
    if (type == "pairwise") verify_pairwise(cert, budget);
    json fresh = rebuild(cert, budget);
    fresh["constants"]["budget"] = cert["constants"]["budget"];
    if (fresh != cert) {
      json patch = json::diff(cert, fresh);
      std::string path = patch.empty() ? "" : patch[0].at("path").get<std::string>();
      throw Rejection{describe_path(path) + " disagrees with the recomputed value"};
    }
  } catch (const Rejection& r) {
    rep.status = VerifyReport::Status::Rejected;
    rep.failing_check = r.check;
    return rep;
  } catch (const IncomparableError&) {
    throw;
  } catch (const std::exception& e) {
    rep.status = VerifyReport::Status::Rejected;
    rep.failing_check = std::string("recomputation failed: ") + e.what();
    return rep;
  }
  rep.status = VerifyReport::Status::Accepted;
  rep.verdict = cert["verdict"].at("status").get<std::string>();
  const json& arr = cert["stages"];
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& a = arr[i].contains("achieved_exponent_qm") ? arr[i]["achieved_exponent_qm"]
                                                             : arr[i]["achieved_exponent"];
    std::optional<IntervalReal> e;
    if (!a.is_null()) {
      e = IntervalReal(parse_rational(a.at("lower").get<std::string>()),
                       parse_rational(a.at("upper").get<std::string>()), budget);
    }
    rep.achieved.emplace_back(static_cast<long>(i + 1), e);
  }
  return rep;
}

}  // namespace liouville
