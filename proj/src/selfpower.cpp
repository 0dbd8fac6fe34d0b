#include "liouville/selfpower.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "liouville/errors.hpp"

namespace liouville {

namespace {

BigRational two_pow_neg(long k) { return 1 / BigRational(BigInt(1) << static_cast<unsigned long>(k)); }

IntervalReal phi_point(const BigRational& x, long budget) {
  IntervalReal X(x, budget);
  return X * interval_log(X);
}

IntervalReal f_point(const BigRational& x, long budget) {
  return interval_exp(phi_point(x, budget));
}

double phi_double(double x) { return x * std::log(x); }

// Plain double bisection; only a starting point for the certified search.
double approx_root(double t, Branch br) {
  const double c = std::exp(-1.0);
  double lo = br == Branch::Lower ? 0.0 : c;
  double hi = br == Branch::Lower ? c : 1.0;
  if (br == Branch::Upper) {
    while (phi_double(hi) < t && hi < 1e300) hi *= 2;
  }
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    bool right = br == Branch::Lower ? phi_double(mid) > t : phi_double(mid) < t;
    (right ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

struct RootSearch {
  BigRational u_lo, u_hi;
  Branch br;
  long budget;
  IntervalReal ie;

  // Left end of a certified bracket, or nullopt if `a` does not certify.
  std::optional<BigRational> left_ok(const BigRational& a) const {
    if (br == Branch::Upper) {
      if (a < ie.upper()) return ie.lower();
      if (phi_point(a, budget).upper() < u_lo) return a;
      return std::nullopt;
    }
    if (a <= 0) return BigRational(0);  // phi(0+) = 0 > u_hi
    if (a <= ie.lower() && phi_point(a, budget).lower() > u_hi) return a;
    return std::nullopt;
  }

  std::optional<BigRational> right_ok(const BigRational& b) const {
    if (br == Branch::Lower) {
      if (b > ie.lower()) return ie.upper();
      if (phi_point(b, budget).upper() < u_lo) return b;
      return std::nullopt;
    }
    if (b >= ie.upper() && phi_point(b, budget).lower() > u_hi) return b;
    return std::nullopt;
  }

  std::optional<IntervalReal> bracket(const BigRational& x, const BigRational& eps) const {
    auto a = left_ok(x - eps);
    if (!a) return std::nullopt;
    auto b = right_ok(x + eps);
    if (!b) return std::nullopt;
    return IntervalReal(*a, *b, budget);
  }

  std::optional<BigRational> newton(long bits) const {
    BigRational t = (u_lo + u_hi) / 2;
    double x0 = approx_root(to_double(t), br);
    if (!(x0 > 1e-300) || !std::isfinite(x0)) return std::nullopt;
    BigRational x(x0);
    const long grid = bits + 16;
    for (int i = 0; i < 60; ++i) {
      IntervalReal X(x, budget + 32);
      IntervalReal L = interval_log(X);
      BigRational v = (X * L).midpoint();
      BigRational d = L.midpoint() + 1;
      if (d == 0) break;
      BigRational step = (v - t) / d;
      BigRational next = round_down(x - step, grid);
      if (next <= 0) next = x / 2;
      if (br == Branch::Upper && next < ie.upper()) next = (x + ie.upper()) / 2;
      if (br == Branch::Lower && next > ie.lower()) next = x / 2 + ie.lower() / 2;
      x = next;
      if (abs(step) < two_pow_neg(bits + 4)) break;
    }
    return x;
  }

  IntervalReal bisect(long bits) const {
    BigRational a, b;
    if (br == Branch::Upper) {
      a = ie.lower();
      b = 1;
      while (!right_ok(b)) b *= 2;
    } else {
      b = ie.upper();
      a = BigRational(1, 2);
      while (!left_ok(a)) a /= 2;
    }
    for (long i = 0; i < bits + 64 && b - a > two_pow_neg(bits); ++i) {
      BigRational mid = round_down((a + b) / 2, bits + 32);
      if (mid <= a || mid >= b) break;
      IntervalReal v = phi_point(mid, budget);
      bool below = v.upper() < u_lo;
      bool above = v.lower() > u_hi;
      if (!below && !above) break;
      // phi increases on the upper branch and decreases on the lower one
      bool go_right = br == Branch::Upper ? below : above;
      if (go_right) {
        if (br == Branch::Lower && mid > ie.lower()) break;
        a = mid;
      } else {
        if (br == Branch::Upper && mid < ie.upper()) break;
        b = mid;
      }
    }
    return IntervalReal(a, b, budget);
  }

  IntervalReal run() const {
    long bits = std::max(budget - 16, 32L);
    if (auto x = newton(bits)) {
      BigRational eps = two_pow_neg(bits);
      for (int i = 0; i < 2 * bits / 3 + 8; ++i, eps *= 4) {
        if (auto r = bracket(*x, eps)) return *r;
      }
    }
    return bisect(bits);
  }
};

IntervalReal branch_root(const BigRational& u_lo, const BigRational& u_hi, Branch br, long budget) {
  return RootSearch{u_lo, u_hi, br, budget, inv_e(budget + 32)}.run();
}

BigRational dist_lower(const IntervalReal& F, const BigRational& q) {
  if (q < F.lower()) return F.lower() - q;
  if (q > F.upper()) return q - F.upper();
  return 0;
}

// b^-tau as an enclosure; exact when tau is an integer.
IntervalReal neg_power(long b, const BigRational& tau, long budget) {
  if (tau.get_den() == 1) {
    BigInt p = pow(BigInt(b), tau.get_num().get_ui());
    return IntervalReal(1 / BigRational(p), budget);
  }
  IntervalReal lb = interval_log(IntervalReal(BigRational(b), budget));
  return interval_exp(-(IntervalReal(tau, budget) * lb));
}

struct DenominatorResult {
  long scanned = 0;
  std::vector<ScanViolation> violations;
  std::vector<std::pair<BigInt, BigInt>> undecided;
};

void scan_denominator(long b, const IntervalReal& F, const BigRational& tau, long budget,
                      DenominatorResult& out) {
  // b^-tau <= b^-floor(tau): a cheap rational cover for the candidate window
  const BigRational cover = 1 / BigRational(pow(BigInt(b), floor(tau).get_ui()));
  BigInt a_lo = ceil(BigRational(b) * (F.lower() - cover));
  BigInt a_hi = floor(BigRational(b) * (F.upper() + cover));
  if (a_lo < 0) a_lo = 0;
  std::optional<IntervalReal> bt;
  BigInt g;
  for (BigInt a = a_lo; a <= a_hi; ++a) {
    mpz_gcd_ui(g.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(b));
    if (g != 1) continue;
    ++out.scanned;
    BigRational q = make_rational(a, BigInt(b));
    BigRational d_lo = dist_lower(F, q);
    if (d_lo >= cover) continue;
    BigRational d_hi = std::max(abs(F.lower() - q), abs(F.upper() - q));
    if (!bt) bt = neg_power(b, tau, budget);
    if (d_hi < bt->lower()) {
      int sign = q > F.upper() ? 1 : (q < F.lower() ? -1 : 0);
      out.violations.push_back({a, BigInt(b), sign, d_lo});
    } else if (d_lo < bt->upper()) {
      out.undecided.emplace_back(a, BigInt(b));
    }
  }
}

void check_scan_input(const IntervalReal& xi, const BigRational& tau, long b_max, long budget) {
  if (tau <= 2) throw DomainError("tau must exceed 2");
  if (b_max < 0) throw DomainError("b_max must be >= 0");
  if (!(xi.lower() > inv_e(budget).upper()) || xi.upper() > 1) {
    throw DomainError("xi must lie in (1/e, 1]");
  }
}

ExclusionReport finish(const IntervalReal& xi, const IntervalReal& F, const BigRational& tau, long b_max,
                       DenominatorResult all) {
  if (!all.undecided.empty()) {
    std::sort(all.undecided.begin(), all.undecided.end(),
              [](const auto& x, const auto& y) { return std::tie(x.second, x.first) < std::tie(y.second, y.first); });
    std::ostringstream msg;
    msg << "precision insufficient for " << all.undecided.size() << " pair(s):";
    for (std::size_t i = 0; i < std::min<std::size_t>(all.undecided.size(), 20); ++i) {
      msg << " " << all.undecided[i].first.get_str() << "/" << all.undecided[i].second.get_str();
    }
    throw IncomparableError(msg.str());
  }
  std::sort(all.violations.begin(), all.violations.end(),
            [](const ScanViolation& x, const ScanViolation& y) { return std::tie(x.b, x.a) < std::tie(y.b, y.a); });
  ExclusionReport r;
  r.xi = xi;
  r.f_xi = F;
  r.tau = tau;
  r.b_max = b_max;
  r.scanned = all.scanned;
  r.violations = std::move(all.violations);
  return r;
}

}  // namespace

IntervalReal inv_e(long budget) { return interval_exp(IntervalReal(BigRational(-1), budget)); }

IntervalReal self_power_min(long budget) { return interval_exp(-inv_e(budget + 16)).with_budget(budget); }

IntervalReal xlogx(const IntervalReal& t) { return t * interval_log(t); }

IntervalReal self_power(const IntervalReal& x, long budget) {
  if (!x.positive()) throw DomainError("x^x needs x > 0");
  if (x.is_point()) return f_point(x.lower(), budget);
  IntervalReal ie = inv_e(budget);
  IntervalReal lo = f_point(x.lower(), budget);
  IntervalReal hi = f_point(x.upper(), budget);
  if (x.lower() >= ie.upper()) return IntervalReal(lo.lower(), hi.upper(), budget);
  if (x.upper() <= ie.lower()) return IntervalReal(hi.lower(), lo.upper(), budget);
  return IntervalReal(self_power_min(budget).lower(), std::max(lo.upper(), hi.upper()), budget);
}

IntervalReal self_power_derivative(const IntervalReal& x, long budget) {
  if (!x.positive()) throw DomainError("f' needs x > 0");
  IntervalReal X = x.with_budget(budget);
  IntervalReal L = interval_log(X);
  return interval_exp(X * L) * (L + IntervalReal(BigRational(1), budget));
}

DerivativeBounds derivative_bounds(const BigRational& delta, long budget) {
  if (delta > 1) throw DomainError("delta must be <= 1");
  if (!(delta > inv_e(budget).upper())) throw DomainError("delta must exceed 1/e (f' vanishes at 1/e)");
  DerivativeBounds d;
  d.delta = delta;
  d.m = self_power_derivative(IntervalReal(delta, budget), budget);
  d.M = IntervalReal(BigRational(1), budget);
  d.near_critical = d.m.upper() < two_pow_neg(10);
  return d;
}

IntervalReal phi_lipschitz(const IntervalReal& delta, long budget) {
  if (!delta.positive() || delta.upper() >= 1) throw DomainError("delta must lie in (0, 1)");
  IntervalReal g = abs(interval_log(delta.with_budget(budget)) + IntervalReal(BigRational(1), budget));
  return IntervalReal(std::max(BigRational(1), g.lower()), std::max(BigRational(1), g.upper()), budget);
}

IntervalReal invert_xlogx(const IntervalReal& u, Branch branch, long budget) {
  IntervalReal minus_inv_e = -inv_e(budget + 32);
  if (u.upper() < minus_inv_e.lower()) throw DomainError("x log x >= -1/e");
  if (branch == Branch::Lower) {
    if (u.lower() >= 0) throw DomainError("lower branch is empty for u >= 0");
    if (u.upper() >= 0) throw AmbiguousEnclosureError("enclosure straddles 0 on the lower branch");
  }
  // targets below -1/e have no preimage; clip to the attainable part
  BigRational lo = std::max(u.lower(), minus_inv_e.lower());
  BigRational hi = u.upper();
  if (u.width() <= two_pow_neg(budget - 16)) return branch_root(lo, hi, branch, budget);
  IntervalReal a = branch_root(lo, lo, branch, budget);
  IntervalReal b = branch_root(hi, hi, branch, budget);
  return hull(a, b);
}

std::vector<IntervalReal> invert_self_power(const IntervalReal& y, long budget) {
  if (!y.positive()) throw DomainError("x^x > 0");
  IntervalReal c = self_power_min(budget + 32);
  if (y.upper() < c.lower()) return {};
  IntervalReal u = interval_log(y.with_budget(budget + 32));
  if (y.lower() >= 1) return {invert_xlogx(u, Branch::Upper, budget)};
  if (y.upper() >= 1) throw AmbiguousEnclosureError("enclosure straddles 1");
  if (y.lower() > c.upper()) {
    return {invert_xlogx(u, Branch::Lower, budget), invert_xlogx(u, Branch::Upper, budget)};
  }
  // y touches the minimum: accept only a narrow enclosure, whose preimages
  // all sit in one small neighbourhood of 1/e
  if (y.width() > two_pow_neg(budget / 2)) throw AmbiguousEnclosureError("enclosure straddles e^(-1/e)");
  return {hull(invert_xlogx(u, Branch::Lower, budget), invert_xlogx(u, Branch::Upper, budget))};
}

ExclusionReport non_liouville_scan_serial(const IntervalReal& xi, const BigRational& tau, long b_max,
                                          long budget) {
  check_scan_input(xi, tau, b_max, budget);
  IntervalReal F = self_power(xi, budget);
  DenominatorResult all;
  for (long b = 2; b <= b_max; ++b) scan_denominator(b, F, tau, budget, all);
  return finish(xi, F, tau, b_max, std::move(all));
}

ExclusionReport non_liouville_scan(const IntervalReal& xi, const BigRational& tau, long b_max, int jobs,
                                   long budget) {
  check_scan_input(xi, tau, b_max, budget);
  IntervalReal F = self_power(xi, budget);
  DenominatorResult all;
  int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel num_threads(threads)
  {
    DenominatorResult local;
#pragma omp for schedule(dynamic, 64) nowait
    for (long b = 2; b <= b_max; ++b) scan_denominator(b, F, tau, budget, local);
#pragma omp critical(liouville_scan_merge)
    {
      all.scanned += local.scanned;
      all.violations.insert(all.violations.end(), local.violations.begin(), local.violations.end());
      all.undecided.insert(all.undecided.end(), local.undecided.begin(), local.undecided.end());
    }
  }
  return finish(xi, F, tau, b_max, std::move(all));
}

std::string to_csv(const ExclusionReport& r) {
  std::string out = "a,b,gap_sign,certified_gap\n";
  for (const auto& v : r.violations) {
    out += v.a.get_str() + "," + v.b.get_str() + "," + std::to_string(v.gap_sign) + "," +
           to_string(v.certified_gap) + "\n";
  }
  return out;
}

nlohmann::json to_json(const ExclusionReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& v : r.violations) {
    rows.push_back({{"a", to_string(v.a)},
                    {"b", to_string(v.b)},
                    {"gap_sign", v.gap_sign},
                    {"certified_gap", to_string(v.certified_gap)}});
  }
  return {{"tau", to_string(r.tau)},
          {"b_max", r.b_max},
          {"scanned", r.scanned},
          {"f_xi", {{"lower", to_string(r.f_xi.lower())}, {"upper", to_string(r.f_xi.upper())}}},
          {"violations", rows}};
}

HausdorffPartial hausdorff_series_partial(const BigRational& s, const BigRational& tau, long b_lo, long b_hi,
                                          long budget) {
  if (b_lo < 1 || b_hi < b_lo) throw DomainError("need 1 <= b_lo <= b_hi");
  HausdorffPartial h;
  BigRational st = s * tau;
  h.convergent = st > 2;
  BigRational k = 1 - st;
  if (k.get_den() == 1) {
    BigRational sum = 0;
    long kk = to_long(k.get_num());
    for (long b = b_lo; b <= b_hi; ++b) {
      BigRational p(pow(BigInt(b), static_cast<unsigned long>(std::labs(kk))));
      sum += kk >= 0 ? p : 1 / p;
    }
    h.exact = sum;
    h.enclosure = IntervalReal(sum, budget);
    return h;
  }
  IntervalReal sum(BigRational(0), budget);
  IntervalReal K(k, budget);
  for (long b = b_lo; b <= b_hi; ++b) {
    sum = sum + interval_exp(K * interval_log(IntervalReal(BigRational(b), budget)));
  }
  h.enclosure = sum;
  return h;
}

}  // namespace liouville
