#include "smg/polynomial.hpp"

#include <algorithm>

namespace smg {

void Polynomial::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<Rational> d;
  for (size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Rational(static_cast<long>(i)));
  return Polynomial(std::move(d));
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
  for (auto& c : c_) c *= s;
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    for (size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return Polynomial(std::move(out));
}

std::pair<Polynomial, Polynomial> Polynomial::divrem(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = c_;
  int dd = divisor.degree();
  if (degree() < dd) return {Polynomial(), *this};
  std::vector<Rational> quot(static_cast<size_t>(degree() - dd + 1));
  for (int i = degree(); i >= dd; --i) {
    Rational factor = rem[static_cast<size_t>(i)] / divisor.leading();
    quot[static_cast<size_t>(i - dd)] = factor;
    if (factor.is_zero()) continue;
    for (int j = 0; j <= dd; ++j) {
      rem[static_cast<size_t>(i - dd + j)] -= factor * divisor.c_[static_cast<size_t>(j)];
    }
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Rational poly_eval(const Polynomial& poly, const Rational& x) { return poly(x); }

Polynomial poly_derivative(const Polynomial& poly) { return poly.derivative(); }

Polynomial poly_gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = a.divrem(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a * (Rational(1) / a.leading());
}

Polynomial square_free_part(const Polynomial& poly) {
  if (poly.degree() < 1) return poly;
  Polynomial g = poly_gcd(poly, poly.derivative());
  return poly.divrem(g).first;
}

namespace {

struct Interval {
  Rational lo, hi;
};

Interval mul(const Interval& a, const Interval& b) {
  Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

std::vector<Polynomial> sturm_chain(const Polynomial& q) {
  std::vector<Polynomial> chain{q, q.derivative()};
  while (!chain.back().is_zero()) {
    Polynomial r = -chain[chain.size() - 2].divrem(chain.back()).second;
    // Positive rescaling leaves sign sequences unchanged and keeps sizes down.
    if (!r.is_zero()) r *= Rational(1) / abs(r.leading());
    chain.push_back(std::move(r));
  }
  chain.pop_back();
  return chain;
}

int sign_variations(const std::vector<Polynomial>& chain, const Rational& x) {
  int count = 0;
  int last = 0;
  for (const auto& p : chain) {
    int s = p(x).sign();
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

class RootIsolator {
 public:
  RootIsolator(const Polynomial& poly, const Rational& tol)
      : q_(square_free_part(poly)), chain_(sturm_chain(q_)), tol_(tol) {
    if (poly.leading().sign() != q_.leading().sign()) q_ = -q_;
  }

  std::vector<RootInterval> run(const Rational& a, const Rational& b) {
    if (q_.degree() == 0) return {};
    if (q_(a).is_zero()) emit_exact(a);
    if (b != a && q_(b).is_zero()) emit_exact(b);
    if (a < b) refine(a, b);
    std::sort(out_.begin(), out_.end(), [](const RootInterval& x, const RootInterval& y) {
      return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi);
    });
    return out_;
  }

  int count_half_open(const Rational& a, const Rational& b) const {
    if (q_.degree() <= 0) return 0;
    return sign_variations(chain_, a) - sign_variations(chain_, b);
  }

 private:
  int count_open(const Rational& lo, const Rational& hi) const {
    return count_half_open(lo, hi) - (q_(hi).is_zero() ? 1 : 0);
  }

  void emit_exact(const Rational& r) {
    out_.push_back({r, r, orientation_at_exact(r)});
  }

  // q is square-free, so q'(r) != 0 at a root.
  SignChange orientation_at_exact(const Rational& r) const {
    return q_.derivative()(r).sign() > 0 ? SignChange::kDownUp : SignChange::kUpDown;
  }

  void refine(const Rational& lo, const Rational& hi) {
    int n = count_open(lo, hi);
    if (n == 0) return;
    if (n == 1 && hi - lo <= tol_) {
      out_.push_back({lo, hi, orientation_in(lo, hi)});
      return;
    }
    Rational mid = (lo + hi) / Rational(2);
    if (q_(mid).is_zero()) emit_exact(mid);
    refine(lo, mid);
    refine(mid, hi);
  }

  // Exactly one simple root r of q lies in (lo, hi). At least one endpoint is
  // not a root after one extra split, and q keeps its sign between that
  // endpoint and r.
  SignChange orientation_in(const Rational& lo, const Rational& hi) const {
    int s_hi = q_(hi).sign();
    if (s_hi != 0) return s_hi > 0 ? SignChange::kDownUp : SignChange::kUpDown;
    int s_lo = q_(lo).sign();
    if (s_lo != 0) return s_lo < 0 ? SignChange::kDownUp : SignChange::kUpDown;
    Rational mid = (lo + hi) / Rational(2);
    if (count_open(lo, mid) == 1) return orientation_in(lo, mid);
    return orientation_in(mid, hi);
  }

  Polynomial q_;
  std::vector<Polynomial> chain_;
  Rational tol_;
  std::vector<RootInterval> out_;
};

}  // namespace

Rational abs_bound_on(const Polynomial& poly, const Rational& lo, const Rational& hi) {
  Interval x{lo, hi};
  Interval acc{Rational(0), Rational(0)};
  const auto& c = poly.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = mul(acc, x);
    acc.lo += *it;
    acc.hi += *it;
  }
  return std::max(abs(acc.lo), abs(acc.hi));
}

std::vector<RootInterval> isolate_real_roots(const Polynomial& poly, const Rational& a,
                                             const Rational& b, const Rational& tol) {
  if (poly.is_zero()) throw ZeroPolynomialError();
  if (tol.sign() <= 0) throw std::invalid_argument("root isolation tolerance must be positive");
  if (b < a) throw std::invalid_argument("root isolation interval is empty");
  return RootIsolator(poly, tol).run(a, b);
}

int count_distinct_roots(const Polynomial& poly, const Rational& a, const Rational& b) {
  if (poly.is_zero()) throw ZeroPolynomialError();
  return RootIsolator(poly, Rational(1)).count_half_open(a, b);
}

}  // namespace smg
