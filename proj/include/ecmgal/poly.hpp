#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "ecmgal/curves.hpp"

namespace ecmgal {

/// Univariate polynomial, coefficients in ascending degree order, no trailing zeros.
template <class F>
struct Poly {
  using Elem = typename F::Elem;
  F field;
  std::vector<Elem> coeffs;

  Poly() = default;
  explicit Poly(F f, std::vector<Elem> c = {}) : field(std::move(f)), coeffs(std::move(c)) { trim(); }

  static Poly constant(const F& f, Elem v) { return Poly(f, {std::move(v)}); }
  static Poly x(const F& f) { return Poly(f, {f.zero(), f.one()}); }

  void trim() {
    while (!coeffs.empty() && field.is_zero(coeffs.back())) coeffs.pop_back();
  }
  bool is_zero() const { return coeffs.empty(); }
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  const Elem& lead() const { return coeffs.back(); }
  bool is_monic() const { return !coeffs.empty() && field.eq(coeffs.back(), field.one()); }

  Elem eval(const Elem& v) const {
    Elem acc = field.zero();
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = field.add(field.mul(acc, v), *it);
    return acc;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.coeffs.size() != b.coeffs.size()) return false;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
      if (!a.field.eq(a.coeffs[i], b.coeffs[i])) return false;
    return true;
  }
};

template <class F>
Poly<F> operator+(const Poly<F>& a, const Poly<F>& b) {
  std::vector<typename F::Elem> c(std::max(a.coeffs.size(), b.coeffs.size()), a.field.zero());
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) c[i] = a.coeffs[i];
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) c[i] = a.field.add(c[i], b.coeffs[i]);
  return Poly<F>(a.field, std::move(c));
}

template <class F>
Poly<F> operator-(const Poly<F>& a, const Poly<F>& b) {
  std::vector<typename F::Elem> c(std::max(a.coeffs.size(), b.coeffs.size()), a.field.zero());
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) c[i] = a.coeffs[i];
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) c[i] = a.field.sub(c[i], b.coeffs[i]);
  return Poly<F>(a.field, std::move(c));
}

template <class F>
Poly<F> operator*(const Poly<F>& a, const Poly<F>& b) {
  if (a.is_zero() || b.is_zero()) return Poly<F>(a.field);
  const F& f = a.field;
  std::vector<typename F::Elem> c(a.coeffs.size() + b.coeffs.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (f.is_zero(a.coeffs[i])) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) c[i + j] = f.add(c[i + j], f.mul(a.coeffs[i], b.coeffs[j]));
  }
  return Poly<F>(f, std::move(c));
}

template <class F>
Poly<F> scale(const Poly<F>& a, const typename F::Elem& s) {
  std::vector<typename F::Elem> c(a.coeffs);
  for (auto& v : c) v = a.field.mul(v, s);
  return Poly<F>(a.field, std::move(c));
}

template <class F>
Poly<F> monic(const Poly<F>& a) {
  if (a.is_zero()) throw std::domain_error("monic of zero polynomial");
  return scale(a, a.field.inv(a.lead()));
}

/// Quotient and remainder; the divisor's leading coefficient must be invertible.
template <class F>
std::pair<Poly<F>, Poly<F>> divmod(const Poly<F>& a, const Poly<F>& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const F& f = a.field;
  if (a.degree() < b.degree()) return {Poly<F>(f), a};
  std::vector<typename F::Elem> r(a.coeffs);
  std::vector<typename F::Elem> q(a.coeffs.size() - b.coeffs.size() + 1, f.zero());
  const auto inv_lead = f.inv(b.lead());
  const std::size_t db = b.coeffs.size() - 1;
  for (std::size_t i = r.size(); i-- > db;) {
    if (f.is_zero(r[i])) continue;
    auto coef = f.mul(r[i], inv_lead);
    q[i - db] = coef;
    for (std::size_t j = 0; j <= db; ++j) r[i - db + j] = f.sub(r[i - db + j], f.mul(coef, b.coeffs[j]));
  }
  r.resize(db);
  return {Poly<F>(f, std::move(q)), Poly<F>(f, std::move(r))};
}

template <class F>
Poly<F> operator%(const Poly<F>& a, const Poly<F>& b) {
  return divmod(a, b).second;
}

/// Monic gcd (zero if both inputs are zero).
template <class F>
Poly<F> gcd(Poly<F> a, Poly<F> b) {
  while (!b.is_zero()) {
    auto r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : monic(a);
}

/// base^e mod m.
template <class F>
Poly<F> powmod(Poly<F> base, u64 e, const Poly<F>& m) {
  Poly<F> acc = Poly<F>::constant(m.field, m.field.one()) % m;
  base = base % m;
  while (e) {
    if (e & 1) acc = (acc * base) % m;
    e >>= 1;
    if (e) base = (base * base) % m;
  }
  return acc;
}

using RatPoly = Poly<RationalField>;
using ModPoly = Poly<PrimeField>;

/// Distinct roots in F_p of f, ascending; seed drives the equal-degree splitting.
std::vector<u64> poly_roots(const ModPoly& f, u64 seed = 0);

}  // namespace ecmgal
