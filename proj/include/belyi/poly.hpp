#pragma once

#include <stdexcept>
#include <vector>

#include "belyi/numbers.hpp"

namespace belyi {

// Dense univariate polynomial, coefficients ascending.  Trailing exact zeros
// are trimmed, so degree() is structural; over inexact scalars a tiny leading
// coefficient is the caller's concern.
template <class K>
struct Poly {
  std::vector<K> c;

  Poly() = default;
  explicit Poly(std::vector<K> coeffs) : c(std::move(coeffs)) { trim(); }
  static Poly constant(K v) { return Poly(std::vector<K>{std::move(v)}); }
  static Poly x() { return Poly(std::vector<K>{K(0), K(1)}); }

  void trim() {
    while (!c.empty() && ScalarTraits<K>::is_zero(c.back())) c.pop_back();
  }

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }

  const K& operator[](std::size_t i) const {
    static const K zero = K(0);
    return i < c.size() ? c[i] : zero;
  }

  K eval(const K& x) const {
    K r(0);
    for (std::size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& v : r.c) v = -v;
    return r;
  }
  Poly operator+(const Poly& o) const {
    std::vector<K> r(std::max(c.size(), o.c.size()), K(0));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = (*this)[i] + o[i];
    return Poly(std::move(r));
  }
  Poly operator-(const Poly& o) const { return *this + (-o); }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<K> r(c.size() + o.c.size() - 1, K(0));
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
    return Poly(std::move(r));
  }
  Poly operator*(const K& s) const {
    Poly r = *this;
    for (auto& v : r.c) v *= s;
    r.trim();
    return r;
  }

  Poly derivative() const {
    if (c.size() <= 1) return Poly();
    std::vector<K> r(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) r[i - 1] = c[i] * K(static_cast<int>(i));
    return Poly(std::move(r));
  }

  bool operator==(const Poly& o) const { return c == o.c; }
};

template <class K>
Poly<K> operator*(const K& s, const Poly<K>& p) {
  return p * s;
}

// division with remainder over a field
template <class K>
std::pair<Poly<K>, Poly<K>> divrem(const Poly<K>& a, const Poly<K>& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  Poly<K> r = a, q;
  q.c.assign(std::max(0, a.degree() - b.degree() + 1), K(0));
  while (!r.is_zero() && r.degree() >= b.degree()) {
    K f = r.c.back() / b.c.back();
    int sh = r.degree() - b.degree();
    q.c[sh] = f;
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i + sh] -= f * b.c[i];
    r.c.pop_back();
    r.trim();
  }
  q.trim();
  return {q, r};
}

inline Poly<Rat> make_monic(const Poly<Rat>& p) {
  if (p.is_zero()) return p;
  return p * (Rat(1) / p.c.back());
}

inline Poly<Rat> poly_gcd(Poly<Rat> a, Poly<Rat> b) {
  while (!b.is_zero()) {
    auto [q, r] = divrem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

// Yun's squarefree decomposition: f = lc * prod a_i^i with the a_i monic,
// squarefree and pairwise coprime.  Slot i-1 of the result holds a_i.
inline std::vector<Poly<Rat>> squarefree_decomposition(const Poly<Rat>& f) {
  std::vector<Poly<Rat>> out;
  if (f.degree() <= 0) return out;
  Poly<Rat> g = poly_gcd(f, f.derivative());
  if (g.degree() == 0) {
    out.push_back(make_monic(f));
    return out;
  }
  Poly<Rat> w = divrem(f, g).first;
  Poly<Rat> y = divrem(f.derivative(), g).first;
  Poly<Rat> z = y - w.derivative();
  while (true) {
    if (w.degree() == 0) break;
    Poly<Rat> a = poly_gcd(w, z);
    out.push_back(a);
    w = divrem(w, a).first;
    y = divrem(z, a).first;
    z = y - w.derivative();
  }
  return out;
}

inline bool is_separable(const Poly<Rat>& f) {
  if (f.degree() <= 0) return true;
  return poly_gcd(f, f.derivative()).degree() == 0;
}

template <class K>
Poly<K> poly_pow(Poly<K> base, unsigned e) {
  Poly<K> r = Poly<K>::constant(K(1));
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

inline Poly<Complex> to_complex_poly(const Poly<Rat>& p) {
  std::vector<Complex> c;
  c.reserve(p.c.size());
  for (const auto& q : p.c) c.emplace_back(q);
  return Poly<Complex>(std::move(c));
}

inline std::string poly_string(const Poly<Rat>& p, const std::string& var = "x") {
  if (p.is_zero()) return "0";
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    const Rat& a = p[static_cast<std::size_t>(i)];
    if (a == 0) continue;
    Rat mag = abs(a);
    if (!out.empty()) out += a > 0 ? " + " : " - ";
    else if (a < 0) out += "-";
    bool unit = mag == 1 && i > 0;
    if (!unit) out += rat_string(mag);
    if (i > 0) {
      if (!unit) out += "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

}  // namespace belyi
