#pragma once

#include <stdexcept>
#include <vector>

#include "belyi/numbers.hpp"
#include "belyi/poly.hpp"

namespace belyi {

// Truncated Laurent series: sum of c[k - val] * w^k over val <= k < prec,
// plus unknown O(w^prec).  Coefficients are stored densely; arithmetic never
// claims exponents beyond what the operands support.
template <class K>
struct Series {
  int val = 0;
  int prec = 0;  // exclusive truncation exponent
  std::vector<K> c;

  Series() = default;
  Series(int v, int p, std::vector<K> coeffs) : val(v), prec(p), c(std::move(coeffs)) {
    if (prec < val || c.size() != static_cast<std::size_t>(prec - val))
      throw std::invalid_argument("series: inconsistent shape");
  }

  static Series zero_to(int prec) { return Series(prec, prec, {}); }
  static Series constant(const K& v, int prec) {
    if (prec <= 0) return zero_to(prec);
    std::vector<K> c(static_cast<std::size_t>(prec), K(0));
    c[0] = v;
    return Series(0, prec, std::move(c));
  }
  // the local coordinate itself
  static Series coordinate(int prec) {
    if (prec <= 1) return zero_to(prec);
    std::vector<K> c(static_cast<std::size_t>(prec - 1), K(0));
    c[0] = K(1);
    return Series(1, prec, std::move(c));
  }
  static Series monomial(const K& v, int k, int prec) {
    if (prec <= k) return zero_to(prec);
    std::vector<K> c(static_cast<std::size_t>(prec - k), K(0));
    c[0] = v;
    return Series(k, prec, std::move(c));
  }

  bool known_zero() const {
    for (const auto& v : c)
      if (!ScalarTraits<K>::is_zero(v)) return false;
    return true;
  }

  const K& coeff(int e) const {
    static const K zero = K(0);
    if (e >= prec) throw std::out_of_range("series coefficient beyond truncation");
    if (e < val) return zero;
    return c[static_cast<std::size_t>(e - val)];
  }

  // first exponent whose coefficient is nonzero (exact test); prec if none
  int exact_valuation() const {
    for (int e = val; e < prec; ++e)
      if (!ScalarTraits<K>::is_zero(c[static_cast<std::size_t>(e - val)])) return e;
    return prec;
  }

  // first exponent whose coefficient exceeds tol in magnitude; prec if none
  int valuation_above(const Real& tol) const {
    for (int e = val; e < prec; ++e)
      if (ScalarTraits<K>::magnitude(c[static_cast<std::size_t>(e - val)]) > tol) return e;
    return prec;
  }

  Series& strip_leading_zeros() {
    while (!c.empty() && ScalarTraits<K>::is_zero(c.front())) {
      c.erase(c.begin());
      ++val;
    }
    return *this;
  }

  Series truncated(int new_prec) const {
    if (new_prec > prec) throw std::invalid_argument("cannot extend a truncated series");
    if (new_prec <= val) return zero_to(new_prec);
    return Series(val, new_prec, std::vector<K>(c.begin(), c.begin() + (new_prec - val)));
  }

  Series shifted(int k) const {
    Series r = *this;
    r.val += k;
    r.prec += k;
    return r;
  }

  Series operator-() const {
    Series r = *this;
    for (auto& v : r.c) v = -v;
    return r;
  }

  Series operator+(const Series& o) const {
    int p = std::min(prec, o.prec);
    int v = std::min(std::min(val, o.val), p);
    std::vector<K> out(static_cast<std::size_t>(p - v), K(0));
    for (int e = v; e < p; ++e) {
      K s(0);
      if (e >= val && e < prec) s += c[static_cast<std::size_t>(e - val)];
      if (e >= o.val && e < o.prec) s += o.c[static_cast<std::size_t>(e - o.val)];
      out[static_cast<std::size_t>(e - v)] = std::move(s);
    }
    return Series(v, p, std::move(out));
  }
  Series operator-(const Series& o) const { return *this + (-o); }

  Series operator*(const Series& o) const {
    int v = val + o.val;
    int p = std::min(val + o.prec, o.val + prec);
    if (p <= v || c.empty() || o.c.empty()) return zero_to(std::min(p, std::min(val + o.prec, o.val + prec)));
    std::vector<K> out(static_cast<std::size_t>(p - v), K(0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (ScalarTraits<K>::is_zero(c[i])) continue;
      int emax = p - (val + static_cast<int>(i)) - o.val;
      std::size_t jmax = std::min(o.c.size(), static_cast<std::size_t>(std::max(0, emax)));
      for (std::size_t j = 0; j < jmax; ++j)
        out[i + j] += c[i] * o.c[j];
    }
    return Series(v, p, std::move(out));
  }

  Series operator*(const K& s) const {
    Series r = *this;
    for (auto& v : r.c) v *= s;
    return r;
  }

  // d/dw
  Series derivative() const {
    std::vector<K> out;
    out.reserve(c.size());
    for (int e = val; e < prec; ++e) out.push_back(c[static_cast<std::size_t>(e - val)] * K(e));
    Series r(val - 1, prec - 1, std::move(out));
    r.strip_leading_zeros();
    return r;
  }
};

// Multiplicative inverse; the divisor's structural leading coefficient must
// be nonzero (strip first if needed).
template <class K>
Series<K> series_inverse(Series<K> a) {
  a.strip_leading_zeros();
  if (a.c.empty()) throw std::domain_error("series_inverse: zero to truncation");
  if (ScalarTraits<K>::is_zero(a.c[0])) throw std::domain_error("series_inverse: zero leading coefficient");
  int n = a.prec - a.val;  // relative terms available
  std::vector<K> b(static_cast<std::size_t>(n), K(0));
  b[0] = K(1) / a.c[0];
  for (int k = 1; k < n; ++k) {
    K s(0);
    for (int i = 1; i <= k; ++i) {
      if (static_cast<std::size_t>(i) < a.c.size())
        s += a.c[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(k - i)];
    }
    b[static_cast<std::size_t>(k)] = -s * b[0];
  }
  return Series<K>(-a.val, -a.val + n, std::move(b));
}

template <class K>
Series<K> operator/(const Series<K>& a, const Series<K>& b) {
  return a * series_inverse(b);
}

// Square root with the branch chosen to match `target` (the desired leading
// coefficient) when given; otherwise the principal/positive branch.
template <class K>
Series<K> series_sqrt(Series<K> a, const K* target = nullptr) {
  a.strip_leading_zeros();
  if (a.c.empty()) throw std::domain_error("series_sqrt: zero to truncation");
  if (a.val % 2 != 0) throw std::domain_error("series_sqrt: odd valuation");
  K s0 = ScalarTraits<K>::sqrt_value(a.c[0]);
  if (target && !ScalarTraits<K>::closer_to(*target, s0, -s0)) s0 = -s0;
  int n = a.prec - a.val;
  std::vector<K> s(static_cast<std::size_t>(n), K(0));
  s[0] = s0;
  K two_s0 = s0 + s0;
  for (int k = 1; k < n; ++k) {
    K acc = static_cast<std::size_t>(k) < a.c.size() ? a.c[static_cast<std::size_t>(k)] : K(0);
    for (int i = 1; i < k; ++i) acc -= s[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(k - i)];
    s[static_cast<std::size_t>(k)] = acc / two_s0;
  }
  return Series<K>(a.val / 2, a.val / 2 + n, std::move(s));
}

// p(s) for a polynomial p and series s (Horner; for Laurent s each power of
// s loses |val| orders, so the claimed truncation shrinks accordingly).
template <class K>
Series<K> poly_eval_series(const Poly<K>& p, const Series<K>& s) {
  int prec = s.prec;
  if (p.is_zero()) return Series<K>::zero_to(prec);
  if (p.degree() == 0) return Series<K>::constant(p.c[0], prec);
  if (s.val >= 0) {
    Series<K> r = Series<K>::constant(p.c.back(), prec);
    for (std::size_t i = p.c.size() - 1; i-- > 0;)
      r = r * s + Series<K>::constant(p.c[i], prec);
    return r;
  }
  int d = p.degree();
  Series<K> r = Series<K>::zero_to((d - 1) * s.val + prec);
  Series<K> power = Series<K>::constant(K(1), prec - s.val * d);
  for (std::size_t i = 0; i < p.c.size(); ++i) {
    if (!ScalarTraits<K>::is_zero(p.c[i])) r = r + power * p.c[i];
    if (i + 1 < p.c.size()) power = power * s;
  }
  return r;
}

// p(1/w) as a Laurent series in w, known exactly to the given truncation.
template <class K>
Series<K> poly_at_inverse(const Poly<K>& p, int prec) {
  if (p.is_zero()) return Series<K>::zero_to(prec);
  int d = p.degree();
  std::vector<K> c;
  for (int e = -d; e < prec; ++e) c.push_back(e <= 0 ? p[static_cast<std::size_t>(-e)] : K(0));
  return Series<K>(-d, prec, std::move(c));
}

template <class K>
Series<K> series_from_poly(const Poly<K>& p, int prec) {
  std::vector<K> c;
  for (int e = 0; e < prec; ++e) c.push_back(e <= p.degree() ? p[static_cast<std::size_t>(e)] : K(0));
  return Series<K>(0, prec, std::move(c));
}

}  // namespace belyi
