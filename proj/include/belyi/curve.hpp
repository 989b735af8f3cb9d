#pragma once

#include <optional>
#include <vector>

#include "belyi/linalg.hpp"
#include "belyi/poly.hpp"
#include "belyi/roots.hpp"
#include "belyi/series.hpp"

namespace belyi {

// a(x) + b(x) y, the shape of every Riemann-Roch basis element used here.
template <class K>
struct RRFunction {
  Poly<K> a, b;
};

// y^2 + u(x) y = v(x) with f = u^2 + 4v separable of degree 2g+1 (odd model,
// one point at infinity) or 2g+2 (even model, two points).
template <class K>
struct HyperellipticModel {
  int genus = 1;
  Poly<K> u, v;

  HyperellipticModel() = default;
  HyperellipticModel(int g, Poly<K> uu, Poly<K> vv, bool validate = true)
      : genus(g), u(std::move(uu)), v(std::move(vv)) {
    if (validate) check();
  }

  Poly<K> f() const { return u * u + v * K(4); }

  bool even() const { return f().degree() == 2 * genus + 2; }

  void check() const {
    if (genus < 1) throw std::invalid_argument("hyperelliptic model: genus must be >= 1");
    if (u.degree() > genus + 1) throw std::invalid_argument("hyperelliptic model: deg u too large");
    if (v.degree() > 2 * genus + 2) throw std::invalid_argument("hyperelliptic model: deg v too large");
    Poly<K> ff = f();
    int df = ff.degree();
    if (df != 2 * genus + 1 && df != 2 * genus + 2)
      throw std::invalid_argument("hyperelliptic model: deg(u^2+4v) must be 2g+1 or 2g+2");
    if constexpr (ScalarTraits<K>::exact) {
      if (!is_separable(ff)) throw std::invalid_argument("hyperelliptic model: u^2+4v is not separable");
    } else {
      auto roots = poly_roots(ff);
      Real tol = pow(Real(10), -static_cast<int>(working_digits()) / 3);
      for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
          if ((roots[i] - roots[j]).abs() < tol)
            throw std::invalid_argument("hyperelliptic model: u^2+4v is numerically non-separable");
    }
  }

  // W with (y + u/2)^2 = W(x); the completed square
  Poly<K> shifted_w() const { return f() * (K(1) / K(4)); }
};

// y^2 = x^3 - 27 c4 x - 54 c6
template <class K>
struct EllipticModel {
  K c4, c6;

  EllipticModel() : c4(0), c6(0) {}
  EllipticModel(K a, K b, bool validate = true) : c4(std::move(a)), c6(std::move(b)) {
    if (validate && ScalarTraits<K>::is_zero(c4 * c4 * c4 - c6 * c6))
      throw std::invalid_argument("elliptic model: vanishing discriminant (c4^3 = c6^2)");
  }

  Poly<K> weierstrass() const {
    return Poly<K>(std::vector<K>{K(-54) * c6, K(-27) * c4, K(0), K(1)});
  }

  HyperellipticModel<K> as_hyperelliptic() const {
    return HyperellipticModel<K>(1, Poly<K>(), weierstrass());
  }
};

// d - s + g: pole order granting a nonzero phi0, and the pair of spaces
// L(t oo), L((s+t) oo) the map is expressed in.
struct PoleBound {
  int t;
  int s_plus_t;
};

inline PoleBound rr_pole_bound(int d, int s, int g) {
  if (s < 1 || s > d) throw std::invalid_argument("rr_pole_bound: s must be within 1..d");
  if (g < 0) throw std::invalid_argument("rr_pole_bound: negative genus");
  return {d - s + g, d + g};
}

// y as a Laurent series in t = 1/x at one of the two points of an even
// model; sign +1 picks the branch with y ~ +sqrt(f0) x^{g+1}.
template <class K>
Series<K> y_at_even_infinity(const HyperellipticModel<K>& m, int sign, int prec) {
  if (!m.even()) throw std::invalid_argument("y_at_even_infinity: model is odd");
  Series<K> w = poly_at_inverse(m.shifted_w(), prec - m.genus - 1);
  K f0 = m.f().c.back();
  K target = ScalarTraits<K>::sqrt_value(f0 * (K(1) / K(4)));
  if (sign < 0) target = -target;
  Series<K> bigy = series_sqrt(w, &target);
  return bigy - poly_at_inverse(m.u, bigy.prec) * (K(1) / K(2));
}

// Laurent tail P_j of x^j y at the second infinite point: the polynomial in
// x = 1/t collecting all exponents <= 0, so that x^j y - P_j is holomorphic
// there.  `sign` chooses the y-branch at that point.
template <class K>
Poly<K> laurent_tail(const HyperellipticModel<K>& m, int j, int sign = +1) {
  if (!m.even()) throw std::invalid_argument("laurent_tail: tails arise only for even models");
  if (j < 0) throw std::invalid_argument("laurent_tail: j must be nonnegative");
  Series<K> y = y_at_even_infinity(m, sign, j + 2);
  Series<K> xjy = y.shifted(-j);
  std::vector<K> coeffs(static_cast<std::size_t>(-xjy.val) + 1, K(0));
  for (int e = xjy.val; e <= 0; ++e) coeffs[static_cast<std::size_t>(-e)] = xjy.coeff(e);
  return Poly<K>(std::move(coeffs));
}

// Basis of L(m oo).  Odd model: powers of x and x^j y by pole order.  Even
// model: the constant plus the tail-corrected x^j y - P_j.
template <class K>
std::vector<RRFunction<K>> rr_basis(const HyperellipticModel<K>& m, int pole_order, int tail_sign = +1) {
  std::vector<RRFunction<K>> out;
  int g = m.genus;
  if (!m.even()) {
    for (int i = 0; 2 * i <= pole_order; ++i) out.push_back({poly_pow(Poly<K>::x(), i), Poly<K>()});
    for (int j = 0; 2 * j + 2 * g + 1 <= pole_order; ++j)
      out.push_back({Poly<K>(), poly_pow(Poly<K>::x(), j)});
    return out;
  }
  out.push_back({Poly<K>::constant(K(1)), Poly<K>()});
  for (int j = 0; j + g + 1 <= pole_order; ++j)
    out.push_back({-laurent_tail(m, j, tail_sign), poly_pow(Poly<K>::x(), j)});
  return out;
}

// x := f1/f2 and y := x'/f_g from an echelonized basis of weight-2
// expansions.
template <class K>
std::pair<Series<K>, Series<K>> coords_from_basis(const std::vector<Series<K>>& f) {
  if (f.size() < 2) throw std::invalid_argument("coords_from_basis: need g >= 2 series");
  Series<K> x = f[0] / f[1];
  Series<K> y = x.derivative() / f.back();
  return {x, y};
}

// Sign s with y ~ s sqrt(f0) x^{g+1} along the given expansions; the tail
// point is the opposite branch.
inline int infinity_branch_sign(const HyperellipticModel<Complex>& m, const Series<Complex>& x,
                                const Series<Complex>& y) {
  Series<Complex> ratio = y * series_inverse(x) ;
  for (int k = 1; k <= m.genus; ++k) ratio = ratio * series_inverse(x);
  // ratio ~ s*sqrt(f0) + O(w); u only shifts lower order terms
  Complex lead = ratio.coeff(ratio.valuation_above(Real(0)));
  Complex target = complex_sqrt(m.f().c.back());
  return (lead - target).abs() <= (lead + target).abs() ? +1 : -1;
}

// Numerical hyperellipticity test: a kernel vector of the coefficient matrix
// of 1, x, ..., x^{2g+2}, y, xy, ..., x^{g+1} y, y^2 gives the model, with
// the y^2 coefficient normalized to 1.
inline std::optional<HyperellipticModel<Complex>> detect_hyperelliptic(const Series<Complex>& x,
                                                                       const Series<Complex>& y, int g,
                                                                       const Real& tol) {
  if (g < 2) throw std::invalid_argument("detect_hyperelliptic: genus must be >= 2");
  std::vector<Series<Complex>> mono;
  Series<Complex> xp = Series<Complex>::constant(Complex(1), x.prec - x.val * (2 * g + 2));
  for (int i = 0; i <= 2 * g + 2; ++i) {
    mono.push_back(xp);
    if (i < 2 * g + 2) xp = xp * x;
  }
  std::size_t n_pure = mono.size();
  Series<Complex> xjy = y;
  for (int j = 0; j <= g + 1; ++j) {
    mono.push_back(xjy);
    if (j < g + 1) xjy = xjy * x;
  }
  mono.push_back(y * y);

  int lo = mono[0].val, hi = mono[0].prec;
  for (const auto& s : mono) {
    lo = std::min(lo, s.val);
    hi = std::min(hi, s.prec);
  }
  int margin = 10;
  if (hi - lo < static_cast<int>(mono.size()) + margin)
    throw std::invalid_argument("detect_hyperelliptic: series too short for the relation search");

  CMat mat(static_cast<std::size_t>(hi - lo), mono.size());
  for (std::size_t c = 0; c < mono.size(); ++c)
    for (int e = lo; e < hi; ++e)
      mat.at(static_cast<std::size_t>(e - lo), c) = e >= mono[c].prec ? Complex(0) : mono[c].coeff(e);

  SvdResult svd = jacobi_svd(mat);
  const Real& largest = svd.singular_values.front();
  const Real& smallest = svd.singular_values.back();
  if (!(smallest < tol * largest)) return std::nullopt;

  std::vector<Complex> k = svd.right.back();
  Complex ysq = k.back();
  if (ysq.abs() < tol * largest) return std::nullopt;
  for (auto& c : k) c /= ysq;
  // clean entries that are zero at the working tolerance
  Real scale(0);
  for (const auto& c : k) scale = std::max(scale, c.abs());
  for (auto& c : k)
    if (c.abs() < tol * scale) c = Complex(0);

  // relation: y^2 + u(x) y - v(x) = 0
  std::vector<Complex> ucoef(k.begin() + static_cast<long>(n_pure), k.end() - 1);
  std::vector<Complex> vcoef(k.begin(), k.begin() + static_cast<long>(n_pure));
  for (auto& c : vcoef) c = -c;
  return HyperellipticModel<Complex>(g, Poly<Complex>(std::move(ucoef)), Poly<Complex>(std::move(vcoef)));
}

// ---- local charts (uniformizer expansions) ----

template <class K>
struct LocalChart {
  Series<K> x, y;  // both in the local uniformizer
};

// Affine point with y0 + u(x0)/2 away from zero: t = x - x0 is the
// uniformizer and y comes from the square root branch through the point.
template <class K>
LocalChart<K> chart_at_affine(const HyperellipticModel<K>& m, const K& x0, const K& y0, int prec) {
  Poly<K> w = m.shifted_w();
  Series<K> xs = Series<K>::constant(x0, prec) + Series<K>::coordinate(prec);
  Series<K> ws = poly_eval_series(w, xs);
  K target = y0 + m.u.eval(x0) * (K(1) / K(2));
  Series<K> bigy = series_sqrt(ws, &target);
  Series<K> ys = bigy - poly_eval_series(m.u, xs) * (K(1) / K(2));
  return {xs, ys};
}

// Branch point (Y0 = 0): Y itself is the uniformizer; x(t) solves
// W(x(t)) = t^2 by a series Newton iteration off the simple root x0.
template <class K>
LocalChart<K> chart_at_branch(const HyperellipticModel<K>& m, const K& x0, int prec) {
  Poly<K> w = m.shifted_w();
  Poly<K> dw = w.derivative();
  K slope = dw.eval(x0);
  if (ScalarTraits<K>::is_zero(slope))
    throw std::domain_error("chart_at_branch: W'(x0) vanishes (non-separable or off a branch point)");
  Series<K> t2 = Series<K>::monomial(K(1), 2, prec + 2);
  Series<K> x = Series<K>::constant(x0, prec + 2);
  int iters = 1;
  while ((1 << iters) < prec + 2) ++iters;
  for (int k = 0; k <= iters; ++k) {
    Series<K> num = poly_eval_series(w, x) - t2;
    Series<K> den = poly_eval_series(dw, x);
    x = x - num / den;
  }
  Series<K> xs = x.truncated(prec);
  Series<K> ys = Series<K>::coordinate(prec) - poly_eval_series(m.u, xs) * (K(1) / K(2));
  return {xs, ys};
}

// Odd model: the single point at infinity, x = 1/t^2.
template <class K>
LocalChart<K> chart_at_odd_infinity(const HyperellipticModel<K>& m, int prec) {
  if (m.even()) throw std::invalid_argument("chart_at_odd_infinity: even model");
  Poly<K> w = m.shifted_w();
  int dw = w.degree();  // 2g+1
  // W(1/t^2) has valuation -2(2g+1)
  std::vector<K> c;
  for (int e = -2 * dw; e < prec; ++e)
    c.push_back(e <= 0 && (-e) % 2 == 0 ? w[static_cast<std::size_t>((-e) / 2)] : K(0));
  Series<K> ws(-2 * dw, prec, std::move(c));
  Series<K> bigy = series_sqrt(ws);
  Series<K> xs = Series<K>::monomial(K(1), -2, prec);
  Series<K> ys = bigy - poly_eval_series(m.u, xs) * (K(1) / K(2));
  return {xs, ys};
}

// Even model: two points at infinity, x = 1/t, branch picked by sign.
template <class K>
LocalChart<K> chart_at_even_infinity(const HyperellipticModel<K>& m, int sign, int prec) {
  Series<K> xs = Series<K>::monomial(K(1), -1, prec);
  return {xs, y_at_even_infinity(m, sign, prec)};
}

// a(x) + b(x) y along a chart.
template <class K>
Series<K> function_on_chart(const RRFunction<K>& fn, const LocalChart<K>& chart) {
  Series<K> r = poly_eval_series(fn.a, chart.x);
  if (!fn.b.is_zero()) r = r + poly_eval_series(fn.b, chart.x) * chart.y;
  return r;
}

}  // namespace belyi
