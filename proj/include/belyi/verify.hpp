#pragma once

#include <array>
#include <string>
#include <vector>

#include "belyi/curve.hpp"
#include "belyi/passport.hpp"
#include "belyi/roots.hpp"

namespace belyi {

// A candidate Belyi map to check: either a rational function of x (genus 0)
// or num/den on a hyperelliptic model, everything over exact rationals.
struct BelyiMapFixture {
  int genus = 0;
  Poly<Rat> num0, den0;              // genus 0
  HyperellipticModel<Rat> model;     // genus >= 1
  RRFunction<Rat> num, den;
  std::array<Partition, 3> lambda;   // expected ramification over 0, 1, infinity
};

struct RamificationReport {
  bool pass = false;
  bool inconclusive = false;
  int degree = 0;
  std::array<std::vector<int>, 3> found;  // over 0, over 1, over infinity
  std::array<Partition, 3> expected;
  std::string message;
};

namespace detail {

inline void push_sorted(std::vector<int>& v, int e) {
  v.push_back(e);
  std::sort(v.begin(), v.end(), std::greater<int>());
}

// matching up to relabeling of {0, 1, oo}: published models are often
// composed with an automorphism of the base line
inline bool lambda_match_mod_s3(const std::array<std::vector<int>, 3>& found,
                                const std::array<Partition, 3>& expected) {
  std::array<int, 3> idx{0, 1, 2};
  std::sort(idx.begin(), idx.end());
  do {
    bool ok = true;
    for (int k = 0; k < 3 && ok; ++k) ok = found[static_cast<std::size_t>(idx[k])] == expected[k].parts;
    if (ok) return true;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return false;
}

inline std::vector<int> genus0_fiber(const Poly<Rat>& p, int d) {
  std::vector<int> parts;
  auto sf = squarefree_decomposition(p);
  for (std::size_t i = 0; i < sf.size(); ++i)
    for (int k = 0; k < sf[i].degree(); ++k) parts.push_back(static_cast<int>(i) + 1);
  if (p.degree() < d) parts.push_back(d - p.degree());
  std::sort(parts.begin(), parts.end(), std::greater<int>());
  return parts;
}

struct OrdReading {
  int ord = 0;
  bool ambiguous = false;
};

inline OrdReading read_valuation(const Series<Complex>& s, unsigned digits) {
  Real scale(0);
  for (const auto& c : s.c) scale = std::max(scale, c.abs());
  OrdReading r;
  if (scale == 0) {
    r.ord = s.prec;
    r.ambiguous = true;
    return r;
  }
  Real soft = pow(Real(10), -static_cast<int>(digits) / 2);
  Real hard = pow(Real(10), -(static_cast<int>(digits) * 6) / 5);
  for (int e = s.val; e < s.prec; ++e) {
    Real m = s.coeff(e).abs() / scale;
    if (m > soft) {
      r.ord = e;
      return r;
    }
    if (m > hard) {
      r.ord = e;
      r.ambiguous = true;
      return r;
    }
  }
  r.ord = s.prec;
  r.ambiguous = true;
  return r;
}

}  // namespace detail

// Exact check for rational maps on the line: multiplicity structure by
// squarefree decomposition, the infinite place by degree bookkeeping.
inline RamificationReport verify_ramification_genus0(const Poly<Rat>& num_in, const Poly<Rat>& den_in,
                                                     const std::array<Partition, 3>& lambda) {
  RamificationReport rep;
  rep.expected = lambda;
  Poly<Rat> g = poly_gcd(num_in, den_in);
  Poly<Rat> num = divrem(num_in, g).first;
  Poly<Rat> den = divrem(den_in, g).first;
  int d = std::max(num.degree(), den.degree());
  rep.degree = d;
  if (d <= 0) {
    rep.message = "degenerate map: phi is constant";
    return rep;
  }
  rep.found[0] = detail::genus0_fiber(num, d);
  rep.found[2] = detail::genus0_fiber(den, d);
  rep.found[1] = detail::genus0_fiber(num - den, d);
  for (int k = 0; k < 3; ++k) {
    int sum = 0;
    for (int e : rep.found[static_cast<std::size_t>(k)]) sum += e;
    if (sum != d) {
      rep.message = "fiber degree mismatch";
      return rep;
    }
  }
  rep.pass = detail::lambda_match_mod_s3(rep.found, lambda);
  if (!rep.pass) rep.message = "ramification partitions do not match";
  return rep;
}

// Numerical check on a hyperelliptic model: locate candidate points from the
// norms of numerator, denominator and their difference, read off local
// multiplicities from uniformizer expansions, and compare partitions.
// cluster_tol 0 selects the default 10^(-digits/3) merge radius.
inline RamificationReport verify_ramification_curve(const BelyiMapFixture& fx, unsigned digits,
                                                    Real cluster_tol = Real(0)) {
  RamificationReport rep;
  rep.expected = fx.lambda;
  int d = fx.lambda[0].total();
  rep.degree = d;

  PrecisionGuard guard(3 * digits + 20);
  HyperellipticModel<Complex> model(fx.model.genus, to_complex_poly(fx.model.u),
                                    to_complex_poly(fx.model.v), false);
  Poly<Complex> w = model.shifted_w();
  Poly<Complex> dw = w.derivative();
  Complex half = Complex(Real(1) / 2);

  // shift y -> Y = y + u/2: F = A + B y = (A - B u/2) + B Y
  struct Fn {
    Poly<Complex> a, b;  // against Y
  };
  auto shift = [&](const RRFunction<Rat>& f) {
    Fn r;
    Poly<Complex> A = to_complex_poly(f.a), B = to_complex_poly(f.b);
    r.a = A - B * to_complex_poly(fx.model.u) * half;
    r.b = B;
    return r;
  };
  Fn N = shift(fx.num), D = shift(fx.den);
  Fn ND{N.a - D.a, N.b - D.b};
  auto norm_of = [&](const Fn& f) { return f.a * f.a - f.b * f.b * w; };
  std::array<Poly<Complex>, 3> norms{norm_of(N), norm_of(D), norm_of(ND)};
  if (norms[0].is_zero() || norms[2].is_zero()) {
    rep.message = "degenerate map: a fiber polynomial vanishes identically";
    return rep;
  }

  // candidate x-values: refined cluster centers of each norm's roots
  if (cluster_tol == 0) cluster_tol = pow(Real(10), -static_cast<int>(digits) / 3);
  std::vector<Complex> centers;
  for (const auto& nm : norms) {
    if (nm.degree() < 1) continue;
    auto roots = poly_roots(nm);
    for (const auto& cl : cluster_roots(roots, cluster_tol))
      centers.push_back(refine_cluster_center(nm, cl));
  }
  // dedupe across the three norms
  std::vector<Complex> unique_centers;
  for (const auto& c : centers) {
    bool seen = false;
    for (const auto& u : unique_centers)
      if ((c - u).abs() <= cluster_tol) {
        seen = true;
        break;
      }
    if (!seen) unique_centers.push_back(c);
  }

  int prec = 2 * d + 6;
  Real wsoft = pow(Real(10), -static_cast<int>(digits) / 2);
  Real whard = pow(Real(10), -(static_cast<int>(digits) * 6) / 5);
  bool ambiguous = false;

  auto eval_fn = [&](const Fn& f, const Series<Complex>& xs, const Series<Complex>& bigy) {
    Series<Complex> r = poly_eval_series(f.a, xs);
    if (!f.b.is_zero()) r = r + poly_eval_series(f.b, xs) * bigy;
    return r;
  };

  struct PointOrders {
    int n, d, nd;
  };
  std::vector<PointOrders> orders;

  auto record_point = [&](const Series<Complex>& xs, const Series<Complex>& bigy) {
    auto rn = detail::read_valuation(eval_fn(N, xs, bigy), digits);
    auto rd = detail::read_valuation(eval_fn(D, xs, bigy), digits);
    auto rnd = detail::read_valuation(eval_fn(ND, xs, bigy), digits);
    ambiguous |= rn.ambiguous || rd.ambiguous || rnd.ambiguous;
    orders.push_back({rn.ord, rd.ord, rnd.ord});
  };

  for (const auto& x0 : unique_centers) {
    Complex wx = w.eval(x0);
    Real wscale(0);
    for (int i = 0; i <= w.degree(); ++i)
      wscale += w[static_cast<std::size_t>(i)].abs() * pow(std::max(x0.abs(), Real(1)), i);
    Real rel = wx.abs() / wscale;
    if (rel < whard) {
      // branch point: uniformizer is Y itself
      if (dw.eval(x0).abs() / wscale < wsoft) {
        rep.inconclusive = true;
        rep.message = "branch point with small W' (clustering ambiguity)";
        return rep;
      }
      Series<Complex> t2 = Series<Complex>::monomial(Complex(1), 2, prec + 2);
      Series<Complex> xs = Series<Complex>::constant(x0, prec + 2);
      int iters = 1;
      while ((1 << iters) < prec + 2) ++iters;
      for (int k = 0; k <= iters; ++k)
        xs = xs - (poly_eval_series(w, xs) - t2) / poly_eval_series(dw, xs);
      xs = xs.truncated(prec);
      record_point(xs, Series<Complex>::coordinate(prec));
    } else if (rel > wsoft) {
      Complex y0 = complex_sqrt(wx);
      Series<Complex> xs = Series<Complex>::constant(x0, prec) + Series<Complex>::coordinate(prec);
      Series<Complex> wseries = poly_eval_series(w, xs);
      for (int sign = 0; sign < 2; ++sign) {
        Complex target = sign == 0 ? y0 : -y0;
        record_point(xs, series_sqrt(wseries, &target));
      }
    } else {
      rep.inconclusive = true;
      rep.message = "cannot decide whether a candidate point is a branch point";
      return rep;
    }
  }

  // the place(s) at infinity
  if (model.even()) {
    for (int sign = -1; sign <= 1; sign += 2) {
      Series<Complex> xs = Series<Complex>::monomial(Complex(1), -1, prec);
      Series<Complex> w_inf = poly_at_inverse(w, prec - model.genus - 1);
      Complex target = complex_sqrt(w[static_cast<std::size_t>(w.degree())]);
      if (sign < 0) target = -target;
      record_point(xs, series_sqrt(w_inf, &target));
    }
  } else {
    std::vector<Complex> c;
    int dwdeg = w.degree();
    for (int e = -2 * dwdeg; e < prec; ++e)
      c.push_back(e <= 0 && (-e) % 2 == 0 ? w[static_cast<std::size_t>((-e) / 2)] : Complex(0));
    Series<Complex> w_inf(-2 * dwdeg, prec, std::move(c));
    record_point(Series<Complex>::monomial(Complex(1), -2, prec), series_sqrt(w_inf));
  }

  for (const auto& o : orders) {
    int phi = o.n - o.d;
    int phi1 = o.nd - o.d;
    if (phi > 0) detail::push_sorted(rep.found[0], phi);
    if (phi < 0) detail::push_sorted(rep.found[2], -phi);
    if (phi1 > 0) detail::push_sorted(rep.found[1], phi1);
  }

  for (int k = 0; k < 3; ++k) {
    int sum = 0;
    for (int e : rep.found[static_cast<std::size_t>(k)]) sum += e;
    if (sum != d) {
      rep.message = "fiber degrees do not sum to the declared degree";
      if (ambiguous) {
        rep.inconclusive = true;
        rep.message += " (and some multiplicities were ambiguous at tolerance)";
      }
      return rep;
    }
  }
  if (ambiguous) {
    rep.inconclusive = true;
    rep.message = "multiplicity clustering ambiguous at tolerance";
    return rep;
  }
  rep.pass = detail::lambda_match_mod_s3(rep.found, fx.lambda);
  if (!rep.pass) rep.message = "ramification partitions do not match";
  return rep;
}

inline RamificationReport verify_ramification(const BelyiMapFixture& fx, unsigned digits = 50,
                                              Real cluster_tol = Real(0)) {
  if (fx.genus == 0) return verify_ramification_genus0(fx.num0, fx.den0, fx.lambda);
  return verify_ramification_curve(fx, digits, cluster_tol);
}

}  // namespace belyi
