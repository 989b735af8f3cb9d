#pragma once

#include <functional>
#include <string>
#include <vector>

#include "belyi/curve.hpp"
#include "belyi/linalg.hpp"
#include "belyi/triple.hpp"

namespace belyi {

// Forward-mode derivative scalar: value plus gradient against the active
// variables.  Series and polynomial code instantiates cleanly over it, which
// is how the Newton system gets exact Jacobians.
struct Dual {
  Complex v;
  std::vector<Complex> g;

  Dual() : v(0) {}
  Dual(int n) : v(n) {}
  explicit Dual(Complex val) : v(std::move(val)) {}
  Dual(Complex val, std::size_t nvars, std::size_t index) : v(std::move(val)), g(nvars) {
    g[index] = Complex(1);
  }

  static Dual constant(Complex val) { return Dual(std::move(val)); }

  Dual operator-() const {
    Dual r(*this);
    r.v = -r.v;
    for (auto& x : r.g) x = -x;
    return r;
  }

  friend Dual operator+(const Dual& a, const Dual& b) {
    Dual r;
    r.v = a.v + b.v;
    r.g.resize(std::max(a.g.size(), b.g.size()));
    for (std::size_t i = 0; i < r.g.size(); ++i) {
      if (i < a.g.size()) r.g[i] += a.g[i];
      if (i < b.g.size()) r.g[i] += b.g[i];
    }
    return r;
  }
  friend Dual operator-(const Dual& a, const Dual& b) { return a + (-b); }
  friend Dual operator*(const Dual& a, const Dual& b) {
    Dual r;
    r.v = a.v * b.v;
    r.g.resize(std::max(a.g.size(), b.g.size()));
    for (std::size_t i = 0; i < r.g.size(); ++i) {
      if (i < a.g.size()) r.g[i] += a.g[i] * b.v;
      if (i < b.g.size()) r.g[i] += b.g[i] * a.v;
    }
    return r;
  }
  friend Dual operator/(const Dual& a, const Dual& b) {
    Dual r;
    r.v = a.v / b.v;
    r.g.resize(std::max(a.g.size(), b.g.size()));
    Complex b2 = b.v * b.v;
    for (std::size_t i = 0; i < r.g.size(); ++i) {
      Complex da = i < a.g.size() ? a.g[i] : Complex(0);
      Complex db = i < b.g.size() ? b.g[i] : Complex(0);
      r.g[i] = (da * b.v - db * a.v) / b2;
    }
    return r;
  }
  Dual& operator+=(const Dual& o) { return *this = *this + o; }
  Dual& operator-=(const Dual& o) { return *this = *this - o; }
  Dual& operator*=(const Dual& o) { return *this = *this * o; }
  Dual& operator/=(const Dual& o) { return *this = *this / o; }
};

template <>
struct ScalarTraits<Dual> {
  static constexpr bool exact = false;
  static bool is_zero(const Dual& x) {
    if (!x.v.is_zero()) return false;
    for (const auto& d : x.g)
      if (!d.is_zero()) return false;
    return true;
  }
  static Dual sqrt_value(const Dual& x) {
    Dual r;
    r.v = complex_sqrt(x.v);
    Complex two_r = r.v + r.v;
    r.g.resize(x.g.size());
    for (std::size_t i = 0; i < x.g.size(); ++i) r.g[i] = x.g[i] / two_r;
    return r;
  }
  static bool closer_to(const Dual& x, const Dual& a, const Dual& b) {
    return (x.v - a.v).abs() <= (x.v - b.v).abs();
  }
  static Real magnitude(const Dual& x) { return x.v.abs(); }
};

// ---- the undetermined Belyi map ----

// phi = u * phi0 / phiInf against bases of L(t oo) and L((s+t) oo) on a
// genus-1 curve, leading basis coefficients pinned to 1.  Basis elements are
// indexed by pole order at infinity (x has order 2, y order 3, x^i y^j order
// 2i + 3j; order 1 never occurs).
struct BelyiMapAnsatz {
  EllipticModel<Complex> model;
  Complex u;
  int phi0_top = 0;    // pole order of the leading phi0 element
  int phiinf_top = 0;  // pole order of the leading phiInf element
  std::vector<Complex> phi0_coeffs;    // coefficient of each pole order < phi0_top that occurs
  std::vector<Complex> phiinf_coeffs;  // same for phiInf

  static std::vector<int> basis_orders(int top) {
    std::vector<int> orders;
    for (int k = 0; k < top; ++k)
      if (k != 1) orders.push_back(k);
    return orders;
  }
};

// basis monomial of given pole order on y^2 = x^3 - 27c4 x - 54c6
template <class K>
RRFunction<K> elliptic_monomial(int order) {
  if (order == 1) throw std::invalid_argument("no function with a simple pole at infinity");
  RRFunction<K> f;
  if (order % 2 == 0)
    f.a = poly_pow(Poly<K>::x(), order / 2);
  else
    f.b = poly_pow(Poly<K>::x(), (order - 3) / 2);
  return f;
}

// Weight of a coefficient under the lambda-rescaling: the pole order of its
// monomial.  Rescaling sends (c4, c6) to (l^-4 c4, l^-6 c6), (x, y) to
// (l^-2 x, l^-3 y), so the coefficient of a monomial of pole order w picks
// up l^w relative to the (pinned) leading coefficient of its block.
struct WeightedCoefficient {
  int weight;
  Complex value;
};

// Applies the rescaling to model and ansatz; the map as a function of the
// curve points is unchanged.
inline BelyiMapAnsatz rescale_weighted(const BelyiMapAnsatz& a, const Complex& lambda) {
  if (lambda.is_zero()) throw std::invalid_argument("rescale_weighted: lambda must be nonzero");
  BelyiMapAnsatz r = a;
  r.model = EllipticModel<Complex>(complex_pow_int(lambda, -4) * a.model.c4,
                                   complex_pow_int(lambda, -6) * a.model.c6, false);
  auto rescale_block = [&](std::vector<Complex>& coeffs, int top) {
    auto orders = BelyiMapAnsatz::basis_orders(top);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      coeffs[i] *= complex_pow_int(lambda, orders[i] - top);
  };
  rescale_block(r.phi0_coeffs, r.phi0_top);
  rescale_block(r.phiinf_coeffs, r.phiinf_top);
  // phi = u phi0 / phiInf with both leading coefficients held at 1
  r.u = a.u * complex_pow_int(lambda, a.phi0_top - a.phiinf_top);
  return r;
}

// lambda making coefficients i and j of the denominator block equal after
// rescaling (the "consecutive coefficients" normalization).  Index verbatim
// by pole order; order phiinf_top refers to the pinned leading coefficient 1.
inline Complex normalize_consecutive(const BelyiMapAnsatz& a, int order_i, int order_j) {
  auto orders = BelyiMapAnsatz::basis_orders(a.phiinf_top);
  auto coeff_of = [&](int order) -> Complex {
    if (order == a.phiinf_top) return Complex(1);
    for (std::size_t k = 0; k < orders.size(); ++k)
      if (orders[k] == order) return a.phiinf_coeffs[k];
    throw std::invalid_argument("normalize_consecutive: no coefficient of pole order " +
                                std::to_string(order));
  };
  Complex ci = coeff_of(order_i), cj = coeff_of(order_j);
  if (ci.is_zero() || cj.is_zero())
    throw std::invalid_argument("normalize_consecutive: zero coefficient");
  if (order_i == order_j) throw std::invalid_argument("normalize_consecutive: equal weights");
  // after rescaling, coeff_k scales by lambda^(k - top): want i and j equal
  Complex ratio = ci / cj;
  return complex_root(ratio, order_j - order_i);
}

// ---- ramification data and the Newton system ----

// Cycles of a triple organized into marked points of the map; the cycle of
// sigma0 containing the first point is the point at infinity.
struct RamificationData {
  int degree = 1;
  std::array<Partition, 3> lambda;
  int s = 1;                      // multiplicity at infinity (over 0)
  std::vector<int> zeros;         // remaining multiplicities over 0
  std::vector<int> ones;          // over 1
  std::vector<int> poles;         // over infinity

  static RamificationData from_triple(const PermutationTriple& t) {
    RamificationData r;
    r.degree = static_cast<int>(t.degree());
    r.lambda = t.lambda();
    auto collect = [](const Permutation& p, int skip_point) {
      std::vector<int> lens;
      int skip_len = 0;
      for (const auto& c : p.cycles()) {
        if (skip_point >= 0 && std::find(c.begin(), c.end(), skip_point) != c.end())
          skip_len = static_cast<int>(c.size());
        else
          lens.push_back(static_cast<int>(c.size()));
      }
      std::sort(lens.begin(), lens.end(), std::greater<int>());
      return std::make_pair(lens, skip_len);
    };
    auto [zl, s] = collect(t.s0, 0);
    r.zeros = zl;
    r.s = s;
    r.ones = collect(t.s1, -1).first;
    r.poles = collect(t.sinf, -1).first;
    return r;
  }
};

// One unknown of the square system, in a fixed documented order: u, c4, c6,
// the free phi0 then phiInf coefficients by pole order, the coordinates of
// each marked affine point (zeros, ones, poles, in partition order), then
// the common-zero point when the denominator degree exceeds d.
struct NewtonSystem {
  BelyiMapAnsatz ansatz;  // shapes and initial coefficients (values unused in eval)
  RamificationData ram;
  int gauge_order = 0;      // pole order of the pinned denominator coefficient
  Complex gauge_value;      // value it is pinned to
  bool extra_zero = false;
  std::size_t nvars = 0;
  std::size_t point_block_start = 0;

  std::vector<std::string> variable_names;

  std::size_t size() const { return nvars; }

  // F and optionally J at z
  void eval(const std::vector<Complex>& z, std::vector<Complex>& F, CMat* J) const;
};

namespace detail {

// local expansion of y - yP at a non-2-torsion point, eq-of-curve driven
template <class K>
Series<K> elliptic_local_y(const K& c4, const K& c6, const K& xp, const K& yp, int prec) {
  // W(t) = (t + xp)^3 - 27 c4 (t + xp) - 54 c6 = yp^2 + t^3 + 3 xp t^2 + (3 xp^2 - 27 c4) t
  Series<K> t = Series<K>::coordinate(prec);
  Series<K> w = Series<K>::constant(yp * yp, prec) +
                Series<K>::monomial(K(3) * xp * xp - K(27) * c4, 1, prec) +
                Series<K>::monomial(K(3) * xp, 2, prec) + Series<K>::monomial(K(1), 3, prec);
  K target = yp;
  Series<K> y = series_sqrt(w, &target);
  return y;
}

// x as a series in the uniformizer s = y at a 2-torsion point (yp = 0)
template <class K>
Series<K> elliptic_local_x_2torsion(const K& c4, const K& c6, const K& xp, int prec) {
  Poly<K> f(std::vector<K>{K(-54) * c6, K(-27) * c4, K(0), K(1)});
  Poly<K> df = f.derivative();
  K slope = df.eval(xp);
  Series<K> s2 = Series<K>::monomial(K(1), 2, prec + 2);
  Series<K> x = Series<K>::constant(xp, prec + 2);
  int iters = 1;
  while ((1 << iters) < prec + 2) ++iters;
  for (int k = 0; k <= iters; ++k) {
    Series<K> num = poly_eval_series(f, x) - s2;
    Series<K> den = poly_eval_series(df, x);
    x = x - num / den;
  }
  return x.truncated(prec);
}

}  // namespace detail

// Local expansion s(t) of y - yP at an affine non-2-torsion point, the
// series whose substitution satisfies the curve equation to truncation.
inline Series<Complex> local_expand_nontorsion(const EllipticModel<Complex>& e, const Complex& xp,
                                               const Complex& yp, int order) {
  Real tol = pow(Real(10), -static_cast<int>(working_digits()) / 2);
  if (yp.abs() < tol)
    throw std::domain_error("local_expand_nontorsion: point is 2-torsion at working tolerance");
  Complex on_curve = yp * yp - (xp * xp * xp - Complex(27) * e.c4 * xp - Complex(54) * e.c6);
  if (on_curve.abs() > pow(Real(10), -static_cast<int>(working_digits()) / 2) *
                           (Real(1) + yp.norm()))
    throw std::domain_error("local_expand_nontorsion: point is off the curve");
  return detail::elliptic_local_y(e.c4, e.c6, xp, yp, order) - Series<Complex>::constant(yp, order);
}

// x(s) at a 2-torsion point, s = y the uniformizer.
inline Series<Complex> local_expand_2torsion(const EllipticModel<Complex>& e, const Complex& xp,
                                             int order) {
  Poly<Complex> f(std::vector<Complex>{Complex(-54) * e.c6, Complex(-27) * e.c4, Complex(0), Complex(1)});
  Real tol = pow(Real(10), -static_cast<int>(working_digits()) / 2);
  if (f.derivative().eval(xp).abs() < tol)
    throw std::domain_error("local_expand_2torsion: multiple root (singular model)");
  return detail::elliptic_local_x_2torsion(e.c4, e.c6, xp, order);
}

inline Dual complex_dual_pow(Dual base, int e) {
  Dual r(Complex(1));
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

inline void NewtonSystem::eval(const std::vector<Complex>& z, std::vector<Complex>& F, CMat* J) const {
  std::size_t n = nvars;
  if (z.size() != n) throw std::invalid_argument("newton eval: wrong variable count");
  std::vector<Dual> var(n);
  for (std::size_t i = 0; i < n; ++i)
    var[i] = J ? Dual(z[i], n, i) : Dual(z[i]);

  auto orders0 = BelyiMapAnsatz::basis_orders(ansatz.phi0_top);
  auto ordersi = BelyiMapAnsatz::basis_orders(ansatz.phiinf_top);

  std::size_t k = 0;
  Dual u = var[k++];
  Dual c4 = var[k++];
  Dual c6 = var[k++];
  std::vector<Dual> a(orders0.size()), b(ordersi.size());
  for (auto& x : a) x = var[k++];
  for (auto& x : b) x = var[k++];

  // assemble phi0, phiInf as (A(x), B(x)) pairs over Dual
  auto assemble = [&](const std::vector<Dual>& coeffs, const std::vector<int>& orders,
                      int top) -> RRFunction<Dual> {
    RRFunction<Dual> f;
    auto add_monomial = [&](int order, const Dual& c) {
      RRFunction<Dual> m = elliptic_monomial<Dual>(order);
      f.a = f.a + m.a * c;
      f.b = f.b + m.b * c;
    };
    for (std::size_t i = 0; i < coeffs.size(); ++i) add_monomial(orders[i], coeffs[i]);
    add_monomial(top, Dual(Complex(1)));
    return f;
  };
  RRFunction<Dual> phi0 = assemble(a, orders0, ansatz.phi0_top);
  RRFunction<Dual> phiinf = assemble(b, ordersi, ansatz.phiinf_top);

  std::vector<Dual> out;
  out.reserve(n);

  auto on_curve = [&](const Dual& x, const Dual& y) {
    return y * y - (x * x * x - Dual(Complex(27)) * c4 * x - Dual(Complex(54)) * c6);
  };

  // ordered marked points: (multiplicity, which numerator vanishes)
  enum class Fiber { zero, one, pole };
  std::vector<std::pair<int, Fiber>> points;
  for (int e : ram.zeros) points.push_back({e, Fiber::zero});
  for (int e : ram.ones) points.push_back({e, Fiber::one});
  for (int e : ram.poles) points.push_back({e, Fiber::pole});

  std::size_t pk = point_block_start;
  for (const auto& [e, fiber] : points) {
    Dual xp = var[pk++];
    Dual yp = var[pk++];
    out.push_back(on_curve(xp, yp));
    // local series of the vanishing function at (xp, yp)
    int prec = e;  // coefficients t^0 .. t^{e-1}
    Series<Dual> xs, ys;
    // the points of these systems are ramification points away from
    // 2-torsion; the square-root chart applies
    ys = detail::elliptic_local_y(c4, c6, xp, yp, prec);
    xs = Series<Dual>::constant(xp, prec) + Series<Dual>::coordinate(prec);
    auto series_of = [&](const RRFunction<Dual>& fn) {
      Series<Dual> r = poly_eval_series(fn.a, xs);
      if (!fn.b.is_zero()) r = r + poly_eval_series(fn.b, xs) * ys;
      return r;
    };
    Series<Dual> target;
    switch (fiber) {
      case Fiber::zero: target = series_of(phi0) * u; break;
      case Fiber::one: target = series_of(phi0) * u - series_of(phiinf); break;
      case Fiber::pole: target = series_of(phiinf); break;
    }
    for (int c = 0; c < e; ++c) out.push_back(target.coeff(c));
  }

  // gauge: pin one denominator coefficient
  {
    bool found = false;
    for (std::size_t i = 0; i < ordersi.size(); ++i)
      if (ordersi[i] == gauge_order) {
        out.push_back(b[i] - Dual(gauge_value));
        found = true;
      }
    if (!found) throw std::logic_error("newton eval: gauge order not present");
  }

  if (extra_zero) {
    Dual xs = var[pk++];
    Dual ys = var[pk++];
    out.push_back(on_curve(xs, ys));
    auto value_of = [&](const RRFunction<Dual>& fn) {
      Dual r(Complex(0));
      for (int i = 0; i <= fn.a.degree(); ++i)
        r += fn.a[static_cast<std::size_t>(i)] * complex_dual_pow(xs, i);
      for (int i = 0; i <= fn.b.degree(); ++i)
        r += fn.b[static_cast<std::size_t>(i)] * complex_dual_pow(xs, i) * ys;
      return r;
    };
    out.push_back(value_of(phi0));
    out.push_back(value_of(phiinf));
  }

  if (out.size() != n) throw std::logic_error("newton eval: system is not square");
  F.resize(n);
  for (std::size_t i = 0; i < n; ++i) F[i] = out[i].v;
  if (J) {
    *J = CMat(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        J->at(i, j) = j < out[i].g.size() ? out[i].g[j] : Complex(0);
  }
}

// Assembles the square system for the ansatz and ramification data: per
// affine marked point an on-curve equation plus e_P coefficient conditions,
// one gauge normalization, and the common-zero block when deg phiInf > d.
inline NewtonSystem build_newton_system(const BelyiMapAnsatz& ansatz, const RamificationData& ram,
                                        int gauge_order, const Complex& gauge_value) {
  NewtonSystem sys;
  sys.ansatz = ansatz;
  sys.ram = ram;
  sys.gauge_order = gauge_order;
  sys.gauge_value = gauge_value;

  if (ram.degree == 1) {
    sys.nvars = 0;  // the trivial map needs no equations
    return sys;
  }
  if (ansatz.phiinf_top != ram.s + ansatz.phi0_top)
    throw std::invalid_argument("build_newton_system: basis tops inconsistent with the infinity cycle");

  std::size_t points = ram.zeros.size() + ram.ones.size() + ram.poles.size();
  std::size_t eqs = 0;
  for (int e : ram.zeros) eqs += 1 + static_cast<std::size_t>(e);
  for (int e : ram.ones) eqs += 1 + static_cast<std::size_t>(e);
  for (int e : ram.poles) eqs += 1 + static_cast<std::size_t>(e);
  eqs += 1;  // gauge
  sys.extra_zero = ansatz.phiinf_top > ram.degree;
  if (sys.extra_zero) eqs += 3;

  std::size_t vars = 3 + ansatz.phi0_coeffs.size() + ansatz.phiinf_coeffs.size() + 2 * points +
                     (sys.extra_zero ? 2 : 0);
  if (vars != eqs)
    throw std::invalid_argument("build_newton_system: system is not square (" + std::to_string(eqs) +
                                " equations, " + std::to_string(vars) + " variables)");
  sys.nvars = vars;
  sys.point_block_start = 3 + ansatz.phi0_coeffs.size() + ansatz.phiinf_coeffs.size();

  sys.variable_names.push_back("u");
  sys.variable_names.push_back("c4");
  sys.variable_names.push_back("c6");
  for (int o : BelyiMapAnsatz::basis_orders(ansatz.phi0_top))
    sys.variable_names.push_back("a" + std::to_string(o));
  for (int o : BelyiMapAnsatz::basis_orders(ansatz.phiinf_top))
    sys.variable_names.push_back("b" + std::to_string(o));
  auto name_points = [&](const char* tag, const std::vector<int>& mults) {
    for (std::size_t i = 0; i < mults.size(); ++i) {
      sys.variable_names.push_back(std::string("x_") + tag + std::to_string(i));
      sys.variable_names.push_back(std::string("y_") + tag + std::to_string(i));
    }
  };
  name_points("z", ram.zeros);
  name_points("o", ram.ones);
  name_points("p", ram.poles);
  if (sys.extra_zero) {
    sys.variable_names.push_back("x_s");
    sys.variable_names.push_back("y_s");
  }
  return sys;
}

struct NewtonOutcome {
  bool converged = false;
  int iterations = 0;
  std::vector<Complex> solution;
  std::vector<Real> residual_history;  // max-norm per iteration, starting with the initial residual
  std::string message;
};

// Plain Newton iteration with divergence detection; quadratic convergence is
// expected inside the basin and visible in the residual history.
inline NewtonOutcome newton_solve(const NewtonSystem& sys, std::vector<Complex> z, int target_digits,
                                  int max_iters = 50, int patience = 3) {
  NewtonOutcome out;
  Real target = pow(Real(10), -target_digits);
  std::vector<Complex> F;
  auto residual_norm = [&](const std::vector<Complex>& f) {
    Real m(0);
    for (const auto& c : f) m = std::max(m, c.abs());
    return m;
  };
  if (sys.size() == 0) {
    out.converged = true;
    out.message = "empty system";
    return out;
  }
  sys.eval(z, F, nullptr);
  Real rn = residual_norm(F);
  out.residual_history.push_back(rn);
  int stall = 0;
  for (int it = 0; it < max_iters; ++it) {
    if (rn < target) {
      out.converged = true;
      out.solution = z;
      out.iterations = it;
      out.message = "converged";
      return out;
    }
    CMat J;
    sys.eval(z, F, &J);
    std::vector<Complex> step;
    try {
      step = lu_solve(J, F);
    } catch (const std::domain_error&) {
      out.message = "jacobian numerically singular";
      out.solution = z;
      out.iterations = it;
      return out;
    }
    for (std::size_t i = 0; i < z.size(); ++i) z[i] -= step[i];
    sys.eval(z, F, nullptr);
    Real next = residual_norm(F);
    out.residual_history.push_back(next);
    if (next >= rn) {
      if (++stall >= patience) {
        out.message = "diverged (residual not decreasing)";
        out.solution = z;
        out.iterations = it + 1;
        return out;
      }
    } else {
      stall = 0;
    }
    rn = next;
  }
  if (rn < target) {
    out.converged = true;
    out.message = "converged";
  } else {
    out.message = "iteration limit reached";
  }
  out.solution = z;
  out.iterations = max_iters;
  return out;
}

}  // namespace belyi
