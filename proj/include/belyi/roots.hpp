#pragma once

#include <vector>

#include "belyi/numbers.hpp"
#include "belyi/poly.hpp"

namespace belyi {

// Aberth-Ehrlich simultaneous iteration.  Multiple roots converge only
// linearly and land in a small cluster; callers group them afterwards.
inline std::vector<Complex> poly_roots(Poly<Complex> p, int max_iters = 400) {
  std::vector<Complex> roots;
  // exact zero roots first (common when a denominator carries a power of x)
  while (!p.is_zero() && p.c.size() > 1 && ScalarTraits<Complex>::is_zero(p.c[0])) {
    roots.push_back(Complex(0));
    p.c.erase(p.c.begin());
  }
  int n = p.degree();
  if (n <= 0) return roots;
  Complex lead = p.c.back();
  for (auto& c : p.c) c /= lead;
  if (n == 1) {
    roots.push_back(-p.c[0]);
    return roots;
  }

  Real radius(1);
  for (int i = 0; i < n; ++i) {
    Real m = p.c[static_cast<std::size_t>(i)].abs();
    if (m > radius) radius = m;
  }
  radius += 1;

  const Real pi = acos(Real(-1));
  std::vector<Complex> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    Real angle = (2 * pi * k) / n + Real(2) / 5;  // offset breaks symmetry
    z[static_cast<std::size_t>(k)] = Complex(radius * cos(angle), radius * sin(angle));
  }

  Poly<Complex> dp = p.derivative();
  Real eps = pow(Real(10), -static_cast<int>(working_digits()) + 6);
  for (int iter = 0; iter < max_iters; ++iter) {
    Real worst(0);
    for (int k = 0; k < n; ++k) {
      Complex& zk = z[static_cast<std::size_t>(k)];
      Complex pv = p.eval(zk);
      Complex dv = dp.eval(zk);
      if (dv.is_zero()) {
        zk += Complex(eps, eps);
        continue;
      }
      Complex w = pv / dv;
      Complex sum(0);
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        Complex diff = zk - z[static_cast<std::size_t>(j)];
        if (diff.is_zero()) diff = Complex(eps);
        sum += Complex(1) / diff;
      }
      Complex denom = Complex(1) - w * sum;
      Complex corr = denom.is_zero() ? w : w / denom;
      zk -= corr;
      Real c = corr.abs();
      if (c > worst) worst = c;
    }
    if (worst < eps * radius) break;
  }
  for (auto& r : z) roots.push_back(r);
  return roots;
}

struct RootCluster {
  Complex center;
  int multiplicity = 0;
};

// Groups points lying within tol of each other (transitively).
inline std::vector<RootCluster> cluster_roots(const std::vector<Complex>& pts, const Real& tol) {
  std::size_t n = pts.size();
  std::vector<int> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if ((pts[i] - pts[j]).abs() <= tol) {
        int a = find(static_cast<int>(i)), b = find(static_cast<int>(j));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
  std::vector<RootCluster> out;
  std::vector<int> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    int r = find(static_cast<int>(i));
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(out.size());
      out.push_back({Complex(0), 0});
    }
    out[slot[r]].center += pts[i];
    out[slot[r]].multiplicity += 1;
  }
  for (auto& c : out) c.center = c.center / Complex(Real(c.multiplicity));
  return out;
}

// Polishes the center of an m-fold cluster: an m-fold root of p is a simple
// root of the (m-1)-th derivative, where Newton converges quadratically.
inline Complex refine_cluster_center(const Poly<Complex>& p, const RootCluster& c) {
  Poly<Complex> q = p;
  for (int k = 1; k < c.multiplicity; ++k) q = q.derivative();
  Poly<Complex> dq = q.derivative();
  Complex z = c.center;
  for (int iter = 0; iter < 80; ++iter) {
    Complex qv = q.eval(z);
    Complex dv = dq.eval(z);
    if (dv.is_zero()) break;
    Complex step = qv / dv;
    z -= step;
    if (step.abs() < pow(Real(10), -static_cast<int>(working_digits()))) break;
  }
  return z;
}

}  // namespace belyi
