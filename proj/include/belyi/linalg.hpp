#pragma once

#include <vector>

#include "belyi/numbers.hpp"

namespace belyi {

struct CMat {
  std::size_t rows = 0, cols = 0;
  std::vector<Complex> a;

  CMat() = default;
  CMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  Complex& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Complex& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

// Gaussian elimination with partial pivoting.
inline std::vector<Complex> lu_solve(CMat m, std::vector<Complex> b) {
  if (m.rows != m.cols || b.size() != m.rows) throw std::invalid_argument("lu_solve: shape mismatch");
  std::size_t n = m.rows;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    Real best = m.at(k, k).abs();
    for (std::size_t i = k + 1; i < n; ++i) {
      Real v = m.at(i, k).abs();
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0) throw std::domain_error("lu_solve: singular matrix");
    if (piv != k) {
      for (std::size_t j = k; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
      std::swap(b[k], b[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      Complex f = m.at(i, k) / m.at(k, k);
      if (f.is_zero()) continue;
      for (std::size_t j = k; j < n; ++j) m.at(i, j) -= f * m.at(k, j);
      b[i] -= f * b[k];
    }
  }
  std::vector<Complex> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Complex s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= m.at(i, j) * x[j];
    x[i] = s / m.at(i, i);
  }
  return x;
}

struct SvdResult {
  std::vector<Real> singular_values;       // descending
  std::vector<std::vector<Complex>> right;  // right singular vectors, same order
};

// One-sided Jacobi (Hestenes): orthogonalize column pairs until inner
// products vanish relative to the column norms.  Column norms are the
// singular values; the accumulated column operations give V.
inline SvdResult jacobi_svd(CMat m, int max_sweeps = 60) {
  std::size_t n = m.cols;
  std::vector<std::vector<Complex>> v(n, std::vector<Complex>(n, Complex(0)));
  for (std::size_t j = 0; j < n; ++j) v[j][j] = Complex(1);
  Real eps = pow(Real(10), -static_cast<int>(working_digits()) + 4);

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        Real alpha(0), beta(0);
        Complex gamma(0);
        for (std::size_t i = 0; i < m.rows; ++i) {
          alpha += m.at(i, p).norm();
          beta += m.at(i, q).norm();
          gamma += m.at(i, p).conj() * m.at(i, q);
        }
        Real gabs = gamma.abs();
        if (gabs == 0 || gabs <= eps * sqrt(alpha * beta)) continue;
        rotated = true;
        // rotate phase into column q so the pair problem becomes real
        Complex phase = gamma / Complex(gabs);
        Complex phconj = phase.conj();
        for (std::size_t i = 0; i < m.rows; ++i) m.at(i, q) *= phconj;
        for (std::size_t j = 0; j < n; ++j) v[j][q] *= phconj;
        Real tau = (beta - alpha) / (2 * gabs);
        Real t = (tau >= 0 ? Real(1) : Real(-1)) / (abs(tau) + sqrt(1 + tau * tau));
        Real c = 1 / sqrt(1 + t * t);
        Real s = c * t;
        for (std::size_t i = 0; i < m.rows; ++i) {
          Complex xp = m.at(i, p), xq = m.at(i, q);
          m.at(i, p) = c * xp - s * xq;
          m.at(i, q) = s * xp + c * xq;
        }
        for (std::size_t j = 0; j < n; ++j) {
          Complex xp = v[j][p], xq = v[j][q];
          v[j][p] = c * xp - s * xq;
          v[j][q] = s * xp + c * xq;
        }
      }
    if (!rotated) break;
  }

  std::vector<std::size_t> order(n);
  for (std::size_t j = 0; j < n; ++j) order[j] = j;
  std::vector<Real> norms(n);
  for (std::size_t j = 0; j < n; ++j) {
    Real s(0);
    for (std::size_t i = 0; i < m.rows; ++i) s += m.at(i, j).norm();
    norms[j] = sqrt(s);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return norms[a] > norms[b]; });
  SvdResult r;
  for (std::size_t j : order) {
    r.singular_values.push_back(norms[j]);
    std::vector<Complex> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = v[i][j];
    r.right.push_back(std::move(col));
  }
  return r;
}

inline std::size_t numerical_rank(const SvdResult& s, const Real& rel_tol) {
  if (s.singular_values.empty()) return 0;
  std::size_t r = 0;
  for (const Real& sv : s.singular_values)
    if (sv > rel_tol * s.singular_values[0]) ++r;
  return r;
}

}  // namespace belyi
