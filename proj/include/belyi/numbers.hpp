#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>

namespace belyi {

using Int = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using Real =
    boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>, boost::multiprecision::et_off>;

inline unsigned working_digits() { return Real::default_precision(); }
inline void set_working_digits(unsigned digits) { Real::default_precision(digits); }

// Temporarily raises (or lowers) the working precision.
struct PrecisionGuard {
  unsigned saved;
  explicit PrecisionGuard(unsigned digits) : saved(working_digits()) { set_working_digits(digits); }
  ~PrecisionGuard() { set_working_digits(saved); }
  PrecisionGuard(const PrecisionGuard&) = delete;
};

inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s));
  Int num(s.substr(0, slash));
  Int den(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
  return Rat(num) / Rat(den);
}

inline std::string rat_string(const Rat& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) s += "/" + denominator(q).str();
  return s;
}

inline Real to_real(const Rat& q) {
  return Real(numerator(q)) / Real(denominator(q));
}

inline std::string real_string(const Real& x, unsigned digits = 0) {
  if (digits == 0) digits = working_digits();
  return x.str(digits);
}

// Exact square root in Q; throws if the argument is not a perfect square.
inline Rat rat_sqrt_exact(const Rat& q) {
  if (q < 0) throw std::domain_error("rat_sqrt_exact: negative argument");
  Int n = numerator(q), d = denominator(q);
  Int sn = sqrt(n), sd = sqrt(d);
  if (sn * sn != n || sd * sd != d)
    throw std::domain_error("rat_sqrt_exact: not a perfect square: " + rat_string(q));
  return Rat(sn) / Rat(sd);
}

struct Complex {
  Real re, im;

  Complex() : re(0), im(0) {}
  Complex(Real r) : re(std::move(r)), im(0) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(int n) : re(n), im(0) {}
  explicit Complex(const Rat& q) : re(to_real(q)), im(0) {}

  Complex operator-() const { return {-re, -im}; }
  Complex operator+(const Complex& o) const { return {re + o.re, im + o.im}; }
  Complex operator-(const Complex& o) const { return {re - o.re, im - o.im}; }
  Complex operator*(const Complex& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  Complex operator/(const Complex& o) const {
    Real d = o.re * o.re + o.im * o.im;
    if (d == 0) throw std::domain_error("complex division by zero");
    return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
  }
  Complex& operator+=(const Complex& o) { return *this = *this + o; }
  Complex& operator-=(const Complex& o) { return *this = *this - o; }
  Complex& operator*=(const Complex& o) { return *this = *this * o; }
  Complex& operator/=(const Complex& o) { return *this = *this / o; }
  bool operator==(const Complex& o) const { return re == o.re && im == o.im; }
  bool operator!=(const Complex& o) const { return !(*this == o); }

  Complex conj() const { return {re, -im}; }
  Real abs() const { return hypot(re, im); }
  Real norm() const { return re * re + im * im; }
  bool is_zero() const { return re == 0 && im == 0; }
};

inline Complex operator*(int a, const Complex& z) { return Complex(Real(a)) * z; }
inline Complex operator*(const Real& a, const Complex& z) { return Complex(a) * z; }

// principal branch
inline Complex complex_sqrt(const Complex& z) {
  if (z.im == 0) {
    if (z.re >= 0) return {sqrt(z.re), Real(0)};
    return {Real(0), sqrt(-z.re)};
  }
  Real r = z.abs();
  Real t = sqrt((r + abs(z.re)) / 2);
  if (z.re >= 0) return {t, z.im / (2 * t)};
  Real u = abs(z.im) / (2 * t);
  return z.im >= 0 ? Complex{u, t} : Complex{u, -t};
}

inline Complex complex_pow_int(Complex z, long n) {
  if (n < 0) return Complex(1) / complex_pow_int(z, -n);
  Complex r(1);
  while (n > 0) {
    if (n & 1) r *= z;
    z *= z;
    n >>= 1;
  }
  return r;
}

// principal n-th root
inline Complex complex_root(const Complex& z, long n) {
  if (n == 1) return z;
  if (z.is_zero()) return Complex(0);
  Real r = z.abs();
  Real theta = atan2(z.im, z.re);
  Real rr = pow(r, Real(1) / Real(static_cast<long>(n)));
  Real tt = theta / Real(static_cast<long>(n));
  return {rr * cos(tt), rr * sin(tt)};
}

// Scalar plumbing shared by the series and polynomial templates.
template <class K>
struct ScalarTraits;

template <>
struct ScalarTraits<Rat> {
  static constexpr bool exact = true;
  static bool is_zero(const Rat& x) { return x == 0; }
  static Rat sqrt_value(const Rat& x) { return rat_sqrt_exact(x); }
  static bool closer_to(const Rat& x, const Rat& a, const Rat& b) {
    return abs(x - a) <= abs(x - b);
  }
  static Real magnitude(const Rat& x) { return to_real(abs(x)); }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static bool is_zero(const Complex& x) { return x.is_zero(); }
  static Complex sqrt_value(const Complex& x) { return complex_sqrt(x); }
  static bool closer_to(const Complex& x, const Complex& a, const Complex& b) {
    return (x - a).abs() <= (x - b).abs();
  }
  static Real magnitude(const Complex& x) { return x.abs(); }
};

inline Real pow10(long e) { return pow(Real(10), static_cast<int>(e)); }

}  // namespace belyi
