#ifndef DQHO_RATIONAL_HPP
#define DQHO_RATIONAL_HPP

// Exact scalar types: arbitrary-precision rationals, complex rationals, and
// real quadratic surds c*sqrt(r) used by the exact wavefunction synthesis.

#include <gmpxx.h>

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

#include "dqho/errors.hpp"

namespace dqho {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Integer factorial(unsigned n) {
  Integer r = 1;
  for (unsigned k = 2; k <= n; ++k) r *= k;
  return r;
}

inline Integer binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  Integer r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

// Returns true and writes the root when v is a perfect square (v >= 0).
inline bool exact_sqrt(const Integer& v, Integer& root) {
  if (v < 0) return false;
  root = sqrt(v);
  return root * root == v;
}

inline bool exact_sqrt(const Rational& v, Rational& root) {
  Integer n, d;
  if (!exact_sqrt(Integer(v.get_num()), n)) return false;
  if (!exact_sqrt(Integer(v.get_den()), d)) return false;
  root = make_rational(n, d);
  return true;
}

inline double to_double(const Rational& r) {
  return mpq_get_d(r.get_mpq_t());
}

inline std::string to_string(const Rational& r) {
  return r.get_str();
}

struct ComplexRational {
  Rational re;
  Rational im;

  ComplexRational() = default;
  ComplexRational(Rational real) : re(std::move(real)) {}  // NOLINT(implicit)
  ComplexRational(long real) : re(real) {}                 // NOLINT(implicit)
  ComplexRational(int real) : re(real) {}                  // NOLINT(implicit)
  ComplexRational(Rational real, Rational imag) : re(std::move(real)), im(std::move(imag)) {}

  static ComplexRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re == 0 && im == 0; }
  ComplexRational conj() const { return {re, -im}; }

  ComplexRational& operator+=(const ComplexRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ComplexRational& operator-=(const ComplexRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  ComplexRational& operator*=(const ComplexRational& o) {
    // Temporaries: gmpxx expression templates do not tolerate the target
    // aliasing an operand of a nested expression.
    Rational real_part = re * o.re;
    real_part -= im * o.im;
    Rational imag_part = re * o.im;
    imag_part += im * o.re;
    re = real_part;
    im = imag_part;
    return *this;
  }

  friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
  friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
  friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
  friend ComplexRational operator-(const ComplexRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re == b.re && a.im == b.im;
  }

  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

  std::string str() const {
    if (im == 0) return to_string(re);
    const std::string imag = (im == 1) ? "i" : (im == -1) ? "-i" : to_string(im) + "i";
    if (re == 0) return imag;
    return "(" + to_string(re) + (im > 0 ? "+" : "") + imag + ")";
  }
};

// Real number coef * sqrt(radicand) with an integer radicand kept free of
// small square factors. Sums are closed only when the radicands agree up to
// a rational square; anything else throws contract_violation.
class Surd {
 public:
  Surd() : radicand_(1) {}
  Surd(Rational coef) : coef_(std::move(coef)), radicand_(1) {}  // NOLINT(implicit)
  Surd(long coef) : coef_(coef), radicand_(1) {}                 // NOLINT(implicit)
  Surd(int coef) : coef_(coef), radicand_(1) {}                  // NOLINT(implicit)

  static Surd sqrt_of(const Rational& value) {
    if (value < 0) throw domain_error("Surd::sqrt_of: negative radicand");
    Surd s;
    if (value == 0) return s;
    // sqrt(a/b) = sqrt(a*b)/b
    s.coef_ = make_rational(Integer(1), Integer(value.get_den()));
    s.radicand_ = Integer(value.get_num()) * Integer(value.get_den());
    s.canonicalize();
    return s;
  }

  const Rational& coef() const { return coef_; }
  const Integer& radicand() const { return radicand_; }
  bool is_zero() const { return coef_ == 0; }
  int sign() const { return coef_ > 0 ? 1 : (coef_ < 0 ? -1 : 0); }

  Rational square() const { return coef_ * coef_ * Rational(radicand_); }

  // From the exact square, so huge radicands and tiny coefficients do not
  // overflow separately.
  double to_double() const { return sign() * std::sqrt(dqho::to_double(square())); }

  Surd& operator+=(const Surd& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (radicand_ == o.radicand_) {
      coef_ += o.coef_;
    } else {
      // o = o.coef*sqrt(o.rad) = o.coef*sqrt(o.rad/rad)*sqrt(rad)
      Rational ratio_root;
      if (!exact_sqrt(make_rational(o.radicand_, radicand_), ratio_root))
        throw contract_violation("Surd: sum leaves the quadratic extension");
      coef_ += o.coef_ * ratio_root;
    }
    if (coef_ == 0) radicand_ = 1;
    return *this;
  }
  Surd& operator-=(const Surd& o) { return *this += -o; }

  Surd& operator*=(const Surd& o) {
    coef_ *= o.coef_;
    radicand_ *= o.radicand_;
    canonicalize();
    return *this;
  }
  Surd& operator/=(const Surd& o) {
    if (o.is_zero()) throw domain_error("Surd: division by zero");
    // sqrt(r1/r2) = sqrt(r1*r2)/r2
    coef_ /= o.coef_ * Rational(o.radicand_);
    radicand_ *= o.radicand_;
    canonicalize();
    return *this;
  }

  friend Surd operator+(Surd a, const Surd& b) { return a += b; }
  friend Surd operator-(Surd a, const Surd& b) { return a -= b; }
  friend Surd operator*(Surd a, const Surd& b) { return a *= b; }
  friend Surd operator/(Surd a, const Surd& b) { return a /= b; }
  friend Surd operator-(Surd a) {
    a.coef_ = -a.coef_;
    return a;
  }
  friend bool operator==(const Surd& a, const Surd& b) {
    return a.sign() == b.sign() && a.square() == b.square();
  }

  std::string str() const {
    if (radicand_ == 1 || coef_ == 0) return to_string(coef_);
    return to_string(coef_) + "*sqrt(" + radicand_.get_str() + ")";
  }

 private:
  void canonicalize() {
    if (coef_ == 0) {
      radicand_ = 1;
      return;
    }
    static constexpr std::array<unsigned, 25> kPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23,
                                                         29, 31, 37, 41, 43, 47, 53, 59, 61,
                                                         67, 71, 73, 79, 83, 89, 97};
    for (unsigned p : kPrimes) {
      if (radicand_ == 1) break;
      const unsigned p2 = p * p;
      while (radicand_ % p2 == 0) {
        radicand_ /= p2;
        coef_ *= p;
      }
    }
    Integer root;
    if (radicand_ != 1 && exact_sqrt(radicand_, root)) {
      coef_ *= Rational(root);
      radicand_ = 1;
    }
  }

  Rational coef_;
  Integer radicand_;
};

}  // namespace dqho

#endif  // DQHO_RATIONAL_HPP
