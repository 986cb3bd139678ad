#ifndef DQHO_WICK_HPP
#define DQHO_WICK_HPP

// Exact algebra of normal-ordered polynomials in two boson modes.
//
// A monomial (p,q,r,t) stands for A1†^p A2†^q A1^r A2^t. Products are
// normal ordered with the single-mode contraction formula
//
//   a^r a†^p = sum_k C(r,k) C(p,k) k! a†^(p-k) a^(r-k),
//
// applied independently to each mode since operators of different modes
// commute.

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dqho/errors.hpp"
#include "dqho/rational.hpp"

namespace dqho::wick {

struct BosonMonomial {
  unsigned p = 0;  // A1† power
  unsigned q = 0;  // A2† power
  unsigned r = 0;  // A1 power
  unsigned t = 0;  // A2 power

  friend auto operator<=>(const BosonMonomial&, const BosonMonomial&) = default;

  unsigned degree() const { return p + q + r + t; }
  // Change in total quanta s when the monomial acts.
  int shift() const { return static_cast<int>(p + q) - static_cast<int>(r + t); }
  bool is_identity() const { return degree() == 0; }

  BosonMonomial adjoint() const { return {r, t, p, q}; }

  std::string str() const {
    if (is_identity()) return "I";
    std::string out;
    auto factor = [&out](const char* name, unsigned power) {
      if (power == 0) return;
      if (!out.empty()) out += ' ';
      out += name;
      if (power > 1) out += "^" + std::to_string(power);
    };
    factor("A1†", p);
    factor("A2†", q);
    factor("A1", r);
    factor("A2", t);
    return out;
  }
};

class OperatorPoly {
 public:
  using Terms = std::map<BosonMonomial, ComplexRational>;

  OperatorPoly() = default;

  static OperatorPoly identity() { return term({}, ComplexRational(1)); }

  static OperatorPoly term(const BosonMonomial& m, const ComplexRational& c = ComplexRational(1)) {
    OperatorPoly out;
    out.add(m, c);
    return out;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  // Common resolution shift of all terms; nullopt when the terms disagree.
  // The zero polynomial has shift 0.
  std::optional<int> uniform_shift() const {
    std::optional<int> shift;
    for (const auto& [m, c] : terms_) {
      if (!shift) {
        shift = m.shift();
      } else if (*shift != m.shift()) {
        return std::nullopt;
      }
    }
    return shift.value_or(0);
  }

  void add(const BosonMonomial& m, const ComplexRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  OperatorPoly& operator+=(const OperatorPoly& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  OperatorPoly& operator-=(const OperatorPoly& o) {
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  OperatorPoly& operator*=(const ComplexRational& scalar) {
    if (scalar.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= scalar;
    return *this;
  }

  friend OperatorPoly operator+(OperatorPoly a, const OperatorPoly& b) { return a += b; }
  friend OperatorPoly operator-(OperatorPoly a, const OperatorPoly& b) { return a -= b; }
  friend OperatorPoly operator-(OperatorPoly a) { return a *= ComplexRational(-1); }
  friend OperatorPoly operator*(const ComplexRational& s, OperatorPoly a) { return a *= s; }
  friend OperatorPoly operator*(OperatorPoly a, const ComplexRational& s) { return a *= s; }
  friend bool operator==(const OperatorPoly& a, const OperatorPoly& b) { return a.terms_ == b.terms_; }

  // Deterministic printed form, e.g. "1/2 A1† A1 + -1/2 A1† A2".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      if (!out.empty()) out += " + ";
      if (m.is_identity()) {
        out += c.str() + " I";
      } else if (c == ComplexRational(1)) {
        out += m.str();
      } else {
        out += c.str() + " " + m.str();
      }
    }
    return out;
  }

 private:
  Terms terms_;
};

namespace detail {

// Coefficients of a^r a†^p = sum_k w_k a†^(p-k) a^(r-k), w_k = C(r,k) C(p,k) k!.
inline std::vector<Integer> contraction_weights(unsigned r, unsigned p) {
  const unsigned kmax = std::min(r, p);
  std::vector<Integer> w(kmax + 1);
  for (unsigned k = 0; k <= kmax; ++k) w[k] = binomial(r, k) * binomial(p, k) * factorial(k);
  return w;
}

}  // namespace detail

inline OperatorPoly multiply(const BosonMonomial& a, const BosonMonomial& b) {
  // (A1†^a.p A1^a.r)(A1†^b.p A1^b.r) for mode 1, likewise mode 2.
  const auto w1 = detail::contraction_weights(a.r, b.p);
  const auto w2 = detail::contraction_weights(a.t, b.q);
  OperatorPoly out;
  for (unsigned k = 0; k < w1.size(); ++k) {
    for (unsigned l = 0; l < w2.size(); ++l) {
      const BosonMonomial m{a.p + b.p - k, a.q + b.q - l, a.r + b.r - k, a.t + b.t - l};
      out.add(m, ComplexRational(Rational(Integer(w1[k] * w2[l]))));
    }
  }
  return out;
}

inline OperatorPoly multiply(const OperatorPoly& a, const OperatorPoly& b) {
  OperatorPoly out;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      const ComplexRational c = ca * cb;
      const OperatorPoly product = multiply(ma, mb);
      for (const auto& [m, w] : product.terms()) out.add(m, c * w);
    }
  }
  return out;
}

inline OperatorPoly operator*(const OperatorPoly& a, const OperatorPoly& b) { return multiply(a, b); }

inline OperatorPoly commutator(const OperatorPoly& a, const OperatorPoly& b) {
  return multiply(a, b) - multiply(b, a);
}

inline OperatorPoly adjoint(const OperatorPoly& a) {
  OperatorPoly out;
  for (const auto& [m, c] : a.terms()) out.add(m.adjoint(), c.conj());
  return out;
}

inline std::vector<std::string> named_operator_names() {
  return {"A1", "A2", "A1†", "A2†", "B1", "B2", "B1†", "B2†", "H", "S",
          "H_I", "D", "D†", "X", "P", "N1", "N2", "Ω", "I"};
}

// Accepts the canonical names above plus ASCII spellings ("A1dag", "Omega",
// "HI", ...). Returns the canonical name or throws unsupported_symbol.
inline std::string canonical_operator_name(std::string_view name) {
  std::string n(name);
  auto replace_suffix = [&n](std::string_view suffix) {
    if (n.size() > suffix.size() && n.compare(n.size() - suffix.size(), suffix.size(), suffix) == 0) {
      n = n.substr(0, n.size() - suffix.size()) + "†";
      return true;
    }
    return false;
  };
  replace_suffix("^dag") || replace_suffix("_dag") || replace_suffix("dag") || replace_suffix("^†") ||
      replace_suffix("+") || replace_suffix("'");
  if (n == "Omega" || n == "omega") n = "Ω";
  if (n == "HI" || n == "Hi" || n == "H_i") n = "H_I";
  if (n == "Id" || n == "1") n = "I";
  for (const auto& known : named_operator_names()) {
    if (n == known) return n;
  }
  throw unsupported_symbol("unsupported operator symbol: " + std::string(name));
}

inline OperatorPoly named(std::string_view op_name) {
  const std::string name = canonical_operator_name(op_name);
  const ComplexRational half(make_rational(1, 2));
  const auto a1 = OperatorPoly::term({0, 0, 1, 0});
  const auto a2 = OperatorPoly::term({0, 0, 0, 1});
  const auto a1d = OperatorPoly::term({1, 0, 0, 0});
  const auto a2d = OperatorPoly::term({0, 1, 0, 0});

  if (name == "A1") return a1;
  if (name == "A2") return a2;
  if (name == "A1†") return a1d;
  if (name == "A2†") return a2d;
  if (name == "I") return OperatorPoly::identity();
  if (name == "B1") return a1 + a2;
  if (name == "B2") return a1 - a2;
  if (name == "B1†") return a1d + a2d;
  if (name == "B2†") return a1d - a2d;
  if (name == "N1") return a1d * a1;
  if (name == "N2") return a2d * a2;
  if (name == "S") return named("N1") + named("N2");
  if (name == "H_I") return -half * (a1 * a2d + a1d * a2);
  if (name == "H") return half * (a1d * a1 + a2d * a2) - half * (a1 * a2d + a1d * a2);
  if (name == "D") return named("B1†") * named("B2");
  if (name == "D†") return named("B1") * named("B2†");
  if (name == "X") return half * (named("D†") + named("D"));
  if (name == "P") return ComplexRational(Rational(0), make_rational(1, 2)) * (named("D†") - named("D"));
  // Ω = D D† + 4 H_I² + 4 H_I
  const auto hi = named("H_I");
  return named("D") * named("D†") + ComplexRational(4) * (hi * hi) + ComplexRational(4) * hi;
}

}  // namespace dqho::wick

#endif  // DQHO_WICK_HPP
