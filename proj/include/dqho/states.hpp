#ifndef DQHO_STATES_HPP
#define DQHO_STATES_HPP

// Energy-resolution states |n,s>, position-resolution states psi_{n1,s},
// ladder actions, algebraic synthesis of the eigenstate wavefunctions,
// expectation values and resolution scaling.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dqho/errors.hpp"
#include "dqho/rational.hpp"
#include "dqho/repmat.hpp"
#include "dqho/specfn.hpp"
#include "dqho/wick.hpp"

namespace dqho {

inline constexpr double kNormTolerance = 1e-12;

namespace detail {

inline void check_resolution(int s, Eigen::Index len, const char* what) {
  if (s < 0) throw domain_error(std::string(what) + ": resolution must be non-negative");
  if (len != s + 1) throw shape_error(std::string(what) + ": amplitude vector must have length s+1");
}

}  // namespace detail

struct EnergyState {
  int s = 0;
  Eigen::VectorXcd d;  // d(n) = <n,s|psi>

  EnergyState() : d(Eigen::VectorXcd::Ones(1)) {}
  EnergyState(int s_, Eigen::VectorXcd amplitudes) : s(s_), d(std::move(amplitudes)) {
    detail::check_resolution(s, d.size(), "EnergyState");
  }

  static EnergyState basis(int n, int s) {
    if (s < 0 || n < 0 || n > s) throw domain_error("EnergyState::basis: need 0 <= n <= s");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(s + 1);
    v(n) = 1.0;
    return {s, std::move(v)};
  }

  double norm() const { return d.norm(); }
  bool is_normalized(double tol = kNormTolerance) const { return std::abs(d.squaredNorm() - 1.0) <= tol; }
  EnergyState normalized() const {
    const double nrm = norm();
    if (nrm == 0.0) throw domain_error("EnergyState: cannot normalize the zero vector");
    return {s, d / nrm};
  }
};

struct PositionState {
  int s = 0;
  Eigen::VectorXcd a;  // a(n1) = <psi_{n1,s}|psi>, position x = 2 n1 - s

  PositionState() : a(Eigen::VectorXcd::Ones(1)) {}
  PositionState(int s_, Eigen::VectorXcd amplitudes) : s(s_), a(std::move(amplitudes)) {
    detail::check_resolution(s, a.size(), "PositionState");
  }

  static PositionState delta(int n1, int s) {
    if (s < 0 || n1 < 0 || n1 > s) throw domain_error("PositionState::delta: need 0 <= n1 <= s");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(s + 1);
    v(n1) = 1.0;
    return {s, std::move(v)};
  }

  static int position(int n1, int s) { return 2 * n1 - s; }
  double norm() const { return a.norm(); }
  bool is_normalized(double tol = kNormTolerance) const { return std::abs(a.squaredNorm() - 1.0) <= tol; }
};

// ---------------------------------------------------------------------------
// Ladder actions in the energy basis.

// Factors: D† 2 sqrt(s-n) sqrt(n+1) (n -> n+1); D 2 sqrt(s-n+1) sqrt(n) (n -> n-1);
// B1† sqrt(2(s-n+1)) (s -> s+1); B1 sqrt(2(s-n)) (s -> s-1);
// B2 sqrt(2n) (n -> n-1, s -> s-1); B2† sqrt(2(n+1)) (n -> n+1, s -> s+1).
inline EnergyState apply_ladder(std::string_view op_name, const EnergyState& psi) {
  const std::string op = wick::canonical_operator_name(op_name);
  const int s = psi.s;
  auto r = [](double v) { return std::sqrt(v); };
  if (op == "D†" || op == "D") {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(s + 1);
    for (int n = 0; n <= s; ++n) {
      if (op == "D†" && n < s) out(n + 1) += 2.0 * r(s - n) * r(n + 1) * psi.d(n);
      if (op == "D" && n > 0) out(n - 1) += 2.0 * r(s - n + 1) * r(n) * psi.d(n);
    }
    return {s, std::move(out)};
  }
  if (op == "B1" || op == "B2") {
    if (s == 0) throw domain_error("apply_ladder: " + op + " needs s >= 1");
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(s);
    for (int n = 0; n <= s; ++n) {
      if (op == "B1" && n < s) out(n) = r(2.0 * (s - n)) * psi.d(n);
      if (op == "B2" && n > 0) out(n - 1) = r(2.0 * n) * psi.d(n);
    }
    return {s - 1, std::move(out)};
  }
  if (op == "B1†" || op == "B2†") {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(s + 2);
    for (int n = 0; n <= s; ++n) {
      if (op == "B1†") out(n) = r(2.0 * (s - n + 1)) * psi.d(n);
      if (op == "B2†") out(n + 1) = r(2.0 * (n + 1)) * psi.d(n);
    }
    return {s + 1, std::move(out)};
  }
  throw unsupported_symbol("apply_ladder: " + op + " is not a ladder operator");
}

// ---------------------------------------------------------------------------
// Wavefunction synthesis.

// automatic selects exact arithmetic at every resolution: the floating ladder
// recursion amplifies rounding along the upper energy levels and is only
// trustworthy for s below about 80.
enum class SynthesisMode { automatic, exact, floating };

struct ExactGroundState {
  std::vector<Surd> unnormalized;  // (B1†)^s psi_{0,0}
  Integer norm_squared;            // sum of squares, equals (2s)!!
  std::vector<Surd> amplitudes;    // unnormalized / sqrt((2s)!!)
};

// (A1† + A2†)^s psi_{0,0} in exact arithmetic, one application at a time:
// B1† psi_{n1,k} = sqrt(n1+1) psi_{n1+1,k+1} + sqrt(k-n1+1) psi_{n1,k+1}.
inline ExactGroundState ground_state_exact(int s) {
  if (s < 0) throw domain_error("ground_state: resolution must be non-negative");
  std::vector<Surd> v{Surd(1)};
  for (int k = 0; k < s; ++k) {
    std::vector<Surd> next(k + 2);
    for (int n1 = 0; n1 <= k; ++n1) {
      if (v[n1].is_zero()) continue;
      next[n1 + 1] += Surd::sqrt_of(Rational(n1 + 1)) * v[n1];
      next[n1] += Surd::sqrt_of(Rational(k - n1 + 1)) * v[n1];
    }
    v = std::move(next);
  }
  ExactGroundState out;
  Rational norm2 = 0;
  for (const auto& x : v) norm2 += x.square();
  if (norm2.get_den() != 1) throw contract_violation("ground_state_exact: non-integer norm");
  out.norm_squared = norm2.get_num();
  const Surd inv = Surd(1) / Surd::sqrt_of(norm2);
  out.amplitudes.reserve(v.size());
  for (const auto& x : v) out.amplitudes.push_back(x * inv);
  out.unnormalized = std::move(v);
  return out;
}

namespace detail {

// One exact step alpha^{k+1} = D† alpha^k / (2 sqrt(s-k) sqrt(k+1)), with D† in
// the position basis: diagonal 2j-s, (j,j+1) = -h_j, (j+1,j) = +h_j.
inline std::vector<Surd> exact_raise(const std::vector<Surd>& a, int s, int k) {
  std::vector<Surd> out(s + 1);
  for (int j = 0; j <= s; ++j) {
    Surd acc = Surd(2 * j - s) * a[j];
    if (j < s) acc -= Surd::sqrt_of(Rational(static_cast<long>(s - j) * (j + 1))) * a[j + 1];
    if (j > 0) acc += Surd::sqrt_of(Rational(static_cast<long>(s - j + 1) * j)) * a[j - 1];
    out[j] = std::move(acc);
  }
  const Surd inv = Surd(1) / (Surd(2) * Surd::sqrt_of(Rational(static_cast<long>(s - k) * (k + 1))));
  for (auto& x : out) x *= inv;
  return out;
}

inline Eigen::VectorXd to_vector(const std::vector<Surd>& a) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = a[i].to_double();
  return v;
}

// Floating ladder with compensated (Kahan) accumulation of each row sum.
inline Eigen::VectorXd float_raise(const Eigen::VectorXd& a, int s, int k) {
  Eigen::VectorXd out(s + 1);
  const double inv = 1.0 / (2.0 * std::sqrt(static_cast<double>(s - k) * (k + 1)));
  for (int j = 0; j <= s; ++j) {
    double sum = 0.0, comp = 0.0;
    auto add = [&](double term) {
      const double y = term - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    };
    add((2.0 * j - s) * a(j));
    if (j < s) add(-hop(s, j) * a(j + 1));
    if (j > 0) add(hop(s, j - 1) * a(j - 1));
    out(j) = sum * inv;
  }
  return out;
}

inline Eigen::VectorXd float_ground(int s) {
  // 2^{-s/2} sqrt(C(s,n1)) via lgamma.
  Eigen::VectorXd v(s + 1);
  for (int n1 = 0; n1 <= s; ++n1) {
    const double lb = std::lgamma(s + 1.0) - std::lgamma(n1 + 1.0) - std::lgamma(s - n1 + 1.0);
    v(n1) = std::exp(0.5 * lb - 0.5 * s * std::log(2.0));
  }
  return v;
}

// Per-resolution memo of the synthesized columns alpha^0..alpha^k.
struct SynthesisCache {
  struct Entry {
    std::mutex m;
    std::vector<Surd> last_exact;
    std::vector<Eigen::VectorXd> columns;
  };
  std::mutex m;
  std::map<std::pair<int, bool>, std::shared_ptr<Entry>> entries;

  static SynthesisCache& instance() {
    static SynthesisCache cache;
    return cache;
  }

  std::shared_ptr<Entry> entry(int s, bool exact) {
    std::lock_guard lock(m);
    auto& e = entries[{s, exact}];
    if (!e) e = std::make_shared<Entry>();
    return e;
  }
};

inline bool use_exact(int s, SynthesisMode mode) {
  if (mode == SynthesisMode::exact) return true;
  (void)s;
  return mode != SynthesisMode::floating;
}

// Columns alpha^0..alpha^{n_max} (real), computed once per (s, mode).
inline std::vector<Eigen::VectorXd> synthesized_columns(int s, int n_max, SynthesisMode mode) {
  const bool exact = use_exact(s, mode);
  auto entry = SynthesisCache::instance().entry(s, exact);
  std::lock_guard lock(entry->m);
  auto& cols = entry->columns;
  if (cols.empty()) {
    if (exact) {
      entry->last_exact = ground_state_exact(s).amplitudes;
      cols.push_back(to_vector(entry->last_exact));
    } else {
      cols.push_back(float_ground(s));
    }
  }
  for (int k = static_cast<int>(cols.size()) - 1; k < n_max; ++k) {
    if (exact) {
      entry->last_exact = exact_raise(entry->last_exact, s, k);
      cols.push_back(to_vector(entry->last_exact));
    } else {
      cols.push_back(float_raise(cols.back(), s, k));
    }
  }
  return {cols.begin(), cols.begin() + n_max + 1};
}

}  // namespace detail

// (B1†)^s psi_{0,0} / sqrt((2s)!!): alpha^0_{n1,s} = 2^{-s/2} sqrt(C(s,n1)).
inline PositionState ground_state(int s, SynthesisMode mode = SynthesisMode::automatic) {
  if (s < 0) throw domain_error("ground_state: resolution must be non-negative");
  return {s, detail::synthesized_columns(s, 0, mode)[0].cast<cplx>()};
}

// alpha^n: ground state raised n times by D†. Real; the amplitude at n1 = s is
// positive.
inline PositionState eigenstate_wavefunction(int n, int s, SynthesisMode mode = SynthesisMode::automatic) {
  if (s < 0 || n < 0 || n > s) throw domain_error("eigenstate_wavefunction: need 0 <= n <= s");
  Eigen::VectorXd v = detail::synthesized_columns(s, n, mode)[n];
  if (v(s) < 0) v = -v;
  return {s, v.cast<cplx>()};
}

// Orthogonal matrix W(n1, n) = alpha^n_{n1,s}.
inline Eigen::MatrixXd wavefunction_matrix(int s, SynthesisMode mode = SynthesisMode::automatic) {
  if (s < 0) throw domain_error("wavefunction_matrix: resolution must be non-negative");
  const auto cols = detail::synthesized_columns(s, s, mode);
  Eigen::MatrixXd w(s + 1, s + 1);
  for (int n = 0; n <= s; ++n) w.col(n) = cols[n](s) < 0 ? Eigen::VectorXd(-cols[n]) : cols[n];
  return w;
}

// ---------------------------------------------------------------------------
// Basis change.

inline PositionState to_position(const EnergyState& psi) {
  return {psi.s, wavefunction_matrix(psi.s).cast<cplx>() * psi.d};
}

inline EnergyState to_energy(const PositionState& psi) {
  return {psi.s, wavefunction_matrix(psi.s).transpose().cast<cplx>() * psi.a};
}

inline PositionState change_basis(const EnergyState& psi) { return to_position(psi); }
inline EnergyState change_basis(const PositionState& psi) { return to_energy(psi); }

// ---------------------------------------------------------------------------
// Energy-basis matrices.

// X: (n+1,n) = (n,n+1) = h_n; P: (n+1,n) = i h_n, (n,n+1) = -i h_n;
// D†: (n+1,n) = 2 h_n; D: (n,n+1) = 2 h_n; H, H_I, S, Ω, I diagonal. Other
// fixed-resolution operators are transformed from the position basis.
inline RepMatrix energy_matrix(std::string_view op_name, int s) {
  if (s < 0) throw domain_error("energy_matrix: resolution must be non-negative");
  const std::string op = wick::canonical_operator_name(op_name);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(s + 1, s + 1);
  const cplx I(0, 1);
  auto fill_off = [&](cplx lower, cplx upper) {
    for (int n = 0; n < s; ++n) {
      m(n + 1, n) = lower * detail::hop(s, n);
      m(n, n + 1) = upper * detail::hop(s, n);
    }
  };
  if (op == "X") {
    fill_off(1.0, 1.0);
  } else if (op == "P") {
    fill_off(I, -I);
  } else if (op == "D†") {
    fill_off(2.0, 0.0);
  } else if (op == "D") {
    fill_off(0.0, 2.0);
  } else if (op == "H" || op == "H_I" || op == "S" || op == "Ω" || op == "I") {
    for (int n = 0; n <= s; ++n) {
      if (op == "H") m(n, n) = n;
      if (op == "H_I") m(n, n) = n - 0.5 * s;
      if (op == "S") m(n, n) = s;
      if (op == "Ω") m(n, n) = static_cast<double>(s) * (s + 2);
      if (op == "I") m(n, n) = 1.0;
    }
  } else {
    const auto probe = wick::named(op).uniform_shift();
    if (!probe || *probe != 0) throw shape_error("energy_matrix: " + op + " changes the resolution");
    const Eigen::MatrixXcd w = wavefunction_matrix(s).cast<cplx>();
    m = w.transpose() * build(op, s).matrix() * w;
  }
  return {std::move(m), energy_tag(s)};
}

// ---------------------------------------------------------------------------
// Expectations and uncertainty.

namespace detail {

inline void require_normalized(const EnergyState& psi, const char* what) {
  if (!psi.is_normalized()) throw contract_violation(std::string(what) + ": state is not normalized");
}
inline void require_normalized(const PositionState& psi, const char* what) {
  if (!psi.is_normalized()) throw contract_violation(std::string(what) + ": state is not normalized");
}

}  // namespace detail

// 2 sum_j Re(d_j* d_{j+1}) sqrt(s-j) sqrt(j+1)
inline double expectation_X(const EnergyState& psi) {
  detail::require_normalized(psi, "expectation_X");
  double sum = 0.0;
  for (int j = 0; j < psi.s; ++j) sum += (std::conj(psi.d(j)) * psi.d(j + 1)).real() * detail::hop(psi.s, j);
  return 2.0 * sum;
}

// 2 sum_j Im(d_j* d_{j+1}) sqrt(s-j) sqrt(j+1)
inline double expectation_P(const EnergyState& psi) {
  detail::require_normalized(psi, "expectation_P");
  double sum = 0.0;
  for (int j = 0; j < psi.s; ++j) sum += (std::conj(psi.d(j)) * psi.d(j + 1)).imag() * detail::hop(psi.s, j);
  return 2.0 * sum;
}

struct Uncertainty {
  double var_x = 0.0;
  double var_p = 0.0;
  double product() const { return var_x * var_p; }
};

namespace detail {

inline double quadratic_form(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& v) {
  return v.dot(m * v).real();  // v† M v
}

inline double variance(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& v) {
  const double mean = quadratic_form(m, v);
  const Eigen::VectorXcd mv = m * v;
  return std::max(mv.squaredNorm() - mean * mean, 0.0);
}

// Variance of a diagonal observable with eigenvalues 2k - s over weights |c_k|^2.
inline double diagonal_variance(const Eigen::VectorXcd& c, int s) {
  double mean = 0.0, second = 0.0;
  for (int k = 0; k <= s; ++k) {
    const double w = std::norm(c(k));
    const double x = 2.0 * k - s;
    mean += w * x;
    second += w * x * x;
  }
  return std::max(second - mean * mean, 0.0);
}

}  // namespace detail

// Variances from the energy-basis matrices of X and P.
inline Uncertainty uncertainty(const EnergyState& psi) {
  detail::require_normalized(psi, "uncertainty");
  return {detail::variance(energy_matrix("X", psi.s).matrix(), psi.d),
          detail::variance(energy_matrix("P", psi.s).matrix(), psi.d)};
}

// var_x on the diagonal of X in the position basis; var_p through the energy
// basis. A position eigenstate gets var_x = 0 exactly.
inline Uncertainty uncertainty(const PositionState& psi) {
  detail::require_normalized(psi, "uncertainty");
  const EnergyState e = to_energy(psi);
  return {detail::diagonal_variance(psi.a, psi.s), detail::variance(energy_matrix("P", psi.s).matrix(), e.d)};
}

// Momentum eigenstate with eigenvalue 2k - s: d_n = i^n alpha^n_{k,s}, from
// P = V X V† with V = diag(i^n).
inline EnergyState momentum_eigenstate(int k, int s) {
  if (s < 0 || k < 0 || k > s) throw domain_error("momentum_eigenstate: need 0 <= k <= s");
  const Eigen::MatrixXd w = wavefunction_matrix(s);
  Eigen::VectorXcd d(s + 1);
  cplx phase = 1.0;
  for (int n = 0; n <= s; ++n) {
    d(n) = phase * w(k, n);
    phase *= cplx(0, 1);
  }
  return {s, std::move(d)};
}

// Amplitudes in the momentum eigenbasis (index k, eigenvalue 2k - s).
inline Eigen::VectorXcd momentum_amplitudes(const EnergyState& psi) {
  Eigen::VectorXcd undone(psi.s + 1);
  cplx phase = 1.0;
  for (int n = 0; n <= psi.s; ++n) {
    undone(n) = std::conj(phase) * psi.d(n);
    phase *= cplx(0, 1);
  }
  return wavefunction_matrix(psi.s).cast<cplx>() * undone;
}

// var_p on the diagonal of P in its eigenbasis; var_x through the energy basis.
inline Uncertainty uncertainty_momentum_representation(const EnergyState& psi) {
  detail::require_normalized(psi, "uncertainty");
  return {detail::variance(energy_matrix("X", psi.s).matrix(), psi.d),
          detail::diagonal_variance(momentum_amplitudes(psi), psi.s)};
}

// State held in the momentum eigenbasis: c(k) = <p_k|psi>, eigenvalue 2k - s.
struct MomentumState {
  int s = 0;
  Eigen::VectorXcd c;

  MomentumState() : c(Eigen::VectorXcd::Ones(1)) {}
  MomentumState(int s_, Eigen::VectorXcd amplitudes) : s(s_), c(std::move(amplitudes)) {
    detail::check_resolution(s, c.size(), "MomentumState");
  }

  static MomentumState delta(int k, int s) {
    if (s < 0 || k < 0 || k > s) throw domain_error("MomentumState::delta: need 0 <= k <= s");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(s + 1);
    v(k) = 1.0;
    return {s, std::move(v)};
  }

  bool is_normalized(double tol = kNormTolerance) const { return std::abs(c.squaredNorm() - 1.0) <= tol; }
};

// d_n = i^n sum_k alpha^n_{k,s} c_k
inline EnergyState to_energy(const MomentumState& psi) {
  Eigen::VectorXcd d = wavefunction_matrix(psi.s).transpose().cast<cplx>() * psi.c;
  cplx phase = 1.0;
  for (int n = 0; n <= psi.s; ++n) {
    d(n) *= phase;
    phase *= cplx(0, 1);
  }
  return {psi.s, std::move(d)};
}

// var_p on the diagonal of P; var_x through the energy basis. A momentum
// eigenstate gets var_p = 0 exactly.
inline Uncertainty uncertainty(const MomentumState& psi) {
  if (!psi.is_normalized()) throw contract_violation("uncertainty: state is not normalized");
  return {detail::variance(energy_matrix("X", psi.s).matrix(), to_energy(psi).d), detail::diagonal_variance(psi.c, psi.s)};
}

// ---------------------------------------------------------------------------
// Resolution scaling.

enum class RescaleMode { ladder, amplitude_preserving };

inline std::string to_string(RescaleMode m) {
  return m == RescaleMode::ladder ? "ladder" : "amplitude-preserving";
}
inline RescaleMode parse_rescale_mode(std::string_view v) {
  if (v == "ladder") return RescaleMode::ladder;
  if (v == "amplitude-preserving") return RescaleMode::amplitude_preserving;
  throw std::invalid_argument("unknown rescale mode: " + std::string(v));
}

struct RescaleResult {
  EnergyState state;
  double lost_norm = 0.0;  // weight of the input on levels n > target_s
};

// ladder: B1† (or B1) applied |target_s - s| times, then renormalized.
// amplitude-preserving: d_n copied into the target basis, then renormalized.
// Lowering past an occupied level throws truncation_error unless force is set.
inline RescaleResult rescale_resolution(const EnergyState& psi, int target_s, RescaleMode mode, bool force = false) {
  if (target_s < 0) throw domain_error("rescale_resolution: target resolution must be non-negative");
  if (psi.norm() == 0.0) throw domain_error("rescale_resolution: zero state");
  double lost = 0.0;
  for (int n = target_s + 1; n <= psi.s; ++n) lost += std::norm(psi.d(n));
  lost /= psi.d.squaredNorm();
  if (lost > 0.0 && !force) {
    throw truncation_error("rescale_resolution: lowering to s=" + std::to_string(target_s) +
                               " discards occupied energy levels",
                           lost);
  }
  EnergyState out = psi;
  if (mode == RescaleMode::ladder) {
    while (out.s < target_s) out = apply_ladder("B1†", out);
    while (out.s > target_s) out = apply_ladder("B1", out);
  } else {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(target_s + 1);
    const int keep = std::min(psi.s, target_s);
    v.head(keep + 1) = psi.d.head(keep + 1);
    out = EnergyState(target_s, std::move(v));
  }
  if (out.norm() == 0.0) return {out, lost};
  return {out.normalized(), lost};
}

}  // namespace dqho

#endif  // DQHO_STATES_HPP
