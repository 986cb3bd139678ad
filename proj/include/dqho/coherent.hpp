#ifndef DQHO_COHERENT_HPP
#define DQHO_COHERENT_HPP

// Displacement-operator coherent states: matrix-exponential oracle, the
// closed-form expansion, free evolution and the position-expectation law.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "dqho/errors.hpp"
#include "dqho/repmat.hpp"
#include "dqho/states.hpp"

namespace dqho::coherent {

// paper_phase: d_j -> d_j e^{i(s-2j)t} (generator eigenvalues 2j - s)
// hamiltonian: d_j -> d_j e^{-ijt}     (eigenvalues of H)
enum class EvolutionConvention { paper_phase, hamiltonian };
enum class Method { oracle, bch };

inline std::string to_string(EvolutionConvention c) {
  return c == EvolutionConvention::paper_phase ? "paper-phase" : "hamiltonian";
}
inline EvolutionConvention parse_evolution(std::string_view v) {
  if (v == "paper-phase") return EvolutionConvention::paper_phase;
  if (v == "hamiltonian") return EvolutionConvention::hamiltonian;
  throw std::invalid_argument("unknown evolution convention: " + std::string(v));
}

inline double arg0(cplx beta) { return beta == cplx(0.0) ? 0.0 : std::arg(beta); }

// Radius of convergence of the closed form: tan(2|beta|) has its pole at pi/4.
inline constexpr double kBchRadius = std::numbers::pi / 4;

// exp(beta D† - beta* D) in the energy basis. iG is Hermitian tridiagonal
// with (n+1,n) entry 2i beta h_n, so exp(G) = W exp(-i Lambda) W†.
inline RepMatrix displacement_matrix(cplx beta, int s) {
  if (s < 0) throw domain_error("displacement_matrix: resolution must be non-negative");
  if (!std::isfinite(beta.real()) || !std::isfinite(beta.imag()))
    throw domain_error("displacement_matrix: beta must be finite");
  const cplx I(0, 1);
  const Eigen::MatrixXcd g =
      beta * energy_matrix("D†", s).matrix() - std::conj(beta) * energy_matrix("D", s).matrix();
  const HermEig eig = eig_herm_tridiag(I * g);
  Eigen::VectorXcd phases(s + 1);
  for (int k = 0; k <= s; ++k) phases(k) = std::exp(-I * eig.values(k));
  return {eig.vectors * phases.asDiagonal() * eig.vectors.adjoint(), energy_tag(s)};
}

// Same operator in the position basis (n1 ascending).
inline RepMatrix displacement_matrix_position(cplx beta, int s) {
  const Eigen::MatrixXcd w = wavefunction_matrix(s).cast<cplx>();
  return {w * displacement_matrix(beta, s).matrix() * w.transpose(), position_tag(s, s)};
}

// Amplitudes ((beta/|beta|) tan 2|beta|)^j sqrt(C(s,j)) / (1 + tan^2 2|beta|)^{s/2}.
inline EnergyState coherent_bch(cplx beta, int s) {
  if (s < 0) throw domain_error("coherent_state: resolution must be non-negative");
  const double r = std::abs(beta);
  if (!(r < kBchRadius))
    throw domain_error("coherent_state: the closed form needs |beta| < pi/4; use the oracle method");
  const double tn = std::tan(2 * r);
  const cplx ratio = std::polar(tn, arg0(beta));
  const double norm = std::pow(1.0 + tn * tn, 0.5 * s);
  Eigen::VectorXcd d(s + 1);
  cplx power = 1.0;
  for (int j = 0; j <= s; ++j) {
    const double lb = std::lgamma(s + 1.0) - std::lgamma(j + 1.0) - std::lgamma(s - j + 1.0);
    d(j) = power * std::exp(0.5 * lb) / norm;
    power *= ratio;
  }
  return {s, std::move(d)};
}

inline EnergyState coherent_state(cplx beta, int s, Method method = Method::oracle) {
  if (method == Method::bch) return coherent_bch(beta, s);
  return {s, displacement_matrix(beta, s).matrix().col(0)};
}

inline EnergyState evolve(const EnergyState& psi, double t,
                          EvolutionConvention conv = EvolutionConvention::paper_phase) {
  Eigen::VectorXcd d = psi.d;
  const cplx I(0, 1);
  for (int j = 0; j <= psi.s; ++j) {
    const double angle = conv == EvolutionConvention::paper_phase ? (psi.s - 2.0 * j) * t : -1.0 * j * t;
    d(j) *= std::exp(I * angle);
  }
  return {psi.s, std::move(d)};
}

// s cos(2t - arg beta) sin(4|beta|); frequency 1 under the hamiltonian convention.
inline double position_expectation_closed(cplx beta, double t, int s,
                                          EvolutionConvention conv = EvolutionConvention::paper_phase) {
  const double omega = conv == EvolutionConvention::paper_phase ? 2.0 : 1.0;
  return s * std::cos(omega * t - arg0(beta)) * std::sin(4 * std::abs(beta));
}

inline std::vector<PositionState> coherent_wavefunction_series(
    cplx beta, int s, const std::vector<double>& t_grid,
    EvolutionConvention conv = EvolutionConvention::paper_phase) {
  const EnergyState psi0 = coherent_state(beta, s);
  std::vector<PositionState> frames;
  frames.reserve(t_grid.size());
  for (double t : t_grid) frames.push_back(change_basis(evolve(psi0, t, conv)));
  return frames;
}

}  // namespace dqho::coherent

#endif  // DQHO_COHERENT_HPP
