// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only when
// every criterion passes.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dqho/cli.hpp"
#include "dqho/dqho.hpp"

using namespace dqho;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome algebra_tables() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto printed = wick::verify_tables(wick::TableSource::printed);
  const double secs = seconds_since(t0);
  const auto corrected = wick::verify_tables(wick::TableSource::corrected);
  std::string d = std::to_string(printed.size()) + " printed identities, " + std::to_string(printed.failures().size()) +
                  " nonzero residuals";
  for (const auto& f : printed.failures()) d += "; " + f.identity + " residual " + f.residual;
  d += "; runtime " + fmt("%.3f", secs) + " s";
  d += "; with the derived values [D,D†] = -8 H_I, [D†,D] = 8 H_I, [H,A2] = 1/2(A1-A2): " +
       std::to_string(corrected.failures().size()) + " failures";
  return {printed.all_passed() && secs < 1.0, d};
}

Outcome casimir() {
  const auto sym = wick::verify_casimir();
  const auto omega = wick::named("Ω");
  const auto s2 = wick::named("S");
  const bool zero = (omega - s2 * (s2 + ComplexRational(2) * wick::OperatorPoly::identity())).is_zero();
  double worst = 0.0;
  for (int s = 1; s <= 50; ++s)
    worst = std::max(worst, max_abs(evaluate(omega, s).matrix() -
                                    static_cast<double>(s) * (s + 2) * Eigen::MatrixXcd::Identity(s + 1, s + 1)));
  return {sym.all_passed() && zero && worst <= 1e-10,
          std::string("symbolic residual ") + (zero ? "0" : "nonzero") + "; max matrix deviation s<=50 " +
              fmt("%.3e", worst)};
}

Outcome spectrum() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int s = 0; s <= 200; ++s) {
    const auto e = eig_sym_tridiag(hamiltonian(s));
    for (int n = 0; n <= s; ++n) worst = std::max(worst, std::abs(e.values(n) - n));
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-9 && secs < 5.0,
          "max |lambda_n - n| over s<=200 " + fmt("%.3e", worst) + "; runtime " + fmt("%.3f", secs) + " s"};
}

Outcome wavefunction_equivalence() {
  double worst = 0.0, gram = 0.0;
  for (int s = 0; s <= 60; ++s) {
    const Eigen::MatrixXd w = wavefunction_matrix(s);
    for (int n = 0; n <= s; ++n)
      for (int n1 = 0; n1 <= s; ++n1) worst = std::max(worst, std::abs(w(n1, n) - specfn::kravchuk_wavefunction(n, n1, s)));
    gram = std::max(gram, (w.transpose() * w - Eigen::MatrixXd::Identity(s + 1, s + 1)).cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-10 && gram <= 1e-10,
          "max entrywise deviation " + fmt("%.3e", worst) + "; max Gram deviation " + fmt("%.3e", gram)};
}

Outcome exact_ground_state() {
  int bad_amp = 0, bad_norm = 0;
  for (int s = 0; s <= 60; ++s) {
    const auto g = ground_state_exact(s);
    if (g.norm_squared != specfn::double_factorial(2 * s)) ++bad_norm;
    for (int n1 = 0; n1 <= s; ++n1) {
      const Rational want = make_rational(binomial(s, n1), Integer(1) << s);
      if (g.amplitudes[n1].sign() != 1 || g.amplitudes[n1].square() != want) ++bad_amp;
    }
  }
  return {bad_amp == 0 && bad_norm == 0,
          "exact amplitude mismatches " + std::to_string(bad_amp) + ", norm^2 != (2s)!! mismatches " +
              std::to_string(bad_norm) + " (s<=60, exact arithmetic)"};
}

Outcome inverse_symmetry() {
  const int s = 20;
  const Eigen::MatrixXd w = wavefunction_matrix(s);
  double worst = 0.0;
  for (int n = 0; n <= s; ++n)
    for (int n1 = 0; n1 <= s; ++n1) worst = std::max(worst, std::abs(std::abs(w(n1, s - n)) - std::abs(w(n1, n))));
  return {worst <= 1e-12, "max ||alpha^{s-n}| - |alpha^n|| at s=20 " + fmt("%.3e", worst)};
}

double hermite_deviation(int n, int s) {
  const double step = specfn::hermite_grid_step(s);
  double worst = 0.0;
  for (int n1 = 0; n1 <= s; ++n1)
    worst = std::max(worst, std::abs(specfn::kravchuk_wavefunction(n, n1, s) -
                                     std::sqrt(step) * specfn::hermite_function(n, specfn::hermite_grid_xi(n1, s))));
  return worst;
}

Outcome hermite_limit() {
  double worst = 0.0;
  std::string d;
  for (int n : {0, 1, 2}) {
    const double dev = hermite_deviation(n, 400);
    worst = std::max(worst, dev);
    d += "n=" + std::to_string(n) + ": " + fmt("%.3e", dev) + "; ";
  }
  const double alias = hermite_deviation(20, 40);
  d += "s=40 n=20 (expected to fail the bound): " + fmt("%.3e", alias);
  return {worst <= 0.01 && alias > 0.01, d};
}

Outcome coherent_law() {
  double worst = 0.0, peak = 0.0;
  for (int s : {1, 2, 10, 50, 100}) {
    for (int k = 1; k <= 14; ++k)
      for (double ph : {0.0, kPi / 4, kPi / 2}) {
        const cplx beta = std::polar(0.05 * k, ph);
        const auto psi = coherent::coherent_state(beta, s);
        for (double t : {0.0, 0.3, 1.0, 2.5})
          worst = std::max(worst, std::abs(expectation_X(coherent::evolve(psi, t)) -
                                           coherent::position_expectation_closed(beta, t, s)) / s);
      }
    peak = std::max(peak, std::abs(expectation_X(coherent::coherent_state(kPi / 8, s)) - s) / s);
  }
  return {worst <= 1e-8 && peak <= 1e-8,
          "max |<X> - law| / s " + fmt("%.3e", worst) + "; |<X>(|beta|=pi/8) - s| / s " + fmt("%.3e", peak)};
}

Outcome bch_closed_form() {
  double worst = 0.0;
  for (int s : {1, 2, 10, 50, 100})
    for (int k = 1; k <= 14; ++k)
      for (double ph : {0.0, kPi / 4, kPi / 2, 2.0}) {
        const cplx beta = std::polar(0.05 * k, ph);
        const auto a = coherent::coherent_state(beta, s);
        const auto b = coherent::coherent_state(beta, s, coherent::Method::bch);
        worst = std::max(worst, 1.0 - std::norm(a.d.dot(b.d)));
      }
  double rot = 0.0;
  for (double b : {0.1, 0.3, 0.6}) {
    const auto q = coherent::coherent_state(b, 1, coherent::Method::bch);
    rot = std::max({rot, std::abs(q.d(0) - std::cos(2 * b)), std::abs(q.d(1) - std::sin(2 * b))});
  }
  return {worst <= 1e-10 && rot <= 1e-14,
          "max 1 - fidelity " + fmt("%.3e", worst) + "; s=1 rotation deviation " + fmt("%.3e", rot)};
}

Outcome imaginary_displacement() {
  double worst = 0.0;
  for (int s : {1, 5, 20, 60})
    for (double r : {0.1, kPi / 8, 0.7, kPi / 2}) {
      const auto m = coherent::displacement_matrix_position(cplx(0, r), s).matrix();
      for (int i = 0; i <= s; ++i)
        for (int j = 0; j <= s; ++j) {
          const cplx want = i == j ? std::exp(cplx(0, 2 * r * (2 * i - s))) : cplx(0);
          worst = std::max(worst, std::abs(m(i, j) - want));
        }
    }
  return {worst <= 1e-12, "max deviation from diag(e^{2i|beta|(2n1-s)}) " + fmt("%.3e", worst)};
}

Outcome resolution_scaling() {
  double basis = 0.0;
  for (auto mode : {RescaleMode::ladder, RescaleMode::amplitude_preserving})
    for (int s = 1; s <= 8; ++s)
      for (int n = 0; n <= s; ++n) {
        const auto up = rescale_resolution(EnergyState::basis(n, s), s + 1, mode).state;
        basis = std::max(basis, (up.d - EnergyState::basis(n, s + 1).d).cwiseAbs().maxCoeff());
        if (n < s) {
          const auto down = rescale_resolution(EnergyState::basis(n, s), s - 1, mode).state;
          basis = std::max(basis, (down.d - EnergyState::basis(n, s - 1).d).cwiseAbs().maxCoeff());
        }
      }
  std::mt19937 rng(20240601);
  std::normal_distribution<double> g;
  double comm = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int s = 1 + trial % 15;
    Eigen::VectorXcd v(s + 1);
    for (int n = 0; n <= s; ++n) v(n) = cplx(g(rng), g(rng));
    const EnergyState psi = EnergyState(s, v).normalized();
    const auto a = apply_ladder("B1†", apply_ladder("D", psi));
    const auto b = apply_ladder("D", apply_ladder("B1†", psi));
    comm = std::max(comm, (a.d - b.d).cwiseAbs().maxCoeff());
  }
  // Weight 0.3 on the top level of s = 6.
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(7);
  v(2) = std::sqrt(0.7);
  v(6) = cplx(0, std::sqrt(0.3));
  double reported = -1.0;
  try {
    rescale_resolution(EnergyState(6, v), 5, RescaleMode::ladder);
  } catch (const truncation_error& e) {
    reported = e.lost_norm();
  }
  const double forced = rescale_resolution(EnergyState(6, v), 5, RescaleMode::ladder, true).lost_norm;
  const double lost_err = std::max(std::abs(reported - 0.3), std::abs(forced - 0.3));
  return {basis <= 1e-12 && comm <= 1e-12 && lost_err <= 1e-15,
          "basis-state mapping deviation " + fmt("%.3e", basis) + "; max |D B1† - B1† D| on 100 states " +
              fmt("%.3e", comm) + "; lost norm reported " + fmt("%.17g", reported) + " (expected 0.3)"};
}

Outcome uncertainty_floor() {
  double min_pos = 1e300, min_mom = 1e300;
  for (int s : {1, 4, 10, 25}) {
    for (int k = 0; k <= s; ++k) {
      min_pos = std::min(min_pos, uncertainty(PositionState::delta(k, s)).product());
      min_mom = std::min(min_mom, uncertainty(MomentumState::delta(k, s)).product());
    }
  }
  const double ground = uncertainty(EnergyState::basis(0, 10)).product();
  return {min_pos == 0.0 && min_mom == 0.0,
          "min product over position eigenstates " + fmt("%.17g", min_pos) + ", over momentum eigenstates " +
              fmt("%.17g", min_mom) + " (ground state s=10 for contrast: " + fmt("%.6g", ground) + ")"};
}

std::vector<std::vector<std::string>> read_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    rows.push_back(std::move(cells));
  }
  return rows;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// |amplitude| per frame from the frames CSV, keyed by frame index then n1.
std::vector<std::vector<double>> frame_magnitudes(const std::string& csv, int s) {
  std::vector<std::vector<double>> frames;
  for (const auto& r : read_rows(csv)) {
    const int n1 = std::stoi(r[4]);
    if (n1 == 0) frames.emplace_back(s + 1);
    frames.back()[n1] = std::abs(cplx(std::stod(r[6]), std::stod(r[7])));
  }
  return frames;
}

Outcome figure_data() {
  std::ostringstream out, err;
  std::string d;
  bool ok = true;

  // Wavefunctions at s = 20.
  if (cli::run({"wavefunction", "--s", "20", "--output", "-"}, out, err) != 0) return {false, "wavefunction failed: " + err.str()};
  std::map<int, std::vector<double>> amp;
  for (const auto& r : read_rows(out.str())) amp[std::stoi(r[1])].push_back(std::stod(r[4]));
  const auto& g = amp[0];
  bool positive = true, unimodal = true;
  for (int i = 0; i <= 20; ++i) positive = positive && g[i] > 0;
  for (int i = 0; i < 20; ++i) unimodal = unimodal && (i < 10 ? g[i] < g[i + 1] : g[i] > g[i + 1]);
  const auto& top = amp[20];
  bool alternating = true;
  double match = 0.0;
  for (int i = 0; i <= 20; ++i) {
    if (i < 20) alternating = alternating && top[i] * top[i + 1] < 0;
    match = std::max(match, std::abs(std::abs(top[i]) - g[i]));
  }
  ok = ok && positive && unimodal && alternating && match <= 1e-12;
  d += std::string("n=0 positive ") + (positive ? "yes" : "no") + ", unimodal " + (unimodal ? "yes" : "no") +
       "; n=20 alternating " + (alternating ? "yes" : "no") + ", magnitude mismatch " + fmt("%.3e", match);

  // Time sweep at beta = i pi/8 against the |beta| sweep at arg 0, s = 100.
  const fs::path dir = fs::temp_directory_path() / "dqho_acceptance";
  fs::create_directories(dir);
  const std::string tf = (dir / "t_frames.csv").string(), ts = (dir / "t_summary.csv").string();
  const std::string bf = (dir / "b_frames.csv").string(), bs = (dir / "b_summary.csv").string();
  int rc = cli::run({"coherent", "--beta", "i*pi/8", "--s", "100", "--sweep", "t", "--t-min", "0", "--t-max",
                     "pi/4", "--steps", "20", "--output", tf, "--summary", ts},
                    out, err);
  rc |= cli::run({"coherent", "--beta", "pi/8", "--s", "100", "--sweep", "beta", "--t-min", "0", "--steps", "20",
                  "--output", bf, "--summary", bs},
                 out, err);
  if (rc != 0) return {false, d + "; coherent failed: " + err.str()};
  const auto ft = frame_magnitudes(slurp(tf), 100);
  const auto fb = frame_magnitudes(slurp(bf), 100);
  double coincide = ft.size() == fb.size() && ft.size() == 21 ? 0.0 : 1e300;
  for (std::size_t k = 0; k < std::min(ft.size(), fb.size()); ++k)
    for (int n1 = 0; n1 <= 100; ++n1) coincide = std::max(coincide, std::abs(ft[k][n1] - fb[k][n1]));
  ok = ok && coincide <= 1e-10;
  d += "; t-sweep (beta=i pi/8, t in [0,pi/4]) vs |beta|-sweep (0..pi/8, t=0) at s=100: max profile difference " +
       fmt("%.3e", coincide);

  // The literal parameters quoted for the time series, beta = i pi/2, for the record.
  const std::string lf = (dir / "l_frames.csv").string(), ls = (dir / "l_summary.csv").string();
  if (cli::run({"coherent", "--beta", "i*pi/2", "--s", "100", "--steps", "20", "--output", lf, "--summary", ls}, out,
               err) == 0) {
    const auto fl = frame_magnitudes(slurp(lf), 100);
    double motion = 0.0;
    for (const auto& f : fl)
      for (int n1 = 0; n1 <= 100; ++n1) motion = std::max(motion, std::abs(f[n1] - fl[0][n1]));
    d += "; note: at beta = i pi/2 sin(4|beta|) = 0 and the profile moves by at most " + fmt("%.3e", motion);
  }
  fs::remove_all(dir);
  return {ok, d};
}

Outcome dilation() {
  const int s = 16;
  double unit = 0.0, block = 0.0;
  for (const char* name : {"B1", "D", "D†"}) {
    const auto m = build(name, s);
    const double alpha = Eigen::JacobiSVD<Eigen::MatrixXcd>(m.matrix()).singularValues()(0);
    const auto u = unitary_dilation(m, alpha);
    unit = std::max(unit, unitarity_residual(u));
    block = std::max(block, max_abs(u.matrix().topLeftCorner(m.rows(), m.cols()) - m.matrix() / alpha));
  }
  return {unit <= 1e-12 && block <= 1e-14,
          "max unitarity residual " + fmt("%.3e", unit) + "; max top-left block deviation " + fmt("%.3e", block)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"algebra tables", algebra_tables},
      {"Casimir", casimir},
      {"spectrum", spectrum},
      {"wavefunction equivalence", wavefunction_equivalence},
      {"exact ground state", exact_ground_state},
      {"inverse-oscillator symmetry", inverse_symmetry},
      {"Hermite limit", hermite_limit},
      {"coherent law", coherent_law},
      {"closed-form coherent state", bch_closed_form},
      {"imaginary-beta displacement", imaginary_displacement},
      {"resolution scaling", resolution_scaling},
      {"uncertainty floor", uncertainty_floor},
      {"figure data", figure_data},
      {"dilation", dilation},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << o.detail << "\n";
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
