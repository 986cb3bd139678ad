#ifndef DQHO_REPMAT_HPP
#define DQHO_REPMAT_HPP

// Matrix representations on the position-resolution basis psi_{n1,s},
// tridiagonal eigensolvers, the symbolic-to-matrix bridge and the unitary
// dilation of a contraction.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dqho/errors.hpp"
#include "dqho/format.hpp"
#include "dqho/wick.hpp"
#include "json.hpp"

namespace dqho {

using cplx = std::complex<double>;

enum class IndexConvention { n1_ascending, appendix_c };
enum class HamiltonianConvention { canonical, printed };

inline std::string to_string(IndexConvention c) {
  return c == IndexConvention::n1_ascending ? "n1-ascending" : "appendix-c";
}
inline std::string to_string(HamiltonianConvention c) {
  return c == HamiltonianConvention::canonical ? "canonical" : "printed";
}
inline IndexConvention parse_index_convention(std::string_view v) {
  if (v == "n1-ascending") return IndexConvention::n1_ascending;
  if (v == "appendix-c") return IndexConvention::appendix_c;
  throw std::invalid_argument("unknown index convention: " + std::string(v));
}
inline HamiltonianConvention parse_hamiltonian_convention(std::string_view v) {
  if (v == "canonical") return HamiltonianConvention::canonical;
  if (v == "printed") return HamiltonianConvention::printed;
  throw std::invalid_argument("unknown hamiltonian convention: " + std::string(v));
}

// "position[n1-ascending]:s=3", "position[appendix-c]:s=3->2", "energy:s=4"
inline std::string position_tag(int s_in, int s_out, IndexConvention c = IndexConvention::n1_ascending) {
  std::string tag = "position[" + to_string(c) + "]:s=" + std::to_string(s_in);
  if (s_out != s_in) tag += "->" + std::to_string(s_out);
  return tag;
}
inline std::string energy_tag(int s) { return "energy:s=" + std::to_string(s); }

struct Band {
  int start_row = 0;
  int start_col = 0;
  std::vector<cplx> values;
};

struct BandSpec {
  int rows = 0;
  int cols = 0;
  std::vector<Band> bands;
};

class RepMatrix {
 public:
  RepMatrix() = default;
  RepMatrix(Eigen::MatrixXcd m, std::string basis_tag) : m_(std::move(m)), tag_(std::move(basis_tag)) {}

  // Throws shape_error when a band leaves the matrix or two bands overlap.
  static RepMatrix from_bands(const BandSpec& spec, std::string basis_tag) {
    if (spec.rows <= 0 || spec.cols <= 0) throw shape_error("band matrix: dimensions must be positive");
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(spec.rows, spec.cols);
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> written =
        Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(spec.rows, spec.cols, false);
    for (const auto& band : spec.bands) {
      const auto len = static_cast<int>(band.values.size());
      if (band.start_row < 0 || band.start_col < 0 || band.start_row + len > spec.rows ||
          band.start_col + len > spec.cols)
        throw shape_error("band matrix: band starting at (" + std::to_string(band.start_row) + "," +
                          std::to_string(band.start_col) + ") does not fit");
      for (int k = 0; k < len; ++k) {
        const int i = band.start_row + k;
        const int j = band.start_col + k;
        if (written(i, j)) throw shape_error("band matrix: overlapping bands");
        written(i, j) = true;
        m(i, j) = band.values[k];
      }
    }
    return {std::move(m), std::move(basis_tag)};
  }

  Eigen::Index rows() const { return m_.rows(); }
  Eigen::Index cols() const { return m_.cols(); }
  const Eigen::MatrixXcd& matrix() const { return m_; }
  const std::string& basis_tag() const { return tag_; }
  cplx operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  RepMatrix adjoint() const { return {m_.adjoint(), tag_}; }

  friend RepMatrix operator*(const RepMatrix& a, const RepMatrix& b) {
    if (a.cols() != b.rows()) throw shape_error("RepMatrix product: inner dimensions differ");
    return {a.m_ * b.m_, a.tag_ == b.tag_ ? a.tag_ : "composite"};
  }
  friend RepMatrix operator+(const RepMatrix& a, const RepMatrix& b) {
    check_same_shape(a, b);
    return {a.m_ + b.m_, a.tag_};
  }
  friend RepMatrix operator-(const RepMatrix& a, const RepMatrix& b) {
    check_same_shape(a, b);
    return {a.m_ - b.m_, a.tag_};
  }
  friend RepMatrix operator*(cplx c, const RepMatrix& a) { return {c * a.m_, a.tag_}; }

 private:
  static void check_same_shape(const RepMatrix& a, const RepMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw shape_error("RepMatrix sum: shapes differ");
  }

  Eigen::MatrixXcd m_;
  std::string tag_;
};

inline double max_abs(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

namespace detail {

inline Eigen::MatrixXcd reverse_indices(const Eigen::MatrixXcd& m) {
  return m.colwise().reverse().rowwise().reverse();
}

// sqrt((s-j)(j+1)), the off-diagonal weight of the fixed-resolution operators.
inline double hop(int s, int j) { return std::sqrt(static_cast<double>(s - j) * (j + 1)); }

template <class F>
std::vector<cplx> seq(int len, F f) {
  std::vector<cplx> v(static_cast<std::size_t>(std::max(len, 0)));
  for (int j = 0; j < len; ++j) v[j] = f(j);
  return v;
}

}  // namespace detail

// Matrix of a named operator acting on resolution s, built from bands.
inline RepMatrix build(std::string_view op_name, int s, IndexConvention conv = IndexConvention::n1_ascending) {
  if (s < 0) throw domain_error("build: resolution must be non-negative");
  const std::string name = wick::canonical_operator_name(op_name);
  const int d = s + 1;
  using detail::hop;
  using detail::seq;
  const cplx I(0, 1);

  auto diag = [&](auto f) { return Band{0, 0, seq(d, f)}; };
  auto upper = [&](auto f) { return Band{0, 1, seq(s, f)}; };
  auto lower = [&](auto f) { return Band{1, 0, seq(s, f)}; };
  auto x_diag = [&](int j) { return cplx(2 * j - s); };

  BandSpec spec{d, d, {}};
  int s_out = s;
  if (name == "I") {
    spec.bands = {diag([](int) { return cplx(1); })};
  } else if (name == "N1") {
    spec.bands = {diag([](int j) { return cplx(j); })};
  } else if (name == "N2") {
    spec.bands = {diag([&](int j) { return cplx(s - j); })};
  } else if (name == "S") {
    spec.bands = {diag([&](int) { return cplx(s); })};
  } else if (name == "Ω") {
    spec.bands = {diag([&](int) { return cplx(s * (s + 2)); })};
  } else if (name == "X") {
    spec.bands = {diag(x_diag)};
  } else if (name == "H_I" || name == "H") {
    spec.bands = {upper([&](int j) { return cplx(-0.5 * hop(s, j)); }),
                  lower([&](int j) { return cplx(-0.5 * hop(s, j)); })};
    if (name == "H") spec.bands.push_back(diag([&](int) { return cplx(0.5 * s); }));
  } else if (name == "D") {
    spec.bands = {diag(x_diag), upper([&](int j) { return cplx(hop(s, j)); }),
                  lower([&](int j) { return cplx(-hop(s, j)); })};
  } else if (name == "D†") {
    spec.bands = {diag(x_diag), upper([&](int j) { return cplx(-hop(s, j)); }),
                  lower([&](int j) { return cplx(hop(s, j)); })};
  } else if (name == "P") {
    spec.bands = {upper([&](int j) { return -I * hop(s, j); }), lower([&](int j) { return I * hop(s, j); })};
  } else {
    // Resolution-changing operators.
    const bool lowering = name == "A1" || name == "A2" || name == "B1" || name == "B2";
    if (lowering && s == 0) throw domain_error("build: " + name + " lowers the resolution and needs s >= 1");
    const auto r1 = [](int j) { return cplx(std::sqrt(static_cast<double>(j + 1))); };
    if (lowering) {
      s_out = s - 1;
      const auto r2 = [&](int j) { return cplx(std::sqrt(static_cast<double>(s - j))); };
      const auto r2neg = [&](int j) { return -r2(j); };
      spec = {s, d, {}};
      if (name == "A1") spec.bands = {Band{0, 1, seq(s, r1)}};
      if (name == "A2") spec.bands = {Band{0, 0, seq(s, r2)}};
      if (name == "B1") spec.bands = {Band{0, 1, seq(s, r1)}, Band{0, 0, seq(s, r2)}};
      if (name == "B2") spec.bands = {Band{0, 1, seq(s, r1)}, Band{0, 0, seq(s, r2neg)}};
    } else {
      s_out = s + 1;
      const auto r2 = [&](int j) { return cplx(std::sqrt(static_cast<double>(s + 1 - j))); };
      const auto r2neg = [&](int j) { return -r2(j); };
      spec = {d + 1, d, {}};
      if (name == "A1†") spec.bands = {Band{1, 0, seq(d, r1)}};
      if (name == "A2†") spec.bands = {Band{0, 0, seq(d, r2)}};
      if (name == "B1†") spec.bands = {Band{1, 0, seq(d, r1)}, Band{0, 0, seq(d, r2)}};
      if (name == "B2†") spec.bands = {Band{1, 0, seq(d, r1)}, Band{0, 0, seq(d, r2neg)}};
    }
  }
  RepMatrix m = RepMatrix::from_bands(spec, position_tag(s, s_out, conv));
  if (conv == IndexConvention::appendix_c) return {detail::reverse_indices(m.matrix()), m.basis_tag()};
  return m;
}

// canonical: H = S/2 + H_I, spectrum {0..s}.
// printed:   diagonal s, off-diagonal +sqrt((s-i)(i+1)), spectrum {0,2,..,2s}.
inline RepMatrix hamiltonian(int s, HamiltonianConvention conv = HamiltonianConvention::canonical) {
  if (s < 0) throw domain_error("hamiltonian: resolution must be non-negative");
  if (conv == HamiltonianConvention::canonical) return build("H", s);
  BandSpec spec{s + 1, s + 1, {}};
  spec.bands = {Band{0, 0, detail::seq(s + 1, [&](int) { return cplx(s); })},
                Band{0, 1, detail::seq(s, [&](int j) { return cplx(detail::hop(s, j)); })},
                Band{1, 0, detail::seq(s, [&](int j) { return cplx(detail::hop(s, j)); })}};
  return RepMatrix::from_bands(spec, position_tag(s, s));
}

struct SymEig {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // column k belongs to values(k)
};

struct HermEig {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
};

namespace detail {

// Modified Gram-Schmidt over columns [first, last).
inline void reorthonormalize(Eigen::MatrixXd& v, Eigen::Index first, Eigen::Index last) {
  for (Eigen::Index k = first; k < last; ++k) {
    for (Eigen::Index j = first; j < k; ++j) v.col(k) -= v.col(j).dot(v.col(k)) * v.col(j);
    v.col(k).normalize();
  }
}

}  // namespace detail

// Implicit-shift QL on a real symmetric tridiagonal matrix given by its
// diagonal d and off-diagonal e (e.size() == d.size() - 1).
inline SymEig eig_tridiag(std::vector<double> d, std::vector<double> e) {
  const int n = static_cast<int>(d.size());
  if (n == 0) return {};
  if (static_cast<int>(e.size()) != n - 1) throw shape_error("eig_tridiag: off-diagonal length must be n-1");
  e.push_back(0.0);
  Eigen::MatrixXd z = Eigen::MatrixXd::Identity(n, n);
  constexpr double eps = std::numeric_limits<double>::epsilon();

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++iter > 64) throw std::runtime_error("eig_tridiag: no convergence");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      int i = m - 1;
      bool deflated = false;
      for (; i >= l; --i) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        for (int k = 0; k < n; ++k) {
          const double zf = z(k, i + 1);
          z(k, i + 1) = s * z(k, i) + c * zf;
          z(k, i) = c * z(k, i) - s * zf;
        }
      }
      if (deflated) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });
  SymEig out{Eigen::VectorXd(n), Eigen::MatrixXd(n, n)};
  for (int k = 0; k < n; ++k) {
    out.values(k) = d[order[k]];
    out.vectors.col(k) = z.col(order[k]);
  }

  // Safety net for (near) degenerate clusters.
  const double scale = std::max(1.0, out.values.cwiseAbs().maxCoeff());
  for (int k = 0; k < n;) {
    int last = k + 1;
    while (last < n && out.values(last) - out.values(last - 1) < 1e-12 * scale) ++last;
    if (last - k > 1) detail::reorthonormalize(out.vectors, k, last);
    k = last;
  }
  // Deterministic sign: the last nonzero component of each vector is positive.
  for (int k = 0; k < n; ++k) {
    for (int i = n - 1; i >= 0; --i) {
      if (std::abs(out.vectors(i, k)) > 1e-300) {
        if (out.vectors(i, k) < 0) out.vectors.col(k) *= -1.0;
        break;
      }
    }
  }
  return out;
}

// Requires a real symmetric tridiagonal matrix; anything else is a contract
// violation.
inline SymEig eig_sym_tridiag(const RepMatrix& m) {
  const auto& a = m.matrix();
  if (a.rows() != a.cols()) throw contract_violation("eig_sym_tridiag: matrix is not square");
  const Eigen::Index n = a.rows();
  const double tol = 1e-14 * std::max(1.0, max_abs(a));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::abs(a(i, j).imag()) > tol) throw contract_violation("eig_sym_tridiag: matrix is not real");
      if (std::abs(i - j) > 1 && std::abs(a(i, j)) > tol)
        throw contract_violation("eig_sym_tridiag: matrix is not tridiagonal");
      if (std::abs(a(i, j) - a(j, i)) > tol) throw contract_violation("eig_sym_tridiag: matrix is not symmetric");
    }
  }
  std::vector<double> d(n), e(n > 0 ? n - 1 : 0);
  for (Eigen::Index i = 0; i < n; ++i) d[i] = a(i, i).real();
  for (Eigen::Index i = 0; i + 1 < n; ++i) e[i] = a(i + 1, i).real();
  return eig_tridiag(std::move(d), std::move(e));
}

// Hermitian tridiagonal matrix: the diagonal phase similarity
// phi_{j+1} = phi_j e_j/|e_j| maps it onto a real symmetric one.
inline HermEig eig_herm_tridiag(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) throw contract_violation("eig_herm_tridiag: matrix is not square");
  const Eigen::Index n = a.rows();
  const double tol = 1e-13 * std::max(1.0, max_abs(a));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::abs(i - j) > 1 && std::abs(a(i, j)) > tol)
        throw contract_violation("eig_herm_tridiag: matrix is not tridiagonal");
      if (std::abs(a(i, j) - std::conj(a(j, i))) > tol)
        throw contract_violation("eig_herm_tridiag: matrix is not Hermitian");
    }
  }
  Eigen::VectorXcd phase(n);
  std::vector<double> d(n), e(n > 0 ? n - 1 : 0);
  if (n > 0) phase(0) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) d[i] = a(i, i).real();
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const cplx sub = a(i + 1, i);
    e[i] = std::abs(sub);
    phase(i + 1) = e[i] > 0 ? phase(i) * sub / e[i] : phase(i);
  }
  SymEig real = eig_tridiag(std::move(d), std::move(e));
  return {real.values, phase.asDiagonal() * real.vectors.cast<cplx>()};
}

// Matrix of a polynomial on the resolution-s slice: columns index psi_{n1,s},
// rows psi_{n1',s+shift}. Mixed-shift polynomials are rejected.
inline RepMatrix evaluate(const wick::OperatorPoly& p, int s, IndexConvention conv = IndexConvention::n1_ascending) {
  if (s < 0) throw domain_error("evaluate: resolution must be non-negative");
  const auto shift = p.uniform_shift();
  if (!shift) throw shape_error("evaluate: polynomial mixes resolution shifts");
  const int s_out = s + *shift;
  if (s_out < 0) throw domain_error("evaluate: operator lowers resolution below 0");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(s_out + 1, s + 1);
  // n!/(n-k)!, as a long double.
  auto falling = [](int n, unsigned k) {
    long double r = 1;
    for (unsigned i = 0; i < k; ++i) r *= n - static_cast<int>(i);
    return r;
  };
  for (int n1 = 0; n1 <= s; ++n1) {
    const int n2 = s - n1;
    for (const auto& [mono, coef] : p.terms()) {
      if (static_cast<int>(mono.r) > n1 || static_cast<int>(mono.t) > n2) continue;
      const int m1 = n1 - static_cast<int>(mono.r) + static_cast<int>(mono.p);
      const int m2 = n2 - static_cast<int>(mono.t) + static_cast<int>(mono.q);
      const long double w = falling(n1, mono.r) * falling(n2, mono.t) * falling(m1, mono.p) * falling(m2, mono.q);
      m(m1, n1) += coef.to_complex() * static_cast<double>(std::sqrt(w));
    }
  }
  if (conv == IndexConvention::appendix_c) m = detail::reverse_indices(m);
  return {std::move(m), position_tag(s, s_out, conv)};
}

// U = [[T, (I - T T†)^½], [(I - T† T)^½, -T†]] with T = m/alpha. Also accepts
// rectangular m (r x c), giving an (r+c) x (r+c) unitary.
//
// Both square roots come from one SVD T = W Σ V†, so that the off-diagonal
// blocks of U†U cancel exactly even when a singular value sits at 1. The
// eigenvalues 1 - σ² of I - T†T below -1e-12 mean alpha is too small;
// those in [-1e-12, 0] are clamped.
inline RepMatrix unitary_dilation(const RepMatrix& m, double alpha) {
  if (!(alpha > 0) || !std::isfinite(alpha)) throw domain_error("unitary_dilation: alpha must be positive");
  const Eigen::MatrixXcd t = m.matrix() / alpha;
  const Eigen::Index r = t.rows();
  const Eigen::Index c = t.cols();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  auto defect = [&](Eigen::Index n) {
    Eigen::VectorXd g = Eigen::VectorXd::Ones(n);
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
      const double lam = (1.0 - sigma(i)) * (1.0 + sigma(i));
      if (lam < -1e-12) throw contraction_error("unitary_dilation: alpha is below the spectral norm");
      g(i) = std::sqrt(std::max(lam, 0.0));
    }
    return g;
  };
  const Eigen::MatrixXcd& w = svd.matrixU();
  const Eigen::MatrixXcd& v = svd.matrixV();
  Eigen::MatrixXcd u(r + c, r + c);
  u.topLeftCorner(r, c) = t;
  u.topRightCorner(r, r) = w * defect(r).cast<cplx>().asDiagonal() * w.adjoint();
  u.bottomLeftCorner(c, c) = v * defect(c).cast<cplx>().asDiagonal() * v.adjoint();
  u.bottomRightCorner(c, r) = -t.adjoint();
  return {std::move(u), "dilation(" + m.basis_tag() + ")"};
}

inline double unitarity_residual(const RepMatrix& u) {
  const auto& a = u.matrix();
  return max_abs(a.adjoint() * a - Eigen::MatrixXcd::Identity(a.cols(), a.cols()));
}

// CSV: optional '#' comment lines, header "rows,cols,basis_tag", one line with
// the values, then one line per row holding re,im pairs.
inline void write_csv(std::ostream& os, const RepMatrix& m, const std::string& comment = {}) {
  if (!comment.empty()) os << "# " << comment << '\n';
  os << "rows,cols,basis_tag\n" << m.rows() << ',' << m.cols() << ',' << m.basis_tag() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << fmt17(m(i, j).real()) << ',' << fmt17(m(i, j).imag());
    }
    os << '\n';
  }
}

inline RepMatrix read_csv(std::istream& is) {
  std::string line;
  auto next = [&]() {
    while (std::getline(is, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty() && line[0] != '#') return true;
    }
    return false;
  };
  if (!next() || line != "rows,cols,basis_tag") throw std::invalid_argument("matrix csv: missing header");
  if (!next()) throw std::invalid_argument("matrix csv: missing dimensions");
  std::istringstream dims(line);
  std::string rows_s, cols_s, tag;
  std::getline(dims, rows_s, ',');
  std::getline(dims, cols_s, ',');
  std::getline(dims, tag);
  const int rows = std::stoi(rows_s);
  const int cols = std::stoi(cols_s);
  if (rows <= 0 || cols <= 0) throw shape_error("matrix csv: dimensions must be positive");
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!next()) throw shape_error("matrix csv: too few rows");
    std::istringstream row(line);
    std::string re, im;
    for (int j = 0; j < cols; ++j) {
      if (!std::getline(row, re, ',') || !std::getline(row, im, ','))
        throw shape_error("matrix csv: row " + std::to_string(i) + " too short");
      m(i, j) = cplx(std::stod(re), std::stod(im));
    }
  }
  return {std::move(m), tag};
}

inline nlohmann::json to_json(const RepMatrix& m) {
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json rr = nlohmann::json::array(), ri = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ri.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"basis_tag", m.basis_tag()}, {"re", re}, {"im", im}};
}

inline RepMatrix matrix_from_json(const nlohmann::json& j) {
  const int rows = j.at("rows").get<int>();
  const int cols = j.at("cols").get<int>();
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (rows <= 0 || cols <= 0 || static_cast<int>(re.size()) != rows || static_cast<int>(im.size()) != rows)
    throw shape_error("matrix json: inconsistent dimensions");
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(re[i].size()) != cols || static_cast<int>(im[i].size()) != cols)
      throw shape_error("matrix json: ragged row");
    for (int k = 0; k < cols; ++k) m(i, k) = cplx(re[i][k].get<double>(), im[i][k].get<double>());
  }
  return {std::move(m), j.at("basis_tag").get<std::string>()};
}

}  // namespace dqho

#endif  // DQHO_REPMAT_HPP
