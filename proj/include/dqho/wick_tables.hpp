#ifndef DQHO_WICK_TABLES_HPP
#define DQHO_WICK_TABLES_HPP

// Symbolic verification of the commutator tables of the two-mode algebra,
// the ladder equations of motion and the quadratic Casimir.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "dqho/verification.hpp"
#include "dqho/wick.hpp"

namespace dqho::wick {

// An expected table cell: coef * named(op), or zero when op is empty.
struct TableCell {
  Rational coef;
  std::string op;

  OperatorPoly value() const {
    if (op.empty() || coef == 0) return {};
    return ComplexRational(coef) * named(op);
  }

  std::string str() const {
    if (op.empty() || coef == 0) return "0";
    if (coef == 1) return op;
    if (coef == -1) return "-" + op;
    return to_string(coef) + " " + op;
  }
};

struct CommutatorTable {
  std::string label;
  std::vector<std::string> ops;
  std::vector<std::vector<TableCell>> cells;  // cells[row][col] = [ops[row], ops[col]]
};

inline CommutatorTable table_one() {
  const TableCell z{0, ""};
  auto c = [](long n, long d, const char* op) { return TableCell{make_rational(n, d), op}; };
  return {"TableI",
          {"H", "S", "B1", "B1†", "B2", "B2†", "I"},
          {
              {z, z, z, z, c(-1, 1, "B2"), c(1, 1, "B2†"), z},
              {z, z, c(-1, 1, "B1"), c(1, 1, "B1†"), c(-1, 1, "B2"), c(1, 1, "B2†"), z},
              {z, c(1, 1, "B1"), z, c(2, 1, "I"), z, z, z},
              {z, c(-1, 1, "B1†"), c(-2, 1, "I"), z, z, z, z},
              {c(1, 1, "B2"), c(1, 1, "B2"), z, z, z, c(2, 1, "I"), z},
              {c(-1, 1, "B2†"), c(-1, 1, "B2†"), z, z, c(-2, 1, "I"), z, z},
              {z, z, z, z, z, z, z},
          }};
}

inline CommutatorTable table_two() {
  const TableCell z{0, ""};
  auto c = [](long n, long d, const char* op) { return TableCell{make_rational(n, d), op}; };
  return {"TableII",
          {"H_I", "D", "D†", "B1", "B1†", "I"},
          {
              {z, c(-1, 1, "D"), c(1, 1, "D†"), c(1, 2, "B1"), c(-1, 2, "B1†"), z},
              {c(1, 1, "D"), z, c(8, 1, "H_I"), c(-2, 1, "B2"), z, z},
              {c(-1, 1, "D†"), c(-8, 1, "H_I"), z, z, c(2, 1, "B2†"), z},
              {c(-1, 2, "B1"), c(2, 1, "B2"), z, z, c(2, 1, "I"), z},
              {c(1, 2, "B1†"), z, c(-2, 1, "B2†"), c(-2, 1, "I"), z, z},
              {z, z, z, z, z, z},
          }};
}

inline void check_identity(VerificationReport& report, std::string label, const OperatorPoly& lhs,
                           const OperatorPoly& rhs) {
  const OperatorPoly residual = lhs - rhs;
  report.add({std::move(label), residual.is_zero(), residual.str(), residual.is_zero() ? 0.0 : 1.0});
}

inline VerificationReport verify_table(const CommutatorTable& table) {
  VerificationReport report;
  std::vector<OperatorPoly> ops;
  for (const auto& name : table.ops) ops.push_back(named(name));
  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (std::size_t j = 0; j < ops.size(); ++j) {
      const auto& cell = table.cells[i][j];
      check_identity(report, table.label + " [" + table.ops[i] + "," + table.ops[j] + "] = " + cell.str(),
                     commutator(ops[i], ops[j]), cell.value());
    }
  }
  return report;
}

// Which variant of the known misprints to check.
//   printed:   the tables and equations of motion verbatim
//   corrected: Table II [D,D†] = -8 H_I, [D†,D] = 8 H_I and
//              [H,A2] = 1/2(A1-A2), the values normal ordering produces
enum class TableSource { printed, corrected };

struct Erratum {
  std::string where;
  std::string printed;
  std::string corrected;
};

inline std::vector<Erratum> known_errata() {
  return {{"TableII [D,D†]", "8 H_I", "-8 H_I"},
          {"TableII [D†,D]", "-8 H_I", "8 H_I"},
          {"EoM [H,A2]", "1/2(A1+A2)", "1/2(A1-A2)"}};
}

inline CommutatorTable table_two(TableSource source) {
  CommutatorTable t = table_two();
  if (source == TableSource::corrected) {
    t.label = "TableII(corrected)";
    t.cells[1][2] = TableCell{-8, "H_I"};
    t.cells[2][1] = TableCell{8, "H_I"};
  }
  return t;
}

inline VerificationReport verify_equations_of_motion(TableSource source = TableSource::printed) {
  VerificationReport report;
  const ComplexRational half(make_rational(1, 2));
  const auto a1 = named("A1");
  const auto a2 = named("A2");
  check_identity(report, "EoM [H,A1] = 1/2(A2-A1)", commutator(named("H"), a1), half * (a2 - a1));
  if (source == TableSource::printed) {
    check_identity(report, "EoM [H,A2] = 1/2(A1+A2)", commutator(named("H"), a2), half * (a1 + a2));
  } else {
    check_identity(report, "EoM(corrected) [H,A2] = 1/2(A1-A2)", commutator(named("H"), a2), half * (a1 - a2));
  }
  check_identity(report, "EoM [H_I,A1] = 1/2 A2", commutator(named("H_I"), a1), half * a2);
  check_identity(report, "EoM [H_I,A2] = 1/2 A1", commutator(named("H_I"), a2), half * a1);
  return report;
}

inline VerificationReport verify_casimir() {
  VerificationReport report;
  const auto s = named("S");
  check_identity(report, "Casimir DD†+4H_I²+4H_I = S(S+2)", named("Ω"),
                 s * (s + ComplexRational(2) * OperatorPoly::identity()));
  return report;
}

// Structural identities relating the named operators.
inline VerificationReport verify_operator_identities() {
  VerificationReport report;
  const ComplexRational half(make_rational(1, 2));
  const ComplexRational i = ComplexRational::i();
  check_identity(report, "X = 1/2(D†+D) = 2N1-S", named("X"), ComplexRational(2) * named("N1") - named("S"));
  check_identity(report, "H = 1/2 S + H_I", named("H"), half * named("S") + named("H_I"));
  check_identity(report, "H = 1/2 B2†B2", named("H"), half * (named("B2†") * named("B2")));
  check_identity(report, "[H,X] = -iP", commutator(named("H"), named("X")), -i * named("P"));
  check_identity(report, "[H,P] = iX", commutator(named("H"), named("P")), i * named("X"));
  check_identity(report, "[H,D] = -D", commutator(named("H"), named("D")), -named("D"));
  check_identity(report, "[H,D†] = D†", commutator(named("H"), named("D†")), named("D†"));
  for (const char* name : {"H", "S", "H_I", "X", "P", "Ω"}) {
    check_identity(report, std::string("adjoint(") + name + ") = " + name, adjoint(named(name)), named(name));
  }
  return report;
}

// Table I (49 cells), Table II (36 cells), the four equations of motion and
// the Casimir relation, each as an exact symbolic check.
inline VerificationReport verify_tables(TableSource source = TableSource::printed) {
  VerificationReport report;
  report.append(verify_table(table_one()));
  report.append(verify_table(table_two(source)));
  report.append(verify_equations_of_motion(source));
  report.append(verify_casimir());
  return report;
}

}  // namespace dqho::wick

#endif  // DQHO_WICK_TABLES_HPP
