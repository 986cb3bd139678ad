#ifndef DQHO_ERRORS_HPP
#define DQHO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dqho {

// Argument outside the mathematical domain of an operation (e.g. lowering
// the resolution of s = 0, an energy index above s).
struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

// Caller broke a documented precondition (unnormalized state, non-symmetric
// matrix handed to a symmetric solver, ...).
struct contract_violation : std::logic_error {
  using std::logic_error::logic_error;
};

// Matrix or polynomial shapes that cannot be combined.
struct shape_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct unsupported_symbol : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Terminating hypergeometric series whose denominator Pochhammer vanishes
// before the numerator does.
struct pole_error : std::domain_error {
  using std::domain_error::domain_error;
};

// Operator is not a contraction after scaling, so no unitary dilation exists.
struct contraction_error : std::domain_error {
  using std::domain_error::domain_error;
};

// Resolution lowering would discard occupied energy levels.
class truncation_error : public std::runtime_error {
 public:
  truncation_error(const std::string& what, double lost_norm)
      : std::runtime_error(what), lost_norm_(lost_norm) {}

  double lost_norm() const noexcept { return lost_norm_; }

 private:
  double lost_norm_;
};

}  // namespace dqho

#endif  // DQHO_ERRORS_HPP
