#ifndef DQHO_FORMAT_HPP
#define DQHO_FORMAT_HPP

#include <cstdio>
#include <string>

namespace dqho {

// Round-trip exact, locale independent.
inline std::string fmt17(double v) {
  if (v == 0.0) return "0";  // folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace dqho

#endif  // DQHO_FORMAT_HPP
