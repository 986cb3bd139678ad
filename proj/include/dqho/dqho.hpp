#ifndef DQHO_DQHO_HPP
#define DQHO_DQHO_HPP

#include "dqho/coherent.hpp"
#include "dqho/errors.hpp"
#include "dqho/format.hpp"
#include "dqho/io.hpp"
#include "dqho/rational.hpp"
#include "dqho/repmat.hpp"
#include "dqho/specfn.hpp"
#include "dqho/states.hpp"
#include "dqho/verification.hpp"
#include "dqho/wick.hpp"
#include "dqho/wick_tables.hpp"

#endif  // DQHO_DQHO_HPP
