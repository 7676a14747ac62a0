#pragma once

#include "semisens/errata.hpp"
#include "semisens/errors.hpp"
#include "semisens/family_json.hpp"
#include "semisens/fd_oracle.hpp"
#include "semisens/generator_family.hpp"
#include "semisens/models.hpp"
#include "semisens/moment_functional.hpp"
#include "semisens/operator_matrix.hpp"
#include "semisens/polynomial.hpp"
#include "semisens/rational.hpp"
#include "semisens/report.hpp"
#include "semisens/scalar.hpp"
#include "semisens/semigroup.hpp"
#include "semisens/sensitivity.hpp"
#include "semisens/validate.hpp"
