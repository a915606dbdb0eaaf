// Everything at once.
#pragma once

#include "ppq/agw.hpp"
#include "ppq/check.hpp"
#include "ppq/expr.hpp"
#include "ppq/families.hpp"
#include "ppq/field.hpp"
#include "ppq/finite_map.hpp"
#include "ppq/grid.hpp"
#include "ppq/poly.hpp"
#include "ppq/report.hpp"
#include "ppq/rules.hpp"
#include "ppq/sweep.hpp"
