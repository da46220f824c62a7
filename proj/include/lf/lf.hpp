#pragma once

// Everything except the testing helpers.

#include "lf/colors.hpp"
#include "lf/efgame.hpp"
#include "lf/errors.hpp"
#include "lf/forest.hpp"
#include "lf/generator.hpp"
#include "lf/hardness.hpp"
#include "lf/json_io.hpp"
#include "lf/logic/eval.hpp"
#include "lf/logic/formula.hpp"
#include "lf/logic/syntax.hpp"
#include "lf/logic/transform.hpp"
#include "lf/pseudofinite.hpp"
#include "lf/random.hpp"
