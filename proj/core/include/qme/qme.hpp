#pragma once

#include "qme/errors.hpp"
#include "qme/generators.hpp"
#include "qme/lu.hpp"
#include "qme/matrix.hpp"
#include "qme/problem.hpp"
#include "qme/problem_io.hpp"
#include "qme/schur.hpp"
#include "qme/solver.hpp"
#include "qme/sylvester.hpp"
