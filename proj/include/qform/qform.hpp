#pragma once

#include "qform/arith.hpp"
#include "qform/eisenstein.hpp"
#include "qform/errors.hpp"
#include "qform/eta.hpp"
#include "qform/qseries.hpp"
#include "qform/rational.hpp"
#include "qform/repcount.hpp"
#include "qform/solver.hpp"
