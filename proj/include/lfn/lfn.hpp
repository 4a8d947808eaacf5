#pragma once

#include "lfn/bruhat.hpp"
#include "lfn/conductor.hpp"
#include "lfn/explicit_formula.hpp"
#include "lfn/gamma.hpp"
#include "lfn/localfield.hpp"
#include "lfn/logexact.hpp"
#include "lfn/quadrature.hpp"
#include "lfn/rational.hpp"
#include "lfn/special.hpp"
#include "lfn/spectral.hpp"
#include "lfn/testfunction.hpp"
#include "lfn/weil.hpp"
