#pragma once

#include "powergen/arg_sweep.hpp"
#include "powergen/cubic_geometry.hpp"
#include "powergen/format.hpp"
#include "powergen/gamma.hpp"
#include "powergen/integral_rep.hpp"
#include "powergen/parallel.hpp"
#include "powergen/polynomial.hpp"
#include "powergen/quadrature.hpp"
#include "powergen/root_finding.hpp"
#include "powergen/series.hpp"
#include "powergen/zero_analysis.hpp"
