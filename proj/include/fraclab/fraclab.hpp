#pragma once

#include "analysis.hpp"
#include "config.hpp"
#include "constants.hpp"
#include "eigen.hpp"
#include "grid.hpp"
#include "io.hpp"
#include "kernel.hpp"
#include "linear.hpp"
#include "operator.hpp"
#include "quadrature.hpp"
#include "report.hpp"
#include "singular.hpp"
#include "sublinear.hpp"
#include "superlinear.hpp"
