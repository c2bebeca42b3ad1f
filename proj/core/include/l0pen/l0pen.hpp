#pragma once

#include "l0pen/core.hpp"
#include "l0pen/geometry.hpp"
#include "l0pen/instance_io.hpp"
#include "l0pen/penalty_family.hpp"
#include "l0pen/problems.hpp"
#include "l0pen/random.hpp"
#include "l0pen/report_io.hpp"
#include "l0pen/residuals.hpp"
#include "l0pen/solvers.hpp"
#include "l0pen/types.hpp"
#include "l0pen/verify.hpp"
