#pragma once

#include "tailsitter/csv.hpp"
#include "tailsitter/integrator.hpp"
#include "tailsitter/plots.hpp"
#include "tailsitter/roa.hpp"
#include "tailsitter/scenario.hpp"
#include "tailsitter/simulate.hpp"
