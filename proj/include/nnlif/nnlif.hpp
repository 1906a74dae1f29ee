#pragma once

#include "nnlif/csv_output.hpp"
#include "nnlif/delay_refractory.hpp"
#include "nnlif/diagnostics.hpp"
#include "nnlif/errors.hpp"
#include "nnlif/grid_model.hpp"
#include "nnlif/harness.hpp"
#include "nnlif/scenario.hpp"
#include "nnlif/solver.hpp"
#include "nnlif/stationary.hpp"
