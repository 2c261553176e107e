#pragma once

// Umbrella header for the sudoku difficulty-rating library.

#include "board.hpp"
#include "dataset.hpp"
#include "errors.hpp"
#include "nishio.hpp"
#include "rating.hpp"
#include "sat.hpp"
#include "strategies.hpp"
