#pragma once

#include "sparsedyn/coefficients.hpp"
#include "sparsedyn/convolution.hpp"
#include "sparsedyn/errors.hpp"
#include "sparsedyn/evaluation.hpp"
#include "sparsedyn/grid.hpp"
#include "sparsedyn/initial_conditions.hpp"
#include "sparsedyn/shrinkage.hpp"
#include "sparsedyn/solvers.hpp"
#include "sparsedyn/sparse_spectrum.hpp"
#include "sparsedyn/spectrum.hpp"
#include "sparsedyn/spectrum_io.hpp"
#include "sparsedyn/transform.hpp"
