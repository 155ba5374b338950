#pragma once

#include "dtlab/common.hpp"
#include "dtlab/fourier.hpp"
#include "dtlab/inner_rational.hpp"
#include "dtlab/spaces.hpp"
#include "dtlab/operators.hpp"
#include "dtlab/analysis.hpp"
