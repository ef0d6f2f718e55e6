#pragma once

#include "loccurve/convergence.hpp"
#include "loccurve/curve.hpp"
#include "loccurve/dataset.hpp"
#include "loccurve/error.hpp"
#include "loccurve/estimators.hpp"
#include "loccurve/grid.hpp"
#include "loccurve/response.hpp"
#include "loccurve/segment.hpp"
