#pragma once

#include <functional>

#include "cones/belief.hpp"

namespace cones {

struct GridSearchResult {
  double value = 0.0;
  Vec argmax;
};

struct GridSearchOptions {
  int refine_rounds = 3;  // rounds of 10x spacing refinement
  int starts = 1;         // separated incumbents refined independently
  double window = 1.2;    // refine half-width, in units of the prior spacing
};

/// Exhaustive grid maximisation over a box, used as an independent oracle
/// for the dual solver on low-dimensional instances (m <= 4). Evaluates the
/// objective at every feasible grid point, then repeatedly re-grids around
/// the incumbent(s) with 10x finer spacing. With starts > 1 the best
/// well-separated coarse candidates are refined independently, which keeps
/// near-ties between distant optima honest.
GridSearchResult bruteforce_solve(
    const std::function<double(const Vec&)>& objective,
    const std::function<bool(const Vec&)>& feasible, const Vec& lo,
    const Vec& hi, double resolution, const GridSearchOptions& opts = {});

}  // namespace cones
