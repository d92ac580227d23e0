#include "cones/bruteforce.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cones {

namespace {

struct Candidate {
  double value;
  Vec point;
};

struct Grid {
  Vec origin;
  Vec spacing;
  std::vector<std::size_t> pts;
};

Grid make_grid(const Vec& lo, const Vec& hi, double resolution) {
  const std::size_t m = lo.size();
  Grid grid;
  grid.origin = lo;
  grid.spacing.assign(m, 0.0);
  grid.pts.assign(m, 1);
  double total = 1.0;
  for (std::size_t d = 0; d < m; ++d) {
    const double width = hi[d] - lo[d];
    if (width > 0.0) {
      const std::size_t count =
          std::max<std::size_t>(2, static_cast<std::size_t>(
                                       std::ceil(width / resolution)) +
                                       1);
      grid.pts[d] = count;
      grid.spacing[d] = width / static_cast<double>(count - 1);
    }
    total *= static_cast<double>(grid.pts[d]);
  }
  if (total > 5e8) {
    throw std::invalid_argument("bruteforce: grid too large for resolution");
  }
  return grid;
}

template <typename Fn>
void for_each_grid_point(const Grid& grid, Fn&& fn) {
  const std::size_t m = grid.origin.size();
  std::vector<std::size_t> idx(m, 0);
  Vec p(grid.origin);
  for (;;) {
    fn(p);
    std::size_t d = m;
    while (d > 0) {
      --d;
      if (++idx[d] < grid.pts[d]) {
        p[d] = grid.origin[d] + static_cast<double>(idx[d]) * grid.spacing[d];
        break;
      }
      idx[d] = 0;
      p[d] = grid.origin[d];
      if (d == 0) return;
    }
  }
}

bool points_close(const Vec& a, const Vec& b, const Vec& spacing) {
  for (std::size_t d = 0; d < a.size(); ++d) {
    if (std::fabs(a[d] - b[d]) > 3.0 * spacing[d]) return false;
  }
  return true;
}

}  // namespace

GridSearchResult bruteforce_solve(
    const std::function<double(const Vec&)>& objective,
    const std::function<bool(const Vec&)>& feasible, const Vec& lo,
    const Vec& hi, double resolution, const GridSearchOptions& opts) {
  const std::size_t m = lo.size();
  if (m == 0 || m > 4) {
    throw std::invalid_argument("bruteforce: dimension must be in [1, 4]");
  }
  if (hi.size() != m) {
    throw std::invalid_argument("bruteforce: box bounds size mismatch");
  }
  for (std::size_t d = 0; d < m; ++d) {
    if (!std::isfinite(lo[d]) || !std::isfinite(hi[d]) || lo[d] > hi[d]) {
      throw std::invalid_argument("bruteforce: malformed box");
    }
  }
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw std::invalid_argument("bruteforce: resolution must be positive");
  }
  if (opts.refine_rounds < 0 || opts.starts < 1 || !(opts.window > 0.0)) {
    throw std::invalid_argument("bruteforce: malformed options");
  }

  const Grid coarse = make_grid(lo, hi, resolution);
  const std::size_t starts = static_cast<std::size_t>(opts.starts);

  // Coarse sweep; keep the best `starts` candidates that are pairwise
  // separated by a few grid cells.
  std::vector<Candidate> seeds;
  for_each_grid_point(coarse, [&](const Vec& p) {
    if (!feasible(p)) return;
    const double value = objective(p);
    if (!seeds.empty() && seeds.size() == starts &&
        !(value > seeds.back().value)) {
      return;
    }
    for (auto& seed : seeds) {
      if (points_close(p, seed.point, coarse.spacing)) {
        if (value > seed.value) {
          seed.value = value;
          seed.point = p;
          std::sort(seeds.begin(), seeds.end(),
                    [](const Candidate& a, const Candidate& b) {
                      return a.value > b.value;
                    });
        }
        return;
      }
    }
    seeds.push_back({value, p});
    std::sort(seeds.begin(), seeds.end(),
              [](const Candidate& a, const Candidate& b) {
                return a.value > b.value;
              });
    if (seeds.size() > starts) seeds.pop_back();
  });
  if (seeds.empty()) {
    throw std::runtime_error("bruteforce: no feasible grid point in box");
  }

  GridSearchResult best{seeds.front().value, seeds.front().point};
  for (const auto& seed : seeds) {
    Candidate incumbent = seed;
    Vec h = coarse.spacing;
    for (int round = 0; round < opts.refine_rounds; ++round) {
      Vec rlo(m), rhi(m);
      double finest = 0.0;
      for (std::size_t d = 0; d < m; ++d) {
        rlo[d] = std::max(lo[d], incumbent.point[d] - opts.window * h[d]);
        rhi[d] = std::min(hi[d], incumbent.point[d] + opts.window * h[d]);
        finest = std::max(finest, h[d]);
      }
      if (finest == 0.0) break;  // fully degenerate box
      const Grid fine = make_grid(rlo, rhi, finest / 10.0);
      for_each_grid_point(fine, [&](const Vec& p) {
        if (!feasible(p)) return;
        const double value = objective(p);
        if (value > incumbent.value) {
          incumbent.value = value;
          incumbent.point = p;
        }
      });
      h = fine.spacing;
    }
    if (incumbent.value > best.value) {
      best.value = incumbent.value;
      best.argmax = incumbent.point;
    }
  }
  return best;
}

}  // namespace cones
