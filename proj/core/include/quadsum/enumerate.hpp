#pragma once

#include <cstdint>
#include <vector>

#include "quadsum/quad_family.hpp"

namespace quadsum {

struct QuadricPoint {
    VecI xi;
    std::int64_t content;
};

struct QuadricPointSet {
    int level = 0;
    std::int64_t radius = 0;
    std::vector<QuadricPoint> points;
    bool exhaustive = true;
};

// All nonzero integral zeros of Q_level with sup-norm <= radius: the free
// coordinates are enumerated and the last hyperbolic pair's bilinear equation
// x1 x2 = -m is solved by divisor lookup.  A memory guard flips `exhaustive`
// off when the point budget is exceeded.
QuadricPointSet enumerate_quadric(const QuadFamily& fam, int level, std::int64_t radius,
                                  std::int64_t max_points = 8'000'000);

// Reference oracle: plain scan of the whole box.
QuadricPointSet enumerate_quadric_naive(const QuadFamily& fam, int level, std::int64_t radius);

// All lattice vectors with squared Euclidean norm <= r2max, bucketed by the
// exact value of Q_level.
std::vector<std::pair<std::int64_t, std::vector<VecI>>> lattice_by_quad_value(
    const QuadFamily& fam, int level, std::int64_t r2max);

}  // namespace quadsum
