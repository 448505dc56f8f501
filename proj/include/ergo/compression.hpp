#pragma once

#include <cstddef>
#include <vector>

#include "ergo/core.hpp"

namespace ergo {

// Surface area of the (possibly non-planar) marker quadrilateral, taken as the
// mean of the two diagonal triangulations. planarity_gap_m2 is the absolute
// difference between the two; 0 for planar quads.
struct QuadArea {
  double area_m2 = 0.0;
  double planarity_gap_m2 = 0.0;
};

QuadArea quad_area(const Vec3& p1, const Vec3& p2, const Vec3& p3, const Vec3& p4);

// Each area divided by the mean area over the baseline (unpowered) frames.
std::vector<double> torso_ratio(const std::vector<double>& areas_m2,
                                const std::vector<std::size_t>& baseline_frames);

// Open-cylinder cuff: constant arc length L, chord l = |C1 - C2|. Substituting
// x = L / (2R) reduces the chord/arc relations to sin(x) = (l/L) x, solved by
// bisection for the unique nontrivial root x* in (0, pi); R = L / (2 x*).
double solve_cuff_radius(double chord_l_m, double arc_length_m);

// Fractional cross-section (volume-proportional) loss 1 - (R'/R0)^2.
double cuff_dv(double radius_assisted_m, double radius_baseline_m);

}  // namespace ergo
