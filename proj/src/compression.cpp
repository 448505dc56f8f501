#include "ergo/compression.hpp"

#include <cmath>
#include <string>

#include "ergo/errors.hpp"
#include "ergo/io_util.hpp"

namespace ergo {

namespace {

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double area = 0.5 * norm(cross(b - a, c - a));
  if (area < 1e-10)
    fail(ErrorCode::DegenerateQuad, "quadrilateral triangle area below 1e-10 m^2");
  return area;
}

}  // namespace

QuadArea quad_area(const Vec3& p1, const Vec3& p2, const Vec3& p3, const Vec3& p4) {
  const double diag13 = triangle_area(p1, p2, p3) + triangle_area(p1, p3, p4);
  const double diag24 = triangle_area(p2, p3, p4) + triangle_area(p2, p4, p1);
  QuadArea q;
  q.area_m2 = 0.5 * (diag13 + diag24);
  q.planarity_gap_m2 = std::abs(diag13 - diag24);
  return q;
}

std::vector<double> torso_ratio(const std::vector<double>& areas_m2,
                                const std::vector<std::size_t>& baseline_frames) {
  if (baseline_frames.empty())
    fail(ErrorCode::EmptyBaseline, "no unpowered baseline frames to normalize against");
  double sum = 0.0;
  for (std::size_t k : baseline_frames) sum += areas_m2.at(k);
  const double baseline = sum / static_cast<double>(baseline_frames.size());

  std::vector<double> out(areas_m2.size());
  for (std::size_t i = 0; i < areas_m2.size(); ++i) out[i] = areas_m2[i] / baseline;
  return out;
}

double solve_cuff_radius(double chord_l_m, double arc_length_m) {
  const double l = chord_l_m;
  const double L = arc_length_m;
  if (!(L > 0.0)) fail(ErrorCode::NoRoot, "arc length must be > 0");
  if (l < 0.0 || l >= L)
    fail(ErrorCode::NoRoot, "chord l=" + format_double(l) +
                                " must satisfy 0 <= l < L=" + format_double(L));

  // Closed cylinder: zero chord means the full circle, x* = pi exactly.
  if (l == 0.0) return L / (2.0 * M_PI);

  const double c = l / L;  // in (0, 1)
  const auto f = [c](double x) { return std::sin(x) - c * x; };

  // x = 0 always solves the rearranged equation; the physical root is the unique
  // nontrivial one in (0, pi). Scan downward from pi for the sign change.
  const double step = M_PI / 64.0;
  double hi = M_PI;
  double f_hi = f(hi);  // -c*pi < 0
  double lo = hi;
  bool bracketed = false;
  for (int i = 1; i <= 64; ++i) {
    lo = M_PI - static_cast<double>(i) * step;
    if (lo < 0.0) lo = 0.0;
    const double f_lo = f(lo);
    if (f_lo == 0.0 && lo > 0.0) return L / (2.0 * lo);
    if (f_lo > 0.0) {
      bracketed = true;
      break;
    }
    hi = lo;
    f_hi = f_lo;
  }
  if (!bracketed)
    fail(ErrorCode::NumericalFailure,
         "no bracket for cuff radius root (l/L=" + format_double(c) + ")");
  (void)f_hi;

  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double x_root = 0.5 * (lo + hi);
  return L / (2.0 * x_root);
}

double cuff_dv(double radius_assisted_m, double radius_baseline_m) {
  if (!(radius_assisted_m > 0.0) || !(radius_baseline_m > 0.0))
    fail(ErrorCode::NonPositiveRadius, "cuff radii must be > 0");
  const double q = radius_assisted_m / radius_baseline_m;
  return 1.0 - q * q;
}

}  // namespace ergo
