#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>

#include "ergo/cable.hpp"
#include "ergo/cli.hpp"
#include "ergo/compression.hpp"
#include "ergo/core.hpp"
#include "ergo/interaction.hpp"
#include "ergo/kinematics.hpp"
#include "ergo/trials.hpp"

namespace py = pybind11;
using namespace ergo;

namespace {

Vec3 to_vec3(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }
std::array<double, 3> from_vec3(const Vec3& v) { return {v.x, v.y, v.z}; }

}  // namespace

PYBIND11_MODULE(_ergo, m) {
  m.doc() = "Suit-body interaction estimators for cable-driven shoulder-assist suits";
  m.attr("__version__") = kToolVersion;

  py::register_exception<Error>(m, "ErgoError");

  m.def("resample",
        [](const std::vector<double>& t, const std::vector<double>& values,
           const std::vector<double>& targets) {
          TimeSeries<double> s{t, values};
          return resample(s, targets).values;
        },
        py::arg("t"), py::arg("values"), py::arg("target_times"),
        "Linear interpolation of a time series at the target times");

  py::class_<Frame>(m, "Frame")
      .def_property_readonly("origin", [](const Frame& f) { return from_vec3(f.origin); })
      .def_property_readonly("axes",
                             [](const Frame& f) {
                               return std::array<std::array<double, 3>, 3>{
                                   from_vec3(f.axes[0]), from_vec3(f.axes[1]),
                                   from_vec3(f.axes[2])};
                             })
      .def("to_local", [](const Frame& f, const std::array<double, 3>& p) {
        return from_vec3(f.to_local(to_vec3(p)));
      })
      .def("to_world", [](const Frame& f, const std::array<double, 3>& p) {
        return from_vec3(f.to_world(to_vec3(p)));
      });

  m.def("build_frame",
        [](const std::array<double, 3>& origin, const std::array<double, 3>& a,
           const std::array<double, 3>& b) {
          return build_frame(to_vec3(origin), to_vec3(a), to_vec3(b));
        },
        py::arg("origin"), py::arg("a"), py::arg("b"));

  m.def("shoulder_pose",
        [](const std::array<double, 3>& shoulder, const std::array<double, 3>& elbow,
           const Frame& frame) {
          const ShoulderPose p = shoulder_pose(to_vec3(shoulder), to_vec3(elbow), frame);
          return py::make_tuple(p.elevation_deg, p.plane_of_elevation_deg,
                                p.plane_undefined);
        },
        py::arg("shoulder"), py::arg("elbow"), py::arg("frame"),
        "Returns (elevation_deg, plane_of_elevation_deg, plane_undefined)");

  m.def("cable_wrap_angles",
        [](const std::array<std::array<double, 3>, 6>& pts) {
          std::array<Vec3, 6> v;
          for (int i = 0; i < 6; ++i) v[i] = to_vec3(pts[i]);
          const CablePath p = make_cable_path(v);
          return std::array<double, 4>{p.wrap_rad[0], p.wrap_rad[1], p.wrap_rad[2],
                                       p.wrap_rad[3]};
        },
        py::arg("contact_points"),
        "Wrap angles (rad) at P1, P2, P3, F for the 6-point cable path B..FSC");

  m.def("node_force",
        [](const std::array<std::array<double, 3>, 6>& pts, double tension,
           int node_index) {
          std::array<Vec3, 6> v;
          for (int i = 0; i < 6; ++i) v[i] = to_vec3(pts[i]);
          return from_vec3(node_force(make_cable_path(v), tension, node_index));
        },
        py::arg("contact_points"), py::arg("tension_n"), py::arg("node_index"));

  m.def("node_pressure", &node_pressure, py::arg("force_magnitude_n"),
        py::arg("base_area_m2"));

  m.def("quad_area",
        [](const std::array<double, 3>& p1, const std::array<double, 3>& p2,
           const std::array<double, 3>& p3, const std::array<double, 3>& p4) {
          const QuadArea q = quad_area(to_vec3(p1), to_vec3(p2), to_vec3(p3), to_vec3(p4));
          return py::make_tuple(q.area_m2, q.planarity_gap_m2);
        },
        "Returns (area_m2, planarity_gap_m2)");

  m.def("solve_cuff_radius", &solve_cuff_radius, py::arg("chord_l_m"),
        py::arg("arc_length_m"));
  m.def("cuff_dv", &cuff_dv, py::arg("radius_assisted_m"), py::arg("radius_baseline_m"));

  m.def("hysteresis_loop",
        [](const std::vector<double>& x, const std::vector<double>& y) {
          const HysteresisMetrics h = hysteresis(x, y, 0, x.size());
          return py::make_tuple(h.area_abs, h.orientation);
        },
        py::arg("x"), py::arg("y"), "Returns (area_abs, orientation) of the closed loop");

  // Full pipelines, same semantics and exit codes as the ergo CLI.
  m.def("analyze", &cmd_analyze, py::arg("config_path"), py::arg("markers_path"),
        py::arg("sensors_path"), py::arg("out_dir"));
  m.def("synth", &cmd_synth, py::arg("scenario_path"), py::arg("out_dir"));
  m.def("verify", &cmd_verify, py::arg("dataset_dir"), py::arg("tolerances_path") = "");
  m.def("report", &cmd_report, py::arg("results_dir"), py::arg("out_dir"));
}
