#include "ergo/pipeline.hpp"

#include <cmath>

#include "ergo/compression.hpp"
#include "ergo/errors.hpp"

namespace ergo {

AnalysisResult run_analysis(const SuitConfig& cfg, const MarkerDataset& markers,
                            const SensorDataset& raw_sensors) {
  AnalysisResult res;
  res.sensors = synchronize(markers, raw_sensors);
  res.filled_gaps = markers.filled_gaps;
  res.clamped_samples = res.sensors.clamped_samples;

  const std::size_t n = markers.frames();
  for (auto& v : res.wrap_rad) v.resize(n);
  for (auto& v : res.force_n) v.resize(n);
  for (auto& v : res.pressure_pa) v.resize(n);
  res.funnel_force_n.resize(n);
  res.tension_used_n.resize(n);
  res.torso_area_m2.resize(n);
  res.torso_planarity_m2.resize(n);
  res.cuff_l_m.resize(n);
  res.cuff_r_m.resize(n);
  res.elevation_deg.resize(n);
  res.plane_deg.resize(n);
  res.plane_undefined.resize(n);

  for (std::size_t k = 0; k < n; ++k) {
    CablePath path = build_path(markers, cfg, k);
    if (cfg.pulley_radius_m) path = refine_contact_points(path, *cfg.pulley_radius_m);

    const double tension =
        used_tension(cfg, res.sensors.proximal[k], res.sensors.distal[k]);
    res.tension_used_n[k] = tension;
    for (int node = CablePath::kFirstInterior; node <= CablePath::kLastInterior; ++node) {
      const Vec3 force = node_force(path, tension, node);
      const int idx = node - 1;
      res.wrap_rad[idx][k] = path.wrap_rad[idx];
      res.force_n[idx][k] = norm(force);
      if (node <= 3) res.pressure_pa[idx][k] = node_pressure(res.force_n[idx][k],
                                                             cfg.pulley_area(idx));
      if (node == 4) res.funnel_force_n[k] = force;
    }

    const QuadArea q = quad_area(markers.at(Role::TU1, cfg, k), markers.at(Role::TU2, cfg, k),
                                 markers.at(Role::TU3, cfg, k), markers.at(Role::TU4, cfg, k));
    res.torso_area_m2[k] = q.area_m2;
    res.torso_planarity_m2[k] = q.planarity_gap_m2;

    res.cuff_l_m[k] = norm(markers.at(Role::C1, cfg, k) - markers.at(Role::C2, cfg, k));
    res.cuff_r_m[k] = solve_cuff_radius(res.cuff_l_m[k], cfg.cuff_arc_length_m);

    const Frame frame = build_frame(markers.at(Role::FrameOrigin, cfg, k),
                                    markers.at(Role::FrameA, cfg, k),
                                    markers.at(Role::FrameB, cfg, k));
    const ShoulderPose pose = shoulder_pose(markers.at(Role::Shoulder, cfg, k),
                                            markers.at(Role::Elbow, cfg, k), frame);
    res.elevation_deg[k] = pose.elevation_deg;
    res.plane_deg[k] = pose.plane_of_elevation_deg;
    res.plane_undefined[k] = pose.plane_undefined ? 1 : 0;
  }

  // Unpowered baseline: below-threshold proximal tension before the first step
  // of the torque command (all below-threshold frames if it never steps).
  std::size_t first_step = n;
  for (std::size_t k = 0; k < n; ++k)
    if (res.sensors.torque[k] >= 0.5 * cfg.torque_step_nm) {
      first_step = k;
      break;
    }
  for (std::size_t k = 0; k < first_step; ++k)
    if (res.sensors.proximal[k] < cfg.unpowered_tension_threshold_n)
      res.baseline_frames.push_back(k);

  res.torso_ratio = torso_ratio(res.torso_area_m2, res.baseline_frames);

  double r0 = 0.0;
  for (std::size_t k : res.baseline_frames) r0 += res.cuff_r_m[k];
  r0 /= static_cast<double>(res.baseline_frames.size());
  res.cuff_dv.resize(n);
  for (std::size_t k = 0; k < n; ++k) res.cuff_dv[k] = cuff_dv(res.cuff_r_m[k], r0);

  res.transmission = transmission_ratio(res.sensors, cfg.unpowered_tension_threshold_n);

  res.segmentation = segment(res.sensors.time, res.sensors.torque, cfg.torque_step_nm,
                             cfg.torque_max_nm);

  // Loading/unloading loops per repetition for the standard variable pairs.
  struct PairDef {
    const char* name;
    const std::vector<double>* x;
    const std::vector<double>* y;
  };
  const PairDef pairs[] = {
      {"cuff_dv_vs_distal", &res.sensors.distal, &res.cuff_dv},
      {"cuff_dv_vs_proximal", &res.sensors.proximal, &res.cuff_dv},
      {"torso_ratio_vs_proximal", &res.sensors.proximal, &res.torso_ratio},
      {"pressure_p2_vs_proximal", &res.sensors.proximal, &res.pressure_pa[1]},
  };
  for (std::size_t t = 0; t < res.segmentation.trials.size(); ++t) {
    const Trial& trial = res.segmentation.trials[t];
    for (std::size_t r = 0; r < trial.repetitions.size(); ++r) {
      const Repetition& rep = trial.repetitions[r];
      for (const auto& p : pairs) {
        AnalysisResult::HysteresisEntry entry;
        entry.trial = static_cast<int>(t);
        entry.repetition = static_cast<int>(r);
        entry.pair = p.name;
        entry.metrics = hysteresis(*p.x, *p.y, rep.start_frame, rep.end_frame + 1);
        res.hysteresis.push_back(std::move(entry));
      }
    }
  }

  return res;
}

}  // namespace ergo
