#include "pfc/output.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace pfc {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<InterfaceSample> interface_samples(const RunResult& result, double band_elems) {
  std::vector<InterfaceSample> out;
  if (!result.has_polyline) return out;
  const Mesh& mesh = result.mesh;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const double band = band_elems * mesh.element_size(e);
    const auto pts = mesh.quad_points_xy(e);
    for (int q = 0; q < 4; ++q) {
      const auto& qp = result.states[e * 4 + q];
      if (!qp.has_vectors) continue;
      // Signed distance along +n from the nearest polyline point.
      double best = std::numeric_limits<double>::infinity();
      Vec2 nearest{0.0, 0.0};
      for (int si = 0; si < result.polyline.n_segments(); ++si) {
        const Segment s = result.polyline.segment(si);
        const auto proj = project_to_segment(pts[q], s);
        if (proj.distance < best) {
          best = proj.distance;
          nearest = s.a + proj.t * (s.b - s.a);
        }
      }
      const double signed_dist = (pts[q] - nearest).dot(qp.n);
      if (signed_dist <= 0.0 || signed_dist > band) continue;
      const auto& st = result.stresses[e * 4 + q];
      InterfaceSample smp;
      smp.arc_s = qp.arc_s;
      smp.x = pts[q].x();
      smp.y = pts[q].y();
      smp.sigma_n = st.sigma.nn(qp.n);
      smp.tau = st.sigma.nm(qp.n, qp.m);
      smp.condition = qp.condition;
      out.push_back(smp);
    }
  }
  std::sort(out.begin(), out.end(), [](const InterfaceSample& a, const InterfaceSample& b) {
    if (a.arc_s != b.arc_s) return a.arc_s < b.arc_s;
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  });
  return out;
}

void write_vtk(const std::string& path, const Mesh& mesh, const StepSnapshot& snap) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write VTK file: " + path);
  f << "# vtk DataFile Version 3.0\n";
  f << "phase-field frictional crack simulation, step " << snap.step << "\n";
  f << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
  f << "POINTS " << mesh.n_nodes() << " double\n";
  for (int i = 0; i < mesh.n_nodes(); ++i) {
    f << format_double(mesh.node(i).x()) << ' ' << format_double(mesh.node(i).y()) << " 0\n";
  }
  f << "CELLS " << mesh.n_elements() << ' ' << mesh.n_elements() * 5 << "\n";
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const auto& n = mesh.element(e).nodes;
    f << "4 " << n[0] << ' ' << n[1] << ' ' << n[2] << ' ' << n[3] << "\n";
  }
  f << "CELL_TYPES " << mesh.n_elements() << "\n";
  for (int e = 0; e < mesh.n_elements(); ++e) f << "9\n";

  f << "POINT_DATA " << mesh.n_nodes() << "\n";
  f << "VECTORS displacement double\n";
  for (int i = 0; i < mesh.n_nodes(); ++i) {
    f << format_double(snap.u[2 * i]) << ' ' << format_double(snap.u[2 * i + 1]) << " 0\n";
  }
  f << "SCALARS phase double 1\nLOOKUP_TABLE default\n";
  for (int i = 0; i < mesh.n_nodes(); ++i) f << format_double(snap.d[i]) << "\n";

  f << "CELL_DATA " << mesh.n_elements() << "\n";
  f << "SCALARS contact_condition int 1\nLOOKUP_TABLE default\n";
  for (int e = 0; e < mesh.n_elements(); ++e) f << snap.cell_condition[e] << "\n";
  f << "SCALARS sigma_n double 1\nLOOKUP_TABLE default\n";
  for (int e = 0; e < mesh.n_elements(); ++e) f << format_double(snap.cell_sigma_n[e]) << "\n";
  f << "SCALARS tau double 1\nLOOKUP_TABLE default\n";
  for (int e = 0; e < mesh.n_elements(); ++e) f << format_double(snap.cell_tau[e]) << "\n";
  f << "SCALARS mean_stress double 1\nLOOKUP_TABLE default\n";
  for (int e = 0; e < mesh.n_elements(); ++e) f << format_double(snap.cell_mean_stress[e]) << "\n";
  f << "SCALARS von_mises double 1\nLOOKUP_TABLE default\n";
  for (int e = 0; e < mesh.n_elements(); ++e) f << format_double(snap.cell_von_mises[e]) << "\n";
}

OutputBundle write_outputs(const RunResult& result, const std::string& directory) {
  if (result.steps.empty()) {
    throw std::runtime_error("write_outputs: run produced no completed steps");
  }
  namespace fs = std::filesystem;
  fs::create_directories(directory);
  OutputBundle bundle;
  bundle.directory = directory;

  for (const auto& snap : result.snapshots) {
    char name[64];
    std::snprintf(name, sizeof(name), "step_%04d.vtk", snap.step);
    const std::string path = directory + "/" + name;
    write_vtk(path, result.mesh, snap);
    bundle.vtk_files.push_back(path);
  }

  {
    const std::string path = directory + "/load_displacement.csv";
    std::ofstream f(path);
    f << "step,prescribed_displacement,reaction_force\n";
    for (const auto& s : result.steps) {
      f << s.step << ',' << format_double(s.prescribed) << ',' << format_double(s.reaction)
        << "\n";
    }
    bundle.csv_files.push_back(path);
  }
  {
    const std::string path = directory + "/newton_history.csv";
    std::ofstream f(path);
    f << "step,iteration,residual_norm\n";
    for (const auto& s : result.steps) {
      for (std::size_t k = 0; k < s.residual_norms.size(); ++k) {
        f << s.step << ',' << k << ',' << format_double(s.residual_norms[k]) << "\n";
      }
    }
    bundle.csv_files.push_back(path);
  }
  if (result.has_polyline) {
    const std::string path = directory + "/crack_polyline.csv";
    std::ofstream f(path);
    f << "x,y\n";
    for (const auto& v : result.polyline.vertices) {
      f << format_double(v.x()) << ',' << format_double(v.y()) << "\n";
    }
    bundle.csv_files.push_back(path);
  }
  {
    const auto samples = interface_samples(result);
    if (!samples.empty()) {
      const std::string path = directory + "/interface_stress.csv";
      std::ofstream f(path);
      f << "x,normal_stress,tangential_stress\n";
      for (const auto& s : samples) {
        f << format_double(s.x) << ',' << format_double(s.sigma_n) << ','
          << format_double(s.tau) << "\n";
      }
      bundle.csv_files.push_back(path);
    }
  }
  return bundle;
}

}  // namespace pfc
