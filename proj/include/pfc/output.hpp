#pragma once

#include <string>
#include <vector>

#include "pfc/runner.hpp"

namespace pfc {

struct OutputBundle {
  std::string directory;
  std::vector<std::string> vtk_files;
  std::vector<std::string> csv_files;
};

/// Quadrature-point sample on the +n side of the interface, used for the
/// contact stress profiles.
struct InterfaceSample {
  double arc_s = 0.0;
  double x = 0.0;
  double y = 0.0;
  double sigma_n = 0.0;
  double tau = 0.0;
  ContactCondition condition = ContactCondition::Bulk;
};

/// Quadrature points within (0, band_elems * h] of the polyline along +n,
/// sorted by arc length. With the default band only the first row of points
/// above the interface is returned.
std::vector<InterfaceSample> interface_samples(const RunResult& result,
                                               double band_elems = 0.75);

/// Legacy ASCII VTK unstructured grid (quads) with nodal displacement and
/// phase field plus per-cell contact data.
void write_vtk(const std::string& path, const Mesh& mesh, const StepSnapshot& snap);

/// Writes the VTK series and the CSV tables (load-displacement, Newton
/// history, crack polyline, interface stresses) for a completed run.
OutputBundle write_outputs(const RunResult& result, const std::string& directory);

/// Fixed-format float for reproducible text output (17 significant digits).
std::string format_double(double v);

}  // namespace pfc
