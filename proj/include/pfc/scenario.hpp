#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "pfc/crackpath.hpp"
#include "pfc/geometry.hpp"
#include "pfc/mesh.hpp"
#include "pfc/phasefield.hpp"
#include "pfc/solver.hpp"

namespace pfc {

struct MaterialRegion {
  Rect rect;
  double E = 0.0;
  double nu = 0.0;
};

/// Per-component boundary schedule specification. Exactly one of the three
/// forms is used: a constant value, a per-step increment, or explicit values.
struct BcComponentSpec {
  bool active = false;
  enum class Form { Constant, Increment, Values } form = Form::Constant;
  double value = 0.0;
  std::vector<double> values;

  double at_step(int step) const {
    switch (form) {
      case Form::Constant: return value;
      case Form::Increment: return value * step;
      case Form::Values: return values[step - 1];
    }
    return 0.0;
  }
};

struct BcSpec {
  BcKind kind = BcKind::Displacement;
  BoundaryId boundary = BoundaryId::Top;
  std::optional<Vec2> at;  // point pin (displacement only)
  BcComponentSpec x;
  BcComponentSpec y;
};

struct OutputSettings {
  int vtk_every = 1;  // 0 disables per-step VTK (final step always written)
  std::string reaction_boundary = "top";
  int reaction_component = 1;  // 0 = x, 1 = y
};

enum class RunMode { Stationary, Propagation };

/// Where the interface unit vectors come from: the declared crack geometry
/// (exact frames, natural for stationary interfaces) or the polyline
/// extracted from the phase field (required once the crack evolves).
enum class VectorSource { Auto, Analytic, Extracted };

struct Scenario {
  int schema_version = 1;
  std::string name = "scenario";
  RunMode mode = RunMode::Stationary;
  StressModel model = StressModel::Contact;
  Rect domain;
  int base_nx = 8;
  int base_ny = 8;
  double E = 1e9;
  double nu = 0.3;
  std::vector<MaterialRegion> material_regions;
  std::vector<Segment> crack_segments;
  SortAxis sort_axis = SortAxis::Auto;
  VectorSource vector_source = VectorSource::Auto;

  bool use_analytic_vectors() const {
    if (vector_source == VectorSource::Auto) return mode == RunMode::Stationary;
    return vector_source == VectorSource::Analytic;
  }
  FrictionMap friction;
  PhaseFieldParams phasefield{0.01, 1.0, 1e3};
  RefinementCriterion refinement;
  std::vector<Segment> refine_extra_segments;
  std::vector<BcSpec> bcs;
  int steps = 1;
  SolverConfig solver;
  OutputSettings output;

  /// Expanded per-step schedules for the solver.
  std::vector<BoundaryCondition> expand_bcs() const;
};

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);

/// Parses and validates a scenario file; errors carry the offending field path.
Scenario parse_scenario(const std::string& path);

/// Applies a dotted-path override such as "friction.mu=0.19" to a JSON document.
void apply_override(nlohmann::json& j, const std::string& key_value);

std::vector<std::string> preset_names();
Scenario builtin_scenario(const std::string& name);
std::vector<Scenario> builtin_scenarios();

}  // namespace pfc
