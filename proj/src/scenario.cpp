#include "pfc/scenario.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace pfc {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw std::invalid_argument(path + ": " + msg);
}

double get_num(const json& j, const std::string& path, const char* key,
               std::optional<double> def = {}) {
  if (!j.contains(key)) {
    if (def) return *def;
    fail(path + "." + key, "missing required number");
  }
  if (!j.at(key).is_number()) fail(path + "." + key, "expected a number");
  return j.at(key).get<double>();
}

std::string get_str(const json& j, const std::string& path, const char* key,
                    std::optional<std::string> def = {}) {
  if (!j.contains(key)) {
    if (def) return *def;
    fail(path + "." + key, "missing required string");
  }
  if (!j.at(key).is_string()) fail(path + "." + key, "expected a string");
  return j.at(key).get<std::string>();
}

BoundaryId boundary_from_string(const std::string& s, const std::string& path) {
  if (s == "left") return BoundaryId::Left;
  if (s == "right") return BoundaryId::Right;
  if (s == "bottom") return BoundaryId::Bottom;
  if (s == "top") return BoundaryId::Top;
  fail(path, "unknown boundary '" + s + "' (expected left/right/bottom/top)");
}

const char* boundary_to_string(BoundaryId b) {
  switch (b) {
    case BoundaryId::Left: return "left";
    case BoundaryId::Right: return "right";
    case BoundaryId::Bottom: return "bottom";
    case BoundaryId::Top: return "top";
  }
  return "?";
}

Rect rect_from_json(const json& j, const std::string& path) {
  return {get_num(j, path, "x0"), get_num(j, path, "y0"), get_num(j, path, "x1"),
          get_num(j, path, "y1")};
}

json rect_to_json(const Rect& r) {
  return json{{"x0", r.x0}, {"y0", r.y0}, {"x1", r.x1}, {"y1", r.y1}};
}

Segment segment_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 4) fail(path, "expected [x0, y0, x1, y1]");
  return {{j[0].get<double>(), j[1].get<double>()}, {j[2].get<double>(), j[3].get<double>()}};
}

json segment_to_json(const Segment& s) {
  return json::array({s.a.x(), s.a.y(), s.b.x(), s.b.y()});
}

BcComponentSpec component_from_json(const json& j, const std::string& path) {
  BcComponentSpec c;
  c.active = true;
  const int forms = j.contains("value") + j.contains("increment") + j.contains("values");
  if (forms != 1) fail(path, "expected exactly one of value/increment/values");
  if (j.contains("value")) {
    c.form = BcComponentSpec::Form::Constant;
    c.value = get_num(j, path, "value");
  } else if (j.contains("increment")) {
    c.form = BcComponentSpec::Form::Increment;
    c.value = get_num(j, path, "increment");
  } else {
    c.form = BcComponentSpec::Form::Values;
    if (!j.at("values").is_array()) fail(path + ".values", "expected an array");
    for (const auto& v : j.at("values")) c.values.push_back(v.get<double>());
  }
  return c;
}

json component_to_json(const BcComponentSpec& c) {
  switch (c.form) {
    case BcComponentSpec::Form::Constant: return json{{"value", c.value}};
    case BcComponentSpec::Form::Increment: return json{{"increment", c.value}};
    case BcComponentSpec::Form::Values: return json{{"values", c.values}};
  }
  return {};
}

void validate(const Scenario& s) {
  if (!(s.domain.width() > 0.0) || !(s.domain.height() > 0.0)) {
    fail("domain", "must have positive width and height");
  }
  if (s.base_nx < 1 || s.base_ny < 1) fail("base_divisions", "must be >= 1");
  if (!(s.E > 0.0)) fail("material.E", "must be positive");
  if (!(s.nu > -1.0 && s.nu < 0.5)) fail("material.nu", "must lie in (-1, 0.5)");
  for (std::size_t i = 0; i < s.material_regions.size(); ++i) {
    const auto& mr = s.material_regions[i];
    const std::string p = "material_regions[" + std::to_string(i) + "]";
    if (!(mr.E > 0.0)) fail(p + ".E", "must be positive");
    if (!(mr.nu > -1.0 && mr.nu < 0.5)) fail(p + ".nu", "must lie in (-1, 0.5)");
  }
  for (std::size_t i = 0; i < s.crack_segments.size(); ++i) {
    const auto& seg = s.crack_segments[i];
    const std::string p = "crack.segments[" + std::to_string(i) + "]";
    if (!s.domain.contains(seg.a) || !s.domain.contains(seg.b)) {
      fail(p, "crack segment endpoint outside the domain");
    }
  }
  if (!(s.phasefield.L > 0.0)) fail("phasefield.L", "must be positive");
  if (!(s.phasefield.Gc > 0.0)) fail("phasefield.Gc", "must be positive");
  if (!(s.phasefield.init_magnitude > 0.0)) fail("phasefield.init_magnitude", "must be positive");
  if (!(s.refinement.phase_threshold > 0.0 && s.refinement.phase_threshold < 1.0)) {
    fail("refinement.phase_threshold", "must lie in (0, 1)");
  }
  if (!(s.refinement.target_ratio >= 1.0)) fail("refinement.target_ratio", "must be >= 1");
  if (s.refinement.max_level < 0 || s.refinement.max_level > 28) {
    fail("refinement.max_level", "must lie in [0, 28]");
  }
  if (s.friction.default_mu < 0.0) fail("friction.mu", "must be >= 0");
  for (std::size_t i = 0; i < s.friction.intervals.size(); ++i) {
    const auto& iv = s.friction.intervals[i];
    const std::string p = "friction.intervals[" + std::to_string(i) + "]";
    if (iv.mu < 0.0) fail(p + ".mu", "must be >= 0");
    if (!(iv.s1 > iv.s0)) fail(p, "interval must have to > from");
    for (std::size_t k = 0; k < i; ++k) {
      const auto& other = s.friction.intervals[k];
      if (iv.s0 < other.s1 && other.s0 < iv.s1) fail(p, "friction intervals overlap");
    }
  }
  if (s.steps < 1) fail("steps", "must be >= 1");
  for (std::size_t i = 0; i < s.bcs.size(); ++i) {
    const std::string p = "boundary_conditions[" + std::to_string(i) + "]";
    const auto& bc = s.bcs[i];
    if (!bc.x.active && !bc.y.active) fail(p, "no active component");
    if (bc.at && !s.domain.contains(*bc.at)) fail(p + ".at", "pin point outside the domain");
    for (const auto* c : {&bc.x, &bc.y}) {
      if (c->active && c->form == BcComponentSpec::Form::Values &&
          static_cast<int>(c->values.size()) != s.steps) {
        fail(p, "values schedule length must equal steps");
      }
    }
    for (std::size_t k = 0; k < i; ++k) {
      const auto& other = s.bcs[k];
      if (other.boundary != bc.boundary || other.kind == bc.kind) continue;
      if ((bc.x.active && other.x.active) || (bc.y.active && other.y.active)) {
        fail(p, "displacement and traction on the same boundary component");
      }
    }
  }
  if (!(s.solver.newton_tol_rel > 0.0)) fail("solver.newton_tol_rel", "must be positive");
  if (s.solver.newton_tol_abs < 0.0) fail("solver.newton_tol_abs", "must be >= 0");
  if (s.solver.max_iter < 1) fail("solver.max_iter", "must be >= 1");
  if (s.solver.initial_contact_guess != ContactCondition::Slip &&
      s.solver.initial_contact_guess != ContactCondition::Stick) {
    fail("solver.initial_contact_guess", "must be slip or stick");
  }
  if (s.output.vtk_every < 0) fail("output.vtk_every", "must be >= 0");
  if (s.output.reaction_component != 0 && s.output.reaction_component != 1) {
    fail("output.reaction_component", "must be x or y");
  }
}

}  // namespace

std::vector<BoundaryCondition> Scenario::expand_bcs() const {
  std::vector<BoundaryCondition> out;
  out.reserve(bcs.size());
  for (const auto& spec : bcs) {
    BoundaryCondition bc;
    bc.kind = spec.kind;
    bc.boundary = spec.boundary;
    bc.at = spec.at;
    for (int c = 0; c < 2; ++c) {
      const BcComponentSpec& in = (c == 0) ? spec.x : spec.y;
      ComponentSchedule& sched = (c == 0) ? bc.x : bc.y;
      if (!in.active) continue;
      sched.active = true;
      sched.values.resize(steps);
      for (int k = 1; k <= steps; ++k) sched.values[k - 1] = in.at_step(k);
    }
    out.push_back(std::move(bc));
  }
  return out;
}

Scenario scenario_from_json(const json& j) {
  Scenario s;
  if (!j.is_object()) fail("$", "scenario must be a JSON object");
  const int version = static_cast<int>(get_num(j, "$", "schema_version", 1.0));
  if (version != 1) fail("schema_version", "unsupported version " + std::to_string(version));
  s.schema_version = version;
  s.name = get_str(j, "$", "name", "scenario");

  const std::string mode = get_str(j, "$", "mode", "stationary");
  if (mode == "stationary") {
    s.mode = RunMode::Stationary;
  } else if (mode == "propagation") {
    s.mode = RunMode::Propagation;
  } else {
    fail("mode", "expected stationary or propagation");
  }
  const std::string model = get_str(j, "$", "model", "contact");
  if (model == "contact") {
    s.model = StressModel::Contact;
  } else if (model == "amor") {
    s.model = StressModel::Amor;
  } else {
    fail("model", "expected contact or amor");
  }

  if (!j.contains("domain")) fail("domain", "missing");
  s.domain = rect_from_json(j.at("domain"), "domain");

  if (j.contains("base_divisions")) {
    const auto& bd = j.at("base_divisions");
    if (!bd.is_array() || bd.size() != 2) fail("base_divisions", "expected [nx, ny]");
    s.base_nx = bd[0].get<int>();
    s.base_ny = bd[1].get<int>();
  }

  if (!j.contains("material")) fail("material", "missing");
  s.E = get_num(j.at("material"), "material", "E");
  s.nu = get_num(j.at("material"), "material", "nu");

  if (j.contains("material_regions")) {
    int i = 0;
    for (const auto& mr : j.at("material_regions")) {
      const std::string p = "material_regions[" + std::to_string(i++) + "]";
      MaterialRegion reg;
      reg.rect = rect_from_json(mr, p);
      reg.E = get_num(mr, p, "E");
      reg.nu = get_num(mr, p, "nu");
      s.material_regions.push_back(reg);
    }
  }

  if (j.contains("crack")) {
    const auto& cr = j.at("crack");
    if (cr.contains("segments")) {
      int i = 0;
      for (const auto& seg : cr.at("segments")) {
        s.crack_segments.push_back(
            segment_from_json(seg, "crack.segments[" + std::to_string(i++) + "]"));
      }
    }
    const std::string ax = get_str(cr, "crack", "sort_axis", "auto");
    if (ax == "x") {
      s.sort_axis = SortAxis::X;
    } else if (ax == "y") {
      s.sort_axis = SortAxis::Y;
    } else if (ax == "auto") {
      s.sort_axis = SortAxis::Auto;
    } else {
      fail("crack.sort_axis", "expected x, y or auto");
    }
    const std::string vs = get_str(cr, "crack", "vectors", "auto");
    if (vs == "auto") {
      s.vector_source = VectorSource::Auto;
    } else if (vs == "analytic") {
      s.vector_source = VectorSource::Analytic;
    } else if (vs == "extracted") {
      s.vector_source = VectorSource::Extracted;
    } else {
      fail("crack.vectors", "expected auto, analytic or extracted");
    }
  }

  if (j.contains("friction")) {
    const auto& fr = j.at("friction");
    s.friction.default_mu = get_num(fr, "friction", "mu", 0.0);
    if (fr.contains("intervals")) {
      int i = 0;
      for (const auto& iv : fr.at("intervals")) {
        const std::string p = "friction.intervals[" + std::to_string(i++) + "]";
        s.friction.intervals.push_back(
            {get_num(iv, p, "from"), get_num(iv, p, "to"), get_num(iv, p, "mu")});
      }
    }
  }

  if (!j.contains("phasefield")) fail("phasefield", "missing");
  {
    const auto& pf = j.at("phasefield");
    s.phasefield.L = get_num(pf, "phasefield", "L");
    s.phasefield.Gc = get_num(pf, "phasefield", "Gc", 1.0);
    s.phasefield.init_magnitude = get_num(pf, "phasefield", "init_magnitude", 1e3);
  }

  if (j.contains("refinement")) {
    const auto& rf = j.at("refinement");
    s.refinement.phase_threshold = get_num(rf, "refinement", "phase_threshold", 0.1);
    s.refinement.target_ratio = get_num(rf, "refinement", "target_ratio", 4.0);
    s.refinement.max_level = static_cast<int>(get_num(rf, "refinement", "max_level", 12.0));
    if (rf.contains("extra_segments")) {
      int i = 0;
      for (const auto& seg : rf.at("extra_segments")) {
        s.refine_extra_segments.push_back(segment_from_json(
            seg, "refinement.extra_segments[" + std::to_string(i++) + "]"));
      }
    }
  }

  if (j.contains("boundary_conditions")) {
    int i = 0;
    for (const auto& bj : j.at("boundary_conditions")) {
      const std::string p = "boundary_conditions[" + std::to_string(i++) + "]";
      BcSpec bc;
      const std::string kind = get_str(bj, p, "kind");
      if (kind == "displacement") {
        bc.kind = BcKind::Displacement;
      } else if (kind == "traction") {
        bc.kind = BcKind::Traction;
      } else {
        fail(p + ".kind", "expected displacement or traction");
      }
      if (bj.contains("at")) {
        const auto& at = bj.at("at");
        if (!at.is_array() || at.size() != 2) fail(p + ".at", "expected [x, y]");
        bc.at = Vec2{at[0].get<double>(), at[1].get<double>()};
        if (bc.kind != BcKind::Displacement) fail(p + ".at", "point pins must be displacements");
      } else {
        bc.boundary = boundary_from_string(get_str(bj, p, "boundary"), p + ".boundary");
      }
      if (bj.contains("x")) bc.x = component_from_json(bj.at("x"), p + ".x");
      if (bj.contains("y")) bc.y = component_from_json(bj.at("y"), p + ".y");
      s.bcs.push_back(std::move(bc));
    }
  }

  s.steps = static_cast<int>(get_num(j, "$", "steps", 1.0));

  if (j.contains("solver")) {
    const auto& sv = j.at("solver");
    s.solver.newton_tol_rel = get_num(sv, "solver", "newton_tol_rel", 1e-9);
    s.solver.newton_tol_abs = get_num(sv, "solver", "newton_tol_abs", 0.0);
    s.solver.max_iter = static_cast<int>(get_num(sv, "solver", "max_iter", 25.0));
    const std::string guess = get_str(sv, "solver", "initial_contact_guess", "slip");
    if (guess == "slip") {
      s.solver.initial_contact_guess = ContactCondition::Slip;
    } else if (guess == "stick") {
      s.solver.initial_contact_guess = ContactCondition::Stick;
    } else {
      fail("solver.initial_contact_guess", "expected slip or stick");
    }
  }

  if (j.contains("output")) {
    const auto& ou = j.at("output");
    s.output.vtk_every = static_cast<int>(get_num(ou, "output", "vtk_every", 1.0));
    s.output.reaction_boundary = get_str(ou, "output", "reaction_boundary", "top");
    boundary_from_string(s.output.reaction_boundary, "output.reaction_boundary");
    const std::string rc = get_str(ou, "output", "reaction_component", "y");
    if (rc == "x") {
      s.output.reaction_component = 0;
    } else if (rc == "y") {
      s.output.reaction_component = 1;
    } else {
      fail("output.reaction_component", "expected x or y");
    }
  }

  validate(s);
  return s;
}

json scenario_to_json(const Scenario& s) {
  json j;
  j["schema_version"] = s.schema_version;
  j["name"] = s.name;
  j["mode"] = (s.mode == RunMode::Stationary) ? "stationary" : "propagation";
  j["model"] = (s.model == StressModel::Contact) ? "contact" : "amor";
  j["domain"] = rect_to_json(s.domain);
  j["base_divisions"] = json::array({s.base_nx, s.base_ny});
  j["material"] = json{{"E", s.E}, {"nu", s.nu}};
  if (!s.material_regions.empty()) {
    json regions = json::array();
    for (const auto& mr : s.material_regions) {
      json r = rect_to_json(mr.rect);
      r["E"] = mr.E;
      r["nu"] = mr.nu;
      regions.push_back(r);
    }
    j["material_regions"] = regions;
  }
  {
    json crack;
    json segs = json::array();
    for (const auto& seg : s.crack_segments) segs.push_back(segment_to_json(seg));
    crack["segments"] = segs;
    crack["sort_axis"] =
        (s.sort_axis == SortAxis::Auto) ? "auto" : ((s.sort_axis == SortAxis::X) ? "x" : "y");
    crack["vectors"] = (s.vector_source == VectorSource::Auto)
                           ? "auto"
                           : (s.vector_source == VectorSource::Analytic ? "analytic"
                                                                        : "extracted");
    j["crack"] = crack;
  }
  {
    json fr{{"mu", s.friction.default_mu}};
    if (!s.friction.intervals.empty()) {
      json ivs = json::array();
      for (const auto& iv : s.friction.intervals) {
        ivs.push_back(json{{"from", iv.s0}, {"to", iv.s1}, {"mu", iv.mu}});
      }
      fr["intervals"] = ivs;
    }
    j["friction"] = fr;
  }
  j["phasefield"] = json{{"L", s.phasefield.L},
                         {"Gc", s.phasefield.Gc},
                         {"init_magnitude", s.phasefield.init_magnitude}};
  {
    json rf{{"phase_threshold", s.refinement.phase_threshold},
            {"target_ratio", s.refinement.target_ratio},
            {"max_level", s.refinement.max_level}};
    if (!s.refine_extra_segments.empty()) {
      json segs = json::array();
      for (const auto& seg : s.refine_extra_segments) segs.push_back(segment_to_json(seg));
      rf["extra_segments"] = segs;
    }
    j["refinement"] = rf;
  }
  {
    json bcs = json::array();
    for (const auto& bc : s.bcs) {
      json bj;
      bj["kind"] = (bc.kind == BcKind::Displacement) ? "displacement" : "traction";
      if (bc.at) {
        bj["at"] = json::array({bc.at->x(), bc.at->y()});
      } else {
        bj["boundary"] = boundary_to_string(bc.boundary);
      }
      if (bc.x.active) bj["x"] = component_to_json(bc.x);
      if (bc.y.active) bj["y"] = component_to_json(bc.y);
      bcs.push_back(bj);
    }
    j["boundary_conditions"] = bcs;
  }
  j["steps"] = s.steps;
  j["solver"] = json{
      {"newton_tol_rel", s.solver.newton_tol_rel},
      {"newton_tol_abs", s.solver.newton_tol_abs},
      {"max_iter", s.solver.max_iter},
      {"initial_contact_guess",
       (s.solver.initial_contact_guess == ContactCondition::Stick) ? "stick" : "slip"}};
  j["output"] = json{{"vtk_every", s.output.vtk_every},
                     {"reaction_boundary", s.output.reaction_boundary},
                     {"reaction_component", s.output.reaction_component == 0 ? "x" : "y"}};
  return j;
}

Scenario parse_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("scenario JSON parse error in " + path + ": " + e.what());
  }
  return scenario_from_json(j);
}

void apply_override(json& j, const std::string& key_value) {
  const auto eq = key_value.find('=');
  if (eq == std::string::npos) {
    throw std::invalid_argument("override must look like key.path=value: " + key_value);
  }
  const std::string path = key_value.substr(0, eq);
  const std::string value = key_value.substr(eq + 1);

  json* cur = &j;
  std::stringstream ss(path);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  if (parts.empty()) throw std::invalid_argument("empty override path");
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) cur = &((*cur)[parts[i]]);

  json parsed = json::parse(value, nullptr, false);
  if (parsed.is_discarded()) parsed = value;  // plain string
  (*cur)[parts.back()] = parsed;
}

namespace {

Scenario internal_crack_preset() {
  Scenario s;
  s.name = "internal_crack";
  s.mode = RunMode::Stationary;
  s.domain = {0.0, 0.0, 1.0, 1.0};
  s.base_nx = s.base_ny = 16;
  s.E = 10e9;
  s.nu = 0.3;
  s.crack_segments = {{{0.3, 0.33}, {0.7, 0.68}}};
  s.friction.default_mu = 0.1;
  s.phasefield = {0.008, 1.0, 1e3};
  s.refinement = {0.1, 4.0, 12};
  // Roller support at the bottom plus a corner pin keeps the far field
  // homogeneous under the vertical compression.
  BcSpec bottom;
  bottom.kind = BcKind::Displacement;
  bottom.boundary = BoundaryId::Bottom;
  bottom.y = {true, BcComponentSpec::Form::Constant, 0.0, {}};
  BcSpec pin;
  pin.kind = BcKind::Displacement;
  pin.at = Vec2{0.0, 0.0};
  pin.x = {true, BcComponentSpec::Form::Constant, 0.0, {}};
  BcSpec top;
  top.kind = BcKind::Displacement;
  top.boundary = BoundaryId::Top;
  top.y = {true, BcComponentSpec::Form::Increment, -0.01, {}};
  s.bcs = {bottom, pin, top};
  s.steps = 10;
  s.solver.initial_contact_guess = ContactCondition::Slip;
  return s;
}

Scenario inclined_interface_preset() {
  Scenario s = internal_crack_preset();
  s.name = "inclined_interface";
  // Interface through the whole domain at angle atan(0.2).
  s.crack_segments = {{{0.0, 0.4}, {1.0, 0.6}}};
  s.E = 1000e6;
  s.friction.default_mu = 0.19;
  return s;
}

Scenario block_sliding_preset() {
  Scenario s;
  s.name = "block_sliding";
  s.mode = RunMode::Stationary;
  // Elastic block (4.8 m x 1.6 m) on a foundation strip made rigid by a
  // 1e9 stiffness factor. Interface along y = 0.8.
  s.domain = {0.0, 0.0, 4.8, 2.4};
  s.base_nx = 24;
  s.base_ny = 12;
  s.E = 1000e3;
  s.nu = 0.3;
  s.material_regions = {{{0.0, 0.0, 4.8, 0.8}, 1000e3 * 1e9, 0.3}};
  s.crack_segments = {{{0.0, 0.8}, {4.8, 0.8}}};
  s.sort_axis = SortAxis::X;
  s.friction.default_mu = 0.0;
  s.friction.intervals = {{0.6, 4.2, 0.5}};
  s.phasefield = {0.016, 1.0, 1e3};
  s.refinement = {0.1, 4.0, 12};
  BcSpec bottom;
  bottom.kind = BcKind::Displacement;
  bottom.boundary = BoundaryId::Bottom;
  bottom.x = {true, BcComponentSpec::Form::Constant, 0.0, {}};
  bottom.y = {true, BcComponentSpec::Form::Constant, 0.0, {}};
  // Traction magnitudes read from the setup figure: uniform pressure on the
  // top face and a leftward shear on the right face of the block.
  BcSpec top;
  top.kind = BcKind::Traction;
  top.boundary = BoundaryId::Top;
  top.y = {true, BcComponentSpec::Form::Constant, -40e3, {}};
  BcSpec right;
  right.kind = BcKind::Traction;
  right.boundary = BoundaryId::Right;
  right.x = {true, BcComponentSpec::Form::Constant, -20e3, {}};
  s.bcs = {bottom, top, right};
  s.steps = 1;
  s.solver.newton_tol_rel = 1e-6;
  s.solver.max_iter = 40;
  s.solver.initial_contact_guess = ContactCondition::Slip;
  s.output.reaction_boundary = "bottom";
  s.output.reaction_component = 1;
  return s;
}

Scenario inclined_propagation_preset() {
  Scenario s;
  s.name = "inclined_propagation";
  s.mode = RunMode::Propagation;
  s.domain = {0.0, 0.0, 2.0, 4.0};
  s.base_nx = 20;
  s.base_ny = 40;
  s.E = 10e9;
  s.nu = 0.3;
  s.crack_segments = {{{0.0, 0.7}, {1.3, 2.0}}};
  s.friction.default_mu = 0.30;
  s.phasefield = {0.016, 50e3, 1e3};
  s.refinement = {0.1, 4.0, 12};
  // Pre-refine along the expected 45-degree continuation of the crack.
  s.refine_extra_segments = {{{1.3, 2.0}, {2.0, 2.7}}};
  BcSpec bottom;
  bottom.kind = BcKind::Displacement;
  bottom.boundary = BoundaryId::Bottom;
  bottom.x = {true, BcComponentSpec::Form::Constant, 0.0, {}};
  bottom.y = {true, BcComponentSpec::Form::Constant, 0.0, {}};
  BcSpec top;
  top.kind = BcKind::Displacement;
  top.boundary = BoundaryId::Top;
  top.y = {true, BcComponentSpec::Form::Increment, -2e-4, {}};
  s.bcs = {bottom, top};
  s.steps = 150;
  s.solver.initial_contact_guess = ContactCondition::Slip;
  s.output.vtk_every = 10;
  return s;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"internal_crack", "inclined_interface", "block_sliding", "inclined_propagation"};
}

Scenario builtin_scenario(const std::string& name) {
  if (name == "internal_crack") return internal_crack_preset();
  if (name == "inclined_interface") return inclined_interface_preset();
  if (name == "block_sliding") return block_sliding_preset();
  if (name == "inclined_propagation") return inclined_propagation_preset();
  throw std::invalid_argument("unknown preset: " + name);
}

std::vector<Scenario> builtin_scenarios() {
  std::vector<Scenario> out;
  for (const auto& n : preset_names()) out.push_back(builtin_scenario(n));
  return out;
}

}  // namespace pfc
