#include "config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "error.hpp"

namespace ssa {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& msg) {
  throw Error(ErrorCode::kSchemaError, "schema-error: " + msg);
}

[[noreturn]] void semantic_error(const std::string& msg) {
  throw Error(ErrorCode::kSemanticError, "semantic-error: " + msg);
}

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) schema_error("unknown key '" + key + "' in " + where);
  }
}

double get_real(const json& v, const std::string& key) {
  if (!v.is_number()) schema_error("'" + key + "' must be a number");
  return v.get<double>();
}

std::uint64_t get_count(const json& v, const std::string& key) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d >= 0.0 && d == std::floor(d) && d < 1.8e19) {
      return static_cast<std::uint64_t>(d);
    }
  }
  if (v.is_number_integer() && v.get<std::int64_t>() < 0) {
    semantic_error("'" + key + "' must be non-negative");
  }
  schema_error("'" + key + "' must be a non-negative integer");
}

std::string get_string(const json& v, const std::string& key) {
  if (!v.is_string()) schema_error("'" + key + "' must be a string");
  return v.get<std::string>();
}

// Scalar broadcasts to every coordinate.
std::vector<double> get_vector(const json& v, const std::string& key,
                               std::size_t dim) {
  if (v.is_number()) return std::vector<double>(dim, v.get<double>());
  if (!v.is_array()) schema_error("'" + key + "' must be a number or array");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(get_real(e, key));
  return out;
}

Box get_box(const json& v, const std::string& key, std::size_t dim) {
  if (!v.is_object()) schema_error("'" + key + "' must be an object");
  reject_unknown(v, key, {"lower", "upper"});
  if (!v.contains("lower") || !v.contains("upper")) {
    schema_error("'" + key + "' needs 'lower' and 'upper'");
  }
  return Box{get_vector(v["lower"], key + ".lower", dim),
             get_vector(v["upper"], key + ".upper", dim)};
}

json box_json(const Box& b) { return json{{"lower", b.lower}, {"upper", b.upper}}; }

ExclusionRegion get_exclusion(const json& v, const Objective& f,
                              std::size_t dim) {
  std::string kind;
  if (v.is_string()) {
    kind = v.get<std::string>();
  } else if (v.is_object()) {
    if (!v.contains("kind")) schema_error("'exclusion' needs 'kind'");
    kind = get_string(v["kind"], "exclusion.kind");
  } else {
    schema_error("'exclusion' must be a string or object");
  }
  if (kind == "none") {
    if (v.is_object()) reject_unknown(v, "exclusion", {"kind"});
    return std::monostate{};
  }
  const auto& x_star = f.global_min_point();
  if (kind == "basin") {
    if (v.is_object()) reject_unknown(v, "exclusion", {"kind"});
    if (!x_star || !f.traits().basin_radius) {
      semantic_error("objective '" + f.name() + "' has no cataloged basin");
    }
    return BallRegion{*x_star, *f.traits().basin_radius};
  }
  if (!v.is_object()) schema_error("exclusion '" + kind + "' needs an object");
  if (kind == "ball") {
    reject_unknown(v, "exclusion", {"kind", "center", "radius"});
    if (!v.contains("radius")) schema_error("ball exclusion needs 'radius'");
    BallRegion ball;
    ball.radius = get_real(v["radius"], "exclusion.radius");
    if (v.contains("center")) {
      ball.center = get_vector(v["center"], "exclusion.center", dim);
    } else if (x_star) {
      ball.center = *x_star;
    } else {
      semantic_error("ball exclusion needs 'center' for this objective");
    }
    return ball;
  }
  if (kind == "box") {
    reject_unknown(v, "exclusion", {"kind", "lower", "upper"});
    json inner = v;
    inner.erase("kind");
    return BoxRegion{get_box(inner, "exclusion", dim)};
  }
  schema_error("unknown exclusion kind '" + kind + "'");
}

json exclusion_json(const ExclusionRegion& region) {
  if (const auto* ball = std::get_if<BallRegion>(&region)) {
    return json{{"kind", "ball"}, {"center", ball->center}, {"radius", ball->radius}};
  }
  if (const auto* box = std::get_if<BoxRegion>(&region)) {
    return json{{"kind", "box"}, {"lower", box->box.lower}, {"upper", box->box.upper}};
  }
  return json{{"kind", "none"}};
}

Mode parse_mode(const std::string& s) {
  if (s == "ssa") return Mode::kSsa;
  if (s == "deterministic") return Mode::kDeterministic;
  if (s == "langevin") return Mode::kLangevin;
  schema_error("unknown mode '" + s + "'");
}

bool box_inside_region(const Box& box, const ExclusionRegion& region) {
  if (const auto* ball = std::get_if<BallRegion>(&region)) {
    double far = 0.0;
    for (std::size_t i = 0; i < box.dim(); ++i) {
      const double a = std::abs(box.lower[i] - ball->center[i]);
      const double b = std::abs(box.upper[i] - ball->center[i]);
      far += std::max(a, b) * std::max(a, b);
    }
    return std::sqrt(far) <= ball->radius;
  }
  if (const auto* ex = std::get_if<BoxRegion>(&region)) {
    for (std::size_t i = 0; i < box.dim(); ++i) {
      if (ex->box.lower[i] > box.lower[i] || ex->box.upper[i] < box.upper[i]) {
        return false;
      }
    }
    return true;
  }
  return false;
}

}  // namespace

std::string_view to_string(Mode m) noexcept {
  switch (m) {
    case Mode::kSsa: return "ssa";
    case Mode::kDeterministic: return "deterministic";
    case Mode::kLangevin: return "langevin";
  }
  return "ssa";
}

bool excluded(const ExclusionRegion& region, std::span<const double> x) {
  if (const auto* ball = std::get_if<BallRegion>(&region)) {
    double r2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double dx = x[i] - ball->center[i];
      r2 += dx * dx;
    }
    return r2 < ball->radius * ball->radius;
  }
  if (const auto* box = std::get_if<BoxRegion>(&region)) {
    return box->box.contains(x);
  }
  return false;
}

std::uint64_t default_record_stride(std::uint64_t n_steps) noexcept {
  return std::max<std::uint64_t>(1, n_steps / 2000);
}

bool RunConfig::operator==(const RunConfig& o) const {
  return objective == o.objective && objective_params == o.objective_params &&
         dim == o.dim && mode == o.mode && schedule == o.schedule &&
         sigma == o.sigma && n_agents == o.n_agents && h == o.h &&
         n_steps == o.n_steps && init_box.lower == o.init_box.lower &&
         init_box.upper == o.init_box.upper && exclusion == o.exclusion &&
         initial_masses == o.initial_masses &&
         record_stride == o.record_stride && seed == o.seed &&
         trials == o.trials && sweep_n == o.sweep_n &&
         sweep_beta == o.sweep_beta && quadrature_points == o.quadrature_points;
}

Objective make_objective(const RunConfig& cfg) {
  return make_objective(cfg.objective, cfg.dim, cfg.objective_params);
}

RunConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end(), nullptr, true, true);
  } catch (const json::parse_error& e) {
    schema_error(std::string("malformed config: ") + e.what());
  }
  if (!root.is_object()) schema_error("config must be a JSON object");
  reject_unknown(root, "config",
                 {"objective", "dim", "mode", "schedule", "sigma", "N", "h",
                  "n_T", "init_box", "exclusion", "initial_mass",
                  "record_stride", "seed", "trials", "sweep",
                  "quadrature_points"});

  RunConfig cfg;
  if (!root.contains("objective")) schema_error("missing key 'objective'");
  const json& obj = root["objective"];
  if (obj.is_string()) {
    cfg.objective = obj.get<std::string>();
  } else if (obj.is_object()) {
    if (!obj.contains("name")) schema_error("'objective' needs 'name'");
    cfg.objective = get_string(obj["name"], "objective.name");
    for (const auto& [key, value] : obj.items()) {
      if (key != "name") cfg.objective_params[key] = get_real(value, "objective." + key);
    }
  } else {
    schema_error("'objective' must be a string or object");
  }
  if (root.contains("dim")) cfg.dim = get_count(root["dim"], "dim");
  if (cfg.dim == 0) semantic_error("'dim' must be at least 1");
  const Objective f = make_objective(cfg);

  if (root.contains("mode")) cfg.mode = parse_mode(get_string(root["mode"], "mode"));
  if (root.contains("schedule")) {
    const json& s = root["schedule"];
    if (!s.is_object()) schema_error("'schedule' must be an object");
    reject_unknown(s, "schedule", {"variant", "alpha", "beta", "sharpness"});
    if (s.contains("variant")) {
      cfg.schedule.variant =
          parse_schedule_variant(get_string(s["variant"], "schedule.variant"));
    }
    if (s.contains("alpha")) cfg.schedule.alpha = get_real(s["alpha"], "schedule.alpha");
    if (s.contains("beta")) cfg.schedule.beta = get_real(s["beta"], "schedule.beta");
    if (s.contains("sharpness")) {
      cfg.schedule.sharpness = get_real(s["sharpness"], "schedule.sharpness");
    }
  }
  if (root.contains("sigma")) cfg.sigma = get_real(root["sigma"], "sigma");
  if (root.contains("N")) cfg.n_agents = get_count(root["N"], "N");
  if (root.contains("h")) cfg.h = get_real(root["h"], "h");
  if (root.contains("n_T")) cfg.n_steps = get_count(root["n_T"], "n_T");
  cfg.init_box = root.contains("init_box")
                     ? get_box(root["init_box"], "init_box", cfg.dim)
                     : f.default_box();
  if (root.contains("exclusion")) {
    cfg.exclusion = get_exclusion(root["exclusion"], f, cfg.dim);
  }
  if (root.contains("initial_mass")) {
    const json& m = root["initial_mass"];
    if (m.is_string()) {
      if (m.get<std::string>() != "uniform") {
        schema_error("'initial_mass' must be \"uniform\" or an array");
      }
    } else if (m.is_array()) {
      for (const auto& e : m) cfg.initial_masses.push_back(get_real(e, "initial_mass"));
    } else {
      schema_error("'initial_mass' must be \"uniform\" or an array");
    }
  }
  cfg.record_stride = root.contains("record_stride")
                          ? get_count(root["record_stride"], "record_stride")
                          : default_record_stride(cfg.n_steps);
  if (root.contains("seed")) cfg.seed = get_count(root["seed"], "seed");
  if (root.contains("trials")) cfg.trials = get_count(root["trials"], "trials");
  if (root.contains("sweep")) {
    const json& s = root["sweep"];
    if (!s.is_object()) schema_error("'sweep' must be an object");
    reject_unknown(s, "sweep", {"N", "beta"});
    if (!s.contains("N") || !s.contains("beta")) {
      schema_error("'sweep' needs 'N' and 'beta'");
    }
    if (!s["N"].is_array() || !s["beta"].is_array()) {
      schema_error("'sweep.N' and 'sweep.beta' must be arrays");
    }
    for (const auto& e : s["N"]) cfg.sweep_n.push_back(get_count(e, "sweep.N"));
    for (const auto& e : s["beta"]) cfg.sweep_beta.push_back(get_real(e, "sweep.beta"));
  }
  if (root.contains("quadrature_points")) {
    cfg.quadrature_points = get_count(root["quadrature_points"], "quadrature_points");
  }
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void validate(RunConfig& cfg) {
  if (cfg.dim == 0) semantic_error("'dim' must be at least 1");
  (void)make_objective(cfg);
  if (!(cfg.h > 0.0) || !std::isfinite(cfg.h)) semantic_error("'h' must be > 0");
  if (cfg.n_agents == 0) semantic_error("'N' must be at least 1");
  if (cfg.record_stride == 0) semantic_error("'record_stride' must be at least 1");
  if (cfg.trials == 0) semantic_error("'trials' must be at least 1");
  if (cfg.quadrature_points < 2) semantic_error("'quadrature_points' must be >= 2");
  if (!(cfg.sigma >= 0.0) || !std::isfinite(cfg.sigma)) {
    semantic_error("'sigma' must be >= 0");
  }
  cfg.schedule.validate();

  const Box& box = cfg.init_box;
  if (box.lower.size() != cfg.dim || box.upper.size() != cfg.dim) {
    semantic_error("'init_box' must have dim coordinates");
  }
  for (std::size_t i = 0; i < cfg.dim; ++i) {
    if (!(box.lower[i] < box.upper[i])) {
      semantic_error("'init_box' is empty in coordinate " + std::to_string(i));
    }
  }
  if (const auto* ball = std::get_if<BallRegion>(&cfg.exclusion)) {
    if (ball->center.size() != cfg.dim) semantic_error("exclusion center has wrong dim");
    if (!(ball->radius >= 0.0)) semantic_error("exclusion radius must be >= 0");
  }
  if (const auto* ex = std::get_if<BoxRegion>(&cfg.exclusion)) {
    if (ex->box.dim() != cfg.dim || ex->box.upper.size() != cfg.dim) {
      semantic_error("exclusion box has wrong dim");
    }
  }
  if (box_inside_region(box, cfg.exclusion)) {
    semantic_error("exclusion region swallows init_box");
  }

  if (!cfg.initial_masses.empty()) {
    if (cfg.initial_masses.size() != cfg.n_agents) {
      semantic_error("'initial_mass' needs exactly N entries");
    }
    double total = 0.0;
    for (double m : cfg.initial_masses) {
      if (!(m > 0.0)) semantic_error("initial masses must be positive");
      total += m;
    }
    if (std::abs(total - 1.0) > 1e-12) semantic_error("initial masses must sum to 1");
  }

  if (cfg.sweep_n.empty() != cfg.sweep_beta.empty()) {
    semantic_error("'sweep' needs both N and beta values");
  }
  for (auto n : cfg.sweep_n) {
    if (n == 0) semantic_error("'sweep.N' entries must be >= 1");
  }
  for (double b : cfg.sweep_beta) {
    if (!(b > 0.0)) semantic_error("'sweep.beta' entries must be > 0");
  }

  switch (cfg.mode) {
    case Mode::kDeterministic: cfg.schedule = AnnealingSchedule::zero(); break;
    case Mode::kLangevin: cfg.schedule = AnnealingSchedule::constant(cfg.sigma); break;
    case Mode::kSsa: break;
  }
}

std::string serialize_config(const RunConfig& cfg) {
  json obj{{"name", cfg.objective}};
  for (const auto& [k, v] : cfg.objective_params) obj[k] = v;
  json root{
      {"objective", obj},
      {"dim", cfg.dim},
      {"mode", std::string(to_string(cfg.mode))},
      {"schedule",
       {{"variant", std::string(to_string(cfg.schedule.variant))},
        {"alpha", cfg.schedule.alpha},
        {"beta", cfg.schedule.beta},
        {"sharpness", cfg.schedule.sharpness}}},
      {"sigma", cfg.sigma},
      {"N", cfg.n_agents},
      {"h", cfg.h},
      {"n_T", cfg.n_steps},
      {"init_box", box_json(cfg.init_box)},
      {"exclusion", exclusion_json(cfg.exclusion)},
      {"record_stride", cfg.record_stride},
      {"seed", cfg.seed},
      {"trials", cfg.trials},
      {"quadrature_points", cfg.quadrature_points},
  };
  root["initial_mass"] =
      cfg.initial_masses.empty() ? json("uniform") : json(cfg.initial_masses);
  if (!cfg.sweep_n.empty()) {
    root["sweep"] = json{{"N", cfg.sweep_n}, {"beta", cfg.sweep_beta}};
  }
  return root.dump(2);
}

std::string config_hash(const RunConfig& cfg) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : serialize_config(cfg)) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace ssa
