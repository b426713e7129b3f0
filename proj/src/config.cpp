#include "eulerkin/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace eulerkin {

namespace {

int edit_distance(const std::string& a, const std::string& b) {
  std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

[[noreturn]] void unknown_key(const std::string& where, const std::string& key, int line,
                              const std::vector<std::string>& known) {
  std::string best;
  int best_d = 3;
  for (const auto& k : known) {
    const int d = edit_distance(key, k);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  std::ostringstream os;
  os << "config line " << line << ": unknown key '" << key << "' in [" << where << "]";
  if (!best.empty()) os << " (did you mean '" << best << "'?)";
  throw ConfigError(os.str());
}

void check_keys(const toml::Value& tab, const std::string& where,
                const std::vector<std::string>& known) {
  for (const auto& [key, val] : tab.tab)
    if (std::find(known.begin(), known.end(), key) == known.end())
      unknown_key(where, key, val.line, known);
}

double get_number(const toml::Value& tab, const std::string& where, const std::string& key,
                  double fallback) {
  const auto* v = tab.find(key);
  return v ? v->as_number(where + "." + key) : fallback;
}

int get_int(const toml::Value& tab, const std::string& where, const std::string& key,
            int fallback) {
  const auto* v = tab.find(key);
  return v ? v->as_int(where + "." + key) : fallback;
}

std::string get_string(const toml::Value& tab, const std::string& where, const std::string& key,
                       const std::string& fallback) {
  const auto* v = tab.find(key);
  return v ? v->as_string(where + "." + key) : fallback;
}

void parse_grid(const toml::Value& t, Grid1D& g) {
  check_keys(t, "grid", {"x_min", "x_max", "n_cells", "boundary"});
  const double x_min = get_number(t, "grid", "x_min", 0.0);
  const double x_max = get_number(t, "grid", "x_max", 1.0);
  const int n = get_int(t, "grid", "n_cells", 100);
  const std::string b = get_string(t, "grid", "boundary", "periodic");
  Boundary boundary;
  if (b == "periodic")
    boundary = Boundary::periodic;
  else if (b == "outflow")
    boundary = Boundary::outflow;
  else
    throw ConfigError("grid.boundary must be 'periodic' or 'outflow', got '" + b + "'");
  g = Grid1D(x_min, x_max, n, boundary);
}

void parse_scheme(const toml::Value& t, SchemeConfig& s) {
  check_keys(t, "scheme",
             {"id", "cfl", "t_end", "snapshot_stride", "rho_floor", "velocity_margin",
              "velocity_bound"});
  const std::string id = get_string(t, "scheme", "id", "kinetic");
  if (id == "kinetic")
    s.scheme = Scheme::kinetic;
  else if (id == "godunov")
    s.scheme = Scheme::godunov;
  else
    throw ConfigError("scheme.id must be 'kinetic' or 'godunov', got '" + id + "'");
  s.cfl = get_number(t, "scheme", "cfl", 0.5);
  if (!(s.cfl > 0.0 && s.cfl <= 1.0))
    throw ConfigError("scheme.cfl must lie in (0, 1], got " + std::to_string(s.cfl));
  s.t_end = get_number(t, "scheme", "t_end", 0.2);
  if (s.t_end < 0.0) throw ConfigError("scheme.t_end must be >= 0");
  s.snapshot_stride = get_int(t, "scheme", "snapshot_stride", 1);
  if (s.snapshot_stride < 1) throw ConfigError("scheme.snapshot_stride must be >= 1");
  s.rho_floor = get_number(t, "scheme", "rho_floor", kDefaultRhoFloor);
  s.velocity_margin = get_number(t, "scheme", "velocity_margin", 1.05);
  if (t.has("velocity_bound")) s.velocity_bound = get_number(t, "scheme", "velocity_bound", 0.0);
}

void parse_dissipation(const toml::Value& t, DissipationLogConfig& d) {
  check_keys(t, "dissipation", {"v_nodes", "t_slabs", "x_bins"});
  d.v_nodes = get_int(t, "dissipation", "v_nodes", 0);
  d.t_slabs = get_int(t, "dissipation", "t_slabs", 128);
  d.x_bins = get_int(t, "dissipation", "x_bins", 0);
  if (d.v_nodes < 0 || d.t_slabs < 1 || d.x_bins < 0)
    throw ConfigError("dissipation: v_nodes/x_bins must be >= 0 and t_slabs >= 1");
}

void parse_initial(const toml::Value& t, PresetSpec& p) {
  check_keys(t, "initial",
             {"preset", "rho_left", "m_left", "rho_right", "m_right", "split", "amplitude",
              "rho0", "m0", "rho_mid", "rho_right_state", "x1", "x2", "seed", "pieces",
              "rho_min", "rho_max", "u_max"});
  p.id = get_string(t, "initial", "preset", "riemann");
  p.left = {get_number(t, "initial", "rho_left", 1.0), get_number(t, "initial", "m_left", 0.0)};
  p.right = {get_number(t, "initial", "rho_right", 1.0), get_number(t, "initial", "m_right", 0.0)};
  p.split = get_number(t, "initial", "split", 0.5);
  p.amplitude = get_number(t, "initial", "amplitude", 0.1);
  p.rho0 = get_number(t, "initial", "rho0", 1.0);
  p.m0 = get_number(t, "initial", "m0", 0.0);
  p.rho_mid = get_number(t, "initial", "rho_mid", 2.0);
  p.rho_right = get_number(t, "initial", "rho_right_state", 1.2);
  p.x1 = get_number(t, "initial", "x1", 0.0);
  p.x2 = get_number(t, "initial", "x2", 0.0);
  p.seed = static_cast<unsigned>(get_int(t, "initial", "seed", 0));
  p.pieces = get_int(t, "initial", "pieces", 8);
  p.rho_min = get_number(t, "initial", "rho_min", 0.3);
  p.rho_max = get_number(t, "initial", "rho_max", 2.0);
  p.u_max = get_number(t, "initial", "u_max", 0.5);
  static const std::vector<std::string> ids = {"riemann", "smooth_sine", "shock_pair",
                                               "random_linfty"};
  if (std::find(ids.begin(), ids.end(), p.id) == ids.end())
    throw ConfigError("initial.preset must be one of riemann/smooth_sine/shock_pair/random_linfty");
}

const std::vector<std::string>& diagnostic_keys(const std::string& kind) {
  static const std::map<std::string, std::vector<std::string>> keys = {
      {"trace",
       {"kind", "name", "x0", "speed", "band", "ladder_span", "verify_tol", "side"}},
      {"rh",
       {"kind", "name", "x0", "speed", "band", "ladder_span", "cont_tol", "eps_list", "expect"}},
      {"degiorgi",
       {"kind", "name", "t_center", "x_center", "scale", "direction", "bar_rho", "bar_m",
        "eps_target", "k_max", "eta"}},
      {"semicont",
       {"kind", "name", "t_lo", "t_hi", "x_lo", "x_hi", "count", "seed", "base_radius", "ladder",
        "vmo_tol", "eq_tol"}},
      {"characteristic",
       {"kind", "name", "x0", "family", "sigma", "eps_ladder", "t_end", "bound_tol",
        "trace_band"}},
      {"mu", {"kind", "name", "v_bins"}},
      {"tv_bound", {"kind", "name", "t_center", "x_center", "r", "R", "a", "tail"}},
  };
  const auto it = keys.find(kind);
  if (it == keys.end())
    throw ConfigError("unknown diagnostic kind '" + kind +
                      "' (expected trace/rh/degiorgi/semicont/characteristic/mu/tv_bound)");
  return it->second;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  const toml::Value root = toml::parse_string(text);
  static const std::vector<std::string> sections = {"grid",    "scheme", "dissipation",
                                                    "initial", "output", "run",
                                                    "diagnostic"};
  for (const auto& [key, val] : root.tab)
    if (std::find(sections.begin(), sections.end(), key) == sections.end())
      unknown_key("top level", key, val.line, sections);

  RunConfig cfg;
  if (const auto* t = root.find("grid")) parse_grid(*t, cfg.grid);
  if (const auto* t = root.find("scheme")) parse_scheme(*t, cfg.scheme);
  if (const auto* t = root.find("dissipation")) parse_dissipation(*t, cfg.scheme.dissipation);
  if (const auto* t = root.find("initial")) parse_initial(*t, cfg.initial);
  if (const auto* t = root.find("output")) {
    check_keys(*t, "output", {"directory"});
    cfg.output_dir = get_string(*t, "output", "directory", "out");
  }
  if (const auto* t = root.find("run")) {
    check_keys(*t, "run", {"seed", "threads"});
    cfg.seed = static_cast<unsigned>(get_int(*t, "run", "seed", 0));
    cfg.threads = get_int(*t, "run", "threads", 1);
    if (cfg.threads < 1) throw ConfigError("run.threads must be >= 1");
  }
  if (const auto* t = root.find("diagnostic")) {
    const auto& list = t->is_array() ? t->arr : std::vector<toml::Value>{*t};
    int index = 0;
    for (const auto& d : list) {
      if (!d.is_table()) throw ConfigError("each [[diagnostic]] must be a table");
      const auto* kind = d.find("kind");
      if (!kind) throw ConfigError("diagnostic entry needs a 'kind' key");
      DiagnosticSpec spec;
      spec.kind = kind->as_string("diagnostic.kind");
      check_keys(d, "diagnostic(" + spec.kind + ")", diagnostic_keys(spec.kind));
      spec.name = get_string(d, "diagnostic", "name",
                             spec.kind + "_" + std::to_string(index));
      spec.params = d;
      cfg.diagnostics.push_back(std::move(spec));
      ++index;
    }
    for (std::size_t i = 0; i < cfg.diagnostics.size(); ++i)
      for (std::size_t j = i + 1; j < cfg.diagnostics.size(); ++j)
        if (cfg.diagnostics[i].name == cfg.diagnostics[j].name)
          throw ConfigError("duplicate diagnostic name '" + cfg.diagnostics[i].name + "'");
  }
  // The split default sits mid-domain.
  if (!root.find("initial") || !root.find("initial")->has("split"))
    cfg.initial.split = 0.5 * (cfg.grid.x_min + cfg.grid.x_max);
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string config_echo(const RunConfig& cfg) {
  nlohmann::json j;
  j["grid"] = {{"x_min", cfg.grid.x_min},
               {"x_max", cfg.grid.x_max},
               {"n_cells", cfg.grid.n_cells},
               {"boundary", to_string(cfg.grid.boundary)}};
  j["scheme"] = {{"id", to_string(cfg.scheme.scheme)},
                 {"cfl", cfg.scheme.cfl},
                 {"t_end", cfg.scheme.t_end},
                 {"snapshot_stride", cfg.scheme.snapshot_stride},
                 {"rho_floor", cfg.scheme.rho_floor},
                 {"velocity_margin", cfg.scheme.velocity_margin}};
  if (cfg.scheme.velocity_bound) j["scheme"]["velocity_bound"] = *cfg.scheme.velocity_bound;
  j["dissipation"] = {{"v_nodes", cfg.scheme.dissipation.v_nodes},
                      {"t_slabs", cfg.scheme.dissipation.t_slabs},
                      {"x_bins", cfg.scheme.dissipation.x_bins}};
  j["initial"] = {{"preset", cfg.initial.id}};
  auto& ini = j["initial"];
  if (cfg.initial.id == "riemann") {
    ini["rho_left"] = cfg.initial.left.rho;
    ini["m_left"] = cfg.initial.left.m;
    ini["rho_right"] = cfg.initial.right.rho;
    ini["m_right"] = cfg.initial.right.m;
    ini["split"] = cfg.initial.split;
  } else if (cfg.initial.id == "smooth_sine") {
    ini["amplitude"] = cfg.initial.amplitude;
    ini["rho0"] = cfg.initial.rho0;
    ini["m0"] = cfg.initial.m0;
  } else if (cfg.initial.id == "shock_pair") {
    ini["rho0"] = cfg.initial.rho0;
    ini["m0"] = cfg.initial.m0;
    ini["rho_mid"] = cfg.initial.rho_mid;
    ini["rho_right_state"] = cfg.initial.rho_right;
  } else {
    ini["seed"] = cfg.initial.seed;
    ini["pieces"] = cfg.initial.pieces;
    ini["rho_min"] = cfg.initial.rho_min;
    ini["rho_max"] = cfg.initial.rho_max;
    ini["u_max"] = cfg.initial.u_max;
  }
  j["output"] = {{"directory", cfg.output_dir}};
  j["run"] = {{"seed", cfg.seed}, {"threads", cfg.threads}};
  std::vector<std::string> diags;
  for (const auto& d : cfg.diagnostics) diags.push_back(d.kind + ":" + d.name);
  j["diagnostics"] = diags;
  return j.dump(2);
}

}  // namespace eulerkin
