#include "cli.hpp"

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "topp/dynamics.hpp"
#include "topp/stability.hpp"
#include "topp/verification.hpp"

namespace topp::cli {

namespace {

const std::vector<std::string> kCommands = {"analyze", "simulate", "sweep",
                                            "verify", "repro"};

const std::map<std::string, std::vector<std::string>>& allowed_table() {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"analyze", {"params", "kappa", "out", "format"}},
      {"simulate",
       {"params", "initial", "steps", "stride", "tol", "explore", "kappa", "out",
        "format"}},
      {"sweep",
       {"params", "grid", "tol", "max_iter", "threads", "kappa", "out",
        "format"}},
      {"verify",
       {"params", "seed", "samples", "pmax", "burn_in", "tol", "kappa", "out",
        "format"}},
      {"repro", {"figure", "stride", "max_iter", "out", "format"}},
  };
  return table;
}

const std::map<std::string, std::vector<std::string>>& required_table() {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"analyze", {"params"}},
      {"simulate", {"params", "initial", "steps"}},
      {"sweep", {"params", "grid"}},
      {"verify", {"params", "seed"}},
      {"repro", {"figure"}},
  };
  return table;
}

const std::vector<std::string> kAllKeys = {
    "params", "initial", "steps", "tol",     "max_iter", "pmax",
    "burn_in", "stride", "seed",  "samples", "grid",     "kappa",
    "threads", "explore", "figure", "out",   "format"};

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

std::vector<std::string> present_keys(const RunConfig& c) {
  std::vector<std::string> keys;
  if (c.params) keys.push_back("params");
  if (c.initial) keys.push_back("initial");
  if (c.steps) keys.push_back("steps");
  if (c.tol) keys.push_back("tol");
  if (c.max_iter) keys.push_back("max_iter");
  if (c.pmax) keys.push_back("pmax");
  if (c.burn_in) keys.push_back("burn_in");
  if (c.stride) keys.push_back("stride");
  if (c.seed) keys.push_back("seed");
  if (c.samples) keys.push_back("samples");
  if (c.grid) keys.push_back("grid");
  if (c.kappa) keys.push_back("kappa");
  if (c.threads) keys.push_back("threads");
  if (c.explore) keys.push_back("explore");
  if (c.figure) keys.push_back("figure");
  if (c.out) keys.push_back("out");
  if (c.format) keys.push_back("format");
  return keys;
}

void validate_keys(const std::string& command, const RunConfig& c) {
  const auto& allowed = allowed_keys(command);
  for (const auto& key : present_keys(c)) {
    if (!contains(allowed, key)) {
      throw FormatError("'" + key + "' is not used by '" + command + "'");
    }
  }
  for (const auto& key : required_keys(command)) {
    if (!contains(present_keys(c), key)) {
      throw FormatError("'" + command + "' requires '" + key + "'");
    }
  }
}

std::size_t get_count(const Json& j, const char* key) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    throw FormatError(std::string(key) + " must be a nonnegative integer");
  }
  return j.get<std::size_t>();
}

double get_real(const Json& j, const char* key) {
  if (!j.is_number()) throw FormatError(std::string(key) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw FormatError(std::string(key) + " must be finite");
  return v;
}

GridAxis axis_from_json(const Json& j, const char* name) {
  if (!j.is_array() || j.size() != 3) {
    throw FormatError(std::string("grid.") + name + " must be [min, max, count]");
  }
  GridAxis a{get_real(j[0], name), get_real(j[1], name), get_count(j[2], name)};
  if (a.count < 1) throw FormatError(std::string("grid.") + name + " count must be >= 1");
  if (a.max < a.min) throw FormatError(std::string("grid.") + name + " needs min <= max");
  return a;
}

Json axis_to_json(const GridAxis& a) { return Json::array({a.min, a.max, a.count}); }

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw FormatError("not a number: '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw FormatError("not a number: '" + s + "'");
  return v;
}

std::unique_ptr<std::ofstream> open_output(const std::string& path) {
  auto f = std::make_unique<std::ofstream>(path, std::ios::binary);
  if (!*f) throw std::runtime_error("cannot open '" + path + "' for writing");
  return f;
}

void require_format(const RunConfig& c, std::initializer_list<const char*> ok) {
  if (!c.format) return;
  for (const char* f : ok)
    if (*c.format == f) return;
  throw FormatError("format '" + *c.format + "' is not supported here");
}

RegimeOptions regime_options(const RunConfig& c) {
  RegimeOptions o;
  if (c.kappa) o.kappa = *c.kappa;
  return o;
}

std::string state_text(const State& s) {
  return "(" + format_shortest(s.x) + ", " + format_shortest(s.y) + ", " +
         format_shortest(s.z) + ")";
}

}  // namespace

std::vector<std::string> allowed_keys(const std::string& command) {
  const auto it = allowed_table().find(command);
  if (it == allowed_table().end()) throw FormatError("unknown command '" + command + "'");
  return it->second;
}

std::vector<std::string> required_keys(const std::string& command) {
  const auto it = required_table().find(command);
  if (it == required_table().end()) throw FormatError("unknown command '" + command + "'");
  return it->second;
}

GridSpec parse_grid(const std::string& text) {
  const auto axes = split(text, ',');
  if (axes.size() != 3) throw FormatError("grid needs three axes: '" + text + "'");
  std::array<GridAxis, 3> out;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto f = split(axes[i], ':');
    if (f.size() != 3) throw FormatError("grid axis must be min:max:count");
    const double count = to_double(f[2]);
    if (count < 1 || count != std::floor(count)) {
      throw FormatError("grid count must be a positive integer");
    }
    out[i] = {to_double(f[0]), to_double(f[1]), static_cast<std::size_t>(count)};
    if (out[i].max < out[i].min) throw FormatError("grid axis needs min <= max");
  }
  return {out[0], out[1], out[2]};
}

State parse_state(const std::string& text) {
  const auto f = split(text, ',');
  if (f.size() != 3) throw FormatError("state must be x,y,z");
  const State s{to_double(f[0]), to_double(f[1]), to_double(f[2])};
  if (!nonnegative(s)) throw FormatError("state components must be nonnegative");
  return s;
}

RunConfig config_from_json(const std::string& command, const Json& j) {
  if (!j.is_object()) throw FormatError("config must be a JSON object");
  const auto allowed = allowed_keys(command);
  RunConfig c;
  for (const auto& [key, v] : j.items()) {
    if (!contains(kAllKeys, key)) throw FormatError("unknown config key '" + key + "'");
    if (!contains(allowed, key)) {
      throw FormatError("config key '" + key + "' is not used by '" + command + "'");
    }
    if (key == "params") c.params = params_from_json(v);
    else if (key == "initial") c.initial = state_from_json(v);
    else if (key == "steps") c.steps = get_count(v, "steps");
    else if (key == "tol") c.tol = get_real(v, "tol");
    else if (key == "max_iter") c.max_iter = get_count(v, "max_iter");
    else if (key == "pmax") c.pmax = get_count(v, "pmax");
    else if (key == "burn_in") c.burn_in = get_count(v, "burn_in");
    else if (key == "stride") c.stride = get_count(v, "stride");
    else if (key == "seed") {
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        throw FormatError("seed must be a nonnegative integer");
      c.seed = v.get<std::uint64_t>();
    } else if (key == "samples") c.samples = get_count(v, "samples");
    else if (key == "grid") {
      if (!v.is_object() || v.size() != 3 || !v.contains("x") || !v.contains("y") ||
          !v.contains("z")) {
        throw FormatError("grid must be {\"x\": [...], \"y\": [...], \"z\": [...]}");
      }
      c.grid = GridSpec{axis_from_json(v["x"], "x"), axis_from_json(v["y"], "y"),
                        axis_from_json(v["z"], "z")};
    } else if (key == "kappa") c.kappa = get_real(v, "kappa");
    else if (key == "threads") c.threads = static_cast<unsigned>(get_count(v, "threads"));
    else if (key == "explore") {
      if (!v.is_boolean()) throw FormatError("explore must be a boolean");
      c.explore = v.get<bool>();
    } else if (key == "figure") {
      if (!v.is_string()) throw FormatError("figure must be a string");
      c.figure = v.get<std::string>();
    } else if (key == "out") {
      if (!v.is_string()) throw FormatError("out must be a string");
      c.out = v.get<std::string>();
    } else if (key == "format") {
      if (!v.is_string()) throw FormatError("format must be a string");
      c.format = v.get<std::string>();
    }
  }
  return c;
}

Json config_to_json(const RunConfig& c) {
  Json j = Json::object();
  if (c.params) j["params"] = params_to_json(*c.params);
  if (c.initial) j["initial"] = state_to_json(*c.initial);
  if (c.steps) j["steps"] = *c.steps;
  if (c.tol) j["tol"] = *c.tol;
  if (c.max_iter) j["max_iter"] = *c.max_iter;
  if (c.pmax) j["pmax"] = *c.pmax;
  if (c.burn_in) j["burn_in"] = *c.burn_in;
  if (c.stride) j["stride"] = *c.stride;
  if (c.seed) j["seed"] = *c.seed;
  if (c.samples) j["samples"] = *c.samples;
  if (c.grid) {
    j["grid"] = Json{{"x", axis_to_json(c.grid->x)},
                     {"y", axis_to_json(c.grid->y)},
                     {"z", axis_to_json(c.grid->z)}};
  }
  if (c.kappa) j["kappa"] = *c.kappa;
  if (c.threads) j["threads"] = *c.threads;
  if (c.explore) j["explore"] = *c.explore;
  if (c.figure) j["figure"] = *c.figure;
  if (c.out) j["out"] = *c.out;
  if (c.format) j["format"] = *c.format;
  return j;
}

// ----------------------------------------------------------------- analyze --

int cmd_analyze(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require_format(c, {"json", "text"});
  const ModelParams& p = c.params.value();
  const RegimeOptions opt = regime_options(c);
  const Regime regime = classify_regime(p, opt);

  std::string body = c.format.value_or("json") == "text"
                         ? analysis_text(p, opt)
                         : dump_17g(analysis_report(p, opt)) + "\n";
  if (c.out) {
    *open_output(*c.out) << body;
    out << "regime: " << to_string(regime.kind) << "\n";
  } else {
    out << body;
  }
  if (!regime.admissible()) {
    err << "inadmissible parameters:";
    for (const auto& v : regime.violations) err << " [" << v << "]";
    err << "\n";
    return kInadmissible;
  }
  return kOk;
}

// ---------------------------------------------------------------- simulate --

int cmd_simulate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require_format(c, {"csv"});
  const ModelParams& p = c.params.value();
  const RegimeOptions opt = regime_options(c);
  const Regime regime = classify_regime(p, opt);
  const bool explore = c.explore.value_or(false);
  if (!regime.admissible() && !explore) {
    err << "inadmissible parameters (pass --explore to iterate anyway):";
    for (const auto& v : regime.violations) err << " [" << v << "]";
    err << "\n";
    return kInadmissible;
  }
  const std::size_t steps = c.steps.value();
  if (steps < 1) throw FormatError("steps must be at least 1");

  std::unique_ptr<std::ofstream> file;
  if (c.out) file = open_output(*c.out);
  std::ostream& csv = file ? static_cast<std::ostream&>(*file) : out;
  std::ostream& summary = file ? out : err;

  std::optional<Regions> regions;
  if (regime.admissible()) regions.emplace(p, opt);
  TrajectoryCsvWriter writer(csv, regions, c.stride.value_or(1), steps);

  State s = c.initial.value();
  std::size_t n = 0;
  std::optional<std::size_t> omega_exit;
  bool left_octant = false;
  for (;;) {
    writer(n, s);
    if (regions && !omega_exit && !regions->omega(s)) omega_exit = n;
    if (n == steps) break;
    const State next = evaluate(p, s);
    if (!nonnegative(next)) {
      left_octant = true;
      break;
    }
    s = next;
    ++n;
  }
  writer(n, s, /*force=*/true);
  if (file && !*file) throw std::runtime_error("write to '" + *c.out + "' failed");

  summary << "final n=" << n << " state=" << state_text(s) << "\n";
  if (omega_exit) summary << "left Omega at n=" << *omega_exit << "\n";
  if (left_octant) {
    summary << "verdict: exited_domain (next iterate is negative)\n";
    return kOk;
  }
  if (!regime.admissible()) {
    summary << "verdict: exploration (no fixed-point bookkeeping)\n";
    return kOk;
  }
  const double tol = c.tol.value_or(default_tolerance(regime));
  const double movement = sup_distance(evaluate(p, s), s);
  const FixedPointRecord* nearest = nullptr;
  double best = std::numeric_limits<double>::infinity();
  const auto fps = fixed_points(p, opt);
  for (const auto& fp : fps) {
    const double d = sup_distance(s, fp.location);
    if (d < best) {
      best = d;
      nearest = &fp;
    }
  }
  summary << "nearest fixed point: " << to_string(nearest->label) << " "
          << state_text(nearest->location) << " distance=" << format_shortest(best)
          << "\n";
  summary << "verdict: "
          << (best <= tol && movement <= tol ? "converged" : "not_converged")
          << " (tol=" << format_shortest(tol) << ")\n";
  return kOk;
}

// ------------------------------------------------------------------- sweep --

int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require_format(c, {"csv"});
  const ModelParams& p = c.params.value();
  const RegimeOptions opt = regime_options(c);
  const Regime regime = classify_regime(p, opt);
  if (!regime.admissible()) {
    err << "inadmissible parameters:";
    for (const auto& v : regime.violations) err << " [" << v << "]";
    err << "\n";
    return kInadmissible;
  }
  const auto labels = sweep_grid(p, c.grid.value(),
                                 c.tol.value_or(default_tolerance(regime)),
                                 c.max_iter.value_or(kDefaultMaxIter),
                                 c.threads.value_or(0), opt);
  std::unique_ptr<std::ofstream> file;
  if (c.out) file = open_output(*c.out);
  write_basin_csv(file ? static_cast<std::ostream&>(*file) : out, labels);
  if (file && !*file) throw std::runtime_error("write to '" + *c.out + "' failed");

  std::size_t counts[3] = {0, 0, 0};
  for (const auto& b : labels) ++counts[static_cast<int>(b.label)];
  (file ? out : err) << "u1=" << counts[0] << " u2=" << counts[1]
                     << " undecided=" << counts[2] << "\n";
  return kOk;
}

// ------------------------------------------------------------------ verify --

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require_format(c, {"json", "text"});
  const ModelParams& p = c.params.value();
  VerifyOptions opt;
  opt.regime = regime_options(c);
  opt.seed = c.seed.value();
  opt.samples = c.samples.value_or(opt.samples);
  if (opt.samples < 1) throw FormatError("samples must be positive");
  opt.period_samples = std::min(opt.samples, opt.period_samples);
  opt.orbit_count = std::min(opt.samples, opt.orbit_count);
  opt.pmax = c.pmax.value_or(opt.pmax);
  opt.burn_in = c.burn_in.value_or(opt.burn_in);
  opt.period_tol = c.tol.value_or(opt.period_tol);

  const Regime regime = classify_regime(p, opt.regime);
  if (!regime.admissible()) {
    err << "refusing to verify inadmissible parameters:";
    for (const auto& v : regime.violations) err << " [" << v << "]";
    err << "\n";
    return kInadmissible;
  }
  const auto results = run_verification(p, opt);

  std::string body;
  if (c.format.value_or("text") == "json") {
    Json j = Json::object();
    j["regime"] = std::string(to_string(regime.kind));
    j["seed"] = opt.seed;
    j["samples"] = opt.samples;
    Json arr = Json::array();
    for (const auto& r : results) {
      Json e{{"name", r.name},
             {"status", std::string(to_string(r.status))},
             {"checked", r.checked},
             {"detail", r.detail}};
      e["counterexample"] =
          r.counterexample ? state_to_json(*r.counterexample) : Json(nullptr);
      arr.push_back(std::move(e));
    }
    j["properties"] = std::move(arr);
    j["passed"] = all_passed(results);
    body = dump_17g(j) + "\n";
  } else {
    std::ostringstream os;
    os << "regime: " << to_string(regime.kind) << "  seed: " << opt.seed
       << "  samples: " << opt.samples << "\n";
    for (const auto& r : results) {
      const char* tag = r.status == PropertyStatus::Pass   ? "PASS"
                        : r.status == PropertyStatus::Fail ? "FAIL"
                                                           : "SKIP";
      os << tag << "  " << r.name << "  (" << r.checked << " checked)";
      if (!r.detail.empty()) os << "  " << r.detail;
      if (r.counterexample) os << "  counterexample " << state_text(*r.counterexample);
      os << "\n";
    }
    os << (all_passed(results) ? "all properties hold\n" : "property failures\n");
    body = os.str();
  }
  if (c.out) {
    *open_output(*c.out) << body;
  } else {
    out << body;
  }
  return all_passed(results) ? kOk : kFailed;
}

// ------------------------------------------------------------------- repro --

namespace {

struct OrbitCase {
  State initial;
  FixedPointLabel expected;
  double tol;
};

}  // namespace

int cmd_repro(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require_format(c, {"json"});
  const std::string fig = c.figure.value();
  ModelParams p;
  std::vector<OrbitCase> cases;
  if (fig == "fig1") {
    p = figure1_params();
    cases = {{{0.5, 0.3, 0.016}, FixedPointLabel::u1, 1e-6},
             {{0.5, 0.18, 0.016}, FixedPointLabel::u1, 1e-6}};
  } else if (fig == "fig2") {
    p = figure2_params();
    cases = {{{0.5, 0.3, 0.016}, FixedPointLabel::u1, 1e-6},
             {{0.5, 0.18, 0.016}, FixedPointLabel::u2, 1e-4}};
  } else {
    throw FormatError("repro expects fig1 or fig2, got '" + fig + "'");
  }
  const std::filesystem::path dir = c.out.value_or(".");
  std::filesystem::create_directories(dir);
  const std::size_t stride = c.stride.value_or(1);
  const std::size_t max_iter = c.max_iter.value_or(kDefaultMaxIter);

  const Regime regime = classify_regime(p);
  const auto fps = fixed_points(p);

  Json summary = Json::object();
  summary["figure"] = fig;
  summary["params"] = params_to_json(p);
  summary["regime"] = std::string(to_string(regime.kind));
  Json fp_json = Json::array();
  for (const auto& fp : fps) {
    fp_json.push_back(Json{{"label", std::string(to_string(fp.label))},
                           {"location", state_to_json(fp.location)},
                           {"stability", describe(fp.stability)},
                           {"biological_label", std::string(biological_label(fp.label))}});
  }
  summary["fixed_points"] = std::move(fp_json);

  bool all_ok = true;
  Json orbits = Json::array();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const OrbitCase& oc = cases[i];
    const ConvergenceResult r = run_to_convergence(p, oc.initial, oc.tol, max_iter);
    const bool ok = r.verdict == Verdict::Converged && r.target == oc.expected;
    all_ok = all_ok && ok;

    const std::string csv_name = fig + "_orbit" + std::to_string(i + 1) + ".csv";
    {
      auto file = open_output((dir / csv_name).string());
      TrajectoryCsvWriter writer(*file, Regions(p), stride, r.iterations);
      for_each_state(p, oc.initial, r.iterations, writer);
      if (!*file) throw std::runtime_error("write to '" + csv_name + "' failed");
    }
    Json o = Json::object();
    o["csv"] = csv_name;
    o["initial"] = state_to_json(oc.initial);
    o["expected"] = std::string(to_string(oc.expected));
    o["reached"] = r.target ? Json(std::string(to_string(*r.target))) : Json(nullptr);
    o["verdict"] = std::string(to_string(r.verdict));
    o["iterations"] = r.iterations;
    o["tolerance"] = oc.tol;
    o["residual"] = r.achieved_residual;
    o["final_state"] = state_to_json(r.final_state);
    o["ok"] = ok;
    orbits.push_back(std::move(o));

    out << fig << " orbit " << (i + 1) << " from " << state_text(oc.initial) << ": "
        << to_string(r.verdict);
    if (r.target) out << " to " << to_string(*r.target);
    out << " after " << r.iterations << " iterations (residual "
        << format_shortest(r.achieved_residual) << ")" << (ok ? "" : "  MISMATCH")
        << "\n";
  }
  summary["orbits"] = std::move(orbits);
  summary["ok"] = all_ok;

  const std::string summary_name = fig + "_summary.json";
  *open_output((dir / summary_name).string()) << dump_17g(summary) << "\n";
  out << "params: " << dump_17g(params_to_json(p), -1) << "\n";
  out << "wrote " << (dir / summary_name).string() << "\n";
  if (!all_ok) {
    err << fig << ": an orbit did not reach its expected fixed point\n";
    return kFailed;
  }
  return kOk;
}

// --------------------------------------------------------------------- run --

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete glucose-insulin-beta-cell map: analysis and simulation"};
  app.require_subcommand(1);

  struct Flags {
    std::optional<std::string> config, out, format, init, grid, figure;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol, kappa;
    std::optional<std::size_t> max_iter, stride, steps, samples, pmax, burn_in;
    std::optional<unsigned> threads;
    bool explore = false;
    bool dump_config = false;
    std::array<std::optional<double>, 9> params;
  } f;

  const std::map<std::string, std::string> descriptions = {
      {"analyze", "Regime, invariant box, fixed points and their stability"},
      {"simulate", "Iterate the map and write the orbit as CSV"},
      {"sweep", "Label basins of attraction over a lattice of initial states"},
      {"verify", "Run the randomized property suites"},
      {"repro", "Reproduce the two reference experiments (fig1 | fig2)"},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& name : kCommands) {
    CLI::App* sub = app.add_subcommand(name, descriptions.at(name));
    subs[name] = sub;
    sub->add_option("--config", f.config, "JSON config file");
    sub->add_option("--out", f.out, "Output path (directory for repro)");
    sub->add_option("--format", f.format, "json | csv | text");
    sub->add_option("--seed", f.seed, "Seed for randomized runs");
    sub->add_option("--tol", f.tol, "Tolerance");
    sub->add_option("--max-iter", f.max_iter, "Iteration cap");
    sub->add_option("--stride", f.stride, "Keep every n-th step in CSV output");
    sub->add_option("--kappa", f.kappa, "Relative tolerance for r1^2 = 4 r2 d0");
    sub->add_flag("--dump-config", f.dump_config, "Print the resolved config and exit");
    for (std::size_t i = 0; i < kParamNames.size(); ++i) {
      sub->add_option("--" + std::string(kParamNames[i]), f.params[i],
                      "Override parameter " + std::string(kParamNames[i]));
    }
  }
  subs["simulate"]->add_option("--init", f.init, "Initial state x,y,z");
  subs["simulate"]->add_option("--steps", f.steps, "Number of steps");
  subs["simulate"]->add_flag("--explore", f.explore,
                             "Iterate inadmissible parameters without region bookkeeping");
  subs["sweep"]->add_option("--grid", f.grid, "xmin:xmax:n,ymin:ymax:n,zmin:zmax:n");
  subs["sweep"]->add_option("--threads", f.threads, "Worker threads (0 = all cores)");
  subs["verify"]->add_option("--samples", f.samples, "Samples per property");
  subs["verify"]->add_option("--pmax", f.pmax, "Largest period searched");
  subs["verify"]->add_option("--burn-in", f.burn_in, "Iterations before period search");
  subs["repro"]->add_option("figure", f.figure, "fig1 or fig2");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  std::string command;
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) command = name;

  try {
    RunConfig c;
    if (f.config) {
      std::ifstream in(*f.config);
      if (!in) throw std::runtime_error("cannot read config '" + *f.config + "'");
      Json j;
      try {
        j = Json::parse(in);
      } catch (const Json::parse_error& e) {
        throw FormatError(std::string("config is not valid JSON: ") + e.what());
      }
      c = config_from_json(command, j);
    }
    bool any_param_flag = false;
    for (const auto& v : f.params) any_param_flag = any_param_flag || v.has_value();
    if (any_param_flag) {
      ModelParams p = c.params.value_or(ModelParams{});
      for (std::size_t i = 0; i < kParamNames.size(); ++i) {
        if (f.params[i]) param_at(p, i) = *f.params[i];
      }
      for (std::size_t i = 0; i < kParamNames.size(); ++i) {
        if (!(std::isfinite(param_at(p, i)) && param_at(p, i) > 0.0)) {
          throw FormatError("parameter " + std::string(kParamNames[i]) +
                            " missing or not positive");
        }
      }
      c.params = p;
    }
    if (f.out) c.out = f.out;
    if (f.format) c.format = f.format;
    if (f.seed) c.seed = f.seed;
    if (f.tol) c.tol = f.tol;
    if (f.max_iter) c.max_iter = f.max_iter;
    if (f.stride) c.stride = f.stride;
    if (f.kappa) c.kappa = f.kappa;
    if (f.init) c.initial = parse_state(*f.init);
    if (f.steps) c.steps = f.steps;
    if (f.explore) c.explore = true;
    if (f.grid) c.grid = parse_grid(*f.grid);
    if (f.threads) c.threads = f.threads;
    if (f.samples) c.samples = f.samples;
    if (f.pmax) c.pmax = f.pmax;
    if (f.burn_in) c.burn_in = f.burn_in;
    if (f.figure) c.figure = f.figure;
    validate_keys(command, c);
    if (c.tol && !(*c.tol > 0.0)) throw FormatError("tol must be positive");
    if (c.stride && *c.stride < 1) throw FormatError("stride must be at least 1");
    if (c.max_iter && *c.max_iter < 1) throw FormatError("max_iter must be at least 1");
    if (c.pmax && *c.pmax < 1) throw FormatError("pmax must be at least 1");
    if (c.kappa && !(*c.kappa >= 0.0)) throw FormatError("kappa must be nonnegative");

    if (f.dump_config) {
      out << dump_17g(config_to_json(c)) << "\n";
      return kOk;
    }
    if (command == "analyze") return cmd_analyze(c, out, err);
    if (command == "simulate") return cmd_simulate(c, out, err);
    if (command == "sweep") return cmd_sweep(c, out, err);
    if (command == "verify") return cmd_verify(c, out, err);
    return cmd_repro(c, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace topp::cli
