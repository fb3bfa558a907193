#pragma once

// JSON and CSV encodings of parameters, states, analysis reports, orbits and
// basin maps.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "json.hpp"
#include "topp/dynamics.hpp"
#include "topp/errors.hpp"
#include "topp/model.hpp"
#include "topp/stability.hpp"

namespace topp {

using Json = nlohmann::ordered_json;

/// Shortest decimal string that parses back to the same double.
inline std::string format_shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string format_17g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {
inline void dump_17g(const Json& j, std::string& out, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  const char* colon = indent < 0 ? ":" : ": ";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) { out += "{}"; return; }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(key).dump();
        out += colon;
        dump_17g(value, out, indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) { out += "[]"; return; }
      out += '[';
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        dump_17g(value, out, indent, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_17g(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}
}  // namespace detail

/// Serializes with every floating-point number printed to 17 significant
/// digits. indent < 0 gives the compact form.
inline std::string dump_17g(const Json& j, int indent = 2) {
  std::string out;
  detail::dump_17g(j, out, indent, 0);
  return out;
}

// ---------------------------------------------------------------- params ----

inline Json params_to_json(const ModelParams& p) {
  Json j = Json::object();
  for (std::size_t i = 0; i < kParamNames.size(); ++i) {
    j[std::string(kParamNames[i])] = param_at(p, i);
  }
  return j;
}

/// Flat object with exactly the nine parameter keys, each a finite positive
/// number.
inline ModelParams params_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("params must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto name : kParamNames) known = known || key == name;
    if (!known) throw FormatError("unknown parameter key '" + key + "'");
  }
  ModelParams p;
  for (std::size_t i = 0; i < kParamNames.size(); ++i) {
    const std::string name(kParamNames[i]);
    if (!j.contains(name)) throw FormatError("missing parameter '" + name + "'");
    const Json& v = j.at(name);
    if (!v.is_number()) throw FormatError("parameter '" + name + "' must be a number");
    const double d = v.get<double>();
    if (!(std::isfinite(d) && d > 0.0)) {
      throw FormatError("parameter '" + name + "' must be finite and positive");
    }
    param_at(p, i) = d;
  }
  return p;
}

// ----------------------------------------------------------------- state ----

inline Json state_to_json(const State& s) { return Json::array({s.x, s.y, s.z}); }

inline State state_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) {
    throw FormatError("state must be a JSON array [x, y, z]");
  }
  std::array<double, 3> v{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!j[i].is_number()) throw FormatError("state components must be numbers");
    v[i] = j[i].get<double>();
    if (!(std::isfinite(v[i]) && v[i] >= 0.0)) {
      throw FormatError("state components must be finite and nonnegative");
    }
  }
  return {v[0], v[1], v[2]};
}

// ---------------------------------------------------------------- report ----

inline Json eigenvalues_to_json(const std::array<Complex, 3>& ev) {
  Json arr = Json::array();
  for (const auto& l : ev) arr.push_back(Json::array({l.real(), l.imag()}));
  return arr;
}

/// Regime, bounds, fixed points with their eigenvalues and stability, and
/// violated conditions.
inline Json analysis_report(const ModelParams& p, RegimeOptions opt = {}) {
  const Regime regime = classify_regime(p, opt);
  Json j = Json::object();
  j["regime"] = std::string(to_string(regime.kind));
  j["params"] = params_to_json(p);
  try {
    const DomainBounds b = domain_bounds(p);
    j["bounds"] = Json{{"A", b.A}, {"B", b.B}, {"C", b.C}};
  } catch (const DomainError&) {
    j["bounds"] = nullptr;
  }
  Json fps = Json::array();
  if (regime.admissible()) {
    for (const auto& fp : fixed_points(p, opt)) {
      Json f = Json::object();
      f["label"] = std::string(to_string(fp.label));
      f["location"] = state_to_json(fp.location);
      f["eigenvalues"] = eigenvalues_to_json(fp.eigenvalues);
      f["stability"] = describe(fp.stability);
      f["biological_label"] = std::string(biological_label(fp.label));
      fps.push_back(std::move(f));
    }
  }
  j["fixed_points"] = std::move(fps);
  j["violations"] = regime.violations;
  if (regime.critical_extras) {
    j["critical_extras"] =
        Json{{"two_fixed_points", regime.critical_extras->two_fixed_points},
             {"failed", regime.critical_extras->failed}};
  }
  j["diagnostics"] =
      regime.admissible() ? fixed_point_diagnostics(p, opt) : std::vector<std::string>{};
  return j;
}

inline std::string analysis_text(const ModelParams& p, RegimeOptions opt = {}) {
  const Regime regime = classify_regime(p, opt);
  std::string out;
  out += "regime: " + std::string(to_string(regime.kind)) + "\n";
  for (const auto& v : regime.violations) out += "  violated: " + v + "\n";
  if (!regime.admissible()) return out;
  const DomainBounds b = domain_bounds(p);
  out += "bounds: A=" + format_17g(b.A) + " B=" + format_17g(b.B) +
         " C=" + format_17g(b.C) + "\n";
  for (const auto& fp : fixed_points(p, opt)) {
    out += std::string(to_string(fp.label)) + " (" +
           std::string(biological_label(fp.label)) + "): (" +
           format_17g(fp.location.x) + ", " + format_17g(fp.location.y) + ", " +
           format_17g(fp.location.z) + ")  " + describe(fp.stability) + "\n";
    for (const auto& l : fp.eigenvalues) {
      out += "    eigenvalue " + format_17g(l.real());
      if (l.imag() != 0.0) {
        out += (l.imag() < 0 ? " - " : " + ") + format_17g(std::abs(l.imag())) + "i";
      }
      out += "  |l|=" + format_17g(std::abs(l)) + "\n";
    }
  }
  for (const auto& d : fixed_point_diagnostics(p, opt)) out += "note: " + d + "\n";
  return out;
}

// ------------------------------------------------------------------- csv ----

inline constexpr std::string_view kTrajectoryCsvHeader =
    "n,x,y,z,in_omega,in_omega1,in_omega2";
inline constexpr std::string_view kBasinCsvHeader =
    "x0,y0,z0,label,iterations,x_hyp,z_hyp";

/// Streams orbit rows, keeping every stride-th step plus the final one.
class TrajectoryCsvWriter {
 public:
  TrajectoryCsvWriter(std::ostream& os, std::optional<Regions> regions,
                      std::size_t stride, std::size_t last_step)
      : os_(os), regions_(std::move(regions)), stride_(stride), last_(last_step) {
    if (stride_ < 1) throw PreconditionError("stride must be at least 1");
    os_ << kTrajectoryCsvHeader << '\n';
  }

  /// Writes the row if n is on the stride or is the last step; `force`
  /// writes it regardless (used when an orbit stops early).
  void operator()(std::size_t n, const State& s, bool force = false) {
    if (!force && n % stride_ != 0 && n != last_) return;
    if (last_written_ && *last_written_ == n) return;
    last_written_ = n;
    const RegionFlags f = regions_ ? region_flags(*regions_, s) : RegionFlags{};
    os_ << n << ',' << format_shortest(s.x) << ',' << format_shortest(s.y) << ','
        << format_shortest(s.z) << ',' << int(f.omega) << ',' << int(f.omega1)
        << ',' << int(f.omega2) << '\n';
    ++rows_;
  }

  std::size_t rows() const { return rows_; }

 private:
  std::ostream& os_;
  std::optional<Regions> regions_;
  std::size_t stride_;
  std::size_t last_;
  std::size_t rows_ = 0;
  std::optional<std::size_t> last_written_;
};

inline void write_basin_csv(std::ostream& os, const std::vector<BasinLabel>& labels) {
  os << kBasinCsvHeader << '\n';
  for (const auto& b : labels) {
    os << format_shortest(b.initial.x) << ',' << format_shortest(b.initial.y) << ','
       << format_shortest(b.initial.z) << ',' << to_string(b.label) << ','
       << b.iterations << ',' << int(b.x_hypothesis) << ',' << int(b.z_hypothesis)
       << '\n';
  }
}

}  // namespace topp
