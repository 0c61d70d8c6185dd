#include "pdem/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "pdem/canonical.hpp"
#include "pdem/checks.hpp"
#include "pdem/errors.hpp"
#include "pdem/limits.hpp"
#include "pdem/model.hpp"

namespace pdem::cli {

namespace {

using Json = nlohmann::ordered_json;

// A table column; nullopt marks the wall.
struct Column {
  std::string name;
  std::vector<std::optional<double>> values;
  bool integer = false;
};

struct Meta {
  std::string command;
  std::vector<std::pair<std::string, double>> params;
  std::vector<std::pair<std::string, double>> derived;
};

std::string number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string cell(const Column& c, std::size_t i) {
  const auto& v = c.values[i];
  if (!v) return "inf";
  if (c.integer) return std::to_string(static_cast<long long>(*v));
  return number(*v);
}

void write_csv(std::ostream& os, const Meta& meta, const std::vector<Column>& cols) {
  os << "# version=" << kVersion << '\n' << "# command=" << meta.command << '\n';
  for (const auto& [k, v] : meta.params) os << "# " << k << '=' << number(v) << '\n';
  for (const auto& [k, v] : meta.derived) os << "# " << k << '=' << number(v) << '\n';
  for (std::size_t j = 0; j < cols.size(); ++j) os << (j ? "," : "") << cols[j].name;
  os << '\n';
  const std::size_t rows = cols.empty() ? 0 : cols.front().values.size();
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) os << (j ? "," : "") << cell(cols[j], i);
    os << '\n';
  }
}

Json json_number(double v, bool integer) {
  if (integer) return static_cast<long long>(v);
  if (!std::isfinite(v)) return nullptr;
  return v;
}

void write_json(std::ostream& os, const Meta& meta, const std::vector<Column>& cols) {
  Json j;
  j["meta"]["version"] = kVersion;
  j["meta"]["command"] = meta.command;
  j["meta"]["params"] = Json::object();
  for (const auto& [k, v] : meta.params) j["meta"]["params"][k] = v;
  if (!meta.derived.empty()) {
    for (const auto& [k, v] : meta.derived) j["meta"]["derived"][k] = v;
  }
  j["columns"] = Json::object();
  for (const auto& c : cols) {
    Json arr = Json::array();
    for (const auto& v : c.values) arr.push_back(v ? json_number(*v, c.integer) : Json(nullptr));
    j["columns"][c.name] = std::move(arr);
  }
  os << j.dump(2) << '\n';
}

struct Options {
  double a = 2.0;
  double m0 = 1.0;
  double omega = 1.0;
  double hbar = 1.0;
  std::string format = "csv";
  std::string out;
  std::optional<double> x_min;
  std::optional<double> x_max;
  int points = 201;
  std::vector<int> levels;
  bool canonical = false;
  // verify
  std::vector<double> a_list{1.0, 2.0};
  double tol = 1e-5;
  int grid_points = 20000;
  double nu = 1e9;
  std::vector<std::string> checks;
  std::string verify_format = "text";
  // limit
  std::string kind;
  std::vector<double> values;
  double q = 2.0;
  double x = 1.0;
};

void add_units(CLI::App* sub, Options& o) {
  sub->add_option("--m0", o.m0, "Reference mass m0")->capture_default_str();
  sub->add_option("--omega", o.omega, "Angular frequency")->capture_default_str();
  sub->add_option("--hbar", o.hbar, "Reduced Planck constant")->capture_default_str();
}

void add_output(CLI::App* sub, Options& o, std::vector<std::string> formats) {
  sub->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember(std::move(formats)))
      ->capture_default_str();
  sub->add_option("--out", o.out, "Write output to this file instead of stdout");
}

Meta base_meta(const std::string& command, const Options& o, bool with_a = true) {
  Meta m{command, {}, {}};
  if (with_a) m.params.emplace_back("a", o.a);
  m.params.emplace_back("m0", o.m0);
  m.params.emplace_back("omega", o.omega);
  m.params.emplace_back("hbar", o.hbar);
  return m;
}

std::vector<double> sample_x(const model::ModelParams& p, const Options& o) {
  if (o.points < 2) throw DomainError("--points must be >= 2");
  const double lo = o.x_min.value_or(-p.a());
  const double hi = o.x_max.value_or(p.a() + 12.0 / p.lambda0());
  if (!(lo < hi)) throw DomainError("--x-min must be < --x-max");
  std::vector<double> xs(o.points);
  for (int i = 0; i < o.points; ++i) xs[i] = lo + (hi - lo) * i / (o.points - 1);
  return xs;
}

void emit(std::ostream& os, const Options& o, const Meta& meta, const std::vector<Column>& cols) {
  if (o.format == "json") {
    write_json(os, meta, cols);
  } else {
    write_csv(os, meta, cols);
  }
}

void cmd_spectrum(std::ostream& os, const Options& o) {
  const auto p = model::ModelParams::make(o.m0, o.omega, o.hbar, o.a);
  const auto c = canonical::CanonicalParams::from(p);
  const int top = model::max_level(p);
  Column n{"n", {}, true}, e{"energy", {}}, ec{"canonical_energy", {}}, gap{"gap", {}};
  for (int k = 0; k <= top; ++k) {
    n.values.push_back(k);
    e.values.push_back(model::energy(p, k).energy);
    ec.values.push_back(canonical::canonical_energy(c, k));
    gap.values.push_back(limits::energy_gap(p, k));
  }
  Meta meta = base_meta("spectrum", o);
  meta.derived = {{"lambda0", p.lambda0()},
                  {"V_inf", model::well_depth(p)},
                  {"continuum_threshold", model::continuum_threshold(p)},
                  {"N", double(top)}};
  emit(os, o, meta, {n, e, ec, gap});
}

void cmd_profile(std::ostream& os, const Options& o) {
  const auto p = model::ModelParams::make(o.m0, o.omega, o.hbar, o.a);
  Column x{"x", {}}, v{"V", {}}, m{"M", {}};
  for (double xi : sample_x(p, o)) {
    x.values.push_back(xi);
    const auto pv = model::potential(p, xi);
    if (const double* d = std::get_if<double>(&pv)) {
      v.values.push_back(*d);
      m.values.push_back(model::effective_mass(p, xi));
    } else {
      v.values.push_back(std::nullopt);
      m.values.push_back(std::nullopt);
    }
  }
  Meta meta = base_meta("profile", o);
  meta.derived = {{"V_inf", model::well_depth(p)}};
  emit(os, o, meta, {x, v, m});
}

void cmd_wavefunction(std::ostream& os, const Options& o) {
  const auto p = model::ModelParams::make(o.m0, o.omega, o.hbar, o.a);
  const auto c = canonical::CanonicalParams::from(p);
  const std::vector<int> levels = o.levels.empty() ? std::vector<int>{0} : o.levels;
  for (int n : levels) {
    if (n < 0 || n > model::max_level(p)) throw LevelOutOfRange(n, model::max_level(p));
  }
  const auto xs = sample_x(p, o);
  std::vector<Column> cols{{"x", {}}};
  for (double xi : xs) cols[0].values.push_back(xi);
  for (int n : levels) {
    const std::string s = std::to_string(n);
    Column psi{"psi_" + s, {}}, prob{"prob_" + s, {}}, can{"canonical_psi_" + s, {}};
    for (double xi : xs) {
      // The state vanishes identically at and beyond the wall.
      const double v = xi > -p.a() ? model::wavefunction(p, n, xi) : 0.0;
      psi.values.push_back(v);
      prob.values.push_back(v * v);
      if (o.canonical) can.values.push_back(canonical::canonical_wavefunction(c, n, xi));
    }
    cols.push_back(std::move(psi));
    cols.push_back(std::move(prob));
    if (o.canonical) cols.push_back(std::move(can));
  }
  Meta meta = base_meta("wavefunction", o);
  meta.derived = {{"N", double(model::max_level(p))}};
  emit(os, o, meta, cols);
}

int cmd_verify(std::ostream& os, const Options& o) {
  checks::VerifyConfig cfg;
  cfg.units = {o.m0, o.omega, o.hbar};
  cfg.a_values = o.a_list;
  cfg.grid_points = o.grid_points;
  cfg.fd_tol = o.tol;
  cfg.nu = o.nu;
  cfg.selected = o.checks;
  for (double a : cfg.a_values) (void)cfg.units.at(a);  // reject bad params before any work
  const auto results = checks::run_verify(cfg);
  bool all = true;
  for (const auto& r : results) all = all && r.passed;

  if (o.verify_format == "text") {
    for (const auto& r : results) {
      os << (r.passed ? "PASS " : "FAIL ") << r.name << " measured=" << number(r.measured)
         << " threshold=" << number(r.threshold) << ' ' << r.detail << '\n';
    }
    os << (all ? "all checks passed" : "verification FAILED") << '\n';
  } else if (o.verify_format == "json") {
    Json j;
    j["meta"]["version"] = kVersion;
    j["meta"]["command"] = "verify";
    j["meta"]["params"]["a"] = o.a_list;
    for (const auto& [k, v] : base_meta("verify", o, false).params) j["meta"]["params"][k] = v;
    for (const char* c : {"check", "passed", "measured", "threshold", "detail"}) {
      j["columns"][c] = Json::array();
    }
    for (const auto& r : results) {
      j["columns"]["check"].push_back(r.name);
      j["columns"]["passed"].push_back(r.passed);
      j["columns"]["measured"].push_back(json_number(r.measured, false));
      j["columns"]["threshold"].push_back(json_number(r.threshold, false));
      j["columns"]["detail"].push_back(r.detail);
    }
    os << j.dump(2) << '\n';
  } else {
    os << "# version=" << kVersion << "\n# command=verify\n";
    for (const auto& [k, v] : base_meta("verify", o, false).params) {
      os << "# " << k << '=' << number(v) << '\n';
    }
    os << "check,passed,measured,threshold\n";
    for (const auto& r : results) {
      os << r.name << ',' << (r.passed ? 1 : 0) << ',' << number(r.measured) << ','
         << number(r.threshold) << '\n';
    }
  }
  return all ? kSuccess : kVerificationFailed;
}

void cmd_limit(std::ostream& os, const Options& o) {
  Meta meta = base_meta("limit " + o.kind, o, false);
  limits::LimitSweep sweep;
  auto family = [&](const std::vector<double>& as) {
    std::vector<model::ModelParams> out;
    for (double a : as) out.push_back(model::ModelParams::make(o.m0, o.omega, o.hbar, a));
    return out;
  };
  const int n = o.levels.empty() ? 0 : o.levels.front();
  if (o.kind == "bessel-hermite") {
    const auto nus = o.values.empty() ? std::vector<double>{1e4, 4e4, 1.6e5, 6.4e5} : o.values;
    const int n_max = o.levels.empty() ? 6 : o.levels.front();
    sweep = limits::bessel_hermite_sweep(nus, n_max);
    meta.params = {{"n_max", double(n_max)}};
  } else if (o.kind == "energy" || o.kind == "wavefunction") {
    const auto as = o.values.empty() ? std::vector<double>{3, 5, 10, 20} : o.values;
    const bool energy = o.kind == "energy";
    for (std::size_t i = 1; i < as.size(); ++i) {
      if (!(as[i] > as[i - 1])) throw DomainError("--values must be strictly increasing");
    }
    sweep = {as, {}, "a", energy ? "energy_gap" : "l2_distance"};
    for (const auto& p : family(as)) {
      sweep.metric_values.push_back(energy ? limits::energy_gap(p, n)
                                           : limits::wavefunction_distance(p, n));
    }
    meta.params.emplace_back("n", n);
  } else {
    const auto as = o.values.empty() ? std::vector<double>{2, 4, 8} : o.values;
    sweep = limits::continuum_magnitude(family(as), o.q, o.x);
    meta.params.emplace_back("q", o.q);
    meta.params.emplace_back("x", o.x);
  }
  Column param{sweep.parameter_name, {}}, metric{sweep.metric_name, {}};
  for (double v : sweep.parameter_values) param.values.push_back(v);
  for (double v : sweep.metric_values) metric.values.push_back(v);
  emit(os, o, meta, {param, metric});
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semi-infinite step-harmonic well with position-dependent mass", "pdem"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options o;

  auto* spectrum = app.add_subcommand("spectrum", "Bound-state energies n = 0..N");
  spectrum->add_option("--a", o.a, "Semiconfinement parameter")->capture_default_str();
  add_units(spectrum, o);
  add_output(spectrum, o, {"csv", "json"});

  auto* profile = app.add_subcommand("profile", "Sample V(x) and M(x)");
  profile->add_option("--a", o.a, "Semiconfinement parameter")->capture_default_str();
  add_units(profile, o);
  profile->add_option("--x-min", o.x_min, "Left end (default -a)");
  profile->add_option("--x-max", o.x_max, "Right end (default a + 12/lambda0)");
  profile->add_option("--points", o.points, "Number of samples")->capture_default_str();
  add_output(profile, o, {"csv", "json"});

  auto* wave = app.add_subcommand("wavefunction", "Sample bound-state wavefunctions");
  wave->add_option("--a", o.a, "Semiconfinement parameter")->capture_default_str();
  add_units(wave, o);
  wave->add_option("--n", o.levels, "Levels to sample (default 0)");
  wave->add_option("--x-min", o.x_min, "Left end (default -a)");
  wave->add_option("--x-max", o.x_max, "Right end (default a + 12/lambda0)");
  wave->add_option("--points", o.points, "Number of samples")->capture_default_str();
  wave->add_flag("--canonical", o.canonical, "Add constant-mass oscillator columns");
  add_output(wave, o, {"csv", "json"});

  auto* verify = app.add_subcommand("verify", "Run closed-form vs numerical checks");
  verify->add_option("--a", o.a_list, "Values of a for per-model checks")->capture_default_str();
  add_units(verify, o);
  verify->add_option("--tol", o.tol, "Relative tolerance of the FD spectrum check")
      ->capture_default_str();
  verify->add_option("--grid-points", o.grid_points, "Interior points of the FD grid")
      ->capture_default_str();
  verify->add_option("--nu", o.nu, "nu for the Bessel -> Hermite threshold")->capture_default_str();
  verify->add_option("--check", o.checks, "Run only these checks (repeatable)")
      ->check(CLI::IsMember(checks::check_names()));
  verify->add_option("--format", o.verify_format, "Output format")
      ->check(CLI::IsMember({"text", "csv", "json"}))
      ->capture_default_str();
  verify->add_option("--out", o.out, "Write output to this file instead of stdout");

  auto* limit = app.add_subcommand("limit", "Limit sweeps");
  limit->add_option("kind", o.kind, "bessel-hermite | energy | wavefunction | continuum")
      ->required()
      ->check(CLI::IsMember({"bessel-hermite", "energy", "wavefunction", "continuum"}));
  add_units(limit, o);
  limit->add_option("--values", o.values, "Sweep values (a, or nu for bessel-hermite)");
  limit->add_option("--n", o.levels, "Level (energy, wavefunction) or n_max (bessel-hermite)");
  limit->add_option("--q", o.q, "Fixed q of the continuum sweep")->capture_default_str();
  limit->add_option("--x", o.x, "Evaluation point of the continuum sweep")->capture_default_str();
  add_output(limit, o, {"csv", "json"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out, std::ios::binary);
    if (!file) {
      err << "error: cannot open '" << o.out << "' for writing\n";
      return kUsageError;
    }
  }
  std::ostream& os = o.out.empty() ? out : file;

  try {
    int code = kSuccess;
    if (spectrum->parsed()) {
      cmd_spectrum(os, o);
    } else if (profile->parsed()) {
      cmd_profile(os, o);
    } else if (wave->parsed()) {
      cmd_wavefunction(os, o);
    } else if (verify->parsed()) {
      code = cmd_verify(os, o);
    } else {
      cmd_limit(os, o);
    }
    os.flush();
    return code;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const LevelOutOfRange& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const BelowContinuum& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kVerificationFailed;
  }
}

}  // namespace pdem::cli
