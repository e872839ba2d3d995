#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "lttorus/attractor.hpp"
#include "lttorus/families.hpp"
#include "lttorus/interp.hpp"
#include "lttorus/parallel.hpp"
#include "lttorus/serialize.hpp"
#include "lttorus/special.hpp"
#include "lttorus/spectral1d.hpp"
#include "lttorus/torus.hpp"

namespace lttorus::cli {

namespace {

const std::vector<std::string> kCommands = {"constants", "k-curve", "thresholds", "verify", "attractor"};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
  for (const auto& a : args)
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  return false;
}

struct Output {
  std::string text;
  int code = kExitOk;
};

struct Globals {
  std::string format;
  bool format_given = false;
  std::uint64_t seed = 1;
};

Json header(const std::string& command, const Globals& g, Json params) {
  Json j;
  j["version"] = kVersion;
  j["command"] = command;
  j["seed"] = g.seed;
  j["params"] = std::move(params);
  return j;
}

std::string csv_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  std::ostringstream os;
  os << std::setprecision(15) << x;
  return os.str();
}

void require_json(const Globals& g, const std::string& command) {
  if (g.format_given && g.format != "json")
    throw std::invalid_argument(command + " only supports --format json");
}

// constants ---------------------------------------------------------------

struct ConstantsArgs {
  double gamma = 1.0;
  int d = 1;
};

Output cmd_constants(const ConstantsArgs& a, const Globals& g) {
  require_json(g, "constants");
  if (a.d < 1) throw std::invalid_argument("--d must be >= 1");
  const double classical = special::semiclassical_constant(a.gamma, a.d);
  Json params;
  params["gamma"] = number(a.gamma);
  params["d"] = a.d;
  Json j = header("constants", g, params);
  j["semiclassical"] = number(classical);
  j["scaled"] = number(std::pow(special::kPi / std::sqrt(3.0), a.d) * classical);
  j["scale_factor"] = number(std::pow(special::kPi / std::sqrt(3.0), a.d));
  if (a.gamma == 1.0)
    j["orthonormal_constant"] =
        number(special::lt_to_orthonormal_constant(std::pow(special::kPi / std::sqrt(3.0), a.d) * classical, a.d));
  else
    j["orthonormal_constant"] = nullptr;
  const auto check = special::product_identity_check(a.gamma, a.d);
  Json product;
  product["product"] = number(check.first);
  product["direct"] = number(check.second);
  j["product_identity"] = product;
  return {j.dump(2) + "\n", kExitOk};
}

// k-curve -------------------------------------------------------------------

struct CurveArgs {
  std::string which = "k1";
  double min = 0.0;
  double max = 0.0;
  int n = 50;
};

Output cmd_k_curve(const CurveArgs& a, const Globals& g) {
  const interp::Which which = interp::which_from_string(a.which);
  const interp::CurveTable table = interp::export_curve(which, a.min, a.max, a.n);
  Json params;
  params["which"] = interp::to_string(which);
  params["min"] = number(a.min);
  params["max"] = number(a.max);
  params["n"] = a.n;
  if (g.format_given && g.format == "json") {
    Json j = header("k-curve", g, params);
    j["curve"] = to_json(table);
    return {j.dump(2) + "\n", kExitOk};
  }
  std::ostringstream os;
  os << "# version=" << kVersion << "\n# seed=" << g.seed << "\n# which=" << interp::to_string(which)
     << " min=" << csv_number(a.min) << " max=" << csv_number(a.max) << " n=" << a.n << "\n";
  os << interp::to_csv(table);
  return {os.str(), kExitOk};
}

// thresholds ----------------------------------------------------------------

Output cmd_thresholds(double tol, const Globals& g) {
  require_json(g, "thresholds");
  const auto star = interp::beta_star_bracket(tol);
  const auto star_star = interp::beta_star_star_bracket(tol);
  Json params;
  params["tol"] = number(tol);
  Json j = header("thresholds", g, params);
  j["beta_star"] = number(star.mid());
  j["beta_star_star"] = number(star_star.mid());
  j["tol"] = number(tol);
  j["beta_star_bracket"] = {number(star.lo), number(star.hi)};
  j["beta_star_star_bracket"] = {number(star_star.lo), number(star_star.hi)};
  j["unit_regime_max_dim"] = static_cast<int>(std::floor(star_star.lo / star.hi)) + 1;
  return {j.dump(2) + "\n", kExitOk};
}

// verify --------------------------------------------------------------------

struct VerifyArgs {
  std::string kind = "h2";
  int seeds = 10;
  double gamma = 1.0;
  double alpha = 1.0;
  std::optional<double> beta;
  double delta = 0.0;
  int d = 2;
  int M = 2;
  int N = 4;
  std::optional<int> band;
  double scale = 1.0;
  std::optional<int> truncation;
  double rhs_scale = 1.0;
};

int default_band(const std::string& kind) {
  if (kind == "torus") return 1;
  if (kind == "trace1" || kind == "trace2") return 3;
  return 2;
}

Output cmd_verify(const VerifyArgs& a, const Globals& g) {
  if (g.format_given && g.format != "json" && g.format != "csv") throw std::invalid_argument("unknown format");
  if (a.seeds < 1) throw std::invalid_argument("--seeds must be >= 1");
  if (!(a.rhs_scale > 0.0)) throw std::invalid_argument("--rhs-scale must be positive");
  const int band = a.band.value_or(default_band(a.kind));
  if (band < 0) throw std::invalid_argument("--band must be >= 0");

  Json params;
  params["kind"] = a.kind;
  params["seeds"] = a.seeds;
  params["band"] = band;
  params["scale"] = number(a.scale);
  params["rhs_scale"] = number(a.rhs_scale);

  std::function<Json(std::uint64_t)> run;
  if (a.kind == "h1" || a.kind == "h2") {
    params["gamma"] = number(a.gamma);
    params["M"] = a.M;
    params["truncation"] = a.truncation ? Json(*a.truncation) : Json(nullptr);
    if (a.kind == "h1") {
      const double beta = a.beta.value_or(0.1);
      params["alpha"] = number(a.alpha);
      params["beta"] = number(beta);
      if (!(a.alpha > 0.0)) throw std::invalid_argument("--alpha must be positive");
      run = [=](std::uint64_t seed) {
        const auto v = spectral1d::random_psd_potential(a.M, band, 2.0 * special::kPi / a.alpha, a.scale, seed);
        BoundReport r = spectral1d::verify_bound_h1(v, a.alpha, beta, a.gamma, a.truncation);
        r = scale_rhs(r, a.rhs_scale);
        r.seed = seed;
        return to_json(r);
      };
    } else {
      params["delta"] = number(a.delta);
      run = [=](std::uint64_t seed) {
        const auto v = spectral1d::random_psd_potential(a.M, band, 2.0 * special::kPi, a.scale, seed);
        BoundReport r = spectral1d::verify_bound_h2(v, a.delta, a.gamma, a.truncation);
        r = scale_rhs(r, a.rhs_scale);
        r.seed = seed;
        return to_json(r);
      };
    }
  } else if (a.kind == "torus") {
    if (a.d < 2 || a.d > 3) throw std::invalid_argument("--d must be 2 or 3 for torus verification");
    std::vector<double> alphas(a.d - 1, a.alpha);
    alphas.push_back(1.0);
    const torus::TorusGeometry geom(alphas);
    params["gamma"] = number(a.gamma);
    params["d"] = a.d;
    params["alpha"] = number(a.alpha);
    run = [=](std::uint64_t seed) {
      const auto v = torus::random_scalar_potential(std::vector<int>(a.d, band), a.scale, seed);
      std::optional<std::vector<int>> trunc;
      if (a.truncation) trunc = std::vector<int>(a.d, *a.truncation);
      torus::TorusReport r = torus::verify_bound_torus(v, geom, a.gamma, trunc);
      r.bound = scale_rhs(r.bound, a.rhs_scale);
      r.bound.seed = seed;
      return to_json(r);
    };
  } else if (a.kind == "trace1" || a.kind == "trace2") {
    params["M"] = a.M;
    params["N"] = a.N;
    if (a.kind == "trace1") {
      const double beta = a.beta.value_or(0.1);
      if (!(a.alpha > 0.0)) throw std::invalid_argument("--alpha must be positive");
      params["alpha"] = number(a.alpha);
      params["beta"] = number(beta);
      run = [=](std::uint64_t seed) {
        const auto fam = families::random_orthonormal_family(a.N, a.M, band, 2.0 * special::kPi / a.alpha, false, seed);
        BoundReport r = scale_rhs(families::verify_trace1(fam, a.alpha, beta), a.rhs_scale);
        r.seed = seed;
        return to_json(r);
      };
    } else {
      const double beta = a.beta.value_or(0.0);
      params["beta"] = number(beta);
      run = [=](std::uint64_t seed) {
        const auto fam = families::random_orthonormal_family(a.N, a.M, band, 2.0 * special::kPi, true, seed);
        BoundReport r = scale_rhs(families::verify_trace2(fam, beta), a.rhs_scale);
        r.seed = seed;
        return to_json(r);
      };
    }
  } else {
    throw std::invalid_argument("unknown --kind '" + a.kind + "' (expected h1, h2, torus, trace1, trace2)");
  }

  std::vector<Json> reports(static_cast<std::size_t>(a.seeds));
  parallel_for(reports.size(), [&](std::size_t i) { reports[i] = run(g.seed + i); });

  int failed = 0;
  for (const auto& r : reports)
    if (!r.at("pass").get<bool>()) ++failed;
  const int code = failed > 0 ? kExitViolation : kExitOk;

  if (g.format_given && g.format == "csv") {
    std::ostringstream os;
    os << "# version=" << kVersion << "\n# seed=" << g.seed << "\n# params=" << params.dump() << "\n";
    os << "seed,lhs,rhs,ratio,pass,constant_used\n";
    for (const auto& r : reports) {
      auto field = [&](const char* key) {
        const Json& v = r.at(key);
        return v.is_string() ? v.get<std::string>() : csv_number(v.get<double>());
      };
      os << r.at("seed").get<std::uint64_t>() << ',' << field("lhs") << ',' << field("rhs") << ','
         << field("ratio") << ',' << (r.at("pass").get<bool>() ? "true" : "false") << ','
         << field("constant_used") << '\n';
    }
    return {os.str(), code};
  }
  Json j = header("verify", g, params);
  j["reports"] = reports;
  j["passed"] = a.seeds - failed;
  j["failed"] = failed;
  j["all_pass"] = failed == 0;
  return {j.dump(2) + "\n", code};
}

// attractor -----------------------------------------------------------------

struct AttractorArgs {
  std::string formula;
  attractor::FlowParams flow;
  double c_lt = attractor::kDefaultCLT;
  double c_p = attractor::default_c_p();
  double c_q = attractor::kDefaultCQ;
};

Output cmd_attractor(const AttractorArgs& a, const Globals& g) {
  require_json(g, "attractor");
  Json params;
  params["formula"] = a.formula;
  params["flow"] = to_json(a.flow);
  Json constants;
  if (a.formula == "square") {
    constants["c_lt"] = number(a.c_lt);
  } else if (a.formula == "elongated") {
    constants["c_p"] = number(a.c_p);
    constants["c_q"] = number(a.c_q);
  } else if (a.formula != "kolmogorov") {
    throw std::invalid_argument("unknown --formula '" + a.formula + "' (expected square, elongated, kolmogorov)");
  }
  params["constants"] = constants;
  Json j = header("attractor", g, params);
  j["formula"] = a.formula;
  try {
    double value = 0.0;
    if (a.formula == "square")
      value = attractor::dim_bound_square(a.flow, a.c_lt);
    else if (a.formula == "elongated")
      value = attractor::dim_bound_elongated(a.flow, a.c_p, a.c_q);
    else
      value = attractor::kolmogorov_number(a.flow);
    j["value"] = number(value);
    j["valid"] = true;
    j["error"] = nullptr;
    return {j.dump(2) + "\n", kExitOk};
  } catch (const attractor::ValidityError& e) {
    j["value"] = nullptr;
    j["valid"] = false;
    j["error"] = e.what();
    return {j.dump(2) + "\n", kExitUsage};
  }
}

}  // namespace

std::vector<std::string> merge_config(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;

  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file '" + path + "'");
  std::vector<std::string> merged = args;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + " is not key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw std::invalid_argument("config line " + std::to_string(lineno) + " has an empty key");
    if (key == "command" || key == "subcommand") {
      const bool present = std::any_of(args.begin(), args.end(), [](const std::string& a) {
        return std::find(kCommands.begin(), kCommands.end(), a) != kCommands.end();
      });
      if (!present) merged.insert(merged.begin(), value);
      continue;
    }
    const std::string flag = "--" + key;
    if (has_flag(args, flag) || (key.size() == 1 && has_flag(args, "-" + key))) continue;
    merged.push_back(flag);
    merged.push_back(value);
  }
  return merged;
}

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lieb-Thirring constants on tori and numerical checks of the bounds", "lttorus"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Globals globals;
  std::string out_path;
  std::string config_path;
  auto* format_opt = app.add_option("--format", globals.format, "json or csv")
                         ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out_path, "write results to this file instead of stdout");
  app.add_option("--config", config_path, "flat key=value file; flags given on the command line win");
  app.add_option("--seed", globals.seed, "base seed recorded in every output");

  ConstantsArgs constants_args;
  auto* constants = app.add_subcommand("constants", "semiclassical and torus-scaled constants");
  constants->add_option("--gamma", constants_args.gamma);
  constants->add_option("--d", constants_args.d);

  CurveArgs curve_args;
  auto* curve = app.add_subcommand("k-curve", "table of K1 or K2 over a beta range (CSV)");
  curve->add_option("--which", curve_args.which);
  curve->add_option("--min", curve_args.min)->required();
  curve->add_option("--max", curve_args.max)->required();
  curve->add_option("-n,--n", curve_args.n);

  double tol = 1e-6;
  auto* thresholds = app.add_subcommand("thresholds", "beta_* and beta_**");
  thresholds->add_option("--tol", tol);

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "randomized checks of the spectral and trace bounds");
  verify->add_option("--kind", verify_args.kind)->check(CLI::IsMember({"h1", "h2", "torus", "trace1", "trace2"}));
  verify->add_option("--seeds", verify_args.seeds, "number of random instances");
  verify->add_option("--gamma", verify_args.gamma);
  verify->add_option("--alpha", verify_args.alpha);
  verify->add_option("--beta", verify_args.beta);
  verify->add_option("--delta", verify_args.delta);
  verify->add_option("--d", verify_args.d);
  verify->add_option("--M", verify_args.M, "matrix or vector dimension");
  verify->add_option("--N", verify_args.N, "family size");
  verify->add_option("--band", verify_args.band, "band of the random factor");
  verify->add_option("--scale", verify_args.scale);
  verify->add_option("--truncation", verify_args.truncation);
  verify->add_option("--rhs-scale", verify_args.rhs_scale, "multiply every rhs (fault injection)");

  AttractorArgs attractor_args;
  attractor_args.flow.grad_g_norm = 1.0;
  auto* attr = app.add_subcommand("attractor", "attractor dimension estimates");
  attr->add_option("--formula", attractor_args.formula)->required();
  attr->add_option("--nu", attractor_args.flow.nu);
  attr->add_option("--mu", attractor_args.flow.mu);
  attr->add_option("--L", attractor_args.flow.L);
  attr->add_option("--alpha", attractor_args.flow.alpha);
  attr->add_option("--grad-g", attractor_args.flow.grad_g_norm);
  attr->add_option("--c-lt", attractor_args.c_lt);
  attr->add_option("--c-p", attractor_args.c_p);
  attr->add_option("--c-q", attractor_args.c_q);

  for (auto* sub : {constants, curve, thresholds, verify, attr}) sub->fallthrough();

  std::vector<std::string> args;
  try {
    args = merge_config(raw_args);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  globals.format_given = format_opt->count() > 0;

  Output result;
  try {
    if (*constants)
      result = cmd_constants(constants_args, globals);
    else if (*curve)
      result = cmd_k_curve(curve_args, globals);
    else if (*thresholds)
      result = cmd_thresholds(tol, globals);
    else if (*verify)
      result = cmd_verify(verify_args, globals);
    else
      result = cmd_attractor(attractor_args, globals);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kExitViolation;
  }

  if (out_path.empty()) {
    out << result.text;
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << out_path << "'\n";
      return kExitUsage;
    }
    file << result.text;
  }
  return result.code;
}

}  // namespace lttorus::cli
