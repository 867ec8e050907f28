#include <sharpineq/sharpineq.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;

struct RunConfig {
  std::string command;
  std::string model;
  std::string output;
  // constant
  bool multiplicative = false;
  bool mean_squared = false;
  bool hlp = false;
  std::vector<double> h;
  std::vector<double> lambda;
  std::string curve;
  // stechkin
  std::vector<double> budget;
  std::string convention = "as-displayed";
  std::string csv;
  std::int64_t lower_bound = 0;
  // verify
  std::string kind = "taikov";
  std::int64_t trials = 10000;
  std::uint64_t seed = 1;
  std::string p = "2";
  double k = 1.0;
  int harmonic = 0;
  // catalog
  std::string action;
  std::string name;
  // tolerance overrides
  std::optional<double> rel;
  std::optional<int> max_level;
};

struct Failure {
  std::string msg;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"cannot open '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{"cannot write '" + path + "'"};
  out << text;
}

template <class T>
void take(const json& cfg, const char* key, T& dst) {
  if (cfg.contains(key)) {
    try {
      dst = cfg[key].get<T>();
    } catch (const json::exception&) {
      throw Failure{std::string("config field '") + key + "' has the wrong type"};
    }
  }
}

void apply_config(const std::string& path, RunConfig& rc) {
  json cfg;
  try {
    cfg = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw Failure{path + ": " + e.what()};
  }
  if (!cfg.is_object()) throw Failure{path + ": expected an object"};
  take(cfg, "command", rc.command);
  take(cfg, "model", rc.model);
  take(cfg, "output", rc.output);
  if (cfg.contains("mode")) {
    const std::string mode = cfg["mode"].get<std::string>();
    if (mode != "mean-squared" && mode != "multiplicative") throw Failure{"config field 'mode' is invalid"};
    rc.multiplicative = mode == "multiplicative";
    rc.mean_squared = !rc.multiplicative;
  }
  take(cfg, "hlp", rc.hlp);
  take(cfg, "h", rc.h);
  take(cfg, "lambda", rc.lambda);
  take(cfg, "curve", rc.curve);
  if (cfg.contains("budget") && cfg["budget"].is_number()) cfg["budget"] = json::array({cfg["budget"]});
  take(cfg, "budget", rc.budget);
  take(cfg, "convention", rc.convention);
  take(cfg, "csv", rc.csv);
  take(cfg, "lower_bound", rc.lower_bound);
  take(cfg, "kind", rc.kind);
  take(cfg, "trials", rc.trials);
  take(cfg, "seed", rc.seed);
  if (cfg.contains("p")) rc.p = cfg["p"].is_string() ? cfg["p"].get<std::string>() : cfg["p"].dump();
  take(cfg, "k", rc.k);
  take(cfg, "harmonic", rc.harmonic);
  take(cfg, "action", rc.action);
  take(cfg, "name", rc.name);
  if (cfg.contains("tolerance") && cfg["tolerance"].contains("rel")) rc.rel = cfg["tolerance"]["rel"].get<double>();
  if (cfg.contains("truncation") && cfg["truncation"].contains("max_level"))
    rc.max_level = cfg["truncation"]["max_level"].get<int>();
}

double parse_p(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "Inf") return INFINITY;
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Failure{"invalid exponent p '" + s + "'"};
}

class Model {
 public:
  explicit Model(const RunConfig& rc) {
    if (rc.model.empty()) throw Failure{"--model is required"};
    std::string text;
    if (rc.model.rfind("catalog:", 0) == 0) {
      char* s = nullptr;
      check(sharpineq_catalog_show(rc.model.substr(8).c_str(), &s));
      text = s;
      sharpineq_string_free(s);
    } else {
      text = read_file(rc.model);
    }
    if (rc.rel || rc.max_level) {
      json doc;
      try {
        doc = json::parse(text);
      } catch (const json::parse_error&) {
        doc = nullptr;
      }
      if (doc.is_object()) {
        if (rc.rel) doc["tolerance"]["rel"] = *rc.rel;
        if (rc.max_level) doc["truncation"]["max_level"] = *rc.max_level;
        text = doc.dump(2);
      }
    }
    check(sharpineq_model_parse(text.c_str(), rc.model.c_str(), &m_));
  }
  ~Model() { sharpineq_model_free(m_); }
  Model(const Model&) = delete;
  Model& operator=(const Model&) = delete;
  const sharpineq_model* get() const { return m_; }

  static void check(int code) {
    if (code < 0) throw Failure{sharpineq_last_error()};
  }

 private:
  sharpineq_model* m_ = nullptr;
};

// Writes the artifacts and maps the library code onto the exit status.
int finish(int code, char* js, char* csv, const RunConfig& rc, const std::string& csv_path) {
  if (code < 0 && code != SHARPINEQ_E_NONCONVERGED) {
    sharpineq_string_free(js);
    sharpineq_string_free(csv);
    throw Failure{sharpineq_last_error()};
  }
  std::string out = js ? js : "";
  std::string curve = csv ? csv : "";
  sharpineq_string_free(js);
  sharpineq_string_free(csv);
  write_out(rc.output, out);
  if (!csv_path.empty() && !curve.empty()) write_out(csv_path, curve);
  if (code == SHARPINEQ_E_NONCONVERGED) {
    std::cerr << "sharpineq: " << sharpineq_status_string(code) << "\n";
    return 1;
  }
  return code == SHARPINEQ_VACUOUS ? 2 : 0;
}

int run(const RunConfig& rc) {
  char* js = nullptr;
  char* csv = nullptr;
  if (rc.command == "constant") {
    if (rc.mean_squared && rc.multiplicative) throw Failure{"choose one of --mean-squared and --multiplicative"};
    const bool mult = rc.multiplicative || (!rc.mean_squared && !rc.lambda.empty());
    if (mult && !rc.h.empty()) throw Failure{"--h applies to the mean-squared constant; use --lambda"};
    if (!mult && !rc.lambda.empty()) throw Failure{"--lambda applies to the multiplicative constant; use --h"};
    Model m(rc);
    const std::vector<double>& w = mult ? rc.lambda : rc.h;
    int code = sharpineq_run_constant(m.get(), mult ? SHARPINEQ_MULTIPLICATIVE : SHARPINEQ_MEAN_SQUARED, rc.hlp,
                                      w.data(), w.size(), !rc.curve.empty(), &js, &csv);
    return finish(code, js, csv, rc, rc.curve);
  }
  if (rc.command == "stechkin") {
    if (rc.budget.empty()) throw Failure{"--budget is required"};
    int conv;
    if (rc.convention == "as-displayed")
      conv = SHARPINEQ_CONVENTION_AS_DISPLAYED;
    else if (rc.convention == "sqrt")
      conv = SHARPINEQ_CONVENTION_SQRT;
    else
      throw Failure{"--convention must be as-displayed or sqrt"};
    Model m(rc);
    int code = sharpineq_run_stechkin(m.get(), rc.budget.data(), rc.budget.size(), conv, rc.lower_bound, &js, &csv);
    return finish(code, js, csv, rc, rc.csv);
  }
  if (rc.command == "verify") {
    int kind;
    if (rc.kind == "taikov")
      kind = SHARPINEQ_VERIFY_TAIKOV;
    else if (rc.kind == "hlp")
      kind = SHARPINEQ_VERIFY_HLP;
    else if (rc.kind == "solyar")
      kind = SHARPINEQ_VERIFY_SOLYAR;
    else
      throw Failure{"verify kind must be taikov, hlp or solyar"};
    std::optional<Model> m;
    if (!rc.model.empty() && kind != SHARPINEQ_VERIFY_SOLYAR) m.emplace(rc);
    int code = sharpineq_run_verify(m ? m->get() : nullptr, kind, rc.trials, rc.seed, parse_p(rc.p), rc.k,
                                    rc.harmonic, &js);
    return finish(code, js, nullptr, rc, "");
  }
  if (rc.command == "catalog") {
    int code;
    if (rc.action == "list")
      code = sharpineq_catalog_list(&js);
    else if (rc.action == "show") {
      if (rc.name.empty()) throw Failure{"catalog show needs a preset name"};
      code = sharpineq_catalog_show(rc.name.c_str(), &js);
    } else {
      throw Failure{"catalog action must be list or show"};
    }
    return finish(code, js, nullptr, rc, "");
  }
  throw Failure{rc.command.empty() ? "no command given" : "unknown command '" + rc.command + "'"};
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig rc;
  std::string config;
  std::optional<double> rel;
  std::optional<int> max_level;

  CLI::App app{"Sharp constants for Taikov, Hardy-Littlewood-Polya, Stechkin and Solyar inequalities"};
  app.fallthrough();
  app.set_version_flag("--version", std::string(sharpineq_version()));
  app.add_option("--config", config, "JSON run configuration (overrides flags)");
  app.add_option("--output,-o", rc.output, "write the JSON record here instead of stdout");
  app.add_option("--rel", rel, "relative tolerance override");
  app.add_option("--max-level", max_level, "truncation level override");

  auto* constant = app.add_subcommand("constant", "sharp constant of a model");
  constant->set_help_flag("--help", "print this help message and exit");
  constant->add_option("--model", rc.model, "model file or catalog:NAME");
  constant->add_flag("--mean-squared", rc.mean_squared, "mean-squared form (default)");
  constant->add_flag("--multiplicative", rc.multiplicative, "multiplicative form");
  constant->add_flag("--hlp", rc.hlp, "norm functional (Hardy-Littlewood-Polya type)");
  constant->add_option("--h", rc.h, "weights h")->expected(1, -1);
  constant->add_option("--lambda", rc.lambda, "exponents lambda")->expected(1, -1);
  constant->add_option("--curve", rc.curve, "write the convergence curve (CSV)");

  auto* stechkin = app.add_subcommand("stechkin", "best approximation error E(N)");
  stechkin->add_option("--model", rc.model, "model file or catalog:NAME");
  stechkin->add_option("--budget", rc.budget, "budgets N")->expected(1, -1);
  stechkin->add_option("--convention", rc.convention, "as-displayed or sqrt");
  stechkin->add_option("--csv", rc.csv, "write the (N, mu, E_N) table");
  stechkin->add_option("--lower-bound", rc.lower_bound, "evaluate the lower bound over M_L");

  auto* verify = app.add_subcommand("verify", "randomized no-violation scans");
  verify->add_option("kind", rc.kind, "taikov, hlp or solyar");
  verify->add_option("--model", rc.model, "model file or catalog:NAME (taikov/hlp)");
  verify->add_option("--trials", rc.trials, "number of random trials");
  verify->add_option("--seed", rc.seed, "generator seed");
  verify->add_option("--p", rc.p, "Solyar exponent p (or inf)");
  verify->add_option("--k", rc.k, "Solyar order k");
  verify->add_option("--harmonic", rc.harmonic, "evaluate the single harmonic e^{int}");

  auto* catalog = app.add_subcommand("catalog", "built-in model presets");
  catalog->add_option("action", rc.action, "list or show");
  catalog->add_option("name", rc.name, "preset name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  for (auto* sub : {constant, stechkin, verify, catalog})
    if (sub->parsed()) rc.command = sub->get_name();
  rc.rel = rel;
  rc.max_level = max_level;

  try {
    if (!config.empty()) apply_config(config, rc);
    if (rc.command.empty()) {
      std::cerr << app.help();
      return 1;
    }
    return run(rc);
  } catch (const Failure& f) {
    std::cerr << "sharpineq: " << f.msg << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "sharpineq: " << e.what() << "\n";
    return 1;
  }
}
