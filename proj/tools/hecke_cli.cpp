// Batch driver: runs one verification task and writes its JSON report.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hecke/affine.hpp"
#include "hecke/cosets.hpp"
#include "hecke/finite_hecke.hpp"
#include "hecke/prop_hecke.hpp"
#include "hecke/serialize.hpp"

using namespace hecke;
using io::json;

namespace {

struct RunConfig {
  std::string task;
  int n = 2;
  int q = 2;
  int ell = 0;
  int window = 2;
  std::optional<int> prec;
  std::vector<int> relations{1, 2, 3, 4, 5, 6, 7};
  std::string output;
  std::string a, b, demo;

  int effective_prec() const { return prec.value_or(LocalConfig::default_prec(window)); }
};

int env_threads() {
  const char* s = std::getenv("HECKE_THREADS");
  if (!s || !*s) return 1;
  char* end = nullptr;
  const long v = std::strtol(s, &end, 10);
  if (*end || v < 1 || v > 256) throw ConfigError(std::string("HECKE_THREADS must be an integer in 1..256, got '") + s + "'");
  return static_cast<int>(v);
}

void validate(const RunConfig& c) {
  const bool weyl_task = c.task == "weyl-identities" || c.task == "affine-presentation";
  if (c.task != "finite-hecke") {
    const int lo = 2, hi = weyl_task ? 6 : 4;
    if (c.n < lo || c.n > hi)
      throw ConfigError("n = " + std::to_string(c.n) + " outside " + std::to_string(lo) + ".." + std::to_string(hi) + " for " + c.task);
  }
  if (c.q != 2 && c.q != 3 && c.q != 4) throw ConfigError("q = " + std::to_string(c.q) + " is not in {2, 3, 4}");
  if (c.ell < 0 || (c.ell != 0 && !is_prime(static_cast<std::uint64_t>(c.ell))))
    throw ConfigError("ell = " + std::to_string(c.ell) + " is neither 0 nor a prime");
  const int p = c.q == 4 ? 2 : c.q;
  if (c.task != "finite-hecke" && c.ell == p)
    throw ConfigError("ell = " + std::to_string(c.ell) + " equals the residue characteristic");
  if (c.window < 0) throw ConfigError("window must be nonnegative");
  if (c.prec && *c.prec < 1) throw ConfigError("prec must be positive");
  for (int r : c.relations)
    if (r < 1 || r > 7) throw ConfigError("relation " + std::to_string(r) + " is not in 1..7");
}

LocalConfig local_config(const RunConfig& c) { return LocalConfig::make(c.n, c.q, c.window, c.effective_prec()); }

json local_params(const RunConfig& c) {
  return {{"n", c.n}, {"q", c.q}, {"ell", c.ell}, {"prec", c.effective_prec()}, {"window", c.window}};
}

/// id, tau<i>, tau0inv, diag:a1,...,an, an inline JSON id, or @file.json.
DoubleCosetId parse_operand(const std::string& s, const LocalConfig& cfg) {
  const auto& f = cfg.field();
  if (s == "id") return DoubleCosetId::identity(f, cfg.n);
  if (s == "tau0inv") return canonical(generator_element(f, cfg.n, TauZeroInverseTag{}), cfg);
  if (s.rfind("tau", 0) == 0) {
    const std::string rest = s.substr(s[3] == ':' ? 4 : 3);
    int i = -1;
    try {
      std::size_t used = 0;
      i = std::stoi(rest, &used);
      if (used != rest.size()) i = -1;
    } catch (const std::exception&) {
    }
    if (i < 0 || i >= cfg.n) throw ConfigError("bad operand '" + s + "': tau index must be in 0.." + std::to_string(cfg.n - 1));
    return canonical(tau_element(f, cfg.n, i), cfg);
  }
  if (s.rfind("diag:", 0) == 0) {
    std::vector<int> a;
    std::stringstream ss(s.substr(5));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        a.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw ConfigError("bad operand '" + s + "'");
      }
    }
    if (static_cast<int>(a.size()) != cfg.n) throw ConfigError("bad operand '" + s + "': need n exponents");
    return canonical(GroupElement::diagonal_powers(f, a), cfg);
  }
  std::string text = s;
  if (!s.empty() && s[0] == '@') {
    std::ifstream in(s.substr(1));
    if (!in) throw ConfigError("cannot read " + s.substr(1));
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return io::id_from_json(json::parse(text), cfg);
  } catch (const json::exception& e) {
    throw ConfigError("bad operand '" + s + "': " + e.what());
  }
}

json run_task(const RunConfig& c, Report& rep) {
  if (c.task == "weyl-identities") {
    rep = affine::verify_weyl_identities(c.n);
    return io::report_json(c.task, {{"n", c.n}}, rep);
  }
  if (c.task == "affine-presentation") {
    rep = affine::verify_presentation(c.n);
    return io::report_json(c.task, {{"n", c.n}}, rep);
  }
  if (c.task == "coset-lemmas") {
    rep = verify_coset_lemmas(local_config(c));
    return io::report_json(c.task, local_params(c), rep);
  }
  if (c.task == "relations") {
    const auto cfg = local_config(c);
    const int threads = env_threads();
    HeckeEngine e(cfg, Field::from_ell(static_cast<std::uint32_t>(c.ell)), threads);
    for (int r : c.relations) rep.append(verify_relation(e, r), "relation " + std::to_string(r) + ": ");
    if (c.ell != 0) {
      HeckeEngine rational(cfg, Field::rationals(), threads);
      rep.append(verify_mod_ell(e, rational));
    }
    json params = local_params(c);
    params["relations"] = c.relations;
    return io::report_json(c.task, params, rep);
  }
  if (c.task == "structconst") {
    const auto cfg = local_config(c);
    HeckeEngine e(cfg, Field::from_ell(static_cast<std::uint32_t>(c.ell)), env_threads());
    const auto a = parse_operand(c.a, cfg), b = parse_operand(c.b, cfg);
    const auto& cs = e.structure_constants(a, b);
    rep.add("product computed", true, std::to_string(cs.size()) + " terms");
    if (a.is_identity() || b.is_identity()) {
      const auto& other = a.is_identity() ? b : a;
      rep.add("identity operand echoes the other", cs.size() == 1 && cs[0].first == other && cs[0].second.is_one());
    }
    if (e.field().is_rational()) {
      bool counts = true;
      for (const auto& [d, v] : cs)
        counts = counts && v.rational_value().get_den() == 1 && v.rational_value() > 0;
      rep.add("coefficients are positive integers", counts);
    }
    json out = io::report_json(c.task, local_params(c), rep);
    out["result"] = io::structure_constants_json(e, a, b);
    return out;
  }
  if (c.task == "finite-hecke") {
    const Field f = Field::from_ell(static_cast<std::uint32_t>(c.ell));
    const auto names = c.demo == "all" ? finite::instance_names() : std::vector<std::string>{c.demo};
    for (const auto& name : names) rep.append(finite::run_instance(finite::make_instance(name, f)), name + ": ");
    return io::report_json(c.task, {{"demo", c.demo}, {"ell", c.ell}}, rep);
  }
  throw ConfigError("unknown task '" + c.task + "'");
}

void apply_config_file(const std::string& path, RunConfig& c, const CLI::App& app) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  // command-line flags win over the file
  auto take = [&](const char* key, const char* flag, auto& field) {
    if (!j.contains(key) || app.count(flag) > 0) return;
    try {
      field = j.at(key).get<std::decay_t<decltype(field)>>();
    } catch (const json::exception&) {
      throw ConfigError(std::string("config key '") + key + "' has the wrong type");
    }
  };
  for (const auto& [key, value] : j.items()) {
    static const std::set<std::string> known{"n", "q", "ell", "prec", "window", "relations", "output"};
    if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  take("n", "--n", c.n);
  take("q", "--q", c.q);
  take("ell", "--ell", c.ell);
  take("window", "--window", c.window);
  take("relations", "--relations", c.relations);
  take("output", "--output", c.output);
  if (j.contains("prec") && app.count("--prec") == 0) {
    if (!j.at("prec").is_number_integer()) throw ConfigError("config key 'prec' has the wrong type");
    c.prec = j.at("prec").get<int>();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verifies Hecke algebra relations, coset lemmas and finite-group checks; writes JSON reports."};
  app.require_subcommand(1);
  RunConfig c;
  int prec = 0;
  std::string config;
  app.add_option("--n", c.n, "matrix size");
  app.add_option("--q", c.q, "residue field size (2, 3 or 4)");
  app.add_option("--ell", c.ell, "coefficient characteristic, 0 for the rationals");
  app.add_option("--prec", prec, "t-adic precision (default 2 window + 2)");
  app.add_option("--window", c.window, "valuation window V");
  app.add_option("--relations", c.relations, "relations to check (1-7)")->delimiter(',');
  app.add_option("--output", c.output, "report path (default: standard output)");
  app.add_option("--config", config, "JSON file with any of n, q, ell, prec, window, relations, output");

  app.add_subcommand("weyl-identities", "finite Weyl group identities, exhaustive")->fallthrough();
  app.add_subcommand("affine-presentation", "relations of the extended affine Weyl group")->fallthrough();
  app.add_subcommand("coset-lemmas", "tau products, absorption, monomial intersection")->fallthrough();
  app.add_subcommand("relations", "the seven relations in the Hecke algebra")->fallthrough();
  auto* sc = app.add_subcommand("structconst", "structure constants of f_a f_b")->fallthrough();
  sc->add_option("a", c.a, "id, tau<i>, tau0inv, diag:a1,..,an, a JSON id or @file")->required();
  sc->add_option("b", c.b, "second operand, same forms")->required();
  auto* fh = app.add_subcommand("finite-hecke", "finite-group Hecke algebra checks")->fallthrough();
  fh->add_option("demo", c.demo, "s3-s2-trivial, s3-s2-sign, gl2f2-borel-trivial or all")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  c.task = app.get_subcommands().front()->get_name();

  Report rep;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (!config.empty()) apply_config_file(config, c, app);
    if (app.count("--prec") > 0) c.prec = prec;
    validate(c);
    const json out = run_task(c, rep);
    const std::string text = io::dump(out);
    if (c.output.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(c.output);
      if (!(f << text)) throw ConfigError("cannot write " + c.output);
    }
  } catch (const NonConstantOnCoset& e) {
    std::cerr << c.task << ": " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << c.task << ": " << e.what() << "\n";
    return 2;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const auto& ch : rep.checks())
    if (!ch.pass) std::cerr << "FAIL " << ch.name << ": " << ch.detail << "\n";
  std::cerr << c.task << ": " << rep.checks().size() << " checks, " << rep.failures() << " failed ("
            << std::fixed << std::setprecision(2) << secs << " s)\n";
  return rep.ok() ? 0 : 1;
}
