// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any
// criterion fails.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <string>

#include "hecke/affine.hpp"
#include "hecke/cosets.hpp"
#include "hecke/finite_hecke.hpp"
#include "hecke/prop_hecke.hpp"
#include "hecke/serialize.hpp"

using namespace hecke;

namespace {

struct GridPoint {
  int n, q;
  std::uint32_t ell;
};

const std::vector<GridPoint> kGrid{{2, 2, 3}, {2, 3, 2}, {3, 2, 3}};
constexpr int kWindow = 2;

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Adds the failing checks of r to out, keeping the first few.
void absorb(Outcome& out, const Report& r, const std::string& where) {
  for (const auto& c : r.checks())
    if (!c.pass) {
      if (out.pass) out.detail = where + ": " + c.name + " " + c.detail;
      out.pass = false;
    }
}

Report all_relations(HeckeEngine& e) {
  Report r;
  for (int k = 1; k <= 7; ++k) r.append(verify_relation(e, k), "relation " + std::to_string(k) + ": ");
  return r;
}

std::string where(const GridPoint& g, const std::string& coeff) {
  return "(n, q) = (" + std::to_string(g.n) + ", " + std::to_string(g.q) + ") over " + coeff;
}

/// The report and every computed structure constant, serialized.
std::string fingerprint(HeckeEngine& e, const Report& r) {
  io::json j = io::to_json(r);
  io::json table = io::json::array();
  for (const auto& [a, b] : e.computed_pairs()) table.push_back(io::structure_constants_json(e, a, b));
  return io::dump({{"checks", j}, {"products", table}});
}

Outcome criterion1() {
  Outcome o;
  std::size_t checks = 0;
  for (const auto& g : kGrid)
    for (const Field f : {Field::rationals(), Field::prime(g.ell)}) {
      HeckeEngine e(LocalConfig::make(g.n, g.q, kWindow), f);
      const auto r = all_relations(e);
      checks += r.checks().size();
      absorb(o, r, where(g, f.name()));
    }
  if (o.pass) o.detail = std::to_string(checks) + " checks over 3 grid points, Q and F_ell";
  return o;
}

Outcome criterion2() {
  Outcome o;
  std::size_t checks = 0;
  for (int n = 2; n <= 6; ++n) {
    const auto r = affine::verify_weyl_identities(n);
    checks += r.checks().size();
    absorb(o, r, "n = " + std::to_string(n));
  }
  if (o.pass) o.detail = std::to_string(checks) + " exhaustive checks, n = 2..6";
  return o;
}

Outcome criterion3() {
  Outcome o;
  std::size_t checks = 0;
  bool saw_tau_s = true;
  for (int n = 2; n <= 6; ++n) {
    const auto r = affine::verify_presentation(n);
    checks += r.checks().size();
    absorb(o, r, "n = " + std::to_string(n));
    if (n >= 3) {
      bool found = false;
      for (const auto& c : r.checks()) found = found || c.name.find("tau s tau s") != std::string::npos;
      saw_tau_s = saw_tau_s && found;
    }
  }
  if (!saw_tau_s) {
    o.pass = false;
    o.detail = "the tau s tau s relation was not checked";
  }
  if (o.pass) o.detail = std::to_string(checks) + " checks, n = 2..6";
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::string info;
  for (auto [n, q] : {std::pair{2, 2}, {3, 2}}) {
    const auto cfg = LocalConfig::make(n, q, kWindow);
    const auto r = verify_coset_lemmas(cfg);
    absorb(o, r, "(n, q) = (" + std::to_string(n) + ", " + std::to_string(q) + ")");
    if (r.checks().size() != 3) {
      o.pass = false;
      o.detail = "expected three lemma checks";
    }
    info += "(" + std::to_string(n) + "," + std::to_string(q) + "): " + r.checks().back().detail + "; ";
  }
  // z with deeper digits, sampled
  CosetLemmaOptions opt;
  opt.z_digits = 6;
  opt.z_samples = 128;
  const auto r = verify_coset_lemmas(LocalConfig::make(3, 2, kWindow), opt);
  absorb(o, r, "(n, q) = (3, 2), sampled z");
  const auto& last = r.checks().back().detail;
  if (last.find("sampled") == std::string::npos) {
    o.pass = false;
    o.detail = "z was not sampled at (3, 2): " + last;
  }
  if (o.pass) o.detail = info + "(3,2) sampled: " + last;
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::size_t checks = 0;
  for (const auto& name : finite::instance_names())
    for (std::uint32_t ell : {0u, 3u, 5u, 7u}) {
      const auto in = finite::make_instance(name, Field::from_ell(ell));
      if (in.tests.size() < 3) {
        o.pass = false;
        o.detail = name + ": fewer than three test representations";
      }
      const auto r = finite::run_instance(in);
      checks += r.checks().size();
      absorb(o, r, name + " over " + in.sigma.field().name());
      if (name == "s3-s2-trivial" && ell == 0 && r.checks().front().detail != "2 = 2 = 2") {
        o.pass = false;
        o.detail = "S3, S2, trivial: dimensions " + r.checks().front().detail;
      }
    }
  if (o.pass) o.detail = std::to_string(checks) + " checks on 3 instances over Q, F_3, F_5, F_7";
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::size_t products = 0;
  for (const auto& g : kGrid) {
    const auto cfg = LocalConfig::make(g.n, g.q, kWindow);
    HeckeEngine eq(cfg, Field::rationals()), el(cfg, Field::prime(g.ell));
    all_relations(eq);
    all_relations(el);
    // make both memos cover the union, then compare every pair
    for (const auto& [a, b] : eq.computed_pairs()) el.structure_constants(a, b);
    const auto r = verify_mod_ell(el, eq);
    products += el.computed_pairs().size();
    absorb(o, r, where(g, "F_" + std::to_string(g.ell)));
  }
  if (o.pass) o.detail = std::to_string(products) + " products compared";
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::size_t compared = 0;
  for (const auto& g : kGrid)
    for (const Field f : {Field::rationals(), Field::prime(g.ell)}) {
      const int prec = LocalConfig::default_prec(kWindow);
      HeckeEngine base(LocalConfig::make(g.n, g.q, kWindow, prec), f);
      HeckeEngine again(LocalConfig::make(g.n, g.q, kWindow, prec), f, 2);
      HeckeEngine doubled(LocalConfig::make(g.n, g.q, kWindow, 2 * prec), f);
      const auto fb = fingerprint(base, all_relations(base));
      const auto fa = fingerprint(again, all_relations(again));
      const auto fd = fingerprint(doubled, all_relations(doubled));
      ++compared;
      if (fb != fa || fb != fd) {
        o.pass = false;
        o.detail = where(g, f.name()) + (fb != fa ? ": re-run differs" : ": doubled prec differs");
      }
    }
  for (auto [n, q] : {std::pair{2, 2}, {3, 2}}) {
    const int prec = LocalConfig::default_prec(kWindow);
    const auto a = io::dump(io::to_json(verify_coset_lemmas(LocalConfig::make(n, q, kWindow, prec))));
    const auto b = io::dump(io::to_json(verify_coset_lemmas(LocalConfig::make(n, q, kWindow, 2 * prec))));
    ++compared;
    if (a != b) {
      o.pass = false;
      o.detail = "coset lemmas differ at doubled prec for n = " + std::to_string(n);
    }
  }
  if (o.pass) o.detail = std::to_string(compared) + " runs identical at prec and 2 prec";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<Outcome()> run;
    double budget;  // seconds
  };
  constexpr double kNone = 1e9;
  const std::vector<Criterion> criteria{{"relation suite", criterion1, 600},
                                        {"Weyl identities", criterion2, 60},
                                        {"affine Weyl presentation", criterion3, 1},
                                        {"coset lemmas", criterion4, 600},
                                        {"finite Hecke suite", criterion5, 60},
                                        {"mod-ell consistency", criterion6, kNone},
                                        {"determinism and precision stability", criterion7, kNone}};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && secs > criteria[i].budget) {
      o.pass = false;
      o.detail += ", over the " + std::to_string(static_cast<int>(criteria[i].budget)) + " s budget";
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].name << ": " << o.detail << " ("
              << std::fixed << std::setprecision(2) << secs << " s)" << std::endl;
  }
  return all ? 0 : 1;
}
