#include "hyperlab/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "hyperlab/covers.hpp"
#include "hyperlab/diffops.hpp"
#include "hyperlab/eisenstein.hpp"
#include "hyperlab/error.hpp"
#include "hyperlab/hyperseries.hpp"
#include "hyperlab/identities.hpp"
#include "hyperlab/monodromy.hpp"

namespace hyperlab {

namespace {

using nlohmann::json;

constexpr int kDraws = 100;

json check(const std::string& name, bool pass) { return json{{"name", name}, {"pass", pass}}; }

json identity_check(const IdentityReport& r) {
  json j = r.to_json();
  j["name"] = r.identity;
  return j;
}

double identity_tol(const SuiteConfig& c) { return c.tol.value_or(1e-9); }

std::mt19937_64 suite_rng(const SuiteConfig& c, const std::string& name) {
  std::seed_seq seq(name.begin(), name.end());
  std::vector<std::uint32_t> mix(2);
  seq.generate(mix.begin(), mix.end());
  std::seed_seq combined{static_cast<std::uint32_t>(c.seed), static_cast<std::uint32_t>(c.seed >> 32),
                         mix[0], mix[1]};
  return std::mt19937_64(combined);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// p/q with 2 <= q <= 7 and 1 <= p <= 3q.
Rational random_rational(std::mt19937_64& rng) {
  const long q = 2 + static_cast<long>(rng() % 6);
  const long p = 1 + static_cast<long>(rng() % (3 * q));
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::vector<Rational> random_params(std::mt19937_64& rng, size_t n) {
  std::vector<Rational> out;
  for (size_t i = 0; i < n; ++i) out.push_back(random_rational(rng));
  return out;
}

std::vector<MuVector> draws(const SuiteConfig& c, const std::string& name) {
  auto rng = suite_rng(c, name);
  std::vector<MuVector> out;
  out.reserve(kDraws);
  for (int k = 0; k < kDraws; ++k) out.push_back(random_admissible_mu(rng));
  return out;
}

json run_p78(const SuiteConfig& c) {
  return json::array({identity_check(verify_bailey_p78(Rational(1, 3), Rational(1, 5), Rational(1, 7),
                                                       Rational(3, 2), default_grid_p78(identity_tol(c)),
                                                       {c.jobs}))});
}

json run_p80(const SuiteConfig& c) {
  const ParamSet e = sigma_e_params();
  return json::array({identity_check(
      verify_bailey_p80(e.a, e.b, e.bp, e.c, default_grid_p80(identity_tol(c)), {c.jobs}))});
}

json run_p81(const SuiteConfig& c) {
  const ParamSet e = sigma_e_params();
  return json::array(
      {identity_check(verify_bailey_p81(e.a, e.b, e.bp, default_grid_p81(identity_tol(c)), {c.jobs}))});
}

json run_appendix_a(const SuiteConfig& c) {
  const Rational third(1, 3);
  return json::array({identity_check(
      verify_appendix_a(third, third, third, third, default_grid_appendix_a(identity_tol(c)), {c.jobs}))});
}

json run_lemma_phi(const SuiteConfig& c) {
  auto rng = suite_rng(c, "lemma_phi");
  std::vector<std::array<Complex, 2>> samples;
  for (int k = 0; k < 20; ++k) samples.push_back({uniform(rng, 0.1, 0.9), uniform(rng, 1.2, 3.0)});
  return json::array({identity_check(
      verify_lemma_phi(Rational(4, 3), Rational(2, 3), Rational(4, 3), samples, 1e-10, {c.jobs}))});
}

json run_lemma_indefinite(const SuiteConfig& c) {
  auto rng = suite_rng(c, "lemma_indefinite");
  std::vector<std::array<Complex, 2>> samples = {{0.4, 2.0}};
  for (int k = 0; k < 4; ++k) samples.push_back({uniform(rng, 0.1, 0.7), uniform(rng, 1.5, 3.0)});
  const auto r = verify_lemma_indefinite(Rational(4, 3), Rational(2, 3), Rational(4, 3), samples,
                                         1e-12, 1e-5, {c.jobs});
  return json::array({identity_check(r.r1), identity_check(r.p1), identity_check(r.q1)});
}

json run_matome(const SuiteConfig& c) {
  const ParamSet e = sigma_e_params();
  return json::array(
      {identity_check(verify_theorem_matome(e.a, e.b, e.bp, default_grid_matome(identity_tol(c)), {c.jobs}))});
}

json run_intersection_det(const SuiteConfig& c) {
  double worst = 0.0;
  for (const auto& mu : draws(c, "intersection_det")) {
    const Complex closed = intersection_det_closed_form(mu);
    worst = std::max(worst, std::abs(determinant(intersection_matrix(mu)) - closed) / std::abs(closed));
  }
  json j = check("det_closed_form", worst < 1e-10);
  j["draws"] = kDraws;
  j["max_relative_error"] = worst;
  j["tol"] = 1e-10;
  return json::array({j});
}

json run_structured_explicit(const SuiteConfig& c) {
  double circuit = 0.0, dual = 0.0;
  for (const auto& mu : draws(c, "structured_explicit")) {
    for (int i = 1; i <= 5; ++i) {
      circuit = std::max(circuit, max_abs_diff(circuit_matrix_structured(i, mu),
                                               circuit_matrix_explicit(i, mu)));
      dual = std::max(dual, max_abs_diff(dual_circuit_matrix(i, mu, Variant::Structured),
                                         dual_circuit_matrix(i, mu, Variant::Explicit)));
    }
  }
  json a = check("circuit_matrices", circuit < 1e-11);
  a["max_abs_diff"] = circuit;
  json b = check("dual_circuit_matrices", dual < 1e-11);
  b["max_abs_diff"] = dual;
  a["tol"] = b["tol"] = 1e-11;
  a["draws"] = b["draws"] = kDraws;
  return json::array({a, b});
}

json run_pairing(const SuiteConfig& c) {
  const auto mus = draws(c, "pairing");
  double worst = 0.0;
  for (const auto& mu : mus) worst = std::max(worst, check_pairing_invariance(mu).max_deviation());
  double control = 0.0;
  for (const auto& mu : mus) control = std::max(control, check_pairing_invariance(mu, 1).max_deviation());
  json a = check("pairing_invariance", worst < 1e-10);
  a["max_deviation"] = worst;
  a["tol"] = 1e-10;
  a["draws"] = kDraws;
  json b = check("control_dual_replaced_by_identity", control > 1e-4);
  b["max_deviation"] = control;
  return json::array({a, b});
}

json run_eigenstructure(const SuiteConfig& c) {
  double worst = 0.0;
  bool pass = true;
  for (const auto& mu : draws(c, "eigenstructure")) {
    for (int i = 1; i <= 5; ++i) {
      const EigenReport r = eigenstructure_check(i, mu, 1e-9);
      worst = std::max(worst, r.max_mismatch);
      pass = pass && r.pass;
    }
  }
  json j = check("spectra", pass);
  j["max_mismatch"] = worst;
  j["tol"] = 1e-9;
  j["draws"] = kDraws;
  return json::array({j});
}

json run_specialization(const SuiteConfig&) {
  json out = json::array();
  for (int i = 1; i <= 5; ++i) {
    for (CircuitKind kind : {CircuitKind::M, CircuitKind::Dual}) {
      const std::string name = std::string(kind == CircuitKind::M ? "M" : "M~") + std::to_string(i);
      bool ok = true;
      std::string why;
      try {
        ok = specialize_omega(i, kind) == omega_table(i, kind);
      } catch (const Error& e) {
        ok = false;
        why = e.what();
      }
      json j = check(name + "_exact", ok);
      if (!why.empty()) j["error"] = why;
      out.push_back(j);
    }
  }
  out.push_back(check("pairing_exact", check_special_invariance().pass()));
  return out;
}

json run_gamma1_3(const SuiteConfig& c) {
  json out = json::array();
  struct Expected {
    int i;
    Eisenstein unit;
    IntMatrix2 m;
  };
  const std::vector<Expected> expected = {{1, Eisenstein::omega(), int_matrix(-2, -1, 3, 1)},
                                          {3, Eisenstein(1), int_matrix(1, 1, 0, 1)},
                                          {5, Eisenstein(1), int_matrix(4, 3, -3, -2)}};
  for (const auto& e : expected) {
    const ScaledIntMatrix got = conjugate_by_p(e.i);
    json j = check("P_M" + std::to_string(e.i) + "_P^-1", got.scalar == e.unit && got.matrix == e.m &&
                                                             gamma1_3_membership(got.matrix));
    j["unit"] = got.scalar.to_string();
    j["matrix"] = to_string(got.matrix);
    out.push_back(j);
  }
  auto rng = suite_rng(c, "gamma1_3");
  const WordReport words = random_word_check(rng, 50, 6);
  json w = check("random_words", words.members == words.words.size() && words.words.size() == 50);
  w["words"] = words.words.size();
  w["members"] = words.members;
  out.push_back(w);
  return out;
}

json run_hermitian(const SuiteConfig&) {
  const HermitianTransformReport r = hermitian_transform_check();
  json a = check("P_H_P*", r.pass());
  a["transform_matches"] = r.transform_matches;
  a["is_hermitian"] = r.is_hermitian;
  a["determinant_minus_one"] = r.determinant_minus_one;
  bool unitary = true;
  for (int i : {1, 3, 5}) unitary = unitary && reduced_block_unitary(i);
  return json::array({a, check("reduced_blocks_preserve_H'", unitary),
                      check("projective_order_three", projective_order_three())});
}

json run_covers(const SuiteConfig&) {
  const auto found = classify_genus2(60);
  const std::vector<CoverSignature> expected = {make_signature(3, {3, 3, 3, 3}),
                                                make_signature(4, {2, 2, 4, 4}),
                                                make_signature(6, {2, 2, 3, 3})};
  json j = check("genus2_max_n_60", found == expected);
  json list = json::array();
  for (const auto& s : found) list.push_back(s.to_string());
  j["signatures"] = list;
  return json::array({j});
}

struct AnnihilationCase {
  std::string label;
  SystemName system;
  SeriesId series;
  int order;
};

json run_annihilation(const SuiteConfig& c) {
  const std::vector<AnnihilationCase> cases = {{"E/F", SystemName::E, SeriesId::F, 8},
                                               {"E1/F1", SystemName::E1, SeriesId::F1, 8},
                                               {"E2/F2", SystemName::E2, SeriesId::F2, 8},
                                               {"ED3/FD3", SystemName::ED3, SeriesId::FD3, 6},
                                               {"EX3/FX3", SystemName::EX3, SeriesId::FX3, 6}};
  auto rng = suite_rng(c, "annihilation");
  json out = json::array();
  for (const auto& k : cases) {
    std::vector<std::vector<Rational>> params;
    for (int d = 0; d < 10; ++d) params.push_back(random_params(rng, series_arity(k.series)));
    if (k.system == SystemName::E2) {
      const ParamSet e = sigma_e_params();
      params.push_back({e.a, e.b, e.bp, e.c, e.cp});
    }
    bool ok = true;
    json failures = json::array();
    for (const auto& p : params) {
      const TruncatedSeries s = truncate_formal(k.series, p, k.order);
      const AnnihilationReport r = certify_annihilation(build_system(k.system, p), s);
      if (!r.annihilated() || r.certified_order < k.order - 2) {
        ok = false;
        json f = json::array();
        for (const auto& v : p) f.push_back(to_string(v));
        failures.push_back(f);
      }
    }
    json j = check(k.label, ok);
    j["order"] = k.order;
    j["draws"] = params.size();
    if (!failures.empty()) j["failed_params"] = failures;
    out.push_back(j);
  }
  return out;
}

using Runner = std::function<json(const SuiteConfig&)>;

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> table = {
      {"p78", run_p78},
      {"p80", run_p80},
      {"p81", run_p81},
      {"appendixA", run_appendix_a},
      {"lemma_phi", run_lemma_phi},
      {"lemma_indefinite", run_lemma_indefinite},
      {"matome", run_matome},
      {"intersection_det", run_intersection_det},
      {"structured_explicit", run_structured_explicit},
      {"pairing", run_pairing},
      {"eigenstructure", run_eigenstructure},
      {"specialization", run_specialization},
      {"gamma1_3", run_gamma1_3},
      {"hermitian", run_hermitian},
      {"covers", run_covers},
      {"annihilation", run_annihilation},
  };
  return table;
}

bool all_pass(const json& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const json& j) { return j.at("pass").get<bool>(); });
}

}  // namespace

const std::vector<std::string>& default_suites() {
  static const std::vector<std::string> names = {
      "p78",      "p80",          "p81",       "appendixA",      "lemma_phi",
      "lemma_indefinite",         "matome",    "intersection_det", "structured_explicit",
      "pairing",  "eigenstructure", "specialization", "gamma1_3",   "hermitian",
      "covers"};
  return names;
}

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> names = [] {
    auto v = default_suites();
    v.push_back("annihilation");
    return v;
  }();
  return names;
}

nlohmann::json run_suite(const std::string& name, const SuiteConfig& config) {
  json doc;
  doc["schema"] = kVerifySchema;
  doc["kind"] = "verify";
  doc["suite"] = name;
  doc["seed"] = config.seed;
  if (name == "all") {
    json suites = json::array();
    bool pass = true;
    for (const auto& s : default_suites()) {
      json sub = run_suite(s, config);
      pass = pass && sub["pass"].get<bool>();
      sub.erase("schema");
      sub.erase("seed");
      sub.erase("kind");
      suites.push_back(std::move(sub));
    }
    doc["pass"] = pass;
    doc["suites"] = std::move(suites);
    return doc;
  }
  const auto it = runners().find(name);
  if (it == runners().end()) throw Error(ErrorCode::InvalidArgument, "unknown suite: " + name);
  json checks = it->second(config);
  doc["pass"] = all_pass(checks);
  doc["checks"] = std::move(checks);
  return doc;
}

}  // namespace hyperlab
