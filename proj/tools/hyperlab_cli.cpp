// Command-line front end over the C API in libhyperlab.
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperlab/hyperlab.h"

namespace {

using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Globals {
  std::string format = "text";
  std::string out;
  std::uint64_t seed = 7;
  double tol = 0.0;
  int jobs = 1;
};

struct ContextDeleter {
  void operator()(hyl_context* c) const { hyl_context_destroy(c); }
};
using Context = std::unique_ptr<hyl_context, ContextDeleter>;

std::complex<double> parse_complex(const std::string& text) {
  std::istringstream in(text);
  std::complex<double> z;
  in >> z;
  if (!in || in.peek() != EOF) throw CLI::ValidationError("expected a number or (re,im), got '" + text + "'");
  return z;
}

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string complex_text(const json& z) {
  const double re = z[0].get<double>(), im = z[1].get<double>();
  return number(re) + (im < 0 ? " - " : " + ") + number(std::abs(im)) + "i";
}

void render_verify_text(std::ostream& os, const json& doc) {
  auto emit_checks = [&](const std::string& suite, const json& checks) {
    for (const auto& c : checks) {
      os << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << suite << '/' << c["name"].get<std::string>();
      for (const char* key : {"max_residual", "max_relative_error", "max_abs_diff", "max_deviation",
                              "max_mismatch"}) {
        if (c.contains(key)) os << ' ' << key << '=' << number(c[key].get<double>());
      }
      if (c.contains("control")) {
        os << " control=" << number(c["control"]["max_residual"].get<double>());
      }
      os << '\n';
    }
  };
  if (doc.contains("suites")) {
    for (const auto& s : doc["suites"]) emit_checks(s["suite"].get<std::string>(), s["checks"]);
  } else {
    emit_checks(doc["suite"].get<std::string>(), doc["checks"]);
  }
  os << (doc["pass"].get<bool>() ? "all checks passed" : "some checks FAILED") << " (seed "
     << doc["seed"].get<std::uint64_t>() << ")\n";
}

void render_covers_text(std::ostream& os, const json& doc) {
  for (const auto& s : doc["signatures"]) {
    os << s["signature"].get<std::string>() << "  chi=" << s["chi"].get<std::string>();
    if (s.contains("curve")) os << "  " << s["curve"].get<std::string>();
    os << '\n';
  }
}

class Runner {
 public:
  explicit Runner(const Globals& g) : g_(g), ctx_(hyl_context_create()) {}

  // Applies the global options; false on a bad value.
  bool configure() {
    if (!ctx_) return false;
    return hyl_context_set_seed(ctx_.get(), g_.seed) == HYL_OK &&
           hyl_context_set_tolerance(ctx_.get(), g_.tol) == HYL_OK &&
           hyl_context_set_jobs(ctx_.get(), g_.jobs) == HYL_OK;
  }

  hyl_context* ctx() { return ctx_.get(); }

  // Writes the result and maps the status to an exit code.
  int finish(hyl_status status, const std::string& kind, bool csv_payload = false) {
    if (status != HYL_OK && status != HYL_VERIFY_FAILED) {
      std::cerr << "error: " << hyl_last_error(ctx_.get()) << '\n';
      return kExitUsage;
    }
    const std::string raw = hyl_result(ctx_.get());
    std::ostringstream os;
    if (csv_payload) {
      os << raw;
    } else {
      const json doc = json::parse(raw);
      if (g_.format == "json") {
        os << doc.dump(2) << '\n';
      } else if (kind == "verify") {
        render_verify_text(os, doc);
      } else if (kind == "covers") {
        render_covers_text(os, doc);
      } else if (kind == "eval") {
        os << complex_text(doc["value"]) << '\n';
      } else {
        os << doc.dump(2) << '\n';
      }
    }
    if (!emit(os.str())) return kExitUsage;
    return status == HYL_OK ? kExitPass : kExitFail;
  }

  bool emit(const std::string& text) {
    if (g_.out.empty()) {
      std::cout << text;
      return true;
    }
    std::ofstream f(g_.out, std::ios::binary);
    if (!(f << text)) {
      std::cerr << "error: cannot write " << g_.out << '\n';
      return false;
    }
    return true;
  }

 private:
  const Globals& g_;
  Context ctx_;
};

struct EvalArgs {
  std::string series;
  std::map<std::string, std::string> params;
  std::map<std::string, std::string> vars;
};

const std::map<std::string, std::pair<std::vector<std::string>, std::vector<std::string>>>& series_layout() {
  static const std::map<std::string, std::pair<std::vector<std::string>, std::vector<std::string>>> m = {
      {"f", {{"a", "b", "c"}, {"x"}}},
      {"f1", {{"a", "b", "bp", "c"}, {"x", "y"}}},
      {"f2", {{"a", "b", "bp", "c", "cp"}, {"x", "y"}}},
      {"fd3", {{"a", "b1", "b2", "b3", "c"}, {"y1", "y2", "y3"}}},
      {"fx3", {{"a2", "a3", "a4", "a5", "a6"}, {"x1", "x3", "x4"}}},
  };
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hypergeometric systems, monodromy and period toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--out", g.out, "Write output to this file instead of stdout");
  app.add_option("--seed", g.seed, "Seed for randomized checks")->envname("HYPERLAB_SEED")->capture_default_str();
  app.add_option("--tol", g.tol, "Residual tolerance for the identity suites")->check(CLI::PositiveNumber);
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::Range(1, 256))->capture_default_str();

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate F, F1, F2, FD3 or FX3 at a point");
  EvalArgs ev;
  eval->add_option("series", ev.series, "f, f1, f2, fd3 or fx3")
      ->required()
      ->check(CLI::IsMember({"f", "f1", "f2", "fd3", "fx3"}));
  for (const char* p : {"a", "b", "bp", "c", "cp", "b1", "b2", "b3", "a2", "a3", "a4", "a5", "a6"}) {
    eval->add_option(std::string("--") + p, ev.params[p], "parameter (p/q or decimal)");
  }
  for (const char* v : {"x", "y", "y1", "y2", "y3", "x1", "x3", "x4"}) {
    eval->add_option(std::string("--") + v, ev.vars[v], "variable: number or (re,im)");
  }

  // verify
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string suite = "all";
  verify->add_option("suite", suite, "Suite name, or 'all'")->capture_default_str();

  // monodromy
  auto* mono = app.add_subcommand("monodromy", "Intersection and circuit matrices at exact parameters");
  std::map<std::string, std::string> mono_params = {
      {"a", "4/3"}, {"b", "2/3"}, {"bp", "2/3"}, {"c", "4/3"}, {"cp", "4/3"}};
  for (const char* p : {"a", "b", "bp", "c", "cp"}) {
    mono->add_option(std::string("--") + p, mono_params[p], "exact rational p/q")->capture_default_str();
  }

  // special
  auto* special = app.add_subcommand("special", "Exact specialization at mu = omega^2");

  // periods
  auto* periods = app.add_subcommand("periods", "Abel-Jacobi integral phi_k(s, t)");
  int k = 1, nodes = 32;
  std::string s_text = "1", t_text = "2";
  periods->add_option("--k", k, "1 or 2")->check(CLI::IsMember({1, 2}))->capture_default_str();
  periods->add_option("--s", s_text, "upper limit")->capture_default_str();
  periods->add_option("--t", t_text, "curve parameter")->capture_default_str();
  periods->add_option("--nodes", nodes, "Gauss-Jacobi nodes per segment")->check(CLI::Range(2, 4096))->capture_default_str();

  // schwarz
  auto* schwarz = app.add_subcommand("schwarz", "Sample the Schwarz map S1, or evaluate S2 with --s");
  std::vector<std::string> t_list;
  int count = 50, branch = 0;
  double t_min = 0.05, t_max = 0.95;
  std::string svg_path, s2_text;
  std::string s2_t = "2";
  schwarz->add_option("--t", t_list, "Explicit sample points (repeatable)");
  schwarz->add_option("--count", count, "Evenly spaced real samples")->check(CLI::Range(0, 100000))->capture_default_str();
  schwarz->add_option("--t-min", t_min, "First real sample")->capture_default_str();
  schwarz->add_option("--t-max", t_max, "Last real sample")->capture_default_str();
  schwarz->add_option("--svg", svg_path, "Also write an SVG scatter of the ratios");
  schwarz->add_option("--s", s2_text, "Evaluate S2 at this s (uses the first --t, default 2)");
  schwarz->add_option("--branch", branch, "Cube-root branch of t^(-1/3) for S2")->capture_default_str();

  // covers
  auto* covers = app.add_subcommand("covers", "Genus-2 cyclic covers branched at four points");
  int max_n = 60;
  covers->add_option("--max-n", max_n, "Largest cover degree")->check(CLI::Range(2, 100000))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  Runner run(g);
  if (!run.configure()) {
    std::cerr << "error: could not initialise the library context\n";
    return kExitUsage;
  }
  const bool wants_csv = g.format == "csv";
  if (wants_csv && !schwarz->parsed()) {
    std::cerr << "error: --format csv is only available for schwarz sampling\n";
    return kExitUsage;
  }

  try {
    if (eval->parsed()) {
      const auto& layout = series_layout().at(ev.series);
      std::vector<std::string> texts;
      for (const auto& name : layout.first) {
        if (ev.params[name].empty()) {
          std::cerr << "error: " << ev.series << " needs --" << name << '\n';
          return kExitUsage;
        }
        texts.push_back(ev.params[name]);
      }
      std::vector<double> point;
      for (const auto& name : layout.second) {
        if (ev.vars[name].empty()) {
          std::cerr << "error: " << ev.series << " needs --" << name << '\n';
          return kExitUsage;
        }
        const auto z = parse_complex(ev.vars[name]);
        point.push_back(z.real());
        point.push_back(z.imag());
      }
      std::vector<const char*> ptrs;
      for (const auto& t : texts) ptrs.push_back(t.c_str());
      return run.finish(hyl_eval_series(run.ctx(), ev.series.c_str(), ptrs.data(), ptrs.size(),
                                        point.data(), layout.second.size()),
                        "eval");
    }
    if (verify->parsed()) return run.finish(hyl_verify(run.ctx(), suite.c_str()), "verify");
    if (mono->parsed()) {
      std::vector<const char*> ptrs;
      for (const char* p : {"a", "b", "bp", "c", "cp"}) ptrs.push_back(mono_params[p].c_str());
      return run.finish(hyl_monodromy(run.ctx(), ptrs.data(), ptrs.size()), "monodromy");
    }
    if (special->parsed()) return run.finish(hyl_special(run.ctx()), "special");
    if (periods->parsed()) {
      const auto s = parse_complex(s_text), t = parse_complex(t_text);
      return run.finish(hyl_periods(run.ctx(), k, s.real(), s.imag(), t.real(), t.imag(), nodes), "periods");
    }
    if (schwarz->parsed()) {
      if (!s2_text.empty()) {
        if (wants_csv) {
          std::cerr << "error: S2 output is JSON or text only\n";
          return kExitUsage;
        }
        const auto s = parse_complex(s2_text);
        const auto t = parse_complex(t_list.empty() ? s2_t : t_list.front());
        return run.finish(hyl_schwarz_point(run.ctx(), s.real(), s.imag(), t.real(), t.imag(), branch),
                          "schwarz");
      }
      std::vector<double> samples;
      if (!t_list.empty()) {
        for (const auto& text : t_list) {
          const auto z = parse_complex(text);
          samples.push_back(z.real());
          samples.push_back(z.imag());
        }
      } else {
        for (int i = 0; i < count; ++i) {
          const double u = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
          samples.push_back((1.0 - u) * t_min + u * t_max);
          samples.push_back(0.0);
        }
      }
      const size_t n = samples.size() / 2;
      if (!svg_path.empty()) {
        const hyl_status st = hyl_schwarz_sample(run.ctx(), samples.data(), n, HYL_FORMAT_SVG);
        if (st != HYL_OK) return run.finish(st, "schwarz");
        std::ofstream f(svg_path, std::ios::binary);
        if (!(f << hyl_result(run.ctx()))) {
          std::cerr << "error: cannot write " << svg_path << '\n';
          return kExitUsage;
        }
      }
      const hyl_table_format fmt = wants_csv ? HYL_FORMAT_CSV : HYL_FORMAT_JSON;
      return run.finish(hyl_schwarz_sample(run.ctx(), samples.data(), n, fmt), "schwarz", wants_csv);
    }
    if (covers->parsed()) return run.finish(hyl_covers(run.ctx(), max_n), "covers");
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
