#include "hyperlab/hyperlab.h"

#include <cmath>
#include <exception>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperlab/covers.hpp"
#include "hyperlab/eisenstein.hpp"
#include "hyperlab/error.hpp"
#include "hyperlab/hyperseries.hpp"
#include "hyperlab/monodromy.hpp"
#include "hyperlab/periods.hpp"
#include "hyperlab/suites.hpp"

struct hyl_context {
  std::uint64_t seed = 7;
  double tol = 0.0;
  int jobs = 1;
  std::string last_error;
  std::string result;
};

namespace {

using nlohmann::json;
using namespace hyperlab;

constexpr const char* kSchema = "hyperlab/1";

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

hyl_status status_of(ErrorCode code) {
  return static_cast<hyl_status>(HYL_ERR_DIVERGENT_INPUT + static_cast<int>(code));
}

// Runs body, translating exceptions into a status and last_error.
template <class Body>
hyl_status guarded(hyl_context* ctx, Body&& body) {
  if (ctx == nullptr) return HYL_ERR_INVALID_ARGUMENT;
  ctx->last_error.clear();
  ctx->result.clear();
  try {
    return body();
  } catch (const Error& e) {
    ctx->last_error = std::string(error_code_name(e.code())) + ": " + e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    ctx->last_error = "out of memory";
    return HYL_ERR_INTERNAL;
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    return HYL_ERR_INTERNAL;
  }
}

json document(const char* kind) {
  json j;
  j["schema"] = kSchema;
  j["kind"] = kind;
  return j;
}

ParamValue parse_param(const std::string& text) {
  if (looks_exact(text)) return parse_rational(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::InvalidArgument, "cannot parse parameter '" + text + "'");
  }
  return ParamValue::numeric(v);
}

std::vector<std::string> strings(const char* const* items, size_t n) {
  std::vector<std::string> out;
  for (size_t i = 0; i < n; ++i) {
    if (items == nullptr || items[i] == nullptr) {
      throw Error(ErrorCode::InvalidArgument, "null parameter string");
    }
    out.emplace_back(items[i]);
  }
  return out;
}

SeriesId series_from_name(const std::string& name) {
  if (name == "f") return SeriesId::F;
  if (name == "f1") return SeriesId::F1;
  if (name == "f2") return SeriesId::F2;
  if (name == "fd3") return SeriesId::FD3;
  if (name == "fx3") return SeriesId::FX3;
  throw Error(ErrorCode::InvalidArgument, "unknown series '" + name + "'");
}

SuiteConfig suite_config(const hyl_context* ctx) {
  SuiteConfig c;
  c.seed = ctx->seed;
  if (ctx->tol > 0.0) c.tol = ctx->tol;
  c.jobs = ctx->jobs;
  return c;
}

}  // namespace

extern "C" {

hyl_context* hyl_context_create(void) { return new (std::nothrow) hyl_context(); }

void hyl_context_destroy(hyl_context* ctx) { delete ctx; }

hyl_status hyl_context_set_seed(hyl_context* ctx, uint64_t seed) {
  if (ctx == nullptr) return HYL_ERR_INVALID_ARGUMENT;
  ctx->seed = seed;
  return HYL_OK;
}

hyl_status hyl_context_set_tolerance(hyl_context* ctx, double tol) {
  if (ctx == nullptr || std::isnan(tol)) return HYL_ERR_INVALID_ARGUMENT;
  ctx->tol = tol > 0.0 ? tol : 0.0;
  return HYL_OK;
}

hyl_status hyl_context_set_jobs(hyl_context* ctx, int jobs) {
  if (ctx == nullptr || jobs < 1) return HYL_ERR_INVALID_ARGUMENT;
  ctx->jobs = jobs;
  return HYL_OK;
}

const char* hyl_last_error(const hyl_context* ctx) { return ctx ? ctx->last_error.c_str() : ""; }

const char* hyl_result(const hyl_context* ctx) { return ctx ? ctx->result.c_str() : ""; }

const char* hyl_status_string(hyl_status status) {
  switch (status) {
    case HYL_OK: return "ok";
    case HYL_VERIFY_FAILED: return "verification failed";
    case HYL_ERR_IO: return "io error";
    case HYL_ERR_INTERNAL: return "internal error";
    default: break;
  }
  const int code = static_cast<int>(status) - HYL_ERR_DIVERGENT_INPUT;
  if (code >= 0 && code <= static_cast<int>(ErrorCode::InvalidArgument)) {
    return error_code_name(static_cast<ErrorCode>(code));
  }
  return "unknown status";
}

const char* hyl_version(void) { return "0.1.0"; }

hyl_status hyl_eval_series(hyl_context* ctx, const char* series, const char* const* params,
                           size_t nparams, const double* point, size_t nvars) {
  return guarded(ctx, [&] {
    if (series == nullptr || (nvars > 0 && point == nullptr)) {
      throw Error(ErrorCode::InvalidArgument, "missing series name or point");
    }
    const SeriesId id = series_from_name(series);
    const auto texts = strings(params, nparams);
    std::vector<ParamValue> values;
    for (const auto& t : texts) values.push_back(parse_param(t));
    std::vector<Complex> z;
    for (size_t i = 0; i < nvars; ++i) z.emplace_back(point[2 * i], point[2 * i + 1]);
    const Complex v = evaluate_series(id, values, z);
    json doc = document("eval");
    doc["series"] = series;
    doc["params"] = texts;
    json pts = json::array();
    for (Complex w : z) pts.push_back(complex_json(w));
    doc["point"] = pts;
    doc["value"] = complex_json(v);
    ctx->result = doc.dump();
    return HYL_OK;
  });
}

hyl_status hyl_verify(hyl_context* ctx, const char* suite) {
  return guarded(ctx, [&] {
    if (suite == nullptr) throw Error(ErrorCode::InvalidArgument, "missing suite name");
    const json doc = run_suite(suite, suite_config(ctx));
    ctx->result = doc.dump();
    return doc["pass"].get<bool>() ? HYL_OK : HYL_VERIFY_FAILED;
  });
}

hyl_status hyl_monodromy(hyl_context* ctx, const char* const* params, size_t nparams) {
  return guarded(ctx, [&] {
    if (nparams != 5) throw Error(ErrorCode::ArityMismatch, "monodromy needs (a, b, b', c, c')");
    const auto texts = strings(params, nparams);
    std::vector<Rational> p;
    for (const auto& t : texts) p.push_back(parse_rational(t));
    const ParamSet set{p[0], p[1], p[2], p[3], p[4]};
    const MuVector mu = mu_from_params(set);
    json doc = document("monodromy");
    doc["params"] = texts;
    json mus = json::array();
    for (int i = 1; i <= 5; ++i) mus.push_back(complex_json(mu[i]));
    doc["mu"] = mus;
    const MatrixC h = intersection_matrix(mu);
    doc["intersection_matrix"] = matrix_json(h);
    doc["det"] = complex_json(determinant(h));
    doc["det_closed_form"] = complex_json(intersection_det_closed_form(mu));
    json circuits = json::array();
    for (int i = 1; i <= 5; ++i) {
      json c;
      c["index"] = i;
      c["lambda"] = complex_json(circuit_lambda(i, mu));
      c["circuit"] = matrix_json(circuit_matrix_structured(i, mu));
      c["dual"] = matrix_json(dual_circuit_matrix(i, mu, Variant::Structured));
      circuits.push_back(c);
    }
    doc["circuits"] = circuits;
    doc["pairing_max_deviation"] = check_pairing_invariance(mu).max_deviation();
    ctx->result = doc.dump();
    return HYL_OK;
  });
}

hyl_status hyl_special(hyl_context* ctx) {
  return guarded(ctx, [&] {
    json doc = document("special");
    doc["hermitian"] = matrix_json(omega_hermitian());
    json circuits = json::array();
    for (int i = 1; i <= 5; ++i) {
      json c;
      c["index"] = i;
      c["circuit"] = matrix_json(specialize_omega(i, CircuitKind::M));
      c["dual"] = matrix_json(specialize_omega(i, CircuitKind::Dual));
      circuits.push_back(c);
    }
    doc["circuits"] = circuits;
    doc["pairing_exact"] = check_special_invariance().pass();
    doc["reduced_hermitian"] = matrix_json(reduced_hermitian());
    doc["P"] = matrix_json(conjugator_p());
    json reduced = json::array();
    bool members = true;
    for (int i : {1, 3, 5}) {
      const ScaledIntMatrix s = conjugate_by_p(i);
      const bool in = gamma1_3_membership(s.matrix);
      members = members && in;
      json r;
      r["index"] = i;
      r["block"] = matrix_json(reduced_block(i));
      r["unit"] = s.scalar.to_json();
      r["conjugated"] = to_string(s.matrix);
      r["gamma1_3"] = in;
      reduced.push_back(r);
    }
    doc["reduced"] = reduced;
    doc["hermitian_transform"] = hermitian_transform_check().pass();
    ctx->result = doc.dump();
    return members && doc["pairing_exact"].get<bool>() && doc["hermitian_transform"].get<bool>()
               ? HYL_OK
               : HYL_VERIFY_FAILED;
  });
}

hyl_status hyl_periods(hyl_context* ctx, int k, double s_re, double s_im, double t_re, double t_im,
                       int nodes) {
  return guarded(ctx, [&] {
    if (nodes < 2) throw Error(ErrorCode::InvalidArgument, "nodes must be at least 2");
    const Complex s(s_re, s_im), t(t_re, t_im);
    const PeriodValue v = abel_jacobi(k, s, t, {nodes});
    json doc = document("periods");
    doc["k"] = k;
    doc["s"] = complex_json(s);
    doc["t"] = complex_json(t);
    doc["nodes"] = nodes;
    doc["value"] = complex_json(v.value);
    doc["err_estimate"] = v.err_estimate;
    ctx->result = doc.dump();
    return HYL_OK;
  });
}

hyl_status hyl_schwarz_sample(hyl_context* ctx, const double* t, size_t count,
                              hyl_table_format format) {
  return guarded(ctx, [&] {
    if (count > 0 && t == nullptr) throw Error(ErrorCode::InvalidArgument, "missing samples");
    std::vector<Complex> samples;
    for (size_t i = 0; i < count; ++i) samples.emplace_back(t[2 * i], t[2 * i + 1]);
    const auto rows = sample_disc_image(samples, ctx->jobs);
    std::ostringstream out;
    bool constant = true;
    std::optional<double> sign;
    for (const auto& r : rows) {
      if (!r.point) continue;
      const double s = std::copysign(1.0, r.point->sign_witness);
      if (sign && *sign != s) constant = false;
      sign = s;
    }
    if (format == HYL_FORMAT_CSV) {
      write_disc_csv(out, rows);
    } else if (format == HYL_FORMAT_SVG) {
      write_disc_svg(out, rows);
    } else {
      json doc = document("schwarz");
      json list = json::array();
      for (const auto& r : rows) {
        json j;
        j["t"] = complex_json(r.t);
        if (r.point) {
          j["ratio"] = complex_json(r.point->ratio);
          j["sign_witness"] = r.point->sign_witness;
        } else {
          j["error"] = r.error;
        }
        list.push_back(j);
      }
      doc["rows"] = list;
      doc["reference_sign"] = kDiscWitnessSign;
      doc["sign_constant"] = constant;
      doc["matches_reference"] = !sign || *sign == kDiscWitnessSign;
      out << doc.dump();
    }
    ctx->result = out.str();
    return HYL_OK;
  });
}

hyl_status hyl_schwarz_point(hyl_context* ctx, double s_re, double s_im, double t_re, double t_im,
                             int branch) {
  return guarded(ctx, [&] {
    const Complex s(s_re, s_im), t(t_re, t_im);
    const SchwarzPoint p = schwarz_s2(s, t, branch);
    json doc = document("schwarz_point");
    doc["s"] = complex_json(s);
    doc["t"] = complex_json(t);
    doc["branch"] = branch;
    doc["ratio"] = complex_json(p.ratio);
    json q = json::array();
    for (Complex z : p.quadruple) q.push_back(complex_json(z));
    doc["quadruple"] = q;
    doc["sign_witness"] = p.sign_witness;
    ctx->result = doc.dump();
    return HYL_OK;
  });
}

hyl_status hyl_covers(hyl_context* ctx, int max_n) {
  return guarded(ctx, [&] {
    json doc = document("covers");
    doc["max_n"] = max_n;
    json list = json::array();
    for (const auto& sig : classify_genus2(max_n)) {
      json j;
      j["signature"] = sig.to_string();
      j["chi"] = to_string(euler_characteristic(sig));
      if (auto curve = curve_annotation(sig)) j["curve"] = *curve;
      list.push_back(j);
    }
    doc["signatures"] = list;
    ctx->result = doc.dump();
    return HYL_OK;
  });
}

}  // extern "C"
