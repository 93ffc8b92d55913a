#include "motint/motint.h"

#include "motint/expr.hpp"
#include "motint/report.hpp"

#include <cstdlib>
#include <cstring>

struct motint_elem {
  motint::MotElem value;
};

struct motint_model {
  motint::ModelFile file;
};

namespace {

thread_local std::string last_error;

motint_status code(motint::ErrorKind k) {
  switch (k) {
  case motint::ErrorKind::Syntax: return MOTINT_SYNTAX;
  case motint::ErrorKind::Value: return MOTINT_VALUE;
  case motint::ErrorKind::Model: return MOTINT_MODEL;
  case motint::ErrorKind::NotSummable: return MOTINT_NOT_SUMMABLE;
  case motint::ErrorKind::DecompositionUnsupported: return MOTINT_DECOMPOSITION;
  case motint::ErrorKind::Gluing: return MOTINT_GLUING;
  case motint::ErrorKind::Domain: return MOTINT_DOMAIN;
  case motint::ErrorKind::Internal: return MOTINT_INTERNAL;
  }
  return MOTINT_INTERNAL;
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <class F>
motint_status guard(F f) {
  last_error.clear();
  try {
    f();
    return MOTINT_OK;
  } catch (const motint::Error& e) {
    last_error = e.what();
    return code(e.kind());
  } catch (const std::exception& e) {
    last_error = e.what();
    return MOTINT_INTERNAL;
  }
}

motint::ReportOptions options(const motint_report_options* o) {
  motint::ReportOptions r;
  if (!o) return r;
  r.json = o->json != 0;
  r.prec = o->precision;
  for (size_t k = 0; k < o->q_count; ++k) {
    motint::Rational q = motint::parse_rational(o->q[k]);
    motint::EvalPoint check(q);
    r.qs.push_back(q);
  }
  return r;
}

void need(const void* p) {
  if (!p) motint::fail(motint::ErrorKind::Value, "null argument");
}

template <class F>
motint_status report(const motint_report_options* o, char** out, int* ok, F make) {
  return guard([&] {
    need(out);
    motint::ReportOptions opts = options(o);
    motint::Report r = make(opts);
    *out = dup(r.render(opts));
    if (ok) *ok = r.ok ? 1 : 0;
  });
}

} // namespace

extern "C" {

const char* motint_last_error(void) { return last_error.c_str(); }

void motint_string_free(char* s) { std::free(s); }

motint_status motint_elem_parse(const char* text, motint_elem** out) {
  return guard([&] {
    need(text);
    need(out);
    *out = new motint_elem{motint::parse_mot_elem(text)};
  });
}

void motint_elem_free(motint_elem* a) { delete a; }

motint_status motint_elem_to_string(const motint_elem* a, char** out) {
  return guard([&] {
    need(a);
    need(out);
    *out = dup(a->value.to_string());
  });
}

motint_status motint_elem_add(const motint_elem* a, const motint_elem* b, motint_elem** out) {
  return guard([&] {
    need(a);
    need(b);
    need(out);
    *out = new motint_elem{a->value + b->value};
  });
}

motint_status motint_elem_mul(const motint_elem* a, const motint_elem* b, motint_elem** out) {
  return guard([&] {
    need(a);
    need(b);
    need(out);
    *out = new motint_elem{a->value * b->value};
  });
}

motint_status motint_elem_equal(const motint_elem* a, const motint_elem* b, int* out) {
  return guard([&] {
    need(a);
    need(b);
    need(out);
    *out = eq(a->value, b->value) ? 1 : 0;
  });
}

motint_status motint_elem_eval(const motint_elem* a, const char* q, char** out) {
  return guard([&] {
    need(a);
    need(q);
    need(out);
    *out = dup(motint::to_string(a->value.eval(motint::EvalPoint(motint::parse_rational(q)))));
  });
}

motint_status motint_elem_is_nonneg(const motint_elem* a, int* nonneg, char** witness) {
  return guard([&] {
    need(a);
    need(nonneg);
    motint::Positivity p = motint::is_nonneg(a->value);
    *nonneg = p.nonneg ? 1 : 0;
    if (witness) *witness = p.witness ? dup(motint::to_string(*p.witness)) : nullptr;
  });
}

motint_status motint_elem_expand(const motint_elem* a, long precision, char** series, char** tail_bound) {
  return guard([&] {
    need(a);
    need(series);
    if (precision < 0) motint::fail(motint::ErrorKind::Value, "precision must be a natural number");
    motint::Expansion e = motint::expand(a->value, precision);
    *series = dup(e.series.to_string());
    if (tail_bound) *tail_bound = dup(e.tail.to_string());
  });
}

motint_status motint_model_load(const char* path, motint_model** out) {
  return guard([&] {
    need(path);
    need(out);
    *out = new motint_model{motint::load_model_file(path)};
  });
}

void motint_model_free(motint_model* m) { delete m; }

motint_status motint_model_total_count(const motint_model* m, size_t* out) {
  return guard([&] {
    need(m);
    need(out);
    *out = m->file.totals.size();
  });
}

motint_status motint_model_total_name(const motint_model* m, size_t k, char** out) {
  return guard([&] {
    need(m);
    need(out);
    if (k >= m->file.totals.size()) motint::fail(motint::ErrorKind::Value, "total index out of range");
    *out = dup(m->file.totals[k].first);
  });
}

motint_status motint_report_ring_eval(const char* expr, const motint_report_options* o, char** out, int* ok) {
  return report(o, out, ok, [&](const motint::ReportOptions& opts) {
    need(expr);
    return motint::ring_eval_report(expr, opts);
  });
}

motint_status motint_report_ring_order(const char* lhs, const char* rhs, const motint_report_options* o, char** out, int* ok) {
  return report(o, out, ok, [&](const motint::ReportOptions& opts) {
    need(lhs);
    need(rhs);
    return motint::ring_order_report(lhs, rhs, opts);
  });
}

motint_status motint_report_ring_expand(const char* expr, const motint_report_options* o, char** out, int* ok) {
  return report(o, out, ok, [&](const motint::ReportOptions& opts) {
    need(expr);
    if (opts.prec < 0) motint::fail(motint::ErrorKind::Value, "precision must be a natural number");
    return motint::ring_expand_report(expr, opts);
  });
}

motint_status motint_report_seq_classify(const char* prefix, const char* tail, const motint_report_options* o, char** out, int* ok) {
  return report(o, out, ok, [&](const motint::ReportOptions& opts) {
    need(prefix);
    return motint::seq_classify_report(prefix, tail ? tail : "", opts);
  });
}

motint_status motint_report_model_check(const motint_model* m, const motint_report_options* o, char** out, int* ok) {
  return report(o, out, ok, [&](const motint::ReportOptions& opts) {
    need(m);
    return motint::model_check_report(m->file, opts);
  });
}

motint_status motint_report_fn_op(const motint_model* m, const char* const* args, size_t nargs, const motint_report_options* o,
                                  char** out, int* ok) {
  return report(o, out, ok, [&](const motint::ReportOptions& opts) {
    need(m);
    std::vector<std::string> v;
    for (size_t k = 0; k < nargs; ++k) {
      need(args[k]);
      v.emplace_back(args[k]);
    }
    return motint::fn_op_report(m->file, v, opts);
  });
}

motint_status motint_report_integrate(const motint_model* m, const char* total, const motint_report_options* o, char** out, int* ok) {
  return report(o, out, ok, [&](const motint::ReportOptions& opts) {
    need(m);
    need(total);
    return motint::integrate_report(m->file, total, opts);
  });
}

motint_status motint_report_full(const motint_model* m, const motint_report_options* o, char** out, int* ok) {
  return report(o, out, ok, [&](const motint::ReportOptions& opts) {
    need(m);
    return motint::full_report(m->file, opts);
  });
}

} // extern "C"
