#include "motint/motint.h"

#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

namespace {

const char* status_name(motint_status s) {
  switch (s) {
  case MOTINT_OK: return "OK";
  case MOTINT_SYNTAX: return "SyntaxError";
  case MOTINT_VALUE: return "ValueError";
  case MOTINT_MODEL: return "ModelError";
  case MOTINT_NOT_SUMMABLE: return "NotSummable";
  case MOTINT_DECOMPOSITION: return "DecompositionUnsupported";
  case MOTINT_GLUING: return "GluingError";
  case MOTINT_DOMAIN: return "DomainError";
  case MOTINT_INTERNAL: return "InternalError";
  }
  return "InternalError";
}

// Domain failures exit 1, input problems 2.
int exit_for(motint_status s) {
  switch (s) {
  case MOTINT_OK: return 0;
  case MOTINT_NOT_SUMMABLE:
  case MOTINT_DECOMPOSITION:
  case MOTINT_GLUING:
  case MOTINT_DOMAIN: return 1;
  default: return 2;
  }
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

int finish(motint_status s, char* out, int ok, bool json) {
  if (s == MOTINT_OK) {
    std::fputs(out, stdout);
    motint_string_free(out);
    return ok ? 0 : 1;
  }
  std::string msg = motint_last_error();
  if (json)
    std::printf("{\n  \"error\": %s,\n  \"message\": %s\n}\n", json_string(status_name(s)).c_str(), json_string(msg).c_str());
  else
    std::fprintf(exit_for(s) == 1 ? stdout : stderr, "%s: %s\n", status_name(s), msg.c_str());
  return exit_for(s);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in the coefficient ring, sieve models and total integrals"};
  app.require_subcommand(1);
  app.fallthrough();

  bool json = false;
  long prec = 10;
  std::vector<std::string> qs;
  std::string model_path;
  app.add_flag("--json", json, "machine-readable report");
  app.add_option("--prec", prec, "expansion precision N (terms down to L^-N)")->check(CLI::NonNegativeNumber);
  app.add_option("--q", qs, "evaluation point p or p/q greater than 1 (repeatable)");

  std::string expr, rhs, prefix, tail, total;
  std::vector<std::string> op_args;

  auto* eval = app.add_subcommand("ring-eval", "evaluate an element at q");
  eval->add_option("expr", expr)->required();
  auto* order = app.add_subcommand("ring-order", "decide lhs >= rhs for every q > 1");
  order->add_option("lhs", expr)->required();
  order->add_option("rhs", rhs)->required();
  auto* expand = app.add_subcommand("ring-expand", "expand in powers of 1/L");
  expand->add_option("expr", expr)->required();
  auto* classify = app.add_subcommand("seq-classify", "limit of L^n_i from a prefix and a tail descriptor");
  classify->add_option("prefix", prefix, "comma-separated exponents")->required();
  classify->add_option("--tail", tail, "constant:N, decreasing, increasing or periodic:a,b,...");
  auto* check = app.add_subcommand("model-check", "validate a model file");
  auto* fnop = app.add_subcommand("fn-op", "operate on permissible functions of a model");
  fnop->add_option("args", op_args, "operation and operands")->required();
  auto* integ = app.add_subcommand("integrate", "sum a total function over its trailing indices");
  integ->add_option("total", total)->required();
  auto* report = app.add_subcommand("report", "model check and every integral");
  for (auto* sub : {check, fnop, integ, report}) sub->add_option("--model", model_path, "model file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::vector<const char*> qptr;
  for (const auto& q : qs) qptr.push_back(q.c_str());
  motint_report_options opts{json ? 1 : 0, prec, qptr.data(), qptr.size()};
  char* out = nullptr;
  int ok = 1;

  motint_status s = MOTINT_OK;
  if (*eval || *order || *expand || *classify) {
    if (*eval) s = motint_report_ring_eval(expr.c_str(), &opts, &out, &ok);
    if (*order) s = motint_report_ring_order(expr.c_str(), rhs.c_str(), &opts, &out, &ok);
    if (*expand) s = motint_report_ring_expand(expr.c_str(), &opts, &out, &ok);
    if (*classify) s = motint_report_seq_classify(prefix.c_str(), tail.c_str(), &opts, &out, &ok);
    return finish(s, out, ok, json);
  }

  motint_model* model = nullptr;
  s = motint_model_load(model_path.c_str(), &model);
  if (s != MOTINT_OK) return finish(s, nullptr, 0, json);
  if (*check) {
    s = motint_report_model_check(model, &opts, &out, &ok);
  } else if (*fnop) {
    std::vector<const char*> a;
    for (const auto& x : op_args) a.push_back(x.c_str());
    s = motint_report_fn_op(model, a.data(), a.size(), &opts, &out, &ok);
  } else if (*integ) {
    s = motint_report_integrate(model, total.c_str(), &opts, &out, &ok);
  } else {
    s = motint_report_full(model, &opts, &out, &ok);
  }
  int code = finish(s, out, ok, json);
  motint_model_free(model);
  return code;
}
