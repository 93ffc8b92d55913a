#include "doctest.h"

#include "motint/motint.h"

#include <string>

namespace {

std::string take(char* s) {
  std::string r = s ? s : "";
  motint_string_free(s);
  return r;
}

motint_elem* parse(const char* text) {
  motint_elem* e = nullptr;
  REQUIRE(motint_elem_parse(text, &e) == MOTINT_OK);
  return e;
}

} // namespace

TEST_CASE("elements through the C interface") {
  motint_elem* a = parse("inv1m(1)");
  motint_elem* b = parse("L - 1");
  motint_elem* p = nullptr;
  REQUIRE(motint_elem_mul(a, b, &p) == MOTINT_OK);
  char* out = nullptr;
  REQUIRE(motint_elem_to_string(p, &out) == MOTINT_OK);
  CHECK(take(out) == "L");

  motint_elem* l = parse("L");
  int same = 0;
  REQUIRE(motint_elem_equal(p, l, &same) == MOTINT_OK);
  CHECK(same == 1);

  REQUIRE(motint_elem_eval(a, "3", &out) == MOTINT_OK);
  CHECK(take(out) == "3/2");

  int nonneg = 0;
  char* witness = nullptr;
  motint_elem* c = parse("L - 3");
  REQUIRE(motint_elem_is_nonneg(c, &nonneg, &witness) == MOTINT_OK);
  CHECK(nonneg == 0);
  CHECK(!take(witness).empty());

  char* tail = nullptr;
  REQUIRE(motint_elem_expand(a, 3, &out, &tail) == MOTINT_OK);
  CHECK(take(out) == "1 + L^-1 + L^-2 + L^-3 + O(L^-4)");
  CHECK(!take(tail).empty());

  for (motint_elem* e : {a, b, p, l, c}) motint_elem_free(e);
}

TEST_CASE("errors map to status codes") {
  motint_elem* e = nullptr;
  CHECK(motint_elem_parse("L^^2", &e) == MOTINT_SYNTAX);
  CHECK(std::string(motint_last_error()).find("column 3") != std::string::npos);
  CHECK(motint_elem_parse("inv1m(0)", &e) == MOTINT_VALUE);
  CHECK(motint_elem_parse(nullptr, &e) == MOTINT_VALUE);
  motint_model* m = nullptr;
  CHECK(motint_model_load("/nonexistent.yaml", &m) == MOTINT_VALUE);
  e = parse("1");
  CHECK(std::string(motint_last_error()).empty());
  motint_elem_free(e);
}

TEST_CASE("models and reports") {
  motint_model* m = nullptr;
  REQUIRE(motint_model_load(MOTINT_MODEL_DIR "/divergent.yaml", &m) == MOTINT_OK);
  size_t n = 0;
  REQUIRE(motint_model_total_count(m, &n) == MOTINT_OK);
  CHECK(n == 2);
  char* out = nullptr;
  REQUIRE(motint_model_total_name(m, 0, &out) == MOTINT_OK);
  CHECK(take(out) == "one");
  int ok = 0;
  CHECK(motint_report_integrate(m, "one", nullptr, &out, &ok) == MOTINT_NOT_SUMMABLE);
  CHECK(std::string(motint_last_error()) == "unbounded direction i with exponent coefficient 0");
  REQUIRE(motint_report_full(m, nullptr, &out, &ok) == MOTINT_OK);
  CHECK(take(out).find("NotSummable") != std::string::npos);
  motint_model_free(m);

  REQUIRE(motint_model_load(MOTINT_MODEL_DIR "/point.yaml", &m) == MOTINT_OK);
  const char* qs[] = {"2"};
  motint_report_options o{1, 10, qs, 1};
  REQUIRE(motint_report_integrate(m, "geometric", &o, &out, &ok) == MOTINT_OK);
  CHECK(ok == 1);
  CHECK(take(out).find('{') == 0);
  motint_model_free(m);

  REQUIRE(motint_model_load(MOTINT_MODEL_DIR "/gluing_failure.yaml", &m) == MOTINT_OK);
  const char* args[] = {"glue", "U1,U2", "one,two"};
  CHECK(motint_report_fn_op(m, args, 3, nullptr, &out, &ok) == MOTINT_GLUING);
  motint_model_free(m);
}
