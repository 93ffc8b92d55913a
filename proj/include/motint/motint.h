#ifndef MOTINT_H
#define MOTINT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  MOTINT_OK = 0,
  MOTINT_SYNTAX = 1,
  MOTINT_VALUE = 2,
  MOTINT_MODEL = 3,
  MOTINT_NOT_SUMMABLE = 4,
  MOTINT_DECOMPOSITION = 5,
  MOTINT_GLUING = 6,
  MOTINT_DOMAIN = 7,
  MOTINT_INTERNAL = 8
} motint_status;

typedef struct motint_elem motint_elem;
typedef struct motint_model motint_model;

/* Message of the last failed call on this thread; empty after success. */
const char* motint_last_error(void);
/* Frees every string returned through a char** out parameter. */
void motint_string_free(char* s);

/* Ring elements. */
motint_status motint_elem_parse(const char* text, motint_elem** out);
void motint_elem_free(motint_elem* a);
motint_status motint_elem_to_string(const motint_elem* a, char** out);
motint_status motint_elem_add(const motint_elem* a, const motint_elem* b, motint_elem** out);
motint_status motint_elem_mul(const motint_elem* a, const motint_elem* b, motint_elem** out);
motint_status motint_elem_equal(const motint_elem* a, const motint_elem* b, int* out);
/* q as "p" or "p/q", q > 1; value written as a reduced fraction. */
motint_status motint_elem_eval(const motint_elem* a, const char* q, char** out);
/* witness may be NULL; set to NULL when nonneg. */
motint_status motint_elem_is_nonneg(const motint_elem* a, int* nonneg, char** witness);
motint_status motint_elem_expand(const motint_elem* a, long precision, char** series, char** tail_bound);

/* Model files. */
motint_status motint_model_load(const char* path, motint_model** out);
void motint_model_free(motint_model* m);
motint_status motint_model_total_count(const motint_model* m, size_t* out);
motint_status motint_model_total_name(const motint_model* m, size_t k, char** out);

/* Reports, as printed by the command-line tool. ok is cleared when a check
 * inside the report failed. */
typedef struct {
  int json;
  long precision;
  const char* const* q;
  size_t q_count;
} motint_report_options;

motint_status motint_report_ring_eval(const char* expr, const motint_report_options* o, char** out, int* ok);
motint_status motint_report_ring_order(const char* lhs, const char* rhs, const motint_report_options* o, char** out, int* ok);
motint_status motint_report_ring_expand(const char* expr, const motint_report_options* o, char** out, int* ok);
motint_status motint_report_seq_classify(const char* prefix, const char* tail, const motint_report_options* o, char** out, int* ok);
motint_status motint_report_model_check(const motint_model* m, const motint_report_options* o, char** out, int* ok);
motint_status motint_report_fn_op(const motint_model* m, const char* const* args, size_t nargs, const motint_report_options* o,
                                  char** out, int* ok);
motint_status motint_report_integrate(const motint_model* m, const char* total, const motint_report_options* o, char** out, int* ok);
motint_status motint_report_full(const motint_model* m, const motint_report_options* o, char** out, int* ok);

#ifdef __cplusplus
}
#endif

#endif
