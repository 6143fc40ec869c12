/* C interface to the Hurwitz branch-datum library.
 *
 * All objects are opaque handles owned by the library; strings returned
 * through char** are heap-allocated and released with hz_string_free().
 * Functions report hz_status; HZ_NOT_REALIZABLE and HZ_BUDGET_EXCEEDED are
 * outcomes, not errors.
 */
#ifndef HURWITZ_H
#define HURWITZ_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HZ_API __declspec(dllexport)
#else
#define HZ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hz_status {
  HZ_OK = 0,
  HZ_NOT_REALIZABLE = 1,
  HZ_BUDGET_EXCEEDED = 2,
  HZ_ERR_SYNTAX = 10,
  HZ_ERR_DEGREE_MISMATCH = 11,
  HZ_ERR_RIEMANN_HURWITZ = 12,
  HZ_ERR_DEGENERATE = 13,
  HZ_ERR_PARITY = 14,
  HZ_ERR_NEGATIVE_GENUS = 15,
  HZ_ERR_UNSUPPORTED_BASE = 16,
  HZ_ERR_UNSUPPORTED_DEGREE = 17,
  HZ_ERR_PRECONDITION = 18,
  HZ_ERR_NOT_CONNECTED = 19,
  HZ_ERR_BAD_ARGUMENT = 20,
  HZ_ERR_INTERNAL = 21
} hz_status;

/* 0 means unlimited in both fields */
typedef struct hz_budget {
  uint64_t max_nodes;
  double max_seconds;
} hz_budget;

typedef struct hz_datum hz_datum;
typedef struct hz_witness hz_witness;
typedef struct hz_census hz_census;

HZ_API const char* hz_version(void);
HZ_API const char* hz_status_name(hz_status status);
HZ_API void hz_string_free(char* str);

/* Candidate branch data. Lines look like "g1/S d=6 3,3 3,3 2,4". */
HZ_API hz_status hz_datum_parse(const char* line, hz_datum** out, char* err, size_t err_len);
HZ_API void hz_datum_free(hz_datum* datum);
HZ_API hz_status hz_datum_format(const hz_datum* datum, char** line_out);
HZ_API int hz_datum_degree(const hz_datum* datum);
HZ_API int hz_datum_cover_genus(const hz_datum* datum);
HZ_API int hz_datum_base_genus(const hz_datum* datum);
HZ_API int hz_datum_num_partitions(const hz_datum* datum);

/* Closed-form verdict; pass a fallback budget to let the oracle settle data
 * outside the theorems. JSON schema:
 * {"datum","verdict","reason","families":[{"id","params"}],"witness"} */
HZ_API hz_status hz_classify(const hz_datum* datum, const hz_budget* oracle_fallback, int jobs,
                             char** json_out);

/* Brute-force monodromy search. HZ_OK sets *witness_out. */
HZ_API hz_status hz_realize(const hz_datum* datum, const hz_budget* budget, int jobs,
                            hz_witness** witness_out);
HZ_API void hz_witness_free(hz_witness* witness);
HZ_API hz_status hz_witness_text(const hz_witness* witness, char** text_out);
HZ_API hz_status hz_witness_json(const hz_witness* witness, char** json_out);
/* accepts theta<j>=<cycles> lines or the JSON form; degree_hint 0 infers the
 * degree from a d= line or the largest mentioned point */
HZ_API hz_status hz_witness_parse(const char* text, int degree_hint, hz_witness** out, char* err,
                                  size_t err_len);
HZ_API hz_status hz_verify_witness(const hz_datum* datum, const hz_witness* witness, int* ok_out);

/* Dessin d'enfant built from the first two permutations of a witness:
 * edge rotations, valences, face lengths, genus and the induced datum. */
HZ_API hz_status hz_dessin_from_witness(const hz_witness* witness, int as_json, char** out);

/* Reduction moves, descriptor syntax "T2 i=1 j=2 x=6 x1=2" (A1 accepts an
 * optional pi=<entries> target type). The witness fragment is empty for
 * T-moves. */
HZ_API hz_status hz_move_apply(const hz_datum* datum, const char* spec, char** target_line_out,
                               char** witness_fragment_out, char* err, size_t err_len);

typedef struct hz_census_opts {
  int degree;
  int branch_points;
  int require_length2; /* 0/1 */
  int genus_min;       /* -1 = unbounded */
  int genus_max;       /* -1 = unbounded */
  hz_budget per_datum;
  double total_seconds; /* cap for the whole run, 0 = off */
  int jobs;
} hz_census_opts;

/* Exhaustive census: oracle verdict for every candidate datum, classifier
 * cross-checked wherever it is in scope. */
HZ_API hz_status hz_census_run(const hz_census_opts* opts, hz_census** out, char* err,
                               size_t err_len);
HZ_API void hz_census_free(hz_census* census);
/* header line plus the sorted exceptional datum lines */
HZ_API hz_status hz_census_text(const hz_census* census, char** out);
HZ_API hz_status hz_census_json(const hz_census* census, char** out);
HZ_API uint64_t hz_census_candidates(const hz_census* census);
HZ_API uint64_t hz_census_realizable(const hz_census* census);
HZ_API uint64_t hz_census_exceptional(const hz_census* census);
HZ_API uint64_t hz_census_unknown(const hz_census* census);
HZ_API uint64_t hz_census_mismatches(const hz_census* census);

HZ_API hz_status hz_prime_degree_check(int degree, int branch_points, const hz_budget* per_datum,
                                       int jobs, int* holds_out);

#ifdef __cplusplus
}
#endif

#endif /* HURWITZ_H */
