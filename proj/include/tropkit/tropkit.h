#ifndef TROPKIT_H
#define TROPKIT_H

#include <stddef.h>

#if defined(_WIN32)
#if defined(TROPKIT_BUILDING)
#define TK_API __declspec(dllexport)
#else
#define TK_API __declspec(dllimport)
#endif
#else
#define TK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* return codes */
#define TK_OK 0
#define TK_EDOMAIN 1 /* mathematical precondition or result error */
#define TK_EPARSE 2  /* malformed input */
#define TK_EINTERNAL 3

typedef struct tk_matrix tk_matrix;

TK_API const char* tk_version(void);

/* JSON body {"error","message","detail"} of the last failure on this thread, or "" */
TK_API const char* tk_last_error(void);

/* every char* handed out by the library is released with this */
TK_API void tk_string_free(char* s);

TK_API int tk_matrix_parse(const char* json, tk_matrix** out);
TK_API int tk_matrix_parse_csv(const char* csv, const char* semiring, tk_matrix** out);
TK_API int tk_matrix_to_json(const tk_matrix* m, char** out);
TK_API void tk_matrix_free(tk_matrix* m);
TK_API size_t tk_matrix_rows(const tk_matrix* m);
TK_API size_t tk_matrix_cols(const tk_matrix* m);
TK_API int tk_matrix_mul(const tk_matrix* a, const tk_matrix* b, tk_matrix** out);
TK_API int tk_matrix_star(const tk_matrix* a, tk_matrix** out);

/* composite reports, all returned as JSON text */
TK_API int tk_eig(const tk_matrix* a, char** out);
TK_API int tk_invariants(const tk_matrix* a, char** out);
TK_API int tk_assign(const tk_matrix* b, char** out);
TK_API int tk_twosided(const tk_matrix* a, const tk_matrix* b, char** out);
TK_API int tk_project(const tk_matrix* gens, const char* vector_json, char** out);
TK_API int tk_separate(const tk_matrix* const* modules, size_t count, char** out);
TK_API int tk_interval_star(const char* interval_matrix_json, char** out);

/* mode is "check", "build" or "reconstruct" */
TK_API int tk_plucker(const char* mode, const char* input_json, char** out);

/* CSV outputs; densities is a JSON array of rationals */
TK_API int tk_traffic_diagram(const char* config_json, const char* densities_json, size_t steps, size_t threads, char** out);
TK_API int tk_traffic_tent(const char* y0, size_t steps, size_t bins, char** out);
TK_API int tk_traffic_light(const char* config_json, size_t steps, char** out);
/* min-plus event-graph matrix of a ring of m cells holding `cars` evenly spread cars */
TK_API int tk_traffic_road(size_t m, size_t cars, tk_matrix** out);

#ifdef __cplusplus
}
#endif

#endif
