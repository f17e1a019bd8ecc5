#pragma once

/* C interface to the weak-approximation certificate library.
 *
 * Every function returns a status code: WACERT_OK on success, WACERT_MATH
 * when the mathematics rejects the input (details via wacert_last_error),
 * WACERT_USAGE for null handles or malformed arguments. Strings handed out
 * through char** are heap copies owned by the caller; release them with
 * wacert_string_free. A session is not thread-safe.
 */

#ifdef __cplusplus
extern "C" {
#endif

/* the library is built with hidden visibility; exports are explicit */
#if defined(_WIN32)
#define WACERT_API __declspec(dllexport)
#else
#define WACERT_API __attribute__((visibility("default")))
#endif

#define WACERT_OK 0
#define WACERT_MATH 1
#define WACERT_USAGE 2

typedef struct wacert_session wacert_session;

WACERT_API wacert_session* wacert_session_new(void);
WACERT_API void wacert_session_free(wacert_session* s);

/* Message of the last failing call on this session; "" after a success. */
WACERT_API const char* wacert_last_error(const wacert_session* s);

WACERT_API void wacert_string_free(char* s);

/* Full certificate over Q(sqrt(delta0)): verified parameter conditions,
 * everywhere-local solvability, the Brauer obstruction, assumption ledger.
 * params selects the quadruple as "a,b,c,e" (field elements such as
 * "1 - 14*w"); pass NULL to run the deterministic search, with radius > 0
 * overriding the default search radius. */
WACERT_API int wacert_construct(wacert_session* s, long delta0, const char* params, long radius,
                     char** out_json);

/* The reference certificate over Q extended with the fibration section. */
WACERT_API int wacert_example_json(wacert_session* s, char** out_json);

/* Parses a certificate, rebuilds it from its stated parameters alone and
 * reserializes; *out_ok = 1 exactly when the bytes come back unchanged. */
WACERT_API int wacert_reverify(wacert_session* s, const char* json_text, int* out_ok);

/* Report on the extension-strategy table; row = 0 checks every row,
 * 1..5 a single row. *out_all_pass = 1 iff all selected rows verify. */
WACERT_API int wacert_verify_table(wacert_session* s, int row, char** out_report, int* out_all_pass);

/* Hilbert symbol (s_elem, t_elem) at v over Q(sqrt(delta0)); v is a prime
 * element literal, or "inf" for the real place of Q. *out_symbol is +-1. */
WACERT_API int wacert_hilbert(wacert_session* s, long delta0, const char* s_elem, const char* t_elem,
                   const char* v, int* out_symbol);

/* Everywhere-local solvability certificate alone; params as in construct,
 * NULL to search. */
WACERT_API int wacert_solvable(wacert_session* s, long delta0, const char* params, char** out_json);

/* Local invariant of the quaternion class at the point with coordinate x
 * (a field element literal), at the ramified place over p_c. */
WACERT_API int wacert_brauer_eval(wacert_session* s, long delta0, const char* params, const char* x,
                       char** out_json);

/* Disjointness of the branch loci of the reference section and map;
 * *out_etale = 1 iff the certificate is positive. */
WACERT_API int wacert_etale_check(wacert_session* s, char** out_summary, int* out_etale);

/* Prime values e = (-delta/c) n^2 + c for n <= n_max, with the splitting
 * of each e in Q(sqrt(delta0)). */
WACERT_API int wacert_scan(wacert_session* s, long delta0, long delta, long c, long n_max, char** out_json);

#ifdef __cplusplus
}
#endif
