#ifndef MODALBAO_MODALBAO_H_
#define MODALBAO_MODALBAO_H_

/*
 * C interface to the modal algebra workbench.
 *
 * Objects are opaque handles created by *_create / *_parse and released by the
 * matching *_destroy. Strings returned through char** are allocated by the
 * library and must be released with mb_string_free. On failure, *errmsg (when
 * errmsg is non-NULL) receives a description; it is left untouched otherwise.
 *
 * Runners return MB_OK when every check in the report passed and
 * MB_CHECK_FAILED when the report contains a failed check. Both produce a
 * report. Any other status means no report was produced.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MB_API __declspec(dllexport)
#else
#define MB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mb_status {
  MB_OK = 0,
  MB_CHECK_FAILED = 1,
  MB_ERR_INVALID_ARGUMENT = 2,
  MB_ERR_PARSE = 3,
  MB_ERR_BOUND = 4,
  MB_ERR_CAPABILITY = 5,
  MB_ERR_UNASSIGNED = 6,
  MB_ERR_NOT_ADMISSIBLE = 7,
  MB_ERR_INTERNAL = 8
} mb_status;

typedef enum mb_format { MB_FORMAT_TEXT = 0, MB_FORMAT_JSON = 1 } mb_format;

typedef struct mb_formula mb_formula;
typedef struct mb_frame mb_frame;
typedef struct mb_options mb_options;

MB_API const char* mb_version(void);
MB_API const char* mb_status_name(mb_status status);
MB_API void mb_string_free(char* s);

/* Options shared by the runners. Defaults: seed 0, text format, automatic
 * thread count, suite-specific sample counts, timing fields included. */
MB_API mb_options* mb_options_create(void);
MB_API void mb_options_destroy(mb_options* options);
MB_API void mb_options_set_seed(mb_options* options, uint64_t seed);
MB_API void mb_options_set_format(mb_options* options, mb_format format);
MB_API void mb_options_set_threads(mb_options* options, unsigned threads);
/* 0 restores the suite default (500 for recession, 1000 for veiled). */
MB_API void mb_options_set_samples(mb_options* options, uint64_t samples);
MB_API void mb_options_set_exhaustive_k4(mb_options* options, int enabled);
MB_API void mb_options_set_sampled_k4_frames(mb_options* options, uint64_t frames);
MB_API void mb_options_set_timing(mb_options* options, int enabled);

/* Formulas. */
MB_API mb_status mb_formula_parse(const char* text, mb_formula** out, char** errmsg);
/* Named catalog entry: A1 A2 B1 B2 C1 A B C D E F. */
MB_API mb_status mb_formula_catalog(const char* name, mb_formula** out, char** errmsg);
MB_API void mb_formula_destroy(mb_formula* formula);
MB_API char* mb_formula_print(const mb_formula* formula);
MB_API char* mb_formula_tree(const mb_formula* formula);
MB_API int mb_formula_equal(const mb_formula* a, const mb_formula* b);
/* Tree, printed form, variables and matching catalog entry. */
MB_API mb_status mb_formula_report(const mb_options* options, const mb_formula* formula,
                                   char** report, char** errmsg);

/* Frames in `k;edges` form, e.g. "3;0-1,1-2", "1;refl", "2;total". */
MB_API mb_status mb_frame_parse(const char* spec, mb_frame** out, char** errmsg);
MB_API void mb_frame_destroy(mb_frame* frame);
MB_API size_t mb_frame_size(const mb_frame* frame);

/* Validity of a formula on a frame, with a counterexample when it fails. */
MB_API mb_status mb_check(const mb_options* options, const mb_frame* frame,
                          const mb_formula* formula, char** report, char** errmsg);

/* Sweep over all frames with up to kmax worlds. */
MB_API mb_status mb_sweep(const mb_options* options, unsigned kmax, char** report, char** errmsg);

/* Refutation run on the full recession algebra. `witness` may be NULL to
 * search for one; `certificate` may be NULL when not wanted. */
MB_API mb_status mb_recession(const mb_options* options, size_t depth, const char* witness,
                              char** report, char** certificate, char** errmsg);

/* Suite over the finite/cofinite recession algebra. */
MB_API mb_status mb_veiled(const mb_options* options, char** report, char** errmsg);

/* Re-derives every value stored in a certificate. */
MB_API mb_status mb_certify(const mb_options* options, const char* certificate, char** report,
                            char** errmsg);

/* Canonical forms and recession operators of an ultimately periodic set. */
MB_API mb_status mb_upset(const mb_options* options, const char* set, char** report,
                          char** errmsg);

#ifdef __cplusplus
}
#endif

#endif /* MODALBAO_MODALBAO_H_ */
