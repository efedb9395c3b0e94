/*
 * C interface to the malt finite-algebra workbench.
 *
 * Every function returns a malt_status. Reports are returned as
 * NUL-terminated JSON strings owned by the caller and released with
 * malt_string_release. On any status >= MALT_ERR_PARSE, malt_last_error()
 * describes the failure for the calling thread.
 */
#ifndef MALT_H
#define MALT_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(MALT_BUILDING_LIBRARY)
#    define MALT_API __declspec(dllexport)
#  else
#    define MALT_API __declspec(dllimport)
#  endif
#else
#  define MALT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct malt_algebra malt_algebra;

typedef enum malt_status {
  MALT_OK = 0,
  MALT_FAIL = 1,         /* an asserted property was violated */
  MALT_INCONCLUSIVE = 3, /* a cap was reached before an answer */
  MALT_ERR_PARSE = 10,
  MALT_ERR_VALIDATION = 11,
  MALT_ERR_IO = 12,
  MALT_ERR_BUDGET = 13,
  MALT_ERR_ARGUMENT = 14,
  MALT_ERR_INTERNAL = 15
} malt_status;

typedef enum malt_kind {
  MALT_KIND_JONSSON = 0,
  MALT_KIND_ALVIN = 1,
  MALT_KIND_GUMM = 2,
  MALT_KIND_DAY = 3
} malt_kind;

typedef struct malt_level_options {
  malt_kind kind;
  unsigned cap_n;
  size_t cap_clone;
  int allow_large_day;
} malt_level_options;

typedef struct malt_star_options {
  malt_kind kind;    /* MALT_KIND_GUMM or MALT_KIND_ALVIN */
  unsigned times;    /* number of star applications */
  unsigned check_tm; /* 0 = skip, else m for the (T_m) check */
} malt_star_options;

MALT_API const char* malt_version(void);
MALT_API const char* malt_status_name(int status);
MALT_API const char* malt_last_error(void);

MALT_API void malt_set_threads(unsigned threads);
MALT_API unsigned malt_get_threads(void);

MALT_API int malt_algebra_from_json(const char* text, malt_algebra** out);
MALT_API int malt_algebra_from_file(const char* path, malt_algebra** out);
MALT_API int malt_algebra_power(const malt_algebra* algebra, unsigned m,
                                malt_algebra** out);
MALT_API void malt_algebra_release(malt_algebra* algebra);
MALT_API int malt_algebra_size(const malt_algebra* algebra, size_t* out);
MALT_API int malt_algebra_to_json(const malt_algebra* algebra, char** out);

MALT_API int malt_info(const malt_algebra* algebra, char** report);
MALT_API int malt_conlat(const malt_algebra* algebra, char** report);

MALT_API void malt_level_options_init(malt_level_options* options);
/* MALT_OK when a level was found, MALT_INCONCLUSIVE otherwise. */
MALT_API int malt_level(const malt_algebra* algebra,
                        const malt_level_options* options, char** report);

/* Free algebra in the algebra JSON format plus a "generators" array. */
MALT_API int malt_free_algebra(const malt_algebra* algebra, unsigned arity,
                               size_t cap_clone, char** algebra_json);

MALT_API void malt_star_options_init(malt_star_options* options);
/* MALT_ERR_VALIDATION if the input sequence is invalid (the report then
 * lists the violations); MALT_FAIL if a re-check fails. */
MALT_API int malt_star(const malt_algebra* algebra, const char* sequence_json,
                       const malt_star_options* options, char** report);

/* params_json may be NULL. MALT_OK, MALT_FAIL or MALT_INCONCLUSIVE. */
MALT_API int malt_verify(const malt_algebra* algebra, const char* suite,
                         const char* params_json, char** report);

MALT_API void malt_string_release(char* text);

#ifdef __cplusplus
}
#endif

#endif /* MALT_H */
