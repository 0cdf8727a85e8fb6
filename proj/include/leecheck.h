#ifndef LEECHECK_H
#define LEECHECK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LC_API __declspec(dllexport)
#else
#define LC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lc_status {
    LC_OK = 0,
    LC_ERR_USAGE = 1,         /* invalid argument */
    LC_ERR_INCONSISTENT = 2,  /* a criterion contradicts the oracle */
    LC_ERR_CAP = 3,           /* a resource cap was hit where completeness was required */
    LC_ERR_IO = 4,
    LC_ERR_INTERNAL = 5
} lc_status;

typedef enum lc_overall { LC_EXCLUDED = 0, LC_OPEN = 1, LC_EXTERNALLY_KNOWN = 2 } lc_overall;

/* Flags for lc_check and lc_scan. */
#define LC_EARLY_EXIT 1u
#define LC_USE_REGISTRY 2u
/* Flag for lc_verdicts_emit. */
#define LC_WITH_TIMING 1u

typedef struct lc_caps lc_caps;
typedef struct lc_verdicts lc_verdicts;

LC_API const char* lc_version(void);

/* Message for the last failing call on this thread; never NULL. */
LC_API const char* lc_last_error(void);

/* Frees strings returned through char** out-parameters. */
LC_API void lc_string_free(char* s);

LC_API lc_status lc_caps_new(lc_caps** out);
LC_API void lc_caps_free(lc_caps* caps);
LC_API lc_status lc_caps_load(lc_caps* caps, const char* path);
LC_API lc_status lc_caps_set(lc_caps* caps, const char* key, uint64_t value);
LC_API lc_status lc_caps_get(const lc_caps* caps, const char* key, uint64_t* value);
LC_API lc_status lc_caps_to_text(const lc_caps* caps, char** out);

/* criteria: comma-separated criterion ids, or NULL / "" for all. caps may be NULL. */
LC_API lc_status lc_check(uint64_t n, unsigned r, const lc_caps* caps, unsigned flags, const char* criteria,
                          lc_verdicts** out);
LC_API lc_status lc_scan(unsigned r, uint64_t from, uint64_t to, const lc_caps* caps, unsigned flags,
                         const char* criteria, lc_verdicts** out);
LC_API void lc_verdicts_free(lc_verdicts* v);
LC_API size_t lc_verdicts_count(const lc_verdicts* v);
LC_API lc_status lc_verdicts_get(const lc_verdicts* v, size_t i, uint64_t* n, lc_overall* overall,
                                 int* has_skips);
/* format: "json" or "csv". */
LC_API lc_status lc_verdicts_emit(const lc_verdicts* v, const char* format, unsigned flags, char** out);
/* Parses a JSON report written by lc_verdicts_emit. */
LC_API lc_status lc_verdicts_parse(const char* json_text, lc_verdicts** out);
/* Cross-checks exclusions against the oracle for small spheres; LC_ERR_INCONSISTENT with a
   description in *conflict when a criterion excludes a dimension that has a code. */
LC_API lc_status lc_verdicts_soundness(const lc_verdicts* v, char** conflict);

/* JSON results. */
LC_API lc_status lc_counts(unsigned r, uint64_t upto, const char* criteria, const lc_caps* caps, char** out);
LC_API lc_status lc_oracle(uint64_t n, unsigned r, const lc_caps* caps, int shuffle, uint64_t shuffle_seed,
                           char** out);
LC_API lc_status lc_orbit(uint64_t n, unsigned r, uint64_t v, uint64_t p, const lc_caps* caps, int generic,
                          char** out);
LC_API lc_status lc_reproduce_table(const lc_caps* caps, char** out);
/* LC_ERR_INCONSISTENT when the criteria-vs-oracle suite finds a conflict. */
LC_API lc_status lc_selftest(const lc_caps* caps, char** out);

#ifdef __cplusplus
}
#endif

#endif
