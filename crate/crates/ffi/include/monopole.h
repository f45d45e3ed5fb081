#ifndef MONOPOLE_H
#define MONOPOLE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MonopoleStatus {
  MONOPOLE_STATUS_OK = 0,
  /*
   The command ran and its checks failed; the report is still handed out.
   */
  MONOPOLE_STATUS_FAILED = 1,
  MONOPOLE_STATUS_NULL_POINTER = 2,
  MONOPOLE_STATUS_INVALID_UTF8 = 3,
  MONOPOLE_STATUS_SHAPE = 4,
  MONOPOLE_STATUS_DOMAIN = 5,
  MONOPOLE_STATUS_QUANTIZATION = 6,
  MONOPOLE_STATUS_CERTIFICATION = 7,
  MONOPOLE_STATUS_SNAP = 8,
  MONOPOLE_STATUS_MISMATCH = 9,
  MONOPOLE_STATUS_INTEGRATION = 10,
  MONOPOLE_STATUS_CONFIG = 11,
  MONOPOLE_STATUS_IO = 12,
  MONOPOLE_STATUS_JSON = 13,
  MONOPOLE_STATUS_CSV = 14,
  MONOPOLE_STATUS_PANIC = 15,
} MonopoleStatus;

typedef enum MonopoleFormat {
  MONOPOLE_FORMAT_TEXT = 0,
  MONOPOLE_FORMAT_JSON = 1,
  MONOPOLE_FORMAT_MARKDOWN = 2,
  MONOPOLE_FORMAT_CSV = 3,
} MonopoleFormat;

/*
 Result of one command.
 */
typedef struct MonopoleReport MonopoleReport;

/*
 Seed and last error message shared by calls.
 */
typedef struct MonopoleSession MonopoleSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Version of the library as a static string.
 */
const char *monopole_version(void);

struct MonopoleSession *monopole_session_new(uint64_t seed);

/*
 # Safety
 `session` must come from [`monopole_session_new`] and not be used afterwards.
 */
void monopole_session_free(struct MonopoleSession *session);

/*
 Message of the last failure, empty after a successful call. Valid until
 the next call on the session.

 # Safety
 `session` must be null or a live session.
 */
const char *monopole_session_last_error(const struct MonopoleSession *session);

/*
 Runs a command given as command-line arguments without the program name,
 e.g. `{"separate", "--spin", "half", "--lambda", "1", "--j", "1.5"}`.
 The session seed applies unless `--seed` is among the arguments.

 # Safety
 `argv` must hold `argc` valid C strings and `out` must be writable.
 */
enum MonopoleStatus monopole_run(struct MonopoleSession *session,
                                 size_t argc,
                                 const char *const *argv,
                                 struct MonopoleReport **out);

/*
 Selection-rule sweep from a JSON config.

 # Safety
 `config_json` must be a valid C string and `out` writable.
 */
enum MonopoleStatus monopole_selection_rules(struct MonopoleSession *session,
                                             const char *config_json,
                                             struct MonopoleReport **out);

/*
 Algebra identities of the built-in representations, exactly, or of the
 matrices in `fixture_json` in floating point when it is not null.

 # Safety
 `fixture_json` must be null or a valid C string and `out` writable.
 */
enum MonopoleStatus monopole_verify_algebra(struct MonopoleSession *session,
                                            const char *fixture_json,
                                            struct MonopoleReport **out);

/*
 # Safety
 `report` must be null or a live report.
 */
bool monopole_report_passed(const struct MonopoleReport *report);

/*
 Renders a report; free the string with [`monopole_string_free`].

 # Safety
 `report` must be a live report and `out` writable.
 */
enum MonopoleStatus monopole_report_render(struct MonopoleSession *session,
                                           const struct MonopoleReport *report,
                                           enum MonopoleFormat format,
                                           char **out);

/*
 # Safety
 `report` must be null or come from this library and not be used afterwards.
 */
void monopole_report_free(struct MonopoleReport *report);

/*
 # Safety
 `s` must be null or a string handed out by this library.
 */
void monopole_string_free(char *s);

/*
 Small Wigner function `d^j_{m' s}(theta)` with doubled labels, so
 `j2 = 2j`. Invalid labels give `MONOPOLE_STATUS_DOMAIN`.

 # Safety
 `out` must be writable.
 */
enum MonopoleStatus monopole_wigner_d(int32_t j2,
                                      int32_t mp2,
                                      int32_t s2,
                                      double theta,
                                      double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MONOPOLE_H */
