/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef SYMMAP_H
#define SYMMAP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum SymmapStatus {
  SYMMAP_STATUS_OK = 0,
  SYMMAP_STATUS_NULL_POINTER = 1,
  SYMMAP_STATUS_INVALID_UTF8 = 2,
  SYMMAP_STATUS_BUFFER_TOO_SMALL = 3,
  SYMMAP_STATUS_UNKNOWN_MAPPING = 10,
  SYMMAP_STATUS_INVALID_MAPPING = 11,
  SYMMAP_STATUS_ALPHABET_MISMATCH = 12,
  SYMMAP_STATUS_INVALID_SEQUENCE = 13,
  SYMMAP_STATUS_INVALID_ARGUMENT = 14,
  SYMMAP_STATUS_DEGENERATE_PROFILE = 15,
  SYMMAP_STATUS_SUPPORT_OVERFLOW = 16,
  SYMMAP_STATUS_PARSE = 17,
  SYMMAP_STATUS_IO = 18,
  SYMMAP_STATUS_PANIC = 99,
} SymmapStatus;

typedef enum SymmapBoundary {
  SYMMAP_BOUNDARY_CIRCULAR = 0,
  SYMMAP_BOUNDARY_TRUNCATED = 1,
} SymmapBoundary;

// A mapping table.
typedef struct SymmapMapping SymmapMapping;

// An operator profile.
typedef struct SymmapProfile SymmapProfile;

// A symbol sequence over some alphabet.
typedef struct SymmapSequence SymmapSequence;

// A formal series with real coefficients.
typedef struct SymmapSeries SymmapSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the most recent failure on this thread, or null. Valid until
// the next failing call on the same thread.
const char *symmap_last_error(void);

// Library version as a static string.
const char *symmap_version(void);

// Frees a string returned by this library.
void symmap_string_free(char *s);

// Looks up a built-in mapping by name.
enum SymmapStatus symmap_mapping_builtin(const char *name, struct SymmapMapping **out);

// Parses a mapping JSON document.
enum SymmapStatus symmap_mapping_from_json(const char *json, struct SymmapMapping **out);

// Dimension of the mapping's vectors, or 0 for a null handle.
size_t symmap_mapping_dim(const struct SymmapMapping *mapping);

void symmap_mapping_free(struct SymmapMapping *mapping);

// Parses `symbols` over `alphabet` (one character per symbol).
enum SymmapStatus symmap_sequence_parse(const char *alphabet,
                                        const char *symbols,
                                        struct SymmapSequence **out);

size_t symmap_sequence_len(const struct SymmapSequence *seq);

void symmap_sequence_free(struct SymmapSequence *seq);

// Lag autocorrelation of the encoded sequence for lags `0..=max_lag`.
enum SymmapStatus symmap_autocorrelation(const struct SymmapMapping *mapping,
                                         const struct SymmapSequence *seq,
                                         size_t max_lag,
                                         enum SymmapBoundary boundary,
                                         struct SymmapProfile **out);

// Magnitude spectrum of the encoded sequence, one value per frequency bin.
enum SymmapStatus symmap_spectrum(const struct SymmapMapping *mapping,
                                  const struct SymmapSequence *seq,
                                  struct SymmapProfile **out);

size_t symmap_profile_len(const struct SymmapProfile *profile);

// Copies the profile values into `buf`. Fails with `BUFFER_TOO_SMALL` when
// `cap` is less than the profile length.
enum SymmapStatus symmap_profile_values(const struct SymmapProfile *profile,
                                        double *buf,
                                        size_t cap);

void symmap_profile_free(struct SymmapProfile *profile);

// Pearson correlation of two profiles, skipping the `n_exclude` grid indices
// in `exclude` (which may be null when `n_exclude` is 0).
enum SymmapStatus symmap_pearson(const struct SymmapProfile *p,
                                 const struct SymmapProfile *q,
                                 const size_t *exclude,
                                 size_t n_exclude,
                                 double *out);

// Percentage of `p`'s interior extrema that `q` reproduces.
enum SymmapStatus symmap_extrema_preservation(const struct SymmapProfile *p,
                                              const struct SymmapProfile *q,
                                              double *out);

// Fraction of successive differences with matching sign.
enum SymmapStatus symmap_sign_agreement(const struct SymmapProfile *p,
                                        const struct SymmapProfile *q,
                                        double *out);

// Whether `second` is a scaled orthogonal image of `first`. `related` is set
// to 1 or 0; `scale` and `residual` may be null.
enum SymmapStatus symmap_rotation_check(const struct SymmapMapping *first,
                                        const struct SymmapMapping *second,
                                        double tol,
                                        int32_t *related,
                                        double *scale,
                                        double *residual);

// Parses a series in `coefficient<TAB>word` lines.
enum SymmapStatus symmap_series_parse(const char *alphabet,
                                      const char *text_in,
                                      struct SymmapSeries **out);

enum SymmapStatus symmap_series_add(const struct SymmapSeries *f,
                                    const struct SymmapSeries *g,
                                    struct SymmapSeries **out);

enum SymmapStatus symmap_series_mul(const struct SymmapSeries *f,
                                    const struct SymmapSeries *g,
                                    struct SymmapSeries **out);

// Sets `equivalent` to 1 and `scalar` to `c` when `f = c·g`, else 0.
enum SymmapStatus symmap_series_equivalent(const struct SymmapSeries *f,
                                           const struct SymmapSeries *g,
                                           double tol,
                                           int32_t *equivalent,
                                           double *scalar);

// Serializes a series; free the result with [`symmap_string_free`].
enum SymmapStatus symmap_series_to_text(const struct SymmapSeries *series, char **out);

void symmap_series_free(struct SymmapSeries *series);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SYMMAP_H */
