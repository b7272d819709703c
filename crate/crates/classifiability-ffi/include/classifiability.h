#ifndef CLASSIFIABILITY_H
#define CLASSIFIABILITY_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible FFI call.
typedef enum ClsfStatus {
  // Success.
  CLSF_STATUS_OK = 0,
  // A required pointer argument was null.
  CLSF_STATUS_NULL_POINTER = 1,
  // An argument failed validation (bad metric name, bad JSON, bad k).
  CLSF_STATUS_INVALID_ARGUMENT = 2,
  // The dataset violated an invariant (non-finite value, empty class).
  CLSF_STATUS_DATA_ERROR = 3,
  // The computation rejected its inputs (e.g. k exceeds n - 1).
  CLSF_STATUS_COMPUTE_ERROR = 4,
  // File access failed.
  CLSF_STATUS_IO_ERROR = 5,
} ClsfStatus;

// Opaque dataset handle.
typedef struct ClsfDataset ClsfDataset;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the most recent failure on this thread.
//
// The pointer stays valid until the next failing call on the same thread.
// Never free it.
const char *clsf_last_error(void);

// Library version as a static NUL-terminated string. Never free it.
const char *clsf_version(void);

// Loads a dataset from a CSV file with a header row.
//
// All non-label columns are read as numeric features; the label column
// maps to classes in first-appearance order.
//
// # Safety
// `path` and `label_column` must be NUL-terminated strings; `out` must be
// a valid pointer to a dataset-handle slot.
enum ClsfStatus clsf_dataset_from_csv(const char *path,
                                      const char *label_column,
                                      struct ClsfDataset **out);

// Builds a dataset from a row-major feature buffer and integer labels.
//
// Classes are named "0".."n_classes - 1"; every class must appear in
// `labels` at least once.
//
// # Safety
// `features` must point to `n * d` doubles, `labels` to `n` values in
// `0..n_classes`; `out` must be a valid pointer to a dataset-handle slot.
enum ClsfStatus clsf_dataset_from_arrays(const double *features,
                                         size_t n,
                                         size_t d,
                                         const uint32_t *labels,
                                         uint32_t n_classes,
                                         struct ClsfDataset **out);

// Generates a synthetic dataset from a JSON spec, e.g.
// `{"kind":"moons","n":500,"noise":0.1,"seed":7}`.
//
// # Safety
// `spec_json` must be a NUL-terminated string; `out` must be a valid
// pointer to a dataset-handle slot.
enum ClsfStatus clsf_dataset_generate(const char *spec_json, struct ClsfDataset **out);

// Releases a dataset handle. Passing null is a no-op.
//
// # Safety
// `dataset` must be a handle returned by a `clsf_dataset_*` constructor
// that has not been freed yet.
void clsf_dataset_free(struct ClsfDataset *dataset);

// Number of rows, or 0 for a null handle.
//
// # Safety
// `dataset` must be a live dataset handle or null.
size_t clsf_dataset_rows(const struct ClsfDataset *dataset);

// Number of feature columns, or 0 for a null handle.
//
// # Safety
// `dataset` must be a live dataset handle or null.
size_t clsf_dataset_cols(const struct ClsfDataset *dataset);

// Number of classes, or 0 for a null handle.
//
// # Safety
// `dataset` must be a live dataset handle or null.
size_t clsf_dataset_classes(const struct ClsfDataset *dataset);

// Classifiability limit with a k-nearest neighborhood.
//
// `metric` is one of `l1|l2|chebyshev|hamming|canberra|braycurtis`.
//
// # Safety
// `dataset` must be a live dataset handle; `metric` a NUL-terminated
// string; `out_limit` a valid pointer to a double.
enum ClsfStatus clsf_estimate_knn(const struct ClsfDataset *dataset,
                                  size_t k,
                                  const char *metric,
                                  double *out_limit);

// Classifiability limit with a strict radius neighborhood.
//
// # Safety
// Same contract as [`clsf_estimate_knn`].
enum ClsfStatus clsf_estimate_radius(const struct ClsfDataset *dataset,
                                     double theta,
                                     const char *metric,
                                     double *out_limit);

// Full estimate report as a JSON string.
//
// `spec_json` is a neighborhood spec, e.g.
// `{"mode":"k_nearest","k":16,"metric":"l2"}` or
// `{"mode":"radius","theta":0.5,"metric":"l1"}`. The returned string must
// be released with [`clsf_string_free`].
//
// # Safety
// `dataset` must be a live dataset handle; `spec_json` a NUL-terminated
// string; `out_json` a valid pointer to a string slot.
enum ClsfStatus clsf_estimate_report_json(const struct ClsfDataset *dataset,
                                          const char *spec_json,
                                          char **out_json);

// Releases a string returned by this library. Passing null is a no-op.
//
// # Safety
// `s` must be a string returned by this library that has not been freed.
void clsf_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CLASSIFIABILITY_H */
