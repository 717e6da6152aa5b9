/*
 * rjc: clustering of high-dimensional items through the juxtaposed
 * similarity matrix J and a structured-covariance Gaussian mixture.
 *
 * Every function returns an rjc_status. On failure the message of the most
 * recent error on the calling thread is available from rjc_last_error().
 * Handles are opaque and owned by the caller; release each with its _free
 * function. Strings returned through char** must be released with
 * rjc_string_free().
 */
#ifndef RJC_RJC_H
#define RJC_RJC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(RJC_BUILDING_LIBRARY)
#    define RJC_API __declspec(dllexport)
#  else
#    define RJC_API __declspec(dllimport)
#  endif
#else
#  define RJC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rjc_status {
  RJC_OK = 0,
  RJC_ERR_INVALID_ARGUMENT = 1, /* null handle, bad enum, bad option value */
  RJC_ERR_IO = 2,
  RJC_ERR_PARSE = 3,
  RJC_ERR_FORMAT = 4,
  RJC_ERR_DIMENSION = 5,
  RJC_ERR_DOMAIN = 6,
  RJC_ERR_DEGENERATE_FEATURE = 7,
  RJC_ERR_DEGENERATE_CLUSTER = 8,
  RJC_ERR_NUMERICAL = 9,
  RJC_ERR_INTERNAL = 10
} rjc_status;

typedef enum rjc_orientation {
  RJC_ITEMS_IN_ROWS = 0,
  RJC_ITEMS_IN_COLUMNS = 1
} rjc_orientation;

typedef enum rjc_transform {
  RJC_TRANSFORM_AUTO = 0,
  RJC_TRANSFORM_FORCE = 1,
  RJC_TRANSFORM_OFF = 2
} rjc_transform;

typedef struct rjc_matrix rjc_matrix;       /* items x features data */
typedef struct rjc_partition rjc_partition; /* hard labels */
typedef struct rjc_spec rjc_spec;           /* synthetic mixture description */
typedef struct rjc_result rjc_result;       /* fitted clustering + run report */

typedef struct rjc_config {
  int cmax;          /* 0 = min(9, N - 2) */
  int init_max_iter; /* diagonal EM */
  double init_tol;
  int max_iter;      /* structured EM */
  double tol;
  double rel_floor;  /* eigenvalue floor relative to the largest eigenvalue */
  int threads;       /* 0 = all cores */
  uint64_t seed;
} rjc_config;

/* True when the error is a usage/input problem (CLI exit 2) rather than a
 * numerical failure (CLI exit 3). */
RJC_API int rjc_status_is_input_error(rjc_status status);
RJC_API const char* rjc_status_name(rjc_status status);
RJC_API const char* rjc_last_error(void);
RJC_API void rjc_string_free(char* s);
RJC_API const char* rjc_version(void);

RJC_API void rjc_config_default(rjc_config* config);

/* ---- matrices ---------------------------------------------------------- */

RJC_API rjc_status rjc_matrix_load(const char* path, rjc_orientation orientation,
                                   rjc_matrix** out);
/* values is row-major n_items x n_features. */
RJC_API rjc_status rjc_matrix_from_values(const double* values, size_t n_items,
                                          size_t n_features, rjc_matrix** out);
RJC_API void rjc_matrix_free(rjc_matrix* m);
RJC_API size_t rjc_matrix_items(const rjc_matrix* m);
RJC_API size_t rjc_matrix_features(const rjc_matrix* m);
RJC_API rjc_status rjc_matrix_value(const rjc_matrix* m, size_t item, size_t feature,
                                    double* out);
/* Applies the log / median-centre / sd-scale transform in place. *applied
 * (optional) reports whether the data changed. */
RJC_API rjc_status rjc_matrix_transform(rjc_matrix* m, rjc_transform mode, int* applied);
RJC_API rjc_status rjc_matrix_write(const rjc_matrix* m, const char* path);
/* Exports R = X X^T / P or the juxtaposed N x (N+1) matrix as CSV. */
RJC_API rjc_status rjc_matrix_export_gram(const rjc_matrix* m, const char* path);
RJC_API rjc_status rjc_matrix_export_juxtaposed(const rjc_matrix* m, const char* path);

/* ---- partitions -------------------------------------------------------- */

RJC_API rjc_status rjc_partition_load(const char* path, rjc_partition** out);
/* Arbitrary integer labels; relabelled to 1..C by first occurrence. */
RJC_API rjc_status rjc_partition_from_labels(const int* labels, size_t n, rjc_partition** out);
RJC_API void rjc_partition_free(rjc_partition* p);
RJC_API size_t rjc_partition_size(const rjc_partition* p);
RJC_API int rjc_partition_clusters(const rjc_partition* p);
/* Copies n 1-based labels into out. */
RJC_API rjc_status rjc_partition_labels(const rjc_partition* p, int* out, size_t n);
RJC_API rjc_status rjc_partition_write(const rjc_partition* p, const char* path);

RJC_API rjc_status rjc_ami(const rjc_partition* a, const rjc_partition* b, double* out);

/* ---- synthetic data ---------------------------------------------------- */

/* Gaussian noise, theta drawn N(0, 1) from the seed. */
RJC_API rjc_status rjc_spec_create(const int* n_per_cluster, size_t n_clusters,
                                   int n_features, double noise_sd, uint64_t seed,
                                   rjc_spec** out);
RJC_API rjc_status rjc_spec_from_json(const char* json, rjc_spec** out);
RJC_API rjc_status rjc_spec_to_json(const rjc_spec* s, char** out);
RJC_API void rjc_spec_free(rjc_spec* s);
RJC_API rjc_status rjc_generate(const rjc_spec* s, rjc_matrix** matrix, rjc_partition** labels);

/* ---- clustering -------------------------------------------------------- */

/* config may be NULL for defaults. */
RJC_API rjc_status rjc_cluster(const rjc_matrix* m, const rjc_config* config, rjc_result** out);
RJC_API void rjc_result_free(rjc_result* r);
RJC_API int rjc_result_selected_clusters(const rjc_result* r);
/* Copies the selected partition (caller frees). */
RJC_API rjc_status rjc_result_partition(const rjc_result* r, rjc_partition** out);
/* Run report as JSON (schema 1). */
RJC_API rjc_status rjc_result_to_json(const rjc_result* r, char** out);
/* Plain pixmap of R with items grouped by the selected clusters. */
RJC_API rjc_status rjc_result_export_heatmap(const rjc_result* r, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* RJC_RJC_H */
