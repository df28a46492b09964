// Copyright 2026 The GIE Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GIE_GIE_H_
#define GIE_GIE_H_

/* C interface to the GIE knowledge-graph embedding library.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Fallible calls return a gie_status; on failure gie_last_error() holds a
 * message for the calling thread until its next failing call. Output
 * pointers are written only on success. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(GIE_BUILDING_LIBRARY)
#define GIE_API __declspec(dllexport)
#else
#define GIE_API __declspec(dllimport)
#endif
#else
#define GIE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gie_status {
  GIE_OK = 0,
  GIE_ERR_INVALID_ARGUMENT = 1,
  GIE_ERR_INVALID_CONFIG = 2,
  GIE_ERR_POINT_OUTSIDE_MANIFOLD = 3,
  GIE_ERR_NUMERICAL_DEGENERACY = 4,
  GIE_ERR_DIMENSION_MISMATCH = 5,
  GIE_ERR_CHART_MISMATCH = 6,
  GIE_ERR_GRADIENT_NON_FINITE = 7,
  GIE_ERR_TRAINING_DIVERGED = 8,
  GIE_ERR_DATASET_NOT_FOUND = 9,
  GIE_ERR_PARSE = 10,
  GIE_ERR_VOCAB_MISMATCH = 11,
  GIE_ERR_EMPTY_GRAPH = 12,
  GIE_ERR_NOT_CONNECTED = 13,
  GIE_ERR_UNDEFINED = 14,
  GIE_ERR_IO = 15,
  GIE_ERR_INTERNAL = 100
} gie_status;

typedef enum gie_split { GIE_SPLIT_TRAIN = 0, GIE_SPLIT_VALID = 1, GIE_SPLIT_TEST = 2 } gie_split;

typedef enum gie_geometry {
  GIE_GEOMETRY_EUCLIDEAN = 0,
  GIE_GEOMETRY_HYPERBOLIC = 1,
  GIE_GEOMETRY_SPHERICAL = 2
} gie_geometry;

typedef struct gie_dataset gie_dataset;
typedef struct gie_model gie_model;
typedef struct gie_eval_report gie_eval_report;
typedef struct gie_metrics_report gie_metrics_report;

GIE_API const char* gie_version(void);
GIE_API const char* gie_status_name(gie_status status);
GIE_API const char* gie_last_error(void);

/* Log messages (warnings from loading, deduplication counts, ...). A NULL
 * callback restores the default, which prints warnings to stderr.
 * level: 0 info, 1 warning. */
typedef void (*gie_log_callback)(int level, const char* message, void* user);
GIE_API void gie_set_log_callback(gie_log_callback callback, void* user);

/* ---- datasets ---------------------------------------------------------- */

/* Reads dir/{train,valid,test}.txt (or .txt.gz): one head<TAB>relation<TAB>tail
 * per line. Every raw relation gets an inverse with id j + M. */
GIE_API gie_status gie_dataset_load(const char* dir, gie_dataset** out);

/* Generates the 60-entity ring/tree/chain graph and writes it to dir. */
GIE_API gie_status gie_synthetic_write(const char* dir, uint64_t seed, double test_fraction);

GIE_API void gie_dataset_free(gie_dataset* dataset);
GIE_API size_t gie_dataset_num_entities(const gie_dataset* dataset);
/* Including inverse relations. */
GIE_API size_t gie_dataset_num_relations(const gie_dataset* dataset);
GIE_API size_t gie_dataset_num_raw_relations(const gie_dataset* dataset);
/* Augmented triple count of a split. */
GIE_API size_t gie_dataset_split_size(const gie_dataset* dataset, gie_split split);
/* NULL when the id is out of range. */
GIE_API const char* gie_dataset_entity_name(const gie_dataset* dataset, uint32_t id);
GIE_API const char* gie_dataset_relation_name(const gie_dataset* dataset, uint32_t id);

/* ---- models ------------------------------------------------------------ */

typedef struct gie_train_config {
  size_t dim;
  double learning_rate;
  size_t batch_size;
  size_t negatives;
  size_t epochs;
  size_t patience;
  uint64_t seed;
  size_t threads;
  gie_geometry interaction;
} gie_train_config;

GIE_API void gie_train_config_default(gie_train_config* config);

typedef void (*gie_epoch_callback)(size_t epoch, double train_loss, double valid_mrr, void* user);

GIE_API gie_status gie_model_init(const gie_dataset* dataset, const gie_train_config* config,
                                  gie_model** out);

/* Trains in place. valid_mrr is NaN when the dataset has no valid split.
 * On GIE_ERR_TRAINING_DIVERGED *diverged_epoch (if non-NULL) receives the
 * 1-based epoch. */
GIE_API gie_status gie_model_train(gie_model* model, const gie_dataset* dataset,
                                   const gie_train_config* config, gie_epoch_callback callback,
                                   void* user, size_t* diverged_epoch);

GIE_API gie_status gie_model_save(const gie_model* model, const char* path);
GIE_API gie_status gie_model_load(const char* path, gie_model** out);
GIE_API void gie_model_free(gie_model* model);

GIE_API size_t gie_model_dim(const gie_model* model);
GIE_API size_t gie_model_num_entities(const gie_model* model);
GIE_API size_t gie_model_num_relations(const gie_model* model);
GIE_API uint64_t gie_model_seed(const gie_model* model);
GIE_API uint64_t gie_model_epoch(const gie_model* model);

/* GIE_ERR_VOCAB_MISMATCH unless the model was trained on this vocabulary. */
GIE_API gie_status gie_model_check_vocab(const gie_model* model, const gie_dataset* dataset);

GIE_API gie_status gie_model_score(const gie_model* model, uint32_t head, uint32_t relation,
                                   uint32_t tail, double* out);

/* ---- evaluation -------------------------------------------------------- */

typedef struct gie_relation_eval {
  uint32_t relation; /* raw relation id */
  double mrr;
  double hits10;
  size_t count; /* ranking queries, head and tail pooled */
} gie_relation_eval;

/* Filtered ranking of every augmented triple of the split. */
GIE_API gie_status gie_evaluate(const gie_model* model, const gie_dataset* dataset,
                                gie_split split, size_t threads, gie_eval_report** out);
GIE_API void gie_eval_report_free(gie_eval_report* report);
GIE_API double gie_eval_report_mrr(const gie_eval_report* report);
/* n is 1, 3 or 10; other values yield NaN. */
GIE_API double gie_eval_report_hits(const gie_eval_report* report, int n);
GIE_API size_t gie_eval_report_queries(const gie_eval_report* report);
GIE_API size_t gie_eval_report_num_relations(const gie_eval_report* report);
GIE_API gie_status gie_eval_report_relation(const gie_eval_report* report, size_t index,
                                            gie_relation_eval* out);

/* ---- graph metrics ----------------------------------------------------- */

typedef struct gie_relation_metrics {
  uint32_t relation;
  const char* name; /* owned by the report */
  size_t edges;
  double khs; /* NaN when the relation has no training edges */
  int has_curvature;
  double curvature;
  double weight; /* sum of cubed component sizes */
} gie_relation_metrics;

/* Per raw relation of the training split: Krackhardt hierarchy score and
 * sampled triangle curvature. */
GIE_API gie_status gie_graph_metrics(const gie_dataset* dataset, size_t samples, uint64_t seed,
                                     size_t threads, gie_metrics_report** out);
GIE_API void gie_metrics_report_free(gie_metrics_report* report);
GIE_API size_t gie_metrics_report_size(const gie_metrics_report* report);
GIE_API gie_status gie_metrics_report_row(const gie_metrics_report* report, size_t index,
                                          gie_relation_metrics* out);
/* Returns 1 and writes the whole-graph curvature when one is defined. */
GIE_API int gie_metrics_report_curvature(const gie_metrics_report* report, double* out);

#ifdef __cplusplus
}
#endif

#endif /* GIE_GIE_H_ */
