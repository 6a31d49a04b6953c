/* Copyright 2026 The seeood Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef SEEOOD_SEEOOD_H_
#define SEEOOD_SEEOOD_H_

/*
 * C interface of the seeood shared library.
 *
 * Objects are opaque handles created by the create, load and parse calls
 * and released with the matching *_free (free functions accept NULL). Every
 * fallible call returns a seeood_status; on failure a description is
 * available from seeood_last_error() on the same thread until the next call.
 * Strings returned through char** out-parameters are owned by the caller and
 * released with seeood_string_free.
 *
 * Class indices are 0-based.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SEEOOD_BUILDING_LIBRARY)
#    define SEEOOD_API __declspec(dllexport)
#  else
#    define SEEOOD_API __declspec(dllimport)
#  endif
#else
#  define SEEOOD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum seeood_status {
  SEEOOD_OK = 0,
  SEEOOD_ERR_INVALID_ARGUMENT = 1, /* NULL handle/pointer, bad buffer size */
  SEEOOD_ERR_SHAPE = 2,
  SEEOOD_ERR_DOMAIN = 3,
  SEEOOD_ERR_NUMERIC = 4,
  SEEOOD_ERR_PARSE = 5,
  SEEOOD_ERR_IO = 6,
  SEEOOD_ERR_CONTRACT = 7,
  SEEOOD_ERR_INTERNAL = 8
} seeood_status;

typedef enum seeood_method { SEEOOD_METHOD_SEE_OOD = 0, SEEOOD_METHOD_WOOD = 1 } seeood_method;

typedef struct seeood_config seeood_config;
typedef struct seeood_dataset seeood_dataset;
typedef struct seeood_mlp seeood_mlp;
typedef struct seeood_history seeood_history;
typedef struct seeood_evaluation seeood_evaluation;
typedef struct seeood_heatmap seeood_heatmap;
typedef struct seeood_report seeood_report;
typedef struct seeood_comparison seeood_comparison;

SEEOOD_API const char* seeood_version(void);
SEEOOD_API const char* seeood_status_name(seeood_status status);
SEEOOD_API const char* seeood_last_error(void);
SEEOOD_API void seeood_string_free(char* s);

/* ---- configuration ----------------------------------------------------- */

/* Documentation of every config section and key. Static storage. */
SEEOOD_API const char* seeood_config_help(void);

/* base may be NULL; otherwise keys absent from the text keep base's values. */
SEEOOD_API seeood_status seeood_config_parse(const char* text, const seeood_config* base,
                                             seeood_config** out);
SEEOOD_API seeood_status seeood_config_load(const char* path, const seeood_config* base,
                                            seeood_config** out);
/* name: "setting1", "setting2" or "wood2d". */
SEEOOD_API seeood_status seeood_config_preset(const char* name, seeood_config** out);
SEEOOD_API seeood_status seeood_config_serialize(const seeood_config* config, char** text);
SEEOOD_API seeood_status seeood_config_set_seed(seeood_config* config, uint64_t seed);
SEEOOD_API seeood_status seeood_config_get_seed(const seeood_config* config, uint64_t* seed);
SEEOOD_API seeood_status seeood_config_method(const seeood_config* config, seeood_method* method);
SEEOOD_API seeood_status seeood_config_tnr_target_count(const seeood_config* config, size_t* n);
SEEOOD_API seeood_status seeood_config_tnr_target(const seeood_config* config, size_t i,
                                                  double* target);
SEEOOD_API void seeood_config_free(seeood_config* config);

/* ---- datasets ------------------------------------------------------------ */

/* Builds the configured dataset (builtin simulation or CSV, then OoD
   subsampling) from the data stream of `seed`. */
SEEOOD_API seeood_status seeood_dataset_build(const seeood_config* config, uint64_t seed,
                                              seeood_dataset** out);
SEEOOD_API seeood_status seeood_dataset_load_csv(const char* path, seeood_dataset** out);
SEEOOD_API seeood_status seeood_dataset_save_csv(const seeood_dataset* dataset, const char* path);
/* counts: ind_train, ind_test, ood_train, ood_test. */
SEEOOD_API seeood_status seeood_dataset_info(const seeood_dataset* dataset, size_t* dim,
                                             size_t* num_classes, size_t counts[4]);
SEEOOD_API void seeood_dataset_free(seeood_dataset* dataset);

/* ---- networks ------------------------------------------------------------ */

SEEOOD_API seeood_status seeood_mlp_load(const char* path, seeood_mlp** out);
SEEOOD_API seeood_status seeood_mlp_save(const seeood_mlp* mlp, const char* path);
SEEOOD_API seeood_status seeood_mlp_dims(const seeood_mlp* mlp, size_t* input_dim,
                                         size_t* output_dim);
SEEOOD_API seeood_status seeood_mlp_forward(const seeood_mlp* mlp, const double* input,
                                            size_t input_len, double* output, size_t output_len);
SEEOOD_API void seeood_mlp_free(seeood_mlp* mlp);

/* ---- training ------------------------------------------------------------ */

/* Trains with the configured method using the training stream of `seed`. */
SEEOOD_API seeood_status seeood_train(const seeood_config* config, const seeood_dataset* dataset,
                                      uint64_t seed, seeood_history** out);
SEEOOD_API seeood_status seeood_history_length(const seeood_history* history, size_t* n);
SEEOOD_API seeood_status seeood_history_save_csv(const seeood_history* history, const char* path);
SEEOOD_API seeood_status seeood_history_discriminator(const seeood_history* history,
                                                      seeood_mlp** out);
/* *out is set to NULL when the method has no generator (WOOD). */
SEEOOD_API seeood_status seeood_history_generator(const seeood_history* history, seeood_mlp** out);
SEEOOD_API void seeood_history_free(seeood_history* history);

/* ---- evaluation ---------------------------------------------------------- */

SEEOOD_API seeood_status seeood_evaluate(const seeood_config* config,
                                         const seeood_mlp* discriminator,
                                         const seeood_dataset* dataset, seeood_evaluation** out);
/* i indexes the config's TNR targets. */
SEEOOD_API seeood_status seeood_evaluation_tpr(const seeood_evaluation* ev, size_t i, double* tpr,
                                               double* eta);
SEEOOD_API seeood_status seeood_evaluation_accuracy(const seeood_evaluation* ev, double* accuracy);
SEEOOD_API seeood_status seeood_evaluation_save_csv(const seeood_evaluation* ev, const char* path);
SEEOOD_API void seeood_evaluation_free(seeood_evaluation* ev);

SEEOOD_API seeood_status seeood_heatmap_compute(const seeood_config* config,
                                                const seeood_mlp* discriminator,
                                                seeood_heatmap** out);
SEEOOD_API seeood_status seeood_heatmap_resolution(const seeood_heatmap* heatmap, size_t* n);
/* Copies resolution * resolution row-major scores into values. */
SEEOOD_API seeood_status seeood_heatmap_values(const seeood_heatmap* heatmap, double* values,
                                               size_t len);
SEEOOD_API seeood_status seeood_heatmap_save_csv(const seeood_heatmap* heatmap, const char* path);
SEEOOD_API seeood_status seeood_heatmap_save_pgm(const seeood_heatmap* heatmap, const char* path);
SEEOOD_API void seeood_heatmap_free(seeood_heatmap* heatmap);

/* ---- experiments --------------------------------------------------------- */

/* output_dir may be NULL or "" to keep everything in memory. */
SEEOOD_API seeood_status seeood_experiment_run(const seeood_config* config, const char* output_dir,
                                               seeood_report** out);
SEEOOD_API seeood_status seeood_report_replications(const seeood_report* report, size_t* n);
/* Aggregate over replications for TNR target i. */
SEEOOD_API seeood_status seeood_report_tpr(const seeood_report* report, size_t i, double* mean,
                                           double* mad);
SEEOOD_API seeood_status seeood_report_accuracy(const seeood_report* report, double* mean,
                                                double* mad);
/* Per-replication TPR at target i. */
SEEOOD_API seeood_status seeood_report_replication_tpr(const seeood_report* report,
                                                       size_t replication, size_t i, double* tpr);
SEEOOD_API seeood_status seeood_report_summary(const seeood_report* report, char** text);
SEEOOD_API void seeood_report_free(seeood_report* report);

SEEOOD_API seeood_status seeood_compare(const seeood_report* a, const seeood_report* b, double tnr,
                                        seeood_comparison** out);
SEEOOD_API seeood_status seeood_comparison_count(const seeood_comparison* cmp, size_t* n);
SEEOOD_API seeood_status seeood_comparison_areas(const seeood_comparison* cmp, size_t replication,
                                                 double* area_a, double* area_b);
SEEOOD_API seeood_status seeood_comparison_save_csv(const seeood_comparison* cmp, const char* path);
SEEOOD_API void seeood_comparison_free(seeood_comparison* cmp);

/* ---- scoring primitives -------------------------------------------------- */

/* cost: K*K row-major, or NULL for the binary cost matrix. */
SEEOOD_API seeood_status seeood_wasserstein_score(const double* p, size_t k, const double* cost,
                                                  double* score, size_t* argmin_class);
SEEOOD_API seeood_status seeood_select_threshold(const double* ind_scores, size_t n,
                                                 double target_tnr, double* eta);
SEEOOD_API seeood_status seeood_tpr_at_tnr(const double* ind_scores, size_t n_ind,
                                           const double* ood_scores, size_t n_ood,
                                           double target_tnr, double* tpr, double* eta);

#ifdef __cplusplus
}
#endif

#endif /* SEEOOD_SEEOOD_H_ */
