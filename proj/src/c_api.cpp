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

#include "seeood/seeood.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "seeood/error.hpp"
#include "seeood/experiment.hpp"
#include "text_io.hpp"

struct seeood_config {
  seeood::ExperimentConfig value;
};
struct seeood_dataset {
  seeood::Dataset value;
};
struct seeood_mlp {
  seeood::MlpParams value;
};
struct seeood_history {
  seeood::TrainHistory value;
};
struct seeood_evaluation {
  seeood::Evaluation value;
};
struct seeood_heatmap {
  seeood::Heatmap value;
};
struct seeood_report {
  seeood::ExperimentReport value;
};
struct seeood_comparison {
  seeood::RegionComparison value;
};

namespace {

thread_local std::string g_last_error;

seeood_status status_of(seeood::ErrorKind kind) {
  switch (kind) {
    case seeood::ErrorKind::kShape: return SEEOOD_ERR_SHAPE;
    case seeood::ErrorKind::kDomain: return SEEOOD_ERR_DOMAIN;
    case seeood::ErrorKind::kNumeric: return SEEOOD_ERR_NUMERIC;
    case seeood::ErrorKind::kParse: return SEEOOD_ERR_PARSE;
    case seeood::ErrorKind::kIo: return SEEOOD_ERR_IO;
    case seeood::ErrorKind::kContract: return SEEOOD_ERR_CONTRACT;
  }
  return SEEOOD_ERR_INTERNAL;
}

seeood_status fail(seeood_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs body, translating exceptions into status codes.
template <typename F>
seeood_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return SEEOOD_OK;
  } catch (const seeood::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SEEOOD_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SEEOOD_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SEEOOD_ERR_INTERNAL, "unknown exception");
  }
}

#define SEEOOD_REQUIRE(ptr)                                                  \
  do {                                                                       \
    if ((ptr) == nullptr) {                                                  \
      return fail(SEEOOD_ERR_INVALID_ARGUMENT, #ptr " must not be NULL");    \
    }                                                                        \
  } while (0)

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::optional<seeood::ExperimentConfig> base_of(const seeood_config* base) {
  if (base == nullptr) return std::nullopt;
  return base->value;
}

}  // namespace

extern "C" {

const char* seeood_version(void) { return "0.1.0"; }

const char* seeood_status_name(seeood_status status) {
  switch (status) {
    case SEEOOD_OK: return "ok";
    case SEEOOD_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SEEOOD_ERR_SHAPE: return "shape error";
    case SEEOOD_ERR_DOMAIN: return "domain error";
    case SEEOOD_ERR_NUMERIC: return "numeric error";
    case SEEOOD_ERR_PARSE: return "parse error";
    case SEEOOD_ERR_IO: return "I/O error";
    case SEEOOD_ERR_CONTRACT: return "contract error";
    case SEEOOD_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* seeood_last_error(void) { return g_last_error.c_str(); }

void seeood_string_free(char* s) { std::free(s); }

// ---- configuration --------------------------------------------------------

const char* seeood_config_help(void) {
  static const std::string help = seeood::config_help();
  return help.c_str();
}

seeood_status seeood_config_parse(const char* text, const seeood_config* base,
                                  seeood_config** out) {
  SEEOOD_REQUIRE(text);
  SEEOOD_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new seeood_config{seeood::parse_config(text, base_of(base))}; });
}

seeood_status seeood_config_load(const char* path, const seeood_config* base,
                                 seeood_config** out) {
  SEEOOD_REQUIRE(path);
  SEEOOD_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new seeood_config{seeood::load_config(path, base_of(base))}; });
}

seeood_status seeood_config_preset(const char* name, seeood_config** out) {
  SEEOOD_REQUIRE(name);
  SEEOOD_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new seeood_config{seeood::preset_config(name)}; });
}

seeood_status seeood_config_serialize(const seeood_config* config, char** text) {
  SEEOOD_REQUIRE(config);
  SEEOOD_REQUIRE(text);
  *text = nullptr;
  return guarded([&] { *text = duplicate(seeood::serialize_config(config->value)); });
}

seeood_status seeood_config_set_seed(seeood_config* config, uint64_t seed) {
  SEEOOD_REQUIRE(config);
  config->value.train.seed = seed;
  return SEEOOD_OK;
}

seeood_status seeood_config_get_seed(const seeood_config* config, uint64_t* seed) {
  SEEOOD_REQUIRE(config);
  SEEOOD_REQUIRE(seed);
  *seed = config->value.train.seed;
  return SEEOOD_OK;
}

seeood_status seeood_config_method(const seeood_config* config, seeood_method* method) {
  SEEOOD_REQUIRE(config);
  SEEOOD_REQUIRE(method);
  *method = config->value.method == seeood::Method::kSeeOod ? SEEOOD_METHOD_SEE_OOD
                                                            : SEEOOD_METHOD_WOOD;
  return SEEOOD_OK;
}

seeood_status seeood_config_tnr_target_count(const seeood_config* config, size_t* n) {
  SEEOOD_REQUIRE(config);
  SEEOOD_REQUIRE(n);
  *n = config->value.tnr_targets.size();
  return SEEOOD_OK;
}

seeood_status seeood_config_tnr_target(const seeood_config* config, size_t i, double* target) {
  SEEOOD_REQUIRE(config);
  SEEOOD_REQUIRE(target);
  if (i >= config->value.tnr_targets.size()) {
    return fail(SEEOOD_ERR_INVALID_ARGUMENT, "TNR target index out of range");
  }
  *target = config->value.tnr_targets[i];
  return SEEOOD_OK;
}

void seeood_config_free(seeood_config* config) { delete config; }

// ---- datasets -------------------------------------------------------------

seeood_status seeood_dataset_build(const seeood_config* config, uint64_t seed,
                                   seeood_dataset** out) {
  SEEOOD_REQUIRE(config);
  SEEOOD_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new seeood_dataset{seeood::build_dataset(config->value, seed)}; });
}

seeood_status seeood_dataset_load_csv(const char* path, seeood_dataset** out) {
  SEEOOD_REQUIRE(path);
  SEEOOD_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new seeood_dataset{seeood::load_dataset(path)}; });
}

seeood_status seeood_dataset_save_csv(const seeood_dataset* dataset, const char* path) {
  SEEOOD_REQUIRE(dataset);
  SEEOOD_REQUIRE(path);
  return guarded([&] { seeood::save_dataset(dataset->value, path); });
}

seeood_status seeood_dataset_info(const seeood_dataset* dataset, size_t* dim, size_t* num_classes,
                                  size_t counts[4]) {
  SEEOOD_REQUIRE(dataset);
  const auto& d = dataset->value;
  if (dim) *dim = d.dim;
  if (num_classes) *num_classes = d.num_classes;
  if (counts) {
    counts[0] = d.ind_train.size();
    counts[1] = d.ind_test.size();
    counts[2] = d.ood_train.size();
    counts[3] = d.ood_test.size();
  }
  return SEEOOD_OK;
}

void seeood_dataset_free(seeood_dataset* dataset) { delete dataset; }

// ---- networks -------------------------------------------------------------

seeood_status seeood_mlp_load(const char* path, seeood_mlp** out) {
  SEEOOD_REQUIRE(path);
  SEEOOD_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new seeood_mlp{seeood::load_mlp(path)}; });
}

seeood_status seeood_mlp_save(const seeood_mlp* mlp, const char* path) {
  SEEOOD_REQUIRE(mlp);
  SEEOOD_REQUIRE(path);
  return guarded([&] { seeood::save_mlp(mlp->value, path); });
}

seeood_status seeood_mlp_dims(const seeood_mlp* mlp, size_t* input_dim, size_t* output_dim) {
  SEEOOD_REQUIRE(mlp);
  if (input_dim) *input_dim = mlp->value.input_dim();
  if (output_dim) *output_dim = mlp->value.output_dim();
  return SEEOOD_OK;
}

seeood_status seeood_mlp_forward(const seeood_mlp* mlp, const double* input, size_t input_len,
                                 double* output, size_t output_len) {
  SEEOOD_REQUIRE(mlp);
  SEEOOD_REQUIRE(input);
  SEEOOD_REQUIRE(output);
  if (output_len != mlp->value.output_dim()) {
    return fail(SEEOOD_ERR_INVALID_ARGUMENT, "output buffer length differs from the output size");
  }
  return guarded([&] {
    const auto y = seeood::mlp_predict(mlp->value, std::span<const double>(input, input_len));
    std::copy(y.begin(), y.end(), output);
  });
}

void seeood_mlp_free(seeood_mlp* mlp) { delete mlp; }

// ---- training -------------------------------------------------------------

seeood_status seeood_train(const seeood_config* config, const seeood_dataset* dataset,
                           uint64_t seed, seeood_history** out) {
  SEEOOD_REQUIRE(config);
  SEEOOD_REQUIRE(dataset);
  SEEOOD_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    *out = new seeood_history{seeood::train_model(config->value, dataset->value, seed)};
  });
}

seeood_status seeood_history_length(const seeood_history* history, size_t* n) {
  SEEOOD_REQUIRE(history);
  SEEOOD_REQUIRE(n);
  *n = history->value.records.size();
  return SEEOOD_OK;
}

seeood_status seeood_history_save_csv(const seeood_history* history, const char* path) {
  SEEOOD_REQUIRE(history);
  SEEOOD_REQUIRE(path);
  return guarded(
      [&] { seeood::text::write_file(path, seeood::history_to_csv(history->value)); });
}

seeood_status seeood_history_discriminator(const seeood_history* history, seeood_mlp** out) {
  SEEOOD_REQUIRE(history);
  SEEOOD_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new seeood_mlp{history->value.discriminator}; });
}

seeood_status seeood_history_generator(const seeood_history* history, seeood_mlp** out) {
  SEEOOD_REQUIRE(history);
  SEEOOD_REQUIRE(out);
  *out = nullptr;
  if (!history->value.generator) return SEEOOD_OK;
  return guarded([&] { *out = new seeood_mlp{*history->value.generator}; });
}

void seeood_history_free(seeood_history* history) { delete history; }

// ---- evaluation -----------------------------------------------------------

seeood_status seeood_evaluate(const seeood_config* config, const seeood_mlp* discriminator,
                              const seeood_dataset* dataset, seeood_evaluation** out) {
  SEEOOD_REQUIRE(config);
  SEEOOD_REQUIRE(discriminator);
  SEEOOD_REQUIRE(dataset);
  SEEOOD_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    *out = new seeood_evaluation{
        seeood::evaluate_model(config->value, discriminator->value, dataset->value)};
  });
}

seeood_status seeood_evaluation_tpr(const seeood_evaluation* ev, size_t i, double* tpr,
                                    double* eta) {
  SEEOOD_REQUIRE(ev);
  if (i >= ev->value.tpr.size()) {
    return fail(SEEOOD_ERR_INVALID_ARGUMENT, "TNR target index out of range");
  }
  if (tpr) *tpr = ev->value.tpr[i];
  if (eta) *eta = ev->value.eta[i];
  return SEEOOD_OK;
}

seeood_status seeood_evaluation_accuracy(const seeood_evaluation* ev, double* accuracy) {
  SEEOOD_REQUIRE(ev);
  SEEOOD_REQUIRE(accuracy);
  *accuracy = ev->value.accuracy;
  return SEEOOD_OK;
}

seeood_status seeood_evaluation_save_csv(const seeood_evaluation* ev, const char* path) {
  SEEOOD_REQUIRE(ev);
  SEEOOD_REQUIRE(path);
  return guarded([&] { seeood::text::write_file(path, seeood::evaluation_to_csv(ev->value)); });
}

void seeood_evaluation_free(seeood_evaluation* ev) { delete ev; }

seeood_status seeood_heatmap_compute(const seeood_config* config, const seeood_mlp* discriminator,
                                     seeood_heatmap** out) {
  SEEOOD_REQUIRE(config);
  SEEOOD_REQUIRE(discriminator);
  SEEOOD_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const auto cost =
        seeood::resolve_cost_matrix(config->value, discriminator->value.output_dim());
    *out = new seeood_heatmap{
        seeood::score_heatmap(discriminator->value, config->value.grid, cost)};
  });
}

seeood_status seeood_heatmap_resolution(const seeood_heatmap* heatmap, size_t* n) {
  SEEOOD_REQUIRE(heatmap);
  SEEOOD_REQUIRE(n);
  *n = heatmap->value.grid.resolution;
  return SEEOOD_OK;
}

seeood_status seeood_heatmap_values(const seeood_heatmap* heatmap, double* values, size_t len) {
  SEEOOD_REQUIRE(heatmap);
  SEEOOD_REQUIRE(values);
  if (len != heatmap->value.values.size()) {
    return fail(SEEOOD_ERR_INVALID_ARGUMENT, "buffer length must be resolution * resolution");
  }
  std::copy(heatmap->value.values.begin(), heatmap->value.values.end(), values);
  return SEEOOD_OK;
}

seeood_status seeood_heatmap_save_csv(const seeood_heatmap* heatmap, const char* path) {
  SEEOOD_REQUIRE(heatmap);
  SEEOOD_REQUIRE(path);
  return guarded(
      [&] { seeood::text::write_file(path, seeood::heatmap_to_csv(heatmap->value)); });
}

seeood_status seeood_heatmap_save_pgm(const seeood_heatmap* heatmap, const char* path) {
  SEEOOD_REQUIRE(heatmap);
  SEEOOD_REQUIRE(path);
  return guarded(
      [&] { seeood::text::write_file(path, seeood::heatmap_to_pgm(heatmap->value)); });
}

void seeood_heatmap_free(seeood_heatmap* heatmap) { delete heatmap; }

// ---- experiments ----------------------------------------------------------

seeood_status seeood_experiment_run(const seeood_config* config, const char* output_dir,
                                    seeood_report** out) {
  SEEOOD_REQUIRE(config);
  SEEOOD_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    *out = new seeood_report{
        seeood::run_experiment(config->value, output_dir ? output_dir : "")};
  });
}

seeood_status seeood_report_replications(const seeood_report* report, size_t* n) {
  SEEOOD_REQUIRE(report);
  SEEOOD_REQUIRE(n);
  *n = report->value.replications.size();
  return SEEOOD_OK;
}

seeood_status seeood_report_tpr(const seeood_report* report, size_t i, double* mean, double* mad) {
  SEEOOD_REQUIRE(report);
  if (i >= report->value.mean_tpr.size()) {
    return fail(SEEOOD_ERR_INVALID_ARGUMENT, "TNR target index out of range");
  }
  if (mean) *mean = report->value.mean_tpr[i];
  if (mad) *mad = report->value.mad_tpr[i];
  return SEEOOD_OK;
}

seeood_status seeood_report_accuracy(const seeood_report* report, double* mean, double* mad) {
  SEEOOD_REQUIRE(report);
  if (mean) *mean = report->value.mean_accuracy;
  if (mad) *mad = report->value.mad_accuracy;
  return SEEOOD_OK;
}

seeood_status seeood_report_replication_tpr(const seeood_report* report, size_t replication,
                                            size_t i, double* tpr) {
  SEEOOD_REQUIRE(report);
  SEEOOD_REQUIRE(tpr);
  const auto& reps = report->value.replications;
  if (replication >= reps.size() || i >= reps[replication].evaluation.tpr.size()) {
    return fail(SEEOOD_ERR_INVALID_ARGUMENT, "replication or TNR target index out of range");
  }
  *tpr = reps[replication].evaluation.tpr[i];
  return SEEOOD_OK;
}

seeood_status seeood_report_summary(const seeood_report* report, char** text) {
  SEEOOD_REQUIRE(report);
  SEEOOD_REQUIRE(text);
  *text = nullptr;
  return guarded([&] { *text = duplicate(seeood::report_summary(report->value)); });
}

void seeood_report_free(seeood_report* report) { delete report; }

seeood_status seeood_compare(const seeood_report* a, const seeood_report* b, double tnr,
                             seeood_comparison** out) {
  SEEOOD_REQUIRE(a);
  SEEOOD_REQUIRE(b);
  SEEOOD_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    *out = new seeood_comparison{seeood::compare_rejection_regions(a->value, b->value, tnr)};
  });
}

seeood_status seeood_comparison_count(const seeood_comparison* cmp, size_t* n) {
  SEEOOD_REQUIRE(cmp);
  SEEOOD_REQUIRE(n);
  *n = cmp->value.area_a.size();
  return SEEOOD_OK;
}

seeood_status seeood_comparison_areas(const seeood_comparison* cmp, size_t replication,
                                      double* area_a, double* area_b) {
  SEEOOD_REQUIRE(cmp);
  if (replication >= cmp->value.area_a.size()) {
    return fail(SEEOOD_ERR_INVALID_ARGUMENT, "replication index out of range");
  }
  if (area_a) *area_a = cmp->value.area_a[replication];
  if (area_b) *area_b = cmp->value.area_b[replication];
  return SEEOOD_OK;
}

seeood_status seeood_comparison_save_csv(const seeood_comparison* cmp, const char* path) {
  SEEOOD_REQUIRE(cmp);
  SEEOOD_REQUIRE(path);
  return guarded(
      [&] { seeood::text::write_file(path, seeood::comparison_to_csv(cmp->value)); });
}

void seeood_comparison_free(seeood_comparison* cmp) { delete cmp; }

// ---- scoring primitives ---------------------------------------------------

seeood_status seeood_wasserstein_score(const double* p, size_t k, const double* cost,
                                       double* score, size_t* argmin_class) {
  SEEOOD_REQUIRE(p);
  return guarded([&] {
    const seeood::ProbVector probs(std::vector<double>(p, p + k));
    const seeood::CostMatrix m = cost == nullptr
                                     ? seeood::CostMatrix::binary(k)
                                     : seeood::CostMatrix(k, std::vector<double>(cost, cost + k * k));
    const auto r = seeood::wasserstein_score(probs, m);
    if (score) *score = r.score;
    if (argmin_class) *argmin_class = r.argmin_class;
  });
}

seeood_status seeood_select_threshold(const double* ind_scores, size_t n, double target_tnr,
                                      double* eta) {
  SEEOOD_REQUIRE(ind_scores);
  SEEOOD_REQUIRE(eta);
  return guarded([&] {
    *eta = seeood::select_threshold(std::span<const double>(ind_scores, n), target_tnr).eta;
  });
}

seeood_status seeood_tpr_at_tnr(const double* ind_scores, size_t n_ind, const double* ood_scores,
                                size_t n_ood, double target_tnr, double* tpr, double* eta) {
  SEEOOD_REQUIRE(ind_scores);
  SEEOOD_REQUIRE(ood_scores);
  return guarded([&] {
    const auto r = seeood::tpr_at_tnr(std::span<const double>(ind_scores, n_ind),
                                      std::span<const double>(ood_scores, n_ood), target_tnr);
    if (tpr) *tpr = r.tpr;
    if (eta) *eta = r.threshold.eta;
  });
}

}  // extern "C"
