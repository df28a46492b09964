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

#include "gie/gie.h"

#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "gie/checkpoint.hpp"
#include "gie/data.hpp"
#include "gie/error.hpp"
#include "gie/eval.hpp"
#include "gie/graphmetrics.hpp"
#include "gie/log.hpp"
#include "gie/synthetic.hpp"
#include "gie/trainer.hpp"

struct gie_dataset {
  gie::TripleStore store;
};

struct gie_model {
  gie::Checkpoint ckpt;
};

struct gie_eval_report {
  gie::EvalReport report;
  std::vector<gie_relation_eval> rows;
};

struct gie_metrics_report {
  gie::GraphMetricsReport report;
};

namespace {

thread_local std::string last_error;

gie_status to_status(gie::ErrorCode code) {
  return static_cast<gie_status>(static_cast<int>(code));
}

gie_status set_error(gie_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
gie_status guarded(F&& body) {
  try {
    body();
    return GIE_OK;
  } catch (const gie::Error& e) {
    return set_error(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(GIE_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(GIE_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(GIE_ERR_INTERNAL, "unknown error");
  }
}

gie_status null_argument(const char* name) {
  return set_error(GIE_ERR_INVALID_ARGUMENT, std::string(name) + " is null");
}

gie::TrainConfig to_config(const gie_train_config& c) {
  gie::TrainConfig cfg;
  cfg.dim = c.dim;
  cfg.learning_rate = c.learning_rate;
  cfg.batch_size = c.batch_size;
  cfg.negatives = c.negatives;
  cfg.epochs = c.epochs;
  cfg.patience = c.patience;
  cfg.seed = c.seed;
  cfg.threads = c.threads;
  switch (c.interaction) {
    case GIE_GEOMETRY_EUCLIDEAN: cfg.interaction = gie::Geometry::kEuclidean; break;
    case GIE_GEOMETRY_HYPERBOLIC: cfg.interaction = gie::Geometry::kHyperbolic; break;
    case GIE_GEOMETRY_SPHERICAL: cfg.interaction = gie::Geometry::kSpherical; break;
    default: gie::fail(gie::ErrorCode::kInvalidConfig, "unknown interaction geometry");
  }
  return cfg;
}

bool valid_split(gie_split s) {
  return s == GIE_SPLIT_TRAIN || s == GIE_SPLIT_VALID || s == GIE_SPLIT_TEST;
}

struct LogTarget {
  gie_log_callback callback;
  void* user;
};

}  // namespace

extern "C" {

const char* gie_version(void) { return "0.1.0"; }

const char* gie_status_name(gie_status status) {
  switch (status) {
    case GIE_OK: return "Ok";
    case GIE_ERR_INTERNAL: return "Internal";
    default: break;
  }
  const int code = static_cast<int>(status);
  if (code >= static_cast<int>(gie::ErrorCode::kInvalidArgument) &&
      code <= static_cast<int>(gie::ErrorCode::kIo)) {
    return gie::error_code_name(static_cast<gie::ErrorCode>(code)).data();
  }
  return "Unknown";
}

const char* gie_last_error(void) { return last_error.c_str(); }

void gie_set_log_callback(gie_log_callback callback, void* user) {
  if (callback == nullptr) {
    gie::set_log_sink({});
    return;
  }
  const LogTarget target{callback, user};
  gie::set_log_sink([target](gie::LogLevel level, std::string_view message) {
    const std::string text(message);
    target.callback(level == gie::LogLevel::kWarning ? 1 : 0, text.c_str(), target.user);
  });
}

gie_status gie_dataset_load(const char* dir, gie_dataset** out) {
  if (dir == nullptr) return null_argument("dir");
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = new gie_dataset{gie::load_dataset(dir)}; });
}

gie_status gie_synthetic_write(const char* dir, uint64_t seed, double test_fraction) {
  if (dir == nullptr) return null_argument("dir");
  return guarded([&] { gie::write_dataset(dir, gie::make_synthetic_kg(seed, test_fraction)); });
}

void gie_dataset_free(gie_dataset* dataset) { delete dataset; }

size_t gie_dataset_num_entities(const gie_dataset* dataset) {
  return dataset ? dataset->store.num_entities() : 0;
}

size_t gie_dataset_num_relations(const gie_dataset* dataset) {
  return dataset ? dataset->store.num_relations() : 0;
}

size_t gie_dataset_num_raw_relations(const gie_dataset* dataset) {
  return dataset ? dataset->store.num_raw_relations() : 0;
}

size_t gie_dataset_split_size(const gie_dataset* dataset, gie_split split) {
  if (dataset == nullptr || !valid_split(split)) return 0;
  return dataset->store.split(static_cast<gie::Split>(split)).size();
}

const char* gie_dataset_entity_name(const gie_dataset* dataset, uint32_t id) {
  if (dataset == nullptr || id >= dataset->store.num_entities()) return nullptr;
  return dataset->store.entities().name(id).c_str();
}

const char* gie_dataset_relation_name(const gie_dataset* dataset, uint32_t id) {
  if (dataset == nullptr || id >= dataset->store.num_relations()) return nullptr;
  return dataset->store.relations().name(id).c_str();
}

void gie_train_config_default(gie_train_config* config) {
  if (config == nullptr) return;
  const gie::TrainConfig d;
  config->dim = d.dim;
  config->learning_rate = d.learning_rate;
  config->batch_size = d.batch_size;
  config->negatives = d.negatives;
  config->epochs = d.epochs;
  config->patience = d.patience;
  config->seed = d.seed;
  config->threads = d.threads;
  config->interaction = static_cast<gie_geometry>(static_cast<int>(d.interaction));
}

gie_status gie_model_init(const gie_dataset* dataset, const gie_train_config* config,
                          gie_model** out) {
  if (dataset == nullptr) return null_argument("dataset");
  if (config == nullptr) return null_argument("config");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    const auto cfg = to_config(*config);
    cfg.validate();
    auto m = std::make_unique<gie_model>();
    m->ckpt.model = gie::init_model(gie::model_dims(dataset->store, cfg), cfg.seed);
    m->ckpt.entities = dataset->store.entities();
    m->ckpt.relations = dataset->store.relations();
    m->ckpt.seed = cfg.seed;
    m->ckpt.epoch = 0;
    *out = m.release();
  });
}

gie_status gie_model_train(gie_model* model, const gie_dataset* dataset,
                           const gie_train_config* config, gie_epoch_callback callback, void* user,
                           size_t* diverged_epoch) {
  if (model == nullptr) return null_argument("model");
  if (dataset == nullptr) return null_argument("dataset");
  if (config == nullptr) return null_argument("config");
  try {
    const auto cfg = to_config(*config);
    gie::check_vocab(model->ckpt, dataset->store);
    if (model->ckpt.model.dims().dim != cfg.dim) {
      gie::fail(gie::ErrorCode::kInvalidConfig, "config dim " + std::to_string(cfg.dim) +
                                                    " differs from model dim " +
                                                    std::to_string(model->ckpt.model.dims().dim));
    }
    gie::EpochCallback on_epoch;
    if (callback != nullptr) {
      on_epoch = [callback, user](const gie::EpochMetrics& m) {
        callback(m.epoch, m.train_loss, m.valid_mrr, user);
      };
    }
    const auto result = gie::train(model->ckpt.model, dataset->store, cfg, on_epoch);
    model->ckpt.seed = cfg.seed;
    model->ckpt.epoch += result.history.size();
    return GIE_OK;
  } catch (const gie::TrainingDiverged& e) {
    if (diverged_epoch != nullptr) *diverged_epoch = e.epoch();
    return set_error(GIE_ERR_TRAINING_DIVERGED, e.what());
  } catch (...) {
    return guarded([] { throw; });
  }
}

gie_status gie_model_save(const gie_model* model, const char* path) {
  if (model == nullptr) return null_argument("model");
  if (path == nullptr) return null_argument("path");
  return guarded([&] { gie::save_checkpoint(path, model->ckpt); });
}

gie_status gie_model_load(const char* path, gie_model** out) {
  if (path == nullptr) return null_argument("path");
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = new gie_model{gie::load_checkpoint(path)}; });
}

void gie_model_free(gie_model* model) { delete model; }

size_t gie_model_dim(const gie_model* model) { return model ? model->ckpt.model.dims().dim : 0; }

size_t gie_model_num_entities(const gie_model* model) {
  return model ? model->ckpt.model.dims().num_entities : 0;
}

size_t gie_model_num_relations(const gie_model* model) {
  return model ? model->ckpt.model.dims().num_relations : 0;
}

uint64_t gie_model_seed(const gie_model* model) { return model ? model->ckpt.seed : 0; }

uint64_t gie_model_epoch(const gie_model* model) { return model ? model->ckpt.epoch : 0; }

gie_status gie_model_check_vocab(const gie_model* model, const gie_dataset* dataset) {
  if (model == nullptr) return null_argument("model");
  if (dataset == nullptr) return null_argument("dataset");
  return guarded([&] { gie::check_vocab(model->ckpt, dataset->store); });
}

gie_status gie_model_score(const gie_model* model, uint32_t head, uint32_t relation,
                           uint32_t tail, double* out) {
  if (model == nullptr) return null_argument("model");
  if (out == nullptr) return null_argument("out");
  const auto& dims = model->ckpt.model.dims();
  if (head >= dims.num_entities || tail >= dims.num_entities || relation >= dims.num_relations) {
    return set_error(GIE_ERR_INVALID_ARGUMENT, "id out of range");
  }
  return guarded([&] { *out = model->ckpt.model.score(head, relation, tail); });
}

gie_status gie_evaluate(const gie_model* model, const gie_dataset* dataset, gie_split split,
                        size_t threads, gie_eval_report** out) {
  if (model == nullptr) return null_argument("model");
  if (dataset == nullptr) return null_argument("dataset");
  if (out == nullptr) return null_argument("out");
  if (!valid_split(split)) return set_error(GIE_ERR_INVALID_ARGUMENT, "unknown split");
  return guarded([&] {
    gie::check_vocab(model->ckpt, dataset->store);
    auto r = std::make_unique<gie_eval_report>();
    r->report =
        gie::evaluate(model->ckpt.model, dataset->store, static_cast<gie::Split>(split), threads);
    for (const auto& [rel, row] : r->report.per_relation) {
      r->rows.push_back({rel, row.mrr, row.hits10, row.count});
    }
    *out = r.release();
  });
}

void gie_eval_report_free(gie_eval_report* report) { delete report; }

double gie_eval_report_mrr(const gie_eval_report* report) {
  return report ? report->report.mrr : std::numeric_limits<double>::quiet_NaN();
}

double gie_eval_report_hits(const gie_eval_report* report, int n) {
  if (report == nullptr) return std::numeric_limits<double>::quiet_NaN();
  const auto it = report->report.hits.find(n);
  return it == report->report.hits.end() ? std::numeric_limits<double>::quiet_NaN() : it->second;
}

size_t gie_eval_report_queries(const gie_eval_report* report) {
  return report ? report->report.queries : 0;
}

size_t gie_eval_report_num_relations(const gie_eval_report* report) {
  return report ? report->rows.size() : 0;
}

gie_status gie_eval_report_relation(const gie_eval_report* report, size_t index,
                                    gie_relation_eval* out) {
  if (report == nullptr) return null_argument("report");
  if (out == nullptr) return null_argument("out");
  if (index >= report->rows.size()) return set_error(GIE_ERR_INVALID_ARGUMENT, "index out of range");
  *out = report->rows[index];
  return GIE_OK;
}

gie_status gie_graph_metrics(const gie_dataset* dataset, size_t samples, uint64_t seed,
                             size_t threads, gie_metrics_report** out) {
  if (dataset == nullptr) return null_argument("dataset");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    *out = new gie_metrics_report{gie::graph_metrics(dataset->store, samples, seed, threads)};
  });
}

void gie_metrics_report_free(gie_metrics_report* report) { delete report; }

size_t gie_metrics_report_size(const gie_metrics_report* report) {
  return report ? report->report.relations.size() : 0;
}

gie_status gie_metrics_report_row(const gie_metrics_report* report, size_t index,
                                  gie_relation_metrics* out) {
  if (report == nullptr) return null_argument("report");
  if (out == nullptr) return null_argument("out");
  if (index >= report->report.relations.size()) {
    return set_error(GIE_ERR_INVALID_ARGUMENT, "index out of range");
  }
  const auto& row = report->report.relations[index];
  out->relation = row.relation;
  out->name = row.name.c_str();
  out->edges = row.edges;
  out->khs = row.khs;
  out->has_curvature = row.curvature.has_value() ? 1 : 0;
  out->curvature = row.curvature.value_or(std::numeric_limits<double>::quiet_NaN());
  out->weight = row.weight;
  return GIE_OK;
}

int gie_metrics_report_curvature(const gie_metrics_report* report, double* out) {
  if (report == nullptr || !report->report.curvature) return 0;
  if (out != nullptr) *out = *report->report.curvature;
  return 1;
}

}  // extern "C"
