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

#include "gie/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "gie/error.hpp"
#include "gie/eval.hpp"

namespace gie {

void TrainConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) fail(ErrorCode::kInvalidConfig, what);
  };
  require(dim > 0 && dim % 2 == 0, "dim must be positive and even");
  require(learning_rate > 0.0 && std::isfinite(learning_rate), "learning rate must be positive");
  require(batch_size > 0, "batch size must be positive");
  require(negatives > 0, "negatives per positive must be positive");
  require(epochs > 0, "epochs must be positive");
  require(patience > 0 && patience <= epochs, "patience must be in [1, epochs]");
  require(threads > 0, "threads must be positive");
}

ModelDims model_dims(const TripleStore& store, const TrainConfig& cfg) {
  return {store.num_entities(), store.num_relations(), cfg.dim, cfg.interaction};
}

TrainResult train(GieModel& model, const TripleStore& store, const TrainConfig& cfg,
                  const EpochCallback& on_epoch) {
  cfg.validate();
  const auto positives = store.split(Split::kTrain);
  if (positives.empty()) fail(ErrorCode::kInvalidArgument, "training split is empty");
  if (model.dims().num_entities != store.num_entities() ||
      model.dims().num_relations != store.num_relations()) {
    fail(ErrorCode::kVocabMismatch, "model and dataset vocabularies differ");
  }
  const bool has_valid = !store.split(Split::kValid).empty();

  std::mt19937_64 rng(cfg.seed ^ 0x5DEECE66DULL);
  std::vector<std::size_t> order(positives.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  Gradient grad = Parameters::zeros(model.dims());
  std::vector<LabelledTriple> batch;
  batch.reserve(cfg.batch_size * (cfg.negatives + 1));

  TrainResult result;
  Parameters best = model.params();
  std::size_t since_best = 0;

  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double loss_sum = 0.0;
    std::size_t items = 0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t stop = std::min(order.size(), start + cfg.batch_size);
      batch.clear();
      for (std::size_t i = start; i < stop; ++i) {
        const Triple& pos = positives[order[i]];
        batch.push_back({pos, 1});
        for (const auto& neg : negative_sample(pos, cfg.negatives, store.num_entities(), rng)) {
          batch.push_back({neg, -1});
        }
      }
      grad.fill(0.0);
      double batch_loss = 0.0;
      try {
        batch_loss = loss_and_gradient(model, batch, grad, cfg.threads);
      } catch (const Error& e) {
        // Parameters are the only input here, so numerical failures mean
        // the optimizer has left the finite range.
        if (e.code() != ErrorCode::kGradientNonFinite && e.code() != ErrorCode::kNumericalDegeneracy &&
            e.code() != ErrorCode::kPointOutsideManifold) {
          throw;
        }
        throw TrainingDiverged(epoch, "training diverged at epoch " + std::to_string(epoch) +
                                          ": " + e.what());
      }
      if (!std::isfinite(batch_loss)) {
        throw TrainingDiverged(epoch, "training diverged at epoch " + std::to_string(epoch) +
                                          ": non-finite loss");
      }
      auto& params = model.params();
      for (auto g : kAllParamGroups) {
        auto& p = params.group(g);
        const auto& dp = grad.group(g);
        for (std::size_t i = 0; i < p.size(); ++i) p[i] -= cfg.learning_rate * dp[i];
      }
      model.clamp_curvatures();
      loss_sum += batch_loss * static_cast<double>(batch.size());
      items += batch.size();
    }

    EpochMetrics m;
    m.epoch = epoch;
    m.train_loss = loss_sum / static_cast<double>(items);
    if (has_valid) m.valid_mrr = evaluate(model, store, Split::kValid, cfg.threads).mrr;
    result.history.push_back(m);
    if (on_epoch) on_epoch(m);

    if (!has_valid) {
      result.best_epoch = epoch;
      continue;
    }
    if (result.best_epoch == 0 || m.valid_mrr > result.best_valid_mrr) {
      result.best_epoch = epoch;
      result.best_valid_mrr = m.valid_mrr;
      best = model.params();
      since_best = 0;
    } else if (++since_best >= cfg.patience) {
      break;
    }
  }
  if (has_valid) model.params() = best;
  return result;
}

}  // namespace gie
