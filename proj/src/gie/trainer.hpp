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

#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "gie/model.hpp"

namespace gie {

// Defaults reproduce the bundled synthetic-KG run.
struct TrainConfig {
  std::size_t dim = 16;
  double learning_rate = 0.05;
  std::size_t batch_size = 1;
  std::size_t negatives = 10;
  std::size_t epochs = 300;
  std::size_t patience = 300;
  std::uint64_t seed = 20260101;
  std::size_t threads = 1;
  Geometry interaction = Geometry::kHyperbolic;

  // Throws InvalidConfig.
  void validate() const;
};

struct EpochMetrics {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double valid_mrr = std::numeric_limits<double>::quiet_NaN();  // NaN without a valid split
};

struct TrainResult {
  std::vector<EpochMetrics> history;
  std::size_t best_epoch = 0;
  double best_valid_mrr = std::numeric_limits<double>::quiet_NaN();
};

using EpochCallback = std::function<void(const EpochMetrics&)>;

ModelDims model_dims(const TripleStore& store, const TrainConfig& cfg);

// Minibatch SGD over shuffled augmented training triples with k tail-corrupted
// negatives per positive. When the store has a validation split the
// parameters with the best validation MRR are restored at the end and
// training stops after `patience` epochs without improvement.
// Throws TrainingDiverged on a non-finite loss or gradient.
TrainResult train(GieModel& model, const TripleStore& store, const TrainConfig& cfg,
                  const EpochCallback& on_epoch = {});

}  // namespace gie
