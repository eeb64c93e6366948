// Copyright 2026 The phontypo Authors.
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

#ifndef PHONTYPO_LOGISTIC_H_
#define PHONTYPO_LOGISTIC_H_

#include <span>
#include <string>
#include <vector>

namespace phontypo {

struct Instance {
  std::vector<double> input;
  int label = 0;  // 1 iff the target feature is '+' on the source segment
  std::string language;
  std::string glyph;
};

struct TrainingHyper {
  double learning_rate = 0.5;
  int epochs = 500;
  double l2 = 0.0;
};

struct Classifier {
  std::vector<double> weights;
  double bias = 0.0;
  int epochs_run = 0;
  double final_loss = 0.0;

  double Probability(std::span<const double> input) const;
  // Decision threshold 0.5.
  int Predict(std::span<const double> input) const;
};

// Mean log loss plus (l2 / 2) * |w|^2; the bias is not regularized.
double LogisticLoss(const std::vector<Instance>& data,
                    std::span<const double> weights, double bias, double l2);

// Analytic gradient of LogisticLoss. `grad_weights` is resized to match.
void LogisticGradient(const std::vector<Instance>& data,
                      std::span<const double> weights, double bias, double l2,
                      std::vector<double>& grad_weights, double& grad_bias);

// Full-batch gradient descent from zero initialization. The data are visited
// in a canonical order, so any permutation of `data` yields a bit-identical
// model. Throws EmptyDatasetError, DegenerateDataError (one class only) or
// DimensionError (ragged inputs).
Classifier TrainClassifier(const std::vector<Instance>& data,
                           const TrainingHyper& hyper);

double Accuracy(const Classifier& model, const std::vector<Instance>& data);

}  // namespace phontypo

#endif  // PHONTYPO_LOGISTIC_H_
