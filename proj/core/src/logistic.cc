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

#include "phontypo/logistic.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "phontypo/error.h"

namespace phontypo {

namespace {

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
double Softplus(double z) {
  return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void CheckShape(const std::vector<Instance>& data, std::size_t width) {
  for (const auto& inst : data) {
    if (inst.input.size() != width) {
      throw DimensionError("instance input has length " +
                           std::to_string(inst.input.size()) + ", expected " +
                           std::to_string(width));
    }
  }
}

}  // namespace

double Classifier::Probability(std::span<const double> input) const {
  if (input.size() != weights.size()) {
    throw DimensionError("classifier expects " + std::to_string(weights.size()) +
                         " inputs, got " + std::to_string(input.size()));
  }
  return Sigmoid(Dot(weights, input) + bias);
}

int Classifier::Predict(std::span<const double> input) const {
  return Probability(input) >= 0.5 ? 1 : 0;
}

double LogisticLoss(const std::vector<Instance>& data,
                    std::span<const double> weights, double bias, double l2) {
  CheckShape(data, weights.size());
  double loss = 0.0;
  for (const auto& inst : data) {
    const double z = Dot(weights, inst.input) + bias;
    loss += Softplus(z) - inst.label * z;
  }
  loss /= static_cast<double>(data.size());
  double norm = 0.0;
  for (double w : weights) norm += w * w;
  return loss + 0.5 * l2 * norm;
}

void LogisticGradient(const std::vector<Instance>& data,
                      std::span<const double> weights, double bias, double l2,
                      std::vector<double>& grad_weights, double& grad_bias) {
  CheckShape(data, weights.size());
  grad_weights.assign(weights.size(), 0.0);
  grad_bias = 0.0;
  for (const auto& inst : data) {
    const double residual = Sigmoid(Dot(weights, inst.input) + bias) - inst.label;
    for (std::size_t j = 0; j < weights.size(); ++j) {
      grad_weights[j] += residual * inst.input[j];
    }
    grad_bias += residual;
  }
  const double n = static_cast<double>(data.size());
  for (std::size_t j = 0; j < weights.size(); ++j) {
    grad_weights[j] = grad_weights[j] / n + l2 * weights[j];
  }
  grad_bias /= n;
}

Classifier TrainClassifier(const std::vector<Instance>& data,
                           const TrainingHyper& hyper) {
  if (data.empty()) throw EmptyDatasetError("no training instances");
  if (hyper.epochs < 0 || !(hyper.learning_rate > 0) || hyper.l2 < 0) {
    throw UsageError("invalid training hyperparameters");
  }
  const std::size_t width = data.front().input.size();
  CheckShape(data, width);
  const auto positives = std::count_if(data.begin(), data.end(),
                                       [](const Instance& i) { return i.label == 1; });
  if (positives == 0 || positives == static_cast<long>(data.size())) {
    throw DegenerateDataError("training data contain a single class (" +
                              std::to_string(positives) + " positive of " +
                              std::to_string(data.size()) + ")");
  }

  // Canonical order makes floating-point sums independent of input order.
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Instance& x = data[a];
    const Instance& y = data[b];
    if (x.input != y.input) return x.input < y.input;
    if (x.label != y.label) return x.label < y.label;
    if (x.language != y.language) return x.language < y.language;
    return x.glyph < y.glyph;
  });
  std::vector<Instance> sorted;
  sorted.reserve(data.size());
  for (std::size_t i : order) sorted.push_back(data[i]);

  Classifier model;
  model.weights.assign(width, 0.0);
  std::vector<double> grad;
  double grad_bias = 0.0;
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    LogisticGradient(sorted, model.weights, model.bias, hyper.l2, grad, grad_bias);
    for (std::size_t j = 0; j < width; ++j) {
      model.weights[j] -= hyper.learning_rate * grad[j];
    }
    model.bias -= hyper.learning_rate * grad_bias;
    model.epochs_run = epoch + 1;
  }
  model.final_loss = LogisticLoss(sorted, model.weights, model.bias, hyper.l2);
  return model;
}

double Accuracy(const Classifier& model, const std::vector<Instance>& data) {
  if (data.empty()) throw EmptyDatasetError("no instances to score");
  std::size_t correct = 0;
  for (const auto& inst : data) {
    if (model.Predict(inst.input) == inst.label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

}  // namespace phontypo
