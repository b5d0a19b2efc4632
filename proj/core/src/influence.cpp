#include "bids/influence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>

#include "bids/error.hpp"

namespace bids {
namespace {

std::vector<double> squared_norms(const FeatureMatrix& features) {
  std::vector<double> norms(features.rows());
  for (std::size_t i = 0; i < features.rows(); ++i) {
    double s = 0.0;
    for (const double x : features.row(i)) s += x * x;
    norms[i] = s;
  }
  return norms;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

// cos = <u,w> / sqrt(|u|^2 |w|^2). For u == w this is exactly 1: sqrt of the
// rounded square of s returns s. Falls back to the product of roots if the
// squared-norm product leaves the normal range.
double cosine(double inner, double norm_sq_a, double norm_sq_b) {
  if (norm_sq_a == 0.0 || norm_sq_b == 0.0) return 0.0;
  double denom = std::sqrt(norm_sq_a * norm_sq_b);
  if (!std::isnormal(denom)) denom = std::sqrt(norm_sq_a) * std::sqrt(norm_sq_b);
  return std::clamp(inner / denom, -1.0, 1.0);
}

// out[i*n_val + j] += weight * cos(train[i], val[j])
void accumulate_cosines(const FeatureMatrix& train, const FeatureMatrix& val, double weight,
                        std::vector<double>& out) {
  const auto train_norms = squared_norms(train);
  const auto val_norms = squared_norms(val);
  const std::size_t n_val = val.rows();
  tbb::parallel_for(tbb::blocked_range<std::size_t>(0, train.rows()),
                    [&](const tbb::blocked_range<std::size_t>& range) {
                      for (std::size_t i = range.begin(); i != range.end(); ++i) {
                        const auto t = train.row(i);
                        for (std::size_t j = 0; j < n_val; ++j) {
                          const double c =
                              cosine(dot(t, val.row(j)), train_norms[i], val_norms[j]);
                          out[i * n_val + j] += weight * c;
                        }
                      }
                    });
}

}  // namespace

void validate_features(const GradientFeatureSet& features) {
  const std::size_t epochs = features.learning_rates.size();
  if (epochs == 0) throw ValidationError("feature set needs at least one epoch");
  if (features.train_features.size() != epochs || features.val_features.size() != epochs) {
    throw DimensionError("feature set lists " + std::to_string(epochs) +
                         " learning rates but " +
                         std::to_string(features.train_features.size()) + " train and " +
                         std::to_string(features.val_features.size()) + " val matrices");
  }
  for (std::size_t t = 0; t < epochs; ++t) {
    if (!std::isfinite(features.learning_rates[t])) {
      throw ValidationError("non-finite learning rate for epoch " + std::to_string(t));
    }
  }
  const auto& train0 = features.train_features.front();
  const auto& val0 = features.val_features.front();
  if (train0.cols() != val0.cols()) {
    throw DimensionError("epoch 0: train dim " + std::to_string(train0.cols()) +
                         " != val dim " + std::to_string(val0.cols()));
  }
  for (std::size_t t = 1; t < epochs; ++t) {
    const auto& train = features.train_features[t];
    const auto& val = features.val_features[t];
    if (train.rows() != train0.rows() || train.cols() != train0.cols() ||
        val.rows() != val0.rows() || val.cols() != val0.cols()) {
      throw DimensionError("epoch " + std::to_string(t) + ": shapes " +
                           std::to_string(train.rows()) + "x" + std::to_string(train.cols()) +
                           " / " + std::to_string(val.rows()) + "x" +
                           std::to_string(val.cols()) + " differ from epoch 0");
    }
  }
}

AttributionMatrix adam_influence(const GradientFeatureSet& features) {
  validate_features(features);
  const std::size_t n_train = features.train_features.front().rows();
  const std::size_t n_val = features.val_features.front().rows();
  std::vector<double> values(n_train * n_val, 0.0);
  for (std::size_t t = 0; t < features.epochs(); ++t) {
    accumulate_cosines(features.train_features[t], features.val_features[t],
                       features.learning_rates[t], values);
  }
  return AttributionMatrix(n_train, n_val, std::move(values),
                           features.train_features.front().row_ids(),
                           features.val_features.front().row_ids());
}

AttributionMatrix cosine_similarity_matrix(const FeatureMatrix& train_reprs,
                                           const FeatureMatrix& val_reprs) {
  if (train_reprs.cols() != val_reprs.cols()) {
    throw DimensionError("train dim " + std::to_string(train_reprs.cols()) + " != val dim " +
                         std::to_string(val_reprs.cols()));
  }
  std::vector<double> values(train_reprs.rows() * val_reprs.rows(), 0.0);
  accumulate_cosines(train_reprs, val_reprs, 1.0, values);
  return AttributionMatrix(train_reprs.rows(), val_reprs.rows(), std::move(values),
                           train_reprs.row_ids(), val_reprs.row_ids());
}

}  // namespace bids
