#pragma once

#include <cstddef>
#include <vector>

#include "bids/matrix.hpp"

namespace bids {

// Per-epoch projected features from a warmup run. train_features[t] holds the
// Adam update features of the training examples at checkpoint t,
// val_features[t] the SGD gradient features of the validation examples.
struct GradientFeatureSet {
  std::vector<FeatureMatrix> train_features;
  std::vector<FeatureMatrix> val_features;
  std::vector<double> learning_rates;  // average learning rate per epoch

  std::size_t epochs() const noexcept { return learning_rates.size(); }
};

// Throws ValidationError/DimensionError unless every epoch has the same
// n_train, n_val and projection dimension, and the learning rates are finite.
void validate_features(const GradientFeatureSet& features);

// A_ij = sum_t lr_t * cos(val_t[j], train_t[i]). A zero-norm vector
// contributes 0 for that epoch.
AttributionMatrix adam_influence(const GradientFeatureSet& features);

// S_ij = cos(train[i], val[j]); zero-norm rows give 0.
AttributionMatrix cosine_similarity_matrix(const FeatureMatrix& train_reprs,
                                           const FeatureMatrix& val_reprs);

}  // namespace bids
