#pragma once

#include <string>
#include <vector>

#include "readmet/complexity.hpp"
#include "readmet/features.hpp"

namespace readmet {

// A trained logistic readability model with its standardization parameters.
// Scores are sigmoid(w . z + b) over z-standardized features.
struct ModelSpec {
    std::string version = "1";
    std::string model_name;
    std::vector<std::string> feature_names;
    std::vector<double> means;
    std::vector<double> stds;  // strictly positive
    std::vector<double> weights;
    double bias = 0.0;
    double label_cutoff = 3.14;     // mean rating at/above which a snippet is readable
    double score_threshold = 0.5;   // classify() boundary, inclusive
};

struct RatedSnippet {
    std::string snippet_id;
    std::vector<double> ratings;
    FeatureVector features;
};

// Mean rating >= cutoff (inclusive). Throws InputError when ratings is empty.
bool label(const RatedSnippet& snippet, double cutoff);

// Feature values in spec order, z-standardized. Throws ModelError naming the
// first missing feature.
std::vector<double> standardize(const FeatureVector& features, const ModelSpec& spec);

double sigmoid(double x);

double score(const FeatureVector& features, const ModelSpec& spec);

// score >= threshold, inclusive.
bool classify(double score_value, const ModelSpec& spec);

struct TrainConfig {
    double learning_rate = 0.1;
    int iterations = 5000;
    double l2_lambda = 0.01;
    unsigned seed = 0;  // recorded for reproducibility; training is deterministic
};

struct TrainResult {
    ModelSpec model;
    double initial_loss = 0.0;
    double final_loss = 0.0;
    double training_accuracy = 0.0;
    std::vector<std::string> warnings;
};

struct TrainSample {
    FeatureVector features;
    bool readable = false;
};

// Full-batch gradient descent on L2-regularized mean log-loss (bias is not
// regularized). Standardization parameters come from the training data and
// are stored in the returned model. Zero-variance features are dropped with
// a warning; single-class data raises ModelError("degenerate labels ...").
TrainResult train(const std::vector<TrainSample>& data, const TrainConfig& config,
                  const std::string& model_name, double label_cutoff);

// Mean log-loss + (lambda/2)*|w|^2 over rows of X (already standardized).
double logistic_loss(const std::vector<std::vector<double>>& X, const std::vector<int>& y,
                     const std::vector<double>& w, double bias, double l2_lambda);

// Analytic gradient of logistic_loss; grad_w must be sized like w.
void logistic_gradient(const std::vector<std::vector<double>>& X, const std::vector<int>& y,
                       const std::vector<double>& w, double bias, double l2_lambda,
                       std::vector<double>& grad_w, double& grad_bias);

// The size/entropy/volume triple used by simple readability fits.
struct PosnettInputs {
    double loc = 0.0;
    double entropy = 0.0;
    double volume = 0.0;
};

PosnettInputs posnett_inputs(const MethodUnit& method);

ModelSpec model_from_json(const std::string& text);
std::string model_to_json(const ModelSpec& spec);
ModelSpec load_model(const std::string& path);
void save_model(const ModelSpec& spec, const std::string& path);

}  // namespace readmet
