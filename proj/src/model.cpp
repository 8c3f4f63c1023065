#include "readmet/model.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "readmet/errors.hpp"

namespace readmet {

namespace {

// log(1 + exp(x)) without overflow; exact enough for finite-difference checks.
double softplus(double x) {
    if (x > 35.0) return x;
    if (x < -35.0) return std::exp(x);
    return std::log1p(std::exp(x));
}

void require(bool ok, const std::string& message) {
    if (!ok) throw ModelError(message);
}

}  // namespace

bool label(const RatedSnippet& snippet, double cutoff) {
    if (snippet.ratings.empty())
        throw InputError("snippet '" + snippet.snippet_id + "' has no ratings");
    double mean = std::accumulate(snippet.ratings.begin(), snippet.ratings.end(), 0.0) /
                  static_cast<double>(snippet.ratings.size());
    return mean >= cutoff;
}

std::vector<double> standardize(const FeatureVector& features, const ModelSpec& spec) {
    std::vector<double> z;
    z.reserve(spec.feature_names.size());
    for (size_t i = 0; i < spec.feature_names.size(); ++i) {
        const std::string& name = spec.feature_names[i];
        if (!features.has(name)) {
            throw ModelError("model '" + spec.model_name + "' requires feature '" + name +
                             "', which is missing from the input");
        }
        z.push_back((features.get(name) - spec.means[i]) / spec.stds[i]);
    }
    return z;
}

double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    double e = std::exp(x);
    return e / (1.0 + e);
}

double score(const FeatureVector& features, const ModelSpec& spec) {
    std::vector<double> z = standardize(features, spec);
    double t = spec.bias;
    for (size_t i = 0; i < z.size(); ++i) t += spec.weights[i] * z[i];
    return sigmoid(t);
}

bool classify(double score_value, const ModelSpec& spec) {
    return score_value >= spec.score_threshold;
}

double logistic_loss(const std::vector<std::vector<double>>& X, const std::vector<int>& y,
                     const std::vector<double>& w, double bias, double l2_lambda) {
    double loss = 0.0;
    for (size_t r = 0; r < X.size(); ++r) {
        double t = bias;
        for (size_t i = 0; i < w.size(); ++i) t += w[i] * X[r][i];
        loss += y[r] == 1 ? softplus(-t) : softplus(t);
    }
    loss /= static_cast<double>(X.size());
    double reg = 0.0;
    for (double wi : w) reg += wi * wi;
    return loss + 0.5 * l2_lambda * reg;
}

void logistic_gradient(const std::vector<std::vector<double>>& X, const std::vector<int>& y,
                       const std::vector<double>& w, double bias, double l2_lambda,
                       std::vector<double>& grad_w, double& grad_bias) {
    std::fill(grad_w.begin(), grad_w.end(), 0.0);
    grad_bias = 0.0;
    for (size_t r = 0; r < X.size(); ++r) {
        double t = bias;
        for (size_t i = 0; i < w.size(); ++i) t += w[i] * X[r][i];
        double err = sigmoid(t) - static_cast<double>(y[r]);
        for (size_t i = 0; i < w.size(); ++i) grad_w[i] += err * X[r][i];
        grad_bias += err;
    }
    double m = static_cast<double>(X.size());
    for (size_t i = 0; i < w.size(); ++i) grad_w[i] = grad_w[i] / m + l2_lambda * w[i];
    grad_bias /= m;
}

TrainResult train(const std::vector<TrainSample>& data, const TrainConfig& config,
                  const std::string& model_name, double label_cutoff) {
    if (data.empty()) throw InputError("training data is empty");
    bool any_pos = false, any_neg = false;
    for (const TrainSample& s : data) (s.readable ? any_pos : any_neg) = true;
    if (!any_pos || !any_neg)
        throw ModelError("degenerate labels: training data contains a single class");

    std::vector<std::string> names;
    for (const auto& [name, _] : data[0].features.values) names.push_back(name);
    for (const TrainSample& s : data) {
        for (const std::string& name : names) {
            if (!s.features.has(name))
                throw InputError("training sample '" + s.features.method +
                                 "' is missing feature '" + name + "'");
        }
    }

    TrainResult result;
    double m = static_cast<double>(data.size());
    std::vector<std::string> kept;
    std::vector<double> means, stds;
    for (const std::string& name : names) {
        double mean = 0.0;
        for (const TrainSample& s : data) mean += s.features.get(name);
        mean /= m;
        double var = 0.0;
        for (const TrainSample& s : data) {
            double d = s.features.get(name) - mean;
            var += d * d;
        }
        double sd = data.size() > 1 ? std::sqrt(var / (m - 1.0)) : 0.0;
        if (sd == 0.0) {
            result.warnings.push_back("dropping zero-variance feature '" + name + "'");
            continue;
        }
        kept.push_back(name);
        means.push_back(mean);
        stds.push_back(sd);
    }
    if (kept.empty()) throw ModelError("no usable features: all have zero variance");

    std::vector<std::vector<double>> X(data.size(), std::vector<double>(kept.size()));
    std::vector<int> y(data.size());
    for (size_t r = 0; r < data.size(); ++r) {
        for (size_t i = 0; i < kept.size(); ++i) {
            X[r][i] = (data[r].features.get(kept[i]) - means[i]) / stds[i];
        }
        y[r] = data[r].readable ? 1 : 0;
    }

    std::vector<double> w(kept.size(), 0.0);
    double bias = 0.0;
    result.initial_loss = logistic_loss(X, y, w, bias, config.l2_lambda);
    std::vector<double> grad_w(w.size());
    double grad_bias = 0.0;
    for (int it = 0; it < config.iterations; ++it) {
        logistic_gradient(X, y, w, bias, config.l2_lambda, grad_w, grad_bias);
        for (size_t i = 0; i < w.size(); ++i) w[i] -= config.learning_rate * grad_w[i];
        bias -= config.learning_rate * grad_bias;
    }
    result.final_loss = logistic_loss(X, y, w, bias, config.l2_lambda);
    if (result.final_loss > result.initial_loss) {
        result.warnings.push_back("training diverged: final loss exceeds initial loss");
    }

    int correct = 0;
    for (size_t r = 0; r < data.size(); ++r) {
        double t = bias;
        for (size_t i = 0; i < w.size(); ++i) t += w[i] * X[r][i];
        if ((sigmoid(t) >= 0.5 ? 1 : 0) == y[r]) ++correct;
    }
    result.training_accuracy = static_cast<double>(correct) / m;

    result.model.model_name = model_name;
    result.model.feature_names = kept;
    result.model.means = means;
    result.model.stds = stds;
    result.model.weights = w;
    result.model.bias = bias;
    result.model.label_cutoff = label_cutoff;
    return result;
}

PosnettInputs posnett_inputs(const MethodUnit& method) {
    PosnettInputs p;
    p.loc = static_cast<double>(method.line_span());
    p.entropy = token_entropy(method);
    p.volume = halstead_volume(method);
    return p;
}

ModelSpec model_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ModelError(std::string("invalid model JSON: ") + e.what());
    }
    ModelSpec spec;
    try {
        spec.version = j.at("version").get<std::string>();
        spec.model_name = j.at("model_name").get<std::string>();
        spec.feature_names = j.at("feature_names").get<std::vector<std::string>>();
        spec.means = j.at("means").get<std::vector<double>>();
        spec.stds = j.at("stds").get<std::vector<double>>();
        spec.weights = j.at("weights").get<std::vector<double>>();
        spec.bias = j.at("bias").get<double>();
        spec.label_cutoff = j.at("label_cutoff").get<double>();
        spec.score_threshold = j.at("score_threshold").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw ModelError(std::string("invalid model JSON: ") + e.what());
    }
    size_t n = spec.feature_names.size();
    require(spec.means.size() == n && spec.stds.size() == n && spec.weights.size() == n,
            "invalid model JSON: feature_names, means, stds, and weights differ in length");
    for (double sd : spec.stds) require(sd > 0.0, "invalid model JSON: stds must be positive");
    require(spec.score_threshold >= 0.0 && spec.score_threshold <= 1.0,
            "invalid model JSON: score_threshold must lie in [0, 1]");
    return spec;
}

std::string model_to_json(const ModelSpec& spec) {
    nlohmann::json j;
    j["version"] = spec.version;
    j["model_name"] = spec.model_name;
    j["feature_names"] = spec.feature_names;
    j["means"] = spec.means;
    j["stds"] = spec.stds;
    j["weights"] = spec.weights;
    j["bias"] = spec.bias;
    j["label_cutoff"] = spec.label_cutoff;
    j["score_threshold"] = spec.score_threshold;
    return j.dump(2) + "\n";
}

ModelSpec load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModelError("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return model_from_json(buf.str());
}

void save_model(const ModelSpec& spec, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write model file: " + path);
    out << model_to_json(spec);
}

}  // namespace readmet
