// Copyright 2026 The synthrank Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
// implied. See the License for the specific language governing
// permissions and limitations under the License.

#pragma once

/// @file
/// Logistic scorer: full-batch gradient descent on binary cross-entropy
/// with early stopping on validation AUPRC. Deterministic by
/// construction (fixed step size, no shuffling).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "synthrank/descriptors.hpp"
#include "synthrank/errors.hpp"
#include "synthrank/metrics.hpp"

namespace synthrank {

/// Probabilities are clamped into [kProbClamp, 1 - kProbClamp] so
/// saturated logits can neither overflow the loss nor return exactly 0/1.
inline constexpr double kProbClamp = 1e-12;

inline double sigmoid(double z) {
    double p = z >= 0 ? 1.0 / (1.0 + std::exp(-z))
                      : std::exp(z) / (1.0 + std::exp(z));
    if (p < kProbClamp) p = kProbClamp;
    if (p > 1.0 - kProbClamp) p = 1.0 - kProbClamp;
    return p;
}

struct LogisticModel {
    std::string schema_id;
    std::vector<std::string> feature_names;
    std::vector<double> weights;
    double bias = 0.0;

    struct TrainingMeta {
        int epochs_run = 0;
        int best_epoch = 0;
        std::vector<double> val_auprc_trace;  // one entry per epoch
        std::vector<double> train_loss_trace;
    } meta;
};

inline double predict(const LogisticModel& model, const DescriptorVector& d) {
    if (model.schema_id != d.schema().id)
        throw ValueError("model schema " + model.schema_id +
                         " does not match descriptor schema " + d.schema().id);
    if (model.weights.size() != d.size())
        throw ValueError("model weight dimension mismatch");
    double z = model.bias;
    for (std::size_t i = 0; i < model.weights.size(); ++i)
        z += model.weights[i] * d.values()[i];
    return sigmoid(z);
}

struct LabeledDescriptors {
    std::vector<DescriptorVector> x;
    std::vector<int> y;
};

struct LogisticTrainConfig {
    double learning_rate = 0.5;
    int max_epochs = 500;
    /// Consecutive validation evaluations without AUPRC improvement
    /// before stopping.
    int patience = 20;
};

namespace detail {

/// Mean BCE loss and its analytic gradient; the finite-difference test
/// checks this function directly.
inline double bce_loss_and_gradient(const std::vector<std::vector<double>>& x,
                                    const std::vector<int>& y,
                                    const std::vector<double>& w, double b,
                                    std::vector<double>* grad_w,
                                    double* grad_b) {
    std::size_t n = x.size();
    std::size_t dim = w.size();
    double loss = 0.0;
    if (grad_w) grad_w->assign(dim, 0.0);
    if (grad_b) *grad_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double z = b;
        for (std::size_t k = 0; k < dim; ++k) z += w[k] * x[i][k];
        double p = sigmoid(z);
        loss += y[i] == 1 ? -std::log(p) : -std::log(1.0 - p);
        double delta = p - double(y[i]);
        if (grad_w)
            for (std::size_t k = 0; k < dim; ++k) (*grad_w)[k] += delta * x[i][k];
        if (grad_b) *grad_b += delta;
    }
    loss /= double(n);
    if (grad_w)
        for (double& g : *grad_w) g /= double(n);
    if (grad_b) *grad_b /= double(n);
    return loss;
}

}  // namespace detail

/// Trains on `train`, evaluating AUPRC on `val` every epoch; stops after
/// `patience` evaluations without improvement and returns the weights of
/// the best-validation epoch.
inline LogisticModel train_logistic(const LabeledDescriptors& train,
                                    const LabeledDescriptors& val,
                                    const LogisticTrainConfig& config = {}) {
    if (train.x.empty() || val.x.empty())
        throw ValueError("train_logistic: empty split");
    if (train.x.size() != train.y.size() || val.x.size() != val.y.size())
        throw ValueError("train_logistic: feature/label length mismatch");
    const DescriptorSchema& schema = train.x.front().schema();
    for (const auto& d : train.x)
        if (d.schema().id != schema.id)
            throw ValueError("train_logistic: mixed descriptor schemas");
    for (const auto& d : val.x)
        if (d.schema().id != schema.id)
            throw ValueError("train_logistic: mixed descriptor schemas");
    bool has_pos = false, has_neg = false;
    for (int y : train.y) {
        if (y == 1) has_pos = true;
        else if (y == 0) has_neg = true;
        else throw ValueError("train_logistic: labels must be 0/1");
    }
    if (!has_pos || !has_neg)
        throw ValueError("train_logistic: training set has a single class");

    std::vector<std::vector<double>> xt;
    xt.reserve(train.x.size());
    for (const auto& d : train.x) xt.push_back(d.values());

    LogisticModel model;
    model.schema_id = schema.id;
    model.feature_names = schema.names;
    model.weights.assign(schema.dimension(), 0.0);

    std::vector<double> best_w = model.weights;
    double best_b = 0.0;
    double best_auprc = -1.0;
    int best_epoch = 0;
    int stale = 0;

    std::vector<double> grad_w;
    double grad_b = 0.0;
    std::vector<double> val_scores(val.x.size());

    int epoch = 0;
    for (; epoch < config.max_epochs; ++epoch) {
        double loss = detail::bce_loss_and_gradient(xt, train.y, model.weights,
                                                    model.bias, &grad_w, &grad_b);
        if (!std::isfinite(loss))
            throw ValueError("train_logistic: non-finite loss");
        model.meta.train_loss_trace.push_back(loss);
        for (std::size_t k = 0; k < model.weights.size(); ++k)
            model.weights[k] -= config.learning_rate * grad_w[k];
        model.bias -= config.learning_rate * grad_b;

        for (std::size_t i = 0; i < val.x.size(); ++i)
            val_scores[i] = predict(model, val.x[i]);
        double score = auprc(val_scores, val.y);
        model.meta.val_auprc_trace.push_back(score);
        if (score > best_auprc) {
            best_auprc = score;
            best_w = model.weights;
            best_b = model.bias;
            best_epoch = epoch + 1;
            stale = 0;
        } else if (++stale >= config.patience) {
            ++epoch;
            break;
        }
    }

    model.weights = std::move(best_w);
    model.bias = best_b;
    model.meta.epochs_run = epoch;
    model.meta.best_epoch = best_epoch;
    return model;
}

/// Versioned line-oriented model file:
///   synthrank-logistic v1
///   schema <id>
///   dim <n>
///   w <feature> <value>   (n lines)
///   bias <value>
inline void save_logistic(const LogisticModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write model file: " + path);
    char buf[64];
    out << "synthrank-logistic v1\n";
    out << "schema " << model.schema_id << "\n";
    out << "dim " << model.weights.size() << "\n";
    for (std::size_t i = 0; i < model.weights.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", model.weights[i]);
        out << "w " << model.feature_names[i] << ' ' << buf << "\n";
    }
    std::snprintf(buf, sizeof buf, "%.17g", model.bias);
    out << "bias " << buf << "\n";
    if (!out) throw IoError("write failure: " + path);
}

inline LogisticModel load_logistic(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open model file: " + path);
    std::string line;
    if (!std::getline(in, line) || line != "synthrank-logistic v1")
        throw ParseError("unrecognized model file header in " + path);
    LogisticModel model;
    std::size_t dim = 0;
    bool have_bias = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "schema") {
            ls >> model.schema_id;
        } else if (key == "dim") {
            ls >> dim;
        } else if (key == "w") {
            std::string name;
            double value;
            if (!(ls >> name >> value))
                throw ParseError("bad weight line in " + path + ": " + line);
            model.feature_names.push_back(name);
            model.weights.push_back(value);
        } else if (key == "bias") {
            if (!(ls >> model.bias))
                throw ParseError("bad bias line in " + path);
            have_bias = true;
        } else {
            throw ParseError("unknown model file key '" + key + "' in " + path);
        }
    }
    if (model.schema_id.empty() || !have_bias || model.weights.size() != dim)
        throw ParseError("incomplete model file: " + path);
    return model;
}

}  // namespace synthrank
