#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "newscorr/indicators.hpp"

namespace newscorr {

/// 3x3 count grid over the classes in fixed order +1, -1, 0, indexed
/// (true class, predicted class).
struct ConfusionMatrix {
    static constexpr std::array<Label, 3> classes{Label::up, Label::down, Label::none};

    std::array<std::array<std::int64_t, 3>, 3> counts{};

    static std::size_t class_index(Label l) {
        switch (l) {
            case Label::up: return 0;
            case Label::down: return 1;
            default: return 2;
        }
    }

    static ConfusionMatrix from(const std::vector<Label>& truths,
                                const std::vector<Label>& predictions) {
        if (truths.size() != predictions.size())
            throw std::invalid_argument("confusion matrix: length mismatch");
        ConfusionMatrix m;
        for (std::size_t i = 0; i < truths.size(); ++i)
            ++m.counts[class_index(truths[i])][class_index(predictions[i])];
        return m;
    }

    std::int64_t total() const {
        std::int64_t t = 0;
        for (const auto& row : counts)
            for (auto c : row) t += c;
        return t;
    }

    std::int64_t trace() const { return counts[0][0] + counts[1][1] + counts[2][2]; }
};

enum class RmseVariant {
    as_printed,  // sqrt(sum of squares) / n
    standard,    // sqrt(mean of squares)
};

/// Root mean square error over per-instance prediction errors. The default
/// places the divisor outside the root (sqrt(sum)/n); the standard form is
/// sqrt(sum/n). The two differ by exactly sqrt(n).
inline double rmse(const std::vector<double>& errors,
                   RmseVariant variant = RmseVariant::as_printed) {
    if (errors.empty()) throw std::invalid_argument("rmse: empty error list");
    double ss = 0.0;
    for (double e : errors) ss += e * e;
    const double n = static_cast<double>(errors.size());
    return variant == RmseVariant::as_printed ? std::sqrt(ss) / n : std::sqrt(ss / n);
}

/// Root relative squared error: residual sum of squares relative to the
/// mean-predictor baseline. A constant target has no baseline spread.
inline double rrse(const std::vector<double>& pred, const std::vector<double>& target) {
    if (pred.size() != target.size() || pred.empty())
        throw std::invalid_argument("rrse: need equal non-empty lists");
    double mean = 0.0;
    for (double t : target) mean += t;
    mean /= static_cast<double>(target.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double r = pred[i] - target[i];
        num += r * r;
        const double d = target[i] - mean;
        den += d * d;
    }
    if (den == 0.0) throw std::domain_error("rrse: constant target (degenerate denominator)");
    return std::sqrt(num / den);
}

/// Relative absolute error, same baseline as rrse but in absolute deviations.
inline double rae(const std::vector<double>& pred, const std::vector<double>& target) {
    if (pred.size() != target.size() || pred.empty())
        throw std::invalid_argument("rae: need equal non-empty lists");
    double mean = 0.0;
    for (double t : target) mean += t;
    mean /= static_cast<double>(target.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        num += std::abs(pred[i] - target[i]);
        den += std::abs(target[i] - mean);
    }
    if (den == 0.0) throw std::domain_error("rae: constant target (degenerate denominator)");
    return num / den;
}

/// Unweighted mean of the per-class one-vs-rest F scores,
/// F = 2TP / (2TP + FN + FP). A class with an empty denominator contributes 0
/// so averages stay comparable across degenerate label distributions.
inline double f_measure_avg(const ConfusionMatrix& m) {
    if (m.total() == 0) throw std::invalid_argument("f_measure_avg: empty confusion matrix");
    double sum = 0.0;
    for (std::size_t c = 0; c < 3; ++c) {
        const double tp = static_cast<double>(m.counts[c][c]);
        double fp = 0.0, fn = 0.0;
        for (std::size_t o = 0; o < 3; ++o) {
            if (o == c) continue;
            fp += static_cast<double>(m.counts[o][c]);
            fn += static_cast<double>(m.counts[c][o]);
        }
        const double denom = 2.0 * tp + fn + fp;
        sum += denom == 0.0 ? 0.0 : 2.0 * tp / denom;
    }
    return sum / 3.0;
}

/// Percentage of correctly classified instances.
inline double accuracy(const ConfusionMatrix& m) {
    const auto total = m.total();
    if (total == 0) throw std::invalid_argument("accuracy: empty confusion matrix");
    return 100.0 * static_cast<double>(m.trace()) / static_cast<double>(total);
}

/// One report row per method: the error metrics computed on numeric class
/// codes {+1,-1,0} plus the success metrics from the confusion matrix.
struct EvalReport {
    std::string method;
    std::string params;  // human-readable parameter echo
    std::size_t n_instances = 0;
    std::size_t knn_k = 0;
    RmseVariant rmse_variant = RmseVariant::as_printed;
    double f_measure_avg = 0.0;
    double rmse = 0.0;
    double rae = 0.0;
    double rrse = 0.0;
    double accuracy_pct = 0.0;
    ConfusionMatrix confusion;
    // Share of the most common true label; >= 0.9 marks the label
    // distribution as degenerate (the acceleration pathology).
    double majority_label_share = 0.0;
    bool degenerate_labels = false;
};

inline EvalReport build_report(const std::string& method, const std::string& params,
                               const std::vector<Label>& truths,
                               const std::vector<Label>& predictions,
                               RmseVariant variant = RmseVariant::as_printed) {
    if (truths.size() != predictions.size())
        throw std::invalid_argument("build_report: length mismatch");
    if (truths.empty()) throw std::invalid_argument("build_report: no instances");

    EvalReport r;
    r.method = method;
    r.params = params;
    r.n_instances = truths.size();
    r.rmse_variant = variant;
    r.confusion = ConfusionMatrix::from(truths, predictions);

    std::vector<double> err(truths.size()), pred(truths.size()), target(truths.size());
    for (std::size_t i = 0; i < truths.size(); ++i) {
        pred[i] = static_cast<double>(label_code(predictions[i]));
        target[i] = static_cast<double>(label_code(truths[i]));
        err[i] = pred[i] - target[i];
    }
    r.rmse = rmse(err, variant);
    r.rae = rae(pred, target);
    r.rrse = rrse(pred, target);
    r.f_measure_avg = f_measure_avg(r.confusion);
    r.accuracy_pct = accuracy(r.confusion);

    std::int64_t majority = 0;
    for (std::size_t c = 0; c < 3; ++c) {
        std::int64_t row = r.confusion.counts[c][0] + r.confusion.counts[c][1] +
                           r.confusion.counts[c][2];
        majority = std::max(majority, row);
    }
    r.majority_label_share = static_cast<double>(majority) / static_cast<double>(truths.size());
    r.degenerate_labels = r.majority_label_share >= 0.9;
    return r;
}

}  // namespace newscorr
