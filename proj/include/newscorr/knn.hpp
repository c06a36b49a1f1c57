#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "newscorr/indicators.hpp"

namespace newscorr {

struct Instance {
    std::vector<double> features;
    Label label = Label::none;
};

/// Ordered instances sharing one feature dimension (matrix row order).
struct Dataset {
    std::vector<Instance> instances;

    std::size_t size() const { return instances.size(); }
    std::size_t dim() const { return instances.empty() ? 0 : instances.front().features.size(); }

    static Dataset from(std::vector<Instance> instances) {
        Dataset d{std::move(instances)};
        for (const auto& inst : d.instances)
            if (inst.features.size() != d.dim())
                throw std::invalid_argument("dataset: inconsistent feature dimensions");
        return d;
    }
};

namespace detail {

inline double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

}  // namespace detail

/// Majority label among the k nearest training instances by Euclidean
/// distance. Deterministic tie rules: equal distances prefer the lower
/// training index; vote ties go to the class of the single nearest neighbor
/// if it is among the tied classes, otherwise class order +1, -1, 0.
inline Label knn_predict(const Dataset& train, const std::vector<double>& query, std::size_t k) {
    if (k == 0) throw std::invalid_argument("knn: k must be >= 1");
    if (train.size() == 0) throw std::invalid_argument("knn: empty training set");
    if (k > train.size()) throw std::invalid_argument("knn: k exceeds training size");
    if (query.size() != train.dim()) throw std::invalid_argument("knn: dimension mismatch");

    std::vector<std::pair<double, std::size_t>> order(train.size());
    for (std::size_t i = 0; i < train.size(); ++i)
        order[i] = {detail::squared_distance(train.instances[i].features, query), i};
    std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k - 1),
                     order.end());
    std::sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));

    std::map<Label, std::size_t> votes;
    for (std::size_t j = 0; j < k; ++j) ++votes[train.instances[order[j].second].label];
    std::size_t best = 0;
    for (const auto& [l, c] : votes) best = std::max(best, c);

    const Label nearest = train.instances[order.front().second].label;
    if (votes[nearest] == best) return nearest;
    for (Label l : {Label::up, Label::down, Label::none})
        if (votes.count(l) && votes[l] == best) return l;
    return nearest;  // unreachable
}

/// k-nearest-class score in [-1,1]: compares the mean distance from x to its
/// k nearest members of the closest existing class against the mean distance
/// to its k nearest outliers. Negative means x sits nearer an existing class;
/// positive means it sits with the outliers. Both neighborhoods coincident
/// with x is defined as 0.
inline double knsc(const std::vector<double>& x,
                   const std::map<Label, std::vector<std::vector<double>>>& classes,
                   const std::vector<std::vector<double>>& outliers, std::size_t k) {
    if (k == 0) throw std::invalid_argument("knsc: k must be >= 1");
    if (classes.empty()) throw std::invalid_argument("knsc: no classes");
    auto mean_knearest = [&](const std::vector<std::vector<double>>& set, const char* what) {
        if (set.size() < k)
            throw std::invalid_argument(std::string("knsc: ") + what +
                                        " set smaller than k");
        std::vector<double> dists(set.size());
        for (std::size_t i = 0; i < set.size(); ++i) {
            if (set[i].size() != x.size())
                throw std::invalid_argument("knsc: dimension mismatch");
            dists[i] = std::sqrt(detail::squared_distance(set[i], x));
        }
        std::nth_element(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(k - 1),
                         dists.end());
        double sum = 0.0;
        for (std::size_t i = 0; i < k; ++i) sum += dists[i];
        return sum / static_cast<double>(k);
    };

    const double d_out = mean_knearest(outliers, "outlier");
    double d_min = 0.0;
    bool first = true;
    for (const auto& [label, members] : classes) {
        const double d = mean_knearest(members, "class");
        if (first || d < d_min) d_min = d;
        first = false;
    }
    const double denom = std::max(d_min, d_out);
    if (denom == 0.0) return 0.0;
    return (d_min - d_out) / denom;
}

/// Ten (by default) contiguous index ranges in instance order; no shuffling.
/// Block b covers [floor(b*n/folds), floor((b+1)*n/folds)).
struct FoldPlan {
    std::vector<std::pair<std::size_t, std::size_t>> ranges;  // [begin, end)

    std::size_t n_instances() const { return ranges.empty() ? 0 : ranges.back().second; }
};

inline FoldPlan make_folds(std::size_t n_instances, std::size_t n_folds = 10) {
    if (n_folds == 0) throw std::invalid_argument("make_folds: need at least one fold");
    if (n_instances < n_folds)
        throw std::invalid_argument("make_folds: fewer instances than folds");
    FoldPlan plan;
    plan.ranges.reserve(n_folds);
    for (std::size_t b = 0; b < n_folds; ++b)
        plan.ranges.emplace_back(b * n_instances / n_folds, (b + 1) * n_instances / n_folds);
    return plan;
}

/// Circular cross-validation: each fold is held out once and predicted by a
/// model trained on the remaining folds, so every instance is tested exactly
/// once and never trains its own prediction. Output order matches instance
/// order.
inline std::vector<Label> cross_validate(const Dataset& data, std::size_t k,
                                         const FoldPlan& plan) {
    if (plan.n_instances() != data.size())
        throw std::invalid_argument("cross_validate: fold plan does not cover dataset");
    std::vector<Label> predictions(data.size(), Label::none);
    for (const auto& [begin, end] : plan.ranges) {
        Dataset train;
        train.instances.reserve(data.size() - (end - begin));
        for (std::size_t i = 0; i < data.size(); ++i)
            if (i < begin || i >= end) train.instances.push_back(data.instances[i]);
        for (std::size_t i = begin; i < end; ++i)
            predictions[i] = knn_predict(train, data.instances[i].features, k);
    }
    return predictions;
}

}  // namespace newscorr
