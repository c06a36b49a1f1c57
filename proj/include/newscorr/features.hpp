#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "newscorr/indicators.hpp"
#include "newscorr/text.hpp"

namespace newscorr {

/// Shannon entropy of a label multiset, in bits.
inline double entropy(const std::vector<Label>& labels) {
    if (labels.empty()) throw std::invalid_argument("entropy: empty label multiset");
    std::map<Label, std::size_t> counts;
    for (Label l : labels) ++counts[l];
    const double n = static_cast<double>(labels.size());
    double h = 0.0;
    for (const auto& [l, c] : counts) {
        const double p = static_cast<double>(c) / n;
        h -= p * std::log2(p);
    }
    return h;
}

/// Information gain of a binary presence feature against the labels:
/// H(labels) minus the presence-weighted entropies of the two branches.
inline double information_gain(const std::vector<bool>& presence,
                               const std::vector<Label>& labels) {
    if (presence.size() != labels.size())
        throw std::invalid_argument("information_gain: feature/label length mismatch");
    if (labels.empty()) throw std::invalid_argument("information_gain: empty input");
    std::vector<Label> present, absent;
    for (std::size_t i = 0; i < labels.size(); ++i)
        (presence[i] ? present : absent).push_back(labels[i]);
    const double n = static_cast<double>(labels.size());
    double cond = 0.0;
    if (!present.empty()) cond += (present.size() / n) * entropy(present);
    if (!absent.empty()) cond += (absent.size() / n) * entropy(absent);
    return entropy(labels) - cond;
}

struct Selection {
    std::vector<std::string> terms;  // descending score; lexicographic on ties
    bool shortfall = false;          // fewer terms were available than requested
};

/// Keeps the k highest-scoring terms. Deterministic: ties break toward the
/// lexicographically smaller term. Fewer than k candidates returns them all
/// with the shortfall flagged.
inline Selection select_top_k(const std::map<std::string, double>& scores, std::size_t k) {
    if (k == 0) throw std::invalid_argument("select_top_k: k must be >= 1");
    std::vector<std::pair<std::string, double>> ranked(scores.begin(), scores.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    Selection sel;
    sel.shortfall = ranked.size() < k;
    const std::size_t take = std::min(k, ranked.size());
    sel.terms.reserve(take);
    for (std::size_t i = 0; i < take; ++i) sel.terms.push_back(std::move(ranked[i].first));
    return sel;
}

/// Sparse document-by-term TF-IDF matrix. Rows follow corpus date order
/// (stable by id within a date); only strictly positive values are stored, so
/// a missing entry reads as zero.
struct FeatureMatrix {
    std::vector<std::string> doc_ids;
    std::vector<std::string> terms;
    std::vector<std::vector<std::pair<std::size_t, double>>> rows;  // (column, value > 0)
    bool shortfall = false;

    std::size_t n_rows() const { return doc_ids.size(); }
    std::size_t n_cols() const { return terms.size(); }

    std::vector<double> dense_row(std::size_t r) const {
        std::vector<double> out(terms.size(), 0.0);
        for (const auto& [c, v] : rows[r]) out[c] = v;
        return out;
    }
};

using LabelVector = std::vector<Label>;

/// Shared per-corpus state: tokenized documents in row order, the pruned
/// vocabulary, and per-term postings. Built once and reused across methods —
/// only the labels (and therefore the gain ranking) change per method.
struct TextModel {
    std::vector<TokenizedDocument> docs;  // sorted by (date, id)
    Vocabulary vocab;
    // term -> (doc row, in-doc count), rows ascending
    std::map<std::string, std::vector<std::pair<std::size_t, std::int64_t>>> postings;
    std::vector<std::int64_t> doc_max_count;  // max word count per doc (0 when empty)

    std::size_t corpus_size() const { return docs.size(); }
};

inline TextModel build_text_model(std::vector<TokenizedDocument> docs, std::int64_t min_count) {
    TextModel model;
    std::stable_sort(docs.begin(), docs.end(), [](const auto& a, const auto& b) {
        if (a.date != b.date) return a.date < b.date;
        return a.id < b.id;
    });
    model.docs = std::move(docs);
    model.vocab = build_vocabulary(model.docs, min_count);
    model.doc_max_count.resize(model.docs.size(), 0);
    for (std::size_t row = 0; row < model.docs.size(); ++row) {
        std::map<std::string, std::int64_t> local;
        for (const auto& tok : model.docs[row].tokens) ++local[tok];
        for (const auto& [term, c] : local) {
            model.doc_max_count[row] = std::max(model.doc_max_count[row], c);
            if (model.vocab.contains(term)) model.postings[term].emplace_back(row, c);
        }
    }
    return model;
}

/// Labeling callback: document date -> class label.
using Labeler = std::function<Label(Date)>;

struct ExtractResult {
    FeatureMatrix matrix;
    LabelVector labels;
    std::map<std::string, double> gains;  // per-term information gain
};

/// Core of the two-vector extraction: scores every vocabulary term by
/// information gain against the per-document labels, keeps the top k, and
/// fills the matrix with TF-IDF values of the kept terms.
inline ExtractResult extract_features(const TextModel& model, const Labeler& label_of,
                                      std::size_t top_k) {
    if (model.docs.empty()) throw std::invalid_argument("extract_features: empty corpus");
    const std::size_t n_docs = model.docs.size();

    ExtractResult result;
    result.labels.reserve(n_docs);
    for (const auto& doc : model.docs) result.labels.push_back(label_of(doc.date));

    std::vector<bool> presence(n_docs);
    for (const auto& [term, posting] : model.postings) {
        std::fill(presence.begin(), presence.end(), false);
        for (const auto& [row, c] : posting) presence[row] = true;
        result.gains.emplace(term, information_gain(presence, result.labels));
    }

    Selection sel = select_top_k(result.gains, top_k);

    FeatureMatrix& m = result.matrix;
    m.shortfall = sel.shortfall;
    m.terms = sel.terms;
    m.doc_ids.reserve(n_docs);
    for (const auto& doc : model.docs) m.doc_ids.push_back(doc.id);
    m.rows.resize(n_docs);
    // Column-major fill in ascending column order keeps each row sorted.
    for (std::size_t col = 0; col < m.terms.size(); ++col) {
        const std::string& term = m.terms[col];
        const double idf =
            inverse_document_frequency(term, model.vocab, model.corpus_size());
        for (const auto& [row, count] : model.postings.at(term)) {
            const double tf =
                static_cast<double>(count) / static_cast<double>(model.doc_max_count[row]);
            const double v = tf * idf;
            if (v > 0.0) m.rows[row].emplace_back(col, v);
        }
    }
    return result;
}

/// Convenience wrapper matching the one-shot contract: tokenized corpus in,
/// vocabulary built here with `min_count`, labels taken from the callback.
inline ExtractResult extract_features(const std::vector<TokenizedDocument>& corpus,
                                      const Labeler& label_of, std::int64_t min_count = 30,
                                      std::size_t top_k = 300) {
    return extract_features(build_text_model(corpus, min_count), label_of, top_k);
}

}  // namespace newscorr
