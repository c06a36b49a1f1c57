#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "newscorr/config.hpp"
#include "newscorr/corpus_io.hpp"
#include "newscorr/error.hpp"
#include "newscorr/features.hpp"
#include "newscorr/knn.hpp"
#include "newscorr/metrics.hpp"
#include "newscorr/methods.hpp"
#include "newscorr/prices.hpp"

namespace newscorr {

namespace detail {

inline std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::ifstream open_input(const std::string& path, const char* what) {
    if (path.empty()) throw UsageError(std::string(what) + " path not set");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(std::string("cannot open ") + what + " file: " + path);
    return in;
}

inline void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write output file: " + path.string());
    out << contents;
}

}  // namespace detail

inline PriceSeries load_prices_file(const std::string& path) {
    auto in = detail::open_input(path, "prices");
    return load_prices_csv(in);
}

inline CorpusLoadResult load_corpus_file(const std::string& path) {
    auto in = detail::open_input(path, "corpus");
    return load_corpus_jsonl(in);
}

inline std::set<std::string> load_stopwords_file(const std::string& path, CaseFold fold) {
    if (path.empty()) return {};
    auto in = detail::open_input(path, "stopwords");
    return load_stopwords(in, fold);
}

// --- indicator CSV emission ---------------------------------------------------

/// `date,value` rows, warm-up dates omitted; the plot-data interface.
inline std::string indicator_csv(const IndicatorSeries& series) {
    std::string out = "date,value\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        out += series.dates[i].to_string();
        out += ',';
        out += detail::format_value(series.values[i]);
        out += '\n';
    }
    return out;
}

// --- evaluate -----------------------------------------------------------------

struct MethodRun {
    MethodSpec spec;
    bool failed = false;
    std::string error;
    EvalReport report;
    std::vector<std::string> doc_ids;
    std::vector<Label> truths;
    std::vector<Label> predictions;
    std::vector<std::string> selected_terms;
    bool term_shortfall = false;
};

struct EvalOutcome {
    std::size_t n_documents = 0;
    std::size_t n_prices = 0;
    std::size_t vocabulary_size = 0;
    std::vector<MethodRun> runs;
};

inline Dataset dataset_from(const FeatureMatrix& matrix, const std::vector<Label>& labels) {
    Dataset data;
    data.instances.reserve(matrix.n_rows());
    for (std::size_t r = 0; r < matrix.n_rows(); ++r)
        data.instances.push_back(Instance{matrix.dense_row(r), labels[r]});
    return data;
}

/// Runs the full per-method pipeline for every configured method: label
/// extraction, gain-ranked feature selection, circular cross-validation, and
/// the report row. Tokenization, vocabulary, and TF-IDF state are shared
/// across methods; a failing method yields a diagnostic row and the others
/// proceed. Sequential and seed-free, so two runs on one config are
/// byte-identical.
inline EvalOutcome run_evaluate(const RunConfig& cfg) {
    const PriceSeries prices = load_prices_file(cfg.prices_path);
    const CorpusLoadResult corpus = load_corpus_file(cfg.corpus_path);
    if (corpus.documents.empty()) throw DataError("corpus: no valid documents");
    const auto stopwords = load_stopwords_file(cfg.stopwords_path, cfg.case_fold);

    std::vector<TokenizedDocument> tokenized;
    tokenized.reserve(corpus.documents.size());
    for (const auto& doc : corpus.documents)
        tokenized.push_back(preprocess(doc, stopwords, cfg.case_fold));
    const TextModel model = build_text_model(std::move(tokenized), cfg.min_count);

    EvalOutcome outcome;
    outcome.n_documents = model.docs.size();
    outcome.n_prices = prices.size();
    outcome.vocabulary_size = model.vocab.size();

    for (const auto& spec : cfg.methods) {
        MethodRun run;
        run.spec = spec;
        try {
            const Labeler labeler = make_labeler(spec, prices, cfg.label_lag);
            ExtractResult extracted = extract_features(model, labeler, cfg.top_k);
            run.selected_terms = extracted.matrix.terms;
            run.term_shortfall = extracted.matrix.shortfall;
            run.doc_ids = extracted.matrix.doc_ids;
            run.truths = extracted.labels;

            const Dataset data = dataset_from(extracted.matrix, extracted.labels);
            const FoldPlan plan = make_folds(data.size(), cfg.folds);
            run.predictions = cross_validate(data, cfg.knn_k, plan);

            run.report = build_report(spec.name, spec.params_echo(), run.truths,
                                      run.predictions, cfg.rmse_variant);
            run.report.knn_k = cfg.knn_k;
        } catch (const std::exception& e) {
            run.failed = true;
            run.error = e.what();
        }
        outcome.runs.push_back(std::move(run));
    }
    return outcome;
}

inline nlohmann::json report_json(const MethodRun& run) {
    nlohmann::json j;
    j["method"] = run.spec.name;
    j["params"] = run.spec.params_echo();
    if (run.failed) {
        j["error"] = run.error;
        return j;
    }
    const EvalReport& r = run.report;
    j["n_instances"] = r.n_instances;
    j["knn_k"] = r.knn_k;
    j["rmse_variant"] = r.rmse_variant == RmseVariant::as_printed ? "printed" : "standard";
    j["f_measure_avg"] = r.f_measure_avg;
    j["rmse"] = r.rmse;
    j["rae"] = r.rae;
    j["rrse"] = r.rrse;
    j["accuracy_pct"] = r.accuracy_pct;
    j["confusion"]["classes"] = {"+1", "-1", "0"};
    for (std::size_t t = 0; t < 3; ++t)
        for (std::size_t p = 0; p < 3; ++p)
            j["confusion"]["counts"][t][p] = r.confusion.counts[t][p];
    j["majority_label_share"] = r.majority_label_share;
    j["degenerate_labels"] = r.degenerate_labels;
    j["selected_terms"] = run.selected_terms.size();
    j["term_shortfall"] = run.term_shortfall;
    return j;
}

inline std::string reports_json(const EvalOutcome& outcome) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& run : outcome.runs) arr.push_back(report_json(run));
    return arr.dump(2) + "\n";
}

/// Aligned plain-text comparison table, one row per method.
inline std::string reports_table(const EvalOutcome& outcome) {
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%-20s %-18s %9s %9s %9s %9s  %s\n", "Method",
                  "f-measure Average", "RMSE", "RAE", "RRSE", "Correct", "Notes");
    out += buf;
    out += std::string(96, '-') + "\n";
    for (const auto& run : outcome.runs) {
        if (run.failed) {
            std::snprintf(buf, sizeof(buf), "%-20s ERROR: %s\n", run.spec.name.c_str(),
                          run.error.c_str());
            out += buf;
            continue;
        }
        const EvalReport& r = run.report;
        std::string notes;
        if (r.degenerate_labels) notes = "degenerate label distribution";
        if (run.term_shortfall)
            notes += notes.empty() ? "term shortfall" : "; term shortfall";
        std::snprintf(buf, sizeof(buf), "%-20s %18.4f %9.4f %9.4f %9.4f %8.2f%%  %s\n",
                      run.spec.name.c_str(), r.f_measure_avg, r.rmse, r.rae, r.rrse,
                      r.accuracy_pct, notes.c_str());
        out += buf;
    }
    return out;
}

inline std::string predictions_csv(const MethodRun& run) {
    std::string out = "doc_id,true_label,predicted_label\n";
    for (std::size_t i = 0; i < run.doc_ids.size(); ++i) {
        out += run.doc_ids[i];
        out += ',';
        out += std::to_string(label_code(run.truths[i]));
        out += ',';
        out += std::to_string(label_code(run.predictions[i]));
        out += '\n';
    }
    return out;
}

/// Writes report.json, report.txt, and per-method prediction CSVs under
/// `out_dir`. Returns the list of paths written (config order).
inline std::vector<std::filesystem::path> write_evaluate_outputs(const EvalOutcome& outcome,
                                                                 const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::vector<fs::path> written;
    const fs::path base(out_dir);
    detail::write_file(base / "report.json", reports_json(outcome));
    written.push_back(base / "report.json");
    detail::write_file(base / "report.txt", reports_table(outcome));
    written.push_back(base / "report.txt");
    for (const auto& run : outcome.runs) {
        if (run.failed) continue;
        const fs::path p = base / ("predictions_" + run.spec.name + ".csv");
        detail::write_file(p, predictions_csv(run));
        written.push_back(p);
    }
    return written;
}

// --- features export ----------------------------------------------------------

inline std::string features_triplets_csv(const FeatureMatrix& m) {
    std::string out = "doc_id,term,value\n";
    for (std::size_t r = 0; r < m.n_rows(); ++r) {
        for (const auto& [c, v] : m.rows[r]) {
            out += m.doc_ids[r];
            out += ',';
            out += m.terms[c];
            out += ',';
            out += detail::format_value(v);
            out += '\n';
        }
    }
    return out;
}

inline std::string labels_csv(const FeatureMatrix& m, const std::vector<Label>& labels) {
    std::string out = "doc_id,label\n";
    for (std::size_t r = 0; r < m.n_rows(); ++r) {
        out += m.doc_ids[r];
        out += ',';
        out += std::to_string(label_code(labels[r]));
        out += '\n';
    }
    return out;
}

inline std::string terms_list(const FeatureMatrix& m) {
    std::string out;
    for (const auto& t : m.terms) {
        out += t;
        out += '\n';
    }
    return out;
}

// --- ingest -------------------------------------------------------------------

struct IngestSummary {
    std::size_t n_prices = 0;
    Date prices_first, prices_last;
    std::size_t n_documents = 0;
    std::size_t n_rejected = 0;
    std::vector<std::pair<std::size_t, std::string>> rejects;
    Date corpus_first, corpus_last;
    std::size_t n_authors = 0;
    double texts_per_author_mean = 0.0;
    double texts_per_author_stddev = 0.0;
    double avg_word_length = 0.0;  // codepoints per token after preprocessing
    std::size_t vocabulary_size = 0;
    std::int64_t min_count = 30;
};

/// Parses and validates both inputs and reports corpus statistics. Rejected
/// corpus lines are collected with line numbers; only a corpus with zero
/// valid documents (or an unreadable price file) is a hard failure.
inline IngestSummary run_ingest(const RunConfig& cfg) {
    IngestSummary s;
    const PriceSeries prices = load_prices_file(cfg.prices_path);
    s.n_prices = prices.size();
    s.prices_first = prices.first_date();
    s.prices_last = prices.last_date();

    const CorpusLoadResult corpus = load_corpus_file(cfg.corpus_path);
    s.n_rejected = corpus.rejects.size();
    s.rejects = corpus.rejects;
    if (corpus.documents.empty()) throw DataError("corpus: no valid documents");
    s.n_documents = corpus.documents.size();

    std::map<std::string, std::size_t> per_author;
    Date lo = corpus.documents.front().date, hi = lo;
    for (const auto& d : corpus.documents) {
        ++per_author[d.author];
        lo = std::min(lo, d.date);
        hi = std::max(hi, d.date);
    }
    s.corpus_first = lo;
    s.corpus_last = hi;
    s.n_authors = per_author.size();
    double mean = 0.0;
    for (const auto& [a, c] : per_author) mean += static_cast<double>(c);
    mean /= static_cast<double>(per_author.size());
    double var = 0.0;
    for (const auto& [a, c] : per_author) {
        const double d = static_cast<double>(c) - mean;
        var += d * d;
    }
    s.texts_per_author_mean = mean;
    s.texts_per_author_stddev = std::sqrt(var / static_cast<double>(per_author.size()));

    const auto stopwords = load_stopwords_file(cfg.stopwords_path, cfg.case_fold);
    std::vector<TokenizedDocument> tokenized;
    tokenized.reserve(corpus.documents.size());
    std::size_t n_tokens = 0, total_len = 0;
    for (const auto& doc : corpus.documents) {
        tokenized.push_back(preprocess(doc, stopwords, cfg.case_fold));
        for (const auto& tok : tokenized.back().tokens) {
            ++n_tokens;
            total_len += utf8::length(tok);
        }
    }
    s.avg_word_length =
        n_tokens == 0 ? 0.0 : static_cast<double>(total_len) / static_cast<double>(n_tokens);
    s.min_count = cfg.min_count;
    s.vocabulary_size = build_vocabulary(tokenized, cfg.min_count).size();
    return s;
}

inline std::string render_ingest_summary(const IngestSummary& s) {
    std::ostringstream out;
    out << "Prices\n";
    out << "  # of Closings        " << s.n_prices << "\n";
    out << "  Date Span            " << s.prices_first.to_string() << " .. "
        << s.prices_last.to_string() << "\n";
    out << "News\n";
    out << "  # of News            " << s.n_documents << "\n";
    out << "  Rejected Lines       " << s.n_rejected << "\n";
    out << "  Date Span            " << s.corpus_first.to_string() << " .. "
        << s.corpus_last.to_string() << "\n";
    out << "  Authors              " << s.n_authors << "\n";
    char buf[96];
    std::snprintf(buf, sizeof(buf), "  Texts per Author     Mean : %.2f  Stddev : %.2f\n",
                  s.texts_per_author_mean, s.texts_per_author_stddev);
    out << buf;
    std::snprintf(buf, sizeof(buf), "  Average Word Length  %.2f\n", s.avg_word_length);
    out << buf;
    out << "  Vocabulary (count > " << s.min_count << ")  " << s.vocabulary_size << "\n";
    for (const auto& [line, why] : s.rejects)
        out << "  rejected line " << line << ": " << why << "\n";
    return out.str();
}

}  // namespace newscorr
