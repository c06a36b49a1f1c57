#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "newscorr/error.hpp"
#include "newscorr/metrics.hpp"
#include "newscorr/methods.hpp"
#include "newscorr/text.hpp"

namespace newscorr {

/// Everything a pipeline run needs. Defaults carry the canonical constants:
/// vocabulary threshold 30, top 300 features, 10 folds, k = 5 neighbors.
struct RunConfig {
    std::string prices_path;
    std::string corpus_path;
    std::string stopwords_path;  // optional
    std::string out_dir = ".";

    std::int64_t min_count = 30;
    std::size_t top_k = 300;
    std::size_t knn_k = 5;
    std::size_t folds = 10;
    long label_lag = 0;
    RmseVariant rmse_variant = RmseVariant::as_printed;
    CaseFold case_fold = CaseFold::simple;
    std::uint64_t seed = 42;

    std::vector<MethodSpec> methods = default_methods();
};

namespace detail {

inline std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t comma = s.find(',', start);
        if (comma == std::string::npos) comma = s.size();
        std::string item = strip(s.substr(start, comma - start));
        if (!item.empty()) out.push_back(std::move(item));
        start = comma + 1;
    }
    return out;
}

template <typename T>
T parse_integer(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return static_cast<T>(v);
    } catch (const std::exception&) {
        throw UsageError("config: bad integer for '" + key + "': '" + value + "'");
    }
}

inline double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw UsageError("config: bad number for '" + key + "': '" + value + "'");
    }
}

inline void apply_param(IndicatorParams& p, const std::string& key, const std::string& value) {
    if (key == "n") p.n = parse_integer<std::size_t>(key, value);
    else if (key == "short") p.short_window = parse_integer<std::size_t>(key, value);
    else if (key == "long") p.long_window = parse_integer<std::size_t>(key, value);
    else if (key == "signal_n") p.signal_window = parse_integer<std::size_t>(key, value);
    else if (key == "alpha") p.alpha = parse_real(key, value);
    else if (key == "k") p.band_k = parse_real(key, value);
    else if (key == "period") p.period = parse_integer<std::size_t>(key, value);
    else if (key == "walk_length") p.walk_length = parse_integer<std::size_t>(key, value);
    else throw UsageError("config: unknown method parameter '" + key + "'");
}

}  // namespace detail

/// Plain `key = value` file with one `[section]` per method instance.
/// Top-level keys: prices, corpus, stopwords, out_dir, min_count, top_k,
/// knn_k, folds, label_lag, rmse (printed|standard), locale (simple|tr),
/// seed, methods (comma list). Method sections accept n, short, long,
/// signal_n, alpha, K, period, walk_length, and `kind` when the section name
/// is not itself a method kind. '#' and ';' start comments.
inline RunConfig parse_config(std::istream& in) {
    RunConfig cfg;
    std::map<std::string, std::map<std::string, std::string>> sections;
    std::map<std::string, std::string> top;
    std::vector<std::string> method_names;
    bool methods_given = false;

    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto cut = line.find_first_of("#;");
        if (cut != std::string::npos) line.erase(cut);
        std::string t = detail::strip(line);
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw UsageError("config line " + std::to_string(lineno) + ": unterminated section");
            section = detail::strip(t.substr(1, t.size() - 2));
            if (section.empty())
                throw UsageError("config line " + std::to_string(lineno) + ": empty section name");
            sections[section];
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = detail::strip(t.substr(0, eq));
        std::string value = detail::strip(t.substr(eq + 1));
        for (auto& c : key)
            if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        if (key.empty())
            throw UsageError("config line " + std::to_string(lineno) + ": empty key");
        if (section.empty()) top[key] = value;
        else sections[section][key] = value;
    }

    for (const auto& [key, value] : top) {
        if (key == "prices") cfg.prices_path = value;
        else if (key == "corpus") cfg.corpus_path = value;
        else if (key == "stopwords") cfg.stopwords_path = value;
        else if (key == "out_dir") cfg.out_dir = value;
        else if (key == "min_count") cfg.min_count = detail::parse_integer<std::int64_t>(key, value);
        else if (key == "top_k") cfg.top_k = detail::parse_integer<std::size_t>(key, value);
        else if (key == "knn_k") cfg.knn_k = detail::parse_integer<std::size_t>(key, value);
        else if (key == "folds") cfg.folds = detail::parse_integer<std::size_t>(key, value);
        else if (key == "label_lag") cfg.label_lag = detail::parse_integer<long>(key, value);
        else if (key == "seed") cfg.seed = detail::parse_integer<std::uint64_t>(key, value);
        else if (key == "rmse") {
            if (value == "printed") cfg.rmse_variant = RmseVariant::as_printed;
            else if (value == "standard") cfg.rmse_variant = RmseVariant::standard;
            else throw UsageError("config: rmse must be 'printed' or 'standard'");
        } else if (key == "locale") {
            if (value == "simple") cfg.case_fold = CaseFold::simple;
            else if (value == "tr") cfg.case_fold = CaseFold::turkish;
            else throw UsageError("config: locale must be 'simple' or 'tr'");
        } else if (key == "methods") {
            method_names = detail::split_list(value);
            methods_given = true;
            if (method_names.empty()) throw UsageError("config: empty methods list");
        } else {
            throw UsageError("config: unknown key '" + key + "'");
        }
    }

    if (!methods_given) {
        // Default rows, but let a section override a default row's params.
        for (auto& spec : cfg.methods) {
            auto it = sections.find(spec.name);
            if (it == sections.end()) continue;
            for (const auto& [k, v] : it->second) {
                if (k == "kind") continue;
                detail::apply_param(spec.params, k, v);
            }
        }
        return cfg;
    }

    cfg.methods.clear();
    for (const auto& name : method_names) {
        MethodSpec spec;
        const auto sec = sections.find(name);
        std::optional<std::string> kind_override;
        if (sec != sections.end()) {
            auto k = sec->second.find("kind");
            if (k != sec->second.end()) kind_override = k->second;
        }
        if (kind_override) {
            auto kind = parse_method_kind(*kind_override);
            if (!kind)
                throw UsageError("config: unknown method kind '" + *kind_override +
                                 "' (valid: " + method_kind_names() + ")");
            spec.kind = *kind;
            spec.params = default_params_for(*kind);
        } else {
            auto builtin = builtin_method(name);
            if (!builtin)
                throw UsageError("config: unknown method '" + name + "' (valid: " +
                                 method_kind_names() + "; give [" + name +
                                 "] a 'kind' to define a custom instance)");
            spec = *builtin;
        }
        spec.name = name;
        if (sec != sections.end()) {
            for (const auto& [k, v] : sec->second) {
                if (k == "kind") continue;
                detail::apply_param(spec.params, k, v);
            }
        }
        cfg.methods.push_back(std::move(spec));
    }
    return cfg;
}

}  // namespace newscorr
