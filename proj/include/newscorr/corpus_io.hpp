#pragma once

#include <istream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "newscorr/error.hpp"
#include "newscorr/text.hpp"

namespace newscorr {

struct CorpusLoadResult {
    std::vector<NewsDocument> documents;
    // (line number, reason) for every rejected line
    std::vector<std::pair<std::size_t, std::string>> rejects;
};

/// Reads a JSON-lines corpus: one object per line with string fields `id`,
/// `date` (ISO-8601), `author`, `body`. Malformed lines are collected, not
/// fatal; callers decide whether zero accepted documents is a hard failure.
/// Duplicate ids are rejected to keep the corpus invariant.
inline CorpusLoadResult load_corpus_jsonl(std::istream& in) {
    CorpusLoadResult result;
    std::set<std::string> seen_ids;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (lineno == 1 && line.size() >= 3 && line.substr(0, 3) == "\xEF\xBB\xBF")
            line.erase(0, 3);
        if (line.find_first_not_of(" \t") == std::string::npos) continue;

        auto reject = [&](std::string why) { result.rejects.emplace_back(lineno, std::move(why)); };

        nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
        if (obj.is_discarded() || !obj.is_object()) {
            reject("not a JSON object");
            continue;
        }
        const char* required[] = {"id", "date", "author", "body"};
        bool ok = true;
        for (const char* f : required) {
            if (!obj.contains(f) || !obj[f].is_string()) {
                reject(std::string("missing or non-string field '") + f + "'");
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        auto date = parse_date(obj["date"].get<std::string>());
        if (!date) {
            reject("unparseable date '" + obj["date"].get<std::string>() + "'");
            continue;
        }
        std::string id = obj["id"].get<std::string>();
        if (id.empty()) {
            reject("empty id");
            continue;
        }
        if (!seen_ids.insert(id).second) {
            reject("duplicate id '" + id + "'");
            continue;
        }
        result.documents.push_back(NewsDocument{std::move(id), *date,
                                                obj["author"].get<std::string>(),
                                                obj["body"].get<std::string>()});
    }
    return result;
}

inline void write_corpus_jsonl(std::ostream& out, const std::vector<NewsDocument>& docs) {
    for (const auto& d : docs) {
        nlohmann::json obj;
        obj["id"] = d.id;
        obj["date"] = d.date.to_string();
        obj["author"] = d.author;
        obj["body"] = d.body;
        out << obj.dump() << '\n';
    }
}

}  // namespace newscorr
