#pragma once

#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "newscorr/date.hpp"

namespace newscorr {

struct NewsDocument {
    std::string id;
    Date date;
    std::string author;
    std::string body;  // raw text, may contain markup
};

struct TokenizedDocument {
    std::string id;
    Date date;
    std::vector<std::string> tokens;  // lowercase, letters only; may be empty
};

/// Case folding mode. `turkish` applies the dotted/dotless I rule
/// (I -> ı, İ -> i); `simple` maps both capitals to plain i.
enum class CaseFold { simple, turkish };

// --- UTF-8 helpers -----------------------------------------------------------

namespace utf8 {

// Decodes one codepoint starting at s[i]; advances i past it. Malformed bytes
// decode as U+FFFD and advance by one byte.
inline char32_t decode(std::string_view s, std::size_t& i) {
    const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
    const unsigned char b0 = byte(i);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    auto cont = [&](std::size_t k) {
        return k < s.size() && (byte(k) & 0xC0) == 0x80;
    };
    if ((b0 & 0xE0) == 0xC0 && cont(i + 1)) {
        char32_t cp = (char32_t(b0 & 0x1F) << 6) | (byte(i + 1) & 0x3F);
        i += 2;
        return cp >= 0x80 ? cp : 0xFFFD;
    }
    if ((b0 & 0xF0) == 0xE0 && cont(i + 1) && cont(i + 2)) {
        char32_t cp = (char32_t(b0 & 0x0F) << 12) | (char32_t(byte(i + 1) & 0x3F) << 6) |
                      (byte(i + 2) & 0x3F);
        i += 3;
        return cp >= 0x800 ? cp : 0xFFFD;
    }
    if ((b0 & 0xF8) == 0xF0 && cont(i + 1) && cont(i + 2) && cont(i + 3)) {
        char32_t cp = (char32_t(b0 & 0x07) << 18) | (char32_t(byte(i + 1) & 0x3F) << 12) |
                      (char32_t(byte(i + 2) & 0x3F) << 6) | (byte(i + 3) & 0x3F);
        i += 4;
        return cp >= 0x10000 && cp <= 0x10FFFF ? cp : 0xFFFD;
    }
    ++i;
    return 0xFFFD;
}

inline void encode(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

inline std::size_t length(std::string_view s) {
    std::size_t i = 0, n = 0;
    while (i < s.size()) {
        decode(s, i);
        ++n;
    }
    return n;
}

}  // namespace utf8

namespace detail {

// Letter classification covers ASCII plus the Latin-1 / Extended-A /
// Extended-B blocks (enough for Turkish text). Everything else splits tokens.
inline bool is_letter(char32_t cp) {
    if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) return true;
    if (cp >= 0xC0 && cp <= 0xFF) return cp != 0xD7 && cp != 0xF7;  // × ÷
    return cp >= 0x100 && cp <= 0x24F;
}

inline char32_t fold_codepoint(char32_t cp, CaseFold mode) {
    if (cp >= 'A' && cp <= 'Z') {
        if (mode == CaseFold::turkish && cp == 'I') return 0x131;  // ı
        return cp + 0x20;
    }
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;  // Latin-1 capitals
    if (cp == 0x130) return 'i';                                   // İ
    if (cp == 0x131) return cp;                                    // ı already lowercase
    if (cp >= 0x100 && cp <= 0x137) return (cp % 2 == 0) ? cp + 1 : cp;
    if (cp >= 0x139 && cp <= 0x148) return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp >= 0x14A && cp <= 0x177) return (cp % 2 == 0) ? cp + 1 : cp;
    if (cp == 0x178) return 0xFF;  // Ÿ -> ÿ
    if (cp >= 0x179 && cp <= 0x17E) return (cp % 2 == 1) ? cp + 1 : cp;
    return cp;
}

}  // namespace detail

/// Lowercases a UTF-8 string with the folding rules used by preprocess.
inline std::string fold_case(std::string_view s, CaseFold mode = CaseFold::simple) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) utf8::encode(detail::fold_codepoint(utf8::decode(s, i), mode), out);
    return out;
}

/// Strips markup (anything between '<' and '>', replaced by a separator so
/// adjacent words do not merge), lowercases, splits on non-letter codepoints,
/// and drops stopwords. Stopwords are matched against the folded form, so the
/// set should be folded too (load_stopwords does that). An all-markup body
/// yields an empty token list, which is legal.
inline std::vector<std::string> tokenize(std::string_view body,
                                         const std::set<std::string>& stopwords,
                                         CaseFold mode = CaseFold::simple) {
    std::vector<std::string> tokens;
    std::string current;
    bool in_tag = false;
    auto flush = [&] {
        if (!current.empty()) {
            if (!stopwords.count(current)) tokens.push_back(current);
            current.clear();
        }
    };
    std::size_t i = 0;
    while (i < body.size()) {
        const char32_t cp = utf8::decode(body, i);
        if (in_tag) {
            if (cp == '>') in_tag = false;  // unclosed '<' eats the rest
            continue;
        }
        if (cp == '<') {
            in_tag = true;
            flush();
            continue;
        }
        if (detail::is_letter(cp)) {
            utf8::encode(detail::fold_codepoint(cp, mode), current);
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

inline TokenizedDocument preprocess(const NewsDocument& doc, const std::set<std::string>& stopwords,
                                    CaseFold mode = CaseFold::simple) {
    return TokenizedDocument{doc.id, doc.date, tokenize(doc.body, stopwords, mode)};
}

/// One term per line; blank lines skipped; terms folded so they match tokens.
inline std::set<std::string> load_stopwords(std::istream& in, CaseFold mode = CaseFold::simple) {
    std::set<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n' || line.back() == ' ' ||
                                 line.back() == '\t'))
            line.pop_back();
        std::size_t b = line.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        out.insert(fold_case(std::string_view(line).substr(b), mode));
    }
    return out;
}

// --- Term weighting ----------------------------------------------------------

struct VocabEntry {
    std::int64_t corpus_count = 0;  // total occurrences across the corpus
    std::int64_t doc_freq = 0;      // number of documents containing the term
};

/// Pruned term statistics. Only terms whose corpus-wide occurrence count is
/// strictly greater than `min_count` survive, which also guarantees
/// doc_freq >= 1 for every known term (no zero divisor in the IDF).
struct Vocabulary {
    std::map<std::string, VocabEntry> entries;
    std::int64_t min_count = 30;

    bool contains(const std::string& term) const { return entries.count(term) != 0; }
    std::size_t size() const { return entries.size(); }
};

inline Vocabulary build_vocabulary(const std::vector<TokenizedDocument>& corpus,
                                   std::int64_t min_count = 30) {
    if (min_count < 0) throw std::invalid_argument("min_count must be >= 0");
    std::map<std::string, VocabEntry> counts;
    for (const auto& doc : corpus) {
        std::map<std::string, std::int64_t> local;
        for (const auto& tok : doc.tokens) ++local[tok];
        for (const auto& [term, c] : local) {
            auto& e = counts[term];
            e.corpus_count += c;
            e.doc_freq += 1;
        }
    }
    Vocabulary vocab;
    vocab.min_count = min_count;
    for (auto& [term, e] : counts)
        if (e.corpus_count > min_count) vocab.entries.emplace(term, e);
    return vocab;
}

/// Raw count of `term` in the document's token list.
inline std::int64_t term_count(const std::string& term, const TokenizedDocument& doc) {
    std::int64_t c = 0;
    for (const auto& tok : doc.tokens)
        if (tok == term) ++c;
    return c;
}

/// Max-normalized term frequency: count(term) over the count of the most
/// frequent word in the document. Empty documents have no maximum.
inline double term_frequency(const std::string& term, const TokenizedDocument& doc) {
    if (doc.tokens.empty())
        throw std::invalid_argument("term_frequency: empty document has no frequency maximum");
    std::map<std::string, std::int64_t> counts;
    for (const auto& tok : doc.tokens) ++counts[tok];
    std::int64_t max_count = 0;
    for (const auto& [w, c] : counts) max_count = std::max(max_count, c);
    auto it = counts.find(term);
    const std::int64_t c = it == counts.end() ? 0 : it->second;
    return static_cast<double>(c) / static_cast<double>(max_count);
}

/// Natural-log inverse document frequency ln(|D| / doc_freq). The term must
/// be in the vocabulary; pruning guarantees doc_freq >= 1.
inline double inverse_document_frequency(const std::string& term, const Vocabulary& vocab,
                                         std::size_t corpus_size) {
    auto it = vocab.entries.find(term);
    if (it == vocab.entries.end())
        throw std::out_of_range("inverse_document_frequency: unknown term '" + term + "'");
    return std::log(static_cast<double>(corpus_size) /
                    static_cast<double>(it->second.doc_freq));
}

inline double tfidf(const std::string& term, const TokenizedDocument& doc, const Vocabulary& vocab,
                    std::size_t corpus_size) {
    return term_frequency(term, doc) * inverse_document_frequency(term, vocab, corpus_size);
}

}  // namespace newscorr
