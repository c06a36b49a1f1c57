#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <sstream>

#include "newscorr/corpus_io.hpp"
#include "newscorr/text.hpp"

using namespace newscorr;
using Catch::Matchers::WithinAbs;

namespace {

TokenizedDocument doc_of(std::vector<std::string> tokens, const char* id = "d") {
    return TokenizedDocument{id, Date{2011, 1, 3}, std::move(tokens)};
}

NewsDocument news(const char* id, const char* date, std::string body) {
    return NewsDocument{id, *parse_date(date), "a", std::move(body)};
}

}  // namespace

TEST_CASE("tokenize strips markup, folds case and splits on non-letters") {
    std::set<std::string> none;
    SECTION("tag strip + lowercase + punctuation split") {
        auto t = tokenize("<p>Borsa Y\xC3\xBCkseldi.</p>", none);
        REQUIRE(t.size() == 2);
        CHECK(t[0] == "borsa");
        CHECK(t[1] == "y\xC3\xBCkseldi");
    }
    SECTION("stopwords removed after folding") {
        std::set<std::string> stop{"the", "and"};
        auto t = tokenize("the Market and the News", stop);
        REQUIRE(t.size() == 2);
        CHECK(t[0] == "market");
        CHECK(t[1] == "news");
    }
    SECTION("all-markup body yields an empty token list") {
        CHECK(tokenize("<div></div>", none).empty());
    }
    SECTION("tags act as separators") {
        auto t = tokenize("alpha<br>beta", none);
        REQUIRE(t.size() == 2);
        CHECK(t[0] == "alpha");
        CHECK(t[1] == "beta");
    }
    SECTION("digits and punctuation split tokens") {
        auto t = tokenize("abc123def, ghi", none);
        REQUIRE(t.size() == 3);
        CHECK(t[0] == "abc");
        CHECK(t[1] == "def");
        CHECK(t[2] == "ghi");
    }
    SECTION("Latin capitals with diacritics fold") {
        // ÜST -> üst, Ğ -> ğ
        auto t = tokenize("\xC3\x9CST \xC4\x9E", none);
        REQUIRE(t.size() == 2);
        CHECK(t[0] == "\xC3\xBCst");
        CHECK(t[1] == "\xC4\x9F");
    }
    SECTION("Turkish I handling follows the fold mode") {
        auto simple = tokenize("I\xC4\xB0", none, CaseFold::simple);  // "Iİ"
        REQUIRE(simple.size() == 1);
        CHECK(simple[0] == "ii");
        auto tr = tokenize("I\xC4\xB0", none, CaseFold::turkish);
        REQUIRE(tr.size() == 1);
        CHECK(tr[0] == "\xC4\xB1i");  // ıi
    }
    SECTION("idempotent on already-clean token streams") {
        std::mt19937_64 rng(5);
        for (int rep = 0; rep < 50; ++rep) {
            std::string text;
            const int n = 1 + static_cast<int>(rng() % 12);
            for (int i = 0; i < n; ++i) {
                if (i) text += ' ';
                const int len = 1 + static_cast<int>(rng() % 8);
                for (int j = 0; j < len; ++j)
                    text += static_cast<char>('a' + rng() % 26);
            }
            std::set<std::string> stop{"stopone", "stoptwo"};
            auto first = tokenize(text, stop);
            std::string joined;
            for (const auto& tok : first) {
                if (!joined.empty()) joined += ' ';
                joined += tok;
            }
            CHECK(tokenize(joined, stop) == first);
        }
    }
}

TEST_CASE("term frequency follows the max-normalized definition") {
    SECTION("count over max count") {
        std::vector<std::string> toks;
        for (int i = 0; i < 3; ++i) toks.push_back("alpha");
        for (int i = 0; i < 6; ++i) toks.push_back("beta");
        auto d = doc_of(toks);
        CHECK_THAT(term_frequency("alpha", d), WithinAbs(0.5, 1e-15));
        CHECK(term_frequency("beta", d) == 1.0);   // most frequent term
        CHECK(term_frequency("gamma", d) == 0.0);  // absent term
    }
    SECTION("empty document is an error") {
        CHECK_THROWS_AS(term_frequency("x", doc_of({})), std::invalid_argument);
    }
}

TEST_CASE("inverse document frequency") {
    std::vector<TokenizedDocument> corpus = {
        doc_of({"common", "rare"}, "d1"),
        doc_of({"common"}, "d2"),
        doc_of({"common"}, "d3"),
        doc_of({"common"}, "d4"),
    };
    auto vocab = build_vocabulary(corpus, 0);
    CHECK_THAT(inverse_document_frequency("common", vocab, 4), WithinAbs(0.0, 1e-15));
    CHECK_THAT(inverse_document_frequency("rare", vocab, 4),
               WithinAbs(std::log(4.0), 1e-15));
    SECTION("only the ratio matters") {
        Vocabulary v;
        v.entries["t"] = VocabEntry{10, 2};
        CHECK_THAT(inverse_document_frequency("t", v, 8), WithinAbs(std::log(4.0), 1e-15));
    }
    SECTION("unknown term is an error") {
        CHECK_THROWS_AS(inverse_document_frequency("nope", vocab, 4), std::out_of_range);
    }
}

TEST_CASE("tfidf on the four-document hand corpus") {
    // doc1: alpha x3, beta x6 -> tf(alpha) = 0.5; alpha appears only in doc1.
    std::vector<std::string> d1;
    for (int i = 0; i < 3; ++i) d1.push_back("alpha");
    for (int i = 0; i < 6; ++i) d1.push_back("beta");
    std::vector<TokenizedDocument> corpus = {
        doc_of(d1, "d1"),
        doc_of({"beta", "gamma"}, "d2"),
        doc_of({"beta"}, "d3"),
        doc_of({"beta", "gamma"}, "d4"),
    };
    auto vocab = build_vocabulary(corpus, 0);
    CHECK_THAT(tfidf("alpha", corpus[0], vocab, 4),
               WithinAbs(0.5 * std::log(4.0), 1e-15));  // ~0.6931
    CHECK(tfidf("beta", corpus[0], vocab, 4) == 0.0);   // in every document
    CHECK(tfidf("gamma", corpus[0], vocab, 4) == 0.0);  // absent from doc1
}

TEST_CASE("vocabulary pruning uses a strict threshold") {
    // term "edge" occurs exactly 30 times, "keep" 31 times.
    std::vector<TokenizedDocument> corpus;
    for (int i = 0; i < 30; ++i) corpus.push_back(doc_of({"edge", "keep"}));
    corpus.push_back(doc_of({"keep"}));
    auto vocab = build_vocabulary(corpus, 30);
    CHECK_FALSE(vocab.contains("edge"));
    CHECK(vocab.contains("keep"));
    CHECK(vocab.entries.at("keep").corpus_count == 31);
    CHECK(vocab.entries.at("keep").doc_freq == 31);
    SECTION("min_count zero keeps everything") {
        auto all = build_vocabulary(corpus, 0);
        CHECK(all.contains("edge"));
    }
    SECTION("negative min_count is invalid") {
        CHECK_THROWS_AS(build_vocabulary(corpus, -1), std::invalid_argument);
    }
}

TEST_CASE("vocabulary counts equal brute-force recounts") {
    std::mt19937_64 rng(41);
    std::vector<std::string> pool = {"ab", "cd", "ef", "gh", "ij", "kl", "mn"};
    std::vector<TokenizedDocument> corpus;
    for (int d = 0; d < 60; ++d) {
        std::vector<std::string> toks;
        const int n = static_cast<int>(rng() % 15);
        for (int i = 0; i < n; ++i) toks.push_back(pool[rng() % pool.size()]);
        corpus.push_back(doc_of(toks, ("doc" + std::to_string(d)).c_str()));
    }
    auto vocab = build_vocabulary(corpus, 0);
    for (const auto& term : pool) {
        std::int64_t total = 0, df = 0;
        for (const auto& d : corpus) {
            const auto c = term_count(term, d);
            total += c;
            if (c > 0) ++df;
        }
        if (total == 0) {
            CHECK_FALSE(vocab.contains(term));
        } else {
            REQUIRE(vocab.contains(term));
            CHECK(vocab.entries.at(term).corpus_count == total);
            CHECK(vocab.entries.at(term).doc_freq == df);
        }
    }
}

TEST_CASE("jsonl corpus loading") {
    SECTION("accepts well-formed lines, collects bad ones with line numbers") {
        std::istringstream in(
            R"({"id":"a","date":"2011-01-03","author":"x","body":"hello"})"
            "\n"
            "not json\n"
            R"({"id":"b","date":"2011-13-03","author":"x","body":"bad date"})"
            "\n"
            R"({"id":"a","date":"2011-01-04","author":"x","body":"dup id"})"
            "\n"
            R"({"id":"c","date":"2011-01-05","author":"y","body":"ok"})"
            "\n");
        auto r = load_corpus_jsonl(in);
        REQUIRE(r.documents.size() == 2);
        CHECK(r.documents[0].id == "a");
        CHECK(r.documents[1].id == "c");
        REQUIRE(r.rejects.size() == 3);
        CHECK(r.rejects[0].first == 2);
        CHECK(r.rejects[1].first == 3);
        CHECK(r.rejects[2].first == 4);
        CHECK(r.rejects[2].second.find("duplicate") != std::string::npos);
    }
    SECTION("missing fields are rejected") {
        std::istringstream in(R"({"id":"a","date":"2011-01-03","body":"no author"})" "\n");
        auto r = load_corpus_jsonl(in);
        CHECK(r.documents.empty());
        REQUIRE(r.rejects.size() == 1);
    }
    SECTION("round trip through the writer") {
        std::vector<NewsDocument> docs = {news("a", "2011-01-03", "G\xC3\xBCnd\xC3\xB6m <b>x</b>"),
                                          news("b", "2011-01-04", "")};
        std::ostringstream out;
        write_corpus_jsonl(out, docs);
        std::istringstream in(out.str());
        auto r = load_corpus_jsonl(in);
        REQUIRE(r.rejects.empty());
        REQUIRE(r.documents.size() == 2);
        CHECK(r.documents[0].body == docs[0].body);
        CHECK(r.documents[1].body == "");
    }
}

TEST_CASE("stopword loading folds entries") {
    std::istringstream in("The\n\n  And \nVE\n");
    auto stop = load_stopwords(in);
    CHECK(stop.count("the"));
    CHECK(stop.count("and"));
    CHECK(stop.count("ve"));
    CHECK(stop.size() == 3);
}
