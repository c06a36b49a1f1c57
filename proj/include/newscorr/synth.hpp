#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "newscorr/corpus_io.hpp"
#include "newscorr/indicators.hpp"
#include "newscorr/prices.hpp"

namespace newscorr {

/// Deterministic synthetic inputs for end-to-end testing: a geometric
/// random-walk price series over weekday trading dates, and a news corpus
/// whose marker terms encode each date's movement label with probability
/// `marker_prob`. Same seed, same bytes.
struct SynthParams {
    std::uint64_t seed = 42;
    Date start{2011, 1, 3};  // a Monday
    std::size_t trading_days = 500;
    std::size_t docs_per_day = 1;
    double marker_prob = 0.9;       // chance a trading-day doc carries its marker
    std::size_t noise_vocab = 40;   // distinct noise terms
    std::size_t noise_per_doc = 8;  // noise terms drawn per document
    double weekend_doc_rate = 0.1;  // chance a weekend day gets a (noise-only) doc
    double daily_drift = 0.0005;
    double daily_vol = 0.02;
    double start_price = 100.0;
};

namespace detail {

// Fixed bit-derivation keeps generated bytes identical across standard
// libraries (std distributions are implementation-defined).
class SynthRng {
public:
    explicit SynthRng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double normal() {
        // Box-Muller; cache the second deviate.
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01(), u2 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.141592653589793238462643383279502884 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    std::size_t below(std::size_t n) {
        return static_cast<std::size_t>(uniform01() * static_cast<double>(n)) % n;
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline std::string random_word(SynthRng& rng, std::size_t len) {
    std::string w;
    w.reserve(len);
    for (std::size_t i = 0; i < len; ++i)
        w.push_back(static_cast<char>('a' + rng.below(26)));
    return w;
}

}  // namespace detail

inline const std::string kMarkerUp = "markerup";
inline const std::string kMarkerDown = "markerdown";

/// Weekday-only trading calendar with multiplicative log-normal steps;
/// closes stay positive by construction.
inline PriceSeries generate_prices(const SynthParams& params) {
    if (params.trading_days == 0) throw std::invalid_argument("synth: need trading days");
    detail::SynthRng rng(params.seed ^ 0x9E3779B97F4A7C15ull);
    std::vector<PricePoint> points;
    points.reserve(params.trading_days);
    Date d = params.start;
    double price = params.start_price;
    while (points.size() < params.trading_days) {
        if (!d.is_weekend()) {
            points.push_back(PricePoint{d, price});
            price *= std::exp(params.daily_drift + params.daily_vol * rng.normal());
        }
        d = d.next_day();
    }
    return PriceSeries::from_points(std::move(points));
}

/// News corpus over the price calendar. Trading-day documents carry the
/// marker term that agrees with that date's one-step movement label with
/// probability `marker_prob` (never for a zero label), plus noise terms drawn
/// from a fixed fake vocabulary. Weekend days get noise-only documents at
/// `weekend_doc_rate`. Output is ingest-clean: unique ids, valid dates,
/// plain-letter tokens.
inline std::vector<NewsDocument> generate_corpus(const PriceSeries& prices,
                                                 const SynthParams& params) {
    detail::SynthRng rng(params.seed ^ 0xD1B54A32D192ED03ull);

    std::vector<std::string> noise;
    noise.reserve(params.noise_vocab);
    for (std::size_t i = 0; i < params.noise_vocab; ++i) {
        std::string w = detail::random_word(rng, 5 + rng.below(4));
        if (w.find("marker") != std::string::npos) w = "w" + w;
        noise.push_back(std::move(w));
    }

    std::vector<std::string> authors;
    for (std::size_t i = 0; i < 8; ++i) authors.push_back("author" + detail::random_word(rng, 4));

    std::vector<NewsDocument> docs;
    std::size_t next_id = 0;
    auto emit = [&](Date date, const std::string* marker) {
        std::string body;
        if (marker) body = *marker;
        for (std::size_t i = 0; i < params.noise_per_doc; ++i) {
            if (!body.empty()) body += ' ';
            body += noise.empty() ? detail::random_word(rng, 6) : noise[rng.below(noise.size())];
        }
        char idbuf[24];
        std::snprintf(idbuf, sizeof(idbuf), "doc%06zu", next_id++);
        docs.push_back(NewsDocument{idbuf, date,
                                    authors[rng.below(authors.size())], std::move(body)});
    };

    Date d = prices.first_date();
    const Date last = prices.last_date();
    while (d <= last) {
        if (prices.index_of(d)) {
            const Label label = random_walk_label(prices, d, 1);
            for (std::size_t i = 0; i < params.docs_per_day; ++i) {
                const std::string* marker = nullptr;
                if (label != Label::none && rng.uniform01() < params.marker_prob)
                    marker = label == Label::up ? &kMarkerUp : &kMarkerDown;
                emit(d, marker);
            }
        } else if (params.weekend_doc_rate > 0.0 &&
                   rng.uniform01() < params.weekend_doc_rate) {
            emit(d, nullptr);
        }
        d = d.next_day();
    }
    return docs;
}

}  // namespace newscorr
