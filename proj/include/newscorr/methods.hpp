#pragma once

#include <cstdio>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "newscorr/features.hpp"
#include "newscorr/indicators.hpp"

namespace newscorr {

/// The analysis methods the pipeline knows how to run. Most produce an
/// indicator series whose per-date change sign is the label; random_walk
/// labels straight from the close difference.
enum class MethodKind {
    sma,
    wma,
    ema,
    macd,
    macd_signal,
    histogram,
    difference,
    acceleration,
    rsi,
    momentum,
    roc,
    bollinger_middle,
    bollinger_upper,
    bollinger_lower,
    periodic_average,
    random_walk,
};

inline const std::vector<std::pair<std::string, MethodKind>>& method_kind_table() {
    static const std::vector<std::pair<std::string, MethodKind>> table = {
        {"sma", MethodKind::sma},
        {"wma", MethodKind::wma},
        {"ema", MethodKind::ema},
        {"macd", MethodKind::macd},
        {"macd_signal", MethodKind::macd_signal},
        {"histogram", MethodKind::histogram},
        {"difference", MethodKind::difference},
        {"acceleration", MethodKind::acceleration},
        {"rsi", MethodKind::rsi},
        {"momentum", MethodKind::momentum},
        {"roc", MethodKind::roc},
        {"bollinger", MethodKind::bollinger_middle},
        {"bollinger_middle", MethodKind::bollinger_middle},
        {"bollinger_upper", MethodKind::bollinger_upper},
        {"bollinger_lower", MethodKind::bollinger_lower},
        {"periodic_average", MethodKind::periodic_average},
        {"random_walk", MethodKind::random_walk},
        {"moving_average", MethodKind::macd},  // the MA report row uses MACD labels
    };
    return table;
}

inline std::optional<MethodKind> parse_method_kind(const std::string& name) {
    for (const auto& [n, k] : method_kind_table())
        if (n == name) return k;
    return std::nullopt;
}

inline std::string method_kind_names() {
    std::string out;
    for (const auto& [n, k] : method_kind_table()) {
        if (!out.empty()) out += ", ";
        out += n;
    }
    return out;
}

/// Per-kind defaults where the generic record's values are not the
/// conventional ones (RSI 14, momentum/ROC 10).
inline IndicatorParams default_params_for(MethodKind kind) {
    IndicatorParams p;
    switch (kind) {
        case MethodKind::rsi: p.n = 14; break;
        case MethodKind::momentum:
        case MethodKind::roc: p.n = 10; break;
        default: break;
    }
    return p;
}

/// A configured method instance: report-row name, underlying kind, params.
struct MethodSpec {
    std::string name;
    MethodKind kind = MethodKind::random_walk;
    IndicatorParams params;

    std::string params_echo() const {
        std::string s;
        auto add = [&](const std::string& kv) {
            if (!s.empty()) s += " ";
            s += kv;
        };
        switch (kind) {
            case MethodKind::sma:
            case MethodKind::wma:
            case MethodKind::ema:
                add("n=" + std::to_string(params.n));
                break;
            case MethodKind::macd:
            case MethodKind::macd_signal:
            case MethodKind::histogram:
            case MethodKind::difference:
            case MethodKind::acceleration:
                add("short=" + std::to_string(params.short_window));
                add("long=" + std::to_string(params.long_window));
                add("signal=" + std::to_string(params.signal_window));
                break;
            case MethodKind::rsi:
            case MethodKind::momentum:
            case MethodKind::roc:
                add("n=" + std::to_string(params.n));
                break;
            case MethodKind::bollinger_middle:
            case MethodKind::bollinger_upper:
            case MethodKind::bollinger_lower: {
                add("n=" + std::to_string(params.n));
                char buf[32];
                std::snprintf(buf, sizeof(buf), "K=%g", params.band_k);
                add(buf);
                break;
            }
            case MethodKind::periodic_average:
                add("period=" + std::to_string(params.period));
                break;
            case MethodKind::random_walk:
                add("L=" + std::to_string(params.walk_length));
                break;
        }
        if (params.alpha) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "alpha=%g", *params.alpha);
            add(buf);
        }
        return s;
    }
};

inline IndicatorSeries build_indicator_series(MethodKind kind, const IndicatorParams& p,
                                              const PriceSeries& prices) {
    switch (kind) {
        case MethodKind::sma: return sma_series(prices, p.n);
        case MethodKind::wma: return wma_series(prices, p.n);
        case MethodKind::ema: return ema_series(prices, p.n, p.alpha_for(p.n));
        case MethodKind::macd: return macd_line(prices, p);
        case MethodKind::macd_signal:
            return macd_signal(macd_line(prices, p), p.signal_window, p.alpha);
        case MethodKind::histogram: return histogram(prices, p);
        case MethodKind::difference: return difference(prices, p);
        case MethodKind::acceleration: return acceleration(prices, p);
        case MethodKind::rsi: return rsi_series(prices, p.n, p.alpha);
        case MethodKind::momentum: return momentum_series(prices, p.n);
        case MethodKind::roc: return roc_series(prices, p.n);
        case MethodKind::bollinger_middle:
            return bollinger_series(prices, p.n, p.band_k, BollingerBand::middle);
        case MethodKind::bollinger_upper:
            return bollinger_series(prices, p.n, p.band_k, BollingerBand::upper);
        case MethodKind::bollinger_lower:
            return bollinger_series(prices, p.n, p.band_k, BollingerBand::lower);
        case MethodKind::periodic_average: return periodic_average(prices, p.period);
        case MethodKind::random_walk: return random_walk_series(prices, p.walk_length);
    }
    throw std::invalid_argument("unknown method kind");
}

/// Shifts a trading date by `lag` positions in trading-day order. Lag 0 is
/// the identity even on non-trading dates; otherwise non-trading dates and
/// out-of-range shifts yield no date (label 0 downstream).
inline std::optional<Date> shift_trading_date(const PriceSeries& prices, Date d, long lag) {
    if (lag == 0) return d;
    auto idx = prices.index_of(d);
    if (!idx) return std::nullopt;
    const long shifted = static_cast<long>(*idx) + lag;
    if (shifted < 0 || shifted >= static_cast<long>(prices.size())) return std::nullopt;
    return prices[static_cast<std::size_t>(shifted)].date;
}

/// Builds the per-date labeling function for a method. Indicator series are
/// computed once up front and shared by the returned callable.
inline Labeler make_labeler(const MethodSpec& spec, const PriceSeries& prices, long lag = 0) {
    if (spec.kind == MethodKind::random_walk) {
        const std::size_t walk = spec.params.walk_length;
        return [&prices, walk, lag](Date d) -> Label {
            auto eff = shift_trading_date(prices, d, lag);
            if (!eff) return Label::none;
            return random_walk_label(prices, *eff, walk);
        };
    }
    auto series = std::make_shared<IndicatorSeries>(
        build_indicator_series(spec.kind, spec.params, prices));
    return [&prices, series, lag](Date d) -> Label {
        auto eff = shift_trading_date(prices, d, lag);
        if (!eff) return Label::none;
        return indicator_label(*series, *eff);
    };
}

/// The ten default report rows.
inline std::vector<MethodSpec> default_methods() {
    auto mk = [](std::string name, MethodKind kind,
                 std::function<void(IndicatorParams&)> tweak = nullptr) {
        MethodSpec s;
        s.name = std::move(name);
        s.kind = kind;
        s.params = default_params_for(kind);
        if (tweak) tweak(s.params);
        return s;
    };
    return {
        mk("random_walk", MethodKind::random_walk),
        mk("bollinger", MethodKind::bollinger_middle),
        mk("moving_average", MethodKind::macd),
        mk("momentum", MethodKind::momentum),
        mk("difference", MethodKind::difference),
        mk("rsi", MethodKind::rsi),
        mk("roc", MethodKind::roc),
        mk("acceleration", MethodKind::acceleration),
        mk("periodic_average", MethodKind::periodic_average),
        mk("random_walk_l2", MethodKind::random_walk,
           [](IndicatorParams& p) { p.walk_length = 2; }),
    };
}

/// Resolves an instance name: one of the default report rows, or any raw
/// method kind name with its default params.
inline std::optional<MethodSpec> builtin_method(const std::string& name) {
    for (auto& spec : default_methods())
        if (spec.name == name) return spec;
    if (auto kind = parse_method_kind(name)) {
        MethodSpec s;
        s.name = name;
        s.kind = *kind;
        s.params = default_params_for(*kind);
        return s;
    }
    return std::nullopt;
}

}  // namespace newscorr
