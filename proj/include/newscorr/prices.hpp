#pragma once

#include <algorithm>
#include <cstddef>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "newscorr/date.hpp"
#include "newscorr/error.hpp"

namespace newscorr {

struct PricePoint {
    Date date;
    double close = 0.0;  // > 0, local currency
};

/// Date-ordered closing-price series. The dates present define the trading
/// calendar: a date absent from the series is a closed-market date (weekend
/// or holiday — both treated identically). Immutable after construction, so
/// reads are safe from any number of threads.
class PriceSeries {
public:
    // Validates the full invariant set: non-empty, strictly increasing dates,
    // positive closes. Input must already be sorted; disorder is rejected
    // rather than silently re-sorted.
    static PriceSeries from_points(std::vector<PricePoint> points) {
        if (points.empty()) throw DataError("price series: no records");
        for (std::size_t i = 0; i < points.size(); ++i) {
            const auto& p = points[i];
            if (!p.date.valid())
                throw DataError("price series: invalid date at record " + std::to_string(i + 1));
            if (!(p.close > 0.0))
                throw DataError("price series: non-positive close on " + p.date.to_string());
            if (i > 0) {
                if (points[i - 1].date == p.date)
                    throw DataError("price series: duplicate date " + p.date.to_string());
                if (p.date < points[i - 1].date)
                    throw DataError("price series: out-of-order date " + p.date.to_string());
            }
        }
        return PriceSeries(std::move(points));
    }

    std::size_t size() const { return points_.size(); }
    const PricePoint& operator[](std::size_t i) const { return points_[i]; }
    const std::vector<PricePoint>& points() const { return points_; }

    Date first_date() const { return points_.front().date; }
    Date last_date() const { return points_.back().date; }

    double close(std::size_t i) const { return points_[i].close; }

    // Trading-day index of `date`, or absent for closed-market dates.
    std::optional<std::size_t> index_of(Date date) const {
        auto it = std::lower_bound(points_.begin(), points_.end(), date,
                                   [](const PricePoint& p, Date d) { return p.date < d; });
        if (it == points_.end() || it->date != date) return std::nullopt;
        return static_cast<std::size_t>(it - points_.begin());
    }

    // Close on `date` if it is a trading date; absent otherwise. Absence is a
    // value, not an error.
    std::optional<double> close_at(Date date) const {
        auto i = index_of(date);
        if (!i) return std::nullopt;
        return points_[*i].close;
    }

    // Close L trading days before `date` (index order, not calendar days).
    // Absent when `date` is non-trading or has fewer than L predecessors.
    std::optional<double> lag_close(Date date, std::size_t lag) const {
        if (lag == 0) throw std::invalid_argument("lag_close: lag must be >= 1");
        auto i = index_of(date);
        if (!i || *i < lag) return std::nullopt;
        return points_[*i - lag].close;
    }

private:
    explicit PriceSeries(std::vector<PricePoint> points) : points_(std::move(points)) {}
    std::vector<PricePoint> points_;
};

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

inline std::optional<double> parse_number(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    if (pos != s.size()) return std::nullopt;
    return v;
}

}  // namespace detail

/// Reads a `date,close` CSV (header row required, ISO-8601 dates, '.' decimal
/// point) and returns a validated series. Any malformed row rejects the whole
/// load: a broken price file signals data corruption, not noise to skip.
inline PriceSeries load_prices_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("prices csv: empty file");
    if (!line.empty() && line.substr(0, 3) == "\xEF\xBB\xBF") line.erase(0, 3);  // UTF-8 BOM
    {
        std::string header = detail::trim(line);
        for (auto& c : header)
            if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        if (header != "date,close")
            throw DataError("prices csv: expected header 'date,close', got '" +
                            detail::trim(line) + "'");
    }
    std::vector<PricePoint> points;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = detail::trim(line);
        if (t.empty()) continue;
        auto comma = t.find(',');
        if (comma == std::string::npos)
            throw DataError("prices csv line " + std::to_string(lineno) + ": missing comma");
        auto date = parse_date(detail::trim(t.substr(0, comma)));
        if (!date)
            throw DataError("prices csv line " + std::to_string(lineno) + ": bad date '" +
                            detail::trim(t.substr(0, comma)) + "'");
        auto close = detail::parse_number(detail::trim(t.substr(comma + 1)));
        if (!close)
            throw DataError("prices csv line " + std::to_string(lineno) + ": bad close value");
        points.push_back(PricePoint{*date, *close});
    }
    return PriceSeries::from_points(std::move(points));
}

}  // namespace newscorr
