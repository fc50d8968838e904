#pragma once

#include <string>
#include <vector>

#include "arcop/error.hpp"

namespace arcop {

/// Calendar month, used as the index unit of every Series.
struct YearMonth {
    int year = 0;
    int month = 1;  // 1..12

    int index() const { return year * 12 + (month - 1); }
    static YearMonth from_index(int idx) {
        int y = idx / 12, m = idx % 12;
        if (m < 0) { m += 12; --y; }
        return {y, m + 1};
    }
    YearMonth plus(int months) const { return from_index(index() + months); }
    bool operator==(const YearMonth&) const = default;
    auto operator<=>(const YearMonth&) const = default;
    std::string str() const;  // "YYYY-MM"
};

YearMonth parse_year_month(const std::string& text);

struct Date {
    int year = 0;
    int month = 1;
    int day = 1;
    bool operator==(const Date&) const = default;
    auto operator<=>(const Date&) const = default;
};

Date parse_date(const std::string& text);  // "YYYY-MM-DD"

/// One raw observation of a daily price file.
struct DailyRecord {
    Date date;
    double value = 0.0;
};

/// How many non-seasonal (d) and seasonal (D, period s) differences a series
/// has been put through.
struct DiffSpec {
    int d = 0;
    int D = 0;
    int s = 1;
    int total_lag() const { return d + D * s; }
    bool operator==(const DiffSpec&) const = default;
};

/// Uniformly monthly-indexed sequence of real observations, carrying its
/// transform provenance (log count and differencing applied so far).
class Series {
public:
    Series(YearMonth start, std::vector<double> values, int transform_log = 0,
           DiffSpec diff = {});

    const YearMonth& start() const { return start_; }
    const std::vector<double>& values() const { return values_; }
    int transform_log() const { return transform_log_; }
    const DiffSpec& diff_spec() const { return diff_; }

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    YearMonth month_at(std::size_t i) const { return start_.plus(static_cast<int>(i)); }
    YearMonth last_month() const { return month_at(values_.size() - 1); }

private:
    YearMonth start_;
    std::vector<double> values_;
    int transform_log_ = 0;
    DiffSpec diff_;
};

/// Collapse daily records into one value per calendar month (arithmetic
/// mean). Every month between the first and last record must be present.
Series monthly_average(const std::vector<DailyRecord>& records);

/// Element-wise natural log; all inputs must be strictly positive.
Series log_transform(const Series& s);

/// Apply (1-L)^d (1-L^s)^D. Output shrinks by d + D*s and records the spec.
Series difference(const Series& s, int d, int D, int period);

/// Inverse of difference(). `initial` must hold the first d + D*s values of
/// the original series; the result reproduces it.
Series integrate(const Series& deltas, const std::vector<double>& initial);

/// Expanded coefficients of (1-L)^d (1-L^s)^D; index j holds the coefficient
/// of L^j, with coefficient 1 at j = 0.
std::vector<double> differencing_polynomial(const DiffSpec& spec);

/// Continue a level series: given the tail of the original values and future
/// values on the differenced scale, produce the corresponding future levels.
std::vector<double> extend_levels(const std::vector<double>& levels, const DiffSpec& spec,
                                  const std::vector<double>& future_deltas);

// --- CSV ingestion (two columns `date,value`, header row required) ---

std::vector<DailyRecord> read_daily_csv(const std::string& path);
Series read_monthly_csv(const std::string& path);
/// Detects daily (YYYY-MM-DD) vs monthly (YYYY-MM) files from the first data
/// row; daily files are collapsed by monthly_average.
Series ingest_csv(const std::string& path);

void write_monthly_csv(const Series& s, const std::string& path);

}  // namespace arcop
