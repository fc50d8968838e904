#include "arcop/series.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace arcop {

std::string YearMonth::str() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
    return buf;
}

YearMonth parse_year_month(const std::string& text) {
    int y = 0, m = 0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%d-%d%c", &y, &m, &extra) != 2 || m < 1 || m > 12)
        raise(Errc::parse_error, "expected YYYY-MM, got '" + text + "'");
    return {y, m};
}

Date parse_date(const std::string& text) {
    int y = 0, m = 0, d = 0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%d-%d-%d%c", &y, &m, &d, &extra) != 3 || m < 1 || m > 12 ||
        d < 1 || d > 31)
        raise(Errc::parse_error, "expected YYYY-MM-DD, got '" + text + "'");
    return {y, m, d};
}

Series::Series(YearMonth start, std::vector<double> values, int transform_log, DiffSpec diff)
    : start_(start), values_(std::move(values)), transform_log_(transform_log), diff_(diff) {
    if (values_.empty()) raise(Errc::empty_input, "Series requires at least one value");
    if (diff_.D > 0 && diff_.s < 1)
        raise(Errc::invalid_parameter, "seasonal differencing requires period >= 1");
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (!std::isfinite(values_[i]))
            raise(Errc::invalid_parameter,
                  "non-finite value at index " + std::to_string(i));
}

Series monthly_average(const std::vector<DailyRecord>& records) {
    if (records.empty()) raise(Errc::empty_input, "no daily records");
    for (std::size_t i = 0; i + 1 < records.size(); ++i)
        if (!(records[i].date < records[i + 1].date))
            raise(Errc::parse_error,
                  "daily records must be strictly increasing by date (row " +
                      std::to_string(i + 2) + ")");
    for (const auto& r : records)
        if (!std::isfinite(r.value))
            raise(Errc::invalid_parameter, "non-finite daily value");

    const YearMonth first{records.front().date.year, records.front().date.month};
    const YearMonth last{records.back().date.year, records.back().date.month};
    const int n_months = last.index() - first.index() + 1;

    std::vector<double> sums(n_months, 0.0);
    std::vector<int> counts(n_months, 0);
    for (const auto& r : records) {
        const int idx = YearMonth{r.date.year, r.date.month}.index() - first.index();
        sums[idx] += r.value;
        counts[idx] += 1;
    }
    std::vector<double> values(n_months);
    for (int i = 0; i < n_months; ++i) {
        if (counts[i] == 0) {
            const YearMonth missing = first.plus(i);
            raise(Errc::missing_month, "no records in " + missing.str());
        }
        values[i] = sums[i] / counts[i];
    }
    return Series(first, std::move(values));
}

Series log_transform(const Series& s) {
    std::vector<double> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!(s[i] > 0.0))
            raise(Errc::non_positive_value, "value at index " + std::to_string(i) +
                                                " is not strictly positive");
        out[i] = std::log(s[i]);
    }
    return Series(s.start(), std::move(out), s.transform_log() + 1, s.diff_spec());
}

std::vector<double> differencing_polynomial(const DiffSpec& spec) {
    std::vector<double> poly{1.0};
    auto mul_by = [&poly](int lag) {
        // poly *= (1 - L^lag)
        std::vector<double> next(poly.size() + lag, 0.0);
        for (std::size_t j = 0; j < poly.size(); ++j) {
            next[j] += poly[j];
            next[j + lag] -= poly[j];
        }
        poly = std::move(next);
    };
    for (int i = 0; i < spec.d; ++i) mul_by(1);
    for (int i = 0; i < spec.D; ++i) mul_by(spec.s);
    return poly;
}

Series difference(const Series& s, int d, int D, int period) {
    if (d < 0 || D < 0 || (D > 0 && period < 1))
        raise(Errc::invalid_parameter, "invalid differencing orders");
    const DiffSpec& prev = s.diff_spec();
    if (prev.D > 0 && D > 0 && prev.s != period)
        raise(Errc::invalid_parameter, "conflicting seasonal periods");
    DiffSpec step{d, D, D > 0 ? period : (prev.D > 0 ? prev.s : period)};
    const int lag = d + D * (D > 0 ? period : 0);
    if (static_cast<int>(s.size()) <= lag)
        raise(Errc::insufficient_length,
              "series of length " + std::to_string(s.size()) +
                  " cannot be differenced with lag " + std::to_string(lag));

    const std::vector<double> poly = differencing_polynomial({d, D, period});
    const std::vector<double>& x = s.values();
    std::vector<double> out(s.size() - lag);
    for (std::size_t t = lag; t < s.size(); ++t) {
        double acc = 0.0;
        for (std::size_t j = 0; j < poly.size(); ++j) acc += poly[j] * x[t - j];
        out[t - lag] = acc;
    }
    DiffSpec combined{prev.d + d, prev.D + D, step.s};
    if (combined.D == 0) combined.s = 1;
    return Series(s.start().plus(lag), std::move(out), s.transform_log(), combined);
}

Series integrate(const Series& deltas, const std::vector<double>& initial) {
    const DiffSpec& spec = deltas.diff_spec();
    const int lag = spec.total_lag();
    if (static_cast<int>(initial.size()) != lag)
        raise(Errc::initial_mismatch, "need " + std::to_string(lag) +
                                          " initial values, got " +
                                          std::to_string(initial.size()));
    if (lag == 0) return deltas;

    const std::vector<double> poly = differencing_polynomial(spec);
    std::vector<double> x(initial);
    x.reserve(initial.size() + deltas.size());
    for (std::size_t t = 0; t < deltas.size(); ++t) {
        const std::size_t pos = lag + t;
        double acc = deltas[t];
        for (std::size_t j = 1; j < poly.size(); ++j) acc -= poly[j] * x[pos - j];
        x.push_back(acc);
    }
    return Series(deltas.start().plus(-lag), std::move(x), deltas.transform_log(), DiffSpec{});
}

std::vector<double> extend_levels(const std::vector<double>& levels, const DiffSpec& spec,
                                  const std::vector<double>& future_deltas) {
    const int lag = spec.total_lag();
    if (static_cast<int>(levels.size()) < lag)
        raise(Errc::initial_mismatch, "need at least " + std::to_string(lag) +
                                          " trailing level values");
    if (lag == 0) return future_deltas;
    const std::vector<double> poly = differencing_polynomial(spec);
    std::vector<double> tail(levels.end() - lag, levels.end());
    std::vector<double> out;
    out.reserve(future_deltas.size());
    for (double w : future_deltas) {
        double acc = w;
        for (std::size_t j = 1; j < poly.size(); ++j) acc -= poly[j] * tail[tail.size() - j];
        out.push_back(acc);
        tail.push_back(acc);
    }
    return out;
}

namespace {

std::vector<std::string> read_csv_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::io_error, "cannot open " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    if (lines.size() < 2) raise(Errc::parse_error, path + ": expected a header row and data");
    return lines;
}

std::pair<std::string, double> split_row(const std::string& line, const std::string& path,
                                         std::size_t row) {
    const auto comma = line.find(',');
    if (comma == std::string::npos)
        raise(Errc::parse_error, path + ": row " + std::to_string(row) + " has no comma");
    const std::string date = line.substr(0, comma);
    const std::string value_text = line.substr(comma + 1);
    try {
        std::size_t used = 0;
        const double value = std::stod(value_text, &used);
        return {date, value};
    } catch (const std::exception&) {
        raise(Errc::parse_error,
              path + ": row " + std::to_string(row) + " has a non-numeric value");
    }
}

}  // namespace

std::vector<DailyRecord> read_daily_csv(const std::string& path) {
    const auto lines = read_csv_lines(path);
    std::vector<DailyRecord> records;
    records.reserve(lines.size() - 1);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto [date_text, value] = split_row(lines[i], path, i + 1);
        records.push_back({parse_date(date_text), value});
    }
    return records;
}

Series read_monthly_csv(const std::string& path) {
    const auto lines = read_csv_lines(path);
    std::vector<double> values;
    YearMonth start;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto [date_text, value] = split_row(lines[i], path, i + 1);
        const YearMonth ym = parse_year_month(date_text);
        if (i == 1) {
            start = ym;
        } else if (ym.index() != start.index() + static_cast<int>(values.size())) {
            raise(Errc::missing_month, path + ": expected " +
                                           start.plus(static_cast<int>(values.size())).str() +
                                           ", got " + ym.str());
        }
        values.push_back(value);
    }
    return Series(start, std::move(values));
}

Series ingest_csv(const std::string& path) {
    const auto lines = read_csv_lines(path);
    const auto comma = lines[1].find(',');
    const std::string first_date = comma == std::string::npos ? lines[1] : lines[1].substr(0, comma);
    int dashes = 0;
    for (char c : first_date)
        if (c == '-') ++dashes;
    if (dashes >= 2) return monthly_average(read_daily_csv(path));
    return read_monthly_csv(path);
}

void write_monthly_csv(const Series& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) raise(Errc::io_error, "cannot write " + path);
    out << "date,value\n";
    char buf[40];
    for (std::size_t i = 0; i < s.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", s[i]);
        out << s.month_at(i).str() << ',' << buf << '\n';
    }
}

}  // namespace arcop
