#pragma once

#include <nlohmann/json.hpp>

#include "arcop/series.hpp"

namespace arcop::detail {

inline nlohmann::json series_to_json(const Series& s) {
    return {{"start", {{"year", s.start().year}, {"month", s.start().month}}},
            {"values", s.values()},
            {"transform_log", s.transform_log()},
            {"diff", {{"d", s.diff_spec().d}, {"D", s.diff_spec().D}, {"s", s.diff_spec().s}}}};
}

inline Series series_from_json(const nlohmann::json& j) {
    return Series(YearMonth{j.at("start").at("year").get<int>(),
                            j.at("start").at("month").get<int>()},
                  j.at("values").get<std::vector<double>>(), j.at("transform_log").get<int>(),
                  DiffSpec{j.at("diff").at("d").get<int>(), j.at("diff").at("D").get<int>(),
                           j.at("diff").at("s").get<int>()});
}

}  // namespace arcop::detail
