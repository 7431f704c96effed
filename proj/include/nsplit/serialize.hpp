#pragma once

#include <string>

#include <json.hpp>

#include "nsplit/method_table.hpp"

namespace nsplit {

/// Structured document form of a coefficient table: name, n_operators,
/// design_order, and stages as an s x N array of [re, im] pairs. Numbers are
/// rendered with shortest round-trip decimals, so tabulated constants survive
/// a write/read cycle bit for bit.
inline nlohmann::json to_json(const MethodTable& t) {
    validate_shape(t);
    nlohmann::json stages = nlohmann::json::array();
    for (const auto& row : t.stages) {
        nlohmann::json jrow = nlohmann::json::array();
        for (const Cplx& z : row) jrow.push_back({z.real(), z.imag()});
        stages.push_back(std::move(jrow));
    }
    return {{"name", t.name},
            {"n_operators", t.n_operators},
            {"design_order", t.design_order},
            {"stages", std::move(stages)}};
}

inline MethodTable method_table_from_json(const nlohmann::json& j) {
    MethodTable t;
    t.name = j.at("name").get<std::string>();
    t.n_operators = j.at("n_operators").get<int>();
    t.design_order = j.at("design_order").get<int>();
    for (const auto& jrow : j.at("stages")) {
        std::vector<Cplx> row;
        for (const auto& entry : jrow) {
            if (!entry.is_array() || entry.size() != 2)
                throw std::invalid_argument("method_table_from_json: stage entries must be [re, im] pairs");
            row.emplace_back(entry[0].get<double>(), entry[1].get<double>());
        }
        t.stages.push_back(std::move(row));
    }
    check_design_order(t);
    return t;
}

inline std::string to_json_text(const MethodTable& t) { return to_json(t).dump(2) + "\n"; }

inline MethodTable method_table_from_json_text(const std::string& text) {
    return method_table_from_json(nlohmann::json::parse(text));
}

}  // namespace nsplit
