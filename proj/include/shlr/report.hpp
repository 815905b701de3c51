#pragma once

#include <json.hpp>

#include "shlr/cofib.hpp"
#include "shlr/model.hpp"

namespace shlr {

// Canonical report: sorted keys, rationals as "p/q" strings, elements in
// normal-form print order. Identical input and flags give identical bytes.
struct Report {
    nlohmann::json body = nlohmann::json::object();
    int exit_code = 0;

    std::string to_json() const { return body.dump(2) + "\n"; }
    std::string to_text() const;
};

nlohmann::json json_of(const CohomologyReport& rep);
nlohmann::json json_of(const WeqReport& rep);
nlohmann::json json_of(const SquareZeroReport& rep);

} // namespace shlr
