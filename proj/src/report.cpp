#include "shlr/report.hpp"

#include <sstream>

namespace shlr {

nlohmann::json json_of(const CohomologyReport& rep) {
    nlohmann::json j;
    j["dims"] = nlohmann::json::object();
    for (const auto& [n, d] : rep.dims) j["dims"][std::to_string(n)] = d;
    j["incomplete"] = nlohmann::json::array();
    for (int n : rep.incomplete) j["incomplete"].push_back(n);
    if (!rep.nonzero_uncertified.empty()) {
        j["nonzero_uncertified"] = nlohmann::json::array();
        for (int n : rep.nonzero_uncertified) j["nonzero_uncertified"].push_back(n);
    }
    return j;
}

nlohmann::json json_of(const WeqReport& rep) {
    nlohmann::json j;
    j["verdict"] = verdict_str(rep.verdict);
    j["base_cone"] = json_of(rep.base_cone);
    j["linear_cone"] = json_of(rep.linear_cone);
    return j;
}

nlohmann::json json_of(const SquareZeroReport& rep) {
    nlohmann::json j;
    j["pass"] = rep.pass;
    if (!rep.pass) {
        j["weight"] = rep.weight;
        j["generator"] = rep.generator;
        j["witness"] = rep.witness;
    }
    return j;
}

namespace {

void render(std::ostream& os, const nlohmann::json& j, const std::string& prefix) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (v.is_object() || v.is_array()) {
                os << prefix << k << ":\n";
                render(os, v, prefix + "  ");
            } else {
                os << prefix << k << " = " << v.dump() << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_object() || v.is_array()) {
                os << prefix << "-\n";
                render(os, v, prefix + "  ");
            } else {
                os << prefix << "- " << v.dump() << "\n";
            }
        }
    } else {
        os << prefix << j.dump() << "\n";
    }
}

} // namespace

std::string Report::to_text() const {
    std::ostringstream os;
    render(os, body, "");
    return os.str();
}

} // namespace shlr
