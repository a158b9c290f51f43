#include "alth/report.hpp"

#include <sstream>

namespace alth {

ordered_json Report::to_json() const {
    ordered_json j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["verdict"] = to_string(verdict);
    ordered_json ws = ordered_json::array();
    for (const auto& [kind, data] : witnesses) {
        ordered_json w;
        w["kind"] = kind;
        w["data"] = data;
        ws.push_back(std::move(w));
    }
    j["witnesses"] = std::move(ws);
    j["wall_ms"] = wall_ms;
    return j;
}

std::string Report::to_table() const {
    std::ostringstream os;
    os << "command:  " << command << "\n";
    os << "inputs:   " << inputs.dump() << "\n";
    os << "verdict:  " << to_string(verdict) << "\n";
    for (const auto& [kind, data] : witnesses)
        os << "  " << kind << ": " << data.dump() << "\n";
    os << "wall_ms:  " << wall_ms << "\n";
    return os.str();
}

int Report::exit_code() const {
    switch (verdict) {
        case Verdict::pass: return 0;
        case Verdict::fail: return 1;
        case Verdict::inconclusive: return 2;
    }
    return 1;
}

}  // namespace alth
