#ifndef ALTH_REPORT_HPP
#define ALTH_REPORT_HPP

#include <nlohmann/json.hpp>

#include "alth/finset.hpp"

namespace alth {

using ordered_json = nlohmann::ordered_json;

/// Machine-readable command outcome.  fail/inconclusive always carry a
/// witness or truncation note.
struct Report {
    std::string command;
    ordered_json inputs = ordered_json::object();
    Verdict verdict = Verdict::fail;
    std::vector<std::pair<std::string, ordered_json>> witnesses;
    double wall_ms = 0.0;

    void witness(const std::string& kind, ordered_json data) {
        witnesses.emplace_back(kind, std::move(data));
    }

    ordered_json to_json() const;
    std::string to_table() const;
    int exit_code() const;
};

}  // namespace alth

#endif
