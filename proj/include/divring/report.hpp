#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "divring/algebra.hpp"

namespace divring {

/// One command run. Machine output is newline-delimited records and carries
/// no timing, so identical inputs and seed give byte-identical bytes; the
/// text format appends the elapsed time.
struct RunReport {
    std::string command;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
    nlohmann::ordered_json records = nlohmann::ordered_json::array();
    std::vector<std::string> text_lines;
    std::uint64_t seed = 0;
    double elapsed_ms = 0.0;
    int exit_code = 0;  // 0 success, 1 property failure, 2 input error
    std::string verdict;
};

enum class ReportFormat { Text, Machine };

inline nlohmann::ordered_json coords_json(const std::vector<Scalar>& coords) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : coords) arr.push_back(c.to_string());
    return arr;
}

inline nlohmann::ordered_json element_json(const AlgebraElement& e) {
    return coords_json(e.coords());
}

inline std::string emit_report(const RunReport& rep, ReportFormat format) {
    std::string out;
    if (format == ReportFormat::Machine) {
        nlohmann::ordered_json head;
        head["record"] = "run";
        head["command"] = rep.command;
        head["seed"] = rep.seed;
        head["inputs"] = rep.inputs;
        out += head.dump() + "\n";
        for (const auto& r : rep.records) out += r.dump() + "\n";
        nlohmann::ordered_json tail;
        tail["record"] = "exit";
        tail["verdict"] = rep.verdict;
        tail["code"] = rep.exit_code;
        out += tail.dump() + "\n";
        return out;
    }
    out += "command: " + rep.command + "\n";
    for (const auto& [k, v] : rep.inputs.items())
        out += "  " + k + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    out += "seed: " + std::to_string(rep.seed) + "\n";
    for (const auto& line : rep.text_lines) out += line + "\n";
    out += "verdict: " + rep.verdict + "\n";
    out += "exit: " + std::to_string(rep.exit_code) + "\n";
    out += "elapsed-ms: " + std::to_string(rep.elapsed_ms) + "\n";
    return out;
}

}  // namespace divring
