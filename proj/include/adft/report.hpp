#pragma once

#include "faultpaths.hpp"
#include "threshold.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace adft {

inline constexpr const char* report_format = "adft-report/1";

// reference location counts the B comparison is made against
inline constexpr long reference_L_memory = 366;
inline constexpr long reference_L_cz = 732;

// Schedule decisions that move the counts, one line each. Carried inline in
// every count report.
inline std::vector<std::string> schedule_deviations(extended_kind k, const schedule_options& so) {
    std::vector<std::string> d{
        "flags: flag k is prepared in the step of its entangling CNOT",
        "M1: data qubits rest after their M1 CNOT until decoupling; Fz there adds leading x trailing pairs",
        "parity: the second qubit of a parity check enters scope at its own CNOT",
        "parity check after M1 only for single-bit flag records",
        "locations: closure of the fault-free run under single Fa/Fz faults; L exceeds the reference count",
    };
    d.push_back(so.flag_rest_in_syndrome ? "S: flags rest while parities are measured"
                                         : "S: flags do not rest while parities are measured");
    d.push_back(so.data_rest_in_uv ? "u/v: the other data pair rests" : "u/v: the other data pair does not rest");
    d.push_back(so.data_rest_in_recovery ? "R: data qubits rest through M2 and corrections"
                                         : "R: data qubits do not rest inside recovery; lowers recovery-part pairs");
    d.push_back("weights: Fa Fa = 1 (1/2 when at most half the decoded trace is wrong), Fa Fz = 1/2, Fz Fz = 1/4, "
                "max over malignant combinations");
    if (k == extended_kind::cz) {
        d.push_back("cross-link: Z on the partner when the other block's M1 gave c1 = 1; a flag Fa that randomises c1 "
                    "adds trailing x trailing pairs");
        d.push_back("z2: Z on a CZ-layer partner qubit is fixed by the decoder, giving one malignant Z2 location "
                    "fewer than the reference");
    }
    return d;
}

inline nlohmann::json to_json(const malignant_report& r, long reference_L) {
    nlohmann::json j;
    j["format"] = report_format;
    j["version"] = code_version;
    j["gadget"] = r.gadget;
    j["include_leading"] = r.include_leading;
    j["blocks"] = r.blocks;
    nlohmann::json m = nlohmann::json::array();
    for (int i = 0; i < r.blocks; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k <= i; ++k) row.push_back(r.matrix[i][k]);
        m.push_back(row);
    }
    j["matrix"] = m;
    nlohmann::json e = nlohmann::json::array();
    for (int i = 0; i < 8; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k <= i; ++k) row.push_back(r.ec_parts[i][k]);
        e.push_back(row);
    }
    j["ec_parts"] = e;
    j["z2_locations_by_block"] = r.z2_raw_by_block;
    j["pairs"] = r.pairs;
    j["z2"] = r.z2;
    j["C"] = r.C;
    j["L"] = r.L;
    j["B"] = r.B;
    j["reference_L"] = reference_L;
    j["B_at_reference_L"] = compute_B(reference_L);
    j["deviations"] = r.deviations;
    return j;
}

inline malignant_report count_report(extended_kind k, bool include_leading, const schedule_options& so = {}) {
    auto r = count_malignant_pairs<term_state>(k, include_leading, so);
    r.deviations = schedule_deviations(k, so);
    return r;
}

inline std::string report_text(const malignant_report& r, extended_kind k) {
    return to_json(r, k == extended_kind::memory ? reference_L_memory : reference_L_cz).dump(2) + "\n";
}

} // namespace adft
