#pragma once

#include "engine.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace adft {

struct codeword {
    cplx a = 1.0, b = 0.0;
};

// |0>_L = (|0000> + |1111>)/sqrt2, |1>_L = (|1100> + |0011>)/sqrt2, qubit 1 most significant
inline cvec logical_ket(int bit) {
    cvec v = cvec::Zero(16);
    if (bit == 0)
        v(0b0000) = v(0b1111) = inv_sqrt2;
    else
        v(0b1100) = v(0b0011) = inv_sqrt2;
    return v;
}

// encoding isometry V: logical qubit -> 4 qubits
inline cmat encoder() {
    cmat v(16, 2);
    v.col(0) = logical_ket(0);
    v.col(1) = logical_ket(1);
    return v;
}

inline cvec encode_ket(const codeword& c) { return c.a * logical_ket(0) + c.b * logical_ket(1); }

inline operator_state encode(cplx a, cplx b, const std::vector<int>& labels = {0, 1, 2, 3}) {
    if (std::abs(std::norm(a) + std::norm(b) - 1.0) > 1e-10) throw std::invalid_argument("encode: amplitudes not normalised");
    return pure_state(labels, encode_ket({a, b}));
}

enum class logical_name { X, Z };

// X = XXII, Z = ZIZI on the block's four qubits
inline std::vector<gate_spec> logical_operator(logical_name n, const std::array<int, 4>& q = {0, 1, 2, 3}) {
    if (n == logical_name::X) return {{gate_kind::X, {q[0]}}, {gate_kind::X, {q[1]}}};
    return {{gate_kind::Z, {q[0]}}, {gate_kind::Z, {q[2]}}};
}

struct syndrome_record {
    std::optional<int> s1, s2;
    std::optional<int> u1, v1, u2, v2;
    std::optional<std::array<int, 4>> r;
    std::optional<int> s12, s34;
    std::optional<int> c1, c2;
};

enum class verdict { no_damping, qubit_damped, parity_cnot_fault, flag_fault, data_fault_in_m1, unknown };

struct diagnosis {
    verdict v = verdict::unknown;
    // damped or flagged qubit (1..4), parity block (12 or 34), or M1 class (2..6)
    int index = 0;

    bool operator==(const diagnosis&) const = default;
};

inline std::string to_string(const diagnosis& d) {
    switch (d.v) {
    case verdict::no_damping: return "NoDamping";
    case verdict::qubit_damped: return "QubitDamped(" + std::to_string(d.index) + ")";
    case verdict::parity_cnot_fault: return "ParityCnotFault(" + std::to_string(d.index) + ")";
    case verdict::flag_fault: return "FlagFault(" + std::to_string(d.index) + ")";
    case verdict::data_fault_in_m1: return "DataFaultInM1(C" + std::to_string(d.index) + ")";
    case verdict::unknown: return "Unknown";
    }
    return "?";
}

inline int r_pattern(const std::array<int, 4>& r) { return (r[0] << 3) | (r[1] << 2) | (r[2] << 1) | r[3]; }

// Table lookup on the classical record. Inconsistent records give Unknown.
inline diagnosis diagnose(const syndrome_record& rec) {
    const int s1 = rec.s1.value_or(0), s2 = rec.s2.value_or(0);
    if (s1 && s2) return {verdict::unknown, 0};
    if (s1 || s2) {
        auto u = s1 ? rec.u1 : rec.u2;
        auto v = s1 ? rec.v1 : rec.v2;
        if (!u || !v) return {verdict::unknown, 0};
        const int base = s1 ? 1 : 3;
        if (*u == 0 && *v == 1) return {verdict::qubit_damped, base};
        if (*u == 1 && *v == 0) return {verdict::qubit_damped, base + 1};
        if (*u == 1 && *v == 1) return {verdict::parity_cnot_fault, s1 ? 12 : 34};
        return {verdict::unknown, 0};
    }
    if (!rec.r) return {verdict::no_damping, 0};
    switch (r_pattern(*rec.r)) {
    case 0b0000: return {verdict::no_damping, 0};
    case 0b1100: return {verdict::data_fault_in_m1, 2};
    case 0b1110: return {verdict::data_fault_in_m1, 3};
    case 0b1111: return {verdict::data_fault_in_m1, 4};
    case 0b0111: return {verdict::data_fault_in_m1, 5};
    case 0b0011: return {verdict::data_fault_in_m1, 6};
    default: break;
    }
    for (int i = 0; i < 4; ++i) {
        if (r_pattern(*rec.r) != (1 << (3 - i))) continue;
        auto par = i < 2 ? rec.s12 : rec.s34;
        if (!par) return {verdict::unknown, 0};
        return {*par ? verdict::qubit_damped : verdict::flag_fault, i + 1};
    }
    return {verdict::unknown, 0};
}

template <class State>
struct decode_result {
    State logical;   // block replaced by one logical qubit
    State leaked;    // branches with both parities odd, undecoded
    bool has_logical = false;
    bool has_leak = false;
    std::vector<State> parts;  // decoder branches, kept when requested
};

// Noiseless error correction of one block followed by V^dagger. The block's
// four labels are replaced by out_label. Decoder branches are summed.
template <class State>
decode_result<State> ideal_decode_block(const State& in, const std::array<int, 4>& d, int out_label,
                                        bool keep_parts = false) {
    decode_result<State> res;
    const cmat vdag = encoder().adjoint();
    auto finish = [&](State st) {
        st.apply_isometry(vdag, {d[0], d[1], d[2], d[3]}, {out_label});
        if (st.zero()) return;
        if (keep_parts) res.parts.push_back(st);
        if (!res.has_logical) {
            res.logical = std::move(st);
            res.has_logical = true;
        } else {
            res.logical.accumulate(st);
        }
    };
    auto xfix = [&](State st, int zq) {
        for (int b = 0; b < 2; ++b) {
            State t = st;
            t.project_xstring({d[0], d[1], d[2], d[3]}, b);
            if (t.zero()) continue;
            if (b) t.gate(gate_kind::Z, {zq});
            finish(std::move(t));
        }
    };
    for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2) {
            State t = in;
            t.project_parity(d[0], d[1], s1);
            t.project_parity(d[2], d[3], s2);
            if (t.zero()) continue;
            if (s1 && s2) {
                if (!res.has_leak) {
                    res.leaked = std::move(t);
                    res.has_leak = true;
                } else {
                    res.leaked.accumulate(t);
                }
                continue;
            }
            if (!s1 && !s2) {
                xfix(std::move(t), d[0]);
                continue;
            }
            const int a = s1 ? d[0] : d[2], b = s1 ? d[1] : d[3];
            // the damped qubit reads 0, its partner 1
            for (int damped = 0; damped < 2; ++damped) {
                State w = t;
                const int k = damped == 0 ? a : b;
                w.project(a, damped == 0 ? basis::zero : basis::one);
                w.project(b, damped == 0 ? basis::one : basis::zero);
                if (w.zero()) continue;
                w.gate(gate_kind::X, {k});
                xfix(std::move(w), k);
            }
        }
    return res;
}

// 4-qubit operator in, 1-qubit logical operator out
struct decode_report {
    double leak_weight = 0;
    std::string residual = "ideal";
};

inline std::pair<operator_state, decode_report> ideal_decode(const operator_state& in) {
    if (in.size() != 4) throw std::invalid_argument("ideal_decode: expects a 4-qubit block");
    dense_state d;
    d.st = in;
    const auto& l = in.qubit_labels;
    auto r = ideal_decode_block(d, {l[0], l[1], l[2], l[3]}, l[0]);
    decode_report rep;
    if (r.has_leak) rep.leak_weight = r.leaked.trace();
    if (std::abs(in.trace()) < 1e-15) rep.residual = "undefined-normalisation";
    operator_state out;
    if (r.has_logical) {
        out = r.logical.st;
    } else {
        out = alloc_state({l[0]}, "0");
        out.matrix.setZero();
    }
    out.trace_weight = out.trace();
    return {out, rep};
}

// Names the Pauli relating a decoded one-qubit output to the ideal output
// when it is a pure Pauli image; "mixed" otherwise.
inline std::string classify_residual(const cmat& decoded, const cmat& ideal, double leak = 0.0) {
    if (leak > 1e-9) return "leakage";
    const double tr = decoded.trace().real();
    if (std::abs(tr) < 1e-15) return decoded.cwiseAbs().maxCoeff() < 1e-9 ? "ideal" : "mixed";
    const cmat n = decoded / tr;
    const cplx i1(0, 1);
    cmat x(2, 2), y(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    y << 0, -i1, i1, 0;
    z << 1, 0, 0, -1;
    const std::array<std::pair<const char*, cmat>, 4> ps{{{"ideal", cmat::Identity(2, 2)},
                                                         {"logical-X", x},
                                                         {"logical-Y", y},
                                                         {"logical-Z", z}}};
    for (auto& [name, p] : ps)
        if ((n - p * ideal * p.adjoint()).cwiseAbs().maxCoeff() < 1e-9) return name;
    return "mixed";
}

} // namespace adft
