#pragma once

#include "code.hpp"
#include "runner.hpp"

#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace adft {

using block = std::array<int, 4>;

// sub-circuit parts, used in location keys
namespace part {
inline constexpr int entangle = 1;        // flags coupled to data
inline constexpr int syndrome = 2;        // S: parities and conditional Z measurements
inline constexpr int decouple = 3;        // damped path: flags released
inline constexpr int recover_damped = 4;  // damped path: R
inline constexpr int m1 = 5;              // eight-qubit X string
inline constexpr int flags = 6;           // decoupling and flag readout
inline constexpr int parity = 7;          // second parity check for single-bit flags
inline constexpr int recover = 8;         // no-damping path: R
inline constexpr int logical = 9;         // transversal XXII of the logical X gadget
inline constexpr int cross = 10;          // cross-block Z corrections
inline constexpr int gate = 11;           // memory rest step, CZ or CCZ layer
inline constexpr int bell = 12;           // Bell-pair preparation
inline constexpr int prep = 13;           // logical-state combination and checks
inline constexpr int meas = 14;           // logical measurements
} // namespace part

struct schedule_options {
    // flags idle (rest locations) while the parities are measured
    bool flag_rest_in_syndrome = false;
    // the other data pair idles during the conditional Z measurements
    bool data_rest_in_uv = true;
    // data qubits idle inside R (M2 and the X/Z correction steps)
    bool data_rest_in_recovery = false;
};

inline std::vector<int> cat(std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

inline std::vector<int> vec(const block& b) { return {b[0], b[1], b[2], b[3]}; }

// P: two CNOTs onto a fresh |0> ancilla, Z readout into key. Three steps.
template <class State>
void parity_measurement(runner<State>& R, int a, int b, const std::string& key, int step0, std::vector<int> scope) {
    const int anc = R.fresh();
    scope.push_back(anc);
    // b idles from its own CNOT on, not before
    std::vector<int> first;
    for (int q : scope)
        if (q != b) first.push_back(q);
    R.step(step0, {prep0(anc), g2(gate_kind::CNOT, a, anc)}, first);
    R.step(step0 + 1, {g2(gate_kind::CNOT, b, anc)}, scope);
    R.step(step0 + 2, {mz(anc, key)}, scope);
}

// non-destructive Z measurement through an ancilla. Two steps.
template <class State>
void z_measurement(runner<State>& R, int q, const std::string& key, int step0, std::vector<int> scope) {
    const int anc = R.fresh();
    scope.push_back(anc);
    R.step(step0, {prep0(anc), g2(gate_kind::CNOT, q, anc)}, scope);
    R.step(step0 + 1, {mz(anc, key)}, scope);
}

// M2: |+> ancilla controls CNOTs onto the four data qubits, X readout. Six steps.
template <class State>
void m2_xxxx(runner<State>& R, const block& d, const std::string& key, int step0, const schedule_options& so) {
    const int anc = R.fresh();
    auto scope = [&](int k) {
        if (so.data_rest_in_recovery) return cat(vec(d), {anc});
        if (k < 0) return std::vector<int>{anc};
        return std::vector<int>{anc, d[k]};
    };
    R.step(step0, {prep_plus(anc)}, scope(-1));
    for (int k = 0; k < 4; ++k) R.step(step0 + 1 + k, {g2(gate_kind::CNOT, anc, d[k])}, scope(k));
    R.step(step0 + 5, {mx(anc, key)}, scope(-1));
}

// R: X on xs, then M2 and Z on zq when its outcome is 1 (zq < 0 skips M2)
template <class State>
void recovery(runner<State>& R, const block& d, const std::vector<int>& xs, int zq, const std::string& pre,
              const schedule_options& so) {
    const std::vector<int> idle = so.data_rest_in_recovery ? vec(d) : std::vector<int>{};
    if (!xs.empty()) {
        std::vector<circuit_op> ops;
        for (int q : xs) ops.push_back(g1(gate_kind::X, q));
        R.step(1, ops, idle);
    }
    if (zq < 0) return;
    m2_xxxx(R, d, pre + "c2", 2, so);
    R.split({pre + "c2"}, [&](runner<State>& B) {
        if (B.bit(pre + "c2")) B.step(8, {g1(gate_kind::Z, zq)}, idle);
    });
    R.forget({pre + "c2"});
}

// M1 targets in CNOT order: d1..d4 then f1..f4
inline std::array<int, 8> m1_order(const block& d, const block& f) {
    return {d[0], d[1], d[2], d[3], f[0], f[1], f[2], f[3]};
}

inline std::vector<std::string> ec_local_keys(const std::string& pre) {
    std::vector<std::string> k;
    for (auto s : {"s1", "s2", "u1", "v1", "u2", "v2", "r1", "r2", "r3", "r4", "s12", "s34", "c2"})
        k.push_back(pre + s);
    return k;
}

// syndrome record from the bits of one branch
inline syndrome_record record_of(const std::map<std::string, int>& bits, const std::string& pre) {
    syndrome_record r;
    auto get = [&](const char* k) -> std::optional<int> {
        auto it = bits.find(pre + k);
        if (it == bits.end()) return std::nullopt;
        return it->second;
    };
    r.s1 = get("s1");
    r.s2 = get("s2");
    r.u1 = get("u1");
    r.v1 = get("v1");
    r.u2 = get("u2");
    r.v2 = get("v2");
    if (get("r1")) r.r = std::array<int, 4>{*get("r1"), *get("r2"), *get("r3"), *get("r4")};
    r.s12 = get("s12");
    r.s34 = get("s34");
    r.c1 = get("c1");
    r.c2 = get("c2");
    return r;
}

// EC gadget (lx = false) or logical X gadget (lx = true) on block d. Leaves
// pre+"c1" (M1 outcome, 0 when M1 did not run) and pre+"dmg" (qubit 1..4
// found damped by S, 0 otherwise) in the record; all other bits are dropped
// unless keep_record is set.
template <class State>
void ec_gadget(runner<State>& R, const block& d, bool lx, const std::string& pre, const schedule_options& so = {},
               bool keep_record = false) {
    const block f{R.fresh(), R.fresh(), R.fresh(), R.fresh()};
    const auto data = vec(d);
    const auto df = cat(data, vec(f));
    const int part0 = R.part;

    // flag k is prepared in the step of its CNOT
    R.part = part::entangle;
    for (int k = 0; k < 4; ++k) {
        std::vector<int> scope = data;
        for (int j = 0; j <= k; ++j) scope.push_back(f[j]);
        R.step(k + 1, {prep0(f[k]), g2(gate_kind::CNOT, d[k], f[k])}, scope);
    }

    R.part = part::syndrome;
    std::vector<int> sc12{d[0], d[1]}, sc34{d[2], d[3]};
    if (so.flag_rest_in_syndrome) {
        sc12 = cat(sc12, {f[0], f[1]});
        sc34 = cat(sc34, {f[2], f[3]});
    }
    parity_measurement(R, d[0], d[1], pre + "s1", 1, sc12);
    parity_measurement(R, d[2], d[3], pre + "s2", 1, sc34);

    R.split({pre + "s1", pre + "s2"}, [&](runner<State>& B) {
        const int s1 = B.bit(pre + "s1"), s2 = B.bit(pre + "s2");
        if (s1 && s2) {
            B.mark_unknown();
            for (int q : f) B.trace_out(q);
            B.set_bit(pre + "c1", 0);
            B.set_bit(pre + "dmg", 0);
            return;
        }
        if (s1 || s2) {
            const int a = s1 ? d[0] : d[2], b = s1 ? d[1] : d[3];
            const std::string ku = pre + (s1 ? "u1" : "u2"), kv = pre + (s1 ? "v1" : "v2");
            std::vector<int> su{a};
            if (so.data_rest_in_uv) su = cat(su, s1 ? std::vector<int>{d[2], d[3]} : std::vector<int>{d[0], d[1]});
            z_measurement(B, a, ku, 4, su);
            z_measurement(B, b, kv, 4, {b});
            B.split({ku, kv}, [&](runner<State>& C) {
                const diagnosis dg = diagnose(record_of(C.br.front().bits, pre));
                C.part = part::decouple;
                std::vector<circuit_op> dec;
                for (int k = 0; k < 4; ++k) dec.push_back(g2(gate_kind::CNOT, d[k], f[k]));
                C.step(1, dec, df);
                for (int q : f) C.trace_out(q);
                if (lx) {
                    C.part = part::logical;
                    C.step(1, {g1(gate_kind::X, d[0]), g1(gate_kind::X, d[1])}, data);
                }
                C.part = part::recover_damped;
                C.set_bit(pre + "c1", 0);
                C.set_bit(pre + "dmg", 0);
                if (dg.v == verdict::qubit_damped) {
                    // under XXII a lowering error on qubit k becomes a raising
                    // error on the same qubit, so the correction target is unchanged
                    const int k = dg.index - 1;
                    recovery(C, d, {d[k]}, d[k], pre, so);
                    C.set_bit(pre + "dmg", dg.index);
                } else if (dg.v == verdict::parity_cnot_fault) {
                    recovery(C, d, {}, dg.index == 12 ? d[0] : d[2], pre, so);
                } else {
                    C.mark_unknown();
                }
            });
            return;
        }

        if (lx) {
            B.part = part::logical;
            B.step(1, {g1(gate_kind::X, d[0]), g1(gate_kind::X, d[1])}, df);
        }
        B.part = part::m1;
        const int anc = B.fresh();
        const auto dfa = cat(df, {anc});
        B.step(1, {prep_plus(anc)}, dfa);
        const auto order = m1_order(d, f);
        for (int j = 0; j < 8; ++j) B.step(2 + j, {g2(gate_kind::CNOT, anc, order[j])}, dfa);

        B.part = part::flags;
        std::vector<circuit_op> dec;
        for (int k = 0; k < 4; ++k) dec.push_back(g2(gate_kind::CNOT, d[k], f[k]));
        circuit_op m = mx(anc, pre + "c1");
        m.part = part::m1;
        m.step = 10;
        dec.push_back(m);
        B.step(1, dec, df);
        std::vector<circuit_op> reads;
        for (int k = 0; k < 4; ++k) reads.push_back(mz(f[k], pre + "r" + std::to_string(k + 1)));
        B.step(2, reads, df);

        B.split({pre + "r1", pre + "r2", pre + "r3", pre + "r4"}, [&](runner<State>& C) {
            auto& bits = C.br.front().bits;
            int r = (bits.at(pre + "r1") << 3) | (bits.at(pre + "r2") << 2) | (bits.at(pre + "r3") << 1) |
                    bits.at(pre + "r4");
            // the transversal XXII flips flags 1 and 2 on the fault-free path
            if (lx) r ^= 0b1100;
            C.set_bit(pre + "dmg", 0);
            int single = -1;
            for (int i = 0; i < 4; ++i)
                if (r == (1 << (3 - i))) single = i;
            if (single >= 0) {
                const bool first = single < 2;
                const std::string kp = pre + (first ? "s12" : "s34");
                C.part = part::parity;
                parity_measurement(C, first ? d[0] : d[2], first ? d[1] : d[3], kp, 1, data);
                C.split({kp}, [&](runner<State>& D) {
                    D.part = part::recover;
                    const int q = d[single];
                    if (D.bit(kp))
                        recovery(D, d, {q}, q, pre, so);
                    else
                        recovery(D, d, {}, q, pre, so);
                });
            } else if (r == 0b1100) {
                C.part = part::recover;
                C.step(1, {g1(gate_kind::X, d[2]), g1(gate_kind::X, d[3])}, data);
            } else if (r == 0b1110) {
                C.part = part::recover;
                C.step(1, {g1(gate_kind::X, d[3])}, data);
            }
        });
    });
    if (!keep_record) R.forget(ec_local_keys(pre));
    R.part = part0;
}

// CZ pairing between blocks: 1-1, 2-3, 3-2, 4-4
inline constexpr std::array<int, 4> cz_partner{0, 2, 1, 3};

struct segments {
    int layer = 0;
    std::vector<int> trailing;
};

// transversal CZ layer, one EC per block, then the cross-block Z
template <class State>
void cz_gadget(runner<State>& R, const block& a, const block& b, const segments& sg, const std::string& pre,
               const schedule_options& so = {}) {
    R.seg = sg.layer;
    R.part = part::gate;
    std::vector<circuit_op> layer;
    for (int i = 0; i < 4; ++i) layer.push_back(g2(gate_kind::CZ, a[i], b[cz_partner[i]]));
    R.step(1, layer, cat(vec(a), vec(b)));
    const std::string pa = pre + "A.", pb = pre + "B.";
    R.seg = sg.trailing.at(0);
    ec_gadget(R, a, false, pa, so);
    R.seg = sg.trailing.at(1);
    ec_gadget(R, b, false, pb, so);
    R.seg = sg.layer;
    R.part = part::cross;
    R.split({pa + "dmg", pa + "c1", pb + "dmg", pb + "c1"}, [&](runner<State>& B) {
        std::vector<circuit_op> ops;
        const int da = B.bit(pa + "dmg"), db = B.bit(pb + "dmg");
        if (da > 0 && B.bit(pb + "c1")) ops.push_back(g1(gate_kind::Z, b[cz_partner[da - 1]]));
        if (db > 0 && B.bit(pa + "c1")) ops.push_back(g1(gate_kind::Z, a[cz_partner[db - 1]]));
        if (!ops.empty()) B.step(1, ops, {});
    });
    R.forget({pa + "dmg", pa + "c1", pb + "dmg", pb + "c1"});
}

// CCZ triples (block A, B, C qubit indices) for the two layers
inline constexpr std::array<std::array<std::array<int, 3>, 4>, 2> ccz_layout{{
    {{{0, 0, 0}, {1, 2, 2}, {2, 1, 3}, {3, 3, 1}}},
    {{{2, 2, 2}, {3, 0, 0}, {0, 3, 1}, {1, 1, 3}}},
}};

template <class State>
void ccz_gadget(runner<State>& R, const std::array<block, 3>& blk, const segments& sg, const std::string& pre,
                const schedule_options& so = {}) {
    R.seg = sg.layer;
    R.part = part::gate;
    const auto all = cat(cat(vec(blk[0]), vec(blk[1])), vec(blk[2]));
    for (int s = 0; s < 2; ++s) {
        std::vector<circuit_op> ops;
        for (auto& t : ccz_layout[s]) ops.push_back(g3(gate_kind::CCZ, blk[0][t[0]], blk[1][t[1]], blk[2][t[2]]));
        R.step(s + 1, ops, all);
    }
    std::array<std::string, 3> p{pre + "A.", pre + "B.", pre + "C."};
    for (int i = 0; i < 3; ++i) {
        R.seg = sg.trailing.at(i);
        ec_gadget(R, blk[i], false, p[i], so);
    }
    R.seg = sg.layer;
    R.part = part::cross;
    std::vector<std::string> keys;
    for (auto& s : p) {
        keys.push_back(s + "dmg");
        keys.push_back(s + "c1");
    }
    R.split(keys, [&](runner<State>& B) {
        std::vector<circuit_op> ops;
        for (int x = 0; x < 3; ++x) {
            const int dm = B.bit(p[x] + "dmg");
            if (dm == 0) continue;
            // the second-layer CCZ holding the damped qubit names the partners
            for (auto& t : ccz_layout[1]) {
                if (t[x] != dm - 1) continue;
                for (int y = 0; y < 3; ++y)
                    if (y != x && B.bit(p[y] + "c1")) ops.push_back(g1(gate_kind::Z, blk[y][t[y]]));
            }
        }
        if (!ops.empty()) B.step(1, ops, {});
    });
    R.forget(keys);
}

enum class bell_phase { none, S, T };

// Verified Bell pair on (s1, s2): two raw pairs, transversal CNOTs from the
// first onto the second, X readout of the first and a parity check of the
// second. Rejected branches carry pre+"rej" = 1.
template <class State>
void bell_prep(runner<State>& R, int s1, int s2, const std::string& pre, bell_phase ph = bell_phase::none) {
    const int f1 = R.fresh(), f2 = R.fresh(), p = R.fresh();
    const int part0 = R.part;
    R.part = part::bell;
    R.step(1, {prep_plus(f1), prep0(f2), prep_plus(s1), prep0(s2)}, {f1, f2, s1, s2});
    R.step(2, {g2(gate_kind::CNOT, f1, f2), g2(gate_kind::CNOT, s1, s2)}, {f1, f2, s1, s2});
    R.step(3, {g2(gate_kind::CNOT, f1, s1), g2(gate_kind::CNOT, f2, s2)}, {f1, f2, s1, s2});
    R.step(4, {mx(f1, pre + "x1"), mx(f2, pre + "x2"), prep0(p), g2(gate_kind::CNOT, s1, p)}, {s1, s2, p});
    R.step(5, {g2(gate_kind::CNOT, s2, p)}, {s1, s2, p});
    R.step(6, {mz(p, pre + "pz")}, {s1, s2});
    if (ph != bell_phase::none) R.step(7, {g1(ph == bell_phase::S ? gate_kind::S : gate_kind::T, s2)}, {s1, s2});
    for (auto& b : R.br) {
        const int rej = (b.bits.at(pre + "x1") ^ b.bits.at(pre + "x2")) | b.bits.at(pre + "pz");
        b.bits.erase(pre + "x1");
        b.bits.erase(pre + "x2");
        b.bits.erase(pre + "pz");
        b.bits["rej"] = (b.bits.count("rej") ? b.bits["rej"] : 0) | rej;
    }
    R.forget({});
    R.part = part0;
}

enum class logical_prep { zero_L, plus_L, PhiS, PhiT };

inline std::string prep_name(logical_prep k) {
    switch (k) {
    case logical_prep::zero_L: return "zero_L";
    case logical_prep::plus_L: return "plus_L";
    case logical_prep::PhiS: return "PhiS";
    case logical_prep::PhiT: return "PhiT";
    }
    return "?";
}

// Prepares a fresh block d. Rejected branches carry "rej" = 1.
template <class State>
void prep_logical(runner<State>& R, const block& d, logical_prep kind, const std::string& pre) {
    const int part0 = R.part;
    for (auto& b : R.br)
        if (!b.bits.count("rej")) b.bits["rej"] = 0;
    bell_prep(R, d[0], d[1], pre + "b1.");
    if (kind == logical_prep::plus_L) {
        bell_prep(R, d[2], d[3], pre + "b2.");
        R.part = part0;
        return;
    }
    R.part = part::prep;
    if (kind == logical_prep::zero_L) {
        R.step(8, {prep0(d[2]), prep0(d[3]), g2(gate_kind::CNOT, d[0], d[2]), g2(gate_kind::CNOT, d[1], d[3])},
               vec(d));
    } else {
        bell_prep(R, d[2], d[3], pre + "b2.", kind == logical_prep::PhiS ? bell_phase::S : bell_phase::T);
        R.part = part::prep;
        R.step(8, {g2(gate_kind::CNOT, d[0], d[2]), g2(gate_kind::CNOT, d[1], d[3])}, vec(d));
    }
    parity_measurement(R, d[0], d[1], pre + "p12", 9, {d[0], d[1]});
    parity_measurement(R, d[2], d[3], pre + "p34", 9, {d[2], d[3]});
    for (auto& b : R.br) {
        b.bits["rej"] |= b.bits.at(pre + "p12") | b.bits.at(pre + "p34");
        b.bits.erase(pre + "p12");
        b.bits.erase(pre + "p34");
    }
    R.forget({});
    R.part = part0;
}

// Z-basis readout of a block: -1 for an undecodable string
inline int decode_logical_z(const std::array<int, 4>& b) {
    const int ones = b[0] + b[1] + b[2] + b[3];
    if (ones % 2 == 0) {
        if (b[0] == b[1] && b[2] == b[3]) return b[0] ^ b[2];
        return -1;
    }
    return ones >= 3 ? 0 : 1;
}

// three Bell readouts (first bit X, second bit Z); -1 when none is valid
inline int decode_logical_x(const std::array<std::array<int, 2>, 3>& m) {
    int n0 = 0, n1 = 0;
    for (auto& o : m) {
        if (o[1]) continue;
        (o[0] ? n1 : n0)++;
    }
    if (n0 + n1 == 0) return -1;
    if (n0 != n1) return n1 > n0 ? 1 : 0;
    if (!m[2][1]) return m[2][0];
    return -1;
}

template <class State>
void meas_logical_z(runner<State>& R, const block& d, const std::string& key) {
    const int part0 = R.part;
    R.part = part::meas;
    std::vector<circuit_op> ops;
    for (int k = 0; k < 4; ++k) ops.push_back(mz(d[k], key + ".z" + std::to_string(k + 1)));
    R.step(1, ops, vec(d));
    for (auto& b : R.br) {
        std::array<int, 4> z{};
        for (int k = 0; k < 4; ++k) {
            const std::string kk = key + ".z" + std::to_string(k + 1);
            z[k] = b.bits.at(kk);
            b.bits.erase(kk);
        }
        b.bits[key] = decode_logical_z(z);
    }
    R.forget({});
    R.part = part0;
}

// X-bar = XXII readout with a verified Bell pair (a1, a2) coupled to qubits
// 1 and 2, then Bell readouts of (a1,a2), (d1,d2) and (d3,d4).
template <class State>
void meas_logical_x(runner<State>& R, const block& d, const std::string& key) {
    const int part0 = R.part;
    const int a1 = R.fresh(), a2 = R.fresh();
    for (auto& b : R.br)
        if (!b.bits.count("rej")) b.bits["rej"] = 0;
    bell_prep(R, a1, a2, key + ".b.");
    R.part = part::meas;
    const auto all = cat({a1, a2}, vec(d));
    R.step(1, {g2(gate_kind::CNOT, a1, d[0]), g2(gate_kind::CNOT, a2, d[1])}, all);
    R.step(2, {g2(gate_kind::CNOT, a1, a2), g2(gate_kind::CNOT, d[0], d[1]), g2(gate_kind::CNOT, d[2], d[3])}, all);
    R.step(3, {mx(a1, key + ".x1"), mz(a2, key + ".z1"), mx(d[0], key + ".x2"), mz(d[1], key + ".z2"),
               mx(d[2], key + ".x3"), mz(d[3], key + ".z3")},
           all);
    for (auto& b : R.br) {
        std::array<std::array<int, 2>, 3> m{};
        for (int i = 0; i < 3; ++i) {
            const std::string kx = key + ".x" + std::to_string(i + 1), kz = key + ".z" + std::to_string(i + 1);
            m[i] = {b.bits.at(kx), b.bits.at(kz)};
            b.bits.erase(kx);
            b.bits.erase(kz);
        }
        b.bits[key] = decode_logical_x(m);
    }
    R.forget({});
    R.part = part0;
}

// logical Z gadget: ZIZI then an EC
template <class State>
void logical_z_gadget(runner<State>& R, const block& d, const std::string& pre, const schedule_options& so = {}) {
    R.part = part::logical;
    R.step(2, {g1(gate_kind::Z, d[0]), g1(gate_kind::Z, d[2])}, vec(d));
    ec_gadget(R, d, false, pre, so);
    R.forget({pre + "c1", pre + "dmg"});
}

template <class State>
void logical_x_gadget(runner<State>& R, const block& d, const std::string& pre, const schedule_options& so = {}) {
    ec_gadget(R, d, true, pre, so);
    R.forget({pre + "c1", pre + "dmg"});
}

enum class teleported { H, S, T };

// Gate teleportation: g1 on the input, logical CZ with the resource block,
// X-bar readout of the input, g2 on the resource when the readout is 1.
// Returns the block holding the output. Segments are not distinguished.
template <class State>
block teleport_gate(runner<State>& R, const block& in, teleported g, const std::string& pre,
                    const schedule_options& so = {}) {
    block src = in;
    if (g != teleported::H) src = teleport_gate(R, in, teleported::H, pre + "h.", so);
    const block res{R.fresh(), R.fresh(), R.fresh(), R.fresh()};
    const logical_prep kind =
        g == teleported::H ? logical_prep::plus_L : (g == teleported::S ? logical_prep::PhiS : logical_prep::PhiT);
    prep_logical(R, res, kind, pre + "r.");
    cz_gadget(R, src, res, segments{R.seg, {R.seg, R.seg}}, pre + "cz.", so);
    meas_logical_x(R, src, pre + "m");
    block out = res;
    R.split({pre + "m"}, [&](runner<State>& B) {
        if (B.bit(pre + "m") != 1) return;
        switch (g) {
        case teleported::H: logical_x_gadget(B, res, pre + "g2.", so); break;
        case teleported::S:
            logical_z_gadget(B, res, pre + "g2z.", so);
            logical_x_gadget(B, res, pre + "g2x.", so);
            break;
        case teleported::T: {
            logical_x_gadget(B, res, pre + "g2x.", so);
            // S-bar by teleportation moves the state to a new block; its labels
            // are renamed to res so both branches end on the same block
            const block s = teleport_gate(B, res, teleported::S, pre + "g2s.", so);
            for (int k = 0; k < 4; ++k) B.relabel(s[k], res[k]);
            break;
        }
        }
    });
    return out;
}

} // namespace adft
