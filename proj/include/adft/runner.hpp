#pragma once

#include "noise.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace adft {

// One qubit position in one time step. seg identifies the gadget instance
// (e.g. leading or trailing EC of a block), part the sub-circuit inside it.
struct location {
    int seg = 0;
    int part = 0;
    int step = 0;
    int qubit = 0;
    char op = 'r';  // g gate, p preparation, m measurement, r rest

    std::uint64_t key() const {
        return (std::uint64_t(seg) << 48) | (std::uint64_t(part) << 40) | (std::uint64_t(step) << 24) |
               std::uint64_t(qubit);
    }
};

inline bool operator<(const location& a, const location& b) { return a.key() < b.key(); }

enum class op_kind { prep_zero, prep_plus, gate, meas_z, meas_x };

struct circuit_op {
    op_kind kind = op_kind::gate;
    gate_kind g = gate_kind::I;
    std::vector<int> q;
    std::string key;     // classical record name for measurements
    int part = -1;       // overrides the runner's current part for this op's locations
    int step = -1;       // and its step index
};

inline circuit_op prep0(int q) { return {op_kind::prep_zero, gate_kind::I, {q}, "", -1}; }
inline circuit_op prep_plus(int q) { return {op_kind::prep_plus, gate_kind::I, {q}, "", -1}; }
inline circuit_op g1(gate_kind g, int q) { return {op_kind::gate, g, {q}, "", -1}; }
inline circuit_op g2(gate_kind g, int a, int b) { return {op_kind::gate, g, {a, b}, "", -1}; }
inline circuit_op g3(gate_kind g, int a, int b, int c) { return {op_kind::gate, g, {a, b, c}, "", -1}; }
inline circuit_op mz(int q, std::string key) { return {op_kind::meas_z, gate_kind::I, {q}, std::move(key), -1}; }
inline circuit_op mx(int q, std::string key) { return {op_kind::meas_x, gate_kind::I, {q}, std::move(key), -1}; }

template <class State>
struct branch {
    State st;
    std::map<std::string, int> bits;
    bool unknown = false;
};

template <class State>
using noise_hook = std::function<void(const location&, State&)>;

// Debug/audit trace of the executed schedule: one line per time step.
struct schedule_trace {
    std::vector<std::string> lines;
    bool enabled = false;
};

// Branch-set executor. Every op acts on all live branches; measurements
// split branches by outcome and record the bit.
template <class State>
class runner {
public:
    std::vector<branch<State>> br;
    noise_hook<State> hook;
    bool channel = false;
    int seg = 0;
    int part = 0;
    int* next_label = nullptr;
    schedule_trace* trace = nullptr;

    runner() = default;

    int fresh() { return (*next_label)++; }

    // runs one time step: preparations, gates, noise on every position
    // (including rests of scope qubits not touched), then measurements
    void step(int s, const std::vector<circuit_op>& ops, const std::vector<int>& scope) {
        std::vector<int> touched;
        for (auto& o : ops) touched.insert(touched.end(), o.q.begin(), o.q.end());
        if (trace && trace->enabled) log_step(s, ops, scope, touched);
        for (auto& b : br) {
            for (auto& o : ops) {
                switch (o.kind) {
                case op_kind::prep_zero: b.st.add_qubit(o.q[0], false); break;
                case op_kind::prep_plus:
                    b.st.add_qubit(o.q[0], true);
                    noise(o, s, o.q[0], 'p', b.st);
                    break;
                case op_kind::gate:
                    b.st.gate(o.g, o.q);
                    for (int q : o.q) noise(o, s, q, 'g', b.st);
                    break;
                default: break;
                }
            }
            for (int q : scope)
                if (std::find(touched.begin(), touched.end(), q) == touched.end())
                    call_hook(location{seg, part, s, q, 'r'}, b.st);
            for (auto& o : ops)
                if (o.kind == op_kind::meas_z || o.kind == op_kind::meas_x) noise(o, s, o.q[0], 'm', b.st);
        }
        for (auto& o : ops) {
            if (o.kind != op_kind::meas_z && o.kind != op_kind::meas_x) continue;
            std::vector<branch<State>> out;
            out.reserve(br.size() * 2);
            for (auto& b : br) {
                for (int bit = 0; bit < 2; ++bit) {
                    branch<State> nb = b;
                    basis bs = o.kind == op_kind::meas_z ? (bit ? basis::one : basis::zero)
                                                         : (bit ? basis::minus : basis::plus);
                    nb.st.discard(o.q[0], bs);
                    if (nb.st.zero()) continue;
                    nb.bits[o.key] = bit;
                    out.push_back(std::move(nb));
                }
            }
            br = std::move(out);
        }
    }

    int bit(const std::string& k) const { return br.front().bits.at(k); }
    bool has_bit(const std::string& k) const { return br.front().bits.count(k) != 0; }

    // partitions branches by the given record keys and runs body on each group
    template <class F>
    void split(const std::vector<std::string>& keys, F&& body) {
        std::map<std::vector<int>, std::vector<branch<State>>> groups;
        for (auto& b : br) {
            std::vector<int> v;
            for (auto& k : keys) {
                auto it = b.bits.find(k);
                v.push_back(it == b.bits.end() ? -1 : it->second);
            }
            v.push_back(b.unknown ? 1 : 0);
            groups[v].push_back(std::move(b));
        }
        br.clear();
        // every group allocates labels from the same start, so a sub-circuit
        // keeps its qubit labels (and location keys) whichever branch runs it
        const int start = *next_label;
        int high = start;
        for (auto& [v, g] : groups) {
            int counter = start;
            runner sub = child();
            sub.next_label = &counter;
            sub.br = std::move(g);
            body(sub);
            high = std::max(high, counter);
            for (auto& b : sub.br) br.push_back(std::move(b));
        }
        *next_label = high;
    }

    // runs body on a child runner holding all branches (for a scoped part)
    template <class F>
    void with_part(int p, F&& body) {
        const int old = part;
        part = p;
        body(*this);
        part = old;
    }

    // drops record keys; in channel mode merges branches whose records coincide
    void forget(const std::vector<std::string>& keys) {
        for (auto& b : br)
            for (auto& k : keys) b.bits.erase(k);
        if (!channel) return;
        std::vector<branch<State>> out;
        for (auto& b : br) {
            bool merged = false;
            for (auto& o : out)
                if (o.bits == b.bits && o.unknown == b.unknown) {
                    o.st.accumulate(b.st);
                    merged = true;
                    break;
                }
            if (!merged) out.push_back(std::move(b));
        }
        br = std::move(out);
    }

    void set_bit(const std::string& k, int v) {
        for (auto& b : br) b.bits[k] = v;
    }

    void mark_unknown() {
        for (auto& b : br) b.unknown = true;
    }

    void relabel(int from, int to) {
        for (auto& b : br) b.st.relabel(from, to);
    }

    void trace_out(int q) {
        for (auto& b : br) b.st.trace_out(q);
    }

    runner child() const {
        runner r;
        r.hook = hook;
        r.channel = channel;
        r.seg = seg;
        r.part = part;
        r.next_label = next_label;
        r.trace = trace;
        return r;
    }

private:
    void noise(const circuit_op& o, int s, int q, char op, State& st) {
        call_hook(location{seg, o.part >= 0 ? o.part : part, o.step >= 0 ? o.step : s, q, op}, st);
    }

    void call_hook(const location& l, State& st) {
        if (hook) hook(l, st);
    }

    void log_step(int s, const std::vector<circuit_op>& ops, const std::vector<int>& scope,
                  const std::vector<int>& touched) {
        std::string line = "seg" + std::to_string(seg) + ".part" + std::to_string(part) + ".step" + std::to_string(s) + ":";
        for (auto& o : ops) {
            std::string name;
            switch (o.kind) {
            case op_kind::prep_zero: name = "prep0"; break;
            case op_kind::prep_plus: name = "prep+"; break;
            case op_kind::gate: name = gate_name(o.g); break;
            case op_kind::meas_z: name = "MZ"; break;
            case op_kind::meas_x: name = "MX"; break;
            }
            line += " " + name + "(";
            for (std::size_t i = 0; i < o.q.size(); ++i) line += (i ? "," : "") + std::to_string(o.q[i]);
            line += ")";
        }
        for (int q : scope)
            if (std::find(touched.begin(), touched.end(), q) == touched.end()) line += " rest(" + std::to_string(q) + ")";
        if (trace->lines.empty() || trace->lines.back() != line) trace->lines.push_back(line);
    }
};

} // namespace adft
