#pragma once

// Syndrome tables reproduced by fault injection into the EC and CZ gadgets.

#include "faultpaths.hpp"
#include "noise.hpp"

#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace adft {

struct table_check {
    std::string table;
    std::string row;
    std::string expected;
    std::string observed;
    bool pass = false;
};

namespace detail {

// generic codeword so that no two candidate errors coincide
inline cvec probe_codeword() {
    return encode_ket({cplx(0.6, 0.0), cplx(0.0, 0.8) * std::polar(1.0, 0.3)});
}

// 16x16 operator acting as m on data qubit k (k = 0 is the most significant)
inline cmat on_qubit(int k, const cmat& m) {
    cmat out = cmat::Zero(16, 16);
    const int bit = 3 - k;
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) {
            if ((i & ~(1 << bit)) != (j & ~(1 << bit))) continue;
            out(i, j) = m((i >> bit) & 1, (j >> bit) & 1);
        }
    return out;
}

inline cmat pauli(char p) {
    cmat m = cmat::Zero(2, 2);
    switch (p) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    case 'E': m << 0, 1, 0, 0; break;  // lowering, the damping error
    case 'P': m << 1, 0, 0, 0; break;  // (I + Z)/2
    default: m = cmat::Identity(2, 2);
    }
    return m;
}

// names of the data-block operators mapping the codeword to rho; several
// names when they agree up to a stabilizer, "mixed" when none does
inline std::vector<std::string> name_error(const cmat& rho, const cvec& psi) {
    std::vector<std::pair<std::string, cmat>> cands{{"I", cmat::Identity(16, 16)}};
    for (int k = 0; k < 4; ++k) {
        const std::string i = std::to_string(k + 1);
        cands.push_back({"E_" + i, on_qubit(k, pauli('E'))});
        cands.push_back({"I+Z_" + i, on_qubit(k, pauli('P'))});
        cands.push_back({"I-Z_" + i, on_qubit(k, cmat::Identity(2, 2) - pauli('P'))});
        cands.push_back({"X_" + i, on_qubit(k, pauli('X'))});
        cands.push_back({"Z_" + i, on_qubit(k, pauli('Z'))});
        cands.push_back({"Z_" + i + "X_" + i, on_qubit(k, pauli('Z')) * on_qubit(k, pauli('X'))});
    }
    cands.push_back({"X_3X_4", on_qubit(2, pauli('X')) * on_qubit(3, pauli('X'))});
    const cmat n = rho / rho.trace();
    std::vector<std::string> out;
    for (auto& [name, k] : cands) {
        const cvec v = k * psi;
        const double w = v.squaredNorm();
        if (w < 1e-12) continue;
        if ((n - v * v.adjoint() / w).cwiseAbs().maxCoeff() < 1e-9) out.push_back(name);
    }
    if (out.empty()) out.push_back("mixed");
    return out;
}

inline std::string join(const std::set<std::string>& s, const std::string& sep) {
    std::string out;
    for (auto& x : s) out += (out.empty() ? "" : sep) + x;
    return out.empty() ? "-" : out;
}

inline std::string r_string(int r) {
    std::string s = "(";
    for (int i = 3; i >= 0; --i) s += char('0' + ((r >> i) & 1));
    return s + ")";
}

} // namespace detail

// ----- flag-syndrome table of the EC gadget -----

struct flag_row {
    std::string fault;
    std::string error;     // alternatives separated by " or "
    int r = 0;
    std::string parity;    // None, P12->0/1, P34->0/1
    std::string recovery;  // None, X_k, Z_k, X_k/Z_k, X_3X_4
};

inline std::vector<flag_row> flag_table() {
    std::vector<flag_row> t{{"None", "I", 0b0000, "None", "None"}};
    for (int i = 1; i <= 4; ++i) {
        const std::string k = std::to_string(i), p = i <= 2 ? "P12" : "P34";
        t.push_back({"A_" + k, "E_" + k, 1 << (4 - i), p + "->1", "X_" + k + "/Z_" + k});
    }
    for (int i = 1; i <= 4; ++i) {
        const std::string k = std::to_string(i), p = i <= 2 ? "P12" : "P34";
        t.push_back({"A_" + k + "^f", "I+Z_" + k, 1 << (4 - i), p + "->0", "Z_" + k});
    }
    for (int i = 1; i <= 4; ++i) {
        const std::string k = std::to_string(i), p = i <= 2 ? "P12" : "P34";
        t.push_back({"B_" + k, "X_" + k + " or Z_" + k + "X_" + k, 1 << (4 - i), p + "->1", "X_" + k + "/Z_" + k});
    }
    t.push_back({"C_0", "I", 0b0000, "None", "None"});
    t.push_back({"C_1", "X_1", 0b1000, "P12->1", "X_1"});
    t.push_back({"C_2", "X_3X_4", 0b1100, "None", "X_3X_4"});
    t.push_back({"C_3", "X_4", 0b1110, "None", "X_4"});
    t.push_back({"C_4", "I", 0b1111, "None", "None"});
    t.push_back({"C_5", "I", 0b0111, "None", "None"});
    t.push_back({"C_6", "I", 0b0011, "None", "None"});
    t.push_back({"C_7", "I", 0b0001, "P34->0", "None"});
    t.push_back({"C_8", "I", 0b0000, "None", "None"});
    for (int i = 1; i <= 4; ++i) {
        const std::string k = std::to_string(i), p = i <= 2 ? "P12" : "P34";
        t.push_back({"D_" + k, "I or Z_" + k, 1 << (4 - i), p + "->0", "Z_" + k});
    }
    return t;
}

// fault predicate for a row label, given data and flag labels
inline std::function<bool(const location&)> flag_row_fault(const std::string& name, const block& d, const block& f) {
    if (name == "None") return [](const location&) { return false; };
    const int i = name.size() > 2 ? name[2] - '0' : 0;
    const bool flag = name.find("^f") != std::string::npos;
    switch (name[0]) {
    case 'A':
        if (flag)
            return [=, fq = f[i - 1]](const location& l) {
                return l.part == part::m1 && l.step == 5 + i && l.op == 'g' && l.qubit == fq;
            };
        return [=, dq = d[i - 1]](const location& l) {
            return l.part == part::m1 && l.step == 1 + i && l.op == 'g' && l.qubit == dq;
        };
    case 'B':
        return [dq = d[i - 1]](const location& l) { return l.part == part::syndrome && l.op == 'g' && l.qubit == dq; };
    case 'C':
        if (i == 0) return [](const location& l) { return l.part == part::m1 && l.step == 1 && l.op == 'p'; };
        return [=, d = d, f = f](const location& l) {
            bool known = false;
            for (int k = 0; k < 4; ++k) known = known || l.qubit == d[k] || l.qubit == f[k];
            return l.part == part::m1 && l.step == 1 + i && l.op == 'g' && !known;
        };
    case 'D':
        // target of the entangling CNOT d_i -> f_i
        return [=, fq = f[i - 1]](const location& l) {
            return l.part == part::entangle && l.step == i && l.op == 'g' && l.qubit == fq;
        };
    }
    throw std::invalid_argument("flag_row_fault: unknown row " + name);
}

// what one EC run shows for a row
struct flag_observation {
    std::set<int> r;
    std::vector<std::vector<std::string>> errors;  // one list of equivalent names per flag outcome and branch
    std::set<std::string> parity;
    std::set<int> x, z;  // corrected data qubits, 1-based
    double fidelity = 0.0;
};

inline std::string recovery_string(const std::set<int>& x, const std::set<int>& z) {
    std::string xs, zs;
    for (int q : x) xs += "X_" + std::to_string(q);
    for (int q : z) zs += (zs.empty() ? "" : ",") + std::string("Z_") + std::to_string(q);
    if (xs.empty() && zs.empty()) return "None";
    if (zs.empty()) return xs;
    if (xs.empty()) return zs;
    return xs + "/" + zs;
}

inline flag_observation observe_flag_row(const std::string& name, const schedule_options& so = {}) {
    int next = 0;
    runner<dense_state> R;
    R.next_label = &next;
    R.br.resize(1);
    const block d{R.fresh(), R.fresh(), R.fresh(), R.fresh()};
    // the EC gadget draws its flags next
    const block f{next, next + 1, next + 2, next + 3};
    const cvec psi = detail::probe_codeword();
    R.br[0].st.st = pure_state(vec(d), psi);
    flag_observation ob;
    const auto fault = flag_row_fault(name, d, f);
    R.hook = [&](const location& l, dense_state& st) {
        if (fault(l)) apply_fault(st, l.qubit, fault_kind::Fa);
        if (l.part == part::flags && l.step == 2 && l.op == 'm' && l.qubit == f[3]) {
            // data error conditioned on each flag outcome, just before readout
            for (int r = 0; r < 16; ++r) {
                dense_state t = st;
                for (int k = 0; k < 4; ++k) t.project(f[k], (r >> (3 - k)) & 1 ? basis::one : basis::zero);
                if (t.trace() < 1e-12) continue;
                for (int q : std::vector<int>(t.labels()))
                    if (std::find(d.begin(), d.end(), q) == d.end()) t.trace_out(q);
                ob.r.insert(r);
                ob.errors.push_back(detail::name_error(t.to_dense(vec(d)), psi));
            }
        }
        if ((l.part == part::recover || l.part == part::recover_damped) && l.op == 'g' && (l.step == 1 || l.step == 8))
            for (int k = 0; k < 4; ++k)
                if (l.qubit == d[k]) (l.step == 1 ? ob.x : ob.z).insert(k + 1);
    };
    ec_gadget(R, d, false, "", so, true);
    double tot = 0.0, fid = 0.0;
    for (auto& b : R.br) {
        for (auto k : {"s12", "s34"}) {
            auto it = b.bits.find(k);
            if (it != b.bits.end()) ob.parity.insert(std::string(k[1] == '1' ? "P12" : "P34") + "->" + std::to_string(it->second));
        }
        tot += b.st.trace();
        auto dec = ideal_decode_block(b.st, d, out_base);
        if (dec.has_logical) {
            const cmat m = dec.logical.to_dense({out_base});
            const cvec v = encoder().adjoint() * psi;
            fid += (v.adjoint() * m * v)(0, 0).real();
        }
    }
    if (ob.parity.empty()) ob.parity.insert("None");
    ob.fidelity = tot > 0 ? fid / tot : 0.0;
    return ob;
}

inline table_check check_flag_row(const flag_row& row, const schedule_options& so = {}) {
    const flag_observation ob = observe_flag_row(row.fault, so);
    std::set<std::string> allowed;
    {
        std::string e = row.error;
        for (std::size_t p; (p = e.find(" or ")) != std::string::npos; e = e.substr(p + 4)) allowed.insert(e.substr(0, p));
        allowed.insert(e);
    }
    // I+Z_k names the projector class of qubit k; the sign follows the flag outcome
    for (auto e : std::set<std::string>(allowed))
        if (e.rfind("I+Z_", 0) == 0) allowed.insert("I-Z_" + e.substr(4));
    bool ok = ob.r == std::set<int>{row.r} && !ob.errors.empty() && ob.fidelity > 1 - 1e-9;
    std::set<std::string> shown;
    for (auto& names : ob.errors) {
        auto hit = std::find_if(names.begin(), names.end(), [&](const std::string& n) { return allowed.count(n) != 0; });
        ok = ok && hit != names.end();
        shown.insert(hit != names.end() ? *hit : names.front());
    }
    ok = ok && ob.parity == std::set<std::string>{row.parity};
    const std::string rec = recovery_string(ob.x, ob.z);
    ok = ok && rec == row.recovery;

    table_check c;
    c.table = "flag-syndrome";
    c.row = row.fault;
    c.expected = row.error + " | " + detail::r_string(row.r) + " | " + row.parity + " | " + row.recovery;
    std::set<std::string> rs;
    for (int r : ob.r) rs.insert(detail::r_string(r));
    std::ostringstream o;
    o << detail::join(shown, " or ") << " | " << detail::join(rs, ",") << " | " << detail::join(ob.parity, ",")
      << " | " << rec << " | fidelity " << ob.fidelity;
    c.observed = o.str();
    c.pass = ok;
    return c;
}

// ----- diagnosis tables: damped input qubits and first-CNOT parity faults -----

struct diagnosis_row {
    std::string label;
    std::array<int, 6> bits;  // s1 s2 u1 v1 u2 v2, -1 when not extracted
    diagnosis expect;
    int damped_input = 0;     // 1..4: Fa on this input qubit
    int parity_fault = 0;     // 1 or 2: Fa on the ancilla after the first CNOT of that parity check
};

inline std::vector<diagnosis_row> diagnosis_table(bool extended) {
    std::vector<diagnosis_row> t{
        {"no damping", {0, 0, -1, -1, -1, -1}, {verdict::no_damping, 0}, 0, 0},
        {"qubit 1 damped", {1, 0, 0, 1, -1, -1}, {verdict::qubit_damped, 1}, 1, 0},
        {"qubit 2 damped", {1, 0, 1, 0, -1, -1}, {verdict::qubit_damped, 2}, 2, 0},
        {"qubit 3 damped", {0, 1, -1, -1, 0, 1}, {verdict::qubit_damped, 3}, 3, 0},
        {"qubit 4 damped", {0, 1, -1, -1, 1, 0}, {verdict::qubit_damped, 4}, 4, 0},
    };
    if (extended) {
        t.insert(t.begin() + 3, {"first CNOT of P1", {1, 0, 1, 1, -1, -1}, {verdict::parity_cnot_fault, 12}, 0, 1});
        t.push_back({"first CNOT of P2", {0, 1, -1, -1, 1, 1}, {verdict::parity_cnot_fault, 34}, 0, 2});
    }
    return t;
}

inline table_check check_diagnosis_row(const diagnosis_row& row, const std::string& table,
                                       const schedule_options& so = {}) {
    int next = 0;
    runner<dense_state> R;
    R.next_label = &next;
    R.br.resize(1);
    const block d{R.fresh(), R.fresh(), R.fresh(), R.fresh()};
    const cvec psi = detail::probe_codeword();
    R.br[0].st.st = pure_state(vec(d), psi);
    if (row.damped_input) apply_fault(R.br[0].st, d[row.damped_input - 1], fault_kind::Fa);
    std::vector<int> ancillas;
    R.hook = [&](const location& l, dense_state& st) {
        if (!row.parity_fault || l.part != part::syndrome || l.step != 1 || l.op != 'g') return;
        if (std::find(d.begin(), d.end(), l.qubit) != d.end()) return;
        if (std::find(ancillas.begin(), ancillas.end(), l.qubit) == ancillas.end()) ancillas.push_back(l.qubit);
        if (int(ancillas.size()) == row.parity_fault && ancillas.back() == l.qubit)
            apply_fault(st, l.qubit, fault_kind::Fa);
    };
    ec_gadget(R, d, false, "", so, true);

    std::set<std::string> seen_bits, seen_diag;
    double tot = 0.0, fid = 0.0;
    for (auto& b : R.br) {
        const syndrome_record rec = record_of(b.bits, "");
        std::string s;
        for (auto v : {rec.s1, rec.s2, rec.u1, rec.v1, rec.u2, rec.v2}) s += v ? char('0' + *v) : 'x';
        seen_bits.insert(s);
        seen_diag.insert(to_string(diagnose(rec)));
        tot += b.st.trace();
        auto dec = ideal_decode_block(b.st, d, out_base);
        if (dec.has_logical) {
            const cvec v = encoder().adjoint() * psi;
            fid += (v.adjoint() * dec.logical.to_dense({out_base}) * v)(0, 0).real();
        }
    }
    std::string want;
    for (int v : row.bits) want += v < 0 ? 'x' : char('0' + v);
    table_check c;
    c.table = table;
    c.row = row.label;
    c.expected = want + " -> " + to_string(row.expect);
    const double f = tot > 0 ? fid / tot : 0.0;
    c.observed = detail::join(seen_bits, ",") + " -> " + detail::join(seen_diag, ",") + " | fidelity " + std::to_string(f);
    c.pass = seen_bits == std::set<std::string>{want} && seen_diag == std::set<std::string>{to_string(row.expect)} &&
             f > 1 - 1e-9;
    return c;
}

// ----- Z errors carried across the CZ layer -----

// Fa on qubit k of one block before the CZ layer: finds the qubit of the
// other block that picks up Z, and the other block's M1 outcomes.
inline table_check check_cz_row(int k, bool damp_first, const schedule_options& so = {}) {
    int next = 0;
    runner<term_state> R;
    R.next_label = &next;
    R.br.resize(1);
    const int src = R.fresh();
    const block a{R.fresh(), R.fresh(), R.fresh(), R.fresh()};
    const block b{R.fresh(), R.fresh(), R.fresh(), R.fresh()};
    const cvec pa = detail::probe_codeword();
    const cvec pb = encode_ket({cplx(0.8, 0.0), cplx(0.6, 0.0)});
    cmat both = cmat::Zero(256, 2);
    for (int i = 0; i < 16; ++i) both.col(0).segment(16 * i, 16) = pa(i) * pb;
    R.br[0].st.add_qubit(src);
    R.br[0].st.apply_isometry(both, {src}, cat(vec(a), vec(b)));
    const block& dmg = damp_first ? a : b;
    const block& other = damp_first ? b : a;
    apply_fault(R.br[0].st, dmg[k], fault_kind::Fa);

    R.part = part::gate;
    std::vector<circuit_op> layer;
    for (int i = 0; i < 4; ++i) layer.push_back(g2(gate_kind::CZ, a[i], b[cz_partner[i]]));
    R.step(1, layer, {});

    // identify the propagated Z on a generic product state, where each Z_j is distinct
    cvec gen(256);
    for (int i = 0; i < 256; ++i) gen(i) = std::polar(1.0 + 0.01 * i, 0.37 * i * i);
    gen.normalize();
    const std::vector<int> order = cat(vec(a), vec(b));
    dense_state probe;
    probe.st = pure_state(order, gen);
    apply_fault(probe, dmg[k], fault_kind::Fa);
    for (auto& o : layer) probe.gate(o.g, o.q);
    const cmat got = probe.to_dense(order);
    std::set<int> found;
    for (int j = 0; j < 4; ++j) {
        dense_state t;
        t.st = pure_state(order, gen);
        for (auto& o : layer) t.gate(o.g, o.q);
        t.lower(dmg[k]);
        t.gate(gate_kind::Z, {other[j]});
        const cmat m = t.to_dense(order);
        if ((got / got.trace() - m / m.trace()).cwiseAbs().maxCoeff() < 1e-9) found.insert(j + 1);
    }
    ec_gadget(R, other, false, "o.", so, true);
    std::set<int> c1;
    for (auto& br : R.br) c1.insert(br.bits.at("o.c1"));

    table_check c;
    c.table = "cz-propagation";
    c.row = std::string(damp_first ? "A" : "B") + " qubit " + std::to_string(k + 1);
    c.expected = "Z_" + std::to_string(cz_partner[k] + 1) + " | c1=1";
    std::string cs;
    for (int v : c1) cs += (cs.empty() ? "" : ",") + std::to_string(v);
    std::set<std::string> zs;
    for (int j : found) zs.insert("Z_" + std::to_string(j));
    c.observed = detail::join(zs, "~") + " | c1=" + cs;
    c.pass = found == std::set<int>{cz_partner[k] + 1} && c1 == std::set<int>{1};
    return c;
}

inline std::vector<table_check> all_table_checks(const schedule_options& so = {}) {
    std::vector<table_check> out;
    for (auto& r : diagnosis_table(false)) out.push_back(check_diagnosis_row(r, "diagnosis", so));
    for (auto& r : diagnosis_table(true)) out.push_back(check_diagnosis_row(r, "diagnosis-extended", so));
    for (auto& r : flag_table()) out.push_back(check_flag_row(r, so));
    for (int k = 0; k < 4; ++k) out.push_back(check_cz_row(k, true, so));
    for (int k = 0; k < 4; ++k) out.push_back(check_cz_row(k, false, so));
    return out;
}

} // namespace adft
