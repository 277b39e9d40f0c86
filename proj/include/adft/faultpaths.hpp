#pragma once

#include "gadgets.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

namespace adft {

inline constexpr double malignancy_tol = 1e-9;
inline constexpr int ref_base = 1000;
inline constexpr int out_base = 2000;

struct fault {
    location loc;
    fault_kind kind = fault_kind::Fa;
};

struct fault_path {
    std::vector<fault> faults;
    double weight = 1.0;
};

// A circuit under test. Inputs are encoded halves of Bell pairs with one
// reference qubit per block (labels ref_base + i); outputs are decoded onto
// labels out_base + j. target() is the ideal operator over refs then outputs.
template <class State>
struct test_circuit {
    std::string name;
    int n_in = 0;
    std::function<std::vector<block>(runner<State>&, const std::vector<block>&)> body;
    std::function<cmat()> target;
    std::vector<int> leading;  // segments of leading ECs
};

// worker count: ADFT_WORKERS, else the hardware concurrency
inline int worker_count() {
    if (const char* e = std::getenv("ADFT_WORKERS")) {
        const int n = std::atoi(e);
        if (n > 0) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// runs f(i) for i in [0, n) on the worker pool; f must only write slot i
template <class F>
void parallel_for(std::size_t n, F&& f, int workers = worker_count()) {
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) f(i);
        });
    for (auto& t : pool) t.join();
}

namespace detail {

template <class State>
void add_choi_block(State& st, int ref, int tmp, const block& d) {
    st.add_qubit(ref, true);
    st.add_qubit(tmp, false);
    st.gate(gate_kind::CNOT, {ref, tmp});
    st.apply_isometry(encoder(), {tmp}, vec(d));
}

// dense Bell pairs ref_i / logical_i with the given logical gates applied
inline cmat choi_target(int n, const std::vector<gate_spec>& gates) {
    dense_state d;
    std::vector<int> order;
    for (int i = 0; i < n; ++i) {
        d.add_qubit(ref_base + i, true);
        d.add_qubit(out_base + i, false);
        d.gate(gate_kind::CNOT, {ref_base + i, out_base + i});
    }
    for (auto& g : gates) {
        std::vector<int> q;
        for (int k : g.targets) q.push_back(out_base + k);
        d.gate(g.kind, q);
    }
    for (int i = 0; i < n; ++i) order.push_back(ref_base + i);
    for (int i = 0; i < n; ++i) order.push_back(out_base + i);
    cmat j = d.to_dense(order);
    return j / j.trace();
}

inline cmat state_target(const cvec& v) {
    cmat m = v * v.adjoint();
    return m / m.trace();
}

} // namespace detail

// Executes a test circuit with the given hook. Returns the final branches and
// the output blocks.
template <class State>
std::pair<std::vector<branch<State>>, std::vector<block>> execute(const test_circuit<State>& c,
                                                                  const noise_hook<State>& hook,
                                                                  bool channel = false,
                                                                  schedule_trace* tr = nullptr) {
    int next = 0;
    runner<State> R;
    R.next_label = &next;
    R.hook = hook;
    R.channel = channel;
    R.trace = tr;
    R.br.resize(1);
    std::vector<block> in;
    for (int i = 0; i < c.n_in; ++i) {
        block b{R.fresh(), R.fresh(), R.fresh(), R.fresh()};
        detail::add_choi_block(R.br[0].st, ref_base + i, R.fresh(), b);
        in.push_back(b);
    }
    auto out = c.body(R, in);
    return {std::move(R.br), out};
}

struct path_verdict {
    bool malignant = false;
    double bad_fraction = 0.0;  // trace share of decoder branches away from the target
    double residual = 0.0;      // largest residual over gadget branches
    double accepted = 0.0;      // trace of non-rejected branches
    std::string why;
};

inline double residual_after_fit(const cmat& j, const cmat& j0) {
    const cplx c = (j0.adjoint() * j).trace() / (j0.adjoint() * j0).trace();
    return (j - c * j0).cwiseAbs().maxCoeff();
}

// Ideal-decodes every output block of every branch and compares with the
// target. Rejected branches (bit "rej" = 1) pass.
template <class State>
path_verdict judge(const std::vector<branch<State>>& brs, const std::vector<block>& out, int n_in, const cmat& j0) {
    path_verdict v;
    std::vector<int> order;
    for (int i = 0; i < n_in; ++i) order.push_back(ref_base + i);
    for (std::size_t j = 0; j < out.size(); ++j) order.push_back(out_base + int(j));
    double bad = 0, all = 0;
    for (auto& b : brs) {
        auto it = b.bits.find("rej");
        if (it != b.bits.end() && it->second) continue;
        if (b.st.zero()) continue;
        if (b.unknown) {
            const double t = std::abs(b.st.trace());
            if (t < malignancy_tol && b.st.zero()) continue;
            v.malignant = true;
            v.why = "unknown";
            bad += std::max(t, 1e-300);
            all += std::max(t, 1e-300);
            v.residual = std::max(v.residual, 1.0);
            continue;
        }
        std::vector<State> cur{b.st};
        bool leak = false;
        for (std::size_t j = 0; j < out.size(); ++j) {
            std::vector<State> nxt;
            for (auto& s : cur) {
                auto r = ideal_decode_block(s, out[j], out_base + int(j), true);
                if (r.has_leak && !r.leaked.zero()) {
                    const cmat lk = r.leaked.to_dense(r.leaked.labels());
                    if (lk.cwiseAbs().maxCoeff() > malignancy_tol) {
                        leak = true;
                        bad += std::abs(r.leaked.trace());
                        all += std::abs(r.leaked.trace());
                    }
                }
                for (auto& p : r.parts) nxt.push_back(std::move(p));
            }
            cur = std::move(nxt);
        }
        if (leak) {
            v.malignant = true;
            v.why = "leak";
        }
        cmat sum = cmat::Zero(j0.rows(), j0.cols());
        for (auto& s : cur) {
            const cmat j = s.to_dense(order);
            sum += j;
            const double t = std::abs(j.trace());
            all += t;
            if (residual_after_fit(j, j0) > malignancy_tol) bad += t;
        }
        v.accepted += sum.trace().real();
        const double res = residual_after_fit(sum, j0);
        v.residual = std::max(v.residual, res);
        if (res > malignancy_tol) {
            v.malignant = true;
            if (v.why.empty()) v.why = "residual";
        }
    }
    v.bad_fraction = all > 0 ? bad / all : 0.0;
    return v;
}

template <class State>
noise_hook<State> fault_hook(const std::vector<fault>& fs, double p = 0.0) {
    return [fs, p](const location& l, State& st) {
        for (auto& f : fs)
            if (f.loc.key() == l.key()) apply_fault(st, l.qubit, f.kind, p);
    };
}

template <class State>
path_verdict run_fault_path(const test_circuit<State>& c, const fault_path& path) {
    auto [brs, out] = execute(c, fault_hook<State>(path.faults));
    return judge(brs, out, c.n_in, c.target());
}

// Location set closed under single faults: the fault-free run plus every
// location reached after one Fa or Fz anywhere. Ordered by key.
template <class State>
std::vector<location> enumerate_locations(const test_circuit<State>& c) {
    std::map<std::uint64_t, location> seen;
    std::mutex mu;
    auto recorder = [&](const std::vector<fault>& fs) {
        auto fh = fault_hook<State>(fs);
        std::map<std::uint64_t, location> local;
        noise_hook<State> h = [&](const location& l, State& st) {
            local.emplace(l.key(), l);
            fh(l, st);
        };
        execute(c, h);
        return local;
    };
    seen = recorder({});
    std::set<std::uint64_t> expanded;
    for (;;) {
        std::vector<location> todo;
        for (auto& [k, l] : seen)
            if (!expanded.count(k)) todo.push_back(l);
        if (todo.empty()) break;
        std::vector<std::map<std::uint64_t, location>> found(todo.size() * 2);
        parallel_for(todo.size() * 2, [&](std::size_t i) {
            found[i] = recorder({{todo[i / 2], i % 2 ? fault_kind::Fz : fault_kind::Fa}});
        });
        for (auto& l : todo) expanded.insert(l.key());
        for (auto& m : found) seen.insert(m.begin(), m.end());
    }
    std::vector<location> out;
    for (auto& [k, l] : seen) out.push_back(l);
    return out;
}

struct suite_result {
    std::string name;
    long paths = 0;
    long malignant = 0;
    double max_residual = 0.0;
    std::vector<std::string> failures;
};

inline std::string describe(const location& l) {
    return "seg" + std::to_string(l.seg) + ".part" + std::to_string(l.part) + ".step" + std::to_string(l.step) +
           ".q" + std::to_string(l.qubit) + "." + l.op;
}

// every location x {Fa, Fz, F}, one fault at a time
template <class State>
suite_result single_fault_suite(const test_circuit<State>& c) {
    const auto locs = enumerate_locations(c);
    const fault_kind kinds[3] = {fault_kind::Fa, fault_kind::Fz, fault_kind::F};
    const cmat j0 = c.target();
    std::vector<path_verdict> res(locs.size() * 3);
    parallel_for(res.size(), [&](std::size_t i) {
        auto [brs, out] = execute(c, fault_hook<State>({{locs[i / 3], kinds[i % 3]}}));
        res[i] = judge(brs, out, c.n_in, j0);
    });
    suite_result s;
    s.name = c.name;
    {
        auto [brs, out] = execute(c, noise_hook<State>{});
        auto v = judge(brs, out, c.n_in, j0);
        ++s.paths;
        if (v.malignant) {
            ++s.malignant;
            s.failures.push_back("fault-free: " + v.why);
        }
        s.max_residual = v.residual;
    }
    for (std::size_t i = 0; i < res.size(); ++i) {
        ++s.paths;
        s.max_residual = std::max(s.max_residual, res[i].residual);
        if (!res[i].malignant) continue;
        ++s.malignant;
        s.failures.push_back(describe(locs[i / 3]) + " " + fault_name(kinds[i % 3]) + ": " + res[i].why);
    }
    return s;
}

// Measurement gadget check: every accepted branch of non-negligible weight
// reports the fault-free outcome.
template <class State>
struct measurement_circuit {
    std::string name;
    bool x_basis = false;
    std::function<void(runner<State>&, const block&)> body;
    std::string key;
    std::array<int, 2> expected{0, 1};
};

// logical |v> (Z basis) or |+>/|-> (X basis) encoded on block b
template <class State>
void encode_basis_input(State& st, const block& b, int tmp, bool x_basis, int v) {
    st.add_qubit(tmp, x_basis);
    if (v) st.gate(x_basis ? gate_kind::Z : gate_kind::X, {tmp});
    st.apply_isometry(encoder(), {tmp}, vec(b));
}

template <class State>
std::vector<branch<State>> execute_measurement(const measurement_circuit<State>& m, int v,
                                               const noise_hook<State>& hook) {
    int next = 0;
    runner<State> R;
    R.next_label = &next;
    R.hook = hook;
    R.br.resize(1);
    block b{R.fresh(), R.fresh(), R.fresh(), R.fresh()};
    encode_basis_input(R.br[0].st, b, R.fresh(), m.x_basis, v);
    m.body(R, b);
    return std::move(R.br);
}

template <class State>
bool measurement_correct(const std::vector<branch<State>>& brs, const std::string& key, int expected,
                         std::string* why = nullptr) {
    for (auto& b : brs) {
        auto it = b.bits.find("rej");
        if (it != b.bits.end() && it->second) continue;
        if (b.st.zero() || std::abs(b.st.trace()) < malignancy_tol) continue;
        if (b.bits.at(key) != expected) {
            if (why) *why = "outcome " + std::to_string(b.bits.at(key));
            return false;
        }
    }
    return true;
}

template <class State>
suite_result measurement_suite(const measurement_circuit<State>& m) {
    test_circuit<State> probe;
    probe.name = m.name;
    probe.body = [&](runner<State>& R, const std::vector<block>&) {
        block b{R.fresh(), R.fresh(), R.fresh(), R.fresh()};
        encode_basis_input(R.br[0].st, b, R.fresh(), m.x_basis, 0);
        m.body(R, b);
        return std::vector<block>{};
    };
    const auto locs = enumerate_locations(probe);
    const fault_kind kinds[3] = {fault_kind::Fa, fault_kind::Fz, fault_kind::F};
    suite_result s;
    s.name = m.name;
    std::vector<std::string> why(locs.size() * 6);
    std::vector<char> ok(locs.size() * 6, 1);
    parallel_for(ok.size(), [&](std::size_t i) {
        const int v = int(i % 2);
        const auto& l = locs[i / 6];
        const auto k = kinds[(i / 2) % 3];
        auto brs = execute_measurement(m, v, fault_hook<State>({{l, k}}));
        ok[i] = measurement_correct(brs, m.key, m.expected[v], &why[i]);
    });
    for (int v = 0; v < 2; ++v) {
        ++s.paths;
        auto brs = execute_measurement(m, v, noise_hook<State>{});
        std::string w;
        if (!measurement_correct(brs, m.key, m.expected[v], &w)) {
            ++s.malignant;
            s.failures.push_back("fault-free input " + std::to_string(v) + ": " + w);
        }
    }
    for (std::size_t i = 0; i < ok.size(); ++i) {
        ++s.paths;
        if (ok[i]) continue;
        ++s.malignant;
        s.failures.push_back(describe(locs[i / 6]) + " " + fault_name(kinds[(i / 2) % 3]) + " input " +
                             std::to_string(i % 2) + ": " + why[i]);
    }
    return s;
}

// ---- catalogue of circuits ----

enum class extended_kind { memory, cz };

inline std::string extended_name(extended_kind k) { return k == extended_kind::memory ? "memory" : "cz"; }

template <class State>
test_circuit<State> ec_circuit(bool lx = false, const schedule_options& so = {}) {
    test_circuit<State> c;
    c.name = lx ? "logical_x" : "ec";
    c.n_in = 1;
    c.body = [lx, so](runner<State>& R, const std::vector<block>& in) {
        R.seg = 1;
        if (lx)
            logical_x_gadget(R, in[0], "e.", so);
        else {
            ec_gadget(R, in[0], false, "e.", so);
            R.forget({"e.c1", "e.dmg"});
        }
        return in;
    };
    c.target = [lx] {
        std::vector<gate_spec> g;
        if (lx) g.push_back({gate_kind::X, {0}});
        return detail::choi_target(1, g);
    };
    return c;
}

template <class State>
test_circuit<State> logical_z_circuit(const schedule_options& so = {}) {
    test_circuit<State> c;
    c.name = "logical_z";
    c.n_in = 1;
    c.body = [so](runner<State>& R, const std::vector<block>& in) {
        R.seg = 1;
        logical_z_gadget(R, in[0], "e.", so);
        return in;
    };
    c.target = [] { return detail::choi_target(1, {{gate_kind::Z, {0}}}); };
    return c;
}

template <class State>
test_circuit<State> cz_circuit(const schedule_options& so = {}) {
    test_circuit<State> c;
    c.name = "cz";
    c.n_in = 2;
    c.body = [so](runner<State>& R, const std::vector<block>& in) {
        cz_gadget(R, in[0], in[1], segments{5, {3, 4}}, "z.", so);
        return in;
    };
    c.target = [] { return detail::choi_target(2, {{gate_kind::CZ, {0, 1}}}); };
    return c;
}

template <class State>
test_circuit<State> ccz_circuit(const schedule_options& so = {}) {
    test_circuit<State> c;
    c.name = "ccz";
    c.n_in = 3;
    c.body = [so](runner<State>& R, const std::vector<block>& in) {
        ccz_gadget(R, {in[0], in[1], in[2]}, segments{7, {4, 5, 6}}, "c.", so);
        return in;
    };
    c.target = [] { return detail::choi_target(3, {{gate_kind::CCZ, {0, 1, 2}}}); };
    return c;
}

// extended gadgets, block numbering: memory 1 leading EC,
// 2 trailing EC, 3 rests; cz 1/2 leading ECs, 3/4 trailing ECs, 5 CZ layer
template <class State>
test_circuit<State> extended_circuit(extended_kind k, const schedule_options& so = {}) {
    test_circuit<State> c;
    c.name = extended_name(k);
    if (k == extended_kind::memory) {
        c.n_in = 1;
        c.leading = {1};
        c.body = [so](runner<State>& R, const std::vector<block>& in) {
            R.seg = 1;
            ec_gadget(R, in[0], false, "L.", so);
            R.forget({"L.c1", "L.dmg"});
            R.seg = 3;
            R.part = part::gate;
            R.step(1, {}, vec(in[0]));
            R.seg = 2;
            ec_gadget(R, in[0], false, "T.", so);
            R.forget({"T.c1", "T.dmg"});
            return in;
        };
        c.target = [] { return detail::choi_target(1, {}); };
    } else {
        c.n_in = 2;
        c.leading = {1, 2};
        c.body = [so](runner<State>& R, const std::vector<block>& in) {
            R.seg = 1;
            ec_gadget(R, in[0], false, "L1.", so);
            R.seg = 2;
            ec_gadget(R, in[1], false, "L2.", so);
            R.forget({"L1.c1", "L1.dmg", "L2.c1", "L2.dmg"});
            cz_gadget(R, in[0], in[1], segments{5, {3, 4}}, "z.", so);
            return in;
        };
        c.target = [] { return detail::choi_target(2, {{gate_kind::CZ, {0, 1}}}); };
    }
    return c;
}

inline cvec logical_prep_vector(logical_prep k) {
    const double pi = std::acos(-1.0);
    cvec v(2);
    switch (k) {
    case logical_prep::zero_L: v << 1, 0; break;
    case logical_prep::plus_L: v << inv_sqrt2, inv_sqrt2; break;
    case logical_prep::PhiS: v << inv_sqrt2, cplx(0, inv_sqrt2); break;
    case logical_prep::PhiT: v << inv_sqrt2, inv_sqrt2 * std::polar(1.0, pi / 4); break;
    }
    return v;
}

template <class State>
test_circuit<State> prep_circuit(logical_prep kind) {
    test_circuit<State> c;
    c.name = "prep_" + prep_name(kind);
    c.n_in = 0;
    c.body = [kind](runner<State>& R, const std::vector<block>&) {
        R.seg = 1;
        block b{R.fresh(), R.fresh(), R.fresh(), R.fresh()};
        prep_logical(R, b, kind, "p.");
        return std::vector<block>{b};
    };
    c.target = [kind] { return detail::state_target(logical_prep_vector(kind)); };
    return c;
}

template <class State>
measurement_circuit<State> logical_measurement_circuit(bool x_basis) {
    measurement_circuit<State> m;
    m.name = x_basis ? "meas_x" : "meas_z";
    m.key = "m";
    m.x_basis = x_basis;
    m.body = [x_basis](runner<State>& R, const block& b) {
        R.seg = 1;
        if (x_basis)
            meas_logical_x(R, b, "m");
        else
            meas_logical_z(R, b, "m");
    };
    return m;
}

// B = C(L,3) + C(L,2) + L
inline long long compute_B(long long L) {
    if (L < 0) throw std::invalid_argument("compute_B: negative location count");
    return L * (L - 1) * (L - 2) / 6 + L * (L - 1) / 2 + L;
}

inline double kinds_weight(fault_kind a, fault_kind b) { return kind_weight(a) * kind_weight(b); }

struct malignant_report {
    std::string gadget;
    bool include_leading = false;
    int blocks = 0;
    std::vector<std::vector<double>> matrix;    // lower triangle, [row][col] with row >= col, block index - 1
    std::vector<std::vector<double>> ec_parts;  // pairs inside the first trailing EC by part 1..8
    std::vector<int> z2_raw_by_block;
    double pairs = 0.0;
    double z2 = 0.0;
    double C = 0.0;
    long L = 0;
    long long B = 0;
    std::vector<std::string> deviations;
};

// Weight of a malignant kind combination. Fa x Fa drops to 1/2 when at most
// half of the decoded trace is wrong.
inline double combo_weight(fault_kind a, fault_kind b, const path_verdict& v) {
    if (!v.malignant) return 0.0;
    if (a == fault_kind::Fa && b == fault_kind::Fa) return v.bad_fraction <= 0.5 + 1e-9 ? 0.5 : 1.0;
    return kinds_weight(a, b);
}

// weight of a location pair: the largest weight over its malignant kind combinations
template <class State>
double pair_weight(const test_circuit<State>& c, const cmat& j0, const location& a, const location& b) {
    static constexpr std::array<std::pair<fault_kind, fault_kind>, 4> combos{{{fault_kind::Fa, fault_kind::Fa},
                                                                              {fault_kind::Fa, fault_kind::Fz},
                                                                              {fault_kind::Fz, fault_kind::Fa},
                                                                              {fault_kind::Fz, fault_kind::Fz}}};
    double w = 0.0;
    for (auto [ka, kb] : combos) {
        if (kinds_weight(ka, kb) <= w) continue;
        auto [brs, out] = execute(c, fault_hook<State>({{a, ka}, {b, kb}}));
        w = std::max(w, combo_weight(ka, kb, judge(brs, out, c.n_in, j0)));
        if (w >= 1.0) break;
    }
    return w;
}

template <class State>
bool z2_malignant(const test_circuit<State>& c, const cmat& j0, const location& l) {
    auto [brs, out] = execute(c, fault_hook<State>({{l, fault_kind::Z2}}));
    return judge(brs, out, c.n_in, j0).malignant;
}

template <class State>
malignant_report count_malignant_pairs(const test_circuit<State>& c, int blocks, bool include_leading = false) {
    malignant_report r;
    r.gadget = c.name;
    r.include_leading = include_leading;
    r.blocks = blocks;
    r.matrix.assign(blocks, std::vector<double>(blocks, 0.0));
    r.ec_parts.assign(8, std::vector<double>(8, 0.0));
    r.z2_raw_by_block.assign(blocks, 0);
    const auto locs = enumerate_locations(c);
    const cmat j0 = c.target();
    auto leading = [&](int seg) { return std::find(c.leading.begin(), c.leading.end(), seg) != c.leading.end(); };
    int first_trailing = 0;
    for (auto& l : locs)
        if (!leading(l.seg) && (first_trailing == 0 || l.seg < first_trailing)) first_trailing = l.seg;

    std::vector<std::pair<int, int>> todo;
    for (std::size_t i = 0; i < locs.size(); ++i)
        for (std::size_t j = i + 1; j < locs.size(); ++j) {
            if (!include_leading && locs[i].seg == locs[j].seg && leading(locs[i].seg)) continue;
            todo.emplace_back(int(i), int(j));
        }
    std::vector<double> w(todo.size());
    parallel_for(todo.size(), [&](std::size_t k) { w[k] = pair_weight(c, j0, locs[todo[k].first], locs[todo[k].second]); });
    std::vector<char> z(locs.size());
    parallel_for(locs.size(), [&](std::size_t k) { z[k] = z2_malignant(c, j0, locs[k]); });

    for (std::size_t k = 0; k < todo.size(); ++k) {
        if (w[k] == 0.0) continue;
        const auto& a = locs[todo[k].first];
        const auto& b = locs[todo[k].second];
        const int hi = std::max(a.seg, b.seg) - 1, lo = std::min(a.seg, b.seg) - 1;
        r.matrix.at(hi).at(lo) += w[k];
        r.pairs += w[k];
        if (a.seg == first_trailing && b.seg == first_trailing) {
            const int pa = std::clamp(a.part, 1, 8) - 1, pb = std::clamp(b.part, 1, 8) - 1;
            r.ec_parts[std::max(pa, pb)][std::min(pa, pb)] += w[k];
        }
    }
    int raw = 0;
    for (std::size_t k = 0; k < locs.size(); ++k)
        if (z[k]) {
            ++raw;
            r.z2_raw_by_block.at(locs[k].seg - 1)++;
        }
    r.z2 = raw * kind_weight(fault_kind::Z2);
    r.C = r.pairs + r.z2;
    r.L = long(locs.size());
    r.B = compute_B(r.L);
    return r;
}

template <class State>
malignant_report count_malignant_pairs(extended_kind k, bool include_leading = false, const schedule_options& so = {}) {
    return count_malignant_pairs(extended_circuit<State>(k, so), k == extended_kind::memory ? 3 : 5, include_leading);
}

// every single-fault suite: EC, logical X/Z, CZ, CCZ, the four
// preparations and both logical measurements
template <class State = term_state>
std::vector<suite_result> all_suites(const schedule_options& so = {}) {
    std::vector<suite_result> out;
    out.push_back(single_fault_suite(ec_circuit<State>(false, so)));
    out.push_back(single_fault_suite(ec_circuit<State>(true, so)));
    out.push_back(single_fault_suite(logical_z_circuit<State>(so)));
    out.push_back(single_fault_suite(cz_circuit<State>(so)));
    out.push_back(single_fault_suite(ccz_circuit<State>(so)));
    for (auto k : {logical_prep::zero_L, logical_prep::plus_L, logical_prep::PhiS, logical_prep::PhiT})
        out.push_back(single_fault_suite(prep_circuit<State>(k)));
    out.push_back(measurement_suite(logical_measurement_circuit<State>(false)));
    out.push_back(measurement_suite(logical_measurement_circuit<State>(true)));
    return out;
}

} // namespace adft
