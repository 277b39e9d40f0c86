#pragma once

#include "simcore.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

namespace adft {

// basis used by projections and destructive measurements
enum class basis { zero, one, plus, minus };

// Sparse ket over up to 64 slotted qubits.
struct sparse_vec {
    std::vector<std::pair<std::uint64_t, cplx>> e;

    void canonicalize() {
        std::sort(e.begin(), e.end(), [](auto& a, auto& b) { return a.first < b.first; });
        std::size_t w = 0;
        for (std::size_t r = 0; r < e.size();) {
            std::uint64_t k = e[r].first;
            cplx s = 0;
            while (r < e.size() && e[r].first == k) s += e[r++].second;
            if (std::abs(s) > 1e-14) e[w++] = {k, s};
        }
        e.resize(w);
    }

    bool empty() const { return e.empty(); }

    double norm2() const {
        double s = 0;
        for (auto& [k, a] : e) s += std::norm(a);
        return s;
    }
};

// <a|b> for canonical vectors
inline cplx inner(const sparse_vec& a, const sparse_vec& b) {
    cplx s = 0;
    std::size_t i = 0, j = 0;
    while (i < a.e.size() && j < b.e.size()) {
        if (a.e[i].first < b.e[j].first)
            ++i;
        else if (a.e[i].first > b.e[j].first)
            ++j;
        else
            s += std::conj(a.e[i++].second) * b.e[j++].second;
    }
    return s;
}

// rho = sum_t |ket_t><bra_t|
struct term {
    sparse_vec ket, bra;
};

class term_state {
public:
    std::vector<term> terms;

    term_state() { terms.push_back(term{{{{0, 1.0}}}, {{{0, 1.0}}}}); }

    const std::vector<int>& labels() const { return labels_; }

    bool has(int label) const { return slot_.count(label) != 0; }

    // renames a qubit; the target label must be free
    void relabel(int from, int to) {
        if (has(to)) throw std::invalid_argument("term_state: relabel target in use");
        const int s = std::countr_zero(mask(from));
        slot_.erase(from);
        slot_[to] = s;
        *std::find(labels_.begin(), labels_.end(), from) = to;
    }

    void add_qubit(int label, bool plus = false) {
        int s = std::countr_one(used_);
        if (s >= 64) throw std::runtime_error("term_state: out of slots");
        used_ |= std::uint64_t(1) << s;
        slot_[label] = s;
        labels_.push_back(label);
        if (!plus) return;
        const std::uint64_t m = std::uint64_t(1) << s;
        auto dup = [&](sparse_vec& v) {
            std::size_t n = v.e.size();
            v.e.reserve(2 * n);
            for (std::size_t i = 0; i < n; ++i) {
                v.e[i].second *= inv_sqrt2;
                v.e.push_back({v.e[i].first | m, v.e[i].second});
            }
        };
        for (auto& t : terms) {
            dup(t.ket);
            dup(t.bra);
        }
    }

    void gate(gate_kind k, const std::vector<int>& q) {
        switch (k) {
        case gate_kind::I: return;
        case gate_kind::X: return permute([m = mask(q[0])](std::uint64_t i) { return i ^ m; });
        case gate_kind::CNOT:
            return permute([c = mask(q[0]), t = mask(q[1])](std::uint64_t i) { return (i & c) ? i ^ t : i; });
        case gate_kind::Z: return phase([m = mask(q[0])](std::uint64_t i) { return (i & m) ? cplx(-1) : cplx(1); });
        case gate_kind::S: return phase([m = mask(q[0])](std::uint64_t i) { return (i & m) ? cplx(0, 1) : cplx(1); });
        case gate_kind::T:
            return phase([m = mask(q[0])](std::uint64_t i) {
                return (i & m) ? std::polar(1.0, M_PI / 4) : cplx(1);
            });
        case gate_kind::CZ:
            return phase([m = mask(q[0]) | mask(q[1])](std::uint64_t i) {
                return (i & m) == m ? cplx(-1) : cplx(1);
            });
        case gate_kind::CCZ:
            return phase([m = mask(q[0]) | mask(q[1]) | mask(q[2])](std::uint64_t i) {
                return (i & m) == m ? cplx(-1) : cplx(1);
            });
        case gate_kind::H: {
            const std::uint64_t m = mask(q[0]);
            auto h = [m](sparse_vec& v) {
                std::size_t n = v.e.size();
                for (std::size_t i = 0; i < n; ++i) {
                    auto [k, a] = v.e[i];
                    const bool one = k & m;
                    v.e[i] = {k & ~m, a * inv_sqrt2};
                    v.e.push_back({k | m, one ? -a * inv_sqrt2 : a * inv_sqrt2});
                }
                v.canonicalize();
            };
            for (auto& t : terms) {
                h(t.ket);
                h(t.bra);
            }
            prune();
            return;
        }
        }
    }

    // K rho K^dagger with K = |0><1| on one qubit
    void lower(int label) {
        const std::uint64_t m = mask(label);
        auto f = [m](sparse_vec& v) {
            std::size_t w = 0;
            for (auto& [k, a] : v.e)
                if (k & m) v.e[w++] = {k & ~m, a};
            v.e.resize(w);
        };
        for (auto& t : terms) {
            f(t.ket);
            f(t.bra);
        }
        prune();
    }

    // K rho K^dagger for a diagonal K = diag(d0, d1)
    void diag(int label, cplx d0, cplx d1) {
        const std::uint64_t m = mask(label);
        for (auto& t : terms) {
            for (auto& [k, a] : t.ket.e) a *= (k & m) ? d1 : d0;
            for (auto& [k, a] : t.bra.e) a *= (k & m) ? d1 : d0;
        }
        prune();
    }

    // rho <- (Z rho + rho Z) / 2
    void anticommutator_z(int label) {
        const std::uint64_t m = mask(label);
        std::vector<term> out;
        out.reserve(2 * terms.size());
        for (auto& t : terms) {
            term a = t, b = t;
            for (auto& [k, x] : a.ket.e) x *= (k & m) ? -0.5 : 0.5;
            for (auto& [k, x] : b.bra.e) x *= (k & m) ? -0.5 : 0.5;
            out.push_back(std::move(a));
            out.push_back(std::move(b));
        }
        terms = std::move(out);
        compact();
    }

    // Pi rho Pi with Pi the projector on the given single-qubit basis state
    void project(int label, basis b) {
        const std::uint64_t m = mask(label);
        if (b == basis::zero || b == basis::one) {
            const bool want = b == basis::one;
            auto f = [&](sparse_vec& v) {
                std::size_t w = 0;
                for (auto& e : v.e)
                    if (bool(e.first & m) == want) v.e[w++] = e;
                v.e.resize(w);
            };
            for (auto& t : terms) {
                f(t.ket);
                f(t.bra);
            }
        } else {
            const double sg = b == basis::plus ? 1.0 : -1.0;
            auto f = [&](sparse_vec& v) {
                std::size_t n = v.e.size();
                for (std::size_t i = 0; i < n; ++i) {
                    v.e[i].second *= 0.5;
                    v.e.push_back({v.e[i].first ^ m, sg * v.e[i].second});
                }
                v.canonicalize();
            };
            for (auto& t : terms) {
                f(t.ket);
                f(t.bra);
            }
        }
        prune();
    }

    // <b| rho |b> on one qubit, which is then removed
    void discard(int label, basis b) {
        const std::uint64_t m = mask(label);
        if (b == basis::zero || b == basis::one) {
            const bool want = b == basis::one;
            auto f = [&](sparse_vec& v) {
                std::size_t w = 0;
                for (auto& e : v.e)
                    if (bool(e.first & m) == want) v.e[w++] = {e.first & ~m, e.second};
                v.e.resize(w);
            };
            for (auto& t : terms) {
                f(t.ket);
                f(t.bra);
            }
        } else {
            const double sg = b == basis::plus ? 1.0 : -1.0;
            auto f = [&](sparse_vec& v) {
                for (auto& e : v.e) {
                    if (e.first & m) e.second *= sg;
                    e.second *= inv_sqrt2;
                    e.first &= ~m;
                }
                v.canonicalize();
            };
            for (auto& t : terms) {
                f(t.ket);
                f(t.bra);
            }
        }
        release(label);
        prune();
    }

    // partial trace over one qubit
    void trace_out(int label) {
        term_state z = *this, o = *this;
        z.discard(label, basis::zero);
        o.discard(label, basis::one);
        *this = std::move(z);
        terms.insert(terms.end(), o.terms.begin(), o.terms.end());
    }

    double trace() const {
        cplx s = 0;
        for (auto& t : terms) {
            sparse_vec k = t.ket, b = t.bra;
            k.canonicalize();
            b.canonicalize();
            s += inner(b, k);
        }
        return s.real();
    }

    void scale(double f) {
        for (auto& t : terms)
            for (auto& e : t.ket.e) e.second *= f;
    }

    // adds the terms of another state on the same qubit layout
    void accumulate(const term_state& o) {
        terms.insert(terms.end(), o.terms.begin(), o.terms.end());
        compact();
    }

    bool zero() const { return terms.empty(); }

    // merges terms whose bras coincide
    void compact() {
        for (auto& t : terms) {
            t.ket.canonicalize();
            t.bra.canonicalize();
        }
        std::vector<term> out;
        for (auto& t : terms) {
            bool merged = false;
            for (auto& o : out)
                if (same(o.bra, t.bra)) {
                    o.ket.e.insert(o.ket.e.end(), t.ket.e.begin(), t.ket.e.end());
                    o.ket.canonicalize();
                    merged = true;
                    break;
                }
            if (!merged) out.push_back(std::move(t));
        }
        terms = std::move(out);
        prune();
    }

    void project_parity(int a, int b, int bit) {
        const std::uint64_t ma = mask(a), mb = mask(b);
        auto f = [&](sparse_vec& v) {
            std::size_t w = 0;
            for (auto& e : v.e)
                if ((int(bool(e.first & ma)) ^ int(bool(e.first & mb))) == bit) v.e[w++] = e;
            v.e.resize(w);
        };
        for (auto& t : terms) {
            f(t.ket);
            f(t.bra);
        }
        prune();
    }

    void project_xstring(const std::vector<int>& q, int bit) {
        std::uint64_t m = 0;
        for (int l : q) m |= mask(l);
        const double sg = bit ? -1.0 : 1.0;
        auto f = [&](sparse_vec& v) {
            std::size_t n = v.e.size();
            for (std::size_t i = 0; i < n; ++i) {
                v.e[i].second *= 0.5;
                v.e.push_back({v.e[i].first ^ m, sg * v.e[i].second});
            }
            v.canonicalize();
        };
        for (auto& t : terms) {
            f(t.ket);
            f(t.bra);
        }
        prune();
    }

    // replaces the qubits `in` by `out` through the isometry w (rows: out basis, cols: in basis)
    void apply_isometry(const cmat& w, const std::vector<int>& in, const std::vector<int>& out) {
        const int ni = static_cast<int>(in.size()), no = static_cast<int>(out.size());
        std::vector<std::uint64_t> mi;
        std::uint64_t all = 0;
        for (int l : in) {
            mi.push_back(mask(l));
            all |= mi.back();
        }
        for (int l : in) release(l);
        for (int l : out) add_qubit(l);
        std::vector<std::uint64_t> mo;
        for (int l : out) mo.push_back(mask(l));
        auto f = [&](sparse_vec& v) {
            std::vector<std::pair<std::uint64_t, cplx>> r;
            for (auto& [k, a] : v.e) {
                int col = 0;
                for (int t = 0; t < ni; ++t)
                    if (k & mi[t]) col |= 1 << (ni - 1 - t);
                const std::uint64_t rest = k & ~all;
                for (int row = 0; row < (1 << no); ++row) {
                    const cplx c = w(row, col);
                    if (c == cplx(0)) continue;
                    std::uint64_t idx = rest;
                    for (int t = 0; t < no; ++t)
                        if (row & (1 << (no - 1 - t))) idx |= mo[t];
                    r.push_back({idx, c * a});
                }
            }
            v.e = std::move(r);
            v.canonicalize();
        };
        for (auto& t : terms) {
            f(t.ket);
            f(t.bra);
        }
        prune();
    }

    std::uint64_t mask(int label) const {
        auto it = slot_.find(label);
        if (it == slot_.end()) throw std::out_of_range("term_state: unknown qubit " + std::to_string(label));
        return std::uint64_t(1) << it->second;
    }

    // dense matrix over the given labels (all live qubits must be listed)
    cmat to_dense(const std::vector<int>& order) const {
        const int n = static_cast<int>(order.size());
        std::vector<std::uint64_t> ms;
        for (int l : order) ms.push_back(mask(l));
        auto row = [&](std::uint64_t k) {
            Eigen::Index r = 0;
            for (int i = 0; i < n; ++i)
                if (k & ms[i]) r |= Eigen::Index(1) << (n - 1 - i);
            return r;
        };
        const Eigen::Index d = Eigen::Index(1) << n;
        cmat out = cmat::Zero(d, d);
        for (auto& t : terms)
            for (auto& [kk, ka] : t.ket.e)
                for (auto& [bk, ba] : t.bra.e) out(row(kk), row(bk)) += ka * std::conj(ba);
        return out;
    }

private:
    std::uint64_t used_ = 0;
    std::unordered_map<int, int> slot_;
    std::vector<int> labels_;

    static bool same(const sparse_vec& a, const sparse_vec& b) {
        if (a.e.size() != b.e.size()) return false;
        for (std::size_t i = 0; i < a.e.size(); ++i)
            if (a.e[i].first != b.e[i].first || std::abs(a.e[i].second - b.e[i].second) > 1e-12) return false;
        return true;
    }

    void release(int label) {
        used_ &= ~mask(label);
        slot_.erase(label);
        labels_.erase(std::find(labels_.begin(), labels_.end(), label));
    }

    template <class F>
    void permute(F f) {
        for (auto& t : terms) {
            for (auto& e : t.ket.e) e.first = f(e.first);
            for (auto& e : t.bra.e) e.first = f(e.first);
        }
    }

    template <class F>
    void phase(F f) {
        for (auto& t : terms) {
            for (auto& e : t.ket.e) e.second *= f(e.first);
            for (auto& e : t.bra.e) e.second *= f(e.first);
        }
    }

    void prune() {
        std::erase_if(terms, [](const term& t) {
            return t.ket.empty() || t.bra.empty() || t.ket.norm2() * t.bra.norm2() < 1e-26;
        });
    }
};

// Dense density-matrix engine with the term_state interface.
class dense_state {
public:
    operator_state st;

    dense_state() { st = alloc_state({}, ""); }

    const std::vector<int>& labels() const { return st.qubit_labels; }
    bool has(int label) const {
        return std::find(st.qubit_labels.begin(), st.qubit_labels.end(), label) != st.qubit_labels.end();
    }

    void add_qubit(int label, bool plus = false) { adft::add_qubit(st, label, plus); }

    void relabel(int from, int to) {
        if (has(to)) throw std::invalid_argument("dense_state: relabel target in use");
        st.qubit_labels[st.position(from)] = to;
    }

    void gate(gate_kind k, const std::vector<int>& q) {
        if (k == gate_kind::X) {
            const Eigen::Index m = Eigen::Index(1) << st.bit(q[0]);
            return permute([m](Eigen::Index i) { return i ^ m; });
        }
        if (k == gate_kind::CNOT) {
            const Eigen::Index c = Eigen::Index(1) << st.bit(q[0]), t = Eigen::Index(1) << st.bit(q[1]);
            return permute([c, t](Eigen::Index i) { return (i & c) ? i ^ t : i; });
        }
        apply_gate(st, gate_spec{k, q});
    }

    void lower(int label) {
        const Eigen::Index m = Eigen::Index(1) << st.bit(label);
        const Eigen::Index d = st.matrix.rows();
        cmat out = cmat::Zero(d, d);
        for (Eigen::Index j = 0; j < d; ++j) {
            if (!(j & m)) continue;
            for (Eigen::Index i = 0; i < d; ++i)
                if (i & m) out(i ^ m, j ^ m) = st.matrix(i, j);
        }
        st.matrix = std::move(out);
    }

    void diag(int label, cplx d0, cplx d1) {
        const Eigen::Index m = Eigen::Index(1) << st.bit(label);
        const Eigen::Index d = st.matrix.rows();
        for (Eigen::Index j = 0; j < d; ++j) {
            const cplx fj = std::conj((j & m) ? d1 : d0);
            for (Eigen::Index i = 0; i < d; ++i) st.matrix(i, j) *= ((i & m) ? d1 : d0) * fj;
        }
    }

    void anticommutator_z(int label) {
        const Eigen::Index m = Eigen::Index(1) << st.bit(label);
        const Eigen::Index d = st.matrix.rows();
        // (Z rho + rho Z)/2 keeps blocks with equal bit values, with sign of that bit
        for (Eigen::Index j = 0; j < d; ++j)
            for (Eigen::Index i = 0; i < d; ++i) {
                const bool bi = i & m, bj = j & m;
                if (bi != bj)
                    st.matrix(i, j) = 0;
                else if (bi)
                    st.matrix(i, j) = -st.matrix(i, j);
            }
    }

    // full AD channel in one pass
    void amplitude_damp(int label, double p) {
        const Eigen::Index m = Eigen::Index(1) << st.bit(label);
        const Eigen::Index d = st.matrix.rows();
        const double s = std::sqrt(1 - p);
        for (Eigen::Index j = 0; j < d; ++j) {
            if (j & m) continue;
            for (Eigen::Index i = 0; i < d; ++i) {
                if (i & m) continue;
                st.matrix(i, j) += p * st.matrix(i | m, j | m);
                st.matrix(i | m, j | m) *= (1 - p);
                st.matrix(i | m, j) *= s;
                st.matrix(i, j | m) *= s;
            }
        }
    }

    void project(int label, basis b) {
        if (b == basis::zero || b == basis::one) {
            const Eigen::Index m = Eigen::Index(1) << st.bit(label);
            const bool want = b == basis::one;
            const Eigen::Index d = st.matrix.rows();
            for (Eigen::Index j = 0; j < d; ++j)
                for (Eigen::Index i = 0; i < d; ++i)
                    if (bool(i & m) != want || bool(j & m) != want) st.matrix(i, j) = 0;
            return;
        }
        apply_operator(st, projector(b), {label});
    }

    void project_parity(int a, int b, int bit) {
        const Eigen::Index ma = Eigen::Index(1) << st.bit(a), mb = Eigen::Index(1) << st.bit(b);
        auto par = [&](Eigen::Index i) { return int(bool(i & ma)) ^ int(bool(i & mb)); };
        const Eigen::Index d = st.matrix.rows();
        for (Eigen::Index j = 0; j < d; ++j)
            for (Eigen::Index i = 0; i < d; ++i)
                if (par(i) != bit || par(j) != bit) st.matrix(i, j) = 0;
    }

    // (I +- X..X)/2 rho (I +- X..X)/2
    void project_xstring(const std::vector<int>& q, int bit) {
        Eigen::Index m = 0;
        for (int l : q) m |= Eigen::Index(1) << st.bit(l);
        const double sg = bit ? -1.0 : 1.0;
        const Eigen::Index d = st.matrix.rows();
        cmat out(d, d);
        for (Eigen::Index j = 0; j < d; ++j)
            for (Eigen::Index i = 0; i < d; ++i)
                out(i, j) = 0.25 * (st.matrix(i, j) + sg * st.matrix(i ^ m, j) + sg * st.matrix(i, j ^ m) +
                                    st.matrix(i ^ m, j ^ m));
        st.matrix = std::move(out);
    }

    void discard(int label, basis b) {
        if (b == basis::plus || b == basis::minus) {
            apply_operator(st, projector(b), {label});
            st = partial_trace(st, {label});
            return;
        }
        const int bit = st.bit(label);
        const Eigen::Index m = Eigen::Index(1) << bit;
        const Eigen::Index low = m - 1;
        const Eigen::Index dn = st.matrix.rows() / 2;
        const Eigen::Index v = b == basis::one ? m : 0;
        auto up = [&](Eigen::Index r) { return ((r & ~low) << 1) | (r & low) | v; };
        cmat out(dn, dn);
        for (Eigen::Index j = 0; j < dn; ++j)
            for (Eigen::Index i = 0; i < dn; ++i) out(i, j) = st.matrix(up(i), up(j));
        st.matrix = std::move(out);
        st.qubit_labels.erase(st.qubit_labels.begin() + st.position(label));
    }

    void trace_out(int label) { st = partial_trace(st, {label}); }

    double trace() const { return st.trace(); }
    void scale(double f) { st.matrix *= f; }

    void accumulate(const dense_state& o) {
        if (o.st.qubit_labels != st.qubit_labels) throw std::invalid_argument("dense_state: layout mismatch");
        st.matrix += o.st.matrix;
    }

    bool zero() const { return st.matrix.size() == 0 || st.matrix.cwiseAbs().maxCoeff() < 1e-300; }
    void compact() { st.matrix = 0.5 * (st.matrix + st.matrix.adjoint()); }

    // replaces the qubits `in` by `out` through the isometry w (rows: out basis, cols: in basis)
    void apply_isometry(const cmat& w, const std::vector<int>& in, const std::vector<int>& out) {
        std::vector<int> order;
        for (int l : st.qubit_labels)
            if (std::find(in.begin(), in.end(), l) == in.end()) order.push_back(l);
        const std::vector<int> rest = order;
        order.insert(order.end(), in.begin(), in.end());
        const cmat m = to_dense(order);
        const cmat big = Eigen::kroneckerProduct(cmat::Identity(Eigen::Index(1) << rest.size(),
                                                                Eigen::Index(1) << rest.size()),
                                                 w);
        st.matrix = big * m * big.adjoint();
        st.qubit_labels = rest;
        st.qubit_labels.insert(st.qubit_labels.end(), out.begin(), out.end());
    }

    cmat to_dense(const std::vector<int>& order) const {
        if (order == st.qubit_labels) return st.matrix;
        const int n = st.size();
        const Eigen::Index d = st.matrix.rows();
        std::vector<int> src_bit(n);
        for (int i = 0; i < n; ++i) src_bit[i] = st.bit(order[i]);
        std::vector<Eigen::Index> map(d);
        for (Eigen::Index r = 0; r < d; ++r) {
            Eigen::Index s = 0;
            for (int i = 0; i < n; ++i)
                if (r & (Eigen::Index(1) << (n - 1 - i))) s |= Eigen::Index(1) << src_bit[i];
            map[r] = s;
        }
        cmat out(d, d);
        for (Eigen::Index c = 0; c < d; ++c)
            for (Eigen::Index r = 0; r < d; ++r) out(r, c) = st.matrix(map[r], map[c]);
        return out;
    }

    static cmat projector(basis b) {
        cmat p = cmat::Zero(2, 2);
        switch (b) {
        case basis::zero: p(0, 0) = 1; break;
        case basis::one: p(1, 1) = 1; break;
        case basis::plus: p.setConstant(0.5); break;
        case basis::minus:
            p.setConstant(-0.5);
            p(0, 0) = p(1, 1) = 0.5;
            break;
        }
        return p;
    }

private:
    template <class F>
    void permute(F f) {
        const Eigen::Index d = st.matrix.rows();
        std::vector<Eigen::Index> pi(d);
        for (Eigen::Index i = 0; i < d; ++i) pi[i] = f(i);
        cmat out(d, d);
        for (Eigen::Index j = 0; j < d; ++j)
            for (Eigen::Index i = 0; i < d; ++i) out(pi[i], pi[j]) = st.matrix(i, j);
        st.matrix = std::move(out);
    }
};

} // namespace adft
