#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace adft {

using cplx = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;

inline constexpr double inv_sqrt2 = 0.70710678118654752440;

enum class gate_kind { I, X, Z, H, S, T, CNOT, CZ, CCZ };

struct gate_spec {
    gate_kind kind = gate_kind::I;
    std::vector<int> targets;
};

enum class meas_kind { z_single, x_single, zz_parity, xxxx, x8 };
enum class meas_mode { channel, branch };

struct measurement_spec {
    meas_kind kind = meas_kind::z_single;
    std::vector<int> targets;
    meas_mode mode = meas_mode::branch;
};

inline int gate_arity(gate_kind k) {
    switch (k) {
    case gate_kind::CNOT:
    case gate_kind::CZ: return 2;
    case gate_kind::CCZ: return 3;
    default: return 1;
    }
}

inline std::string gate_name(gate_kind k) {
    switch (k) {
    case gate_kind::I: return "I";
    case gate_kind::X: return "X";
    case gate_kind::Z: return "Z";
    case gate_kind::H: return "H";
    case gate_kind::S: return "S";
    case gate_kind::T: return "T";
    case gate_kind::CNOT: return "CNOT";
    case gate_kind::CZ: return "CZ";
    case gate_kind::CCZ: return "CCZ";
    }
    return "?";
}

// unitary of a gate on its own qubits, first target = most significant bit
inline cmat gate_matrix(gate_kind k) {
    const cplx i1(0, 1);
    cmat m;
    switch (k) {
    case gate_kind::I: m = cmat::Identity(2, 2); break;
    case gate_kind::X: m.resize(2, 2); m << 0, 1, 1, 0; break;
    case gate_kind::Z: m.resize(2, 2); m << 1, 0, 0, -1; break;
    case gate_kind::H: m.resize(2, 2); m << inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2; break;
    case gate_kind::S: m.resize(2, 2); m << 1, 0, 0, i1; break;
    case gate_kind::T: m.resize(2, 2); m << 1, 0, 0, std::polar(1.0, M_PI / 4); break;
    case gate_kind::CNOT:
        m = cmat::Zero(4, 4);
        m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
        break;
    case gate_kind::CZ:
        m = cmat::Identity(4, 4);
        m(3, 3) = -1;
        break;
    case gate_kind::CCZ:
        m = cmat::Identity(8, 8);
        m(7, 7) = -1;
        break;
    }
    return m;
}

// Density operator on labelled qubits. The first label is the most
// significant bit of the matrix index. The matrix is not normalised; its
// trace is the weight of the branch it represents.
struct operator_state {
    std::vector<int> qubit_labels;
    cmat matrix;
    double trace_weight = 1.0;

    int size() const { return static_cast<int>(qubit_labels.size()); }

    int position(int label) const {
        auto it = std::find(qubit_labels.begin(), qubit_labels.end(), label);
        if (it == qubit_labels.end())
            throw std::out_of_range("unknown qubit label " + std::to_string(label));
        return static_cast<int>(it - qubit_labels.begin());
    }

    int bit(int label) const { return size() - 1 - position(label); }

    double trace() const { return matrix.trace().real(); }
};

namespace detail {

// M <- K M acting on the qubits at the given bit positions (first = msb of K)
inline void apply_left(cmat& m, const cmat& k, const std::vector<int>& bits) {
    const int nk = static_cast<int>(bits.size());
    const int dk = 1 << nk;
    const Eigen::Index dim = m.rows();
    std::vector<Eigen::Index> offs(dk, 0);
    Eigen::Index mask = 0;
    for (int a = 0; a < dk; ++a)
        for (int t = 0; t < nk; ++t)
            if (a & (1 << (nk - 1 - t))) offs[a] |= Eigen::Index(1) << bits[t];
    for (int t = 0; t < nk; ++t) mask |= Eigen::Index(1) << bits[t];

    std::vector<cplx> in(dk), out(dk);
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        cplx* col = m.col(j).data();
        for (Eigen::Index base = 0; base < dim; ++base) {
            if (base & mask) continue;
            for (int a = 0; a < dk; ++a) in[a] = col[base | offs[a]];
            for (int a = 0; a < dk; ++a) {
                cplx s = 0;
                for (int b = 0; b < dk; ++b) s += k(a, b) * in[b];
                out[a] = s;
            }
            for (int a = 0; a < dk; ++a) col[base | offs[a]] = out[a];
        }
    }
}

inline bool is_diagonal(const cmat& k) {
    for (Eigen::Index i = 0; i < k.rows(); ++i)
        for (Eigen::Index j = 0; j < k.cols(); ++j)
            if (i != j && k(i, j) != cplx(0)) return false;
    return true;
}

inline std::vector<int> bits_of(const operator_state& st, const std::vector<int>& labels) {
    std::vector<int> b;
    b.reserve(labels.size());
    for (int l : labels) b.push_back(st.bit(l));
    return b;
}

} // namespace detail

// |b><b| on the given labels
inline operator_state alloc_state(const std::vector<int>& labels, const std::string& basis_string) {
    if (basis_string.size() != labels.size()) throw std::invalid_argument("alloc_state: length mismatch");
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i + 1; j < labels.size(); ++j)
            if (labels[i] == labels[j]) throw std::invalid_argument("alloc_state: duplicate label");
    Eigen::Index idx = 0;
    for (char c : basis_string) {
        if (c != '0' && c != '1') throw std::invalid_argument("alloc_state: basis string must be binary");
        idx = (idx << 1) | (c == '1');
    }
    operator_state st;
    st.qubit_labels = labels;
    const Eigen::Index dim = Eigen::Index(1) << labels.size();
    st.matrix = cmat::Zero(dim, dim);
    st.matrix(idx, idx) = 1;
    st.trace_weight = 1.0;
    return st;
}

inline operator_state pure_state(const std::vector<int>& labels, const cvec& psi) {
    operator_state st;
    st.qubit_labels = labels;
    st.matrix = psi * psi.adjoint();
    st.trace_weight = st.trace();
    return st;
}

// rho <- K rho K^dagger on the given labels
inline void apply_operator(operator_state& st, const cmat& k, const std::vector<int>& labels) {
    auto bits = detail::bits_of(st, labels);
    if (detail::is_diagonal(k)) {
        const int nk = static_cast<int>(bits.size());
        const Eigen::Index dim = st.matrix.rows();
        std::vector<cplx> d(dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            int a = 0;
            for (int t = 0; t < nk; ++t)
                if (i & (Eigen::Index(1) << bits[t])) a |= 1 << (nk - 1 - t);
            d[i] = k(a, a);
        }
        for (Eigen::Index j = 0; j < dim; ++j) {
            const cplx dj = std::conj(d[j]);
            for (Eigen::Index i = 0; i < dim; ++i) st.matrix(i, j) *= d[i] * dj;
        }
        return;
    }
    detail::apply_left(st.matrix, k, bits);
    cmat a = st.matrix.adjoint();
    detail::apply_left(a, k, bits);
    st.matrix = a.adjoint();
}

inline void apply_gate(operator_state& st, const gate_spec& g) {
    if (static_cast<int>(g.targets.size()) != gate_arity(g.kind))
        throw std::invalid_argument("gate " + gate_name(g.kind) + " has wrong arity");
    if (g.kind == gate_kind::I) return;
    apply_operator(st, gate_matrix(g.kind), g.targets);
}

// rho <- sum_k K rho K^dagger for Kraus operators on one or more labels
inline void apply_kraus(operator_state& st, const std::vector<cmat>& kraus,
                        const std::vector<int>& labels) {
    cmat acc = cmat::Zero(st.matrix.rows(), st.matrix.cols());
    for (const auto& k : kraus) {
        operator_state tmp = st;
        apply_operator(tmp, k, labels);
        acc += tmp.matrix;
    }
    st.matrix = std::move(acc);
    st.trace_weight = st.trace();
}

// appends a qubit in |0> or |+> as the new least significant bit
inline void add_qubit(operator_state& st, int label, bool plus = false) {
    cmat q = cmat::Zero(2, 2);
    if (plus)
        q.setConstant(0.5);
    else
        q(0, 0) = 1;
    cmat m = Eigen::kroneckerProduct(st.matrix, q);
    st.matrix = std::move(m);
    st.qubit_labels.push_back(label);
}

inline operator_state partial_trace(const operator_state& st, const std::vector<int>& trace_out) {
    std::vector<int> keep;
    for (int l : st.qubit_labels)
        if (std::find(trace_out.begin(), trace_out.end(), l) == trace_out.end()) keep.push_back(l);
    const int nk = static_cast<int>(keep.size());
    const int nt = static_cast<int>(trace_out.size());
    std::vector<int> kb, tb;
    for (int l : keep) kb.push_back(st.bit(l));
    for (int l : trace_out) tb.push_back(st.bit(l));
    auto expand = [&](Eigen::Index a, Eigen::Index t) {
        Eigen::Index idx = 0;
        for (int i = 0; i < nk; ++i)
            if (a & (Eigen::Index(1) << (nk - 1 - i))) idx |= Eigen::Index(1) << kb[i];
        for (int i = 0; i < nt; ++i)
            if (t & (Eigen::Index(1) << (nt - 1 - i))) idx |= Eigen::Index(1) << tb[i];
        return idx;
    };
    operator_state out;
    out.qubit_labels = keep;
    const Eigen::Index dk = Eigen::Index(1) << nk, dt = Eigen::Index(1) << nt;
    out.matrix = cmat::Zero(dk, dk);
    for (Eigen::Index a = 0; a < dk; ++a)
        for (Eigen::Index b = 0; b < dk; ++b) {
            cplx s = 0;
            for (Eigen::Index t = 0; t < dt; ++t) s += st.matrix(expand(a, t), expand(b, t));
            out.matrix(a, b) = s;
        }
    out.trace_weight = st.trace_weight;
    return out;
}

struct measure_outcome {
    int bit = -1;
    double prob = 0;
    operator_state post;
};

namespace detail {

inline std::pair<char, std::vector<int>> pauli_of(const measurement_spec& m) {
    switch (m.kind) {
    case meas_kind::z_single:
        if (m.targets.size() != 1) throw std::invalid_argument("Z_single takes one qubit");
        return {'Z', m.targets};
    case meas_kind::x_single:
        if (m.targets.size() != 1) throw std::invalid_argument("X_single takes one qubit");
        return {'X', m.targets};
    case meas_kind::zz_parity:
        if (m.targets.size() != 2) throw std::invalid_argument("ZZ_parity takes two qubits");
        return {'Z', m.targets};
    case meas_kind::xxxx:
        if (m.targets.size() != 4) throw std::invalid_argument("XXXX takes four qubits");
        return {'X', m.targets};
    case meas_kind::x8:
        if (m.targets.size() != 8) throw std::invalid_argument("X8 takes eight qubits");
        return {'X', m.targets};
    }
    return {'Z', {}};
}

} // namespace detail

// Non-destructive measurement of a Pauli string. Branch mode returns one
// entry per outcome with non-zero probability; channel mode returns a single
// entry (bit = -1) holding the sum of the branches.
inline std::vector<measure_outcome> measure(const operator_state& st, const measurement_spec& m) {
    auto [p, targets] = detail::pauli_of(m);
    operator_state ps = st;
    for (int l : targets) apply_operator(ps, gate_matrix(p == 'X' ? gate_kind::X : gate_kind::Z), {l});
    // P rho, rho P and P rho P give the projected branches without forming projectors
    operator_state left = st, right = st;
    for (int l : targets) {
        auto b = st.bit(l);
        cmat k = gate_matrix(p == 'X' ? gate_kind::X : gate_kind::Z);
        detail::apply_left(left.matrix, k, {b});
    }
    right.matrix = left.matrix.adjoint();
    const double tr = st.trace();
    std::vector<measure_outcome> out;
    for (int bit = 0; bit < 2; ++bit) {
        const double sgn = bit == 0 ? 1.0 : -1.0;
        measure_outcome o;
        o.bit = bit;
        o.post = st;
        o.post.matrix = 0.25 * (st.matrix + sgn * left.matrix + sgn * right.matrix + ps.matrix);
        o.post.trace_weight = o.post.trace();
        o.prob = tr > 0 ? o.post.trace() / tr : 0.0;
        if (o.prob > 1e-15) out.push_back(std::move(o));
    }
    if (m.mode == meas_mode::channel) {
        measure_outcome sum;
        sum.bit = -1;
        sum.prob = 1.0;
        sum.post = st;
        sum.post.matrix.setZero();
        for (auto& o : out) sum.post.matrix += o.post.matrix;
        sum.post.trace_weight = sum.post.trace();
        return {sum};
    }
    return out;
}

inline cmat hermitian_sqrt(const cmat& a) {
    Eigen::SelfAdjointEigenSolver<cmat> es(0.5 * (a + a.adjoint()));
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

// Uhlmann fidelity between normalised rho and sigma
inline double fidelity_general(const cmat& rho, const cmat& sigma) {
    const cmat r = rho / rho.trace().real();
    const cmat s = sigma / sigma.trace().real();
    const cmat sr = hermitian_sqrt(r);
    const cmat inner = sr * s * sr;
    Eigen::SelfAdjointEigenSolver<cmat> es(0.5 * (inner + inner.adjoint()));
    const double f = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return f * f;
}

inline double infidelity_pure(const cmat& rho, const cvec& psi) {
    const double tr = rho.trace().real();
    const double ov = (psi.adjoint() * rho * psi)(0, 0).real() / psi.squaredNorm();
    return 1.0 - ov / tr;
}

// 1 - F(rho, sigma); uses <psi|rho|psi> when sigma has rank one
inline double infidelity(const cmat& rho, const cmat& sigma) {
    Eigen::SelfAdjointEigenSolver<cmat> es(0.5 * (sigma + sigma.adjoint()));
    const auto& ev = es.eigenvalues();
    const double tr = ev.sum();
    int rank = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev(i) > 1e-12 * tr) ++rank;
    if (rank == 1) return infidelity_pure(rho, es.eigenvectors().col(ev.size() - 1));
    return 1.0 - fidelity_general(rho, sigma);
}

inline double infidelity(const operator_state& rho, const operator_state& sigma) {
    if (rho.qubit_labels != sigma.qubit_labels)
        throw std::invalid_argument("infidelity: qubit labels differ");
    return infidelity(rho.matrix, sigma.matrix);
}

// Bloch-sphere pure state cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>
inline cvec bloch_state(double theta, double phi) {
    cvec v(2);
    v(0) = std::cos(theta / 2);
    v(1) = std::polar(std::sin(theta / 2), phi);
    return v;
}

} // namespace adft
