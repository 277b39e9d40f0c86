#pragma once

#include "engine.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace adft {

// FullAD is the whole channel at strength p; the others are the terms of
// E_AD = a^2 id + p F + b^2 Z(.)Z with F = Fz/2 + Fa, applied without prefactor.
enum class fault_kind { none, full_ad, F, Fa, Fz, Z2 };

inline std::string fault_name(fault_kind k) {
    switch (k) {
    case fault_kind::none: return "none";
    case fault_kind::full_ad: return "FullAD";
    case fault_kind::F: return "F";
    case fault_kind::Fa: return "Fa";
    case fault_kind::Fz: return "Fz";
    case fault_kind::Z2: return "Z2";
    }
    return "?";
}

inline fault_kind parse_fault(const std::string& s) {
    for (auto k : {fault_kind::none, fault_kind::full_ad, fault_kind::F, fault_kind::Fa, fault_kind::Fz,
                   fault_kind::Z2})
        if (fault_name(k) == s) return k;
    throw std::invalid_argument("unknown fault kind " + s);
}

// Relative order-p weight of a fault term: p for Fa, p/2 for Fz (it enters F
// with a factor 1/2), p^2/16 ~ (p/2)^2/4 handled as 1/4 for Z2.
inline double kind_weight(fault_kind k) {
    switch (k) {
    case fault_kind::Fa: return 1.0;
    case fault_kind::Fz: return 0.5;
    case fault_kind::Z2: return 0.25;
    default: return 1.0;
    }
}

// Gates: ideal then AD on every participating qubit. Measurements: AD then
// ideal. |0> preparation is noiseless, |+> preparation is ideal then AD.
struct noise_model {
    double p = 0.0;

    explicit noise_model(double p_ = 0.0) : p(p_) {
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("noise_model: p outside [0,1]");
    }
};

inline std::vector<cmat> ad_kraus(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("ad_kraus: p outside [0,1]");
    cmat e0 = cmat::Zero(2, 2), e1 = cmat::Zero(2, 2);
    e0(0, 0) = 1;
    e0(1, 1) = std::sqrt(1 - p);
    e1(0, 1) = std::sqrt(p);
    return {e0, e1};
}

template <class State>
void apply_fault(State& st, int label, fault_kind k, double p = 0.0) {
    switch (k) {
    case fault_kind::none: return;
    case fault_kind::full_ad: {
        if constexpr (requires { st.amplitude_damp(label, p); }) {
            st.amplitude_damp(label, p);
        } else {
            State damped = st;
            damped.lower(label);
            damped.scale(p);
            st.diag(label, 1.0, std::sqrt(1 - p));
            st.accumulate(damped);
        }
        return;
    }
    case fault_kind::Fa: st.lower(label); return;
    case fault_kind::Fz: st.anticommutator_z(label); return;
    case fault_kind::Z2: st.gate(gate_kind::Z, {label}); return;
    case fault_kind::F: {
        State damped = st;
        damped.lower(label);
        st.anticommutator_z(label);
        st.scale(0.5);
        st.accumulate(damped);
        return;
    }
    }
    throw std::invalid_argument("apply_fault: unknown kind");
}

inline operator_state inject_fault(const operator_state& in, int qubit, fault_kind k, double p = 0.0) {
    if (k == fault_kind::none) throw std::invalid_argument("inject_fault: no fault kind given");
    dense_state d;
    d.st = in;
    apply_fault(d, qubit, k, p);
    d.st.trace_weight = d.st.trace();
    return d.st;
}

namespace detail {

// superoperator of rho -> sum_k A_k rho B_k^dagger on vec(rho) (column stacking)
inline cmat superop(const std::vector<std::pair<cmat, cmat>>& ab) {
    cmat s = cmat::Zero(4, 4);
    for (auto& [a, b] : ab) s += Eigen::kroneckerProduct(b.conjugate(), a);
    return s;
}

} // namespace detail

// max-norm residual of E_AD = ((1+s)/2)^2 id + p F + ((1-s)/2)^2 Z(.)Z, s = sqrt(1-p)
inline double decompose_check(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("decompose_check: p outside (0,1)");
    const auto k = ad_kraus(p);
    const cmat id = cmat::Identity(2, 2);
    const cmat z = gate_matrix(gate_kind::Z);
    cmat e = cmat::Zero(2, 2);
    e(0, 1) = 1;
    const cmat ead = detail::superop({{k[0], k[0]}, {k[1], k[1]}});
    const cmat fz = 0.5 * detail::superop({{z, id}, {id, z}});
    const cmat fa = detail::superop({{e, e}});
    const cmat f = 0.5 * fz + fa;
    const double s = std::sqrt(1 - p);
    const double a2 = 0.25 * (1 + s) * (1 + s), b2 = 0.25 * (1 - s) * (1 - s);
    const cmat rec = a2 * detail::superop({{id, id}}) + p * f + b2 * detail::superop({{z, z}});
    return (ead - rec).cwiseAbs().maxCoeff();
}

// coefficient of Z(.)Z in the exact decomposition
inline double z2_coefficient(double p) {
    const double s = std::sqrt(1 - p);
    return 0.25 * (1 - s) * (1 - s);
}

} // namespace adft
