#include "adft/gadgets.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace adft;

namespace {

cvec ket(std::initializer_list<std::pair<int, double>> e) {
    cvec v = cvec::Zero(16);
    for (auto [i, a] : e) v(i) = a;
    return v;
}

std::pair<cplx, cplx> random_amps(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    cplx a(g(rng), g(rng)), b(g(rng), g(rng));
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    return {a / n, b / n};
}

cmat logical_rho(cplx a, cplx b) {
    cvec v(2);
    v << a, b;
    return v * v.adjoint();
}

} // namespace

TEST(code, codewords) {
    EXPECT_TRUE(logical_ket(0).isApprox(ket({{0b0000, inv_sqrt2}, {0b1111, inv_sqrt2}})));
    EXPECT_TRUE(logical_ket(1).isApprox(ket({{0b1100, inv_sqrt2}, {0b0011, inv_sqrt2}})));
    EXPECT_TRUE((encoder().adjoint() * encoder()).isApprox(cmat::Identity(2, 2)));
    EXPECT_THROW(encode(1.0, 1.0), std::invalid_argument);
}

TEST(code, stabilizers_fix_codespace) {
    const cmat v = encoder();
    auto apply = [&](std::vector<gate_spec> gs) {
        operator_state st;
        st.qubit_labels = {0, 1, 2, 3};
        st.matrix = v * v.adjoint();
        for (auto& g : gs) apply_gate(st, g);
        return st.matrix;
    };
    const cmat p = v * v.adjoint();
    EXPECT_TRUE(apply({{gate_kind::Z, {0}}, {gate_kind::Z, {1}}}).isApprox(p));
    EXPECT_TRUE(apply({{gate_kind::Z, {2}}, {gate_kind::Z, {3}}}).isApprox(p));
    EXPECT_TRUE(apply({{gate_kind::X, {0}}, {gate_kind::X, {1}}, {gate_kind::X, {2}}, {gate_kind::X, {3}}}).isApprox(p));
}

TEST(code, logical_operators) {
    auto st = pure_state({0, 1, 2, 3}, logical_ket(0));
    for (auto& g : logical_operator(logical_name::X)) apply_gate(st, g);
    EXPECT_NEAR(infidelity_pure(st.matrix, logical_ket(1)), 0.0, 1e-14);

    cvec v = logical_ket(1);
    cvec w = v;
    for (int i = 0; i < 16; ++i) {
        const int sgn = ((i >> 3) & 1) ^ ((i >> 1) & 1);
        w(i) *= sgn ? -1.0 : 1.0;
    }
    EXPECT_TRUE(w.isApprox(-v));
    auto s1 = pure_state({0, 1, 2, 3}, logical_ket(0) + logical_ket(1));
    for (auto& g : logical_operator(logical_name::Z)) apply_gate(s1, g);
    EXPECT_NEAR(infidelity_pure(s1.matrix, logical_ket(0) - logical_ket(1)), 0.0, 1e-14);
}

TEST(code, damping_produces_product_states) {
    // qubit-1 damping leaves |01> on qubits 1,2 and a|11> + b|00> on qubits 3,4
    std::mt19937_64 rng(1);
    auto [a, b] = random_amps(rng);
    auto st = inject_fault(encode(a, b), 0, fault_kind::Fa);
    cvec phi = cvec::Zero(16);
    phi(0b0111) = a;
    phi(0b0100) = b;
    EXPECT_NEAR(infidelity_pure(st.matrix, phi), 0.0, 1e-14);
    EXPECT_NEAR(st.trace(), 0.5, 1e-14);
}

TEST(diagnose, table_rows) {
    syndrome_record r;
    EXPECT_EQ(diagnose(r).v, verdict::no_damping);
    r.s1 = 0;
    r.s2 = 0;
    EXPECT_EQ(diagnose(r).v, verdict::no_damping);

    syndrome_record q1{.s1 = 1, .s2 = 0, .u1 = 0, .v1 = 1};
    EXPECT_EQ(diagnose(q1), (diagnosis{verdict::qubit_damped, 1}));
    syndrome_record q2{.s1 = 1, .s2 = 0, .u1 = 1, .v1 = 0};
    EXPECT_EQ(diagnose(q2), (diagnosis{verdict::qubit_damped, 2}));
    syndrome_record q3{.s1 = 0, .s2 = 1, .u2 = 0, .v2 = 1};
    EXPECT_EQ(diagnose(q3), (diagnosis{verdict::qubit_damped, 3}));
    syndrome_record q4{.s1 = 0, .s2 = 1, .u2 = 1, .v2 = 0};
    EXPECT_EQ(diagnose(q4), (diagnosis{verdict::qubit_damped, 4}));
    syndrome_record p12{.s1 = 1, .s2 = 0, .u1 = 1, .v1 = 1};
    EXPECT_EQ(diagnose(p12), (diagnosis{verdict::parity_cnot_fault, 12}));
    syndrome_record p34{.s1 = 0, .s2 = 1, .u2 = 1, .v2 = 1};
    EXPECT_EQ(diagnose(p34), (diagnosis{verdict::parity_cnot_fault, 34}));
}

TEST(diagnose, inconsistent_records_are_unknown) {
    syndrome_record both{.s1 = 1, .s2 = 1};
    EXPECT_EQ(diagnose(both).v, verdict::unknown);
    syndrome_record zero{.s1 = 1, .s2 = 0, .u1 = 0, .v1 = 0};
    EXPECT_EQ(diagnose(zero).v, verdict::unknown);
    syndrome_record missing{.s1 = 0, .s2 = 1};
    EXPECT_EQ(diagnose(missing).v, verdict::unknown);
    syndrome_record odd{.s1 = 0, .s2 = 0, .r = std::array<int, 4>{1, 0, 1, 0}};
    EXPECT_EQ(diagnose(odd).v, verdict::unknown);
    syndrome_record no_parity{.s1 = 0, .s2 = 0, .r = std::array<int, 4>{0, 0, 1, 0}};
    EXPECT_EQ(diagnose(no_parity).v, verdict::unknown);
}

TEST(diagnose, flag_patterns) {
    auto with_r = [](std::array<int, 4> r, std::optional<int> s12 = {}, std::optional<int> s34 = {}) {
        syndrome_record x;
        x.s1 = 0;
        x.s2 = 0;
        x.r = r;
        x.s12 = s12;
        x.s34 = s34;
        return diagnose(x);
    };
    EXPECT_EQ(with_r({0, 0, 0, 0}).v, verdict::no_damping);
    EXPECT_EQ(with_r({1, 1, 0, 0}), (diagnosis{verdict::data_fault_in_m1, 2}));
    EXPECT_EQ(with_r({1, 1, 1, 0}), (diagnosis{verdict::data_fault_in_m1, 3}));
    EXPECT_EQ(with_r({1, 1, 1, 1}), (diagnosis{verdict::data_fault_in_m1, 4}));
    EXPECT_EQ(with_r({0, 1, 1, 1}), (diagnosis{verdict::data_fault_in_m1, 5}));
    EXPECT_EQ(with_r({0, 0, 1, 1}), (diagnosis{verdict::data_fault_in_m1, 6}));
    EXPECT_EQ(with_r({1, 0, 0, 0}, 0), (diagnosis{verdict::flag_fault, 1}));
    EXPECT_EQ(with_r({1, 0, 0, 0}, 1), (diagnosis{verdict::qubit_damped, 1}));
    EXPECT_EQ(with_r({0, 0, 0, 1}, {}, 1), (diagnosis{verdict::qubit_damped, 4}));
    EXPECT_EQ(to_string(with_r({0, 0, 1, 0}, {}, 0)), "FlagFault(3)");
}

TEST(ideal_decode, codeword_is_ideal) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 10; ++t) {
        auto [a, b] = random_amps(rng);
        auto [out, rep] = ideal_decode(encode(a, b));
        EXPECT_EQ(rep.residual, "ideal");
        EXPECT_EQ(classify_residual(out.matrix, logical_rho(a, b)), "ideal");
        EXPECT_NEAR(out.trace(), 1.0, 1e-12);
    }
}

TEST(ideal_decode, single_damping_is_corrected) {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 4; ++k) {
        auto [a, b] = random_amps(rng);
        auto [out, rep] = ideal_decode(inject_fault(encode(a, b), k, fault_kind::Fa));
        EXPECT_EQ(classify_residual(out.matrix, logical_rho(a, b), rep.leak_weight), "ideal") << k;
    }
}

TEST(ideal_decode, z_on_qubit_three_is_logical_z) {
    std::mt19937_64 rng(4);
    auto [a, b] = random_amps(rng);
    for (int k = 0; k < 4; ++k) {
        auto st = encode(a, b);
        apply_gate(st, {gate_kind::Z, {k}});
        auto [out, rep] = ideal_decode(st);
        // Z on qubits 1 and 2 is fixed on qubit 1; on qubits 3 or 4 it completes Z1 Z3
        EXPECT_EQ(classify_residual(out.matrix, logical_rho(a, b)), k < 2 ? "ideal" : "logical-Z") << k;
    }
}

TEST(ideal_decode, leakage_reported) {
    std::mt19937_64 rng(5);
    auto [a, b] = random_amps(rng);
    auto st = encode(a, b);
    apply_gate(st, {gate_kind::X, {0}});
    apply_gate(st, {gate_kind::X, {2}});
    auto [out, rep] = ideal_decode(st);
    EXPECT_NEAR(rep.leak_weight, 1.0, 1e-12);
    EXPECT_EQ(classify_residual(out.matrix, logical_rho(a, b), rep.leak_weight), "leakage");
}

TEST(ideal_decode, zero_trace_flagged) {
    auto st = encode(1.0, 0.0);
    st.matrix.setZero();
    EXPECT_EQ(ideal_decode(st).second.residual, "undefined-normalisation");
}

TEST(readout, logical_z) {
    EXPECT_EQ(decode_logical_z({0, 0, 0, 0}), 0);
    EXPECT_EQ(decode_logical_z({1, 1, 1, 1}), 0);
    EXPECT_EQ(decode_logical_z({1, 1, 0, 0}), 1);
    EXPECT_EQ(decode_logical_z({0, 0, 1, 1}), 1);
    EXPECT_EQ(decode_logical_z({1, 0, 1, 0}), -1);
    // one damped qubit reads 0
    EXPECT_EQ(decode_logical_z({0, 1, 1, 1}), 0);
    EXPECT_EQ(decode_logical_z({1, 0, 0, 0}), 1);
    EXPECT_EQ(decode_logical_z({0, 0, 1, 0}), 1);
}

TEST(readout, logical_x) {
    using m = std::array<std::array<int, 2>, 3>;
    EXPECT_EQ(decode_logical_x(m{{{0, 0}, {0, 0}, {0, 0}}}), 0);
    EXPECT_EQ(decode_logical_x(m{{{1, 0}, {1, 0}, {0, 0}}}), 1);
    // invalid outcomes are dropped and the rest vote
    EXPECT_EQ(decode_logical_x(m{{{1, 1}, {1, 0}, {1, 0}}}), 1);
    EXPECT_EQ(decode_logical_x(m{{{0, 1}, {0, 1}, {1, 0}}}), 1);
    // tie broken by the third pair
    EXPECT_EQ(decode_logical_x(m{{{0, 0}, {1, 0}, {1, 1}}}), -1);
    EXPECT_EQ(decode_logical_x(m{{{0, 0}, {1, 1}, {1, 0}}}), 1);
    EXPECT_EQ(decode_logical_x(m{{{0, 1}, {1, 1}, {1, 1}}}), -1);
}
