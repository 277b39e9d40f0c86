#include "adft/noise.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace adft;

TEST(ad_kraus, endpoints) {
    auto k0 = ad_kraus(0.0);
    EXPECT_TRUE(k0[0].isApprox(cmat::Identity(2, 2)));
    EXPECT_EQ(k0[1].cwiseAbs().maxCoeff(), 0.0);
    auto k1 = ad_kraus(1.0);
    EXPECT_DOUBLE_EQ(k1[0](1, 1).real(), 0.0);
    EXPECT_DOUBLE_EQ(k1[1](0, 1).real(), 1.0);
}

TEST(ad_kraus, p036) {
    auto k = ad_kraus(0.36);
    EXPECT_NEAR(k[0](0, 0).real(), 1.0, 1e-15);
    EXPECT_NEAR(k[0](1, 1).real(), 0.8, 1e-15);
    EXPECT_NEAR(k[1](0, 1).real(), 0.6, 1e-15);
    EXPECT_EQ(k[1](1, 0), cplx(0));
}

TEST(ad_kraus, completeness) {
    for (double p : {0.0, 0.01, 0.3, 0.99, 1.0}) {
        auto k = ad_kraus(p);
        cmat s = k[0].adjoint() * k[0] + k[1].adjoint() * k[1];
        EXPECT_LT((s - cmat::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
    }
    EXPECT_THROW(ad_kraus(-0.1), std::invalid_argument);
    EXPECT_THROW(ad_kraus(1.5), std::invalid_argument);
}

TEST(decompose_check, fifty_points) {
    for (int i = 0; i < 50; ++i) {
        const double p = std::pow(10.0, -6.0 + 6.0 * i / 49.0) * (i == 49 ? 0.999 : 1.0);
        EXPECT_LT(decompose_check(p), 1e-12) << p;
    }
    EXPECT_LT(decompose_check(0.5), 1e-12);
    EXPECT_THROW(decompose_check(0.0), std::invalid_argument);
}

TEST(decompose_check, z2_coefficient_leading_order) {
    for (double p : {1e-3, 1e-4, 1e-5}) EXPECT_NEAR(z2_coefficient(p) / (p * p / 16), 1.0, p);
}

TEST(inject_fault, fa_lowers) {
    auto r = inject_fault(alloc_state({0}, "1"), 0, fault_kind::Fa);
    EXPECT_TRUE(r.matrix.isApprox(alloc_state({0}, "0").matrix));
}

TEST(inject_fault, fz_on_plus) {
    auto plus = alloc_state({0}, "0");
    apply_gate(plus, {gate_kind::H, {0}});
    auto r = inject_fault(plus, 0, fault_kind::Fz);
    // (|+><-| + |-><+|)/2 = diag(1/2, -1/2)
    EXPECT_NEAR(r.matrix(0, 0).real(), 0.5, 1e-15);
    EXPECT_NEAR(r.matrix(1, 1).real(), -0.5, 1e-15);
    EXPECT_NEAR(std::abs(r.matrix(0, 1)), 0.0, 1e-15);
    EXPECT_NEAR(r.trace(), 0.0, 1e-15);
}

TEST(inject_fault, fa_through_x_is_raising) {
    // X E X = E^dagger = |1><0|
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g;
    cvec v(2);
    v << cplx(g(rng), g(rng)), cplx(g(rng), g(rng));
    auto st = pure_state({0}, v.normalized());
    apply_gate(st, {gate_kind::X, {0}});
    st = inject_fault(st, 0, fault_kind::Fa);
    apply_gate(st, {gate_kind::X, {0}});
    cmat ed = cmat::Zero(2, 2);
    ed(1, 0) = 1;
    const cmat expect = ed * v.normalized() * v.normalized().adjoint() * ed.adjoint();
    EXPECT_LT((st.matrix - expect).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(inject_fault, f_has_half_trace) {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> g;
    for (int t = 0; t < 20; ++t) {
        cvec v(4);
        for (auto& x : v) x = cplx(g(rng), g(rng));
        auto st = pure_state({0, 1}, v.normalized());
        auto f = inject_fault(st, t % 2, fault_kind::F);
        EXPECT_NEAR(f.trace(), 0.5, 1e-12);
        auto fz = inject_fault(st, t % 2, fault_kind::Fz);
        EXPECT_NEAR(fz.trace(), 1.0 - 2.0 * partial_trace(st, {1 - t % 2}).matrix(1, 1).real(), 1e-12);
    }
}

TEST(inject_fault, full_ad_matches_kraus) {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g;
    cvec v(4);
    for (auto& x : v) x = cplx(g(rng), g(rng));
    auto st = pure_state({0, 1}, v.normalized());
    auto a = inject_fault(st, 1, fault_kind::full_ad, 0.3);
    auto b = st;
    apply_kraus(b, ad_kraus(0.3), {1});
    EXPECT_LT((a.matrix - b.matrix).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_THROW(inject_fault(st, 0, fault_kind::none), std::invalid_argument);
}

TEST(fault_kind, names_round_trip) {
    for (auto k : {fault_kind::none, fault_kind::full_ad, fault_kind::F, fault_kind::Fa, fault_kind::Fz,
                   fault_kind::Z2})
        EXPECT_EQ(parse_fault(fault_name(k)), k);
    EXPECT_THROW(parse_fault("Y"), std::invalid_argument);
}

TEST(noise_model, range) {
    EXPECT_NO_THROW(noise_model(0.5));
    EXPECT_THROW(noise_model(-1e-9), std::invalid_argument);
}
