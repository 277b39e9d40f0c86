#include "adft/report.hpp"

#include <gtest/gtest.h>

using namespace adft;

namespace {

// C(L,3) + C(L,2) + L by direct summation
long long b_oracle(long long L) {
    long long n = 0;
    for (long long i = 0; i < L; ++i) {
        ++n;
        for (long long j = i + 1; j < L; ++j) {
            ++n;
            n += L - j - 1;
        }
    }
    return n;
}

} // namespace

TEST(compute_B, reference_values) {
    EXPECT_EQ(compute_B(366), 8171621);
    EXPECT_EQ(compute_B(732), 65371138);
    for (long long L : {0, 1, 2, 3, 10, 211, 471}) EXPECT_EQ(compute_B(L), b_oracle(L)) << L;
    EXPECT_THROW(compute_B(-1), std::invalid_argument);
}

TEST(combo_weight, rules) {
    path_verdict v;
    EXPECT_EQ(combo_weight(fault_kind::Fa, fault_kind::Fa, v), 0.0);
    v.malignant = true;
    v.bad_fraction = 1.0;
    EXPECT_EQ(combo_weight(fault_kind::Fa, fault_kind::Fa, v), 1.0);
    v.bad_fraction = 0.5;
    EXPECT_EQ(combo_weight(fault_kind::Fa, fault_kind::Fa, v), 0.5);
    EXPECT_EQ(combo_weight(fault_kind::Fa, fault_kind::Fz, v), 0.5);
    EXPECT_EQ(combo_weight(fault_kind::Fz, fault_kind::Fz, v), 0.25);
}

TEST(counting, memory_gadget_frozen) {
    const auto r = count_report(extended_kind::memory, false);
    EXPECT_EQ(r.blocks, 3);
    EXPECT_EQ(r.L, 471);
    EXPECT_EQ(r.B, compute_B(471));
    EXPECT_DOUBLE_EQ(r.z2, 29.0);
    EXPECT_DOUBLE_EQ(r.matrix[0][0], 0.0);
    EXPECT_DOUBLE_EQ(r.matrix[1][0], 1234.5);
    EXPECT_DOUBLE_EQ(r.matrix[1][1], 5565.0);
    EXPECT_DOUBLE_EQ(r.matrix[2][0], 68.0);
    EXPECT_DOUBLE_EQ(r.matrix[2][1], 212.0);
    EXPECT_DOUBLE_EQ(r.matrix[2][2], 6.0);
    EXPECT_DOUBLE_EQ(r.pairs, 7085.5);
    EXPECT_DOUBLE_EQ(r.C, 7114.5);
    double parts = 0;
    for (auto& row : r.ec_parts)
        for (double w : row) parts += w;
    EXPECT_DOUBLE_EQ(parts, r.matrix[1][1]);
    EXPECT_FALSE(r.deviations.empty());
}
