#include <gtest/gtest.h>

#include <set>

#include "modrep/fields.hpp"
#include "modrep/sl2.hpp"

using namespace modrep;

namespace {

// first monic quadratic over F_3 without roots, enumerated in the same order as make_field
std::vector<int> first_rootless_quadratic_f3() {
    for (int c1 = 0; c1 < 3; ++c1)
        for (int c0 = 0; c0 < 3; ++c0) {
            bool root = false;
            for (int x = 0; x < 3; ++x)
                if ((x * x + c1 * x + c0) % 3 == 0) root = true;
            if (!root) return {c0, c1, 1};
        }
    return {};
}

LSeries random_series(const GField& F, Sampler& S, int N, int minval = -3, int maxval = 3) {
    int v = S.range(minval, maxval);
    std::vector<gf_t> c(std::size_t(N - v), 0);
    for (auto& x : c) x = gf_t(S.below(F.q));
    c[0] = gf_t(1 + S.below(F.q - 1));
    return LSeries(F, v, c, N);
}

}  // namespace

TEST(Fields, PrimeFieldModulus) {
    const GField& F = make_field(3, 1);
    EXPECT_EQ(F.q, 3u);
    EXPECT_EQ(F.modulus, (std::vector<int>{0, 1}));
}

TEST(Fields, F4Modulus) {
    const GField& F = make_field(2, 2);
    EXPECT_EQ(F.modulus, (std::vector<int>{1, 1, 1}));
}

TEST(Fields, F9ModulusMatchesRootSearch) {
    EXPECT_EQ(make_field(3, 2).modulus, first_rootless_quadratic_f3());
}

TEST(Fields, SameParametersGiveSameObject) { EXPECT_EQ(&make_field(5, 2), &make_field(5, 2)); }

TEST(Fields, RejectsBadParameters) {
    EXPECT_THROW(make_field(4, 1), field_error);
    EXPECT_THROW(make_field(3, 5), field_error);
    EXPECT_THROW(make_field(2, 0), field_error);
}

TEST(Fields, AxiomsExhaustiveSmallFields) {
    for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}}) {
        const GField& F = make_field(p, e);
        for (gf_t a = 0; a < F.q; ++a) {
            EXPECT_EQ(F.pow(a, F.q), a);
            for (gf_t b = 0; b < F.q; ++b) {
                EXPECT_EQ(F.add(a, b), F.add(b, a));
                EXPECT_EQ(F.mul(a, b), F.mul(b, a));
                EXPECT_EQ(F.sub(F.add(a, b), b), a);
                if (b) {
                    EXPECT_EQ(F.mul(F.div(a, b), b), a);
                }
                for (gf_t c = 0; c < F.q; ++c) {
                    EXPECT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
                    EXPECT_EQ(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)));
                    EXPECT_EQ(F.add(F.add(a, b), c), F.add(a, F.add(b, c)));
                }
            }
        }
    }
}

TEST(Fields, GeneratorHasFullOrder) {
    for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {5, 1}, {7, 1}, {2, 4}, {13, 1}}) {
        const GField& F = make_field(p, e);
        std::set<gf_t> seen;
        gf_t x = 1;
        for (gf_t k = 0; k + 1 < F.q; ++k) {
            seen.insert(x);
            x = F.mul(x, F.generator);
        }
        EXPECT_EQ(seen.size(), F.q - 1);
    }
}

TEST(Fields, FrobeniusFixesExactlyPrimeField) {
    for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {2, 3}, {5, 2}}) {
        const GField& F = make_field(p, e);
        int fixed = 0;
        for (gf_t a = 0; a < F.q; ++a) {
            if (F.frobenius(a) == a) {
                ++fixed;
                EXPECT_TRUE(F.in_prime_field(a));
            }
            for (gf_t b = 0; b < F.q; ++b) {
                EXPECT_EQ(F.frobenius(F.add(a, b)), F.add(F.frobenius(a), F.frobenius(b)));
                EXPECT_EQ(F.frobenius(F.mul(a, b)), F.mul(F.frobenius(a), F.frobenius(b)));
            }
        }
        EXPECT_EQ(fixed, p);
    }
}

TEST(Fields, Serialization) {
    const GField& F = make_field(3, 2);
    EXPECT_EQ(F.to_string(F.from_digits({2, 1})), "(2,1)");
    EXPECT_EQ(make_field(5, 1).to_string(3), "3");
}

TEST(LSeries, GeometricSeriesInverse) {
    const GField& F = make_field(3, 1);
    LSeries x(F, 0, {1, 1}, 8);
    LSeries y = ls_inv(x);
    EXPECT_EQ(y.val(), 0);
    EXPECT_EQ(y.prec(), 8);
    for (int k = 0; k < 8; ++k) EXPECT_EQ(y.coeff(k), (k % 2 == 0) ? 1u : 2u);
}

TEST(LSeries, InverseOfUniformizerMultiple) {
    const GField& F = make_field(5, 1);
    LSeries x(F, 1, {2, 3}, 10);
    LSeries y = ls_inv(x);
    EXPECT_EQ(y.val(), -1);
    EXPECT_TRUE((x * y - LSeries::one(F, 10)).is_zero());
}

TEST(LSeries, ZeroHasNoInverse) {
    const GField& F = make_field(2, 1);
    try {
        (void)ls_inv(LSeries::zero(F));
        FAIL();
    } catch (const std::domain_error& e) {
        EXPECT_STREQ(e.what(), "zero has no inverse");
    }
}

TEST(LSeries, PrecisionExhausted) {
    const GField& F = make_field(2, 1);
    EXPECT_THROW((void)ls_inv(LSeries::zero(F, 3)), precision_error);
    EXPECT_THROW((void)LSeries(F, 0, {1}, 4).coeff(4), precision_error);
}

TEST(LSeries, ValuationAndInverseProperties) {
    Sampler S(11);
    for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        const GField& F = make_field(p, e);
        for (int trial = 0; trial < 100; ++trial) {
            LSeries x = random_series(F, S, 20), y = random_series(F, S, 20);
            EXPECT_EQ((x * y).val(), x.val() + y.val());
            LSeries xi = ls_inv(x);
            EXPECT_EQ(xi.val(), -x.val());
            LSeries one = x * xi;
            EXPECT_TRUE((one - LSeries::one(F, one.prec())).is_zero());
            EXPECT_TRUE((xi * x - LSeries::one(F, one.prec())).is_zero());
            EXPECT_TRUE((x + y - y - x).is_zero());
        }
    }
}

TEST(LSeries, PrecisionRules) {
    const GField& F = make_field(3, 1);
    LSeries x(F, -1, {1, 2}, 5), y(F, 2, {1}, 7);
    EXPECT_EQ((x + y).prec(), 5);
    EXPECT_EQ((x * y).prec(), std::min(-1 + 7, 2 + 5));
    EXPECT_EQ(ls_inv(x).prec(), 5 + 2);
}

TEST(LSeries, Format) {
    const GField& F = make_field(3, 1);
    EXPECT_EQ(LSeries(F, -1, {1, 0, 2}, 4).to_string(), "t^-1*(1 + 2*t^2) + O(t^4)");
    EXPECT_EQ(LSeries::zero(F, 6).to_string(), "O(t^6)");
}

TEST(LiftA, BasicsAndInjectivity) {
    const GField& F = make_field(2, 2);
    EXPECT_TRUE(lift_A(F, {0, 0}).is_zero());
    LSeries a = lift_A(F, {2, 3});
    EXPECT_EQ(a.coeff(0), 2u);
    EXPECT_EQ(a.coeff(1), 3u);
    std::set<std::vector<gf_t>> seen;
    for (gf_t l0 = 0; l0 < F.q; ++l0)
        for (gf_t l1 = 0; l1 < F.q; ++l1) {
            LSeries s = lift_A(F, {l0, l1});
            seen.insert({s.coeff(0), s.coeff(1)});
            int first = l0 ? 0 : (l1 ? 1 : -1);
            if (first >= 0) {
                EXPECT_EQ(s.val(), first);
            }
        }
    EXPECT_EQ(seen.size(), std::size_t(F.q * F.q));
}
