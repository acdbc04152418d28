#include <gtest/gtest.h>

#include "modrep/smooth.hpp"

using namespace modrep;

namespace {

const std::vector<std::pair<int, int>> kFields = {{2, 1}, {3, 1}, {2, 2}, {5, 1}};

PSVec random_ps(const PrincipalSeries& P, Sampler& S, int m) {
    PSVec f{m, Vec(P.size(m), 0)};
    for (auto& x : f.vals) x = gf_t(S.below(P.field().q));
    return f;
}

}  // namespace

TEST(PrincipalSeries, SizesAndRepresentatives) {
    const GField& F = make_field(3, 1);
    PrincipalSeries P(F, {0, 1});
    EXPECT_EQ(P.size(1), 4u);
    EXPECT_EQ(P.size(2), 12u);
    for (int m = 1; m <= 3; ++m)
        for (std::size_t i = 0; i < P.size(m); ++i) {
            auto [j, s] = P.locate(P.rep(m, i), m);
            EXPECT_EQ(j, i);
            EXPECT_EQ(s, 1u);
        }
}

TEST(PrincipalSeries, EquivarianceAndGroupLaw) {
    Sampler S(61);
    for (auto [p, e] : kFields) {
        const GField& F = make_field(p, e);
        for (const auto& eta : all_tame_characters(F)) {
            PrincipalSeries P(F, eta, 24, 5);
            for (int i = 0; i < 10; ++i) {
                PSVec f = random_ps(P, S, 1 + int(S.below(2)));
                SMat b = sample_element(F, S, SampleKind::BS, 3, 24);
                SMat x = sample_element(F, S, SampleKind::G, 3, 24);
                EXPECT_EQ(P.evaluate(f, b * x), F.mul(eta.eval(F, b.a), P.evaluate(f, x)));
                SMat g = sample_element(F, S, SampleKind::K0, 4, 24);
                SMat h = s_alpha0_pow(F, int(S.below(3)) - 1, 24) * sample_element(F, S, SampleKind::K0, 4, 24);
                EXPECT_TRUE(P.equal(P.act(g, P.act(h, f)), P.act(g * h, f)));
                EXPECT_EQ(P.evaluate(P.act(h, f), x), P.evaluate(f, x * h));
            }
        }
    }
}

TEST(PrincipalSeries, LevelCap) {
    const GField& F = make_field(2, 1);
    PrincipalSeries P(F, {0, 1}, 24, 2);
    EXPECT_THROW(P.act(s_alpha0(F, 24), P.ell1()), level_error);
}

TEST(PrincipalSeries, FixedSpaceIsSpannedByEll1Ell2) {
    for (auto [p, e] : kFields) {
        const GField& F = make_field(p, e);
        for (const auto& eta : all_tame_characters(F)) {
            PrincipalSeries P(F, eta);
            PSVec l1 = P.ell1(), l2 = P.ell2();
            for (int m = 1; m <= 3; ++m) {
                auto fs = P.fixed_space(m);
                ASSERT_EQ(fs.size(), 2u);
                SparseEliminator E(F);
                E.add(0, P.coords(l1));
                E.add(1, P.coords(l2));
                for (const auto& v : fs) EXPECT_TRUE(E.express(P.coords(v)).has_value());
            }
            auto c1 = isotypic_check(P, l1), c2 = isotypic_check(P, l2);
            ASSERT_TRUE(c1 && c2);
            EXPECT_EQ(*c1, eta.plus(F));
            EXPECT_EQ(*c2, eta.minus(F));
            EXPECT_EQ(P.evaluate(l1, s_identity(F, 24)), 1u);
            EXPECT_EQ(P.evaluate(l2, s_w0(F, 24)), eta.eta_t);
            EXPECT_TRUE(v_eta_membership(l2));
            EXPECT_FALSE(v_eta_membership(l1));
        }
    }
}

TEST(SOperator, EigenvectorEll2) {
    for (auto [p, e] : kFields) {
        const GField& F = make_field(p, e);
        for (const auto& eta : all_tame_characters(F)) {
            PrincipalSeries P(F, eta);
            PSVec s = s_operator(P, SOp::S, P.ell2());
            EXPECT_TRUE(P.equal(s, P.scale(eta.at_alpha0(F), P.ell2()))) << eta.to_string(F);
            EXPECT_EQ(P.evaluate(s, s_identity(F, 24)), 0u);
        }
    }
}

TEST(SOperator, FactorsThroughS1S2) {
    for (auto [p, e] : kFields) {
        const GField& F = make_field(p, e);
        for (const auto& eta : all_tame_characters(F)) {
            PrincipalSeries P(F, eta);
            for (const auto& v : {P.ell1(), P.ell2()})
                EXPECT_TRUE(P.equal(s_operator(P, SOp::S, v), s_operator(P, SOp::S1, s_operator(P, SOp::S2, v))));
        }
    }
}

TEST(SOperator, KernelVectorsAreIsotypic) {
    for (auto [p, e] : kFields) {
        const GField& F = make_field(p, e);
        for (const auto& eta : all_tame_characters(F)) {
            PrincipalSeries P(F, eta);
            for (SOp op : {SOp::S, SOp::S1, SOp::S2}) {
                auto o = P.operator_kernel(op);
                EXPECT_EQ(o.basis.size(), 2u);
                for (std::size_t i = 0; i < o.kernel.size(); ++i) {
                    EXPECT_TRUE(P.is_zero(s_operator(P, op, o.kernel[i])));
                    EXPECT_EQ(isotypic_check(P, o.kernel[i]), std::optional<CharExp>(o.kernel_chi[i]));
                }
            }
        }
    }
}

TEST(Weights, GeneratedByEll2IsNontrivial) {
    for (auto [p, e] : kFields) {
        const GField& F = make_field(p, e);
        for (const auto& eta : all_tame_characters(F)) {
            PrincipalSeries P(F, eta);
            auto s = k0_span(P, s_operator(P, SOp::S, P.ell2()));
            EXPECT_TRUE(s.k1_trivial);
            ASSERT_TRUE(s.irreducible) << eta.to_string(F);
            ASSERT_TRUE(s.label.has_value());
            EXPECT_FALSE(s.label->J);
            EXPECT_GT(s.dim, 1u);
        }
    }
}

TEST(BorelLines, OnlyConstantsForTrivialEta) {
    for (auto [p, e] : kFields) {
        const GField& F = make_field(p, e);
        for (const auto& eta : all_tame_characters(F)) {
            PrincipalSeries P(F, eta);
            for (int m = 1; m <= 2; ++m) {
                auto lines = borel_stable_lines(P, m);
                if (eta.trivial(F)) {
                    ASSERT_EQ(lines.size(), 1u);
                    EXPECT_TRUE(lines[0].g_fixed);
                    EXPECT_EQ(lines[0].alpha_eigen, 1u);
                    Vec ones(P.size(1), lines[0].v.vals[0]);
                    EXPECT_EQ(lines[0].v.vals, ones);
                } else {
                    EXPECT_TRUE(lines.empty());
                }
            }
        }
    }
}

TEST(BorelGeneration, FixedVectorInBorelSpan) {
    Sampler S(67);
    for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}}) {
        const GField& F = make_field(p, e);
        for (const auto& eta : all_tame_characters(F)) {
            PrincipalSeries P(F, eta, 24, 4);
            for (int i = 0; i < 3; ++i) {
                PSVec w = P.minimize(random_ps(P, S, 2));
                if (P.is_zero(w)) continue;
                auto r = borel_generation(P, w);
                EXPECT_TRUE(r.ubar_fixed);
                EXPECT_GE(r.fixed_dim, 1u);
            }
        }
    }
}

TEST(AlphaTwist, IsARepresentation) {
    Sampler S(71);
    const GField& F = make_field(3, 1);
    PrincipalSeries P(F, {1, 2}, 24, 6);
    AlphaTwist<PrincipalSeries> A(P);
    for (int i = 0; i < 10; ++i) {
        PSVec f = random_ps(P, S, 1);
        SMat g = sample_element(F, S, SampleKind::K0, 3, 24), h = sample_element(F, S, SampleKind::K0, 3, 24);
        EXPECT_TRUE(A.equal(A.act(g, A.act(h, f)), A.act(g * h, f)));
    }
}

TEST(Steinberg, CanonicalFormAndBorelEquivariance) {
    Sampler S(73);
    for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}}) {
        const GField& F = make_field(p, e);
        PrincipalSeries P(F, {0, 1}, 24, 5);
        SteinbergQuotient St(P);
        for (int i = 0; i < 10; ++i) {
            PSVec f = random_ps(P, S, 2);
            PSVec c = St.canonical(f);
            EXPECT_TRUE(v_eta_membership(c));
            PSVec diff = P.add(f, P.scale(F.neg(1), c));
            Vec ones(diff.vals.size(), diff.vals[0]);
            EXPECT_EQ(diff.vals, ones);
            SMat b = sample_element(F, S, SampleKind::BS, 3, 24);
            if (min_val(b) < -1) continue;
            PSVec bc = P.act(b, c);
            EXPECT_TRUE(v_eta_membership(bc));
            EXPECT_TRUE(P.equal(St.canonical(bc), St.act(b, f)));
        }
        EXPECT_TRUE(St.equal(P.ell1(), P.scale(F.neg(1), P.ell2())));
    }
}

// The weight generated by l2 maps to Ind(eta); tau - eta(alpha0) lands in the kernel.
TEST(Frobenius, KillsTauMinusEigenvalue) {
    for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}}) {
        const GField& F = make_field(p, e);
        for (const auto& eta : all_tame_characters(F)) {
            PrincipalSeries P(F, eta);
            auto span = k0_span(P, P.ell2());
            ASSERT_TRUE(span.label.has_value());
            Weight W;
            for (const auto& c : classify_all(F))
                if (c.label == *span.label) W = make_weight(c.rep);
            CInd ind(W, 3, 24);
            FrobTransport<PrincipalSeries> T(ind, P, P.ell2());
            const gf_t lam = eta.at_alpha0(F);
            for (const auto& key : ball_vertices(F, 1))
                for (std::size_t j = 0; j < W.dim(); ++j) {
                    Vec ej(W.dim(), 0);
                    ej[j] = 1;
                    CIndVec x = ind.std_fn(ind.rep(key), ej);
                    CIndVec y = ind.sub(ind.tau_sigma(x), ind.scale(lam, x));
                    EXPECT_TRUE(P.is_zero(T.apply_relative(ind.rep(key), y)));
                }
        }
    }
}
