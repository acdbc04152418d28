#include <gtest/gtest.h>

#include <set>

#include "modrep/cind.hpp"

using namespace modrep;

namespace {

bool in_k0(const SMat& g) { return member(g, SubgroupId::K0()); }

Vec unit_vec(std::size_t d, std::size_t j) {
    Vec e(d, 0);
    e[j] = 1;
    return e;
}

// sum_{x in k^x} x^r, written directly
gf_t power_sum(const GField& F, int r) {
    gf_t s = 0;
    for (gf_t x = 1; x < F.q; ++x) s = F.add(s, F.pow(x, r));
    return s;
}

CIndVec random_vec(const CInd& ind, Sampler& S, int terms, int len) {
    CIndVec f;
    const GField& F = ind.field();
    for (int i = 0; i < terms; ++i) {
        SMat g = sample_element(F, S, SampleKind::G, len, ind.precision());
        Vec v(ind.dim());
        for (auto& x : v) x = gf_t(S.below(F.q));
        f = ind.add(f, ind.std_fn(g, v));
    }
    return f;
}

}  // namespace

TEST(Weights, TranslatorsAndCharacter) {
    for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        const GField& F = make_field(p, e);
        for (const auto& W : all_weights(F)) {
            const std::size_t d = W.dim();
            for (std::size_t j = 0; j < d; ++j) {
                Vec acc(d, 0);
                for (std::size_t i = 0; i < d; ++i)
                    acc = vec_add(F, acc, vec_scale(F, W.coeff(i, j), W.act(W.translators[i], W.v)));
                EXPECT_EQ(acc, unit_vec(d, j));
            }
            for (gf_t a = 1; a < F.q; ++a)
                EXPECT_EQ(W.act(f_torus(F, a), W.v), vec_scale(F, W.chi.eval(F, a), W.v));
            EXPECT_EQ(W.trivial(), W.label.J);
        }
    }
}

TEST(Vertices, BallEnumeration) {
    for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}}) {
        const GField& F = make_field(p, e);
        CInd ind(all_weights(F)[0], 4);
        for (int r = 0; r <= 3; ++r) {
            auto ball = ball_vertices(F, r);
            EXPECT_EQ(ball.size(), ball_size(F, r));
            EXPECT_EQ(std::set<VKey>(ball.begin(), ball.end()).size(), ball.size());
            for (const auto& k : ball) {
                EXPECT_LE(k.radius(), r);
                Canon c = ind.canon(ind.rep(k));
                EXPECT_EQ(c.key, k);
                EXPECT_EQ(c.hbar, f_identity(F));
            }
        }
    }
}

TEST(Vertices, RadiusIsMinusMinVal) {
    const GField& F = make_field(3, 1);
    CInd ind(all_weights(F)[0], 4);
    for (const auto& k : ball_vertices(F, 3)) EXPECT_EQ(k.radius(), -std::min(0, min_val(ind.rep(k))));
}

TEST(Canon, WitnessAndK0Invariance) {
    Sampler S(41);
    for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        const GField& F = make_field(p, e);
        CInd ind(all_weights(F)[0], 6);
        const int N = ind.precision();
        for (int i = 0; i < 200; ++i) {
            SMat g = sample_element(F, S, SampleKind::G, 6, N);
            Canon c = ind.canon(g);
            SMat h = ind.rep(c.key).inv() * g;
            ASSERT_TRUE(in_k0(h));
            EXPECT_EQ(reduce_mod_p(h), c.hbar);
            SMat k = sample_element(F, S, SampleKind::K0, 6, N);
            EXPECT_EQ(ind.canon(g * k).key, c.key);
        }
    }
}

TEST(Action, GroupLawAndEvaluation) {
    Sampler S(43);
    for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}}) {
        const GField& F = make_field(p, e);
        for (const auto& W : all_weights(F)) {
            CInd ind(W, 6);
            const int N = ind.precision();
            for (int i = 0; i < 15; ++i) {
                CIndVec f = random_vec(ind, S, 3, 3);
                SMat g = sample_element(F, S, SampleKind::G, 3, N);
                SMat h = sample_element(F, S, SampleKind::G, 3, N);
                EXPECT_EQ(ind.act(g, ind.act(h, f)), ind.act(g * h, f));
                // (g f)(x) = f(x g)
                SMat x = sample_element(F, S, SampleKind::G, 3, N);
                EXPECT_EQ(ind.evaluate(ind.act(g, f), x), ind.evaluate(f, x * g));
            }
            Vec v = unit_vec(W.dim(), W.dim() - 1);
            SMat g = sample_element(F, S, SampleKind::G, 4, N);
            SMat k = sample_element(F, S, SampleKind::K0, 4, N);
            CIndVec f = ind.std_fn(g, v);
            EXPECT_EQ(ind.evaluate(f, g.inv()), v);
            EXPECT_EQ(ind.evaluate(f, k * g.inv()), W.act(reduce_mod_p(k), v));
        }
    }
}

TEST(Basis, SupportSizeAndFixedness) {
    for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}}) {
        const GField& F = make_field(p, e);
        for (const auto& W : all_weights(F)) {
            CInd ind(W, 4);
            for (int n = -2; n <= 2; ++n) {
                CIndVec f = ind.f_basis(n);
                std::size_t expect = 1;
                for (int i = 0; i < (n <= 0 ? -2 * n : 2 * n - 1); ++i) expect *= F.q;
                EXPECT_EQ(f.size(), expect);
                EXPECT_EQ(ind.support_classes(f), std::set<int>{n});
                EXPECT_EQ(f.radius(), std::abs(n));
                auto chi = ind.is_character(f);
                ASSERT_TRUE(chi.has_value());
                EXPECT_EQ(*chi, n <= 0 ? W.chi : W.chi.w0_conj(F));
                EXPECT_EQ(ind.evaluate(f, s_alpha0_pow(F, -n, ind.precision())), ind.base_value(n));
            }
        }
    }
}

TEST(Basis, RadiusCap) {
    const GField& F = make_field(2, 1);
    CInd ind(all_weights(F)[0], 2);
    EXPECT_THROW(ind.f_basis(3), radius_error);
}

TEST(Hecke, CompressedMatchesMaterialized) {
    for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}}) {
        const GField& F = make_field(p, e);
        for (const auto& W : all_weights(F)) {
            CInd ind(W, 4);
            for (int n = -2; n <= 2; ++n)
                for (HeckeOp op : {HeckeOp::w0, HeckeOp::w0_inv_alpha0_inv, HeckeOp::alpha0, HeckeOp::alpha0_inv}) {
                    CIndVec m = ind.right_hecke(ind.f_basis(n), op);
                    FixedVec c = ind.fixed_hecke(ind.fixed_basis(n), op);
                    EXPECT_EQ(ind.compress(m), c) << W.name() << " n=" << n << " " << hecke_name(op);
                    EXPECT_EQ(ind.expand(c), m);
                }
        }
    }
}

// Oracle derived by hand: alpha0^n u(l) w0^{-1} = [ubar(l^{-1} t^{2n}) t(-l)] alpha0^n u(-l^{-1}) and
// alpha0^{-n} w0 u(m t) alpha0^{-1} = [t(m^{-1}) u(-m t^{2n-1})] alpha0^{-n} ubar(m^{-1} t) give
// a_{-n} = b_n = sum_{x != 0} x^r for n >= 1; a_0 v = sum_l sigma(u(l) w0^{-1}) v.
TEST(Hecke, DegenerateScalarsMatchOracle) {
    for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        const GField& F = make_field(p, e);
        for (const auto& W : all_weights(F)) {
            if (!W.degenerate()) continue;
            CInd ind(W, 6);
            Vec s(W.dim(), 0);
            for (gf_t l = 0; l < F.q; ++l) s = vec_add(F, s, W.act(f_u(F, l) * f_w0(F).inv(), W.v));
            std::size_t piv = 0;
            while (W.v[piv] == 0) ++piv;
            const gf_t a0 = F.div(s[piv], W.v[piv]);
            ASSERT_EQ(s, vec_scale(F, a0, W.v));
            for (int n = 0; n <= 3; ++n) {
                auto c = ind.fixed_coords(ind.fixed_hecke(ind.fixed_basis(-n), HeckeOp::w0));
                ASSERT_TRUE(c.has_value());
                gf_t expect = n == 0 ? a0 : power_sum(F, W.chi.r);
                std::map<int, gf_t> want;
                if (expect) want[-n] = expect;
                EXPECT_EQ(*c, want) << W.name() << " n=" << n;
            }
            for (int n = 1; n <= 3; ++n) {
                auto c = ind.fixed_coords(ind.fixed_hecke(ind.fixed_basis(n), HeckeOp::w0_inv_alpha0_inv));
                ASSERT_TRUE(c.has_value());
                std::map<int, gf_t> want;
                if (gf_t b = power_sum(F, W.chi.r)) want[n] = b;
                EXPECT_EQ(*c, want) << W.name() << " n=" << n;
            }
        }
    }
}

TEST(Hecke, LadderRelations) {
    for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        const GField& F = make_field(p, e);
        for (const auto& W : all_weights(F)) {
            CInd ind(W, 6);
            auto coords = [&](const FixedVec& f) { return *ind.fixed_coords(f); };
            using M = std::map<int, gf_t>;
            for (int n = 0; n <= 3; ++n) {
                if (W.degenerate()) {
                    EXPECT_EQ(coords(ind.fixed_hecke(ind.fixed_basis(-n), HeckeOp::w0_inv_alpha0_inv)), (M{{n + 1, 1}}));
                    if (n >= 1) {
                        EXPECT_EQ(coords(ind.fixed_hecke(ind.fixed_basis(n), HeckeOp::w0)), (M{{-n, 1}}));
                    }
                } else {
                    EXPECT_TRUE(ind.fixed_hecke(ind.fixed_basis(-n), HeckeOp::alpha0_inv).empty());
                    EXPECT_EQ(coords(ind.fixed_hecke(ind.fixed_basis(-n), HeckeOp::alpha0)), (M{{-n - 1, 1}}));
                    if (n >= 1) {
                        EXPECT_TRUE(ind.fixed_hecke(ind.fixed_basis(n), HeckeOp::alpha0).empty());
                        EXPECT_EQ(coords(ind.fixed_hecke(ind.fixed_basis(n), HeckeOp::alpha0_inv)), (M{{n + 1, 1}}));
                    }
                }
            }
        }
    }
}

TEST(Tau, PhiIsSPhiForNontrivialWeights) {
    for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}}) {
        const GField& F = make_field(p, e);
        for (const auto& W : all_weights(F)) {
            CInd ind(W, 4);
            CIndVec phi = ind.phi();
            CIndVec t = ind.tau(phi);
            if (!W.trivial()) {
                EXPECT_EQ(t, ind.s_op(phi));
                EXPECT_EQ(t, ind.f_basis(-1));
            }
            EXPECT_EQ(t, ind.tau_phi());
            EXPECT_EQ(t.radius(), 1);
        }
    }
}

TEST(Tau, Equivariance) {
    Sampler S(47);
    for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}}) {
        const GField& F = make_field(p, e);
        for (const auto& W : all_weights(F)) {
            CInd ind(W, 6);
            for (int i = 0; i < 10; ++i) {
                CIndVec f = random_vec(ind, S, 2, 2);
                SMat g = sample_element(F, S, SampleKind::G, 3, ind.precision());
                EXPECT_EQ(ind.tau(ind.act(g, f)), ind.act(g, ind.tau(f)));
            }
        }
    }
}

TEST(Tau, CompressedMatchesMaterialized) {
    for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}}) {
        const GField& F = make_field(p, e);
        for (const auto& W : all_weights(F)) {
            CInd ind(W, 5);
            for (int n = -2; n <= 2; ++n)
                EXPECT_EQ(ind.compress(ind.tau_sigma(ind.f_basis(n))), ind.fixed_tau_sigma(ind.fixed_basis(n)))
                    << W.name() << " n=" << n;
        }
    }
}

TEST(Truncation, FixedSpaceIsSpanOfBasis) {
    for (auto [p, e, R] : std::vector<std::tuple<int, int, int>>{{2, 1, 3}, {3, 1, 2}, {2, 2, 2}}) {
        const GField& F = make_field(p, e);
        for (const auto& W : all_weights(F)) {
            CInd ind(W, R + 1);
            auto T = fixed_in_ball(ind, R);
            EXPECT_EQ(T.vertices, ball_size(F, R));
            EXPECT_EQ(T.orbits, std::size_t(2 * R + 1));
            ASSERT_EQ(T.basis.size(), std::size_t(2 * R + 1));
            std::set<int> classes(T.basis_class.begin(), T.basis_class.end());
            EXPECT_EQ(classes.size(), T.basis.size());
            for (std::size_t i = 0; i < T.basis.size(); ++i) {
                const int n = T.basis_class[i];
                CIndVec fn = ind.f_basis(n);
                const auto& [k, v] = *fn.terms.begin();
                auto it = T.basis[i].terms.find(k);
                ASSERT_NE(it, T.basis[i].terms.end());
                std::size_t piv = 0;
                while (v[piv] == 0) ++piv;
                gf_t c = F.div(it->second[piv], v[piv]);
                EXPECT_EQ(T.basis[i], ind.scale(c, fn));
            }
        }
    }
}

TEST(Truncation, IsotypicDichotomy) {
    for (auto [p, e] : std::vector<std::pair<int, int>>{{3, 1}, {2, 2}, {5, 1}}) {
        const GField& F = make_field(p, e);
        for (const auto& W : all_weights(F)) {
            CInd ind(W, 3);
            for (int s = 0; s < int(F.q) - 1; ++s) {
                CharExp chi{s};
                auto T = fixed_in_ball(ind, 2, chi);
                std::set<int> cls(T.basis_class.begin(), T.basis_class.end());
                std::set<int> want;
                if (chi == W.chi) want.insert({-2, -1, 0});
                if (chi == W.chi.w0_conj(F)) want.insert({1, 2});
                EXPECT_EQ(cls, want) << W.name() << " s=" << s;
            }
        }
    }
}

TEST(Quotient, PhiNonzeroAndSPhiZero) {
    for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}}) {
        const GField& F = make_field(p, e);
        for (const auto& W : all_weights(F)) {
            CInd ind(W, 4);
            SupersingularQuotient Q(ind, 3);
            auto r = Q.equal(ind.phi(), CIndVec{});
            EXPECT_EQ(r.status, SsqStatus::not_equal);
            // trivial weight: S phi = -(phi + sum_m ubar([m] t) alpha0 phi) modulo the image
            CIndVec rhs;
            if (W.trivial()) {
                rhs = ind.phi();
                for (gf_t m = 0; m < F.q; ++m)
                    rhs = ind.add(rhs, ind.act(s_ubar(LSeries::monomial(F, m, 1, ind.precision())) *
                                                   s_alpha0(F, ind.precision()),
                                               ind.phi()));
                rhs = ind.scale(F.neg(1), rhs);
            }
            auto s = Q.equal(ind.s_op(ind.phi()), rhs);
            EXPECT_EQ(s.status, SsqStatus::equal) << W.name();
        }
    }
}

TEST(Quotient, InconclusiveBeyondCap) {
    const GField& F = make_field(2, 1);
    CInd ind(all_weights(F)[0], 4);
    SupersingularQuotient Q(ind, 1);
    EXPECT_EQ(Q.equal(ind.f_basis(2), CIndVec{}).status, SsqStatus::inconclusive);
}

TEST(Frobenius, IdentityTransport) {
    Sampler S(53);
    const GField& F = make_field(3, 1);
    for (const auto& W : all_weights(F)) {
        CInd ind(W, 5);
        CIndSpace sp(ind);
        FrobTransport<CIndSpace> T(ind, sp, ind.phi());
        for (int i = 0; i < 5; ++i) {
            CIndVec f = random_vec(ind, S, 3, 3);
            EXPECT_EQ(T.apply(f), f);
        }
        EXPECT_THROW(FrobTransport<CIndSpace>(ind, sp, ind.f_basis(1)), std::invalid_argument);
    }
}

TEST(K0Span, PhiGeneratesTheWeight) {
    for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}}) {
        const GField& F = make_field(p, e);
        for (const auto& W : all_weights(F)) {
            CInd ind(W, 3);
            CIndSpace sp(ind);
            auto s = k0_span(sp, ind.phi());
            EXPECT_EQ(s.dim, W.dim());
            EXPECT_TRUE(s.k1_trivial);
            EXPECT_TRUE(s.irreducible);
            ASSERT_TRUE(s.label.has_value());
            EXPECT_EQ(*s.label, W.label);
        }
    }
}
