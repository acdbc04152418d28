#pragma once

// SL_2 over F_q and over F_q((t)): generators, subgroup predicates and the
// coset decompositions used throughout.

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "modrep/fields.hpp"

namespace modrep {

template <class T>
struct Mat2 {
    T a, b, c, d;

    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    // adjugate, the inverse for determinant one
    Mat2 inv() const { return {d, -b, -c, a}; }
    T det() const { return a * d - b * c; }
    bool operator==(const Mat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
    bool operator!=(const Mat2& o) const { return !(*this == o); }
};

using SMat = Mat2<LSeries>;
using FMat = Mat2<GFElem>;

// ---------------------------------------------------------------- generators

inline LSeries ls_const(const GField& F, gf_t a, int N) { return LSeries::constant(F, a, N); }

inline SMat s_identity(const GField& F, int N = kDefaultPrecision) {
    return {LSeries::one(F, N), LSeries::zero(F, N), LSeries::zero(F, N), LSeries::one(F, N)};
}
inline SMat s_u(const LSeries& x) {
    const GField& F = x.field();
    int N = std::max(x.prec(), 0);
    return {LSeries::one(F, N), x, LSeries::zero(F, N), LSeries::one(F, N)};
}
inline SMat s_ubar(const LSeries& x) {
    const GField& F = x.field();
    int N = std::max(x.prec(), 0);
    return {LSeries::one(F, N), LSeries::zero(F, N), x, LSeries::one(F, N)};
}
inline SMat s_torus(const LSeries& d) {
    const GField& F = d.field();
    return {d, LSeries::zero(F, d.prec()), LSeries::zero(F, d.prec()), ls_inv(d)};
}
inline SMat s_alpha0(const GField& F, int N = kDefaultPrecision) {
    return {LSeries::t_power(F, -1, N), LSeries::zero(F, N), LSeries::zero(F, N), LSeries::t_power(F, 1, N)};
}
inline SMat s_alpha0_inv(const GField& F, int N = kDefaultPrecision) {
    return {LSeries::t_power(F, 1, N), LSeries::zero(F, N), LSeries::zero(F, N), LSeries::t_power(F, -1, N)};
}
// alpha0^k
inline SMat s_alpha0_pow(const GField& F, int k, int N = kDefaultPrecision) {
    return {LSeries::t_power(F, -k, N), LSeries::zero(F, N), LSeries::zero(F, N), LSeries::t_power(F, k, N)};
}
inline SMat s_w0(const GField& F, int N = kDefaultPrecision) {
    return {LSeries::zero(F, N), LSeries::constant(F, F.neg(1), N), LSeries::one(F, N), LSeries::zero(F, N)};
}
inline SMat s_w0_inv(const GField& F, int N = kDefaultPrecision) {
    return {LSeries::zero(F, N), LSeries::one(F, N), LSeries::constant(F, F.neg(1), N), LSeries::zero(F, N)};
}
// beta0 = alpha0 w0
inline SMat s_beta0(const GField& F, int N = kDefaultPrecision) {
    return {LSeries::zero(F, N), LSeries::monomial(F, F.neg(1), -1, N), LSeries::t_power(F, 1, N),
            LSeries::zero(F, N)};
}
inline SMat s_beta0_inv(const GField& F, int N = kDefaultPrecision) {
    return {LSeries::zero(F, N), LSeries::t_power(F, -1, N), LSeries::monomial(F, F.neg(1), 1, N),
            LSeries::zero(F, N)};
}

inline FMat f_identity(const GField& F) { return {GFElem(F, 1), GFElem(F, 0), GFElem(F, 0), GFElem(F, 1)}; }
inline FMat f_u(const GField& F, gf_t x) { return {GFElem(F, 1), GFElem(F, x), GFElem(F, 0), GFElem(F, 1)}; }
inline FMat f_ubar(const GField& F, gf_t x) { return {GFElem(F, 1), GFElem(F, 0), GFElem(F, x), GFElem(F, 1)}; }
inline FMat f_torus(const GField& F, gf_t a) { return {GFElem(F, a), GFElem(F, 0), GFElem(F, 0), GFElem(F, F.inv(a))}; }
inline FMat f_w0(const GField& F) { return {GFElem(F, 0), GFElem(F, F.neg(1)), GFElem(F, 1), GFElem(F, 0)}; }

// every element of SL_2(F_q), in a fixed order
inline std::vector<FMat> f_all_elements(const GField& F) {
    std::vector<FMat> out;
    const gf_t q = F.q;
    for (gf_t a = 0; a < q; ++a)
        for (gf_t b = 0; b < q; ++b)
            for (gf_t c = 0; c < q; ++c)
                for (gf_t d = 0; d < q; ++d)
                    if (F.sub(F.mul(a, d), F.mul(b, c)) == 1)
                        out.push_back({GFElem(F, a), GFElem(F, b), GFElem(F, c), GFElem(F, d)});
    return out;
}

// ---------------------------------------------------------------- precision helpers

inline int min_prec(const SMat& g) { return std::min({g.a.prec(), g.b.prec(), g.c.prec(), g.d.prec()}); }

inline SMat truncate(const SMat& g, int N) { return {g.a.truncated(N), g.b.truncated(N), g.c.truncated(N), g.d.truncated(N)}; }

// val(x) >= k, or a precision error if the known digits cannot decide it
inline bool val_at_least(const LSeries& x, int k) {
    if (!x.is_zero()) return x.val() >= k;
    if (x.prec() >= k) return true;
    throw precision_error("cannot decide a valuation bound of " + std::to_string(k));
}

// x == c mod t^m for a constant c
inline bool congruent_const(const LSeries& x, gf_t c, int m) {
    return val_at_least(x - LSeries::constant(x.field(), c, std::max(x.prec(), m)), m);
}

inline bool exactly_zero(const LSeries& x) {
    if (!x.is_zero()) return false;
    return true;
}

// minimal entry valuation; entries zero to precision count as their precision
inline int min_val(const SMat& g) { return std::min({g.a.val(), g.b.val(), g.c.val(), g.d.val()}); }

// ---------------------------------------------------------------- subgroups

enum class Subgroup { K0, K1, IS, IS1, BS, TS_units, TS_1p, US, UbarS, K0m };

struct SubgroupId {
    Subgroup kind;
    int n = 0;  // US(n), UbarS(n), K0(m)

    static SubgroupId K0() { return {Subgroup::K0, 0}; }
    static SubgroupId K1() { return {Subgroup::K1, 0}; }
    static SubgroupId IS() { return {Subgroup::IS, 0}; }
    static SubgroupId IS1() { return {Subgroup::IS1, 0}; }
    static SubgroupId BS() { return {Subgroup::BS, 0}; }
    static SubgroupId TS_units() { return {Subgroup::TS_units, 0}; }
    static SubgroupId TS_1p() { return {Subgroup::TS_1p, 0}; }
    static SubgroupId US(int n) { return {Subgroup::US, n}; }
    static SubgroupId UbarS(int n) { return {Subgroup::UbarS, n}; }
    static SubgroupId K0m(int m) { return {Subgroup::K0m, m}; }
};

inline bool member(const SMat& g, SubgroupId H) {
    switch (H.kind) {
        case Subgroup::K0:
            return val_at_least(g.a, 0) && val_at_least(g.b, 0) && val_at_least(g.c, 0) && val_at_least(g.d, 0);
        case Subgroup::K1:
            return val_at_least(g.a, 0) && val_at_least(g.b, -1) && val_at_least(g.c, 1) && val_at_least(g.d, 0);
        case Subgroup::IS:
            return member(g, SubgroupId::K0()) && val_at_least(g.c, 1);
        case Subgroup::IS1:
            return member(g, SubgroupId::IS()) && congruent_const(g.a, 1, 1) && congruent_const(g.d, 1, 1);
        case Subgroup::BS:
            return exactly_zero(g.c);
        case Subgroup::TS_units:
            return exactly_zero(g.b) && exactly_zero(g.c) && g.a.is_unit();
        case Subgroup::TS_1p:
            return exactly_zero(g.b) && exactly_zero(g.c) && congruent_const(g.a, 1, 1);
        case Subgroup::US:
            return exactly_zero(g.c) && exactly_zero(g.a - LSeries::one(g.a.field(), g.a.prec())) &&
                   exactly_zero(g.d - LSeries::one(g.d.field(), g.d.prec())) && val_at_least(g.b, H.n);
        case Subgroup::UbarS:
            return exactly_zero(g.b) && exactly_zero(g.a - LSeries::one(g.a.field(), g.a.prec())) &&
                   exactly_zero(g.d - LSeries::one(g.d.field(), g.d.prec())) && val_at_least(g.c, H.n);
        case Subgroup::K0m:
            return member(g, SubgroupId::K0()) && congruent_const(g.a, 1, H.n) && congruent_const(g.d, 1, H.n) &&
                   val_at_least(g.b, H.n) && val_at_least(g.c, H.n);
    }
    return false;
}

// reduction mod p of an element of K0
inline FMat reduce_mod_p(const SMat& g) {
    if (!member(g, SubgroupId::K0())) throw std::domain_error("reduction mod p needs an element of K0");
    const GField& F = g.a.field();
    return {GFElem(F, g.a.coeff(0)), GFElem(F, g.b.coeff(0)), GFElem(F, g.c.coeff(0)), GFElem(F, g.d.coeff(0))};
}

// constant lift of a matrix over F_q
inline SMat lift(const FMat& g, int N = kDefaultPrecision) {
    const GField& F = g.a.field();
    return {LSeries::constant(F, g.a.raw(), N), LSeries::constant(F, g.b.raw(), N),
            LSeries::constant(F, g.c.raw(), N), LSeries::constant(F, g.d.raw(), N)};
}

// ---------------------------------------------------------------- decompositions

struct IwahoriFactors {
    LSeries x;      // u(x), x in O
    LSeries delta;  // t(delta), delta in 1+p
    LSeries z;      // ubar(z), z in p
};

inline IwahoriFactors iwahori_factor(const SMat& g) {
    if (!member(g, SubgroupId::IS1())) throw std::domain_error("element is not in the pro-p Iwahori subgroup");
    LSeries dinv = ls_inv(g.d);
    return {g.b * dinv, dinv, g.c * dinv};
}

inline SMat iwahori_product(const IwahoriFactors& f) { return s_u(f.x) * s_torus(f.delta) * s_ubar(f.z); }

struct CosetClass {
    int n = 0;
    SMat k;  // in K0
    SMat i;  // in I_S(1)
};

// g = k * alpha0^{-n} * i
inline CosetClass kgi_class(const SMat& g) {
    const GField& F = g.a.field();
    const int N = min_prec(g);
    SMat left = s_identity(F, N);  // accumulated left K0 operations, left*g = h
    SMat h = g;
    if (h.a.is_zero() && h.c.is_zero()) throw precision_error("first column vanishes to precision");
    if (h.a.is_zero() || (!h.c.is_zero() && h.c.val() < h.a.val())) {
        left = s_w0(F, N) * left;
        h = s_w0(F, N) * h;
    }
    if (!h.c.is_zero()) {
        SMat e = s_ubar(-(h.c * ls_inv(h.a)));
        left = e * left;
        h = e * h;
    }
    const int u = h.a.val();
    LSeries eps = h.a.unit_part();
    SMat nt = s_torus(ls_inv(eps));
    left = nt * left;
    h = nt * h;
    const LSeries& x = h.b;
    const int N2 = min_prec(h);

    CosetClass out;
    SMat kprime, iprime;
    if (x.is_zero() || x.val() >= -std::abs(u)) {
        out.n = u;
        if (u >= 0) {
            // h = u(x t^u) alpha0^{-u}
            kprime = s_u(x.shifted(u));
            iprime = s_identity(F, N2);
        } else {
            // h = alpha0^{-u} u(x t^{-u})
            kprime = s_identity(F, N2);
            iprime = s_u(x.shifted(-u));
        }
    } else {
        const int n = -x.val();
        out.n = n;
        LSeries xinv = ls_inv(x);
        LSeries y = -(LSeries::t_power(F, u, N2) * xinv);          // in p
        LSeries l = -(LSeries::t_power(F, -u, N2) * xinv);         // in p
        LSeries ex = x.unit_part();
        // s_ubar(l) h s_ubar(y) = diag(ex, ex^{-1}) w0^{-1} alpha0^{-n}
        kprime = s_ubar(-l) * s_torus(ex) * s_w0_inv(F, N2);
        iprime = s_ubar(-y);
    }
    out.k = left.inv() * kprime;
    out.i = iprime;
    return out;
}

enum class BorelSide { plain, beta0 };

struct BorelClass {
    BorelSide side;
    SMat b;  // in B_S
    SMat j;  // in I_S(1)
};

// g = b j (plain) or g = b beta0 j
inline BorelClass borel_class(const SMat& g) {
    const GField& F = g.a.field();
    const int N = min_prec(g);
    if (g.c.is_zero() || (!g.d.is_zero() && g.c.val() > g.d.val())) {
        LSeries z = g.c * ls_inv(g.d);
        SMat b = g * s_ubar(-z);
        b.c = LSeries::zero(F, b.c.prec());
        return {BorelSide::plain, b, s_ubar(z)};
    }
    LSeries y = g.d * ls_inv(g.c);
    SMat b = g * s_u(-y) * s_beta0_inv(F, N);
    b.c = LSeries::zero(F, b.c.prec());
    return {BorelSide::beta0, b, s_u(y)};
}

// ---------------------------------------------------------------- Hecke summands

enum class HeckeOp { w0, w0_inv_alpha0_inv, alpha0, alpha0_inv };

inline const char* hecke_name(HeckeOp op) {
    switch (op) {
        case HeckeOp::w0: return "w0";
        case HeckeOp::w0_inv_alpha0_inv: return "w0_inv_alpha0_inv";
        case HeckeOp::alpha0: return "alpha0";
        case HeckeOp::alpha0_inv: return "alpha0_inv";
    }
    return "?";
}

inline std::vector<SMat> hecke_summands(const GField& F, HeckeOp op, int N = kDefaultPrecision) {
    std::vector<SMat> out;
    const gf_t q = F.q;
    switch (op) {
        case HeckeOp::w0:
            for (gf_t l = 0; l < q; ++l) out.push_back(s_u(LSeries::constant(F, l, N)) * s_w0_inv(F, N));
            break;
        case HeckeOp::w0_inv_alpha0_inv:
            for (gf_t m = 0; m < q; ++m)
                out.push_back(s_w0(F, N) * s_u(LSeries::monomial(F, m, 1, N)) * s_alpha0_inv(F, N));
            break;
        case HeckeOp::alpha0:
            for (gf_t l1 = 0; l1 < q; ++l1)
                for (gf_t l0 = 0; l0 < q; ++l0)
                    out.push_back(s_u(lift_A(F, {l0, l1}, N)) * s_alpha0_inv(F, N));
            break;
        case HeckeOp::alpha0_inv:
            for (gf_t m1 = 0; m1 < q; ++m1)
                for (gf_t m0 = 0; m0 < q; ++m0)
                    out.push_back(s_ubar(lift_A(F, {m0, m1}, N).shifted(1)) * s_alpha0(F, N));
            break;
    }
    return out;
}

// conjugation by alpha = diag(1, t)
inline SMat alpha_conjugate(const SMat& g) { return {g.a, g.b.shifted(-1), g.c.shifted(1), g.d}; }
inline SMat alpha_conjugate_inv(const SMat& g) { return {g.a, g.b.shifted(1), g.c.shifted(-1), g.d}; }

// ---------------------------------------------------------------- sampling

// SplitMix-style reduction keeps draws identical across standard libraries.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}
    std::uint64_t next() { return rng_(); }
    std::uint64_t below(std::uint64_t n) { return n ? rng_() % n : 0; }
    int range(int lo, int hi) { return lo + int(below(std::uint64_t(hi - lo + 1))); }

private:
    std::mt19937_64 rng_;
};

enum class SampleKind { G, K0, IS, IS1, BS, BS_IS, IS1_BS };

// bounded word in the standard generators of the requested subgroup
inline SMat sample_element(const GField& F, Sampler& S, SampleKind kind, int max_len = 6, int N = kDefaultPrecision,
                           int max_shift = 2) {
    SMat g = s_identity(F, N);
    const int len = S.range(1, max_len);
    for (int step = 0; step < len; ++step) {
        const gf_t lam = gf_t(S.below(F.q));
        SMat x;
        switch (kind) {
            case SampleKind::G: {
                int c = S.range(0, 4);
                int j = S.range(-max_shift, max_shift);
                if (c == 0) x = s_u(LSeries::monomial(F, lam, j, N));
                else if (c == 1) x = s_ubar(LSeries::monomial(F, lam, j, N));
                else if (c == 2) x = s_alpha0(F, N);
                else if (c == 3) x = s_alpha0_inv(F, N);
                else x = s_w0(F, N);
                break;
            }
            case SampleKind::K0: {
                int c = S.range(0, 3);
                int j = S.range(0, max_shift);
                if (c == 0) x = s_u(LSeries::monomial(F, lam, j, N));
                else if (c == 1) x = s_ubar(LSeries::monomial(F, lam, j, N));
                else if (c == 2) x = s_torus(LSeries::constant(F, lam ? lam : 1, N));
                else x = s_w0(F, N);
                break;
            }
            case SampleKind::IS:
            case SampleKind::IS1: {
                int c = S.range(0, 2);
                int j = S.range(1, max_shift + 1);
                if (c == 0) x = s_u(LSeries::monomial(F, lam, j - 1, N));
                else if (c == 1) x = s_ubar(LSeries::monomial(F, lam, j, N));
                else if (kind == SampleKind::IS) x = s_torus(LSeries::constant(F, lam ? lam : 1, N));
                else x = s_torus(LSeries::one(F, N) + LSeries::monomial(F, lam, j, N));
                break;
            }
            case SampleKind::BS: {
                int c = S.range(0, 3);
                int j = S.range(-max_shift, max_shift);
                if (c == 0) x = s_u(LSeries::monomial(F, lam, j, N));
                else if (c == 1) x = s_torus(LSeries::constant(F, lam ? lam : 1, N));
                else if (c == 2) x = s_alpha0(F, N);
                else x = s_alpha0_inv(F, N);
                break;
            }
            case SampleKind::BS_IS:
            case SampleKind::IS1_BS: {
                int c = S.range(0, 1);
                int j = S.range(0, max_shift);
                if (c == 0) x = s_u(LSeries::monomial(F, lam, j, N));
                else if (kind == SampleKind::BS_IS) x = s_torus(LSeries::constant(F, lam ? lam : 1, N));
                else x = s_torus(LSeries::one(F, N) + LSeries::monomial(F, lam, j + 1, N));
                break;
            }
        }
        g = g * x;
    }
    return g;
}

// ---------------------------------------------------------------- serialization

inline std::array<std::array<std::string, 2>, 2> to_strings(const SMat& g) {
    return {{{g.a.to_string(), g.b.to_string()}, {g.c.to_string(), g.d.to_string()}}};
}

inline std::string to_string(const SMat& g) {
    return "[[" + g.a.to_string() + ", " + g.b.to_string() + "], [" + g.c.to_string() + ", " + g.d.to_string() + "]]";
}

inline std::string to_string(const FMat& g) {
    return "[[" + g.a.to_string() + ", " + g.b.to_string() + "], [" + g.c.to_string() + ", " + g.d.to_string() + "]]";
}

}  // namespace modrep
