#pragma once

// Compact induction ind_{K0}^{G}(sigma) for a weight sigma: finitely supported
// sums of standard functions indexed by vertices of the tree, the group
// action, the I_S(1)-fixed basis f_n, Iwahori-Hecke and spherical operators,
// equality in the quotient by tau_sigma, and Frobenius reciprocity.

#include <algorithm>
#include <compare>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "modrep/fields.hpp"
#include "modrep/finrep.hpp"
#include "modrep/linalg.hpp"
#include "modrep/sl2.hpp"

namespace modrep {

class radius_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- weights

inline std::size_t gamma_code(const GField& F, const FMat& g) {
    const std::size_t q = F.q;
    return g.a.raw() + q * (g.b.raw() + q * (g.c.raw() + q * std::size_t(g.d.raw())));
}

struct Weight {
    const GField* F = nullptr;
    FinRep rep;
    RepLabel label;
    Vec v;        // v_sigma, spanning the U-fixed line
    CharExp chi;  // I_S acts on v_sigma through t(a) -> a^r
    std::vector<Matrix> table;     // sigma(g) for every g in SL_2(F_q), by gamma_code
    std::vector<FMat> translators;  // k_i with sigma(k_i) v_sigma a basis
    Matrix coeff;                   // e_j = sum_i coeff(i, j) sigma(k_i) v_sigma

    const GField& field() const { return *F; }
    std::size_t dim() const { return rep.dim(); }
    bool trivial() const { return rep.dim() == 1; }
    bool degenerate() const { return is_degenerate(*F, chi); }
    const Matrix& mat(const FMat& g) const { return table[gamma_code(*F, g)]; }
    Vec act(const FMat& g, const Vec& x) const { return mat_vec(*F, mat(g), x); }
    Vec w0v() const { return act(f_w0(*F), v); }
    std::string name() const { return label.to_string(); }
};

// label of an irreducible module by comparison with the classification
inline std::optional<RepLabel> identify_weight(const FinRep& rep) {
    for (const auto& c : classify_all(rep.field()))
        if (c.dim == rep.dim() && find_iso(c.rep, rep)) return c.label;
    return std::nullopt;
}

inline Weight make_weight(const FinRep& rep) {
    const GField& F = rep.field();
    Weight W;
    W.F = &F;
    W.rep = rep;
    if (rep.label) {
        W.label = *rep.label;
    } else {
        auto l = identify_weight(rep);
        if (!l) throw std::invalid_argument("not an irreducible representation");
        W.label = *l;
    }
    auto wd = weight_data(rep);
    W.v = wd.v;
    W.chi = wd.chi;
    W.table.assign(std::size_t(F.q) * F.q * F.q * F.q, Matrix());
    const auto all = f_all_elements(F);
    for (const auto& g : all) W.table[gamma_code(F, g)] = rep.act(g);
    const std::size_t d = rep.dim();
    EchelonBasis B(F, d);
    for (const auto& g : all) {
        if (B.size() == d) break;
        if (B.add(W.act(g, W.v))) W.translators.push_back(g);
    }
    if (B.size() != d) throw std::invalid_argument("v_sigma does not generate");
    Matrix C(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        Vec col = W.act(W.translators[i], W.v);
        for (std::size_t r = 0; r < d; ++r) C(r, i) = col[r];
    }
    W.coeff = *inverse(F, C);
    return W;
}

inline std::vector<Weight> all_weights(const GField& F) {
    std::vector<Weight> out;
    for (const auto& c : classify_all(F)) out.push_back(make_weight(c.rep));
    return out;
}

// ---------------------------------------------------------------- vertices

// The coset R K0 with R = (t^A, z; 0, t^-A), z reduced mod t^A O. Coefficients
// of z run over the exponents lo .. A-1, the first one nonzero.
struct VKey {
    int A = 0;
    int lo = 0;
    std::vector<gf_t> z;

    int radius() const {
        int r = std::abs(A);
        if (!z.empty()) r = std::max(r, -lo);
        return r;
    }
    auto operator<=>(const VKey&) const = default;
    bool operator==(const VKey&) const = default;
    std::string to_string(const GField& F) const {
        std::string s = "A=" + std::to_string(A) + ",z=";
        if (z.empty()) return s + "0";
        s += "t^" + std::to_string(lo) + "*(";
        for (std::size_t i = 0; i < z.size(); ++i) s += (i ? " " : "") + F.to_string(z[i]);
        return s + ")";
    }
};

inline VKey make_vkey(int A, int lo, std::vector<gf_t> z) {
    std::size_t s = 0;
    while (s < z.size() && z[s] == 0) ++s;
    if (s == z.size()) return {A, 0, {}};
    z.erase(z.begin(), z.begin() + std::ptrdiff_t(s));
    return {A, lo + int(s), std::move(z)};
}

// every vertex of radius at most r (distance at most 2r from the base vertex)
inline std::vector<VKey> ball_vertices(const GField& F, int r) {
    std::vector<VKey> out;
    for (int A = -r; A <= r; ++A) {
        const int count = A + r;
        std::size_t total = 1;
        for (int i = 0; i < count; ++i) total *= F.q;
        std::vector<gf_t> c(std::size_t(count), 0);
        for (std::size_t code = 0; code < total; ++code) {
            std::size_t x = code;
            for (int i = 0; i < count; ++i) {
                c[std::size_t(i)] = gf_t(x % F.q);
                x /= F.q;
            }
            out.push_back(make_vkey(A, -r, c));
        }
    }
    return out;
}

inline std::size_t ball_size(const GField& F, int r) {
    std::size_t total = 0, pw = 1;
    for (int i = 0; i <= 2 * r; ++i, pw *= F.q) total += pw;
    return total;
}

// calls fn(x) for every polynomial x = sum_{k=lo}^{lo+count-1} x_k t^k
inline void for_each_poly(const GField& F, int lo, int count, int N, const std::function<void(const LSeries&)>& fn) {
    std::size_t total = 1;
    for (int i = 0; i < count; ++i) total *= F.q;
    std::vector<gf_t> c(std::size_t(std::max(count, 0)), 0);
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t x = code;
        for (int i = 0; i < count; ++i) {
            c[std::size_t(i)] = gf_t(x % F.q);
            x /= F.q;
        }
        fn(LSeries(F, lo, c, N));
    }
}

struct Canon {
    VKey key;
    FMat hbar;  // g = R h with h in K0, hbar = h mod p
};

// ---------------------------------------------------------------- vectors

struct CIndVec {
    std::map<VKey, Vec> terms;  // [R, v] for each stored vertex, values nonzero

    bool is_zero() const { return terms.empty(); }
    std::size_t size() const { return terms.size(); }
    int radius() const {
        int r = 0;
        for (const auto& [k, v] : terms) r = std::max(r, k.radius());
        return r;
    }
    bool operator==(const CIndVec& o) const { return terms == o.terms; }
};

// Compressed I_S(1)-fixed vector: class n -> value at alpha0^{-n}.
using FixedVec = std::map<int, Vec>;

class CInd {
public:
    CInd(const Weight& W, int radius_cap = 6, int precision = 0)
        : W_(std::make_shared<const Weight>(W)), cap_(radius_cap),
          N_(precision > 0 ? precision : 4 * radius_cap + 24) {
        build_tau_tables();
    }

    const Weight& weight() const { return *W_; }
    const GField& field() const { return W_->field(); }
    std::size_t dim() const { return W_->dim(); }
    int precision() const { return N_; }
    int radius_cap() const { return cap_; }

    // ------------------------------------------------ vertices

    SMat rep(const VKey& k) const {
        const GField& F = field();
        LSeries z = k.z.empty() ? LSeries::zero(F, N_) : LSeries(F, k.lo, k.z, N_);
        return {LSeries::t_power(F, k.A, N_), z, LSeries::zero(F, N_), LSeries::t_power(F, -k.A, N_)};
    }

    Canon canon(const SMat& g) const {
        const GField& F = field();
        LSeries b = g.b, d = g.d, c = g.c;
        bool swapped = false;
        if (d.is_zero() || (!c.is_zero() && c.val() < d.val())) {
            // g w0 = (b, -a; d, -c)
            b = -g.a;
            c = g.d;
            d = -g.c;
            swapped = true;
        }
        if (d.is_zero()) throw precision_error("bottom row vanishes to precision");
        const int A = -d.val();
        const gf_t eps0 = d.leading();
        LSeries w = b * ls_inv(d.unit_part());
        gf_t y0 = w.coeff(A);
        std::vector<gf_t> zc;
        int lo = 0;
        if (!w.is_zero() && w.val() < A) {
            lo = w.val();
            zc.assign(std::size_t(A - lo), 0);
            for (int k = lo; k < A; ++k) zc[std::size_t(k - lo)] = w.coeff(k);
        }
        gf_t cd0 = 0;
        if (!c.is_zero() && c.val() == d.val()) cd0 = F.div(c.leading(), eps0);
        else if (!c.is_zero() && c.val() < d.val()) throw std::logic_error("canonicalization pivot");
        FMat h = f_u(F, y0) * f_torus(F, F.inv(eps0)) * f_ubar(F, cd0);
        if (swapped) h = h * f_w0(F).inv();
        return {make_vkey(A, lo, std::move(zc)), h};
    }

    VKey key_of(const SMat& g) const { return canon(g).key; }

    // ------------------------------------------------ vector arithmetic

    void accumulate(CIndVec& f, const VKey& k, const Vec& v, gf_t c = 1) const {
        const GField& F = field();
        if (c == 0 || vec_is_zero(v)) return;
        auto it = f.terms.find(k);
        if (it == f.terms.end()) {
            f.terms.emplace(k, c == 1 ? v : vec_scale(F, c, v));
            return;
        }
        Vec& x = it->second;
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = F.add(x[i], F.mul(c, v[i]));
        if (vec_is_zero(x)) f.terms.erase(it);
    }
    CIndVec add(const CIndVec& a, const CIndVec& b) const {
        CIndVec r = a;
        for (const auto& [k, v] : b.terms) accumulate(r, k, v);
        return r;
    }
    CIndVec sub(const CIndVec& a, const CIndVec& b) const {
        CIndVec r = a;
        for (const auto& [k, v] : b.terms) accumulate(r, k, v, field().neg(1));
        return r;
    }
    CIndVec scale(gf_t c, const CIndVec& a) const {
        CIndVec r;
        if (c == 0) return r;
        for (const auto& [k, v] : a.terms) r.terms.emplace(k, vec_scale(field(), c, v));
        return r;
    }

    // ------------------------------------------------ action and evaluation

    CIndVec std_fn(const SMat& g, const Vec& v) const {
        Canon cn = canon(g);
        CIndVec f;
        accumulate(f, cn.key, W_->act(cn.hbar, v));
        return f;
    }

    // g [R, v] = [R', sigma(h) v] where g R = R' h
    CIndVec act(const SMat& g, const CIndVec& f) const {
        CIndVec out;
        for (const auto& [k, v] : f.terms) {
            Canon cn = canon(g * rep(k));
            accumulate(out, cn.key, W_->act(cn.hbar, v));
        }
        return out;
    }

    CIndVec act_sum(const std::vector<SMat>& gs, const CIndVec& f) const {
        CIndVec out;
        for (const auto& g : gs)
            for (const auto& [k, v] : f.terms) {
                Canon cn = canon(g * rep(k));
                accumulate(out, cn.key, W_->act(cn.hbar, v));
            }
        return out;
    }

    // f(x): write x^{-1} = R' h, then f(x) = sigma(h^{-1}) f_{R'}
    Vec evaluate(const CIndVec& f, const SMat& x) const {
        Canon cn = canon(x.inv());
        auto it = f.terms.find(cn.key);
        if (it == f.terms.end()) return Vec(dim(), 0);
        return W_->act(cn.hbar.inv(), it->second);
    }

    std::set<int> support_classes(const CIndVec& f) const {
        std::set<int> out;
        for (const auto& [k, v] : f.terms) out.insert(kgi_class(rep(k).inv()).n);
        return out;
    }

    // ------------------------------------------------ the basis f_n

    Vec base_value(int n) const { return n > 0 ? W_->w0v() : W_->v; }

    // the I_S(1)-fixed function supported on K0 alpha0^{-n} I_S(1) with value c at alpha0^{-n}
    CIndVec spread(int n, const Vec& c) const {
        if (std::abs(n) > cap_) throw radius_error("radius " + std::to_string(std::abs(n)) + " exceeds the cap");
        const GField& F = field();
        CIndVec f;
        if (n <= 0) {
            const int m = -n;
            SMat a = s_alpha0_pow(F, -m, N_);
            for_each_poly(F, 0, 2 * m, N_, [&](const LSeries& y) {
                Canon cn = canon(s_u(y) * a);
                accumulate(f, cn.key, W_->act(cn.hbar, c));
            });
        } else {
            SMat a = s_alpha0_pow(F, n, N_);
            for_each_poly(F, 1, 2 * n - 1, N_, [&](const LSeries& z) {
                Canon cn = canon(s_ubar(z) * a);
                accumulate(f, cn.key, W_->act(cn.hbar, c));
            });
        }
        return f;
    }

    CIndVec f_basis(int n) const { return spread(n, base_value(n)); }

    CIndVec phi() const { return std_fn(s_identity(field(), N_), W_->v); }

    // ------------------------------------------------ Hecke operators

    std::vector<SMat> summands(HeckeOp op) const { return hecke_summands(field(), op, N_); }

    // f | T_g, summed over the coset representatives
    CIndVec right_hecke(const CIndVec& f, HeckeOp op) const { return act_sum(summands(op), f); }

    CIndVec s_op(const CIndVec& f) const { return right_hecke(f, HeckeOp::alpha0); }

    // ------------------------------------------------ compressed I_S(1)-fixed vectors

    Vec fixed_eval(const FixedVec& f, const SMat& g) const {
        CosetClass c = kgi_class(g);
        auto it = f.find(c.n);
        if (it == f.end()) return Vec(dim(), 0);
        return W_->act(reduce_mod_p(c.k), it->second);
    }

    FixedVec fixed_hecke(const FixedVec& f, HeckeOp op) const {
        FixedVec out;
        if (f.empty()) return out;
        const GField& F = field();
        const auto S = summands(op);
        const int hi = std::max(-f.begin()->first, f.rbegin()->first) + 3, lo = -hi;
        for (int k = lo; k <= hi; ++k) {
            SMat a = s_alpha0_pow(F, -k, N_);
            Vec acc(dim(), 0);
            for (const auto& s : S) acc = vec_add(F, acc, fixed_eval(f, a * s));
            if (!vec_is_zero(acc)) out[k] = acc;
        }
        return out;
    }

    FixedVec fixed_basis(int n) const { return {{n, base_value(n)}}; }

    // values of a materialized vector at the class representatives
    FixedVec compress(const CIndVec& f) const {
        FixedVec out;
        const int r = f.radius() + 1;
        for (int n = -r; n <= r; ++n) {
            Vec v = evaluate(f, s_alpha0_pow(field(), -n, N_));
            if (!vec_is_zero(v)) out[n] = v;
        }
        return out;
    }

    CIndVec expand(const FixedVec& f) const {
        CIndVec out;
        for (const auto& [n, c] : f) out = add(out, spread(n, c));
        return out;
    }

    // coordinates in the basis f_n; nullopt if some value is not a multiple of the base value
    std::optional<std::map<int, gf_t>> fixed_coords(const FixedVec& f) const {
        const GField& F = field();
        std::map<int, gf_t> out;
        for (const auto& [n, val] : f) {
            Vec b = base_value(n);
            std::size_t p = 0;
            while (p < b.size() && b[p] == 0) ++p;
            gf_t c = F.div(val[p], b[p]);
            if (vec_scale(F, c, b) != val) return std::nullopt;
            if (c) out[n] = c;
        }
        return out;
    }

    FixedVec fixed_add(const FixedVec& a, const FixedVec& b, gf_t cb = 1) const {
        FixedVec r = a;
        for (const auto& [n, v] : b) {
            Vec w = vec_scale(field(), cb, v);
            auto it = r.find(n);
            if (it == r.end()) {
                if (!vec_is_zero(w)) r[n] = w;
            } else {
                it->second = vec_add(field(), it->second, w);
                if (vec_is_zero(it->second)) r.erase(it);
            }
        }
        return r;
    }

    // ------------------------------------------------ spherical operator

    // tau([1, e_j]) as a materialized vector
    const CIndVec& tau_basis(std::size_t j) const { return T_[j]; }
    const CIndVec& tau_phi() const { return tau_phi_; }

    CIndVec tau(const CIndVec& f) const {
        CIndVec out;
        for (const auto& [k, v] : f.terms) {
            CIndVec inner;
            for (std::size_t j = 0; j < dim(); ++j)
                if (v[j])
                    for (const auto& [k2, v2] : T_[j].terms) accumulate(inner, k2, v2, v[j]);
            out = add(out, act(rep(k), inner));
        }
        return out;
    }

    CIndVec tau_sigma(const CIndVec& f) const {
        CIndVec t = tau(f);
        return W_->trivial() ? add(t, f) : t;
    }

    // (tau f)(x) = sum over radius-1 vertices z of Psi(z) f(z^{-1} x)
    FixedVec fixed_tau(const FixedVec& f, bool plus_identity) const {
        FixedVec out;
        if (f.empty()) return out;
        const GField& F = field();
        const int hi = std::max(-f.begin()->first, f.rbegin()->first) + 3, lo = -hi;
        for (int k = lo; k <= hi; ++k) {
            SMat a = s_alpha0_pow(F, -k, N_);
            Vec acc(dim(), 0);
            for (const auto& [z, E] : kernel_) {
                Vec x = fixed_eval(f, z.inv() * a);
                if (!vec_is_zero(x)) acc = vec_add(F, acc, mat_vec(F, E, x));
            }
            if (plus_identity) acc = vec_add(F, acc, fixed_eval(f, a));
            if (!vec_is_zero(acc)) out[k] = acc;
        }
        return out;
    }
    FixedVec fixed_tau_sigma(const FixedVec& f) const { return fixed_tau(f, W_->trivial()); }

    // ------------------------------------------------ I_S(1) generators

    // u([z] t^j) (0 <= j <= D), ubar([z] t^j) and t(1 + [z] t^j) (1 <= j <= D), z over an F_p-basis
    std::vector<SMat> is1_generators(int D) const {
        const GField& F = field();
        std::vector<SMat> out;
        for (gf_t z : F.prime_basis()) {
            for (int j = 0; j <= D; ++j) out.push_back(s_u(LSeries::monomial(F, z, j, N_)));
            for (int j = 1; j <= D; ++j) {
                out.push_back(s_ubar(LSeries::monomial(F, z, j, N_)));
                out.push_back(s_torus(LSeries::one(F, N_) + LSeries::monomial(F, z, j, N_)));
            }
        }
        return out;
    }

    bool is_is1_fixed(const CIndVec& f) const {
        for (const auto& g : is1_generators(2 * f.radius() + 1))
            if (act(g, f) != f) return false;
        return true;
    }

    // I_S-character exponent of f if the torus scales it and I_S(1) fixes it
    std::optional<CharExp> is_character(const CIndVec& f) const {
        if (f.is_zero() || !is_is1_fixed(f)) return std::nullopt;
        const GField& F = field();
        if (F.q == 2) return CharExp{0};
        CIndVec tf = act(s_torus(LSeries::constant(F, F.generator, N_)), f);
        const auto& [k, v] = *f.terms.begin();
        auto it = tf.terms.find(k);
        if (it == tf.terms.end()) return std::nullopt;
        std::size_t p = 0;
        while (v[p] == 0) ++p;
        gf_t c = F.div(it->second[p], v[p]);
        if (tf != scale(c, f)) return std::nullopt;
        return CharExp::of(F, F.log(c));
    }

private:
    std::shared_ptr<const Weight> W_;
    int cap_;
    int N_;
    CIndVec tau_phi_;
    std::vector<CIndVec> T_;
    std::vector<std::pair<SMat, Matrix>> kernel_;

    void build_tau_tables() {
        const GField& F = field();
        const Weight& W = *W_;
        for (const auto& s : hecke_summands(F, HeckeOp::alpha0, N_)) tau_phi_ = add(tau_phi_, std_fn(s, W.v));
        if (W.trivial())
            for (gf_t m = 0; m < F.q; ++m)
                tau_phi_ = add(tau_phi_, std_fn(s_ubar(LSeries::monomial(F, m, 1, N_)) * s_alpha0(F, N_), W.v));
        const std::size_t d = dim();
        T_.assign(d, CIndVec());
        std::vector<CIndVec> moved;
        for (const auto& k : W.translators) moved.push_back(act(lift(k, N_), tau_phi_));
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t i = 0; i < d; ++i)
                for (const auto& [key, v] : moved[i].terms) accumulate(T_[j], key, v, W.coeff(i, j));
        for (const auto& key : ball_vertices(F, 1)) {
            SMat z = rep(key);
            Matrix E(d, d);
            bool nz = false;
            for (std::size_t j = 0; j < d; ++j) {
                Vec col = evaluate(T_[j], z);
                for (std::size_t i = 0; i < d; ++i) {
                    E(i, j) = col[i];
                    nz = nz || col[i];
                }
            }
            if (nz) kernel_.push_back({z, E});
        }
    }
};

// ---------------------------------------------------------------- truncated fixed spaces

struct TruncatedFixed {
    std::size_t vertices = 0;        // vertices visited in the ball
    std::vector<CIndVec> basis;      // fixed vectors, one orbit at a time
    std::vector<int> basis_class;    // class n of the supporting orbit
    std::size_t orbits = 0;
};

// I_S(1)-fixed (or (I_S, chi)-isotypic) vectors supported on the ball of radius R,
// computed orbit by orbit from the generator action alone.
inline TruncatedFixed fixed_in_ball(const CInd& ind, int R, std::optional<CharExp> chi = std::nullopt) {
    const GField& F = ind.field();
    const Weight& W = ind.weight();
    const std::size_t d = ind.dim();
    struct Gen {
        SMat g;
        gf_t inv_chi;
    };
    std::vector<Gen> gens;
    for (const auto& g : ind.is1_generators(2 * R + 1)) gens.push_back({g, 1});
    if (chi && F.q > 2)
        gens.push_back({s_torus(LSeries::constant(F, F.generator, ind.precision())),
                        F.inv(chi->eval(F, F.generator))});

    TruncatedFixed out;
    std::map<VKey, std::size_t> seen;  // vertex -> slot in mats
    std::vector<Matrix> mats;
    for (const auto& start : ball_vertices(F, R)) {
        if (seen.count(start)) continue;
        ++out.orbits;
        std::vector<VKey> orbit{start};
        seen[start] = mats.size();
        mats.push_back(Matrix::identity(d));
        EchelonBasis constraints(F, d);
        for (std::size_t qi = 0; qi < orbit.size(); ++qi) {
            const VKey cur = orbit[qi];
            const Matrix M = mats[seen[cur]];
            SMat R0 = ind.rep(cur);
            for (const auto& gen : gens) {
                Canon cn = ind.canon(gen.g * R0);
                Matrix img = mat_scale(F, gen.inv_chi, mat_mul(F, W.mat(cn.hbar), M));
                auto it = seen.find(cn.key);
                if (it == seen.end()) {
                    if (cn.key.radius() > R) throw std::logic_error("generator left the ball");
                    seen[cn.key] = mats.size();
                    mats.push_back(img);
                    orbit.push_back(cn.key);
                } else {
                    const Matrix& old = mats[it->second];
                    for (std::size_t r = 0; r < d; ++r) {
                        Vec row(d);
                        for (std::size_t c = 0; c < d; ++c) row[c] = F.sub(old(r, c), img(r, c));
                        if (!vec_is_zero(row)) constraints.add(row);
                    }
                }
            }
        }
        Matrix Cm(std::max<std::size_t>(constraints.size(), 1), d);
        for (std::size_t r = 0; r < constraints.size(); ++r)
            for (std::size_t c = 0; c < d; ++c) Cm(r, c) = constraints.vectors()[r][c];
        auto ns = constraints.size() ? nullspace(F, Cm) : nullspace(F, Matrix(1, d));
        const int cls = kgi_class(ind.rep(start).inv()).n;
        for (const auto& x : ns) {
            CIndVec f;
            for (const auto& k : orbit) ind.accumulate(f, k, mat_vec(F, mats[seen[k]], x));
            out.basis.push_back(std::move(f));
            out.basis_class.push_back(cls);
        }
    }
    out.vertices = seen.size();
    return out;
}

// ---------------------------------------------------------------- quotient by tau_sigma

enum class SsqStatus { equal, not_equal, inconclusive };

inline const char* ssq_name(SsqStatus s) {
    switch (s) {
        case SsqStatus::equal: return "equal";
        case SsqStatus::not_equal: return "not_equal";
        case SsqStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

struct SsqResult {
    SsqStatus status = SsqStatus::inconclusive;
    int radius = 0;        // largest search radius used
    CIndVec witness;       // f1 - f2 = tau_sigma(witness) when equal
};

// Equality in ind / tau_sigma(ind) by sparse elimination over the columns
// tau_sigma([x, e_j]) for all vertices x up to a radius.
class SupersingularQuotient {
public:
    explicit SupersingularQuotient(const CInd& ind, int cap = 5) : ind_(&ind), cap_(cap), elim_(ind.field()) {}

    int built_radius() const { return built_; }

    void build(int r) {
        const GField& F = ind_->field();
        const std::size_t d = ind_->dim();
        for (int s = built_ + 1; s <= r; ++s) {
            for (const auto& key : ball_vertices(F, s)) {
                if (key.radius() != s) continue;
                for (std::size_t j = 0; j < d; ++j) {
                    Vec e(d, 0);
                    e[j] = 1;
                    CIndVec col = ind_->tau_sigma(ind_->std_fn(ind_->rep(key), e));
                    const std::size_t cid = columns_.size();
                    columns_.push_back({key, j});
                    elim_.add(cid, to_sparse(col));
                }
            }
            built_ = s;
        }
    }

    std::optional<CIndVec> express(const CIndVec& f) {
        auto combo = elim_.express(to_sparse(f));
        if (!combo) return std::nullopt;
        const std::size_t d = ind_->dim();
        CIndVec h;
        for (const auto& [cid, c] : *combo) {
            Vec e(d, 0);
            e[columns_[cid].second] = 1;
            ind_->accumulate(h, columns_[cid].first, e, c);
        }
        return h;
    }

    SsqResult equal(const CIndVec& f1, const CIndVec& f2, int search_radius = -1) {
        SsqResult res;
        CIndVec diff = ind_->sub(f1, f2);
        if (diff.is_zero()) {
            res.status = SsqStatus::equal;
            return res;
        }
        const int r0 = search_radius >= 0 ? search_radius : diff.radius();
        for (int r : {r0, r0 + 1}) {
            if (r > cap_) {
                res.status = SsqStatus::inconclusive;
                res.radius = r;
                return res;
            }
            build(std::max(r, built_));
            res.radius = r;
            if (auto h = express(diff)) {
                if (ind_->tau_sigma(*h) != diff) throw std::logic_error("quotient witness does not verify");
                res.status = SsqStatus::equal;
                res.witness = *h;
                return res;
            }
        }
        res.status = SsqStatus::not_equal;
        return res;
    }

private:
    const CInd* ind_;
    int cap_;
    int built_ = -1;
    SparseEliminator elim_;
    std::vector<std::pair<VKey, std::size_t>> columns_;
    std::map<VKey, std::size_t> ids_;

    SparseVec to_sparse(const CIndVec& f) {
        SparseVec s;
        const std::size_t d = ind_->dim();
        for (const auto& [k, v] : f.terms) {
            auto it = ids_.find(k);
            if (it == ids_.end()) it = ids_.emplace(k, ids_.size()).first;
            for (std::size_t i = 0; i < d; ++i)
                if (v[i]) s[it->second * d + i] = v[i];
        }
        return s;
    }
};

// ---------------------------------------------------------------- smooth-vector interface on ind

// Adapter exposing ind as a smooth representation: action, linear structure,
// a depth m with K0(m) acting trivially, and coordinates.
class CIndSpace {
public:
    using vec = CIndVec;
    explicit CIndSpace(const CInd& ind) : ind_(&ind) {}

    const CInd& ind() const { return *ind_; }
    const GField& field() const { return ind_->field(); }
    int precision() const { return ind_->precision(); }
    vec act(const SMat& g, const vec& v) const { return ind_->act(g, v); }
    vec add(const vec& a, const vec& b) const { return ind_->add(a, b); }
    vec scale(gf_t c, const vec& a) const { return ind_->scale(c, a); }
    bool equal(const vec& a, const vec& b) const { return a == b; }
    bool is_zero(const vec& a) const { return a.is_zero(); }
    vec zero() const { return {}; }
    int depth(const vec& a) const { return 2 * a.radius() + 1; }
    SparseVec coords(const vec& a) const {
        SparseVec s;
        const std::size_t d = ind_->dim();
        for (const auto& [k, v] : a.terms) {
            auto it = ids_.find(k);
            if (it == ids_.end()) it = ids_.emplace(k, ids_.size()).first;
            for (std::size_t i = 0; i < d; ++i)
                if (v[i]) s[it->second * d + i] = v[i];
        }
        return s;
    }

private:
    const CInd* ind_;
    mutable std::map<VKey, std::size_t> ids_;
};

// generators of K0(1) needed below depth m: u, ubar, t(1 + .) at t^j, 1 <= j < m
inline std::vector<SMat> k01_generators(const GField& F, int m, int N) {
    std::vector<SMat> out;
    for (gf_t z : F.prime_basis())
        for (int j = 1; j < m; ++j) {
            out.push_back(s_u(LSeries::monomial(F, z, j, N)));
            out.push_back(s_ubar(LSeries::monomial(F, z, j, N)));
            out.push_back(s_torus(LSeries::one(F, N) + LSeries::monomial(F, z, j, N)));
        }
    return out;
}

// ---------------------------------------------------------------- Frobenius reciprocity

// The G-map ind(sigma) -> target determined by [1, v_sigma] -> w. Construction
// fails unless v_sigma -> w extends to a K0-map sigma -> target.
template <class Space>
class FrobTransport {
public:
    using tvec = typename Space::vec;

    FrobTransport(const CInd& ind, const Space& target, const tvec& w) : ind_(&ind), S_(&target) {
        const Weight& W = ind.weight();
        const GField& F = ind.field();
        const int N = target.precision();
        const std::size_t d = W.dim();
        std::vector<tvec> moved;
        for (const auto& k : W.translators) moved.push_back(target.act(lift(k, N), w));
        for (std::size_t j = 0; j < d; ++j) {
            tvec acc = target.zero();
            for (std::size_t i = 0; i < d; ++i)
                if (W.coeff(i, j)) acc = target.add(acc, target.scale(W.coeff(i, j), moved[i]));
            L_.push_back(acc);
        }
        if (!target.equal(image_of(W.v), w)) throw std::invalid_argument("assignment is not K0-equivariant");
        for (const auto& g : W.rep.generator_elements()) {
            for (std::size_t j = 0; j < d; ++j) {
                Vec e(d, 0);
                e[j] = 1;
                if (!target.equal(image_of(W.act(g, e)), target.act(lift(g, N), L_[j])))
                    throw std::invalid_argument("assignment is not K0-equivariant");
            }
        }
        for (const auto& g : k01_generators(F, target.depth(w), N))
            if (!target.equal(target.act(g, w), w)) throw std::invalid_argument("assignment is not K0-equivariant");
    }

    tvec image_of(const Vec& v) const {
        tvec acc = S_->zero();
        for (std::size_t j = 0; j < v.size(); ++j)
            if (v[j]) acc = S_->add(acc, S_->scale(v[j], L_[j]));
        return acc;
    }

    // sum over terms of R . L(v)
    tvec apply(const CIndVec& f) const {
        tvec acc = S_->zero();
        for (const auto& [k, v] : f.terms) acc = S_->add(acc, S_->act(ind_->rep(k), image_of(v)));
        return acc;
    }

    // g^{-1} . apply(f), computed term by term as (g^{-1} R) . L(v)
    tvec apply_relative(const SMat& g, const CIndVec& f) const {
        tvec acc = S_->zero();
        SMat gi = g.inv();
        for (const auto& [k, v] : f.terms) acc = S_->add(acc, S_->act(gi * ind_->rep(k), image_of(v)));
        return acc;
    }

private:
    const CInd* ind_;
    const Space* S_;
    std::vector<tvec> L_;
};

// ---------------------------------------------------------------- generic helpers over smooth spaces

enum class SOp { S, S1, S2 };

inline const char* sop_name(SOp o) {
    switch (o) {
        case SOp::S: return "S";
        case SOp::S1: return "S1";
        case SOp::S2: return "S2";
    }
    return "?";
}

inline std::vector<SMat> sop_elements(const GField& F, SOp o, int N) {
    switch (o) {
        case SOp::S: return hecke_summands(F, HeckeOp::alpha0, N);
        case SOp::S1: return hecke_summands(F, HeckeOp::w0, N);
        case SOp::S2: return hecke_summands(F, HeckeOp::w0_inv_alpha0_inv, N);
    }
    return {};
}

template <class Space>
typename Space::vec s_operator(const Space& S, SOp o, const typename Space::vec& v) {
    auto acc = S.zero();
    for (const auto& g : sop_elements(S.field(), o, S.precision())) acc = S.add(acc, S.act(g, v));
    return acc;
}

// sum of c_i g_i . v
template <class Space>
typename Space::vec group_sum(const Space& S, const std::vector<std::pair<gf_t, SMat>>& terms,
                              const typename Space::vec& v) {
    auto acc = S.zero();
    for (const auto& [c, g] : terms)
        if (c) acc = S.add(acc, S.scale(c, S.act(g, v)));
    return acc;
}

// I_S-character exponent of v, if I_S(1) fixes v and the torus scales it
template <class Space>
std::optional<CharExp> isotypic_check(const Space& S, const typename Space::vec& v) {
    const GField& F = S.field();
    const int N = S.precision();
    if (S.is_zero(v)) return std::nullopt;
    const int D = S.depth(v);
    for (gf_t z : F.prime_basis()) {
        for (int j = 0; j <= D; ++j)
            if (!S.equal(S.act(s_u(LSeries::monomial(F, z, j, N)), v), v)) return std::nullopt;
        for (int j = 1; j <= D; ++j) {
            if (!S.equal(S.act(s_ubar(LSeries::monomial(F, z, j, N)), v), v)) return std::nullopt;
            if (!S.equal(S.act(s_torus(LSeries::one(F, N) + LSeries::monomial(F, z, j, N)), v), v))
                return std::nullopt;
        }
    }
    if (F.q == 2) return CharExp{0};
    auto tv = S.act(s_torus(LSeries::constant(F, F.generator, N)), v);
    SparseVec a = S.coords(v), b = S.coords(tv);
    const auto& [k, x] = *a.begin();
    auto it = b.find(k);
    gf_t c = it == b.end() ? 0 : F.div(it->second, x);
    if (c == 0 || !S.equal(tv, S.scale(c, v))) return std::nullopt;
    return CharExp::of(F, F.log(c));
}

struct K0Span {
    std::size_t dim = 0;
    bool k1_trivial = false;        // K0(1) acts trivially on the span
    std::optional<FinRep> rep;      // the span as an SL_2(F_q)-module
    bool irreducible = false;
    std::optional<RepLabel> label;  // set when irreducible
};

// The K0-module generated by v, spun up inside the given space.
template <class Space>
K0Span k0_span(const Space& S, const typename Space::vec& v) {
    using V = typename Space::vec;
    const GField& F = S.field();
    const int N = S.precision();
    const int m = S.depth(v);
    std::vector<SMat> gens;
    for (gf_t z : F.prime_basis())
        for (int j = 0; j < m; ++j) {
            gens.push_back(s_u(LSeries::monomial(F, z, j, N)));
            gens.push_back(s_ubar(LSeries::monomial(F, z, j, N)));
        }
    if (F.q > 2) gens.push_back(s_torus(LSeries::constant(F, F.generator, N)));
    gens.push_back(s_w0(F, N));
    SparseEliminator E(F);
    std::vector<V> basis;
    if (E.add(0, S.coords(v))) basis.push_back(v);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (const auto& g : gens) {
            V w = S.act(g, basis[i]);
            if (E.add(basis.size(), S.coords(w))) basis.push_back(w);
        }
    K0Span out;
    out.dim = basis.size();
    out.k1_trivial = true;
    for (const auto& g : k01_generators(F, m, N))
        for (const auto& b : basis)
            if (!S.equal(S.act(g, b), b)) out.k1_trivial = false;
    if (!out.k1_trivial || basis.empty()) return out;
    const std::size_t n = basis.size();
    FinRep rep = FinRep::from_action(F, n, [&](const FMat& g) {
        Matrix M(n, n);
        SMat lg = lift(g, N);
        for (std::size_t j = 0; j < n; ++j) {
            auto c = E.express(S.coords(S.act(lg, basis[j])));
            if (!c) throw std::logic_error("span is not K0-stable");
            for (const auto& [i, x] : *c) M(i, j) = x;
        }
        return M;
    });
    out.irreducible = is_irreducible(rep);
    if (out.irreducible) out.label = identify_weight(rep);
    out.rep = rep;
    return out;
}

}  // namespace modrep
