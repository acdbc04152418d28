#pragma once

// Smooth principal series Ind_{B_S}^{G_S}(eta) at finite level, the I_S(1)-fixed
// vectors l1 and l2, the operators S, S1, S2, and the Steinberg quotient.
//
// A level-m vector is right K0(m)-invariant and is stored by its values on
//   ubar(c),   c in O / t^m              index sum c_k q^k
//   w0 u(d),   d in p / p^m              index q^m + sum_{k>=1} d_k q^{k-1}
// which represent B_S \ G_S / K0(m).

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "modrep/cind.hpp"

namespace modrep {

class level_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// eta(x) = eta_t^{val x} * lead(x)^r on F^x, extended to B_S through the upper-left entry
struct SmoothChar {
    int r = 0;
    gf_t eta_t = 1;

    gf_t eval(const GField& F, const LSeries& x) const {
        if (x.is_zero()) throw std::domain_error("character at zero");
        const int v = x.val();
        gf_t tv = v >= 0 ? F.pow(eta_t, v) : F.pow(F.inv(eta_t), -static_cast<long long>(v));
        return F.mul(tv, F.pow(x.leading(), r));
    }
    gf_t at_alpha0(const GField& F) const { return F.inv(eta_t); }
    bool trivial(const GField& F) const { return r % int(F.q - 1) == 0 && eta_t == 1; }
    CharExp plus(const GField& F) const { return CharExp::of(F, r); }
    CharExp minus(const GField& F) const { return CharExp::of(F, -r); }
    std::string to_string(const GField& F) const {
        return "(r=" + std::to_string(r) + ",eta_t=" + F.to_string(eta_t) + ")";
    }
};

inline std::vector<SmoothChar> all_tame_characters(const GField& F) {
    std::vector<SmoothChar> out;
    for (int r = 0; r < int(F.q) - 1; ++r)
        for (gf_t a = 1; a < F.q; ++a) out.push_back({r, a});
    return out;
}

struct PSVec {
    int level = 1;
    Vec vals;
};

class PrincipalSeries {
public:
    using vec = PSVec;

    PrincipalSeries(const GField& F, SmoothChar eta, int precision = 24, int level_cap = 4)
        : F_(&F), eta_(eta), N_(precision), cap_(level_cap) {}

    const GField& field() const { return *F_; }
    const SmoothChar& eta() const { return eta_; }
    int precision() const { return N_; }
    int level_cap() const { return cap_; }

    std::size_t size(int m) const {
        std::size_t qm = 1;
        for (int i = 0; i < m - 1; ++i) qm *= F_->q;
        return qm * (F_->q + 1);
    }

    SMat rep(int m, std::size_t idx) const {
        const GField& F = *F_;
        std::size_t qm = 1;
        for (int i = 0; i < m; ++i) qm *= F.q;
        std::vector<gf_t> c;
        if (idx < qm) {
            for (int k = 0; k < m; ++k, idx /= F.q) c.push_back(gf_t(idx % F.q));
            return s_ubar(LSeries(F, 0, c, N_));
        }
        idx -= qm;
        for (int k = 1; k < m; ++k, idx /= F.q) c.push_back(gf_t(idx % F.q));
        return s_w0(F, N_) * s_u(LSeries(F, 1, c, N_));
    }

    // f(x) = scalar * f[index] for every level-m vector f
    std::pair<std::size_t, gf_t> locate(const SMat& x, int m) const {
        const GField& F = *F_;
        const LSeries &c = x.c, &d = x.d;
        std::size_t qm = 1;
        for (int i = 0; i < m; ++i) qm *= F.q;
        if (!d.is_zero() && (c.is_zero() || d.val() <= c.val())) {
            LSeries y = c * ls_inv(d);
            std::size_t idx = 0, pw = 1;
            for (int k = 0; k < m; ++k, pw *= F.q) idx += pw * y.coeff(k);
            return {idx, F.inv(eta_.eval(F, d))};
        }
        if (c.is_zero()) throw precision_error("bottom row vanishes to precision");
        LSeries y = d * ls_inv(c);
        std::size_t idx = qm, pw = 1;
        for (int k = 1; k < m; ++k, pw *= F.q) idx += pw * y.coeff(k);
        return {idx, F.inv(eta_.eval(F, c))};
    }

    gf_t evaluate(const PSVec& f, const SMat& x) const {
        auto [i, s] = locate(x, f.level);
        return F_->mul(s, f.vals[i]);
    }

    PSVec zero() const { return {1, Vec(size(1), 0)}; }

    PSVec expand(const PSVec& f, int m) const {
        if (m <= f.level) return f;
        if (m > cap_) throw level_error("level " + std::to_string(m) + " exceeds the cap");
        PSVec out{m, Vec(size(m), 0)};
        for (std::size_t i = 0; i < out.vals.size(); ++i) out.vals[i] = evaluate(f, rep(m, i));
        return out;
    }

    // (g f)_i = c_i f_{j_i} on level-m functions, for g that preserves level m
    std::vector<std::pair<std::size_t, gf_t>> level_action(const SMat& g, int m) const {
        if (min_val(g) < 0) throw std::invalid_argument("element does not preserve the level");
        std::vector<std::pair<std::size_t, gf_t>> out(size(m));
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = locate(rep(m, i) * g, m);
        return out;
    }

    PSVec minimize(PSVec f) const {
        while (f.level > 1) {
            PSVec cand{f.level - 1, Vec(size(f.level - 1), 0)};
            for (std::size_t i = 0; i < cand.vals.size(); ++i) cand.vals[i] = evaluate(f, rep(f.level - 1, i));
            if (expand(cand, f.level).vals != f.vals) break;
            f = std::move(cand);
        }
        return f;
    }

    // (g f)(x) = f(x g)
    PSVec act(const SMat& g, const PSVec& f) const {
        const int m = f.level - 2 * std::min(0, min_val(g));
        if (m > cap_) throw level_error("level " + std::to_string(m) + " exceeds the cap");
        PSVec out{m, Vec(size(m), 0)};
        for (std::size_t i = 0; i < out.vals.size(); ++i) out.vals[i] = evaluate(f, rep(m, i) * g);
        return minimize(std::move(out));
    }

    PSVec add(const PSVec& a, const PSVec& b) const {
        const int m = std::max(a.level, b.level);
        PSVec x = expand(a, m), y = expand(b, m);
        return minimize({m, vec_add(*F_, x.vals, y.vals)});
    }
    PSVec scale(gf_t c, const PSVec& a) const { return minimize({a.level, vec_scale(*F_, c, a.vals)}); }
    bool is_zero(const PSVec& a) const { return vec_is_zero(a.vals); }
    bool equal(const PSVec& a, const PSVec& b) const {
        const int m = std::max(a.level, b.level);
        return expand(a, m).vals == expand(b, m).vals;
    }
    int depth(const PSVec& a) const { return a.level; }
    SparseVec coords(const PSVec& a) const {
        PSVec x = expand(a, cap_);
        SparseVec s;
        for (std::size_t i = 0; i < x.vals.size(); ++i)
            if (x.vals[i]) s[i] = x.vals[i];
        return s;
    }

    // value eta(b) on B_S I_S(1), zero on B_S beta0 I_S(1)
    PSVec ell1() const { return borel_indicator(BorelSide::plain); }
    PSVec ell2() const { return borel_indicator(BorelSide::beta0); }

    // I_S(1)-fixed (or I_S-isotypic) level-m vectors, one per orbit on the representatives
    std::vector<PSVec> fixed_space(int m, std::optional<CharExp> chi = std::nullopt) const {
        const GField& F = *F_;
        struct Gen {
            SMat g;
            gf_t chi;
        };
        std::vector<Gen> gens;
        for (gf_t z : F.prime_basis()) {
            for (int j = 0; j < m; ++j) gens.push_back({s_u(LSeries::monomial(F, z, j, N_)), 1});
            for (int j = 1; j < m; ++j) {
                gens.push_back({s_ubar(LSeries::monomial(F, z, j, N_)), 1});
                gens.push_back({s_torus(LSeries::one(F, N_) + LSeries::monomial(F, z, j, N_)), 1});
            }
        }
        if (chi && F.q > 2) gens.push_back({s_torus(LSeries::constant(F, F.generator, N_)), chi->eval(F, F.generator)});
        const std::size_t n = size(m);
        std::vector<gf_t> scal(n, 0);
        std::vector<int> orbit(n, -1);
        std::vector<PSVec> out;
        int next = 0;
        for (std::size_t root = 0; root < n; ++root) {
            if (orbit[root] >= 0) continue;
            const int id = next++;
            std::vector<std::size_t> members{root};
            orbit[root] = id;
            scal[root] = 1;
            bool ok = true;
            for (std::size_t k = 0; k < members.size(); ++k) {
                const std::size_t i = members[k];
                for (const auto& gen : gens) {
                    // (g f)[i] = s f[j] must equal chi(g) f[i]
                    auto [j, s] = locate(rep(m, i) * gen.g, m);
                    gf_t want = F.div(F.mul(gen.chi, scal[i]), s);
                    if (orbit[j] < 0) {
                        orbit[j] = id;
                        scal[j] = want;
                        members.push_back(j);
                    } else if (scal[j] != want) {
                        ok = false;
                    }
                }
            }
            if (!ok) continue;
            PSVec f{m, Vec(n, 0)};
            for (auto i : members) f.vals[i] = scal[i];
            out.push_back(minimize(f));
        }
        return out;
    }

    // An S-type operator on the level-m fixed space, with a basis of I_S-isotypic
    // vectors. The image of an isotypic vector is isotypic, so the kernel is
    // computed one isotypic block at a time.
    struct OperatorOnFixed {
        std::vector<PSVec> basis;
        std::vector<CharExp> basis_chi;
        Matrix matrix;
        std::vector<PSVec> kernel;
        std::vector<CharExp> kernel_chi;
    };

    OperatorOnFixed operator_kernel(SOp op, int m = 1) const {
        const GField& F = *F_;
        OperatorOnFixed o;
        for (int s = 0; s < std::max(1, int(F.q) - 1); ++s)
            for (auto& v : fixed_space(m, CharExp::of(F, s))) {
                o.basis.push_back(v);
                o.basis_chi.push_back(CharExp::of(F, s));
            }
        const std::size_t k = o.basis.size();
        SparseEliminator E(F);
        for (std::size_t i = 0; i < k; ++i) E.add(i, coords(o.basis[i]));
        o.matrix = Matrix(k, k);
        for (std::size_t i = 0; i < k; ++i) {
            PSVec img = s_operator(*this, op, o.basis[i]);
            if (is_zero(img)) continue;
            auto c = E.express(coords(img));
            if (!c) throw std::logic_error("operator left the fixed space");
            for (const auto& [row, x] : *c) o.matrix(row, i) = x;
        }
        for (int s = 0; s < std::max(1, int(F.q) - 1); ++s) {
            std::vector<std::size_t> cols;
            for (std::size_t i = 0; i < k; ++i)
                if (o.basis_chi[i].r == CharExp::of(F, s).r) cols.push_back(i);
            if (cols.empty()) continue;
            Matrix B(k, cols.size());
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t c = 0; c < cols.size(); ++c) B(r, c) = o.matrix(r, cols[c]);
            for (const auto& x : nullspace(F, B)) {
                PSVec v = zero();
                for (std::size_t c = 0; c < cols.size(); ++c)
                    if (x[c]) v = add(v, scale(x[c], o.basis[cols[c]]));
                o.kernel.push_back(v);
                o.kernel_chi.push_back(CharExp::of(F, s));
            }
        }
        return o;
    }

private:
    const GField* F_;
    SmoothChar eta_;
    int N_;
    int cap_;

    PSVec borel_indicator(BorelSide side) const {
        PSVec f{1, Vec(size(1), 0)};
        for (std::size_t i = 0; i < f.vals.size(); ++i) {
            auto bc = borel_class(rep(1, i));
            if (bc.side == side) f.vals[i] = eta_.eval(*F_, bc.b.a);
        }
        return f;
    }
};

// The representation g -> pi(alpha g alpha^{-1}) with alpha = diag(1, t).
template <class Space>
class AlphaTwist {
public:
    using vec = typename Space::vec;
    explicit AlphaTwist(const Space& S) : S_(&S) {}
    const GField& field() const { return S_->field(); }
    int precision() const { return S_->precision(); }
    vec act(const SMat& g, const vec& v) const { return S_->act(alpha_conjugate(g), v); }
    vec add(const vec& a, const vec& b) const { return S_->add(a, b); }
    vec scale(gf_t c, const vec& a) const { return S_->scale(c, a); }
    bool equal(const vec& a, const vec& b) const { return S_->equal(a, b); }
    bool is_zero(const vec& a) const { return S_->is_zero(a); }
    vec zero() const { return S_->zero(); }
    int depth(const vec& a) const { return S_->depth(a) + 1; }
    SparseVec coords(const vec& a) const { return S_->coords(a); }

private:
    const Space* S_;
};

// ---------------------------------------------------------------- Steinberg quotient

// Ind(1) modulo constants; canonical representative has value 0 at the identity.
class SteinbergQuotient {
public:
    using vec = PSVec;
    explicit SteinbergQuotient(const PrincipalSeries& ps) : ps_(&ps) {
        if (!ps.eta().trivial(ps.field())) throw std::invalid_argument("Steinberg quotient needs trivial eta");
    }
    const PrincipalSeries& ps() const { return *ps_; }
    const GField& field() const { return ps_->field(); }
    int precision() const { return ps_->precision(); }

    PSVec canonical(const PSVec& f) const {
        const GField& F = field();
        const gf_t c = f.vals[0];
        PSVec out = f;
        for (auto& x : out.vals) x = F.sub(x, c);
        return ps_->minimize(out);
    }
    vec act(const SMat& g, const vec& v) const { return canonical(ps_->act(g, v)); }
    vec add(const vec& a, const vec& b) const { return canonical(ps_->add(a, b)); }
    vec scale(gf_t c, const vec& a) const { return canonical(ps_->scale(c, a)); }
    bool equal(const vec& a, const vec& b) const { return ps_->equal(canonical(a), canonical(b)); }
    bool is_zero(const vec& a) const { return ps_->is_zero(canonical(a)); }
    vec zero() const { return ps_->zero(); }
    int depth(const vec& a) const { return canonical(a).level; }
    SparseVec coords(const vec& a) const { return ps_->coords(canonical(a)); }

private:
    const PrincipalSeries* ps_;
};

// membership in V_eta = {f : f(1) = 0}
inline bool v_eta_membership(const PSVec& f) { return f.vals[0] == 0; }

// ---------------------------------------------------------------- structural checks

// I_S(1)-fixed vectors inside the span of the given vectors
template <class Space>
std::vector<typename Space::vec> fixed_in_span(const Space& S, const std::vector<typename Space::vec>& span, int D) {
    const GField& F = S.field();
    const int N = S.precision();
    std::vector<SMat> gens;
    for (gf_t z : F.prime_basis()) {
        for (int j = 0; j <= D; ++j) gens.push_back(s_u(LSeries::monomial(F, z, j, N)));
        for (int j = 1; j <= D; ++j) {
            gens.push_back(s_ubar(LSeries::monomial(F, z, j, N)));
            gens.push_back(s_torus(LSeries::one(F, N) + LSeries::monomial(F, z, j, N)));
        }
    }
    // columns (g - 1) b_i stacked over all generators, rows indexed by coordinates
    std::map<std::size_t, std::size_t> row_of;
    std::vector<std::vector<std::pair<std::size_t, gf_t>>> cols(span.size());
    for (std::size_t i = 0; i < span.size(); ++i)
        for (std::size_t gi = 0; gi < gens.size(); ++gi) {
            auto d = S.coords(S.add(S.act(gens[gi], span[i]), S.scale(F.neg(1), span[i])));
            for (const auto& [k, x] : d) {
                const std::size_t key = k * gens.size() + gi;
                auto it = row_of.find(key);
                if (it == row_of.end()) it = row_of.emplace(key, row_of.size()).first;
                cols[i].push_back({it->second, x});
            }
        }
    Matrix M(std::max<std::size_t>(row_of.size(), 1), span.size());
    for (std::size_t i = 0; i < span.size(); ++i)
        for (const auto& [r, x] : cols[i]) M(r, i) = x;
    std::vector<typename Space::vec> out;
    for (const auto& x : nullspace(F, M)) {
        auto v = S.zero();
        for (std::size_t i = 0; i < span.size(); ++i)
            if (x[i]) v = S.add(v, S.scale(x[i], span[i]));
        if (!S.is_zero(v)) out.push_back(v);
    }
    return out;
}

// span of the orbit of v under the given group elements
template <class Space>
std::vector<typename Space::vec> orbit_span(const Space& S, const std::vector<SMat>& gens, const typename Space::vec& v) {
    SparseEliminator E(S.field());
    std::vector<typename Space::vec> basis;
    if (E.add(0, S.coords(v))) basis.push_back(v);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (const auto& g : gens) {
            auto w = S.act(g, basis[i]);
            if (E.add(basis.size(), S.coords(w))) basis.push_back(w);
        }
    return basis;
}

struct BorelGeneration {
    int k = 0;                 // alpha0^{-k} w is fixed by ubar(p)
    bool ubar_fixed = false;
    std::size_t span_dim = 0;  // dimension of the (B_S cap I_S(1))-span
    std::size_t fixed_dim = 0; // nonzero I_S(1)-fixed vectors found in it
};

// For a level-m vector w: w' = alpha0^{-k} w with 2k+1 >= m is ubar(p)-fixed, and the
// span of its (B_S cap I_S(1))-orbit contains a nonzero I_S(1)-fixed vector.
// The orbit is computed at the level L of w', where every generator acts by a monomial matrix.
inline BorelGeneration borel_generation(const PrincipalSeries& P, const PSVec& w) {
    const GField& F = P.field();
    const int N = P.precision();
    BorelGeneration out;
    out.k = std::max(0, (w.level) / 2);
    PSVec w1 = w;
    for (int i = 0; i < out.k; ++i) w1 = P.act(s_alpha0_inv(F, N), w1);
    out.ubar_fixed = true;
    for (gf_t z : F.prime_basis())
        for (int j = 1; j <= w1.level; ++j)
            if (!P.equal(P.act(s_ubar(LSeries::monomial(F, z, j, N)), w1), w1)) out.ubar_fixed = false;

    const int L = w1.level;
    const std::size_t n = P.size(L);
    std::vector<std::vector<std::pair<std::size_t, gf_t>>> maps;
    for (gf_t z : F.prime_basis()) {
        for (int j = 0; j < L; ++j) maps.push_back(P.level_action(s_u(LSeries::monomial(F, z, j, N)), L));
        for (int j = 1; j < L; ++j)
            maps.push_back(P.level_action(s_torus(LSeries::one(F, N) + LSeries::monomial(F, z, j, N)), L));
    }
    auto sparse = [](const Vec& x) {
        SparseVec s;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i]) s[i] = x[i];
        return s;
    };
    SparseEliminator E(F);
    std::vector<Vec> basis;
    if (E.add(0, sparse(w1.vals))) basis.push_back(w1.vals);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (const auto& A : maps) {
            Vec y(n);
            for (std::size_t r = 0; r < n; ++r) y[r] = F.mul(A[r].second, basis[i][A[r].first]);
            if (E.add(basis.size(), sparse(y))) basis.push_back(std::move(y));
        }
    out.span_dim = basis.size();
    // dim(span cap fixed) = dim fixed - rank of the fixed basis modulo the span
    SparseEliminator R(F);
    const auto fixed = P.fixed_space(L);
    for (std::size_t k = 0; k < fixed.size(); ++k)
        if (!R.add(k, E.reduce(sparse(P.expand(fixed[k], L).vals)).first)) ++out.fixed_dim;
    return out;
}

struct BorelLine {
    PSVec v;
    gf_t alpha_eigen = 0;
    bool g_fixed = false;
};

// Lines in the level-m space stable under B_S: vectors fixed by the unipotent and
// pro-p torus generators, scaled by t([gamma]) and by alpha0.
inline std::vector<BorelLine> borel_stable_lines(const PrincipalSeries& P, int m) {
    const GField& F = P.field();
    const int N = P.precision();
    std::vector<BorelLine> out;
    for (int s = 0; s < std::max(1, int(F.q) - 1); ++s) {
        // U(O)-fixed, (1+p)-fixed and torus-isotypic vectors at level m
        std::vector<SMat> gens;
        for (gf_t z : F.prime_basis()) {
            for (int j = 0; j < m; ++j) gens.push_back(s_u(LSeries::monomial(F, z, j, N)));
            for (int j = 1; j < m; ++j) gens.push_back(s_torus(LSeries::one(F, N) + LSeries::monomial(F, z, j, N)));
        }
        const std::size_t n = P.size(m);
        auto action = [&](const SMat& g) {
            Matrix A(n, n);
            for (std::size_t i = 0; i < n; ++i) {
                auto [j, sc] = P.locate(P.rep(m, i) * g, m);
                A(i, j) = sc;
            }
            return A;
        };
        std::vector<Vec> rows;
        auto push = [&](const Matrix& A, gf_t c) {
            for (std::size_t i = 0; i < n; ++i) {
                Vec row(n);
                for (std::size_t j = 0; j < n; ++j) row[j] = A(i, j);
                row[i] = F.sub(row[i], c);
                if (!vec_is_zero(row)) rows.push_back(row);
            }
        };
        for (const auto& g : gens) push(action(g), 1);
        if (F.q > 2) push(action(s_torus(LSeries::constant(F, F.generator, N))), F.pow(F.generator, s));
        Matrix C(std::max<std::size_t>(rows.size(), 1), n);
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < n; ++c) C(r, c) = rows[r][c];
        auto W = nullspace(F, C);
        if (W.empty()) continue;
        // alpha0-eigenvectors inside span W, compared at level m + 2
        std::vector<PSVec> wb, aw;
        for (const auto& x : W) {
            wb.push_back(P.expand({m, x}, m + 2));
            aw.push_back(P.expand(P.act(s_alpha0(F, N), {m, x}), m + 2));
        }
        const std::size_t n2 = P.size(m + 2);
        for (gf_t lam = 1; lam < F.q; ++lam) {
            Matrix D(n2, W.size());
            for (std::size_t i = 0; i < W.size(); ++i)
                for (std::size_t r = 0; r < n2; ++r) D(r, i) = F.sub(aw[i].vals[r], F.mul(lam, wb[i].vals[r]));
            for (const auto& c : nullspace(F, D)) {
                Vec x(n, 0);
                for (std::size_t i = 0; i < W.size(); ++i) x = vec_add(F, x, vec_scale(F, c[i], W[i]));
                BorelLine L{P.minimize({m, x}), lam, true};
                for (const auto& g : {s_w0(F, N), s_ubar(LSeries::one(F, N))})
                    if (!P.equal(P.act(g, L.v), L.v)) L.g_fixed = false;
                out.push_back(L);
            }
        }
    }
    return out;
}

}  // namespace modrep
