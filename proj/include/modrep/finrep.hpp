#pragma once

// Representations of the finite group SL_2(F_q) over F_q: induced modules,
// the intertwiner T_{w0}, its images, symmetric-power models and
// isomorphism testing.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "modrep/fields.hpp"
#include "modrep/linalg.hpp"
#include "modrep/sl2.hpp"

namespace modrep {

// character x -> x^r of F_q^x, 0 <= r <= q-2
struct CharExp {
    int r = 0;
    static CharExp of(const GField& F, long long r) {
        long long m = (long long)(F.q - 1);
        return {int(((r % m) + m) % m)};
    }
    CharExp w0_conj(const GField& F) const { return of(F, -r); }
    bool trivial() const { return r == 0; }
    gf_t eval(const GField& F, gf_t x) const { return F.pow(x, r); }
    bool operator==(const CharExp& o) const { return r == o.r; }
    bool operator!=(const CharExp& o) const { return r != o.r; }
};

// 2r = 0 mod (q-1), i.e. chi = chi^{w0}
inline bool is_degenerate(const GField& F, CharExp chi) { return (2 * chi.r) % int(F.q - 1) == 0; }

struct RepLabel {
    int r = 0;
    bool J = false;  // J = {1}; only allowed for r = 0
    std::string to_string() const { return "(r=" + std::to_string(r) + ",J=" + (J ? "{1}" : "{}") + ")"; }
    bool operator==(const RepLabel& o) const { return r == o.r && J == o.J; }
};

class FinRep {
public:
    FinRep() = default;

    // action given on all of Gamma through a callback; only U, T and w0 are sampled
    static FinRep from_action(const GField& F, std::size_t dim, const std::function<Matrix(const FMat&)>& rho) {
        FinRep R;
        R.F_ = &F;
        R.dim_ = dim;
        R.U_.resize(F.q);
        R.T_.resize(F.q);
        for (gf_t x = 0; x < F.q; ++x) R.U_[x] = rho(f_u(F, x));
        for (gf_t s = 1; s < F.q; ++s) R.T_[s] = rho(f_torus(F, s));
        R.W_ = rho(f_w0(F));
        return R;
    }

    const GField& field() const { return *F_; }
    std::size_t dim() const { return dim_; }
    const Matrix& U(gf_t x) const { return U_[x]; }
    const Matrix& T(gf_t s) const { return T_[s]; }
    const Matrix& W() const { return W_; }

    std::optional<RepLabel> label;

    // Bruhat: t(a)u(b/a) when c = 0, else u(a/c) t(1/c) w0 u(d/c)
    Matrix act(const FMat& g) const {
        const GField& F = *F_;
        gf_t a = g.a.raw(), b = g.b.raw(), c = g.c.raw(), d = g.d.raw();
        if (c == 0) return mat_mul(F, T_[a], U_[F.div(b, a)]);
        Matrix m = mat_mul(F, U_[F.div(a, c)], T_[F.inv(c)]);
        m = mat_mul(F, m, W_);
        return mat_mul(F, m, U_[F.div(d, c)]);
    }
    Vec act(const FMat& g, const Vec& v) const { return mat_vec(*F_, act(g), v); }

    // u over an F_p-basis, t(generator), w0 and ubar(1)
    std::vector<Matrix> generators() const {
        std::vector<Matrix> gens;
        for (gf_t b : F_->prime_basis()) gens.push_back(U_[b]);
        if (F_->q > 2) gens.push_back(T_[F_->generator]);
        gens.push_back(W_);
        gens.push_back(act(f_ubar(*F_, 1)));
        return gens;
    }
    std::vector<FMat> generator_elements() const {
        std::vector<FMat> gens;
        for (gf_t b : F_->prime_basis()) gens.push_back(f_u(*F_, b));
        if (F_->q > 2) gens.push_back(f_torus(*F_, F_->generator));
        gens.push_back(f_w0(*F_));
        gens.push_back(f_ubar(*F_, 1));
        return gens;
    }

private:
    const GField* F_ = nullptr;
    std::size_t dim_ = 0;
    std::vector<Matrix> U_, T_;
    Matrix W_;
};

// restriction of `rep` to the invariant subspace spanned by the given independent columns
inline FinRep subrep(const FinRep& rep, const std::vector<Vec>& basis) {
    const GField& F = rep.field();
    const std::size_t n = rep.dim(), k = basis.size();
    Matrix B(n, k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i) B(i, j) = basis[j][i];
    return FinRep::from_action(F, k, [&](const FMat& g) {
        Matrix img = mat_mul(F, rep.act(g), B);
        Matrix X(k, k);
        for (std::size_t j = 0; j < k; ++j) {
            auto x = solve(F, B, img.column(j));
            if (!x) throw std::logic_error("subspace is not invariant");
            for (std::size_t i = 0; i < k; ++i) X(i, j) = (*x)[i];
        }
        return X;
    });
}

// coordinates of v in the given basis
inline Vec coordinates(const GField& F, const std::vector<Vec>& basis, const Vec& v) {
    Matrix B(v.size(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t i = 0; i < v.size(); ++i) B(i, j) = basis[j][i];
    auto x = solve(F, B, v);
    if (!x) throw std::logic_error("vector outside the span");
    return *x;
}

// ---------------------------------------------------------------- induced modules

// B\Gamma has representatives 1 (index 0) and w0 u(lambda) (index 1 + lambda).
struct BCoset {
    std::size_t index;
    gf_t a;  // g = diag(a, a^{-1}) n r with n unipotent
};

inline BCoset b_coset(const GField& F, gf_t c, gf_t d) {
    if (c == 0) return {0, F.inv(d)};
    return {1 + F.div(d, c), F.inv(c)};
}

inline Vec bottom_row_of_rep(const GField& F, std::size_t idx) {
    if (idx == 0) return {0, 1};
    return {1, gf_t(idx - 1)};
    (void)F;
}

struct IndBChi {
    FinRep rep;
    CharExp chi;
    Vec phi;  // supported on B, value 1 at the identity
};

inline IndBChi ind_b_chi(const GField& F, CharExp chi) {
    const std::size_t n = F.q + 1;
    IndBChi out;
    out.chi = chi;
    // (g f)(r) = f(r g) = chi(b) f(r') where r g = b r'
    out.rep = FinRep::from_action(F, n, [&](const FMat& g) {
        Matrix M(n, n);
        for (std::size_t r = 0; r < n; ++r) {
            Vec v = bottom_row_of_rep(F, r);
            gf_t c = F.add(F.mul(v[0], g.a.raw()), F.mul(v[1], g.c.raw()));
            gf_t d = F.add(F.mul(v[0], g.b.raw()), F.mul(v[1], g.d.raw()));
            BCoset bc = b_coset(F, c, d);
            M(r, bc.index) = chi.eval(F, bc.a);
        }
        return M;
    });
    out.phi.assign(n, 0);
    out.phi[0] = 1;
    return out;
}

// Ind_U^Gamma(1): functions on nonzero bottom rows v, (g f)(v) = f(v g)
struct IndU {
    FinRep rep;
    std::size_t index(const GField& F, gf_t c, gf_t d) const { return std::size_t(c) * F.q + d - 1; }
};

inline std::size_t indu_index(const GField& F, gf_t c, gf_t d) { return std::size_t(c) * F.q + d - 1; }

inline std::pair<gf_t, gf_t> indu_row(const GField& F, std::size_t i) {
    std::size_t k = i + 1;
    return {gf_t(k / F.q), gf_t(k % F.q)};
}

inline FinRep ind_u_trivial(const GField& F) {
    const std::size_t n = std::size_t(F.q) * F.q - 1;
    return FinRep::from_action(F, n, [&](const FMat& g) {
        Matrix M(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            auto [c, d] = indu_row(F, i);
            gf_t c2 = F.add(F.mul(c, g.a.raw()), F.mul(d, g.c.raw()));
            gf_t d2 = F.add(F.mul(c, g.b.raw()), F.mul(d, g.d.raw()));
            M(i, indu_index(F, c2, d2)) = 1;
        }
        return M;
    });
}

// T_{w0} on Ind_U(1): (T f)(v) = sum_lambda f(-w - lambda v) with det(w; v) = 1
inline Matrix t_w0_ambient(const GField& F) {
    const std::size_t n = std::size_t(F.q) * F.q - 1;
    Matrix M(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        auto [c, d] = indu_row(F, i);
        gf_t a, b;
        if (c != 0) {
            a = 0;
            b = F.neg(F.inv(c));
        } else {
            a = F.inv(d);
            b = 0;
        }
        for (gf_t l = 0; l < F.q; ++l) {
            gf_t c2 = F.neg(F.add(a, F.mul(l, c)));
            gf_t d2 = F.neg(F.add(b, F.mul(l, d)));
            M(i, indu_index(F, c2, d2)) = F.add(M(i, indu_index(F, c2, d2)), 1);
        }
    }
    return M;
}

// Ind_B(chi) inside Ind_U(1)
inline Matrix ind_b_embedding(const GField& F, CharExp chi) {
    const std::size_t n = std::size_t(F.q) * F.q - 1, m = F.q + 1;
    Matrix E(n, m);
    for (std::size_t i = 0; i < n; ++i) {
        auto [c, d] = indu_row(F, i);
        BCoset bc = b_coset(F, c, d);
        E(i, bc.index) = chi.eval(F, bc.a);
    }
    return E;
}

// reading values at the bottom rows of the coset representatives
inline Matrix ind_b_restriction(const GField& F) {
    const std::size_t n = std::size_t(F.q) * F.q - 1, m = F.q + 1;
    Matrix R(m, n);
    for (std::size_t r = 0; r < m; ++r) {
        Vec v = bottom_row_of_rep(F, r);
        R(r, indu_index(F, v[0], v[1])) = 1;
    }
    return R;
}

// T_{w0}: Ind_B(chi) -> Ind_B(chi^{w0}) as a (q+1)x(q+1) matrix
inline Matrix t_w0_matrix(const GField& F, CharExp chi) {
    Matrix T = t_w0_ambient(F);
    return mat_mul(F, ind_b_restriction(F), mat_mul(F, T, ind_b_embedding(F, chi)));
}

inline Vec apply_t_w0(const GField& F, CharExp chi, const Vec& f) { return mat_vec(F, t_w0_matrix(F, chi), f); }

// sum_lambda u(lambda) w0^{-1} . phi_{chi^{w0}}
inline Vec t_w0_phi_by_formula(const GField& F, CharExp chi) {
    IndBChi target = ind_b_chi(F, chi.w0_conj(F));
    Vec acc(F.q + 1, 0);
    for (gf_t l = 0; l < F.q; ++l)
        acc = vec_add(F, acc, target.rep.act(f_u(F, l) * f_w0(F).inv(), target.phi));
    return acc;
}

struct ThetaImage {
    FinRep rep;         // the image, in its own basis
    std::vector<Vec> basis;  // basis inside Ind_B(chi^{w0}) (J empty) or Ind_B(1) (J = {1})
    Vec f;              // f_chi^J inside the ambient induced module
    Vec f_coords;       // f_chi^J in the image basis
};

inline ThetaImage theta_image(const GField& F, CharExp chi, bool J) {
    if (J && !chi.trivial()) throw std::invalid_argument("J = {1} requires the trivial character");
    Matrix Th = t_w0_matrix(F, chi);
    if (J) Th = mat_add(F, Th, Matrix::identity(F.q + 1));
    IndBChi amb = ind_b_chi(F, J ? chi : chi.w0_conj(F));
    Vec f = mat_vec(F, Th, ind_b_chi(F, chi).phi);
    ThetaImage out;
    out.basis = spin_up(F, amb.rep.generators(), {f}, F.q + 1);
    out.rep = subrep(amb.rep, out.basis);
    out.rep.label = RepLabel{chi.r, J};
    out.f = f;
    out.f_coords = coordinates(F, out.basis, f);
    return out;
}

// ---------------------------------------------------------------- invariants and tests

inline std::vector<Vec> u_invariants(const FinRep& rep) {
    const GField& F = rep.field();
    const std::size_t n = rep.dim();
    auto basis = F.prime_basis();
    Matrix S(n * basis.size(), n);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const Matrix& M = rep.U(basis[k]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) S(k * n + i, j) = F.sub(M(i, j), i == j ? 1 : 0);
    }
    return nullspace(F, S);
}

// all points of the projective space on the span of `basis`
inline std::vector<Vec> projective_points(const GField& F, const std::vector<Vec>& basis) {
    std::vector<Vec> out;
    const std::size_t k = basis.size();
    if (k == 0) return out;
    const std::size_t n = basis[0].size();
    std::vector<gf_t> coeff(k, 0);
    for (std::size_t lead = 0; lead < k; ++lead) {
        std::size_t free = k - lead - 1;
        std::size_t total = 1;
        for (std::size_t i = 0; i < free; ++i) total *= F.q;
        for (std::size_t code = 0; code < total; ++code) {
            std::fill(coeff.begin(), coeff.end(), 0);
            coeff[lead] = 1;
            std::size_t c = code;
            for (std::size_t i = lead + 1; i < k; ++i) {
                coeff[i] = gf_t(c % F.q);
                c /= F.q;
            }
            Vec v(n, 0);
            for (std::size_t i = 0; i < k; ++i)
                if (coeff[i]) v = vec_add(F, v, vec_scale(F, coeff[i], basis[i]));
            out.push_back(std::move(v));
        }
    }
    return out;
}

// Every nonzero submodule meets the U-fixed space since U is a p-group.
inline bool is_irreducible(const FinRep& rep) {
    if (rep.dim() == 0) throw std::invalid_argument("zero module");
    const GField& F = rep.field();
    auto gens = rep.generators();
    for (const auto& v : projective_points(F, u_invariants(rep)))
        if (spin_up(F, gens, {v}, rep.dim()).size() < rep.dim()) return false;
    return true;
}

// nonzero X with X rho_a(g) = rho_b(g) X on generators
inline std::optional<Matrix> find_iso(const FinRep& a, const FinRep& b) {
    const GField& F = a.field();
    const std::size_t na = a.dim(), nb = b.dim();
    if (na != nb) return std::nullopt;
    auto ga = a.generator_elements();
    std::vector<Matrix> A, B;
    for (const auto& g : ga) {
        A.push_back(a.act(g));
        B.push_back(b.act(g));
    }
    // unknown X(i,j) at column i*na + j
    Matrix S(ga.size() * nb * na, nb * na);
    std::size_t row = 0;
    for (std::size_t g = 0; g < ga.size(); ++g)
        for (std::size_t i = 0; i < nb; ++i)
            for (std::size_t j = 0; j < na; ++j, ++row) {
                // (X A)(i,j) - (B X)(i,j)
                for (std::size_t k = 0; k < na; ++k) S(row, i * na + k) = F.add(S(row, i * na + k), A[g](k, j));
                for (std::size_t k = 0; k < nb; ++k) S(row, k * na + j) = F.sub(S(row, k * na + j), B[g](i, k));
            }
    auto ns = nullspace(F, S);
    for (const auto& x : ns) {
        Matrix X(nb, na);
        X.a = x;
        if (inverse(F, X)) return X;
    }
    return std::nullopt;
}

struct WeightData {
    Vec v;         // spans the U-fixed line, first nonzero coordinate 1
    CharExp chi;   // torus character on that line
};

inline WeightData weight_data(const FinRep& rep) {
    const GField& F = rep.field();
    auto inv = u_invariants(rep);
    if (inv.size() != 1) throw std::invalid_argument("representation is reducible");
    Vec v = inv[0];
    std::size_t p = 0;
    while (v[p] == 0) ++p;
    v = vec_scale(F, F.inv(v[p]), v);
    CharExp chi{0};
    if (F.q > 2) {
        Vec tv = mat_vec(F, rep.T(F.generator), v);
        chi = CharExp::of(F, F.log(tv[p]));
    }
    return {v, chi};
}

// ---------------------------------------------------------------- symmetric powers

// matrix of P(X,Y) -> P(aX+cY, bX+dY) on X^{r-i}Y^i, entries raised to p^l
inline Matrix sym_factor(const GField& F, int r, int l, const FMat& g) {
    long long pl = 1;
    for (int i = 0; i < l; ++i) pl *= F.p;
    gf_t a = F.pow(g.a.raw(), pl), b = F.pow(g.b.raw(), pl), c = F.pow(g.c.raw(), pl), d = F.pow(g.d.raw(), pl);
    const std::size_t n = std::size_t(r) + 1;
    Matrix M(n, n);
    for (int i = 0; i <= r; ++i) {
        std::vector<gf_t> poly{1};  // coefficients by power of Y
        auto mul_lin = [&](gf_t x, gf_t y) {
            std::vector<gf_t> out(poly.size() + 1, 0);
            for (std::size_t k = 0; k < poly.size(); ++k) {
                out[k] = F.add(out[k], F.mul(poly[k], x));
                out[k + 1] = F.add(out[k + 1], F.mul(poly[k], y));
            }
            poly = out;
        };
        for (int k = 0; k < r - i; ++k) mul_lin(a, c);
        for (int k = 0; k < i; ++k) mul_lin(b, d);
        for (std::size_t k = 0; k < n; ++k) M(k, std::size_t(i)) = poly[k];
    }
    return M;
}

inline Matrix kron(const GField& F, const Matrix& x, const Matrix& y) {
    Matrix r(x.rows * y.rows, x.cols * y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < x.cols; ++j)
            for (std::size_t k = 0; k < y.rows; ++k)
                for (std::size_t l = 0; l < y.cols; ++l) r(i * y.rows + k, j * y.cols + l) = F.mul(x(i, j), y(k, l));
    return r;
}

// twisted tensor product of Sym^{r_l} with the l-th Frobenius twist
inline FinRep sym_model(const GField& F, const std::vector<int>& digits) {
    if (int(digits.size()) != F.e) throw std::invalid_argument("need one digit per Frobenius twist");
    std::size_t dim = 1;
    for (int r : digits) {
        if (r < 0 || r > F.p - 1) throw std::invalid_argument("digit out of range");
        dim *= std::size_t(r + 1);
    }
    FinRep rep = FinRep::from_action(F, dim, [&](const FMat& g) {
        Matrix M = Matrix::identity(1);
        for (int l = 0; l < F.e; ++l) M = kron(F, M, sym_factor(F, digits[std::size_t(l)], l, g));
        return M;
    });
    int r = 0;
    long long pl = 1;
    for (int l = 0; l < F.e; ++l, pl *= F.p) r += int(digits[std::size_t(l)] * pl);
    // the all-zero digit vector is the trivial module, which is Theta^{1}(Ind 1)
    rep.label = RepLabel{CharExp::of(F, r).r, r == 0};
    return rep;
}

// base-p digits of r (r = q-1 gives all digits p-1)
inline std::vector<int> p_digits(const GField& F, int r) {
    std::vector<int> d(std::size_t(F.e), 0);
    for (int l = 0; l < F.e; ++l) {
        d[std::size_t(l)] = r % F.p;
        r /= F.p;
    }
    return d;
}

struct Classified {
    RepLabel label;
    std::size_t dim;
    FinRep rep;
};

inline std::vector<Classified> classify_all(const GField& F) {
    std::vector<Classified> out;
    for (int r = 0; r <= int(F.q) - 2; ++r) {
        auto th = theta_image(F, CharExp{r}, false);
        out.push_back({RepLabel{r, false}, th.rep.dim(), th.rep});
        if (r == 0) {
            auto th1 = theta_image(F, CharExp{0}, true);
            out.push_back({RepLabel{0, true}, th1.rep.dim(), th1.rep});
        }
    }
    return out;
}

// eigenvalue of T_{w0} on f_chi^J, computed in Ind_U(1)
inline std::optional<gf_t> t_w0_eigenvalue(const GField& F, CharExp chi, bool J) {
    auto th = theta_image(F, chi, J);
    CharExp amb = J ? chi : chi.w0_conj(F);
    Vec f = mat_vec(F, ind_b_embedding(F, amb), th.f);
    Vec Tf = mat_vec(F, t_w0_ambient(F), f);
    std::size_t p = 0;
    while (p < f.size() && f[p] == 0) ++p;
    if (p == f.size()) return std::nullopt;
    gf_t lam = F.div(Tf[p], f[p]);
    if (Tf != vec_scale(F, lam, f)) return std::nullopt;
    return lam;
}

}  // namespace modrep
