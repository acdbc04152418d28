#pragma once

// Verification suites, anchored case records and report output.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "modrep/cind.hpp"
#include "modrep/fields.hpp"
#include "modrep/finrep.hpp"
#include "modrep/sl2.hpp"
#include "modrep/smooth.hpp"

namespace modrep::harness {

class config_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Config {
    int p = 3;
    int e = 1;
    int precision = 64;
    int radius = 4;
    int level = 4;
    std::uint64_t seed = 1;
};

enum class Status { pass, fail, skip };

inline const char* status_name(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::skip: return "skip";
    }
    return "?";
}

struct Case {
    std::string id;
    std::string anchor;
    Status status = Status::skip;
    std::string details;
};

struct Summary {
    std::size_t total = 0, pass = 0, fail = 0, skip = 0;
};

struct Report {
    std::string suite;
    Config config;
    std::vector<Case> cases;

    Summary summary() const {
        Summary s;
        for (const auto& c : cases) {
            ++s.total;
            if (c.status == Status::pass) ++s.pass;
            else if (c.status == Status::fail) ++s.fail;
            else ++s.skip;
        }
        return s;
    }
    bool ok() const { return summary().fail == 0; }
    int exit_code() const { return ok() ? 0 : 1; }
};

// ---------------------------------------------------------------- anchor registry

struct Anchor {
    const char* id;
    const char* module;
    const char* topic;
};

inline const std::vector<Anchor>& paper_map() {
    static const std::vector<Anchor> m = {
        {"finrep.classification", "finrep", "irreducible modules of SL2(F_q) via Theta images"},
        {"finrep.u_fixed_line", "finrep", "one-dimensional U-fixed space of an irreducible"},
        {"finrep.tw0.square", "finrep", "square rule for T_w0"},
        {"finrep.tw0.definition", "finrep", "T_w0 as an intertwiner Ind(chi) -> Ind(chi^w0)"},
        {"finrep.theta.sym_model", "finrep", "Theta images against twisted symmetric powers"},
        {"sl2.coset.normal_form", "sl2", "K0 alpha0^-n I_S(1) normal form and Cartan invariant"},
        {"sl2.borel.normal_form", "sl2", "G = B I_S(1) u B beta0 I_S(1)"},
        {"sl2.coset.membership", "sl2", "explicit double-coset memberships behind the Hecke tables"},
        {"cind.hecke.degenerate", "cind", "T_w0 and T_{w0^-1 alpha0^-1} on f_n, chi = chi^w0"},
        {"cind.hecke.nondegenerate", "cind", "T_alpha0 and T_alpha0^-1 on f_n, chi != chi^w0"},
        {"cind.hecke.scalars", "cind", "the scalars a_n and b_n"},
        {"cind.hecke.compressed", "cind", "compressed Hecke evaluation against materialized sums"},
        {"cind.finite_codim.ladder", "cind", "finite codimension of Hecke submodules"},
        {"cind.tau.formula", "cind", "tau on [1, v_sigma] and the operator S"},
        {"cind.tau.equivariance", "cind", "tau is G-equivariant"},
        {"cind.tau.commutes", "cind", "tau commutes with the pro-p Iwahori-Hecke action"},
        {"cind.fixed.span", "cind", "I_S(1)-invariants of ind are spanned by f_n"},
        {"cind.fixed.isotypic", "cind", "isotypic components of ind are nonzero only for chi_sigma, chi_sigma^w0"},
        {"cind.ssq.nonzero", "cind", "phi is nonzero modulo tau_sigma"},
        {"cind.ssq.s_kills", "cind", "S phi lies in the image of tau_sigma"},
        {"cind.ssq.s_nilpotent", "cind", "powers of S kill I_S(1)-invariants in the quotient"},
        {"smooth.ps.fixed_space", "smooth", "I_S(1)-invariants of Ind(eta) spanned by l1, l2"},
        {"smooth.ps.isotypic", "smooth", "I_S characters of l1 and l2"},
        {"smooth.ps.v_eta", "smooth", "l2 lies in V_eta"},
        {"smooth.ps.s_eigen", "smooth", "S l2 = eta(alpha0) l2"},
        {"smooth.s_factorization", "smooth", "S = S1 S2 on I_S(1)-invariants"},
        {"smooth.ps.weight", "smooth", "S v generates a non-trivial weight"},
        {"smooth.ps.frobenius", "smooth", "ind / (tau_sigma - eta(alpha0)) maps onto Ind(eta)"},
        {"smooth.ps.borel_line", "smooth", "B-stable lines in Ind(eta)"},
        {"smooth.borel_generation", "smooth", "the B-module generated by a vector meets the I_S(1)-invariants"},
        {"smooth.steinberg", "smooth", "Steinberg quotient restricted to B"},
        {"identity.s_kernel_w0", "identities", "w0 v through B when S v = 0"},
        {"identity.s2_expansion", "identities", "S2 v through B when S v = 0"},
        {"identity.s2_kernel_w0", "identities", "w0 v through B when S2 v = 0"},
        {"identity.v_from_w0", "identities", "v through u w0 v when S2 v = 0 and sum u w0 v = 0"},
    };
    return m;
}

inline bool known_anchor(const std::string& a) {
    for (const auto& x : paper_map())
        if (a == x.id) return true;
    return false;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> s = {"carter-lusztig", "cosets",        "iwahori-hecke", "spherical",
                                               "principal-series", "supersingular", "identities",  "all"};
    return s;
}

// ---------------------------------------------------------------- case recording

struct Outcome {
    Status status;
    std::string details;
};

inline Outcome passed(std::string d = {}) { return {Status::pass, std::move(d)}; }
inline Outcome failed(std::string d) { return {Status::fail, std::move(d)}; }
inline Outcome skipped(std::string d) { return {Status::skip, std::move(d)}; }
inline Outcome verdict(bool ok, std::string d) { return {ok ? Status::pass : Status::fail, std::move(d)}; }

class Recorder {
public:
    explicit Recorder(std::vector<Case>& out) : out_(&out) {}

    void run(const std::string& id, const std::string& anchor, const std::function<Outcome()>& fn) {
        if (!known_anchor(anchor)) throw std::logic_error("unregistered anchor " + anchor);
        Case c{id, anchor, Status::fail, {}};
        try {
            Outcome o = fn();
            c.status = o.status;
            c.details = std::move(o.details);
        } catch (const std::exception& ex) {
            c.status = Status::fail;
            c.details = std::string("exception: ") + ex.what();
        }
        out_->push_back(std::move(c));
    }

private:
    std::vector<Case>* out_;
};

// counts checks and keeps the first counterexample
struct Tally {
    std::size_t checked = 0, bad = 0;
    std::string first;
    void see(bool ok, const std::function<std::string()>& what) {
        ++checked;
        if (!ok && bad++ == 0) first = what();
    }
    Outcome outcome() const {
        std::string d = "checked=" + std::to_string(checked);
        if (bad) return failed(d + " failures=" + std::to_string(bad) + " first: " + first);
        return passed(d);
    }
};

// ---------------------------------------------------------------- small helpers

namespace detail {

inline std::string wname(const RepLabel& l) { return "r" + std::to_string(l.r) + (l.J ? "J" : ""); }

inline std::string ename(const GField& F, const SmoothChar& eta) {
    return "eta.r" + std::to_string(eta.r) + ".t" + F.to_string(eta.eta_t);
}

inline std::string show(const GField& F, const std::map<int, gf_t>& m) {
    std::string s = "{";
    bool first = true;
    for (const auto& [k, c] : m) {
        if (!first) s += ", ";
        first = false;
        s += "f" + std::to_string(k) + ":" + F.to_string(c);
    }
    return s + "}";
}

inline std::map<int, gf_t> coords_of(const CInd& ind, const FixedVec& f) {
    auto c = ind.fixed_coords(f);
    if (!c) throw std::logic_error("image is not a combination of the f_n");
    return *c;
}

inline std::map<int, gf_t> single(int n, gf_t c) {
    std::map<int, gf_t> m;
    if (c) m[n] = c;
    return m;
}

inline gf_t power_sum(const GField& F, int r) {
    gf_t s = 0;
    for (gf_t x = 1; x < F.q; ++x) s = F.add(s, F.pow(x, r));
    return s;
}

inline Vec unit_vec(std::size_t d, std::size_t j) {
    Vec e(d, 0);
    e[j] = 1;
    return e;
}

// c with v = c w, when w != 0 and v is proportional to w
inline std::optional<gf_t> ratio(const GField& F, const Vec& v, const Vec& w) {
    std::size_t p = 0;
    while (p < w.size() && w[p] == 0) ++p;
    if (p == w.size()) return std::nullopt;
    gf_t c = F.div(v[p], w[p]);
    if (vec_scale(F, c, w) != v) return std::nullopt;
    return c;
}

inline const Weight* find_weight(const std::vector<Weight>& ws, const RepLabel& l) {
    for (const auto& w : ws)
        if (w.label == l) return &w;
    return nullptr;
}

inline SMat u_of(const GField& F, gf_t c, int j, int N) { return s_u(LSeries::monomial(F, c, j, N)); }
inline SMat ubar_of(const GField& F, gf_t c, int j, int N) { return s_ubar(LSeries::monomial(F, c, j, N)); }

// (t^2 A^-1, -1; 0, t^-2 A) for A = A(lambda) != 0
inline SMat borel_partner(const GField& F, const LSeries& A, int N) {
    return {LSeries::t_power(F, 2, N) * ls_inv(A), LSeries::constant(F, F.neg(1), N), LSeries::zero(F, N),
            LSeries::t_power(F, -2, N) * A};
}

using Terms = std::vector<std::pair<gf_t, SMat>>;

// right-hand side of w0 v = - sum_{lambda != 0} (...) v
inline Terms s_kernel_w0_terms(const GField& F, int N) {
    Terms t;
    for (gf_t l1 = 0; l1 < F.q; ++l1)
        for (gf_t l0 = 0; l0 < F.q; ++l0) {
            if (!l0 && !l1) continue;
            t.push_back({F.neg(1), borel_partner(F, lift_A(F, {l0, l1}, N), N)});
        }
    return t;
}

// - sum_{l != 0} chi(t(l)) u(-l) sum_mu u(mu t) alpha0^-1
inline Terms s2_expansion_terms(const GField& F, CharExp chi, int N) {
    Terms t;
    for (gf_t l = 1; l < F.q; ++l)
        for (gf_t mu = 0; mu < F.q; ++mu)
            t.push_back({F.neg(chi.eval(F, l)), u_of(F, F.neg(l), 0, N) * u_of(F, mu, 1, N) * s_alpha0_inv(F, N)});
    return t;
}

// - sum_{mu != 0} chi(t(mu)) u(-mu t) alpha0^-1
inline Terms s2_kernel_w0_terms(const GField& F, CharExp chi, int N) {
    Terms t;
    for (gf_t mu = 1; mu < F.q; ++mu)
        t.push_back({F.neg(chi.eval(F, mu)), u_of(F, F.neg(mu), 1, N) * s_alpha0_inv(F, N)});
    return t;
}

// -chi(-1) sum_{l != 0} chi(t(l^-1)) u(l) w0; w0^2 = -1 acts through chi(-1)
inline Terms v_from_w0_terms(const GField& F, CharExp chi, int N) {
    Terms t;
    const gf_t sign = F.neg(chi.eval(F, F.neg(1)));
    for (gf_t l = 1; l < F.q; ++l)
        t.push_back({F.mul(sign, chi.eval(F, F.inv(l))), u_of(F, l, 0, N) * s_w0(F, N)});
    return t;
}

inline Terms u_w0_sum_terms(const GField& F, int N) {
    Terms t;
    for (gf_t l = 0; l < F.q; ++l) t.push_back({1, u_of(F, l, 0, N) * s_w0(F, N)});
    return t;
}

}  // namespace detail

// ---------------------------------------------------------------- suites

inline void suite_carter_lusztig(const Config& cfg, Recorder& rec) {
    using namespace detail;
    const GField& F = make_field(cfg.p, cfg.e);
    const std::string pre = "cl.q" + std::to_string(F.q) + ".";
    const auto cls = classify_all(F);

    rec.run(pre + "count", "finrep.classification", [&] {
        return verdict(cls.size() == F.q, "irreducibles=" + std::to_string(cls.size()));
    });
    rec.run(pre + "irreducible_distinct", "finrep.classification", [&] {
        Tally t;
        for (std::size_t i = 0; i < cls.size(); ++i) {
            t.see(is_irreducible(cls[i].rep), [&] { return wname(cls[i].label) + " reducible"; });
            for (std::size_t j = i + 1; j < cls.size(); ++j)
                t.see(!find_iso(cls[i].rep, cls[j].rep),
                      [&] { return wname(cls[i].label) + " ~ " + wname(cls[j].label); });
        }
        return t.outcome();
    });
    rec.run(pre + "u_fixed_line", "finrep.u_fixed_line", [&] {
        Tally t;
        for (const auto& c : cls)
            t.see(u_invariants(c.rep).size() == 1, [&] { return wname(c.label); });
        return t.outcome();
    });
    for (int r = 0; r <= int(F.q) - 2; ++r) {
        CharExp chi{r};
        rec.run(pre + "tw0_square.r" + std::to_string(r), "finrep.tw0.square", [&] {
            Matrix T1 = t_w0_matrix(F, chi), T2 = t_w0_matrix(F, chi.w0_conj(F));
            Matrix sq = mat_mul(F, T2, T1);
            if (chi.trivial()) return verdict(sq == mat_scale(F, F.neg(1), T1), "T^2 = -T");
            return verdict(sq.is_zero(), "T^2 = 0");
        });
        rec.run(pre + "tw0_intertwines.r" + std::to_string(r), "finrep.tw0.definition", [&] {
            Matrix T = t_w0_matrix(F, chi);
            auto src = ind_b_chi(F, chi), dst = ind_b_chi(F, chi.w0_conj(F));
            Tally t;
            for (const auto& g : src.rep.generator_elements())
                t.see(mat_mul(F, T, src.rep.act(g)) == mat_mul(F, dst.rep.act(g), T),
                      [&] { return "generator " + to_string(g); });
            t.see(apply_t_w0(F, chi, src.phi) == t_w0_phi_by_formula(F, chi), [] { return std::string("T phi"); });
            return t.outcome();
        });
    }
    rec.run(pre + "theta_steinberg", "finrep.theta.sym_model", [&] {
        FinRep th = theta_image(F, CharExp{0}, false).rep;
        FinRep st = sym_model(F, std::vector<int>(std::size_t(F.e), F.p - 1));
        auto X = find_iso(th, st);
        if (!X) return failed("no intertwiner");
        Tally t;
        t.see(inverse(F, *X).has_value(), [] { return std::string("singular"); });
        for (const auto& g : f_all_elements(F))
            t.see(mat_mul(F, *X, th.act(g)) == mat_mul(F, st.act(g), *X), [&] { return to_string(g); });
        auto o = t.outcome();
        o.details = "dim=" + std::to_string(th.dim()) + " " + o.details;
        return o;
    });
    for (int r = 1; r <= int(F.q) - 2; ++r)
        rec.run(pre + "theta_sym.r" + std::to_string(r), "finrep.theta.sym_model", [&] {
            FinRep th = theta_image(F, CharExp{r}, false).rep;
            auto d = p_digits(F, r);
            bool ok = find_iso(th, sym_model(F, d)).has_value();
            return verdict(ok, "dim=" + std::to_string(th.dim()));
        });
    rec.run(pre + "tw0_eigenvalues", "finrep.tw0.definition", [&] {
        Tally t;
        for (int r = 0; r <= int(F.q) - 2; ++r) {
            auto lam = t_w0_eigenvalue(F, CharExp{r}, false);
            t.see(lam == std::optional<gf_t>(r == 0 ? F.neg(1) : 0), [&] { return "r=" + std::to_string(r); });
        }
        t.see(t_w0_eigenvalue(F, CharExp{0}, true) == std::optional<gf_t>(0), [] { return std::string("J"); });
        return t.outcome();
    });
}

inline void suite_cosets(const Config& cfg, Recorder& rec) {
    using namespace detail;
    const GField& F = make_field(cfg.p, cfg.e);
    const int N = cfg.precision;
    const std::string pre = "cosets.q" + std::to_string(F.q) + ".";
    const int nmax = 3;
    auto cls = [](const SMat& g) { return kgi_class(g).n; };  // g in K0 alpha0^{-n} I_S(1)
    auto in_c = [&](const SMat& g, std::initializer_list<int> ms) {
        const int n = cls(g);
        for (int m : ms)
            if (n == -m) return true;
        return false;
    };
    auto a0 = [&](int k) { return s_alpha0_pow(F, k, N); };
    auto w0 = s_w0(F, N);

    {
        Sampler S(cfg.seed);
        std::vector<SMat> gs;
        for (int i = 0; i < 200; ++i) gs.push_back(sample_element(F, S, SampleKind::G, 8, N));
        rec.run(pre + "class_invariance", "sl2.coset.normal_form", [&] {
            Tally t;
            for (const auto& g : gs) {
                SMat k = sample_element(F, S, SampleKind::K0, 6, N), i = sample_element(F, S, SampleKind::IS1, 6, N);
                t.see(cls(k * g * i) == cls(g), [&] { return to_string(g); });
            }
            return t.outcome();
        });
        rec.run(pre + "cartan", "sl2.coset.normal_form", [&] {
            Tally t;
            for (const auto& g : gs) t.see(std::abs(cls(g)) == -min_val(g), [&] { return to_string(g); });
            return t.outcome();
        });
        rec.run(pre + "witness", "sl2.coset.normal_form", [&] {
            Tally t;
            for (const auto& g : gs) {
                auto c = kgi_class(g);
                t.see(member(c.k, SubgroupId::K0()) && member(c.i, SubgroupId::IS1()) &&
                          c.k * s_alpha0_pow(F, -c.n, min_prec(g)) * c.i == g,
                      [&] { return to_string(g); });
            }
            return t.outcome();
        });
        rec.run(pre + "borel_witness", "sl2.borel.normal_form", [&] {
            Tally t;
            for (const auto& g : gs) {
                auto bc = borel_class(g);
                SMat back = bc.side == BorelSide::plain ? bc.b * bc.j : bc.b * s_beta0(F, min_prec(g)) * bc.j;
                t.see(member(bc.b, SubgroupId::BS()) && member(bc.j, SubgroupId::IS1()) && back == g,
                      [&] { return to_string(g); });
            }
            return t.outcome();
        });
    }

    // elements of O (or p) modulo t^3
    auto o_elems = [&](int lo) {
        std::vector<LSeries> xs;
        for_each_poly(F, lo, 3, N, [&](const LSeries& x) { xs.push_back(x); });
        return xs;
    };
    const auto O = o_elems(0), P = o_elems(1);
    Sampler S(cfg.seed + 1);
    std::vector<SMat> iw;
    for (int i = 0; i < 12; ++i) iw.push_back(sample_element(F, S, SampleKind::IS1, 4, N));
    auto show_n = [](int n, const std::string& what) { return "n=" + std::to_string(n) + " " + what; };

    rec.run(pre + "membership.1", "sl2.coset.membership", [&] {
        // alpha0^n u([l]) w0 in K0 alpha0^n I_S(1), l != 0
        Tally t;
        for (int n = 1; n <= nmax; ++n)
            for (gf_t l = 1; l < F.q; ++l)
                t.see(in_c(a0(n) * u_of(F, l, 0, N) * w0, {n}), [&] { return show_n(n, "l=" + F.to_string(l)); });
        for (int n = 1; n <= nmax; ++n)
            for (const auto& i : iw)
                for (const auto& a : O)
                    t.see(in_c(a0(-n) * i * w0 * s_u(a), {n}), [&] { return show_n(n, "support " + a.to_string()); });
        return t.outcome();
    });
    rec.run(pre + "membership.2", "sl2.coset.membership", [&] {
        // K0 alpha0^n I_S(1) w0 U(O) inside the classes alpha0^{-n}, alpha0^n
        Tally t;
        for (int n = 1; n <= nmax; ++n) {
            for (const auto& x : O)
                t.see(in_c(a0(n) * s_u(x) * w0, {-n, n}), [&] { return show_n(n, x.to_string()); });
            for (const auto& i : iw)
                for (const auto& x : O)
                    t.see(in_c(a0(n) * i * w0 * s_u(x), {-n, n}), [&] { return show_n(n, "support " + x.to_string()); });
        }
        return t.outcome();
    });
    rec.run(pre + "membership.3", "sl2.coset.membership", [&] {
        // alpha0^{-(n+1)} ubar([mu] t) alpha0 w0 in K0 alpha0^{-(n+1)} I_S(1), mu != 0
        Tally t;
        for (int n = 0; n <= nmax; ++n) {
            for (gf_t mu = 1; mu < F.q; ++mu)
                t.see(in_c(a0(-(n + 1)) * ubar_of(F, mu, 1, N) * a0(1) * w0, {-(n + 1)}),
                      [&] { return show_n(n, "mu=" + F.to_string(mu)); });
            for (const auto& i : iw)
                for (const auto& z : P)
                    t.see(in_c(a0(n) * i * s_w0_inv(F, N) * a0(-1) * s_ubar(z), {-(n + 1)}),
                          [&] { return show_n(n, "support " + z.to_string()); });
        }
        return t.outcome();
    });
    rec.run(pre + "membership.4", "sl2.coset.membership", [&] {
        // alpha0^n u(x) alpha0^{-1}, x in p, in the classes alpha0^{n-1}, alpha0^{-n}
        Tally t;
        for (int n = 1; n <= nmax; ++n) {
            for (const auto& x : P)
                t.see(in_c(a0(n) * s_u(x) * a0(-1), {n - 1, -n}), [&] { return show_n(n, x.to_string()); });
            for (const auto& i : iw)
                for (const auto& z : P)
                    t.see(in_c(a0(-n) * i * s_w0_inv(F, N) * a0(-1) * s_ubar(z), {n - 1, -n}),
                          [&] { return show_n(n, "support " + z.to_string()); });
        }
        return t.outcome();
    });
    rec.run(pre + "membership.5", "sl2.coset.membership", [&] {
        // alpha0^n u(a) alpha0^{-1}: class alpha0^{-(n+1)}, alpha0^{-n}, alpha0^{n-1} by val a = 0, 1, >= 2
        Tally t;
        for (int n = 1; n <= nmax; ++n)
            for (const auto& a : O) {
                const int v = a.is_zero() ? 2 : std::min(a.val(), 2);
                const int want = v == 0 ? -(n + 1) : v == 1 ? -n : n - 1;
                t.see(in_c(a0(n) * s_u(a) * a0(-1), {want}), [&] { return show_n(n, a.to_string()); });
            }
        return t.outcome();
    });
    rec.run(pre + "membership.6", "sl2.coset.membership", [&] {
        // alpha0^{n+1} u(A(l)) alpha0^{-1}: class alpha0^{-(n+2)} or alpha0^{-(n+1)} by val A(l) = 0, 1
        Tally t;
        for (int n = 0; n <= nmax; ++n)
            for (gf_t l1 = 0; l1 < F.q; ++l1)
                for (gf_t l0 = 0; l0 < F.q; ++l0) {
                    if (!l0 && !l1) continue;
                    LSeries A = lift_A(F, {l0, l1}, N);
                    const int want = A.val() == 0 ? -(n + 2) : -(n + 1);
                    t.see(in_c(a0(n + 1) * s_u(A) * a0(-1), {want}), [&] { return show_n(n, A.to_string()); });
                }
        return t.outcome();
    });
    rec.run(pre + "membership.7", "sl2.coset.membership", [&] {
        // alpha0^{-(n+1)} ubar(t A(mu)) alpha0 in the classes alpha0^n, alpha0^{n+1}, mu != 0
        Tally t;
        for (int n = 1; n <= nmax; ++n)
            for (gf_t m1 = 0; m1 < F.q; ++m1)
                for (gf_t m0 = 0; m0 < F.q; ++m0) {
                    if (!m0 && !m1) continue;
                    LSeries z = lift_A(F, {m0, m1}, N).shifted(1);
                    t.see(in_c(a0(-(n + 1)) * s_ubar(z) * a0(1), {n, n + 1}), [&] { return show_n(n, z.to_string()); });
                }
        return t.outcome();
    });
    rec.run(pre + "membership.8", "sl2.coset.membership", [&] {
        // K0 alpha0^{-n} I_S(1) alpha0 U(O) inside the classes alpha0^{-(n-1)}, alpha0^n, alpha0^{n-1}
        Tally t;
        for (int n = 1; n <= nmax; ++n)
            for (const auto& i : iw)
                for (const auto& a : O)
                    t.see(in_c(a0(-n) * i * a0(1) * s_u(a), {-(n - 1), n, n - 1}),
                          [&] { return show_n(n, "support " + a.to_string()); });
        return t.outcome();
    });
}

inline void suite_iwahori_hecke(const Config& cfg, Recorder& rec) {
    using namespace detail;
    using M = std::map<int, gf_t>;
    const GField& F = make_field(cfg.p, cfg.e);
    const int R = cfg.radius;
    const std::string pre = "ih.q" + std::to_string(F.q) + ".";
    for (const auto& W : all_weights(F)) {
        CInd ind(W, R + 2, cfg.precision);
        const std::string wp = pre + wname(W.label) + ".";
        auto img = [&](int n, HeckeOp op) { return coords_of(ind, ind.fixed_hecke(ind.fixed_basis(n), op)); };

        if (W.degenerate()) {
            std::vector<std::pair<int, gf_t>> as, bs;
            for (int n = 0; n <= R; ++n) {
                rec.run(wp + "deg.n" + std::to_string(n), "cind.hecke.degenerate", [&] {
                    Tally t;
                    M a = img(-n, HeckeOp::w0);
                    gf_t an = a.count(-n) ? a.at(-n) : 0;
                    t.see(a == single(-n, an), [&] { return "f_-n|T_w0 = " + show(F, a); });
                    as.push_back({-n, an});
                    M b = img(-n, HeckeOp::w0_inv_alpha0_inv);
                    t.see(b == M{{n + 1, 1}}, [&] { return "f_-n|T_w0^-1a0^-1 = " + show(F, b); });
                    if (n >= 1) {
                        M c = img(n, HeckeOp::w0);
                        t.see(c == M{{-n, 1}}, [&] { return "f_n|T_w0 = " + show(F, c); });
                        M d = img(n, HeckeOp::w0_inv_alpha0_inv);
                        gf_t bn = d.count(n) ? d.at(n) : 0;
                        t.see(d == single(n, bn), [&] { return "f_n|T_w0^-1a0^-1 = " + show(F, d); });
                        bs.push_back({n, bn});
                    }
                    return t.outcome();
                });
            }
            rec.run(wp + "scalars", "cind.hecke.scalars", [&] {
                // independent evaluation: a_0 v = sum_l sigma(u(l) w0^-1) v, a_-n = b_n = sum_{x != 0} x^r
                Vec s(W.dim(), 0);
                for (gf_t l = 0; l < F.q; ++l) s = vec_add(F, s, W.act(f_u(F, l) * f_w0(F).inv(), W.v));
                auto a0 = ratio(F, s, W.v);
                const gf_t ps = power_sum(F, W.chi.r);
                std::string d;
                Tally t;
                for (auto [n, a] : as) {
                    d += "a_" + std::to_string(n) + "=" + F.to_string(a) + " ";
                    t.see(a == (n == 0 ? a0.value_or(gf_t(-1)) : ps), [&, n = n] { return "a_" + std::to_string(n); });
                }
                for (auto [n, b] : bs) {
                    d += "b_" + std::to_string(n) + "=" + F.to_string(b) + " ";
                    t.see(b == ps, [&, n = n] { return "b_" + std::to_string(n); });
                }
                auto o = t.outcome();
                o.details = d + o.details;
                return o;
            });
        } else {
            for (int n = 0; n <= R; ++n)
                rec.run(wp + "nondeg.n" + std::to_string(n), "cind.hecke.nondegenerate", [&] {
                    Tally t;
                    M a = img(-n, HeckeOp::alpha0_inv);
                    t.see(a.empty(), [&] { return "f_-n|T_a0^-1 = " + show(F, a); });
                    M b = img(-n, HeckeOp::alpha0);
                    t.see(b == M{{-(n + 1), 1}}, [&] { return "f_-n|T_a0 = " + show(F, b); });
                    if (n >= 1) {
                        M c = img(n, HeckeOp::alpha0);
                        t.see(c.empty(), [&] { return "f_n|T_a0 = " + show(F, c); });
                        M d = img(n, HeckeOp::alpha0_inv);
                        t.see(d == M{{n + 1, 1}}, [&] { return "f_n|T_a0^-1 = " + show(F, d); });
                    }
                    return t.outcome();
                });
        }

        rec.run(wp + "compressed", "cind.hecke.compressed", [&] {
            Tally t;
            const int top = std::min(R, 2);
            for (int n = -top; n <= top; ++n)
                for (HeckeOp op : {HeckeOp::w0, HeckeOp::w0_inv_alpha0_inv, HeckeOp::alpha0, HeckeOp::alpha0_inv})
                    t.see(ind.compress(ind.right_hecke(ind.f_basis(n), op)) == ind.fixed_hecke(ind.fixed_basis(n), op),
                          [&] { return "n=" + std::to_string(n) + " " + hecke_name(op); });
            return t.outcome();
        });

        // submodules generated by a single f_n within |k| <= R
        for (int n = -2; n <= 2; ++n) {
            rec.run(wp + "ladder.n" + std::to_string(n), "cind.finite_codim.ladder", [&] {
                std::vector<HeckeOp> ops;
                int lo, hi, wlo, whi;
                if (W.degenerate()) {
                    ops = {HeckeOp::w0, HeckeOp::w0_inv_alpha0_inv};
                    const int m = n > 0 ? n : 1 - n;
                    lo = -R, hi = R, wlo = -m + 1, whi = m;
                } else {
                    ops = {HeckeOp::alpha0, HeckeOp::alpha0_inv};
                    if (n <= 0) lo = -R, hi = 0, wlo = n, whi = 0;
                    else lo = 1, hi = R, wlo = 1, whi = n;
                }
                std::set<int> seen{n};
                std::vector<int> todo{n};
                while (!todo.empty()) {
                    int k = todo.back();
                    todo.pop_back();
                    for (HeckeOp op : ops)
                        for (const auto& [j, c] : img(k, op))
                            if (j >= lo && j <= hi && !seen.count(j)) {
                                seen.insert(j);
                                todo.push_back(j);
                            }
                }
                std::string missing;
                for (int k = lo; k <= hi; ++k)
                    if ((k < wlo || k > whi) && !seen.count(k)) missing += " " + std::to_string(k);
                std::string d = "window=[" + std::to_string(wlo) + "," + std::to_string(whi) +
                                "] size=" + std::to_string(whi - wlo + 1) + " reached=" + std::to_string(seen.size());
                if (!missing.empty()) return failed(d + " missing:" + missing);
                return passed(d);
            });
        }
        if (W.degenerate())
            rec.run(wp + "ladder.mixed", "cind.finite_codim.ladder", [&] {
                // f = f_a + f_b with a <= 0 < b: one of the two operators does not kill it
                Tally t;
                for (int a = -2; a <= 0; ++a)
                    for (int b = 1; b <= 2; ++b) {
                        FixedVec f = ind.fixed_add(ind.fixed_basis(a), ind.fixed_basis(b));
                        bool k1 = ind.fixed_hecke(f, HeckeOp::w0).empty();
                        bool k2 = ind.fixed_hecke(f, HeckeOp::w0_inv_alpha0_inv).empty();
                        t.see(!(k1 && k2), [&] { return "f" + std::to_string(a) + "+f" + std::to_string(b); });
                    }
                return t.outcome();
            });
    }
}

inline void suite_spherical(const Config& cfg, Recorder& rec) {
    using namespace detail;
    const GField& F = make_field(cfg.p, cfg.e);
    const int R = cfg.radius;
    const std::string pre = "sph.q" + std::to_string(F.q) + ".";
    Sampler S(cfg.seed + 2);
    for (const auto& W : all_weights(F)) {
        CInd ind(W, R + 1, cfg.precision);
        const int N = ind.precision();
        const std::string wp = pre + wname(W.label) + ".";
        rec.run(wp + "tau_phi", "cind.tau.formula", [&] {
            Tally t;
            CIndVec phi = ind.phi(), tp = ind.tau(phi);
            // the explicit sum over u(A(l)) alpha0^-1, plus ubar([m] t) alpha0 for the trivial weight
            CIndVec formula;
            for (gf_t l1 = 0; l1 < F.q; ++l1)
                for (gf_t l0 = 0; l0 < F.q; ++l0)
                    formula = ind.add(formula, ind.std_fn(s_u(lift_A(F, {l0, l1}, N)) * s_alpha0_inv(F, N), W.v));
            if (W.trivial())
                for (gf_t m = 0; m < F.q; ++m)
                    formula = ind.add(formula, ind.std_fn(ubar_of(F, m, 1, N) * s_alpha0(F, N), W.v));
            t.see(tp == formula, [] { return std::string("tau phi differs from the explicit sum"); });
            t.see(tp == ind.tau_phi(), [] { return std::string("tau phi differs from the table"); });
            if (!W.trivial()) {
                t.see(tp == ind.s_op(phi), [] { return std::string("tau phi != S phi"); });
                t.see(tp == ind.f_basis(-1), [] { return std::string("tau phi != f_-1"); });
            }
            return t.outcome();
        });
        rec.run(wp + "equivariance", "cind.tau.equivariance", [&] {
            Tally t;
            for (int i = 0; i < 100; ++i) {
                CIndVec f;
                for (int k = 0; k < 2; ++k) {
                    Vec v(W.dim());
                    for (auto& x : v) x = gf_t(S.below(F.q));
                    f = ind.add(f, ind.std_fn(sample_element(F, S, SampleKind::G, 2, N), v));
                }
                SMat g = sample_element(F, S, SampleKind::G, 3, N);
                t.see(ind.tau(ind.act(g, f)) == ind.act(g, ind.tau(f)), [&] { return to_string(g); });
            }
            return t.outcome();
        });
        rec.run(wp + "commutes", "cind.tau.commutes", [&] {
            Tally t;
            for (int n = -3; n <= 3; ++n)
                for (HeckeOp op : {HeckeOp::w0, HeckeOp::w0_inv_alpha0_inv, HeckeOp::alpha0, HeckeOp::alpha0_inv}) {
                    FixedVec f = ind.fixed_basis(n);
                    t.see(ind.fixed_tau(ind.fixed_hecke(f, op), false) == ind.fixed_hecke(ind.fixed_tau(f, false), op),
                          [&] { return "n=" + std::to_string(n) + " " + hecke_name(op); });
                }
            for (int n = -1; n <= 1; ++n)
                t.see(ind.compress(ind.tau(ind.f_basis(n))) == ind.fixed_tau(ind.fixed_basis(n), false),
                      [&] { return "materialized n=" + std::to_string(n); });
            return t.outcome();
        });
        rec.run(wp + "fixed_span", "cind.fixed.span", [&] {
            auto T = fixed_in_ball(ind, R);
            std::string d = "R=" + std::to_string(R) + " vertices=" + std::to_string(T.vertices) +
                            " dim=" + std::to_string(T.basis.size());
            Tally t;
            t.see(T.vertices == ball_size(F, R), [] { return std::string("ball not covered"); });
            t.see(T.basis.size() == std::size_t(2 * R + 1), [] { return std::string("dimension"); });
            std::set<int> classes;
            for (std::size_t i = 0; i < T.basis.size(); ++i) {
                const int n = T.basis_class[i];
                classes.insert(n);
                CIndVec fn = ind.f_basis(n);
                const auto& [k, v] = *fn.terms.begin();
                auto it = T.basis[i].terms.find(k);
                bool ok = it != T.basis[i].terms.end();
                if (ok) {
                    auto c = ratio(F, it->second, v);
                    ok = c && T.basis[i] == ind.scale(*c, fn);
                }
                t.see(ok, [&] { return "class " + std::to_string(n); });
            }
            t.see(classes.size() == T.basis.size(), [] { return std::string("repeated class"); });
            auto o = t.outcome();
            o.details = d + " " + o.details;
            return o;
        });
        rec.run(wp + "isotypic", "cind.fixed.isotypic", [&] {
            Tally t;
            const int Ri = std::min(R, 3);
            for (int s = 0; s < std::max(1, int(F.q) - 1); ++s) {
                CharExp chi{s};
                auto T = fixed_in_ball(ind, Ri, chi);
                std::set<int> cls(T.basis_class.begin(), T.basis_class.end()), want;
                if (chi == W.chi)
                    for (int n = -Ri; n <= 0; ++n) want.insert(n);
                if (chi == W.chi.w0_conj(F))
                    for (int n = 1; n <= Ri; ++n) want.insert(n);
                t.see(cls == want && T.basis.size() == want.size(), [&] { return "chi=" + std::to_string(s); });
            }
            auto o = t.outcome();
            o.details = "R=" + std::to_string(Ri) + " " + o.details;
            return o;
        });
    }
}

inline void suite_principal_series(const Config& cfg, Recorder& rec) {
    using namespace detail;
    const GField& F = make_field(cfg.p, cfg.e);
    const int N = std::min(cfg.precision, 24);
    const int M = cfg.level;
    const int Rf = std::max(0, cfg.radius - 1);
    const std::string pre = "ps.q" + std::to_string(F.q) + ".";
    const auto weights = all_weights(F);
    Sampler S(cfg.seed + 3);
    for (const auto& eta : all_tame_characters(F)) {
        PrincipalSeries P(F, eta, N, std::max(M, 4));  // S, alpha0 and the Borel checks need level 4
        const std::string ep = pre + ename(F, eta) + ".";
        const PSVec l1 = P.ell1(), l2 = P.ell2();
        rec.run(ep + "fixed_space", "smooth.ps.fixed_space", [&] {
            Tally t;
            std::string dims;
            for (int m = 1; m <= M; ++m) {
                auto fs = P.fixed_space(m);
                dims += " " + std::to_string(fs.size());
                SparseEliminator E(F);
                E.add(0, P.coords(l1));
                E.add(1, P.coords(l2));
                t.see(fs.size() == 2, [&] { return "level " + std::to_string(m); });
                for (const auto& v : fs)
                    t.see(E.express(P.coords(v)).has_value(), [&] { return "outside span, level " + std::to_string(m); });
            }
            auto o = t.outcome();
            o.details = "dims by level:" + dims + " " + o.details;
            return o;
        });
        rec.run(ep + "isotypic", "smooth.ps.isotypic", [&] {
            auto c1 = isotypic_check(P, l1), c2 = isotypic_check(P, l2);
            return verdict(c1 == std::optional<CharExp>(eta.plus(F)) && c2 == std::optional<CharExp>(eta.minus(F)),
                           "l1 ~ x^" + std::to_string(eta.plus(F).r) + ", l2 ~ x^" + std::to_string(eta.minus(F).r));
        });
        rec.run(ep + "v_eta", "smooth.ps.v_eta", [&] {
            return verdict(v_eta_membership(l2) && !v_eta_membership(l1), "l2 in V_eta, l1 not");
        });
        const PSVec sl2 = s_operator(P, SOp::S, l2);
        rec.run(ep + "s_ell2", "smooth.ps.s_eigen", [&] {
            const gf_t lam = eta.at_alpha0(F);
            return verdict(P.equal(sl2, P.scale(lam, l2)) && P.evaluate(sl2, s_identity(F, N)) == 0,
                           "eta(alpha0)=" + F.to_string(lam));
        });
        rec.run(ep + "s_factorization", "smooth.s_factorization", [&] {
            Tally t;
            for (const auto& v : {l1, l2})
                t.see(P.equal(s_operator(P, SOp::S, v), s_operator(P, SOp::S1, s_operator(P, SOp::S2, v))),
                      [] { return std::string("S != S1 S2"); });
            return t.outcome();
        });
        std::optional<RepLabel> label;
        rec.run(ep + "weight", "smooth.ps.weight", [&] {
            auto s = k0_span(P, sl2);
            if (!s.k1_trivial || !s.irreducible || !s.label) return failed("span is not a weight");
            label = s.label;
            return verdict(!s.label->J && s.dim > 1, "weight " + wname(*s.label) + " dim=" + std::to_string(s.dim));
        });
        rec.run(ep + "frobenius", "smooth.ps.frobenius", [&] {
            if (!label) return failed("no weight");
            const Weight* W = find_weight(weights, *label);
            if (!W) return failed("weight not found");
            CInd ind(*W, Rf + 1, N);
            FrobTransport<PrincipalSeries> T(ind, P, sl2);
            const gf_t lam = eta.at_alpha0(F);
            Tally t;
            for (const auto& key : ball_vertices(F, Rf))
                for (std::size_t j = 0; j < W->dim(); ++j) {
                    CIndVec x = ind.std_fn(ind.rep(key), unit_vec(W->dim(), j));
                    CIndVec y = ind.sub(ind.tau_sigma(x), ind.scale(lam, x));
                    t.see(P.is_zero(T.apply_relative(ind.rep(key), y)), [&] { return key.to_string(F); });
                }
            auto o = t.outcome();
            o.details = "sigma=" + wname(*label) + " radius=" + std::to_string(Rf) + " " + o.details;
            return o;
        });
        rec.run(ep + "borel_lines", "smooth.ps.borel_line", [&] {
            Tally t;
            for (int m = 1; m <= std::min(M, 2); ++m) {
                auto lines = borel_stable_lines(P, m);
                if (eta.trivial(F)) {
                    bool ok = lines.size() == 1 && lines[0].g_fixed && lines[0].alpha_eigen == 1;
                    if (ok) ok = lines[0].v.vals == Vec(P.size(1), lines[0].v.vals[0]);
                    t.see(ok, [&] { return "level " + std::to_string(m); });
                } else {
                    t.see(lines.empty(), [&] { return "level " + std::to_string(m); });
                }
            }
            return t.outcome();
        });
        rec.run(ep + "borel_generation", "smooth.borel_generation", [&] {
            Tally t;
            const int samples = F.q <= 4 ? 3 : 1;  // the orbit span grows like q^3
            for (int i = 0; i < samples; ++i) {
                PSVec w{2, Vec(P.size(2), 0)};
                for (auto& x : w.vals) x = gf_t(S.below(F.q));
                w = P.minimize(w);
                if (P.is_zero(w)) continue;
                auto r = borel_generation(P, w);
                t.see(r.ubar_fixed && r.fixed_dim >= 1, [&] { return "sample " + std::to_string(i); });
            }
            return t.outcome();
        });
    }
    rec.run(pre + "steinberg", "smooth.steinberg", [&] {
        PrincipalSeries P(F, {0, 1}, N, std::max(M, 4));
        SteinbergQuotient St(P);
        Tally t;
        for (int i = 0; i < 10; ++i) {
            PSVec f{1, Vec(P.size(1), 0)};
            for (auto& x : f.vals) x = gf_t(S.below(F.q));
            PSVec c = St.canonical(f);
            t.see(v_eta_membership(c), [] { return std::string("canonical form outside V_1"); });
            SMat b = sample_element(F, S, SampleKind::BS, 3, N);
            if (1 - 2 * std::min(0, min_val(b)) > std::max(M, 4)) continue;
            t.see(P.equal(St.canonical(P.act(b, c)), St.act(b, f)), [&] { return to_string(b); });
        }
        t.see(St.equal(P.ell1(), P.scale(F.neg(1), P.ell2())), [] { return std::string("l1 != -l2"); });
        return t.outcome();
    });
}

namespace detail {

// w0 v = sum of the given terms applied to v, checked through a comparison callback
template <class Space, class Eq>
Outcome identity_case(const Space& S, const typename Space::vec& lhs, const Terms& terms,
                      const typename Space::vec& v, Eq&& eq) {
    return eq(lhs, group_sum(S, terms, v));
}

}  // namespace detail

// Identity checks shared by the supersingular and identities suites, on the
// S- and S2-kernel vectors of the level-1 principal-series truncations.
inline void ps_identity_cases(const Config& cfg, Recorder& rec, const std::string& pre, bool all_identities) {
    using namespace detail;
    const GField& F = make_field(cfg.p, cfg.e);
    const int N = std::min(cfg.precision, 24);
    for (const auto& eta : all_tame_characters(F)) {
        PrincipalSeries P(F, eta, N, std::max(cfg.level, 6));  // the Borel terms reach level 5
        const std::string ep = pre + ename(F, eta) + ".";
        auto eq = [&](const PSVec& a, const PSVec& b) { return verdict(P.equal(a, b), ""); };
        auto ks = P.operator_kernel(SOp::S);
        rec.run(ep + "s_kernel_w0", "identity.s_kernel_w0", [&] {
            if (ks.kernel.empty()) return skipped("no S-kernel vectors");
            Tally t;
            for (std::size_t i = 0; i < ks.kernel.size(); ++i) {
                const auto& v = ks.kernel[i];
                t.see(identity_case(P, P.act(s_w0(F, N), v), s_kernel_w0_terms(F, N), v, eq).status == Status::pass,
                      [&] { return "kernel vector " + std::to_string(i); });
            }
            auto o = t.outcome();
            o.details = "kernel=" + std::to_string(ks.kernel.size()) + " " + o.details;
            return o;
        });
        if (!all_identities) continue;
        rec.run(ep + "s2_expansion", "identity.s2_expansion", [&] {
            if (ks.kernel.empty()) return skipped("no S-kernel vectors");
            Tally t;
            std::size_t nonzero = 0;
            for (std::size_t i = 0; i < ks.kernel.size(); ++i) {
                const auto& v = ks.kernel[i];
                PSVec s2 = s_operator(P, SOp::S2, v);
                if (!P.is_zero(s2)) ++nonzero;
                t.see(P.equal(s2, group_sum(P, s2_expansion_terms(F, ks.kernel_chi[i], N), v)),
                      [&] { return "kernel vector " + std::to_string(i); });
            }
            auto o = t.outcome();
            o.details = "kernel=" + std::to_string(ks.kernel.size()) + " with S2v!=0: " + std::to_string(nonzero) +
                        " " + o.details;
            return o;
        });
        auto k2 = P.operator_kernel(SOp::S2);
        rec.run(ep + "s2_kernel_w0", "identity.s2_kernel_w0", [&] {
            if (k2.kernel.empty()) return skipped("no S2-kernel vectors");
            Tally t;
            for (std::size_t i = 0; i < k2.kernel.size(); ++i) {
                const auto& v = k2.kernel[i];
                t.see(P.equal(P.act(s_w0(F, N), v), group_sum(P, s2_kernel_w0_terms(F, k2.kernel_chi[i], N), v)),
                      [&] { return "kernel vector " + std::to_string(i); });
            }
            auto o = t.outcome();
            o.details = "kernel=" + std::to_string(k2.kernel.size()) + " " + o.details;
            return o;
        });
        rec.run(ep + "v_from_w0", "identity.v_from_w0", [&] {
            Tally t;
            for (std::size_t i = 0; i < k2.kernel.size(); ++i) {
                const auto& v = k2.kernel[i];
                if (!P.is_zero(group_sum(P, u_w0_sum_terms(F, N), v))) continue;
                t.see(P.equal(v, group_sum(P, v_from_w0_terms(F, k2.kernel_chi[i], N), v)),
                      [&] { return "kernel vector " + std::to_string(i); });
            }
            if (t.checked == 0) return skipped("no S2-kernel vector with sum u w0 v = 0");
            return t.outcome();
        });
    }
}

inline void suite_supersingular(const Config& cfg, Recorder& rec) {
    using namespace detail;
    const GField& F = make_field(cfg.p, cfg.e);
    const int R = cfg.radius;
    const std::string pre = "ss.q" + std::to_string(F.q) + ".";
    for (const auto& W : all_weights(F)) {
        CInd ind(W, R + 1, cfg.precision);
        const int N = ind.precision();
        SupersingularQuotient Q(ind, R);
        const std::string wp = pre + wname(W.label) + ".";
        const CIndVec phi = ind.phi();
        rec.run(wp + "phi_nonzero", "cind.ssq.nonzero", [&] {
            auto r = Q.equal(phi, CIndVec{});
            return verdict(r.status == SsqStatus::not_equal,
                           std::string(ssq_name(r.status)) + " radius=" + std::to_string(r.radius));
        });
        rec.run(wp + "s_phi", "cind.ssq.s_kills", [&] {
            // trivial weight: S phi = -(phi + sum_m ubar([m] t) alpha0 phi) in the quotient
            CIndVec rhs;
            if (W.trivial()) {
                rhs = phi;
                for (gf_t m = 0; m < F.q; ++m) rhs = ind.add(rhs, ind.act(ubar_of(F, m, 1, N) * s_alpha0(F, N), phi));
                rhs = ind.scale(F.neg(1), rhs);
            }
            auto r = Q.equal(ind.s_op(phi), rhs);
            return verdict(r.status == SsqStatus::equal,
                           std::string(W.trivial() ? "S phi = -(phi + sum ubar alpha0 phi): " : "S phi = 0: ") +
                               ssq_name(r.status));
        });
        if (W.trivial()) continue;
        for (int n = -2; n <= 2; ++n)
            rec.run(wp + "nilpotent.n" + std::to_string(n), "cind.ssq.s_nilpotent", [&] {
                FixedVec f = ind.fixed_basis(n);
                for (int k = 0; k <= 3; ++k) {
                    auto r = Q.equal(ind.expand(f), CIndVec{});
                    if (r.status == SsqStatus::equal) return passed("S^" + std::to_string(k) + " f_n = 0");
                    if (r.status == SsqStatus::inconclusive)
                        return failed("inconclusive at k=" + std::to_string(k) + " radius=" + std::to_string(r.radius));
                    f = ind.fixed_hecke(f, HeckeOp::alpha0);
                }
                return failed("S^k f_n != 0 for k <= 3");
            });
        rec.run(wp + "s_kernel_w0", "identity.s_kernel_w0", [&] {
            CIndSpace sp(ind);
            auto r = Q.equal(ind.act(s_w0(F, N), phi), group_sum(sp, s_kernel_w0_terms(F, N), phi));
            return verdict(r.status == SsqStatus::equal, std::string("w0 phi: ") + ssq_name(r.status));
        });
    }
    ps_identity_cases(cfg, rec, pre + "ps.", false);
}

inline void suite_identities(const Config& cfg, Recorder& rec) {
    using namespace detail;
    const GField& F = make_field(cfg.p, cfg.e);
    const int R = cfg.radius;
    const std::string pre = "id.q" + std::to_string(F.q) + ".";
    for (const auto& W : all_weights(F)) {
        if (W.trivial()) continue;
        CInd ind(W, R + 1, cfg.precision);
        const int N = ind.precision();
        CIndSpace sp(ind);
        SupersingularQuotient Q(ind, R);
        const std::string wp = pre + wname(W.label) + ".quotient.";
        const CIndVec phi = ind.phi();
        auto in_quotient = [&](const CIndVec& a, const CIndVec& b) {
            auto r = Q.equal(a, b);
            return verdict(r.status == SsqStatus::equal, ssq_name(r.status));
        };
        rec.run(wp + "s_kernel_w0", "identity.s_kernel_w0", [&] {
            return in_quotient(ind.act(s_w0(F, N), phi), group_sum(sp, s_kernel_w0_terms(F, N), phi));
        });
        rec.run(wp + "s2_expansion", "identity.s2_expansion", [&] {
            return in_quotient(s_operator(sp, SOp::S2, phi), group_sum(sp, s2_expansion_terms(F, W.chi, N), phi));
        });
        const auto s2 = Q.equal(s_operator(sp, SOp::S2, phi), CIndVec{});
        rec.run(wp + "s2_kernel_w0", "identity.s2_kernel_w0", [&] {
            if (s2.status != SsqStatus::equal) return skipped(std::string("S2 phi is ") + ssq_name(s2.status));
            return in_quotient(ind.act(s_w0(F, N), phi), group_sum(sp, s2_kernel_w0_terms(F, W.chi, N), phi));
        });
        rec.run(wp + "v_from_w0", "identity.v_from_w0", [&] {
            if (s2.status != SsqStatus::equal) return skipped(std::string("S2 phi is ") + ssq_name(s2.status));
            auto z = Q.equal(group_sum(sp, u_w0_sum_terms(F, N), phi), CIndVec{});
            if (z.status != SsqStatus::equal) return skipped(std::string("sum u w0 phi is ") + ssq_name(z.status));
            return in_quotient(phi, group_sum(sp, v_from_w0_terms(F, W.chi, N), phi));
        });
    }
    ps_identity_cases(cfg, rec, pre + "ps.", true);
}

// ---------------------------------------------------------------- entry points

inline void validate(const Config& c) {
    if (c.p < 2 || !::modrep::detail::is_prime(c.p)) throw config_error("p must be a prime");
    if (c.e < 1) throw config_error("e must be positive");
    long q = 1;
    for (int i = 0; i < c.e; ++i) q *= c.p;
    if (q > 64) throw config_error("field size above 64 is not supported");
    if (c.precision < 16) throw config_error("precision must be at least 16");
    if (c.radius < 1) throw config_error("radius must be positive");
    if (c.level < 1) throw config_error("level must be positive");
}

inline Report run_suite(const std::string& name, const Config& cfg) {
    validate(cfg);
    static const std::map<std::string, std::function<void(const Config&, Recorder&)>> table = {
        {"carter-lusztig", suite_carter_lusztig}, {"cosets", suite_cosets},
        {"iwahori-hecke", suite_iwahori_hecke},   {"spherical", suite_spherical},
        {"principal-series", suite_principal_series}, {"supersingular", suite_supersingular},
        {"identities", suite_identities},
    };
    Report rep;
    rep.suite = name;
    rep.config = cfg;
    Recorder rec(rep.cases);
    if (name == "all") {
        for (const auto& s : suite_names())
            if (s != "all") table.at(s)(cfg, rec);
    } else {
        auto it = table.find(name);
        if (it == table.end()) throw config_error("unknown suite " + name);
        it->second(cfg, rec);
    }
    return rep;
}

// ---------------------------------------------------------------- output

enum class Format { text, json };

inline nlohmann::ordered_json to_json(const Report& r) {
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["config"] = {{"p", r.config.p},           {"e", r.config.e},         {"precision", r.config.precision},
                   {"radius", r.config.radius}, {"level", r.config.level}, {"seed", r.config.seed}};
    j["cases"] = nlohmann::ordered_json::array();
    for (const auto& c : r.cases)
        j["cases"].push_back({{"id", c.id}, {"anchor", c.anchor}, {"status", status_name(c.status)}, {"details", c.details}});
    const Summary s = r.summary();
    j["summary"] = {{"total", s.total}, {"pass", s.pass}, {"fail", s.fail}, {"skip", s.skip}};
    return j;
}

inline std::string emit(const Report& r, Format f) {
    if (f == Format::json) return to_json(r).dump(2) + "\n";
    std::ostringstream os;
    const Config& c = r.config;
    os << "suite " << r.suite << "  p=" << c.p << " e=" << c.e << " precision=" << c.precision << " radius=" << c.radius
       << " level=" << c.level << " seed=" << c.seed << "\n";
    for (const auto& x : r.cases) {
        std::string st = status_name(x.status);
        for (auto& ch : st) ch = char(std::toupper(static_cast<unsigned char>(ch)));
        os << st << "  " << x.id << "  [" << x.anchor << "]";
        if (!x.details.empty()) os << "  " << x.details;
        os << "\n";
    }
    const Summary s = r.summary();
    os << "total=" << s.total << " pass=" << s.pass << " fail=" << s.fail << " skip=" << s.skip << "\n";
    return os.str();
}

}  // namespace modrep::harness
