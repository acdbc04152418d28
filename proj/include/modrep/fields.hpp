#pragma once

// Finite fields F_{p^e} and truncated Laurent series over them.

#include <algorithm>
#include <climits>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace modrep {

using gf_t = std::uint32_t;

inline constexpr int kDefaultPrecision = 64;

struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct field_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// dense polynomials over F_p, index = degree
using ipoly = std::vector<int>;

inline void ptrim(ipoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int inv_mod_p(int a, int p) {
    int r = 1, b = a % p, k = p - 2;
    while (k > 0) {
        if (k & 1) r = int((long long)r * b % p);
        b = int((long long)b * b % p);
        k >>= 1;
    }
    return r;
}

inline ipoly pmod(ipoly a, const ipoly& m, int p) {
    ptrim(a);
    const int dm = int(m.size()) - 1;
    const int lead_inv = inv_mod_p(m.back(), p);
    while (int(a.size()) - 1 >= dm && !a.empty()) {
        const int shift = int(a.size()) - 1 - dm;
        const int f = int((long long)a.back() * lead_inv % p);
        for (int i = 0; i <= dm; ++i)
            a[shift + i] = ((a[shift + i] - f * m[i]) % p + p) % p;
        ptrim(a);
    }
    return a;
}

inline bool irreducible_by_trial_division(const ipoly& f, int p) {
    const int n = int(f.size()) - 1;
    for (int d = 1; d <= n / 2; ++d) {
        long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long code = 0; code < count; ++code) {
            ipoly g(d + 1, 0);
            long c = code;
            for (int i = 0; i < d; ++i) {
                g[i] = int(c % p);
                c /= p;
            }
            g[d] = 1;
            if (pmod(f, g, p).empty()) return false;
        }
    }
    return true;
}

}  // namespace detail

class GField {
public:
    int p = 0;
    int e = 0;
    gf_t q = 0;
    // monic modulus, coefficients c_0..c_e (c_e = 1)
    std::vector<int> modulus;
    gf_t generator = 1;

    gf_t add(gf_t a, gf_t b) const {
        if (e == 1) {
            gf_t s = a + b;
            return s >= gf_t(p) ? s - gf_t(p) : s;
        }
        if (!add_table_.empty()) return add_table_[std::size_t(a) * q + b];
        return add_digits(a, b);
    }
    gf_t neg(gf_t a) const { return neg_table_[a]; }
    gf_t sub(gf_t a, gf_t b) const { return add(a, neg_table_[b]); }
    gf_t mul(gf_t a, gf_t b) const {
        if (a == 0 || b == 0) return 0;
        gf_t s = log_[a] + log_[b];
        if (s >= q - 1) s -= q - 1;
        return exp_[s];
    }
    gf_t inv(gf_t a) const {
        if (a == 0) throw std::domain_error("zero has no inverse");
        return exp_[(q - 1 - log_[a]) % (q - 1)];
    }
    gf_t div(gf_t a, gf_t b) const { return mul(a, inv(b)); }
    gf_t pow(gf_t a, long long k) const {
        if (a == 0) return k == 0 ? 1 : 0;
        long long m = (long long)(q - 1);
        long long r = ((k % m) + m) % m;
        return exp_[std::size_t((std::uint64_t(log_[a]) * std::uint64_t(r)) % std::uint64_t(m))];
    }
    gf_t frobenius(gf_t a) const { return pow(a, p); }
    gf_t from_int(long long n) const {
        long long r = ((n % p) + p) % p;
        return gf_t(r);
    }
    // discrete log base `generator`; a must be nonzero
    gf_t log(gf_t a) const {
        if (a == 0) throw std::domain_error("log of zero");
        return log_[a];
    }
    gf_t exp(long long k) const {
        long long m = (long long)(q - 1);
        return exp_[std::size_t(((k % m) + m) % m)];
    }
    std::vector<int> digits(gf_t a) const {
        std::vector<int> d(std::size_t(e), 0);
        for (int i = 0; i < e; ++i) {
            d[std::size_t(i)] = int(a % gf_t(p));
            a /= gf_t(p);
        }
        return d;
    }
    gf_t from_digits(const std::vector<int>& d) const {
        gf_t a = 0;
        for (int i = e - 1; i >= 0; --i)
            a = a * gf_t(p) + gf_t(((d[std::size_t(i)] % p) + p) % p);
        return a;
    }
    // additive basis 1, x, ..., x^{e-1} over the prime field
    std::vector<gf_t> prime_basis() const {
        std::vector<gf_t> b;
        gf_t v = 1;
        for (int i = 0; i < e; ++i) {
            b.push_back(v);
            v *= gf_t(p);
        }
        return b;
    }
    bool in_prime_field(gf_t a) const { return a < gf_t(p); }
    std::string to_string(gf_t a) const {
        if (e == 1) return std::to_string(a);
        std::string s = "(";
        auto d = digits(a);
        for (int i = 0; i < e; ++i) {
            if (i) s += ",";
            s += std::to_string(d[std::size_t(i)]);
        }
        return s + ")";
    }
    std::string modulus_string() const {
        std::string s;
        for (int i = e; i >= 0; --i) {
            int c = modulus[std::size_t(i)];
            if (c == 0) continue;
            if (!s.empty()) s += " + ";
            if (i == 0 || c != 1) s += std::to_string(c);
            if (i > 0) s += (i == 1) ? "x" : "x^" + std::to_string(i);
        }
        return s;
    }

    static std::unique_ptr<GField> build(int p, int e);

private:
    std::vector<gf_t> add_table_, neg_table_, log_, exp_;

    gf_t add_digits(gf_t a, gf_t b) const {
        gf_t r = 0, mult = 1;
        for (int i = 0; i < e; ++i) {
            gf_t s = (a % gf_t(p) + b % gf_t(p)) % gf_t(p);
            r += s * mult;
            mult *= gf_t(p);
            a /= gf_t(p);
            b /= gf_t(p);
        }
        return r;
    }
};

inline std::unique_ptr<GField> GField::build(int p, int e) {
    if (!detail::is_prime(p)) throw field_error("characteristic " + std::to_string(p) + " is not prime");
    if (e < 1 || e > 4) throw field_error("extension degree must lie in [1,4]");
    long long q = 1;
    for (int i = 0; i < e; ++i) q *= p;
    if (q > (1LL << 20)) throw field_error("field order exceeds the supported size 2^20");

    auto F = std::make_unique<GField>();
    F->p = p;
    F->e = e;
    F->q = gf_t(q);

    // first monic irreducible, coefficients read from x^{e-1} down to x^0
    for (long long code = 0; code < q; ++code) {
        detail::ipoly f(std::size_t(e + 1), 0);
        long long c = code;
        for (int i = 0; i < e; ++i) {
            f[std::size_t(i)] = int(c % p);
            c /= p;
        }
        f[std::size_t(e)] = 1;
        if (detail::irreducible_by_trial_division(f, p)) {
            F->modulus = f;
            break;
        }
    }

    auto mulpoly = [&](gf_t a, gf_t b) {
        auto da = F->digits(a), db = F->digits(b);
        detail::ipoly r(std::size_t(2 * e), 0);
        for (int i = 0; i < e; ++i)
            for (int j = 0; j < e; ++j)
                r[std::size_t(i + j)] = (r[std::size_t(i + j)] + da[std::size_t(i)] * db[std::size_t(j)]) % p;
        r = detail::pmod(r, F->modulus, p);
        r.resize(std::size_t(e), 0);
        return F->from_digits(r);
    };

    const gf_t Q = F->q;
    F->neg_table_.resize(Q);
    for (gf_t a = 0; a < Q; ++a) {
        auto d = F->digits(a);
        for (auto& x : d) x = (p - x) % p;
        F->neg_table_[a] = F->from_digits(d);
    }
    if (e > 1 && Q <= 1024) {
        F->add_table_.resize(std::size_t(Q) * Q);
        for (gf_t a = 0; a < Q; ++a)
            for (gf_t b = 0; b < Q; ++b) F->add_table_[std::size_t(a) * Q + b] = F->add_digits(a, b);
    }

    F->exp_.assign(Q > 1 ? Q - 1 : 1, 1);
    F->log_.assign(Q, 0);
    if (Q == 2) {
        F->generator = 1;
    } else {
        for (gf_t g = 2; g < Q; ++g) {
            gf_t x = g;
            gf_t order = 1;
            while (x != 1) {
                x = mulpoly(x, g);
                ++order;
            }
            if (order == Q - 1) {
                F->generator = g;
                break;
            }
        }
    }
    gf_t x = 1;
    for (gf_t k = 0; k + 1 < Q; ++k) {
        F->exp_[k] = x;
        F->log_[x] = k;
        x = mulpoly(x, F->generator);
    }
    return F;
}

// Deterministic and cached: equal (p,e) give the same object.
inline const GField& make_field(int p, int e) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<GField>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, e);
    auto it = registry.find(key);
    if (it == registry.end()) it = registry.emplace(key, GField::build(p, e)).first;
    return *it->second;
}

class GFElem {
public:
    GFElem() = default;
    GFElem(const GField& F, gf_t v) : f_(&F), v_(v) {}

    static GFElem from_int(const GField& F, long long n) { return GFElem(F, F.from_int(n)); }

    const GField& field() const { return *f_; }
    gf_t raw() const { return v_; }
    bool is_zero() const { return v_ == 0; }
    std::vector<int> coefficients() const { return f_->digits(v_); }

    GFElem operator+(const GFElem& o) const { return GFElem(*f_, f_->add(v_, o.v_)); }
    GFElem operator-(const GFElem& o) const { return GFElem(*f_, f_->sub(v_, o.v_)); }
    GFElem operator-() const { return GFElem(*f_, f_->neg(v_)); }
    GFElem operator*(const GFElem& o) const { return GFElem(*f_, f_->mul(v_, o.v_)); }
    GFElem operator/(const GFElem& o) const { return GFElem(*f_, f_->div(v_, o.v_)); }
    GFElem inv() const { return GFElem(*f_, f_->inv(v_)); }
    GFElem pow(long long k) const { return GFElem(*f_, f_->pow(v_, k)); }
    bool operator==(const GFElem& o) const { return f_ == o.f_ && v_ == o.v_; }
    bool operator!=(const GFElem& o) const { return !(*this == o); }

    std::string to_string() const { return f_->to_string(v_); }

private:
    const GField* f_ = nullptr;
    gf_t v_ = 0;
};

// Element of F_q((t)) known modulo t^prec. Stored coefficients start at t^val,
// the first is nonzero and trailing zeros are dropped. No coefficients means
// the element is zero to the known precision.
class LSeries {
public:
    LSeries() = default;
    LSeries(const GField& F, int val, std::vector<gf_t> coeffs, int prec)
        : f_(&F), val_(val), prec_(prec), c_(std::move(coeffs)) {
        normalize();
    }

    static LSeries zero(const GField& F, int prec = kDefaultPrecision) { return LSeries(F, prec, {}, prec); }
    static LSeries constant(const GField& F, gf_t a, int prec = kDefaultPrecision) { return LSeries(F, 0, {a}, prec); }
    static LSeries one(const GField& F, int prec = kDefaultPrecision) { return constant(F, 1, prec); }
    // a * t^k
    static LSeries monomial(const GField& F, gf_t a, int k, int prec = kDefaultPrecision) {
        return LSeries(F, k, {a}, prec);
    }
    static LSeries t_power(const GField& F, int k, int prec = kDefaultPrecision) { return monomial(F, 1, k, prec); }

    const GField& field() const { return *f_; }
    const GField* field_ptr() const { return f_; }
    bool is_zero() const { return c_.empty(); }
    // for a zero element this is the precision, a lower bound for the true valuation
    int val() const { return c_.empty() ? prec_ : val_; }
    int prec() const { return prec_; }
    const std::vector<gf_t>& coeffs() const { return c_; }
    gf_t leading() const {
        if (c_.empty()) throw precision_error("leading coefficient of an element that is zero to precision");
        return c_.front();
    }
    // coefficient of t^k
    gf_t coeff(int k) const {
        if (k >= prec_) throw precision_error("coefficient of t^" + std::to_string(k) + " is beyond the known precision");
        if (c_.empty() || k < val_) return 0;
        std::size_t i = std::size_t(k - val_);
        return i < c_.size() ? c_[i] : 0;
    }
    bool is_unit() const { return !c_.empty() && val_ == 0; }
    bool is_integral() const { return val() >= 0; }
    // highest exponent with a stored nonzero coefficient
    int top_degree() const { return c_.empty() ? INT_MIN : val_ + int(c_.size()) - 1; }

    LSeries operator-() const {
        std::vector<gf_t> c(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) c[i] = f_->neg(c_[i]);
        return LSeries(*f_, val_, std::move(c), prec_);
    }
    LSeries operator+(const LSeries& o) const { return add_impl(o, false); }
    LSeries operator-(const LSeries& o) const { return add_impl(o, true); }
    LSeries operator*(const LSeries& o) const {
        if (c_.empty() || o.c_.empty()) {
            int p;
            if (c_.empty() && o.c_.empty()) p = prec_ + o.prec_;
            else if (c_.empty()) p = prec_ + o.val_;
            else p = val_ + o.prec_;
            return LSeries(*f_, p, {}, p);
        }
        const int v = val_ + o.val_;
        const int p = std::min(val_ + o.prec_, o.val_ + prec_);
        const int len = std::min<int>(int(c_.size() + o.c_.size()) - 1, p - v);
        std::vector<gf_t> c(std::size_t(std::max(len, 0)), 0);
        for (std::size_t i = 0; i < c_.size() && int(i) < len; ++i) {
            if (c_[i] == 0) continue;
            for (std::size_t j = 0; j < o.c_.size() && int(i + j) < len; ++j)
                c[i + j] = f_->add(c[i + j], f_->mul(c_[i], o.c_[j]));
        }
        return LSeries(*f_, v, std::move(c), p);
    }
    LSeries scaled(gf_t a) const {
        std::vector<gf_t> c(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) c[i] = f_->mul(a, c_[i]);
        return LSeries(*f_, val_, std::move(c), prec_);
    }
    // multiply by t^k
    LSeries shifted(int k) const {
        LSeries r = *this;
        r.val_ += k;
        r.prec_ += k;
        return r;
    }
    // forget everything from t^n on
    LSeries truncated(int n) const {
        if (n >= prec_) return *this;
        std::vector<gf_t> c;
        if (!c_.empty() && n > val_) c.assign(c_.begin(), c_.begin() + std::min<std::ptrdiff_t>(std::ptrdiff_t(c_.size()), n - val_));
        return LSeries(*f_, val_, std::move(c), n);
    }
    // the polynomial part sum_{k<n} a_k t^k, regarded as exact to precision `prec`
    LSeries head(int n, int prec) const {
        if (n > prec_) throw precision_error("head beyond known precision");
        std::vector<gf_t> c;
        if (!c_.empty() && n > val_) c.assign(c_.begin(), c_.begin() + std::min<std::ptrdiff_t>(std::ptrdiff_t(c_.size()), n - val_));
        return LSeries(*f_, val_, std::move(c), prec);
    }
    // x / t^val(x)
    LSeries unit_part() const {
        if (c_.empty()) throw precision_error("unit part of an element that is zero to precision");
        return shifted(-val_);
    }
    // equal to common precision
    bool operator==(const LSeries& o) const { return (*this - o).is_zero(); }
    bool operator!=(const LSeries& o) const { return !(*this == o); }

    // exact identity of representation, including precision
    bool identical(const LSeries& o) const {
        return f_ == o.f_ && prec_ == o.prec_ && c_ == o.c_ && (c_.empty() || val_ == o.val_);
    }

    std::string to_string() const {
        std::string body;
        if (c_.empty()) return "O(t^" + std::to_string(prec_) + ")";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            if (!body.empty()) body += " + ";
            body += f_->to_string(c_[i]);
            if (i == 1) body += "*t";
            else if (i > 1) body += "*t^" + std::to_string(i);
        }
        return "t^" + std::to_string(val_) + "*(" + body + ") + O(t^" + std::to_string(prec_) + ")";
    }

private:
    const GField* f_ = nullptr;
    int val_ = 0;
    int prec_ = kDefaultPrecision;
    std::vector<gf_t> c_;

    void normalize() {
        if (!c_.empty() && val_ + int(c_.size()) > prec_) c_.resize(std::size_t(std::max(prec_ - val_, 0)));
        std::size_t lead = 0;
        while (lead < c_.size() && c_[lead] == 0) ++lead;
        if (lead == c_.size()) {
            c_.clear();
            val_ = prec_;
            return;
        }
        if (lead) {
            c_.erase(c_.begin(), c_.begin() + std::ptrdiff_t(lead));
            val_ += int(lead);
        }
        while (c_.back() == 0) c_.pop_back();
    }

    LSeries add_impl(const LSeries& o, bool negate) const {
        const int p = std::min(prec_, o.prec_);
        if (o.c_.empty()) return truncated(p);
        if (c_.empty()) return negate ? (-o).truncated(p) : o.truncated(p);
        const int lo = std::min(val_, o.val_);
        const int hi = std::min(p, std::max(val_ + int(c_.size()), o.val_ + int(o.c_.size())));
        std::vector<gf_t> c(std::size_t(std::max(hi - lo, 0)), 0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            int k = val_ + int(i) - lo;
            if (k < int(c.size())) c[std::size_t(k)] = c_[i];
        }
        for (std::size_t i = 0; i < o.c_.size(); ++i) {
            int k = o.val_ + int(i) - lo;
            if (k >= int(c.size())) continue;
            gf_t b = negate ? f_->neg(o.c_[i]) : o.c_[i];
            c[std::size_t(k)] = f_->add(c[std::size_t(k)], b);
        }
        return LSeries(*f_, lo, std::move(c), p);
    }

    friend LSeries ls_inv_to(const LSeries& x, int target_prec);
};

// Inverse known modulo t^min(prec(x) - 2 val(x), target_prec).
inline LSeries ls_inv_to(const LSeries& x, int target_prec) {
    if (x.c_.empty()) {
        if (x.prec_ >= kDefaultPrecision) throw std::domain_error("zero has no inverse");
        throw precision_error("zero has no inverse to the known precision");
    }
    const GField& F = *x.f_;
    const int v = x.val_;
    const int rel = x.prec_ - v;
    if (rel < 1) throw precision_error("precision exhausted");
    const int out_prec = std::min(x.prec_ - 2 * v, target_prec);
    const int n = out_prec + v;  // number of coefficients of the unit inverse
    if (n <= 0) return LSeries(F, out_prec, {}, out_prec);
    std::vector<gf_t> b(std::size_t(n), 0);
    const gf_t a0inv = F.inv(x.c_[0]);
    b[0] = a0inv;
    for (int k = 1; k < n; ++k) {
        gf_t s = 0;
        const int lim = std::min<int>(k, int(x.c_.size()) - 1);
        for (int i = 1; i <= lim; ++i)
            if (x.c_[std::size_t(i)]) s = F.add(s, F.mul(x.c_[std::size_t(i)], b[std::size_t(k - i)]));
        b[std::size_t(k)] = F.neg(F.mul(a0inv, s));
    }
    return LSeries(F, -v, std::move(b), out_prec);
}

inline LSeries ls_inv(const LSeries& x) { return ls_inv_to(x, INT_MAX); }

inline LSeries operator/(const LSeries& a, const LSeries& b) { return a * ls_inv(b); }

// A(lambda) = sum_i [lambda_i] t^i; in equal characteristic the lift is the constant series.
inline LSeries lift_A(const GField& F, const std::vector<gf_t>& lambda, int prec = kDefaultPrecision) {
    return LSeries(F, 0, lambda, prec);
}

}  // namespace modrep
