#pragma once

// Dense and sparse linear algebra over a finite field.

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "modrep/fields.hpp"

namespace modrep {

using Vec = std::vector<gf_t>;

struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<gf_t> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    gf_t& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    gf_t operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    bool is_zero() const {
        for (gf_t x : a)
            if (x) return false;
        return true;
    }
    Vec column(std::size_t j) const {
        Vec v(rows);
        for (std::size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
        return v;
    }
};

inline Matrix mat_mul(const GField& F, const Matrix& x, const Matrix& y) {
    if (x.cols != y.rows) throw std::invalid_argument("matrix shape mismatch");
    Matrix r(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            gf_t s = x(i, k);
            if (!s) continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                if (y(k, j)) r(i, j) = F.add(r(i, j), F.mul(s, y(k, j)));
        }
    return r;
}

inline Matrix mat_add(const GField& F, const Matrix& x, const Matrix& y) {
    Matrix r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = F.add(r.a[i], y.a[i]);
    return r;
}

inline Matrix mat_scale(const GField& F, gf_t c, const Matrix& x) {
    Matrix r = x;
    for (auto& v : r.a) v = F.mul(c, v);
    return r;
}

inline Vec mat_vec(const GField& F, const Matrix& m, const Vec& v) {
    Vec r(m.rows, 0);
    for (std::size_t i = 0; i < m.rows; ++i) {
        gf_t s = 0;
        for (std::size_t j = 0; j < m.cols; ++j)
            if (v[j] && m(i, j)) s = F.add(s, F.mul(m(i, j), v[j]));
        r[i] = s;
    }
    return r;
}

inline Vec vec_add(const GField& F, const Vec& x, const Vec& y) {
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = F.add(x[i], y[i]);
    return r;
}

inline Vec vec_sub(const GField& F, const Vec& x, const Vec& y) {
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = F.sub(x[i], y[i]);
    return r;
}

inline Vec vec_scale(const GField& F, gf_t c, const Vec& x) {
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = F.mul(c, x[i]);
    return r;
}

inline bool vec_is_zero(const Vec& v) {
    for (gf_t x : v)
        if (x) return false;
    return true;
}

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(const GField& F, Matrix& m) {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t s = r;
        while (s < m.rows && m(s, c) == 0) ++s;
        if (s == m.rows) continue;
        if (s != r)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(s, j), m(r, j));
        gf_t inv = F.inv(m(r, c));
        for (std::size_t j = c; j < m.cols; ++j) m(r, j) = F.mul(inv, m(r, j));
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || m(i, c) == 0) continue;
            gf_t f = m(i, c);
            for (std::size_t j = c; j < m.cols; ++j)
                if (m(r, j)) m(i, j) = F.sub(m(i, j), F.mul(f, m(r, j)));
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

inline std::size_t rank(const GField& F, Matrix m) { return rref(F, m).size(); }

// Basis of {x : m x = 0}, as columns.
inline std::vector<Vec> nullspace(const GField& F, Matrix m) {
    auto piv = rref(F, m);
    std::vector<bool> is_piv(m.cols, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < m.cols; ++f) {
        if (is_piv[f]) continue;
        Vec v(m.cols, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = F.neg(m(i, f));
        basis.push_back(std::move(v));
    }
    return basis;
}

// Some x with m x = b, if one exists.
inline std::optional<Vec> solve(const GField& F, const Matrix& m, const Vec& b) {
    Matrix aug(m.rows, m.cols + 1);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) aug(i, j) = m(i, j);
        aug(i, m.cols) = b[i];
    }
    auto piv = rref(F, aug);
    if (!piv.empty() && piv.back() == m.cols) return std::nullopt;
    Vec x(m.cols, 0);
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(i, m.cols);
    return x;
}

inline std::optional<Matrix> inverse(const GField& F, const Matrix& m) {
    if (m.rows != m.cols) return std::nullopt;
    const std::size_t n = m.rows;
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto piv = rref(F, aug);
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    Matrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
    return r;
}

// Incrementally maintained echelon basis of a subspace.
class EchelonBasis {
public:
    EchelonBasis(const GField& F, std::size_t dim) : F_(&F), dim_(dim) {}

    std::size_t size() const { return rows_.size(); }
    std::size_t dim() const { return dim_; }
    const std::vector<Vec>& vectors() const { return orig_; }

    Vec reduce(Vec v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            gf_t c = v[pivots_[i]];
            if (!c) continue;
            const Vec& r = rows_[i];
            for (std::size_t j = 0; j < dim_; ++j)
                if (r[j]) v[j] = F_->sub(v[j], F_->mul(c, r[j]));
        }
        return v;
    }
    bool contains(const Vec& v) const { return vec_is_zero(reduce(v)); }

    // true if v was independent and got added
    bool add(const Vec& v) {
        Vec w = reduce(v);
        std::size_t p = 0;
        while (p < dim_ && !w[p]) ++p;
        if (p == dim_) return false;
        gf_t inv = F_->inv(w[p]);
        for (auto& x : w) x = F_->mul(inv, x);
        rows_.push_back(std::move(w));
        pivots_.push_back(p);
        orig_.push_back(v);
        return true;
    }

private:
    const GField* F_;
    std::size_t dim_;
    std::vector<Vec> rows_;
    std::vector<std::size_t> pivots_;
    std::vector<Vec> orig_;
};

// Smallest subspace containing `seeds` and stable under every matrix in `gens`.
inline std::vector<Vec> spin_up(const GField& F, const std::vector<Matrix>& gens, const std::vector<Vec>& seeds,
                                std::size_t dim) {
    EchelonBasis B(F, dim);
    std::vector<Vec> queue;
    for (const auto& s : seeds)
        if (B.add(s)) queue.push_back(s);
    for (std::size_t k = 0; k < queue.size(); ++k) {
        for (const auto& g : gens) {
            Vec w = mat_vec(F, g, queue[k]);
            if (B.add(w)) queue.push_back(w);
        }
    }
    return B.vectors();
}

// Sparse vectors keyed by an ordered index, used for large truncated spaces.
using SparseVec = std::map<std::size_t, gf_t>;

// Incremental sparse elimination with witness tracking: every stored row
// records which inserted columns combine to it.
class SparseEliminator {
public:
    explicit SparseEliminator(const GField& F) : F_(&F) {}

    std::size_t size() const { return rows_.size(); }

    // reduce v; returns residual and the combination (over inserted ids) subtracted
    std::pair<SparseVec, SparseVec> reduce(SparseVec v) const {
        // each row's pivot is its smallest key, so one ascending sweep suffices
        SparseVec combo;
        auto it = v.begin();
        while (it != v.end()) {
            auto r = by_pivot_.find(it->first);
            if (r == by_pivot_.end()) {
                ++it;
                continue;
            }
            const std::size_t key = it->first;
            gf_t c = it->second;
            const Row& row = rows_[r->second];
            axpy(v, F_->neg(c), row.v);
            axpy(combo, c, row.w);
            it = v.upper_bound(key);
        }
        return {v, combo};
    }

    // insert a generator with id; returns false if dependent
    bool add(std::size_t id, const SparseVec& v) {
        auto [res, combo] = reduce(v);
        SparseVec w;
        w[id] = 1;
        for (auto& [k, c] : combo) axpy_one(w, k, F_->neg(c));
        if (res.empty()) return false;
        auto piv = res.begin();
        gf_t inv = F_->inv(piv->second);
        for (auto& [k, c] : res) c = F_->mul(inv, c);
        for (auto& [k, c] : w) c = F_->mul(inv, c);
        by_pivot_[piv->first] = rows_.size();
        rows_.push_back({std::move(res), std::move(w)});
        return true;
    }

    // combination of inserted ids equal to target, if in the span
    std::optional<SparseVec> express(const SparseVec& target) const {
        auto [res, combo] = reduce(target);
        if (!res.empty()) return std::nullopt;
        return combo;
    }

private:
    struct Row {
        SparseVec v;
        SparseVec w;
    };
    const GField* F_;
    std::vector<Row> rows_;
    std::map<std::size_t, std::size_t> by_pivot_;

    void axpy_one(SparseVec& x, std::size_t k, gf_t c) const {
        if (!c) return;
        auto it = x.find(k);
        if (it == x.end()) {
            x.emplace(k, c);
            return;
        }
        it->second = F_->add(it->second, c);
        if (!it->second) x.erase(it);
    }
    void axpy(SparseVec& x, gf_t c, const SparseVec& y) const {
        if (!c) return;
        for (auto& [k, v] : y) axpy_one(x, k, F_->mul(c, v));
    }
};

}  // namespace modrep
