#pragma once

#include <numeric>
#include <utility>
#include <vector>

#include "perron/field.hpp"

namespace perron {

template <class T>
class SquareMatrix {
public:
    SquareMatrix(int n, const T& fill) : n_(n), a_(static_cast<std::size_t>(n) * n, fill) {
        if (n < 1) throw InputError("matrix dimension must be >= 1");
    }

    static SquareMatrix from_entries(int n, std::vector<T> entries) {
        if (n < 1) throw InputError("matrix dimension must be >= 1");
        if (entries.size() != static_cast<std::size_t>(n) * n)
            throw InputError("entry count does not match dimension");
        SquareMatrix m;
        m.n_ = n;
        m.a_ = std::move(entries);
        return m;
    }

    int dim() const { return n_; }

    const T& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    T& at(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    void swap_rows(int i, int k) {
        for (int j = 0; j < n_; ++j) std::swap(at(i, j), at(k, j));
    }
    void swap_cols(int j, int k) {
        for (int i = 0; i < n_; ++i) std::swap(at(i, j), at(i, k));
    }

    const std::vector<T>& entries() const { return a_; }

private:
    SquareMatrix() : n_(0) {}

    int n_;
    std::vector<T> a_;
};

template <class F>
using ExactMatrix = SquareMatrix<typename F::Exact>;
template <class F>
using ValMatrix = SquareMatrix<typename F::Elem>;
template <class F>
using ValVector = std::vector<typename F::Elem>;

template <class F>
ExactMatrix<F> exact_identity(const F& field, int n) {
    SquareMatrix<typename F::Exact> m(n, field.exact_from_int(0));
    for (int i = 0; i < n; ++i) m.at(i, i) = field.exact_from_int(1);
    return m;
}

template <class F>
ValMatrix<F> embed_matrix(const F& field, const ExactMatrix<F>& a) {
    std::vector<typename F::Elem> e;
    e.reserve(static_cast<std::size_t>(a.dim()) * a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) e.push_back(field.embed(a.at(i, j)));
    return ValMatrix<F>::from_entries(a.dim(), std::move(e));
}

// Works for any scalar with + and * (exact scalars and valued elements alike).
template <class T>
SquareMatrix<T> mat_mul(const SquareMatrix<T>& a, const SquareMatrix<T>& b) {
    if (a.dim() != b.dim()) throw InputError("mat_mul: dimension mismatch");
    const int n = a.dim();
    std::vector<T> out;
    out.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            T acc = a.at(i, 0) * b.at(0, j);
            for (int k = 1; k < n; ++k) acc = acc + a.at(i, k) * b.at(k, j);
            out.push_back(std::move(acc));
        }
    }
    return SquareMatrix<T>::from_entries(n, std::move(out));
}

template <class T>
std::vector<T> mat_vec(const SquareMatrix<T>& a, const std::vector<T>& v) {
    if (static_cast<int>(v.size()) != a.dim()) throw InputError("mat_vec: dimension mismatch");
    std::vector<T> out;
    out.reserve(v.size());
    for (int i = 0; i < a.dim(); ++i) {
        T acc = a.at(i, 0) * v[0];
        for (int k = 1; k < a.dim(); ++k) acc = acc + a.at(i, k) * v[k];
        out.push_back(std::move(acc));
    }
    return out;
}

template <class T>
SquareMatrix<T> scale(const SquareMatrix<T>& a, const T& c) {
    std::vector<T> out;
    out.reserve(static_cast<std::size_t>(a.dim()) * a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) out.push_back(a.at(i, j) * c);
    return SquareMatrix<T>::from_entries(a.dim(), std::move(out));
}

// ||M|| as a valuation: min entry ord. Lower-bound-only when the minimum is
// set by a zero-at-precision entry.
template <class Ops>
Ord mat_norm(const SquareMatrix<Element<Ops>>& m) {
    bool have_exact = false, have_zero = false;
    long long exact_min = 0, zero_min = 0;
    for (int i = 0; i < m.dim(); ++i) {
        for (int j = 0; j < m.dim(); ++j) {
            const auto& e = m.at(i, j);
            if (e.is_zero()) {
                zero_min = have_zero ? std::min(zero_min, e.zero_bound()) : e.zero_bound();
                have_zero = true;
            } else {
                exact_min = have_exact ? std::min(exact_min, e.val()) : e.val();
                have_exact = true;
            }
        }
    }
    if (!have_exact) return Ord::at_least(Valuation(zero_min));
    if (have_zero && zero_min < exact_min) return Ord::at_least(Valuation(zero_min));
    return Ord::exactly(Valuation(exact_min));
}

template <class F>
struct RescaleInfo {
    typename F::Exact alpha;
    Valuation ord_alpha;
    Valuation entry_radius; // min ord(b_ij - alpha); > ord_alpha guaranteed
};

// Zero-free-disc reduction: entries of B in D(alpha, r) with r < |alpha| map to
// entries of alpha^-1 B in D(1, r/|alpha|). Eigenvalues scale by alpha^-1,
// eigenvectors and the limit projection are unchanged.
template <class F>
std::pair<ExactMatrix<F>, RescaleInfo<F>>
rescale_to_unit_disc(const ExactMatrix<F>& b, const typename F::Exact& alpha, const F& field) {
    if (field.exact_is_zero(alpha))
        throw InputError("rescale_to_unit_disc: alpha must be nonzero");
    const Valuation va = field.ord_exact(alpha);
    Valuation radius = Valuation::infinity();
    for (int i = 0; i < b.dim(); ++i)
        for (int j = 0; j < b.dim(); ++j)
            radius = min(radius, field.ord_exact(b.at(i, j) - alpha));
    if (!(radius > va))
        throw InputError("rescale_to_unit_disc: entries do not lie in a zero-free disc about alpha");
    std::vector<typename F::Exact> out;
    out.reserve(static_cast<std::size_t>(b.dim()) * b.dim());
    for (int i = 0; i < b.dim(); ++i)
        for (int j = 0; j < b.dim(); ++j) out.push_back(b.at(i, j) / alpha);
    return {ExactMatrix<F>::from_entries(b.dim(), std::move(out)),
            RescaleInfo<F>{alpha, va, radius}};
}

// Exact determinant by Gaussian elimination over the exact subfield.
template <class F>
typename F::Exact det_exact(ExactMatrix<F> a, const F& field) {
    const int n = a.dim();
    typename F::Exact det = field.exact_from_int(1);
    bool negate = false;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int i = col; i < n; ++i) {
            if (!field.exact_is_zero(a.at(i, col))) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) return field.exact_from_int(0);
        if (pivot != col) {
            a.swap_rows(pivot, col);
            negate = !negate;
        }
        det = det * a.at(col, col);
        for (int i = col + 1; i < n; ++i) {
            if (field.exact_is_zero(a.at(i, col))) continue;
            const typename F::Exact f = a.at(i, col) / a.at(col, col);
            for (int j = col; j < n; ++j)
                a.at(i, j) = a.at(i, j) - f * a.at(col, j);
        }
    }
    if (negate) det = field.exact_from_int(0) - det;
    return det;
}

template <class Ops>
typename Ops::Unit unit_one(const FieldContext& ctx) {
    if constexpr (Ops::kind == FieldKind::laurent)
        return FpPoly::constant(ctx.residue_char(), 1);
    else
        return typename Ops::Unit(1);
}

// Kernel vector of a matrix that is rank-deficient at working precision.
// Elimination uses full pivoting on the entry of minimal ord; the result is
// normalized so the first max-abs coordinate is exactly 1.
template <class Ops>
std::vector<Element<Ops>> solve_kernel(SquareMatrix<Element<Ops>> m) {
    using Elem = Element<Ops>;
    const int n = m.dim();
    const FieldContext ctx = m.at(0, 0).context();
    std::vector<int> col_of(static_cast<std::size_t>(n));
    std::iota(col_of.begin(), col_of.end(), 0);

    int rank = 0;
    for (int step = 0; step < n; ++step) {
        int bi = -1, bj = -1;
        long long best = 0;
        for (int i = step; i < n; ++i) {
            for (int j = step; j < n; ++j) {
                const auto& e = m.at(i, j);
                if (e.is_zero()) continue;
                if (bi < 0 || e.val() < best) {
                    bi = i;
                    bj = j;
                    best = e.val();
                }
            }
        }
        if (bi < 0) {
            // No decidable pivot left; entries known only as O(pi^b).
            for (int i = step; i < n; ++i)
                for (int j = step; j < n; ++j)
                    if (m.at(i, j).zero_bound() <= 0)
                        throw PrecisionError("solve_kernel: precision exhausted before a pivot decision");
            break;
        }
        if (bi != step) m.swap_rows(bi, step);
        if (bj != step) {
            m.swap_cols(bj, step);
            std::swap(col_of[static_cast<std::size_t>(bj)], col_of[static_cast<std::size_t>(step)]);
        }
        const Elem pivot_inv = m.at(step, step).inv();
        for (int i = step + 1; i < n; ++i) {
            const Elem factor = m.at(i, step) * pivot_inv;
            for (int j = step; j < n; ++j)
                m.at(i, j) = m.at(i, j) - factor * m.at(step, j);
        }
        ++rank;
    }
    if (rank == n)
        throw CertificationError("solve_kernel: matrix invertible at working precision");

    // One free variable set to 1: among free positions pick the smallest
    // original column index, for deterministic output.
    int free_pos = rank;
    for (int pos = rank + 1; pos < n; ++pos)
        if (col_of[static_cast<std::size_t>(pos)] < col_of[static_cast<std::size_t>(free_pos)])
            free_pos = pos;

    const Elem one = Elem::make(ctx, 0, unit_one<Ops>(ctx), ctx.working_precision());
    std::vector<Elem> y(static_cast<std::size_t>(n), Elem::zero_at(ctx, ctx.working_precision()));
    y[static_cast<std::size_t>(free_pos)] = one;
    for (int i = rank - 1; i >= 0; --i) {
        Elem acc = m.at(i, i + 1) * y[static_cast<std::size_t>(i + 1)];
        for (int j = i + 2; j < n; ++j) acc = acc + m.at(i, j) * y[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = (-acc) / m.at(i, i);
    }

    std::vector<Elem> x(static_cast<std::size_t>(n), Elem::zero_at(ctx, ctx.working_precision()));
    for (int pos = 0; pos < n; ++pos)
        x[static_cast<std::size_t>(col_of[static_cast<std::size_t>(pos)])] = y[static_cast<std::size_t>(pos)];

    // Normalize: divide by the first coordinate of minimal ord and pin it to 1.
    int idx = -1;
    long long vmin = 0;
    for (int i = 0; i < n; ++i) {
        if (x[static_cast<std::size_t>(i)].is_zero()) continue;
        if (idx < 0 || x[static_cast<std::size_t>(i)].val() < vmin) {
            idx = i;
            vmin = x[static_cast<std::size_t>(i)].val();
        }
    }
    const Elem lead = x[static_cast<std::size_t>(idx)];
    for (auto& xi : x) xi = xi / lead;
    x[static_cast<std::size_t>(idx)] = one.truncated_rel(lead.rel_precision());
    return x;
}

} // namespace perron
