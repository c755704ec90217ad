#pragma once

// Test-only oracles, kept independent of the library's production paths:
// permutation-expansion determinants and characteristic polynomials (dims
// <= 4), exact rational null spaces, and a p-adic power iteration for the
// dominant eigenvalue.

#include <vector>

#include "perron/matrix.hpp"

namespace oracles {

using perron::ExactMatrix;
using perron::SquareMatrix;

// Determinant by summing sgn(sigma) * prod a_{i, sigma(i)} over all
// permutations.
template <class F>
typename F::Exact det_permutation_expansion(const ExactMatrix<F>& a, const F& field) {
    const int n = a.dim();
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    typename F::Exact total = field.exact_from_int(0);
    // Heap-style recursion with explicit parity.
    struct Rec {
        const ExactMatrix<F>& a;
        const F& field;
        std::vector<int>& perm;
        typename F::Exact& total;
        void go(int k, int parity) {
            const int n = a.dim();
            if (k == n) {
                typename F::Exact term = field.exact_from_int(parity);
                for (int i = 0; i < n; ++i) term *= a.at(i, perm[static_cast<std::size_t>(i)]);
                total += term;
                return;
            }
            for (int i = k; i < n; ++i) {
                std::swap(perm[static_cast<std::size_t>(k)], perm[static_cast<std::size_t>(i)]);
                go(k + 1, i == k ? parity : -parity);
                std::swap(perm[static_cast<std::size_t>(k)], perm[static_cast<std::size_t>(i)]);
            }
        }
    } rec{a, field, perm, total};
    rec.go(0, 1);
    return total;
}

// Characteristic polynomial coefficients via sums of principal minors:
// c_j = (-1)^(n-j) * (sum of all (n-j) x (n-j) principal minors), each minor
// expanded over permutations. Intended for n <= 4.
template <class F>
std::vector<typename F::Exact> charpoly_bruteforce(const ExactMatrix<F>& a, const F& field) {
    const int n = a.dim();
    std::vector<typename F::Exact> c(static_cast<std::size_t>(n), field.exact_from_int(0));
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> keep;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) keep.push_back(i);
        const int k = static_cast<int>(keep.size());
        if (k == 0 || k == n) continue; // k = n handled below; k = 0 is the leading 1
        std::vector<typename F::Exact> sub;
        sub.reserve(static_cast<std::size_t>(k) * k);
        for (int i : keep)
            for (int j : keep) sub.push_back(a.at(i, j));
        const auto minor = det_permutation_expansion(
            ExactMatrix<F>::from_entries(k, std::move(sub)), field);
        const int j = n - k;
        c[static_cast<std::size_t>(j)] += (k % 2 == 0) ? minor : field.exact_from_int(0) - minor;
    }
    // The full minor (k = n) lands in c_0.
    const auto det = det_permutation_expansion(a, field);
    c[0] += (n % 2 == 0) ? det : field.exact_from_int(0) - det;
    return c;
}

// One kernel vector of an exact singular matrix, via plain Gaussian
// elimination over the exact field. Returns an unnormalized spanning vector.
template <class F>
std::vector<typename F::Exact> nullspace_exact(ExactMatrix<F> a, const F& field) {
    const int n = a.dim();
    std::vector<int> pivot_col_of_row;
    int row = 0;
    for (int col = 0; col < n && row < n; ++col) {
        int piv = -1;
        for (int i = row; i < n; ++i)
            if (!field.exact_is_zero(a.at(i, col))) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != row) a.swap_rows(piv, row);
        for (int i = 0; i < n; ++i) {
            if (i == row || field.exact_is_zero(a.at(i, col))) continue;
            // Explicit type: an expression template would alias the entries
            // mutated below.
            const typename F::Exact f = a.at(i, col) / a.at(row, col);
            for (int j = 0; j < n; ++j) a.at(i, j) = a.at(i, j) - f * a.at(row, j);
        }
        pivot_col_of_row.push_back(col);
        ++row;
    }
    // Free column: the first column that is not a pivot column.
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (int c : pivot_col_of_row) is_pivot[static_cast<std::size_t>(c)] = true;
    int free_col = -1;
    for (int c = 0; c < n; ++c)
        if (!is_pivot[static_cast<std::size_t>(c)]) {
            free_col = c;
            break;
        }
    if (free_col < 0) throw perron::Error("nullspace_exact: matrix is nonsingular");
    std::vector<typename F::Exact> x(static_cast<std::size_t>(n), field.exact_from_int(0));
    x[static_cast<std::size_t>(free_col)] = field.exact_from_int(1);
    for (int r = static_cast<int>(pivot_col_of_row.size()) - 1; r >= 0; --r) {
        const int pc = pivot_col_of_row[static_cast<std::size_t>(r)];
        typename F::Exact acc = field.exact_from_int(0);
        for (int j = 0; j < n; ++j) {
            if (j == pc) continue;
            acc += a.at(r, j) * x[static_cast<std::size_t>(j)];
        }
        x[static_cast<std::size_t>(pc)] = (field.exact_from_int(0) - acc) / a.at(r, pc);
    }
    return x;
}

// Dominant-eigenvalue estimate by power iteration: the ratio of successive
// iterates at the max-abs coordinate. Converges linearly with the slope gap,
// independently of the Hensel path.
template <class F>
typename F::Elem power_iteration_lambda(const perron::ValMatrix<F>& a,
                                        perron::ValVector<F> y, long long target_abs,
                                        int max_iters) {
    using Elem = typename F::Elem;
    auto lead_index = [](const perron::ValVector<F>& v) {
        int idx = -1;
        long long best = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i].is_zero()) continue;
            if (idx < 0 || v[i].val() < best) {
                idx = static_cast<int>(i);
                best = v[i].val();
            }
        }
        if (idx < 0) throw perron::Error("power_iteration: zero vector");
        return idx;
    };

    std::optional<Elem> prev;
    for (int it = 0; it < max_iters; ++it) {
        const int m = lead_index(y);
        const auto z = mat_vec(a, y);
        const Elem est = z[static_cast<std::size_t>(m)] / y[static_cast<std::size_t>(m)];
        if (prev && (est - *prev).is_zero() &&
            (est - *prev).zero_bound() >= target_abs)
            return est;
        prev = est;
        const int zm = lead_index(z);
        const Elem norm = z[static_cast<std::size_t>(zm)];
        y.clear();
        for (const auto& zi : z) y.push_back(zi / norm);
    }
    throw perron::Error("power_iteration: did not stabilize");
}

} // namespace oracles
