#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "perron/matrix.hpp"
#include "perron/perron.hpp"

using namespace perron;

namespace {

ExactMatrix<PadicField> mat(const PadicField& f, std::vector<std::string> cells) {
    const int n = static_cast<int>(std::round(std::sqrt(double(cells.size()))));
    std::vector<Rational> entries;
    for (const auto& c : cells) entries.push_back(f.parse_exact(c));
    return ExactMatrix<PadicField>::from_entries(n, std::move(entries));
}

const std::vector<std::string> kExample14 = {"4", "-5", "1", "10"};

} // namespace

TEST_CASE("mat_norm") {
    const PadicField q3(3, 12);
    const auto id = embed_matrix(q3, exact_identity(q3, 3));
    CHECK(mat_norm<PadicOps>(id).exact);
    CHECK(mat_norm<PadicOps>(id).value == Valuation(0));

    const auto a = embed_matrix(q3, mat(q3, kExample14));
    CHECK(mat_norm<PadicOps>(a).value == Valuation(0));

    const PadicField q5(5, 12);
    auto pI = exact_identity(q5, 2);
    for (int i = 0; i < 2; ++i) pI.at(i, i) = Rational(5);
    const auto pIv = embed_matrix(q5, pI);
    // off-diagonal zeros only bound the norm from below at full precision
    CHECK(mat_norm<PadicOps>(pIv).value == Valuation(1));

    // all zero-at-precision: lower bound only
    const auto z = SquareMatrix<PadicElem>(2, q5.zero());
    CHECK_FALSE(mat_norm<PadicOps>(z).exact);
    CHECK(mat_norm<PadicOps>(z).value == Valuation(12));
}

TEST_CASE("matrix product matches the exact oracle") {
    const PadicField q3(3, 12);
    const auto a = mat(q3, kExample14);
    const auto sq = mat_mul(a, a);
    const auto expected = mat(q3, {"11", "-70", "14", "95"});
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(sq.at(i, j) == expected.at(i, j));

    // valued product agrees with the embedded exact product
    const auto av = embed_matrix(q3, a);
    const auto sqv = mat_mul(av, av);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(sqv.at(i, j).agrees_with(q3.embed(expected.at(i, j)),
                                           sqv.at(i, j).abs_precision()));

    const auto prod_id = mat_mul(av, embed_matrix(q3, exact_identity(q3, 2)));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(prod_id.at(i, j).agrees_with(av.at(i, j), 12));
}

TEST_CASE("norm submultiplicativity", "[property]") {
    std::mt19937_64 rng(2024);
    const PadicField f(3, 16);
    std::uniform_int_distribution<long long> num(-50, 50);
    std::uniform_int_distribution<int> shift(0, 3);
    for (int t = 0; t < 60; ++t) {
        std::vector<PadicElem> ea, eb;
        for (int k = 0; k < 9; ++k) {
            ea.push_back(f.embed(Rational(num(rng) * pow_int(3, shift(rng)))));
            eb.push_back(f.embed(Rational(num(rng) * pow_int(3, shift(rng)))));
        }
        const auto a = ValMatrix<PadicField>::from_entries(3, std::move(ea));
        const auto b = ValMatrix<PadicField>::from_entries(3, std::move(eb));
        const auto ab = mat_mul(a, b);
        CHECK(mat_norm<PadicOps>(ab).value >=
              mat_norm<PadicOps>(a).value + mat_norm<PadicOps>(b).value);
    }
}

TEST_CASE("scale and rescale_to_unit_disc") {
    const PadicField q3(3, 12);
    // B = 5 * A lies in a zero-free disc about 5; rescaling recovers A.
    const auto b = mat(q3, {"20", "-25", "5", "50"});
    const auto [a, info] = rescale_to_unit_disc(b, Rational(5), q3);
    const auto expected = mat(q3, kExample14);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(a.at(i, j) == expected.at(i, j));
    CHECK(info.ord_alpha == Valuation(0));
    CHECK(info.entry_radius >= Valuation(1));

    // entries in D(3, 3^-2), alpha = 3: rescaled entries land in D(1, 3^-1)
    const auto b2 = mat(q3, {"3", "12", "21", "21"});
    const auto [a2, info2] = rescale_to_unit_disc(b2, Rational(3), q3);
    CHECK(info2.ord_alpha == Valuation(1));
    CHECK(info2.entry_radius == Valuation(2));
    const auto hyp = check_hypothesis(a2, q3);
    REQUIRE(hyp.ell.has_value());
    CHECK(*hyp.ell == Valuation(1));

    // |alpha| <= r is rejected: 0 would lie in the disc
    CHECK_THROWS_AS(rescale_to_unit_disc(mat(q3, {"3", "3", "3", "3"}), Rational(9), q3),
                    InputError);
    CHECK_THROWS_AS(rescale_to_unit_disc(b, Rational(0), q3), InputError);

    // scale by a valued scalar
    const auto av = embed_matrix(q3, expected);
    const auto scaled = scale(av, q3.embed_int(5));
    CHECK(scaled.at(0, 0).agrees_with(q3.embed_int(20), 12));
}

TEST_CASE("solve_kernel on the 5-eigenvector") {
    const PadicField q3(3, 20);
    auto m = embed_matrix(q3, mat(q3, kExample14));
    const auto five = q3.embed_int(5);
    for (int i = 0; i < 2; ++i) m.at(i, i) = m.at(i, i) - five;
    const auto x = solve_kernel<PadicOps>(m);
    REQUIRE(x.size() == 2);
    // kernel line is span(-5, 1); canonical form has first max-abs coord 1
    CHECK(x[0].agrees_with(q3.one(), x[0].abs_precision()));
    CHECK(x[1].agrees_with(q3.embed(parse_rational("-1/5")), x[1].abs_precision()));
    // line check: x0 + 5 x1 = 0 at precision
    const auto r = x[0] + q3.embed_int(5) * x[1];
    CHECK(r.is_zero());
}

TEST_CASE("solve_kernel of the zero matrix returns e1") {
    const PadicField q3(3, 10);
    const auto z = SquareMatrix<PadicElem>(3, q3.zero());
    const auto x = solve_kernel<PadicOps>(z);
    CHECK(x[0].agrees_with(q3.one(), 10));
    CHECK(x[1].is_zero());
    CHECK(x[2].is_zero());
}

TEST_CASE("solve_kernel matches the exact null-space oracle on the 3x3 example") {
    const PadicField q5(5, 20);
    const auto a = mat(q5, {"6", "1", "-4", "1", "-4", "6", "-4", "6", "1"});
    auto m = embed_matrix(q5, a);
    for (int i = 0; i < 3; ++i) m.at(i, i) = m.at(i, i) - q5.embed_int(3);

    const auto x = solve_kernel<PadicOps>(m);
    // residual certificate: (A - 3I) x = 0 at precision
    const auto mx = mat_vec(m, x);
    for (const auto& e : mx) CHECK(e.is_zero());

    // span comparison against the exact oracle
    auto me = a;
    for (int i = 0; i < 3; ++i) me.at(i, i) = me.at(i, i) - Rational(3);
    const auto w = oracles::nullspace_exact(me, q5);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            const auto cross = x[static_cast<std::size_t>(i)] * q5.embed(w[static_cast<std::size_t>(j)]) -
                               x[static_cast<std::size_t>(j)] * q5.embed(w[static_cast<std::size_t>(i)]);
            CHECK(cross.is_zero());
        }
}

TEST_CASE("solve_kernel errors") {
    const PadicField q3(3, 10);
    CHECK_THROWS_AS(solve_kernel<PadicOps>(embed_matrix(q3, exact_identity(q3, 2))),
                    CertificationError);
    // a pivot position about which nothing is known
    auto unknown = SquareMatrix<PadicElem>(1, PadicElem::zero_at(q3.context(), 0));
    CHECK_THROWS_AS(solve_kernel<PadicOps>(unknown), PrecisionError);
}

TEST_CASE("kernel line is independent of row order", "[property]") {
    std::mt19937_64 rng(99);
    const PadicField f(7, 16);
    std::uniform_int_distribution<long long> num(-20, 20);
    for (int t = 0; t < 25; ++t) {
        // random rank-2 3x3 matrix: third row = sum of the first two
        std::vector<Rational> rows;
        for (int k = 0; k < 6; ++k) rows.push_back(Rational(num(rng)));
        for (int j = 0; j < 3; ++j)
            rows.push_back(rows[static_cast<std::size_t>(j)] + rows[static_cast<std::size_t>(3 + j)]);
        const auto a = ExactMatrix<PadicField>::from_entries(3, rows);
        ValMatrix<PadicField> av = embed_matrix(f, a);
        ValVector<PadicField> x1, x2;
        try {
            x1 = solve_kernel<PadicOps>(av);
        } catch (const CertificationError&) {
            continue; // random rows were linearly dependent in another way
        }
        ValMatrix<PadicField> perm = av;
        perm.swap_rows(0, 2);
        x2 = solve_kernel<PadicOps>(perm);
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                const auto cross = x1[static_cast<std::size_t>(i)] * x2[static_cast<std::size_t>(j)] -
                                   x1[static_cast<std::size_t>(j)] * x2[static_cast<std::size_t>(i)];
                CHECK(cross.is_zero());
            }
    }
}

TEST_CASE("det_exact agrees with the permutation expansion", "[property]") {
    std::mt19937_64 rng(5150);
    const PadicField f(3, 10);
    std::uniform_int_distribution<long long> num(-9, 9);
    std::uniform_int_distribution<long long> den(1, 5);
    for (int n = 1; n <= 4; ++n) {
        for (int t = 0; t < 10; ++t) {
            std::vector<Rational> cells;
            for (int k = 0; k < n * n; ++k) cells.push_back(Rational(num(rng), den(rng)));
            const auto a = ExactMatrix<PadicField>::from_entries(n, cells);
            CHECK(det_exact(a, f) == oracles::det_permutation_expansion(a, f));
        }
    }
}
