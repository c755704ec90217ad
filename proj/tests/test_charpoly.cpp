#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "perron/charpoly.hpp"
#include "perron/counterexample.hpp"

using namespace perron;

namespace {

ExactMatrix<PadicField> mat(const PadicField& f, int n, std::vector<std::string> cells) {
    std::vector<Rational> entries;
    for (const auto& c : cells) entries.push_back(f.parse_exact(c));
    return ExactMatrix<PadicField>::from_entries(n, std::move(entries));
}

} // namespace

TEST_CASE("char_poly golden values") {
    const PadicField q3(3, 10);
    const auto f14 = char_poly(mat(q3, 2, {"4", "-5", "1", "10"}), q3);
    CHECK(f14.c == std::vector<Rational>{Rational(45), Rational(-14)});

    const PadicField q7(7, 10);
    const auto f15 = char_poly(mat(q7, 2, {"8", "1", "1", "1"}), q7);
    CHECK(f15.c == std::vector<Rational>{Rational(7), Rational(-9)});

    const PadicField q5(5, 10);
    const auto f16 =
        char_poly(mat(q5, 3, {"6", "1", "-4", "1", "-4", "6", "-4", "6", "1"}), q5);
    CHECK(f16.c == std::vector<Rational>{Rational(225), Rational(-75), Rational(-3)});

    // identity: (x - 1)^n
    const auto fid = char_poly(exact_identity(q3, 4), q3);
    CHECK(fid.c == std::vector<Rational>{Rational(1), Rational(-4), Rational(6), Rational(-4)});
}

TEST_CASE("char_poly equals the permutation-expansion oracle", "[property]") {
    std::mt19937_64 rng(4242);
    const PadicField f(3, 10);
    std::uniform_int_distribution<long long> num(-9, 9);
    std::uniform_int_distribution<long long> den(1, 4);
    for (int n = 1; n <= 4; ++n) {
        for (int t = 0; t < 12; ++t) {
            std::vector<Rational> cells;
            for (int k = 0; k < n * n; ++k) cells.push_back(Rational(num(rng), den(rng)));
            const auto a = ExactMatrix<PadicField>::from_entries(n, cells);
            CHECK(char_poly(a, f).c == oracles::charpoly_bruteforce(a, f));
        }
    }
}

TEST_CASE("determinant and trace read off the characteristic polynomial", "[property]") {
    std::mt19937_64 rng(515);
    const PadicField f(5, 10);
    std::uniform_int_distribution<long long> num(-30, 30);
    for (int n = 2; n <= 5; ++n) {
        for (int t = 0; t < 8; ++t) {
            std::vector<Rational> cells;
            for (int k = 0; k < n * n; ++k) cells.push_back(Rational(num(rng)));
            const auto a = ExactMatrix<PadicField>::from_entries(n, cells);
            const auto cp = char_poly(a, f);
            CHECK(charpoly_det(cp, f) == det_exact(a, f));
            Rational tr(0);
            for (int i = 0; i < n; ++i) tr += a.at(i, i);
            CHECK(charpoly_trace(cp, f) == tr);
        }
    }
}

TEST_CASE("newton polygon golden values") {
    const PadicField q2(2, 10);
    const CharPoly<Rational> f17{2, {parse_rational("26/9"), Rational(-4)}};
    const auto pg = newton_polygon(f17, q2);
    REQUIRE(pg.points.size() == 3);
    CHECK(pg.points[0].x == 0);
    CHECK(pg.points[0].y == 1);
    CHECK(pg.points[1].x == 1);
    CHECK(pg.points[1].y == 2);
    CHECK(pg.points[2].x == 2);
    CHECK(pg.points[2].y == 0);
    REQUIRE(pg.segments.size() == 1);
    CHECK(pg.segments[0].slope == Rational(-1, 2));
    CHECK(pg.segments[0].length == 2);

    const PadicField q3(3, 10);
    const CharPoly<Rational> f14{2, {Rational(45), Rational(-14)}};
    const auto pg14 = newton_polygon(f14, q3);
    REQUIRE(pg14.segments.size() == 2);
    CHECK(pg14.segments[0].slope == Rational(-2));
    CHECK(pg14.segments[0].length == 1);
    CHECK(pg14.segments[1].slope == Rational(0));
    CHECK(pg14.segments[1].length == 1);

    // x^n: a single point, no segments, every root is 0
    const CharPoly<Rational> xn{3, {Rational(0), Rational(0), Rational(0)}};
    const auto pgx = newton_polygon(xn, q3);
    CHECK(pgx.points.size() == 1);
    CHECK(pgx.segments.empty());
    CHECK(root_valuations(pgx).empty());
}

TEST_CASE("root valuations golden values") {
    const PadicField q5(5, 10);
    const CharPoly<Rational> f16{3, {Rational(225), Rational(-75), Rational(-3)}};
    const auto rv = root_valuations(newton_polygon(f16, q5));
    REQUIRE(rv.size() == 2);
    CHECK(rv[0].first == Rational(1));
    CHECK(rv[0].second == 2);
    CHECK(rv[1].first == Rational(0));
    CHECK(rv[1].second == 1);

    // sharpness family instance p = 2, n = 2, l = 2: both roots have ord 1
    const PadicField q2(2, 10);
    const CharPoly<Rational> g{2, {Rational(4), Rational(-6)}};
    const auto rvg = root_valuations(newton_polygon(g, q2));
    REQUIRE(rvg.size() == 1);
    CHECK(rvg[0].first == Rational(1));
    CHECK(rvg[0].second == 2);
}

TEST_CASE("polygon structural properties", "[property]") {
    std::mt19937_64 rng(808);
    const PadicField f(3, 10);
    std::uniform_int_distribution<long long> num(-40, 40);
    std::uniform_int_distribution<int> shift(0, 6);
    for (int t = 0; t < 80; ++t) {
        const int n = 2 + static_cast<int>(rng() % 6);
        std::vector<Rational> c;
        for (int j = 0; j < n; ++j)
            c.push_back(Rational(num(rng)) * Rational(pow_int(3, shift(rng))));
        const CharPoly<Rational> poly{n, c};
        const auto pg = newton_polygon(poly, f);

        // slopes strictly increase
        for (std::size_t i = 1; i < pg.segments.size(); ++i)
            CHECK(pg.segments[i - 1].slope < pg.segments[i].slope);

        // every point lies on or above every segment's supporting line
        for (const auto& s : pg.segments) CHECK(s.length > 0);
        for (std::size_t si = 0; si + 1 <= pg.segments.size(); ++si) {
            const auto& a = pg.vertices[si];
            const auto& sl = pg.segments[si].slope;
            for (const auto& pt : pg.points) {
                // pt.y >= a.y + slope * (pt.x - a.x), exactly
                const Rational lhs = Rational(pt.y - a.y);
                const Rational rhs = sl * Rational(pt.x - a.x);
                CHECK(lhs >= rhs);
            }
        }

        // horizontal lengths sum to n minus the leftmost vertex abscissa
        int total = 0;
        for (const auto& s : pg.segments) total += s.length;
        CHECK(total == pg.degree - pg.vertices.front().x);

        // root multiplicities count the nonzero roots
        int count = 0;
        for (const auto& [v, k] : root_valuations(pg)) count += k;
        CHECK(count == pg.degree - pg.vertices.front().x);
    }
}

TEST_CASE("check_det_bound golden values") {
    const PadicField q3(3, 10);
    const auto a14 = mat(q3, 2, {"4", "-5", "1", "10"});
    const auto cert = check_det_bound(a14, q3, Valuation(1));
    CHECK(cert.claim == "det-bound");
    CHECK(cert.required == Valuation(1));
    CHECK(cert.observed == Valuation(2));
    CHECK(cert.holds);

    // all-ones: det 0, observed +infinity
    const auto ones = ExactMatrix<PadicField>::from_entries(
        3, std::vector<Rational>(9, Rational(1)));
    const auto cert_ones = check_det_bound(ones, q3, Valuation(1));
    CHECK(cert_ones.observed.is_infinite());
    CHECK(cert_ones.holds);

    // 1x1: bound l * 0 = 0, always holds
    const auto one_by_one = mat(q3, 1, {"4"});
    const auto cert1 = check_det_bound(one_by_one, q3, Valuation(1));
    CHECK(cert1.required == Valuation(0));
    CHECK(cert1.holds);

    // hypothesis violation is an error
    CHECK_THROWS_AS(check_det_bound(mat(q3, 2, {"2", "1", "1", "1"}), q3, Valuation(1)),
                    InputError);
}

TEST_CASE("check_coeff_bounds golden values") {
    const PadicField q3(3, 10);
    const CharPoly<Rational> f14{2, {Rational(45), Rational(-14)}};
    const auto certs = check_coeff_bounds(f14, q3, Valuation(1));
    REQUIRE(certs.size() == 3);
    CHECK(certs[0].claim == "coeff-bound(0)");
    CHECK(certs[0].required == Valuation(1));
    CHECK(certs[0].observed == Valuation(2));
    CHECK(certs[0].holds);
    CHECK(certs[1].required == Valuation(0));
    CHECK(certs[1].holds);
    CHECK(certs[2].claim == "trace-identity");
    CHECK(certs[2].required == Valuation(0)); // ord_3(2)
    CHECK(certs[2].observed == Valuation(0));
    CHECK(certs[2].holds);

    // sharpness instance p=2, n=2, l=2: identity holds with both sides 1
    const PadicField q2(2, 10);
    const CharPoly<Rational> g{2, {Rational(4), Rational(-6)}};
    const auto gcerts = check_coeff_bounds(g, q2, Valuation(2));
    REQUIRE(gcerts.size() == 3);
    CHECK(gcerts[2].claim == "trace-identity");
    CHECK(gcerts[2].required == Valuation(1));
    CHECK(gcerts[2].observed == Valuation(1));
    CHECK(gcerts[2].holds);

    // n = 1: only c_0 with bound 0, plus the trace identity
    const CharPoly<Rational> lin{1, {Rational(-5)}};
    const auto lcerts = check_coeff_bounds(lin, q3, Valuation(2));
    REQUIRE(lcerts.size() == 2);
    CHECK(lcerts[0].required == Valuation(0));
    CHECK(lcerts[0].holds);
    CHECK(lcerts[1].claim == "trace-identity");
    CHECK(lcerts[1].holds);
}

TEST_CASE("bound certificates hold on random hypothesis-satisfying matrices", "[property]") {
    for (long long p : {2LL, 5LL}) {
        const PadicField f(p, 24);
        for (int n : {2, 4}) {
            const long long d = (n % p == 0) ? ord_int(BigInt(n), p) : 0;
            const long long ell = 2 * d + 1;
            for (int t = 0; t < 10; ++t) {
                DetRng rng(trial_seed(7777, p, n, t));
                const auto a = sample_hypothesis_matrix(f, n, ell, rng);
                CHECK(check_det_bound(a, f, Valuation(ell)).holds);
                for (const auto& c : check_coeff_bounds(char_poly(a, f), f, Valuation(ell)))
                    CHECK(c.holds);
            }
        }
    }
}
