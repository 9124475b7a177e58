#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qqforge/ycalc.hpp"

using namespace qqforge;

namespace {

ParamMonomial Q(int e) { return ParamMonomial::q(e); }
ParamMonomial S1(int e) { return ParamMonomial::s1(e); }

YMonomial Y(const CartanMatrix& C, ColorLabel l, ParamMonomial s, int e = 1) {
    return YMonomial::generator(C.index_of(l), s, e);
}

std::mt19937 rng(7);

YMonomial rand_mono(const CartanMatrix& C) {
    std::uniform_int_distribution<int> nf(0, 4), col(0, C.rank() - 1), ex(-2, 2), pe(0, 1);
    YMonomial m;
    int n = nf(rng);
    for (int i = 0; i < n; ++i)
        m.mul_gen(col(rng), {ex(rng), ex(rng)}, pe(rng) ? 1 : -1);
    return m;
}

}  // namespace

TEST_CASE("tau shift composes and fixes the identity") {
    CartanMatrix C = gl_sym(2);
    for (int i = 0; i < 200; ++i) {
        YMonomial m = rand_mono(C);
        CHECK(tau_shift(m, ParamMonomial::one()) == m);
        ParamMonomial mu{1, -1}, nu{-2, 1};
        CHECK(tau_shift(tau_shift(m, mu), nu) == tau_shift(m, mu * nu));
    }
}

TEST_CASE("affine roots match their reference values") {
    SUBCASE("gl_sym") {
        CartanMatrix C = gl_sym(3);
        YMonomial a1 = affine_root(C, C.index_of({1, false}), ParamMonomial::one());
        YMonomial expect = Y(C, {1, false}, ParamMonomial::s3()) *
                           Y(C, {1, false}, ParamMonomial::s3(-1), -1) *
                           Y(C, {1, true}, Q(1)) * Y(C, {1, true}, Q(-1), -1) *
                           Y(C, {2, false}, ParamMonomial::one(), -1);
        CHECK(a1 == expect);

        YMonomial a2 = affine_root(C, C.index_of({2, false}), ParamMonomial::one());
        YMonomial e2 = Y(C, {2, false}, Q(1)) * Y(C, {2, false}, Q(-1)) *
                       Y(C, {3, false}, ParamMonomial::one(), -1) *
                       Y(C, {1, false}, S1(1)) * Y(C, {1, false}, S1(-1), -1);
        CHECK(a2 == e2);

        YMonomial an = affine_root(C, C.index_of({3, false}), ParamMonomial::one());
        YMonomial en = Y(C, {3, false}, Q(1)) * Y(C, {3, false}, Q(-1)) *
                       Y(C, {2, false}, ParamMonomial::one(), -1);
        CHECK(an == en);
    }
    SUBCASE("osp") {
        CartanMatrix C = osp(3);
        YMonomial a1 = affine_root(C, C.index_of({1, false}), ParamMonomial::one());
        YMonomial expect = Y(C, {1, false}, ParamMonomial::s3()) *
                           Y(C, {1, false}, ParamMonomial::s3(-1), -1) *
                           Y(C, {1, true}, ParamMonomial{-1, 1}) *
                           Y(C, {1, true}, ParamMonomial{1, -1}, -1) *
                           Y(C, {2, false}, ParamMonomial::one(), -1);
        CHECK(a1 == expect);
    }
    SUBCASE("gl_std color 0 enters neighbors inversely") {
        CartanMatrix C = gl_std(3, 4);
        YMonomial a0 = affine_root(C, C.index_of({0, false}), ParamMonomial::one());
        YMonomial expect = Y(C, {0, false}, ParamMonomial::s3()) *
                           Y(C, {0, false}, ParamMonomial::s3(-1), -1) *
                           Y(C, {1, false}, ParamMonomial::one(), -1) *
                           Y(C, {1, true}, ParamMonomial::one(), -1);
        CHECK(a0 == expect);
    }
}

TEST_CASE("tau of affine root is the shifted affine root") {
    CartanMatrix C = gl_sym(2);
    ParamMonomial mu{2, -1};
    for (int i = 0; i < C.rank(); ++i)
        CHECK(affine_root(C, i, mu) == tau_shift(affine_root(C, i, ParamMonomial::one()), mu));
}

TEST_CASE("restriction is a ring map commuting with tau") {
    CartanMatrix C = gl_sym(3);
    ParamMonomial mu{1, 2};
    for (int t = 0; t < 200; ++t) {
        YMonomial m = rand_mono(C), n = rand_mono(C);
        for (int i = 0; i < C.rank(); ++i) {
            CHECK(restrict_monomial(m * n, i) == restrict_monomial(m, i) * restrict_monomial(n, i));
            CHECK(restrict_monomial(tau_shift(m, mu), i) ==
                  tau_shift(restrict_monomial(m, i), mu));
        }
    }
    // restrict(A_{1,1}, color 2) keeps only the color-2 factor
    YMonomial a1 = affine_root(C, C.index_of({1, false}), ParamMonomial::one());
    YMonomial r = restrict_monomial(a1, C.index_of({2, false}));
    CHECK(r == YMonomial::generator(0, ParamMonomial::one(), -1));
    YMonomial no2 = Y(C, {3, false}, Q(2));
    CHECK(restrict_monomial(no2, C.index_of({2, false})).is_one());
}

TEST_CASE("degree counts fermionic exponents only") {
    CartanMatrix C = gl_sym(2);
    YMonomial bos = Y(C, {2, false}, Q(3));
    CHECK(degree(C, bos) == std::vector<int>{0, 0, 0, 0});
    YMonomial fer = Y(C, {1, false}, Q(1)) * Y(C, {1, true}, Q(2), -1);
    CHECK(degree(C, fer) == std::vector<int>{0, 1, -1, 0});
    for (int t = 0; t < 200; ++t) {
        YMonomial m = rand_mono(C), n = rand_mono(C);
        auto dm = degree(C, m), dn = degree(C, n), dmn = degree(C, m * n);
        for (int i = 0; i < C.rank(); ++i) CHECK(dmn[i] == dm[i] + dn[i]);
    }
    QQChar mixed(&C);
    mixed.add_term(fer, 1);
    mixed.add_term(bos, 1);
    CHECK_THROWS_AS(degree(C, mixed), mixed_degree);
}

TEST_CASE("mutual genericity") {
    CartanMatrix C = osp(3);
    YMonomial a = Y(C, {1, false}, ParamMonomial::one());
    CHECK(!mutually_generic(a, a));
    // the two displayed product terms sharing a factor are not mutually generic
    YMonomial t1 = Y(C, {3, false}, Q(3), -1) * Y(C, {2, false}, Q(2));
    YMonomial t2 = Y(C, {1, false}, ParamMonomial{-1, 3}, -1) *
                   Y(C, {1, false}, ParamMonomial{1, 3}) *
                   Y(C, {1, true}, ParamMonomial{-1, 3}, -1) *
                   Y(C, {1, true}, ParamMonomial{1, 3}) * Y(C, {2, false}, Q(2));
    CHECK(!mutually_generic(t1, t2));
    YMonomial t3 = Y(C, {3, false}, Q(5));
    CHECK(mutually_generic(t1, t3));
}

TEST_CASE("bar map is an involution commuting with tau") {
    CartanMatrix C = gl_sym(3);
    ParamMonomial mu{0, 2};
    for (int t = 0; t < 200; ++t) {
        YMonomial m = rand_mono(C);
        CHECK(bar_map(C, bar_map(C, m)) == m);
        CHECK(bar_map(C, tau_shift(m, mu)) == tau_shift(bar_map(C, m), mu));
    }
}

TEST_CASE("affine root exponent vectors are linearly independent over sampled shifts") {
    for (const auto& C : {gl_sym(2), osp(3), gl_std(2, 2)}) {
        std::vector<ParamMonomial> shifts = {{0, 0}, {0, 2}, {1, 1}, {-1, 3}};
        std::vector<YMonomial> roots;
        for (int i = 0; i < C.rank(); ++i)
            for (auto mu : shifts) roots.push_back(affine_root(C, i, mu));
        // distinctness
        for (size_t i = 0; i < roots.size(); ++i)
            for (size_t j = i + 1; j < roots.size(); ++j) CHECK(roots[i] != roots[j]);
        // rank of the exponent matrix equals the number of roots
        std::map<YKey, int> coords;
        for (const auto& r : roots)
            for (const auto& [k, e] : r.exps())
                coords.emplace(k, static_cast<int>(coords.size()));
        std::vector<std::vector<BigRat>> mat(roots.size(),
                                             std::vector<BigRat>(coords.size(), BigRat(0)));
        for (size_t i = 0; i < roots.size(); ++i)
            for (const auto& [k, e] : roots[i].exps()) mat[i][coords[k]] = BigRat(e);
        size_t rank = 0;
        for (size_t col = 0; col < coords.size() && rank < mat.size(); ++col) {
            size_t pivot = rank;
            while (pivot < mat.size() && mat[pivot][col].is_zero()) ++pivot;
            if (pivot == mat.size()) continue;
            std::swap(mat[rank], mat[pivot]);
            for (size_t r2 = 0; r2 < mat.size(); ++r2) {
                if (r2 == rank || mat[r2][col].is_zero()) continue;
                BigRat f = mat[r2][col] / mat[rank][col];
                for (size_t c2 = col; c2 < coords.size(); ++c2)
                    mat[r2][c2] -= f * mat[rank][c2];
            }
            ++rank;
        }
        CHECK(rank == roots.size());
    }
}
