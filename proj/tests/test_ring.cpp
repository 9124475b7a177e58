#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qqforge/param.hpp"

using namespace qqforge;

namespace {

std::mt19937 rng(20240817);

BigInt rand_bigint(int limbs) {
    std::uniform_int_distribution<long long> d(-1000000000LL, 1000000000LL);
    BigInt x = d(rng);
    for (int i = 1; i < limbs; ++i) x = x * BigInt(1000000007LL) + BigInt(d(rng));
    return x;
}

ParamLaurent rand_laurent(int max_terms = 5, int max_exp = 3, int max_coef = 9) {
    std::uniform_int_distribution<int> nt(0, max_terms);
    std::uniform_int_distribution<int> ex(-max_exp, max_exp);
    std::uniform_int_distribution<int> co(-max_coef, max_coef);
    ParamLaurent p;
    int n = nt(rng);
    for (int i = 0; i < n; ++i) p.add_term({ex(rng), ex(rng)}, BigRat(co(rng)));
    return p;
}

}  // namespace

TEST_CASE("bigint arithmetic agrees with long long on small values") {
    std::uniform_int_distribution<long long> d(-1000000, 1000000);
    for (int i = 0; i < 2000; ++i) {
        long long a = d(rng), b = d(rng);
        CHECK((BigInt(a) + BigInt(b)).to_ll() == a + b);
        CHECK((BigInt(a) - BigInt(b)).to_ll() == a - b);
        CHECK((BigInt(a) * BigInt(b)).to_ll() == a * b);
        if (b != 0) {
            CHECK((BigInt(a) / BigInt(b)).to_ll() == a / b);
            CHECK((BigInt(a) % BigInt(b)).to_ll() == a % b);
        }
    }
}

TEST_CASE("bigint multi-limb division round trips") {
    for (int i = 0; i < 300; ++i) {
        BigInt a = rand_bigint(4), b = rand_bigint(2);
        if (b.is_zero()) continue;
        BigInt q, r;
        BigInt::divmod(a, b, q, r);
        CHECK(q * b + r == a);
        CHECK(r.abs() < b.abs());
    }
    CHECK(BigInt::gcd(BigInt(462), BigInt(1071)).to_ll() == 21);
}

TEST_CASE("bigrat normalization") {
    CHECK(BigRat(6, -4) == BigRat(-3, 2));
    CHECK((BigRat(1, 3) + BigRat(1, 6)) == BigRat(1, 2));
    CHECK(BigRat(7, 3).str() == "7/3");
}

TEST_CASE("ring axioms hold on random triples") {
    for (int i = 0; i < 1200; ++i) {
        ParamLaurent a = rand_laurent(), b = rand_laurent(), c = rand_laurent();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("exact_divide basic cases") {
    ParamLaurent t2 = ParamLaurent::t2(), t3 = ParamLaurent::t3();
    CHECK(exact_divide(t3 * t2, t3) == t2);

    // B_22 of the symmetric gl family divided by its fermionic symmetrizer
    ParamLaurent qq = ParamLaurent::monomial(ParamMonomial::q()) +
                      ParamLaurent::monomial(ParamMonomial::q(-1));
    ParamLaurent b22 = -(ParamLaurent::t1() * t3 * qq);
    CHECK(exact_divide(b22, t3) == -(ParamLaurent::t1() * qq));

    ParamLaurent p = ParamLaurent(1) + ParamLaurent::monomial(ParamMonomial::s1());
    CHECK_THROWS_AS(exact_divide(p, t3), not_divisible);
    // independent route: t3 vanishes at s3 = 1 (s2 := s1^{-1}) but p does not
    CHECK(t3.map_exponents(1, 0, -1, 0).is_zero());
    CHECK(!p.map_exponents(1, 0, -1, 0).is_zero());
}

TEST_CASE("exact_divide round trips on random products") {
    for (int i = 0; i < 500; ++i) {
        ParamLaurent a = rand_laurent(4), b = rand_laurent(4);
        if (b.is_zero()) continue;
        CHECK(exact_divide(a * b, b) == a);
    }
}

TEST_CASE("signed_monomials") {
    ParamLaurent t3 = ParamLaurent::t3();
    auto sm = signed_monomials(t3);
    REQUIRE(sm.size() == 2);
    CHECK(sm[0] == std::pair<int, ParamMonomial>{1, ParamMonomial::s3()});
    CHECK(sm[1] == std::pair<int, ParamMonomial>{-1, ParamMonomial::s3(-1)});

    // hand-expanded t3*t2 = s1^{-1} - s1^{-1} q^{-2} - s1 q^2 + s1
    ParamLaurent p = t3 * ParamLaurent::t2();
    auto sm2 = signed_monomials(p);
    std::map<ParamMonomial, int> got;
    for (auto [s, m] : sm2) got[m] += s;
    CHECK(got[ParamMonomial{-1, 0}] == 1);
    CHECK(got[ParamMonomial{-1, -2}] == -1);
    CHECK(got[ParamMonomial{1, 2}] == -1);
    CHECK(got[ParamMonomial{1, 0}] == 1);
    CHECK(sm2.size() == 4);

    // the bosonic diagonal B entry carries the constant monomial twice, negatively
    ParamLaurent qq = ParamLaurent::monomial(ParamMonomial::q()) +
                      ParamLaurent::monomial(ParamMonomial::q(-1));
    ParamLaurent b = -(ParamLaurent::t1() * t3 * qq);
    int const_count = 0;
    for (auto [s, m] : signed_monomials(b))
        if (m.is_one()) const_count += s;
    CHECK(const_count == -2);

    ParamLaurent half;
    half.add_term(ParamMonomial::one(), BigRat(1, 2));
    CHECK_THROWS_AS(signed_monomials(half), non_integral);
}

TEST_CASE("reassembling signed monomials reproduces the polynomial") {
    for (int i = 0; i < 300; ++i) {
        ParamLaurent p = rand_laurent();
        ParamLaurent q;
        for (auto [s, m] : signed_monomials(p)) q.add_term(m, BigRat(s));
        CHECK(q == p);
    }
}

TEST_CASE("gamma_limit golden values") {
    ParamLaurent t1 = ParamLaurent::t1(), t2 = ParamLaurent::t2(), t3 = ParamLaurent::t3();
    CHECK(gamma_limit(t3 * t3) == GammaPoly(-1));
    CHECK(gamma_limit(t3 * t2) == GammaPoly::from_coeffs({BigRat(1), BigRat(-1)}));  // 1 - g
    ParamLaurent qq = ParamLaurent::monomial(ParamMonomial::q()) +
                      ParamLaurent::monomial(ParamMonomial::q(-1));
    CHECK(gamma_limit(-(t1 * t3 * qq)) == GammaPoly::from_coeffs({BigRat(0), BigRat(-2)}));  // -2g
    CHECK(gamma_limit(t1 * t3) == GammaPoly::gamma());

    CHECK_THROWS_AS(gamma_limit(ParamLaurent(1) + t3), limit_diverges);
}

TEST_CASE("gamma_limit is additive where defined") {
    ParamLaurent t1 = ParamLaurent::t1(), t2 = ParamLaurent::t2(), t3 = ParamLaurent::t3();
    std::vector<ParamLaurent> pool = {t3 * t3, t3 * t2, t1 * t3, t3 * t3 * t3 * t2};
    for (const auto& p : pool)
        for (const auto& q : pool)
            CHECK(gamma_limit(p + q) == gamma_limit(p) + gamma_limit(q));
}

TEST_CASE("rational canonicalization is idempotent and multiplication compatible") {
    auto rand_rational = [&]() {
        ParamLaurent d;
        while (d.is_zero()) d = rand_laurent(3, 2, 4);
        return ParamRational(rand_laurent(3, 2, 4), d);
    };
    for (int i = 0; i < 300; ++i) {
        ParamRational a = rand_rational(), b = rand_rational();
        ParamRational ab = a * b;
        // rebuilding from the raw cross product must land on the same form
        CHECK(ab == ParamRational(a.num() * b.num(), a.den() * b.den()));
        // canonical form survives round trip through num/den
        CHECK(a == ParamRational(a.num(), a.den()));
        if (!b.is_zero()) CHECK((a / b) * b == a);
        CHECK(a - a == ParamRational());
    }
}

TEST_CASE("rational denominators are normalized") {
    // (s1-s1^{-1})/(q-q^{-1}): least denominator monomial coefficient must be +1
    ParamRational r(ParamLaurent::t1(), ParamLaurent::t2());
    CHECK(r.den().terms().begin()->second == BigRat(1));
    CHECK(r.den().min_monomial() == ParamMonomial::one());
    ParamRational s(ParamLaurent::t1() * ParamLaurent::t3(),
                    ParamLaurent::t2() * ParamLaurent::t3());
    CHECK(s == r);
}

TEST_CASE("gamma poly division and determinant pieces") {
    GammaPoly g = GammaPoly::gamma();
    GammaPoly p = (g + GammaPoly(1)) * (g - GammaPoly(2)) * g;
    CHECK(exact_divide(p, g) == (g + GammaPoly(1)) * (g - GammaPoly(2)));
    CHECK_THROWS_AS(exact_divide(p + GammaPoly(1), g), not_divisible);
}
