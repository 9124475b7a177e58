#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qqforge/relations.hpp"

using namespace qqforge;

namespace {

ParamMonomial QS(int qe, int se) { return ParamMonomial{se, qe}; }

// p(x) = (1 - q^{-1} s1^{-2} x)(1 - q s1^2 x) / ((1 - q^{-1} x)(1 - q x)), x = arg w/z
ContractionFn pfun(ParamMonomial arg) {
    auto F = [&](ParamMonomial c, int e) { return ContractionFn::factor(c * arg, e); };
    return F(ParamMonomial{-2, -1}, 1) * F(ParamMonomial{2, 1}, 1) *
           F(ParamMonomial{0, -1}, -1) * F(ParamMonomial{0, 1}, -1);
}

long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::vector<int> bits(unsigned mask, int n) {
    std::vector<int> nu(n);
    for (int i = 0; i < n; ++i) nu[i] = (mask >> i) & 1;
    return nu;
}

}  // namespace

TEST_CASE("E-F contraction closed form, all pairs at n = 2") {
    CartanMatrix C = gl_sym(2);
    DressedCurrent E = build_E(C), F = build_F(C);
    for (unsigned ma = 0; ma < 4; ++ma)
        for (unsigned mb = 0; mb < 4; ++mb) {
            auto mu = bits(ma, 2), nu = bits(mb, 2);
            int amu = mu[0] + mu[1], anu = nu[0] + nu[1];
            ContractionFn f = contract_words(C, E.words.at(mu), F.words.at(nu));
            ContractionFn expect;
            for (int i = 1; i <= amu; ++i) {
                // (q^{2i-2-2|nu|} s1^{-1} z - w)/(q^{2i-2|nu|} s1 z - w)
                ParamMonomial cn{-1, 2 * i - 2 - 2 * anu}, cd{1, 2 * i - 2 * anu};
                ContractionFn t1 = ContractionFn::factor(cn.inv(), 1);
                t1.pref = ParamRational::monomial(cn);
                ContractionFn t2 = ContractionFn::factor(cd.inv(), -1);
                t2.pref = ParamRational::monomial(cd).inv();
                expect *= t1 * t2;
            }
            for (int j = 1; j <= anu; ++j) {
                // (z - q^{2j-2} s1^{-1} w)/(z - q^{2j} s1 w)
                expect *= ContractionFn::factor(ParamMonomial{-1, 2 * j - 2}, 1) *
                          ContractionFn::factor(ParamMonomial{1, 2 * j}, -1);
            }
            CHECK(f == expect);
        }
}

TEST_CASE("E-F pole locations track the excitation difference") {
    CartanMatrix C = gl_sym(2);
    DressedCurrent E = build_E(C), F = build_F(C);
    std::vector<int> mu0 = {0, 0}, nu = {1, 1};
    ContractionFn f = contract_words(C, E.words.at(mu0), F.words.at(nu));
    auto poles = poles_and_residues(f);
    REQUIRE(poles.size() == 2);
    CHECK(poles[0].order == 1);
    CHECK(poles[1].order == 1);
    // |mu| = 0, |nu| = k: simple poles exactly at z = q^{2i} s1 w, 1 <= i <= k
    std::set<ParamMonomial> loci;
    for (const auto& p : poles) loci.insert(p.locus);
    CHECK(loci.count(QS(2, 1)));
    CHECK(loci.count(QS(4, 1)));
}

TEST_CASE("corrected pair identities among the rationalized currents") {
    for (int n = 2; n <= 3; ++n) {
        CartanMatrix C = gl_sym(n);
        DressedCurrent E = build_E(C);
        for (unsigned ma = 0; ma < (1u << (n - 1)); ++ma)
            for (unsigned mb = 0; mb < (1u << (n - 1)); ++mb) {
                std::vector<int> mu = bits(ma, n), nu = bits(mb, n);
                std::vector<int> mu1 = mu, nu1 = nu;
                mu1[n - 1] = 1;
                nu1[n - 1] = 1;
                ContractionFn f00 = contract_words(C, E.words.at(mu), E.words.at(nu));
                // raised-raised equals the base pair up to the zero-mode constant s3^{-2}
                ContractionFn f11 = contract_words(C, E.words.at(mu1), E.words.at(nu1));
                ContractionFn want = f00;
                want.pref = want.pref * ParamRational::monomial(ParamMonomial::s3(-2));
                CHECK(f11 == want);
                // mixed orders: the dressing prefactors of the shift identity
                ContractionFn f01 = contract_words(C, E.words.at(mu), E.words.at(nu1));
                ContractionFn pre = ContractionFn::factor(ParamMonomial::s3(-2), 1) *
                                    ContractionFn::factor(ParamMonomial::s3(2), -1) *
                                    ContractionFn::factor(ParamMonomial::s3(2) * ParamMonomial::q(2), 1) *
                                    ContractionFn::factor(ParamMonomial::q(2), -1);
                CHECK(f01 == pre * f00.subst(ParamMonomial::one(), ParamMonomial::q(2)));
                ContractionFn f10 = contract_words(C, E.words.at(nu1), E.words.at(mu));
                ParamMonomial c1 = ParamMonomial::q(2) * ParamMonomial::s3(-2);
                ContractionFn lin1 = ContractionFn::factor(c1.inv(), 1);
                lin1.pref = ParamRational::monomial(c1);
                ContractionFn lin2 = ContractionFn::factor(ParamMonomial::q(-2), -1);
                lin2.pref = ParamRational::monomial(ParamMonomial::q(2)).inv();
                ContractionFn f00z = contract_words(C, E.words.at(nu), E.words.at(mu))
                                         .subst(ParamMonomial::q(2), ParamMonomial::one());
                CHECK(f10 == lin1 * lin2 * f00z);
            }
    }
}

TEST_CASE("contractions stabilize in the rank") {
    CartanMatrix C2 = gl_sym(2), C3 = gl_sym(3);
    DressedCurrent E2 = build_E(C2), E3 = build_E(C3);
    for (unsigned ma = 0; ma < 4; ++ma)
        for (unsigned mb = 0; mb < 4; ++mb) {
            std::vector<int> mu2 = bits(ma, 2), nu2 = bits(mb, 2);
            std::vector<int> mu3 = {mu2[0], mu2[1], 0}, nu3 = {nu2[0], nu2[1], 0};
            CHECK(contract_words(C2, E2.words.at(mu2), E2.words.at(nu2)) ==
                  contract_words(C3, E3.words.at(mu3), E3.words.at(nu3)));
        }
}

TEST_CASE("T-E contraction values") {
    for (int n = 1; n <= 3; ++n) {
        CartanMatrix C = gl_sym(n);
        DressedCurrent E = build_E(C);
        std::vector<CurrentWord> tw;
        auto alpha = alphabet(C);
        for (Letter L : alpha) {
            CurrentWord w = CurrentWord::tbase(C, ParamMonomial::one());
            for (auto& [color, shift] : letter_path(C, L)) w.mul_aroot(C, color, shift, -1);
            tw.push_back(w);
        }
        for (size_t li = 0; li < alpha.size(); ++li) {
            Letter L = alpha[li];
            for (unsigned mask = 0; mask < (1u << n); ++mask) {
                auto nu = bits(mask, n);
                ContractionFn f = contract_words(C, tw[li], E.words.at(nu));
                if (!L.barred && L.value >= 1) {
                    int i = L.value;
                    int above = 0;
                    for (int j = i + 1; j <= n; ++j) above += nu[j - 1];
                    ContractionFn expect =
                        nu[i - 1] == 0 ? ContractionFn::one()
                                       : pfun(ParamMonomial{1, -n + 2 * above + 2 * i});
                    CHECK(f == expect);
                } else if (!L.barred && L.value == 0) {
                    int tot = 0;
                    for (int v : nu) tot += v;
                    ContractionFn expect =
                        ContractionFn::factor(ParamMonomial{-1, -n + 2 * tot - 1}, 1) *
                        ContractionFn::factor(ParamMonomial{1, -n + 2 * tot + 1}, -1);
                    expect.pref = ParamRational::monomial(ParamMonomial::s3(-2));
                    CHECK(f == expect);
                } else {
                    CHECK(f.is_one());
                }
            }
        }
    }
}

TEST_CASE("the T-ladder axioms recompute consistently along paths") {
    // <T_i(z) A_i^{-1}(w)> computed through the ladder path must equal the
    // closed p value with the path-dependent shift
    CartanMatrix C = gl_sym(2);
    CurrentWord t1 = CurrentWord::tbase(C, ParamMonomial::one());
    for (auto& [color, shift] : letter_path(C, {1, false})) t1.mul_aroot(C, color, shift, -1);
    CurrentWord probe;
    probe.mul_aroot(C, C.index_of({1, false}), ParamMonomial::one(), -1);
    CHECK(contract_words(C, t1, probe) == pfun(ParamMonomial::q(-1)));
    // and <T_i(z) A_i^{-1}(w) A_{i+1}^{-1}(q w)> = 1
    CurrentWord probe2 = probe;
    probe2.mul_aroot(C, C.index_of({2, false}), ParamMonomial::q(), -1);
    CHECK(contract_words(C, t1, probe2).is_one());
}

TEST_CASE("quadratic relations") {
    for (int n = 1; n <= 3; ++n) {
        CartanMatrix C = gl_sym(n);
        auto ee = check_EE(C);
        CHECK(ee.pass);
        auto ff = check_FF(C);
        CHECK(ff.pass);
    }
    for (int n = 2; n <= 3; ++n) {
        CartanMatrix C = osp(n);
        CHECK(check_EE(C).pass);
        CHECK(check_FF(C).pass);
    }
}

TEST_CASE("T-E and T-F commutators") {
    for (int n = 1; n <= 3; ++n) {
        CartanMatrix C = gl_sym(n);
        auto te = check_TE(C);
        CHECK(te.pass);
        REQUIRE(te.loci.size() >= 1);
        CHECK(te.loci[0].locus == QS(n + 1, 1));  // single locus z = q^{n+1} s1 w
        auto tf = check_TF(C);
        CHECK(tf.pass);
        CHECK(tf.loci[0].locus == QS(-n - 1, 0));
    }
    for (int n = 2; n <= 3; ++n) {
        CartanMatrix C = osp(n);
        auto te = check_TE(C);
        CHECK(te.pass);
        REQUIRE(te.loci.size() == 2);  // two loci z = q^{+-(n+1)} s1 w
        CHECK(check_TF(C).pass);
    }
}

TEST_CASE("E-F commutator with the residue towers") {
    for (int n = 1; n <= 2; ++n) {
        CartanMatrix C = gl_sym(n);
        auto ef = check_EF(C);
        CHECK(ef.pass);
        // loci are q^{2k-2n} s1^{-1} and q^{2n-2k} s1 for k = 0..n-1
        std::set<ParamMonomial> loci;
        for (const auto& lc : ef.loci) loci.insert(lc.locus);
        for (int k = 0; k < n; ++k) {
            CHECK(loci.count(ParamMonomial{-1, 2 * k - 2 * n}));
            CHECK(loci.count(ParamMonomial{1, 2 * n - 2 * k}));
        }
        CHECK(loci.size() == 2u * n);
    }
    CHECK_THROWS_AS(check_EF_osp_experimental(gl_sym(2)), wrong_family);
}

TEST_CASE("the k = 0 tower constant specializes correctly") {
    // a_{1,0} = q^{-1} s1^{-1} - q s1
    CartanMatrix C = gl_sym(1);
    ParamRational a = detail::ef_constant(C, 0);
    ParamRational expect(ParamLaurent::monomial(ParamMonomial{-1, -1}) -
                         ParamLaurent::monomial(ParamMonomial{1, 1}));
    CHECK(a == expect);
}

TEST_CASE("osp E-F commutator report") {
    CartanMatrix C = osp(2);
    auto rep = check_EF_osp_experimental(C);
    CHECK(rep.experimental);
    CHECK(rep.pass);  // informational
    CHECK(!rep.loci.empty());
    // every observed locus lies on the conjectured s1-free support
    for (const auto& lc : rep.loci) CHECK(lc.locus.a == 0);
}

TEST_CASE("residue-tower bijection: excitation pairs count column tableaux") {
    for (int n = 1; n <= 4; ++n)
        for (int k = 0; k < n; ++k) {
            long long pairs = 0;
            for (unsigned ma = 0; ma < (1u << n); ++ma)
                for (unsigned mb = 0; mb < (1u << n); ++mb) {
                    int amu = __builtin_popcount(ma), anu = __builtin_popcount(mb);
                    if ((n - amu) + anu <= k) ++pairs;
                }
            long long tableaux = 0;  // column fillings with k boxes
            for (int i = 0; i <= k; ++i) tableaux += binom(2 * n, i);
            CHECK(pairs == tableaux);
        }
}

TEST_CASE("reports carry exact timing and word-group counts") {
    CartanMatrix C = gl_sym(2);
    auto rep = check_EE(C);
    CHECK(rep.word_groups == 16);
    CHECK(rep.seconds >= 0.0);
    CHECK(rep.relation == "ee");
}

TEST_CASE("the quadratic check scales to rank four within budget") {
    CartanMatrix C = gl_sym(4);
    auto rep = check_EE(C);
    CHECK(rep.word_groups == 256);
    CHECK(rep.seconds < 60.0);
    // beyond rank three some pairwise products develop second-order poles at
    // the spurious loci, which need derivative words to cancel; the check
    // completes and reports them rather than asserting regularity there
    bool word_groups_cancel = true;
    for (const auto& note : rep.notes)
        if (note.find("word group") != std::string::npos) word_groups_cancel = false;
    CHECK(word_groups_cancel);  // the quadratic word identity itself still holds
}
