#ifndef QQFORGE_RELATIONS_HPP
#define QQFORGE_RELATIONS_HPP

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "qqforge/wcurrents.hpp"

namespace qqforge {

inline int worker_count() {
    if (const char* env = std::getenv("QQFORGE_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
}

// index-chunked parallel map with deterministic slot assignment
template <typename Fn>
void parallel_for(size_t count, Fn&& fn) {
    int workers = worker_count();
    if (workers <= 1 || count <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    for (int t = 0; t < workers; ++t)
        pool.emplace_back([&]() {
            for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

struct LocusCheck {
    ParamMonomial locus;  // z = locus * w
    bool expected = false;
    bool present = false;
    bool matched = false;
    std::string detail;
};

struct RelationReport {
    std::string relation;
    Family family = Family::custom;
    int n = 0;
    bool pass = false;
    bool experimental = false;
    double seconds = 0;
    size_t word_groups = 0;
    std::vector<LocusCheck> loci;
    std::vector<std::string> notes;

    std::string summary() const {
        std::ostringstream os;
        os << relation << " " << family_name(family) << " n=" << n << ": "
           << (experimental ? "report" : (pass ? "pass" : "FAIL"));
        return os.str();
    }
};

namespace detail {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

inline ParamRational tetf_constant() {
    // a = (s1 - s1^{-1})(s3 - s3^{-1})/(q - q^{-1})
    return ParamRational(ParamLaurent::t1() * ParamLaurent::t3(), ParamLaurent::t2());
}

inline ParamRational ef_constant(const CartanMatrix& C, int k) {
    // a_{n,k} = s3^{n-1} prod_{j=1}^{n-k} (q^{-j} s1^{-1} - q^j s1)
    //                    / prod_{j=1}^{n-k-1} (q^j - q^{-j})
    const int n = C.n;
    ParamRational a = ParamRational::monomial(ParamMonomial::s3(n - 1));
    for (int j = 1; j <= n - k; ++j)
        a = a * ParamRational(ParamLaurent::monomial(ParamMonomial{-1, -j}) -
                              ParamLaurent::monomial(ParamMonomial{1, j}));
    for (int j = 1; j <= n - k - 1; ++j)
        a = a / ParamRational(ParamLaurent::monomial(ParamMonomial::q(j)) -
                              ParamLaurent::monomial(ParamMonomial::q(-j)));
    return a;
}

}  // namespace detail

// Quadratic relation: (z - p w) X(z) X(w) + (w - p z) X(w) X(z) = 0 with
// p = s3^{+-2}, checked per normal-ordered word, plus regularity of each
// one-sided piece away from the single pole.
inline RelationReport check_EE(const CartanMatrix& C, bool barred = false) {
    detail::Timer timer;
    RelationReport rep;
    rep.relation = barred ? "ff" : "ee";
    rep.family = C.family;
    rep.n = C.n;
    DressedCurrent E = build_E(C, barred);
    ParamMonomial pole = ParamMonomial::s3(barred ? -2 : 2);

    const auto& terms = E.sum.terms;
    const size_t m = terms.size();
    std::vector<std::pair<bool, std::string>> results(m * m, {true, ""});
    std::vector<ContractionFn> front_products(m * m);
    parallel_for(m * m, [&](size_t idx) {
        size_t a = idx / m, b = idx % m;
        const auto& [ca, wa] = terms[a];
        const auto& [cb, wb] = terms[b];
        ContractionFn fab = contract_words(C, wa, wb);
        ContractionFn fba = contract_words(C, wb, wa);
        ContractionFn front = ContractionFn::factor(pole, 1);
        front_products[idx] = front * fab;
        // the word identity: (z - p w) <E_a(z) E_b(w)> + (w - p z) <E_b(w) E_a(z)> = 0
        TRatio group;
        group.add(front * fab, ca * cb);
        group.add((front * fba).swapped(), ca * cb);
        if (!group.is_zero()) results[idx] = {false, "word group does not cancel"};
    });
    rep.word_groups = m * m;
    rep.pass = true;
    for (size_t idx = 0; idx < results.size(); ++idx)
        if (!results[idx].first) {
            rep.pass = false;
            rep.notes.push_back("pair (" + std::to_string(idx / m) + "," +
                                std::to_string(idx % m) + "): " + results[idx].second);
        }

    // Regularity away from the quadratic locus: individual products may still
    // have simple poles, but their residues cancel between pairs whose merged
    // one-variable words coincide.
    std::map<ParamMonomial, CurrentSum> spurious;
    bool simple = true;
    std::set<std::string> higher_seen;
    for (size_t idx = 0; idx < m * m; ++idx) {
        size_t a = idx / m, b = idx % m;
        const ContractionFn& g = front_products[idx];
        for (const auto& p : poles_and_residues(g)) {
            if (p.order > 1) {
                // cancelling these requires derivative words, which the
                // pure-vertex-word model does not carry
                simple = false;
                std::string key = "pairwise pole of order " + std::to_string(p.order) + " at " +
                                  p.locus.str() + " (beyond the vertex-word model)";
                if (higher_seen.insert(key).second) rep.notes.push_back(key);
                continue;
            }
            spurious[p.locus].add(terms[a].first * terms[b].first * p.delta_coeff,
                                  terms[a].second.tau(p.locus) * terms[b].second);
        }
    }
    if (!simple) rep.pass = false;
    for (auto& [locus, sum] : spurious) {
        sum.normalize();
        LocusCheck lc;
        lc.locus = locus;
        lc.expected = false;
        lc.present = !sum.terms.empty();
        lc.matched = sum.terms.empty();
        if (!lc.matched) {
            lc.detail = "residues at a spurious locus do not cancel";
            rep.pass = false;
        }
        rep.loci.push_back(lc);
    }

    LocusCheck lc;
    lc.locus = pole;
    lc.expected = true;
    lc.present = true;
    lc.matched = rep.pass;
    rep.loci.insert(rep.loci.begin(), lc);
    rep.seconds = timer.seconds();
    return rep;
}

inline RelationReport check_FF(const CartanMatrix& C) { return check_EE(C, true); }

namespace detail {

inline CurrentSum scaled(const CurrentSum& s, const ParamRational& c) {
    CurrentSum out;
    for (const auto& [coef, w] : s.terms) out.add(c * coef, w);
    out.normalize();
    return out;
}

inline CurrentSum tau_sum(const CurrentSum& s, ParamMonomial mu) {
    CurrentSum out;
    for (const auto& [coef, w] : s.terms) out.add(coef, w.tau(mu));
    out.normalize();
    return out;
}

inline std::string diff_sums(const CartanMatrix& C, const CurrentSum& got,
                             const CurrentSum& want) {
    std::ostringstream os;
    CurrentSum g = got, x = want;
    g.normalize();
    x.normalize();
    size_t ig = 0, ix = 0;
    int shown = 0;
    while ((ig < g.terms.size() || ix < x.terms.size()) && shown < 4) {
        if (ig < g.terms.size() && ix < x.terms.size() && g.terms[ig].second == x.terms[ix].second) {
            if (g.terms[ig].first != x.terms[ix].first) {
                os << " [coefficient differs on " << g.terms[ig].second.str(C) << ": got "
                   << g.terms[ig].first.str() << " want " << x.terms[ix].first.str()
                   << " ratio " << (g.terms[ig].first / x.terms[ix].first).str() << "]";
                ++shown;
            }
            ++ig;
            ++ix;
        } else if (ix == x.terms.size() ||
                   (ig < g.terms.size() && g.terms[ig].second < x.terms[ix].second)) {
            os << " [unexpected word " << g.terms[ig].second.str(C) << "]";
            ++shown;
            ++ig;
        } else {
            os << " [missing word " << x.terms[ix].second.str(C) << "]";
            ++shown;
            ++ix;
        }
    }
    return os.str();
}

// identity-layer comparison word for the T-E and T-F commutator images:
// :W'(locus w) Lambda'(w) Lambda'(shift w)^{-1} X(shift w): where the dressing
// ratio is built from the same primed boson as X, so it telescopes to a single
// base at unit shift
inline CurrentWord tetf_word(const CartanMatrix& C, ParamMonomial locus, ParamMonomial shift,
                             const std::vector<int>& nu, bool for_f) {
    CurrentWord w;
    w.mul_pure_base(Base::WPrime, locus, 1);
    w.mul_pure_base(for_f ? Base::LamBarPrime : Base::LamPrime, ParamMonomial::one(), 1);
    YMonomial content = xi_tilde(C, nu);
    if (for_f) content = bar_map(C, content);
    w.ycontent = content.tau(shift);
    return w;
}

}  // namespace detail

// [T(z), E(w)] and [T(z), F(w)] against the closed commutator form.
inline RelationReport check_TE(const CartanMatrix& C, bool for_f = false) {
    detail::Timer timer;
    RelationReport rep;
    rep.relation = for_f ? "tf" : "te";
    rep.family = C.family;
    rep.n = C.n;
    if (C.family != Family::gl_sym && C.family != Family::osp) {
        rep.notes.push_back("unsupported family");
        return rep;
    }
    const int n = C.n;
    DressedCurrent T = build_T(C);
    DressedCurrent X = for_f ? build_F(C) : build_E(C);
    std::vector<ParamMonomial> cancelled;
    auto deltas = commutator_delta(C, T.sum, X.sum, nullptr, &cancelled);
    for (ParamMonomial c : cancelled)
        rep.notes.push_back("residues at z = " + c.str() + " w cancel after word grouping");

    // The upper tower (locus q^{n+1} s1) carries -q s1 a, the lower tower
    // carries s3 a; the s1 on the upper side is the zero-mode constant of the
    // Lambda dressing, the same one visible in the quadratic-current and E-F
    // constants below.
    ParamRational a = detail::tetf_constant();
    ParamRational upper =
        -(a * ParamRational::monomial(ParamMonomial::q() * ParamMonomial::s1()));
    ParamRational lower = a * ParamRational::monomial(ParamMonomial::s3());

    // family table of expected loci: (locus, coefficient, tau shift of X)
    struct Expected {
        ParamMonomial locus;
        ParamRational coeff;
        ParamMonomial shift;
    };
    std::vector<Expected> expected;
    if (C.family == Family::gl_sym) {
        if (!for_f)
            expected.push_back({ParamMonomial{1, n + 1}, upper, ParamMonomial::q(2)});
        else
            expected.push_back({ParamMonomial{0, -n - 1}, lower, ParamMonomial::q(-2)});
    } else {
        expected.push_back({ParamMonomial{1, n + 1}, upper, ParamMonomial::q(2)});
        expected.push_back({ParamMonomial{1, -n - 1}, lower, ParamMonomial::q(-2)});
    }

    rep.pass = true;
    for (const auto& exp : expected) {
        LocusCheck lc;
        lc.locus = exp.locus;
        lc.expected = true;
        CurrentSum want;
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            std::vector<int> nu(n);
            for (int i = 0; i < n; ++i) nu[i] = (mask >> i) & 1;
            want.add(exp.coeff * xi_coeff(C, nu),
                     detail::tetf_word(C, exp.locus, exp.shift, nu, for_f));
        }
        want.normalize();
        for (const auto& d : deltas)
            if (d.locus == exp.locus) {
                lc.present = true;
                lc.matched = d.sum == want;
                if (!lc.matched) lc.detail = detail::diff_sums(C, d.sum, want);
            }
        if (!lc.present) lc.detail = "expected locus absent";
        if (!lc.present || !lc.matched) rep.pass = false;
        rep.loci.push_back(lc);
    }
    for (const auto& d : deltas) {
        bool known = false;
        for (const auto& exp : expected)
            if (d.locus == exp.locus) known = true;
        if (!known) {
            LocusCheck lc;
            lc.locus = d.locus;
            lc.present = true;
            lc.detail = "spurious locus with nonvanishing word sum";
            rep.loci.push_back(lc);
            rep.pass = false;
        }
    }
    rep.word_groups = deltas.size();
    rep.seconds = timer.seconds();
    return rep;
}

inline RelationReport check_TF(const CartanMatrix& C) { return check_TE(C, true); }

// [E(z), F(w)] for the symmetric gl family: the residues are the dressed
// one-box-tower currents with the closed constants.
inline RelationReport check_EF(const CartanMatrix& C) {
    detail::Timer timer;
    RelationReport rep;
    rep.relation = "ef";
    rep.family = C.family;
    rep.n = C.n;
    if (C.family != Family::gl_sym) {
        rep.notes.push_back("unsupported family");
        return rep;
    }
    const int n = C.n;
    DressedCurrent E = build_E(C);
    DressedCurrent F = build_F(C);
    auto deltas = commutator_delta(C, E.sum, F.sum);

    rep.pass = true;
    std::vector<std::pair<ParamMonomial, CurrentSum>> expected;
    for (int k = 0; k < n; ++k) {
        ParamRational a = detail::ef_constant(C, k);
        // unbarred tower at z = q^{2k-2n} s1^{-1} w with constant -s3 a_{n,k};
        // the barred tower at z = q^{2n-2k} s1 w carries +s3 a_{n,k}
        ParamMonomial locus_t{-1, 2 * k - 2 * n};
        CurrentSum want_t = detail::tau_sum(build_Tk(C, k, false), ParamMonomial{0, k - n});
        expected.push_back(
            {locus_t, detail::scaled(want_t, -(a * ParamRational::monomial(ParamMonomial::s3())))});
        ParamMonomial locus_b{1, 2 * n - 2 * k};
        CurrentSum want_b = detail::tau_sum(build_Tk(C, k, true), ParamMonomial{1, n - k});
        expected.push_back(
            {locus_b, detail::scaled(want_b, a * ParamRational::monomial(ParamMonomial::s3(1)))});
    }

    for (const auto& [locus, want] : expected) {
        LocusCheck lc;
        lc.locus = locus;
        lc.expected = true;
        for (const auto& d : deltas)
            if (d.locus == locus) {
                lc.present = true;
                lc.matched = d.sum == want;
                if (!lc.matched) lc.detail = detail::diff_sums(C, d.sum, want);
            }
        if (!lc.present) lc.detail = "expected locus absent";
        if (!lc.present || !lc.matched) rep.pass = false;
        rep.loci.push_back(lc);
    }
    for (const auto& d : deltas) {
        bool known = false;
        for (const auto& [locus, want] : expected)
            if (d.locus == locus) known = true;
        if (!known) {
            LocusCheck lc;
            lc.locus = d.locus;
            lc.present = true;
            lc.detail = "locus outside the residue tower";
            rep.loci.push_back(lc);
            rep.pass = false;
        }
    }
    rep.word_groups = deltas.size();
    rep.seconds = timer.seconds();
    return rep;
}

// osp E-F commutator: reported, not asserted.  The conjectured support is
// z = q^{2(n-k)} w and its inverse tower; constants are left free.
inline RelationReport check_EF_osp_experimental(const CartanMatrix& C) {
    detail::Timer timer;
    RelationReport rep;
    rep.relation = "ef-osp-exp";
    rep.family = C.family;
    rep.n = C.n;
    rep.experimental = true;
    if (C.family != Family::osp) throw wrong_family("ef-osp-exp: osp only");
    DressedCurrent E = build_E(C);
    DressedCurrent F = build_F(C);
    std::vector<std::pair<ParamMonomial, int>> higher;
    auto deltas = commutator_delta(C, E.sum, F.sum, &higher);
    rep.word_groups = deltas.size();
    std::set<std::string> seen_higher;
    for (const auto& [locus, order] : higher) {
        std::string key = "pairwise pole of order " + std::to_string(order) + " at z = " +
                          locus.str() + " w (derivative terms; first-order part reported)";
        if (seen_higher.insert(key).second) rep.notes.push_back(key);
    }
    for (const auto& d : deltas) {
        LocusCheck lc;
        lc.locus = d.locus;
        lc.present = true;
        bool pattern = false;
        for (int k = 0; k < C.n; ++k)
            if (d.locus == ParamMonomial::q(2 * (C.n - k)) ||
                d.locus == ParamMonomial::q(-2 * (C.n - k)))
                pattern = true;
        lc.matched = pattern;
        lc.detail = pattern ? "matches the conjectured support pattern"
                            : "outside the conjectured support pattern";
        std::ostringstream os;
        os << "locus " << d.locus.str() << ": " << d.sum.terms.size() << " words";
        if (!d.sum.terms.empty()) os << ", first coefficient " << d.sum.terms[0].first.str();
        rep.notes.push_back(os.str());
        rep.loci.push_back(lc);
    }
    rep.pass = true;  // informational
    rep.seconds = timer.seconds();
    return rep;
}

}  // namespace qqforge

#endif
