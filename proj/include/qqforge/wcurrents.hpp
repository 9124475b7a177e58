#ifndef QQFORGE_WCURRENTS_HPP
#define QQFORGE_WCURRENTS_HPP

#include <functional>
#include <optional>

#include "qqforge/contraction.hpp"

namespace qqforge {

// A bosonized qq-character: exact coefficient per monomial current.
struct Bosonization {
    const CartanMatrix* cartan = nullptr;
    std::map<YMonomial, ParamRational> coeff;
};

// ---------------------------------------------------------------------------
// screening residues and pairing

struct ScreeningEntry {
    YMonomial mono;
    ParamMonomial locus;    // pole of <S_i(z) m(w)> at z = locus * w
    ParamRational d;        // normalized residue
    int hom_degree = 0;     // homogeneity degree of the contraction
};

struct ScreeningPair {
    ParamMonomial step;     // the A_{i,step} connecting the two members
    YMonomial upper, lower; // lower = upper * A^{-1}
    bool lower_present = false;
    ParamRational net;      // c_up d_up + c_lo d_lo, zero for a true bosonization
};

struct PairingReport {
    int color = 0;
    bool dual = false;
    std::vector<ScreeningPair> pairs;
    std::vector<ScreeningEntry> unpaired;  // entries whose partner operator never occurs
    bool all_cancel() const {
        if (!unpaired.empty()) return false;
        for (const auto& p : pairs)
            if (!p.net.is_zero()) return false;
        return true;
    }
};

namespace detail {

// <S_i(z) m(w)> (or the dual variant) as a factored rational function.
inline ContractionFn screening_contraction(const CartanMatrix& C, int color, const YMonomial& m,
                                           bool dual) {
    ContractionFn f;
    for (const auto& [key, e] : m.exps()) {
        ContractionFn g = dual ? prim_dual_s_y(C, color, key.color)
                               : prim_s_y(C, color, key.color);
        f *= g.subst(ParamMonomial::one(), key.shift).pow(e);
    }
    return f;
}

inline std::vector<ScreeningEntry> screening_entries(const CartanMatrix& C, int color,
                                                     const YMonomial& m, bool dual) {
    std::vector<ScreeningEntry> out;
    ContractionFn f = screening_contraction(C, color, m, dual);
    for (const auto& p : poles_and_residues(f)) {
        if (p.order > 1) throw higher_order_pole("screening: pole of order > 1");
        out.push_back({m, p.locus, p.residue, f.degree()});
    }
    return out;
}

}  // namespace detail

// For each term of V and each screening pole, pair the residue with the one
// produced by the affine-root partner term: :S_i(s3 mu z) m(z): is the same
// operator as :S_i(s3^{-1} mu z) (m A_{i,mu}^{-1})(z):.  The dual screening
// uses the stilde root in place of s3.
inline PairingReport screening_pairs(const Bosonization& V, int color, bool dual = false) {
    const CartanMatrix& C = *V.cartan;
    if (dual && C.fermionic[color]) throw not_bosonic("dual screening: fermionic color");
    ParamMonomial half = dual ? C.stilde(color) : ParamMonomial::s3();

    std::map<std::pair<YMonomial, ParamMonomial>, ScreeningEntry> entries;
    for (const auto& [m, c] : V.coeff)
        for (const auto& e : detail::screening_entries(C, color, m, dual))
            entries[{m, e.locus}] = e;

    PairingReport rep;
    rep.color = color;
    rep.dual = dual;
    // The entries identified with one normal-ordered operator form a chain
    // m, m A^{-1}, m A^{-1} A^{-1}, ... with loci stepping by half^{-2};
    // in practice the chains have length two, but group them in full.
    std::set<std::pair<YMonomial, ParamMonomial>> seen;
    for (const auto& [key, e] : entries) {
        if (seen.count(key)) continue;
        // walk to the head of the chain
        YMonomial m = key.first;
        ParamMonomial b = key.second;
        while (true) {
            YMonomial up = m * affine_root(C, color, b * half);
            std::pair<YMonomial, ParamMonomial> ukey{up, b * half * half};
            if (!entries.count(ukey)) break;
            m = up;
            b = b * half * half;
        }
        // collect the chain downward
        ScreeningPair pr;
        pr.upper = m;
        pr.step = b / half;
        pr.net = ParamRational();
        int members = 0;
        int hom = 0;
        while (true) {
            auto it = entries.find({m, b});
            if (it == entries.end()) break;
            seen.insert({m, b});
            if (members == 0) hom = it->second.hom_degree;
            else if (hom != it->second.hom_degree)
                throw error("screening_pairs: mismatched homogeneity degrees");
            pr.net += V.coeff.at(m) * it->second.d;
            ++members;
            pr.lower = m;
            ParamMonomial mu = b / half;
            m = m * affine_root(C, color, mu).inv();
            b = mu / half;
            if (!V.coeff.count(m)) break;
        }
        pr.lower_present = members >= 2;
        if (members >= 2) rep.pairs.push_back(std::move(pr));
        else rep.unpaired.push_back(entries.at(key));
    }
    return rep;
}

// Solve the coefficients of a bosonization from screening cancellation,
// anchored at a chosen top term.  The result is checked on every pairing.
inline Bosonization bosonize(const QQChar& chi, const YMonomial& top,
                             const ParamRational& top_coeff) {
    const CartanMatrix& C = *chi.cartan();
    if (chi.coeff(top) != 1) throw error("bosonize: top monomial not in the character");

    struct Edge {
        YMonomial to;
        ParamRational ratio;  // c_to / c_from
    };
    std::map<YMonomial, std::vector<Edge>> graph;
    for (int color = 0; color < C.rank(); ++color) {
        std::map<std::pair<YMonomial, ParamMonomial>, ScreeningEntry> entries;
        for (const auto& [m, c] : chi.terms())
            for (const auto& e : detail::screening_entries(C, color, m, false))
                entries[{m, e.locus}] = e;
        ParamMonomial s3 = ParamMonomial::s3();
        for (const auto& [key, e] : entries) {
            const auto& [m, b] = key;
            ParamMonomial mu = b / s3;
            YMonomial partner = m * affine_root(C, color, mu).inv();
            if (!chi.terms().count(partner)) continue;
            auto it = entries.find({partner, mu / s3});
            if (it == entries.end())
                throw unpaired_residue("bosonize: partner lost its pole");
            ParamRational ratio = -(e.d / it->second.d);
            graph[m].push_back({partner, ratio});
            graph[partner].push_back({m, ratio.inv()});
        }
    }

    Bosonization out;
    out.cartan = &C;
    out.coeff[top] = top_coeff;
    std::vector<YMonomial> queue = {top};
    while (!queue.empty()) {
        YMonomial m = queue.back();
        queue.pop_back();
        ParamRational cm = out.coeff.at(m);
        for (const auto& edge : graph[m]) {
            ParamRational want = cm * edge.ratio;
            auto it = out.coeff.find(edge.to);
            if (it == out.coeff.end()) {
                out.coeff[edge.to] = want;
                queue.push_back(edge.to);
            } else if (it->second != want) {
                throw inconsistent_cycle("bosonize: inconsistent coefficient cycle");
            }
        }
    }
    if (out.coeff.size() != chi.terms().size())
        throw unpaired_residue("bosonize: character not connected by screening pairs");
    for (int color = 0; color < C.rank(); ++color)
        if (!screening_pairs(out, color).all_cancel())
            throw unpaired_residue("bosonize: residues do not cancel");
    return out;
}

// ---------------------------------------------------------------------------
// two-term ratios (the local form of the coefficient equations)

// ratio c_{m2}/c_{m1} for m2 = m1 A_{i,mu}^{-1}, from the screening residues
inline ParamRational two_term_ratio(const CartanMatrix& C, const YMonomial& m1,
                                    const YMonomial& m2, int color) {
    ParamMonomial mu;
    if (!affine_step(C, color, m1, m2, mu)) throw not_adjacent("two_term_ratio: not an affine step");
    ParamMonomial s3 = ParamMonomial::s3();
    ContractionFn f1 = detail::screening_contraction(C, color, m1, false);
    ContractionFn f2 = detail::screening_contraction(C, color, m2, false);
    auto residue_at = [](const ContractionFn& f, ParamMonomial b) -> ParamRational {
        for (const auto& p : poles_and_residues(f))
            if (p.locus == b) return p.residue;
        throw not_adjacent("two_term_ratio: expected screening pole absent");
    };
    return -(residue_at(f1, s3 * mu) / residue_at(f2, mu / s3));
}

// closed-form ratio for the standard gl family
inline ParamRational twoterm_closed(const CartanMatrix& C, const YMonomial& m1,
                                    const YMonomial& m2, int color) {
    if (C.family != Family::gl_std) throw unsupported_family("twoterm_closed: gl_std only");
    ParamMonomial mu;
    if (!affine_step(C, color, m1, m2, mu)) throw not_adjacent("twoterm_closed: not an affine step");
    auto one_minus = [](ParamMonomial c) {
        return ParamRational(ParamLaurent(1) - ParamLaurent::monomial(c));
    };
    auto w2 = [&](ParamMonomial x) {
        return one_minus(ParamMonomial::s3(2) * x) * one_minus(ParamMonomial::s1(2) * x) /
               (one_minus(x) * one_minus(ParamMonomial::q(-2) * x));
    };
    auto w1 = [&](ParamMonomial x) {
        return one_minus(ParamMonomial::s3(2) * x) * one_minus(ParamMonomial::q(2) * x) /
               (one_minus(x) * one_minus(ParamMonomial::s1(-2) * x));
    };
    auto w0 = [&](ParamMonomial x) {
        return ParamRational::monomial(ParamMonomial::s3(-2)) *
               one_minus(ParamMonomial::s3(2) * x) / one_minus(x);
    };

    ColorLabel lab = C.labels[color];
    ParamMonomial a;  // the slot removed by the step
    ParamRational r;
    std::function<ParamRational(ParamMonomial)> omega;
    if (C.fermionic[color]) {
        a = mu * ParamMonomial::s3();
        r = ParamRational(-1);
        omega = w0;
    } else if (!lab.barred) {
        a = mu * ParamMonomial::q(-1);
        r = ParamRational::monomial(ParamMonomial::q(-2));
        omega = w2;
    } else {
        a = mu * ParamMonomial::s1(-1);
        r = ParamRational::monomial(ParamMonomial::s1(-2));
        omega = w1;
    }
    for (const auto& [key, e] : m1.exps()) {
        if (key.color != color || key.shift == a) continue;
        r = r * omega(key.shift / a).pow(e);
    }
    return r;
}

// check c_{T1,T2} c_{T2,T4} = c_{T1,T3} c_{T3,T4} on every elementary square
inline bool path_consistency(const QQChar& chi) {
    const CartanMatrix& C = *chi.cartan();
    struct Step {
        YMonomial to;
        int color;
    };
    std::map<YMonomial, std::vector<Step>> steps;
    std::vector<YMonomial> monos;
    for (const auto& [m, c] : chi.terms()) monos.push_back(m);
    for (const auto& u : monos)
        for (const auto& v : monos) {
            if (u == v) continue;
            for (int color = 0; color < C.rank(); ++color) {
                ParamMonomial mu;
                if (affine_step(C, color, u, v, mu)) steps[u].push_back({v, color});
            }
        }
    for (const auto& u : monos) {
        const auto& out = steps[u];
        for (size_t a = 0; a < out.size(); ++a)
            for (size_t b = a + 1; b < out.size(); ++b) {
                const YMonomial &m1 = out[a].to, &m2 = out[b].to;
                for (const auto& s1 : steps[m1]) {
                    for (const auto& s2 : steps[m2]) {
                        if (!(s1.to == s2.to)) continue;
                        ParamRational lhs = two_term_ratio(C, u, m1, out[a].color) *
                                            two_term_ratio(C, m1, s1.to, s1.color);
                        ParamRational rhs = two_term_ratio(C, u, m2, out[b].color) *
                                            two_term_ratio(C, m2, s2.to, s2.color);
                        if (lhs != rhs) return false;
                    }
                }
            }
    }
    return true;
}

inline bool dual_screening_check(const Bosonization& V, int color) {
    return screening_pairs(V, color, true).all_cancel();
}

// ---------------------------------------------------------------------------
// the rationalized currents E, F, T

// canonical hypercube path: pop the lowest raised index; an index-1 pop is an
// injection, an index-i pop moves the excitation down to i-1
inline std::vector<std::pair<int, ParamMonomial>> hypercube_path(const CartanMatrix& C,
                                                                 std::vector<int> nu) {
    const int n = C.n;
    std::vector<std::pair<int, ParamMonomial>> rev;
    auto above = [&](int i) {
        int s = 0;
        for (int j = i + 1; j <= n; ++j) s += nu[j - 1];
        return s;
    };
    while (true) {
        int low = 0;
        for (int i = 1; i <= n; ++i)
            if (nu[i - 1]) { low = i; break; }
        if (low == 0) break;
        if (low == 1) {
            nu[0] = 0;
            rev.push_back({C.index_of({1, false}), ParamMonomial{1, 2 * above(1) + 1}});
        } else {
            nu[low - 1] = 0;
            nu[low - 2] = 1;
            rev.push_back({C.index_of({low, false}), ParamMonomial{1, 2 * above(low) + low}});
        }
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
}

// the Vxi coefficient (-1)^{|nu|} q^{n(n-1)/2 - 2 sum (i-1) nu_i}
inline ParamRational xi_coeff(const CartanMatrix& C, const std::vector<int>& nu) {
    int total = 0, weighted = 0;
    for (size_t i = 0; i < nu.size(); ++i) {
        total += nu[i];
        weighted += static_cast<int>(i) * nu[i];
    }
    int power = C.n * (C.n - 1) / 2 - 2 * weighted;
    return ParamRational::monomial(ParamMonomial::q(power), BigRat(total % 2 ? -1 : 1));
}

struct DressedCurrent {
    CurrentSum sum;
    std::map<std::vector<int>, CurrentWord> words;  // index -> word (E/F only)
};

inline CurrentWord e_word(const CartanMatrix& C, const std::vector<int>& nu, bool bar) {
    CurrentWord w = CurrentWord::lambda(C, ParamMonomial::one(), bar);
    for (const auto& [color, shift] : hypercube_path(C, nu))
        w.mul_aroot(C, bar ? C.bar[color] : color, shift, -1);
    YMonomial expect = xi_tilde(C, nu);
    if (bar) expect = bar_map(C, expect);
    if (w.ycontent != expect) throw error("e_word: path does not certify the closed form");
    if (!w.certified(C)) throw error("e_word: skeleton certificate failed");
    return w;
}

inline DressedCurrent build_E(const CartanMatrix& C, bool bar = false) {
    if (C.family != Family::gl_sym && C.family != Family::osp)
        throw unsupported_family("build_E: gl_sym or osp only");
    DressedCurrent out;
    const int n = C.n;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> nu(n);
        for (int i = 0; i < n; ++i) nu[i] = (mask >> i) & 1;
        CurrentWord w = e_word(C, nu, bar);
        out.sum.add(xi_coeff(C, nu), w);
        out.words[nu] = w;
    }
    out.sum.normalize();
    return out;
}

inline DressedCurrent build_F(const CartanMatrix& C) { return build_E(C, true); }

// the one-box coefficient of V_{chi_{1,1}} per family
inline ParamRational vchi1_coeff(const CartanMatrix& C, Letter L) {
    ParamRational mid(ParamLaurent::t1(), ParamLaurent::t2());
    switch (C.family) {
        case Family::gl_sym:
            if (L.value == 0) return mid;
            if (!L.barred) return ParamRational::monomial(ParamMonomial{1, 2 * L.value - 1});
            return ParamRational::monomial(ParamMonomial{-1, 1 - 2 * L.value});
        case Family::osp:
            if (L.value == 0) return mid;
            if (!L.barred) return ParamRational::monomial(ParamMonomial{1, 2 * L.value - 1});
            return ParamRational::monomial(ParamMonomial{-1, 1 - 2 * L.value});
        case Family::gl_std:
            if (!L.barred)
                return ParamRational(ParamLaurent::t2()) *
                       ParamRational::monomial(ParamMonomial::q(2 * L.value - 1));
            return ParamRational(ParamLaurent::t1()) *
                   ParamRational::monomial(ParamMonomial::s1(1 - 2 * L.value));
        default:
            throw unsupported_family("vchi1_coeff");
    }
}

// path of affine steps from the top letter to L along the one-box ladder
inline std::vector<std::pair<int, ParamMonomial>> letter_path(const CartanMatrix& C, Letter L) {
    const int n = C.n;
    std::vector<std::pair<int, ParamMonomial>> path;
    auto push = [&](int v, bool bar, ParamMonomial mu) {
        path.push_back({C.index_of({v, bar}), mu});
    };
    if (C.family == Family::gl_sym) {
        int upto = L.barred || L.value == 0 ? 1 : L.value;
        for (int v = n; v > upto; --v) push(v, false, ParamMonomial::q(n - v + 1));
        if (L.barred || L.value == 0) push(1, false, ParamMonomial::q(n));
        if (L.barred)
            for (int v = 1; v <= L.value; ++v) push(v, true, ParamMonomial{1, n + v - 1});
        return path;
    }
    if (C.family == Family::osp) {
        bool past_middle = L.barred || L.value == 0;
        int upto = past_middle ? 1 : L.value;
        for (int v = n; v > upto; --v) push(v, false, ParamMonomial::q(n - v + 1));
        if (L.value == 0 && !L.barred) push(1, false, ParamMonomial::q(n));
        if (L.value == 0 && L.barred) push(1, true, ParamMonomial::q(n));
        if (L.barred && L.value >= 1) {
            push(1, false, ParamMonomial::q(n));
            push(1, true, ParamMonomial::q(n));
            for (int v = 2; v <= L.value; ++v) push(v, false, ParamMonomial::q(n + v - 1));
        }
        return path;
    }
    throw unsupported_family("letter_path: gl_sym or osp only");
}

inline DressedCurrent build_T(const CartanMatrix& C) {
    if (C.family != Family::gl_sym && C.family != Family::osp)
        throw unsupported_family("build_T: gl_sym or osp only");
    DressedCurrent out;
    for (Letter L : alphabet(C)) {
        CurrentWord w = CurrentWord::tbase(C, ParamMonomial::one());
        for (const auto& [color, shift] : letter_path(C, L)) w.mul_aroot(C, color, shift, -1);
        if (w.ycontent != letter_monomial(C, L))
            throw error("build_T: ladder path does not reach the letter monomial");
        if (!w.certified(C)) throw error("build_T: skeleton certificate failed");
        out.sum.add(vchi1_coeff(C, L), w);
    }
    out.sum.normalize();
    return out;
}

// closed-form coefficient of V_{chi_{k,1}} on a column filling
inline ParamRational cchi_coeff(const CartanMatrix& C, const std::vector<Letter>& filling) {
    ParamRational c(1);
    int zeros = 0;
    for (Letter L : filling) {
        if (L.value == 0) {
            ++zeros;
            // (q^{-j+1} s1 - q^{j-1} s1^{-1}) / (q^j - q^{-j}) at j = zeros
            ParamLaurent numr = ParamLaurent::monomial(ParamMonomial{1, 1 - zeros}) -
                                ParamLaurent::monomial(ParamMonomial{-1, zeros - 1});
            ParamLaurent denr = ParamLaurent::monomial(ParamMonomial::q(zeros)) -
                                ParamLaurent::monomial(ParamMonomial::q(-zeros));
            c = c * ParamRational(numr, denr);
        } else {
            c = c * vchi1_coeff(C, L);
        }
    }
    return c;
}

// T_k(z) = :Lambda'(q^{k-n} s1^{-1} z) LambdaBar'(q^{n-k} z) V_{chi_{k,1}}(z):
// and its bar image.  These are identity-layer comparison words for the E-F
// commutator; the primed bases carry no dressing.
inline CurrentSum build_Tk(const CartanMatrix& C, int k, bool bar) {
    if (C.family != Family::gl_sym) throw unsupported_family("build_Tk: gl_sym only");
    const int n = C.n;
    ParamMonomial lam_shift{-1, k - n};   // q^{k-n} s1^{-1}
    ParamMonomial lamb_shift{0, n - k};   // q^{n-k}
    if (bar) std::swap(lam_shift, lamb_shift);
    CurrentSum out;
    if (k == 0) {
        CurrentWord w;
        w.mul_pure_base(Base::LamPrime, lam_shift, 1);
        w.mul_pure_base(Base::LamBarPrime, lamb_shift, 1);
        out.add(ParamRational(1), w);
        return out;
    }
    auto alpha = alphabet(C);
    // enumerate column fillings alongside the monomials so the closed-form
    // coefficients attach to the right terms
    std::vector<int> fill(k, 0);
    std::function<void(int, int)> rec = [&](int box, int min_letter) {
        if (box == k) {
            YMonomial m;
            std::vector<Letter> letters;
            for (int s = 0; s < k; ++s) {
                Letter L = alpha[fill[s]];
                letters.push_back(L);
                YMonomial lm = letter_monomial(C, L);
                if (bar) lm = bar_map(C, lm);
                m = m * lm.tau(ParamMonomial::q(k - 1 - 2 * s));
            }
            CurrentWord w;
            w.mul_pure_base(Base::LamPrime, lam_shift, 1);
            w.mul_pure_base(Base::LamBarPrime, lamb_shift, 1);
            w.ycontent = m;
            out.add(cchi_coeff(C, letters), w);
            return;
        }
        for (int a = min_letter; a < static_cast<int>(alpha.size()); ++a) {
            fill[box] = a;
            rec(box + 1, alpha[a].value == 0 ? a : a + 1);
        }
    };
    rec(0, 0);
    out.normalize();
    return out;
}

}  // namespace qqforge

#endif
