#ifndef QQFORGE_CONTRACTION_HPP
#define QQFORGE_CONTRACTION_HPP

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qqforge/qqchar.hpp"

namespace qqforge {

// Rational function of (z, w) in factored form:
//   pref * z^zpow * w^wpow * prod_k (z - c_k w)^{e_k}
// with monomial roots c_k.  Contractions of the dressed currents all live here.
struct ContractionFn {
    ParamRational pref = ParamRational(1);
    int zpow = 0;
    int wpow = 0;
    std::map<ParamMonomial, int> roots;

    static ContractionFn one() { return {}; }
    static ContractionFn factor(ParamMonomial c, int e) {
        ContractionFn f;
        f.roots[c] = e;
        return f;
    }

    bool is_one() const { return pref.is_one() && zpow == 0 && wpow == 0 && roots.empty(); }
    int degree() const {
        int d = zpow + wpow;
        for (const auto& [c, e] : roots) d += e;
        return d;
    }

    ContractionFn& operator*=(const ContractionFn& o) {
        pref *= o.pref;
        zpow += o.zpow;
        wpow += o.wpow;
        for (const auto& [c, e] : o.roots) {
            roots[c] += e;
            if (roots[c] == 0) roots.erase(c);
        }
        return *this;
    }
    friend ContractionFn operator*(ContractionFn a, const ContractionFn& b) { return a *= b; }

    ContractionFn pow(int e) const {
        ContractionFn f;
        if (e == 0) return f;
        f.zpow = zpow * e;
        f.wpow = wpow * e;
        for (const auto& [c, k] : roots) f.roots[c] = k * e;
        f.pref = ParamRational(1);
        int n = e < 0 ? -e : e;
        ParamRational base = e < 0 ? pref.inv() : pref;
        for (int i = 0; i < n; ++i) f.pref *= base;
        return f;
    }

    // substitute z -> a z, w -> b w
    ContractionFn subst(ParamMonomial a, ParamMonomial b) const {
        ContractionFn f;
        f.zpow = zpow;
        f.wpow = wpow;
        int esum = 0;
        for (const auto& [c, e] : roots) {
            f.roots[c * b / a] += e;
            esum += e;
        }
        for (auto it = f.roots.begin(); it != f.roots.end();)
            it = it->second == 0 ? f.roots.erase(it) : std::next(it);
        ParamMonomial scale = a.pow(zpow + esum) * b.pow(wpow);
        f.pref = pref * ParamRational::monomial(scale);
        return f;
    }

    friend bool operator==(const ContractionFn& a, const ContractionFn& b) {
        return a.pref == b.pref && a.zpow == b.zpow && a.wpow == b.wpow && a.roots == b.roots;
    }
    friend bool operator!=(const ContractionFn& a, const ContractionFn& b) { return !(a == b); }

    // exchange the two variables
    ContractionFn swapped() const {
        ContractionFn f;
        f.zpow = wpow;
        f.wpow = zpow;
        f.pref = pref;
        for (const auto& [c, e] : roots) {
            // (z - c w) -> (w - c z) = (-c)(z - c^{-1} w)
            f.roots[c.inv()] += e;
            ParamRational m = ParamRational::monomial(c, BigRat(-1));
            for (int i = 0; i < (e < 0 ? -e : e); ++i) f.pref = e > 0 ? f.pref * m : f.pref / m;
        }
        return f;
    }

    std::string str() const {
        std::string s = pref.str();
        if (zpow) s += " z^" + std::to_string(zpow);
        if (wpow) s += " w^" + std::to_string(wpow);
        for (const auto& [c, e] : roots) {
            s += " (z - " + c.str() + " w)";
            if (e != 1) s += "^" + std::to_string(e);
        }
        return s;
    }
};

struct PoleData {
    ParamMonomial locus;      // z = locus * w
    int order = 1;
    ParamRational residue;    // [(z - c w) f]|_{z=cw} = residue * w^{deg+1}
    ParamRational delta_coeff;  // residue / c, the weight of z^{-1} delta(c w / z)
};

inline std::vector<PoleData> poles_and_residues(const ContractionFn& f) {
    std::vector<PoleData> out;
    for (const auto& [c, e] : f.roots) {
        if (e >= 0) continue;
        PoleData p;
        p.locus = c;
        p.order = -e;
        if (p.order == 1) {
            ParamRational r = f.pref * ParamRational::monomial(c.pow(f.zpow));
            for (const auto& [c2, e2] : f.roots) {
                if (c2 == c) continue;
                ParamRational diff(ParamLaurent::monomial(c) - ParamLaurent::monomial(c2));
                r = r * diff.pow(e2);
            }
            p.residue = r;
            p.delta_coeff = r / ParamRational::monomial(c);
        }
        out.push_back(p);
    }
    return out;
}

// ---------------------------------------------------------------------------
// primitive contraction table

// <S_i(z) Y_j(w)>: fermionic same color 1/(z-w), bosonic same color the
// stilde ratio, different colors 1.  The reversed fermionic order flips sign;
// the sign cancels against the odd-odd normal-ordering convention and never
// enters the residue bookkeeping.
inline ContractionFn prim_s_y(const CartanMatrix& C, int i, int j) {
    if (i != j) return ContractionFn::one();
    if (C.fermionic[i]) return ContractionFn::factor(ParamMonomial::one(), -1);
    ParamMonomial u = C.stilde(i);
    ContractionFn f = ContractionFn::factor(u, 1) * ContractionFn::factor(u.inv(), -1);
    return f;
}

// dual screening contraction <S^-_i(z) Y_j(w)> for bosonic i: roles of the
// stilde root and s3 exchange.
inline ContractionFn prim_dual_s_y(const CartanMatrix& C, int i, int j) {
    if (C.fermionic[i]) throw not_bosonic("dual screening: fermionic color");
    if (i != j) return ContractionFn::one();
    return ContractionFn::factor(ParamMonomial::s3(), 1) *
           ContractionFn::factor(ParamMonomial::s3(-1), -1);
}

// <A_i(z) Y_j(w)>, the same rational function in both orders.
inline ContractionFn prim_a_y(const CartanMatrix& C, int i, int j) {
    if (i != j) return ContractionFn::one();
    ParamMonomial s3 = ParamMonomial::s3();
    if (C.fermionic[i]) {
        // (s3 z - w)/(s3^{-1} z - w) = s3^2 (z - s3^{-1} w)/(z - s3 w)
        ContractionFn f = ContractionFn::factor(s3.inv(), 1) * ContractionFn::factor(s3, -1);
        f.pref = ParamRational::monomial(s3.pow(2));
        return f;
    }
    ParamMonomial u = C.stilde(i);
    return ContractionFn::factor(s3 * u, 1) * ContractionFn::factor(s3.inv() * u.inv(), 1) *
           ContractionFn::factor(s3 * u.inv(), -1) * ContractionFn::factor(s3.inv() * u, -1);
}

// <A_i(z) A_j(w)> = prod over the signed monomials c of B_{ij} of
// (1 - c w/z)^{-sign}; the z powers cancel because B entries have zero content.
inline ContractionFn prim_a_a(const CartanMatrix& C, int i, int j) {
    ContractionFn f;
    ParamLaurent b = C.b_entry(i, j);
    if (b.is_zero()) return f;
    int esum = 0;
    for (const auto& [sign, mono] : signed_monomials(b)) {
        f.roots[mono] -= sign;
        esum -= sign;
    }
    for (auto it = f.roots.begin(); it != f.roots.end();)
        it = it->second == 0 ? f.roots.erase(it) : std::next(it);
    if (esum != 0) throw error("prim_a_a: B entry has nonzero content");
    return f;
}

namespace detail {

enum class LasShape { none, simple_pole, linear };

// <Lambda-family(z) S_j(w)> shape: 1/(z-w), (u z - w), or 1.
inline LasShape las_shape(const CartanMatrix& C, bool lam_bar, int j, ParamMonomial& u) {
    if (C.family != Family::gl_sym && C.family != Family::osp)
        throw unsupported_family("Lambda currents exist for gl_sym and osp only");
    ColorLabel lj = C.labels[j];
    if (lj.value != 1) return LasShape::none;
    bool same = lj.barred == lam_bar;
    if (same) return LasShape::simple_pole;
    u = C.family == Family::gl_sym ? ParamMonomial::s1() : ParamMonomial::s1(2);
    return LasShape::linear;
}

}  // namespace detail

// <Lambda(z) A_j(w)> (or the barred variant), via the screening-ratio form of A_j.
inline ContractionFn prim_lam_a(const CartanMatrix& C, bool lam_bar, int j) {
    ParamMonomial u, s3 = ParamMonomial::s3();
    switch (detail::las_shape(C, lam_bar, j, u)) {
        case detail::LasShape::none:
            return ContractionFn::one();
        case detail::LasShape::simple_pole:
            // [1/(z - s3^{-1} w)] / [1/(z - s3 w)]
            return ContractionFn::factor(s3, 1) * ContractionFn::factor(s3.inv(), -1);
        case detail::LasShape::linear: {
            // (u z - s3^{-1} w)/(u z - s3 w) = (z - u^{-1} s3^{-1} w)/(z - u^{-1} s3 w)
            return ContractionFn::factor(u.inv() * s3.inv(), 1) *
                   ContractionFn::factor(u.inv() * s3, -1);
        }
    }
    return ContractionFn::one();
}

// <Lambda(z) Lambda(w)> family table.
inline ContractionFn prim_lam_lam(bool bar1, bool bar2) {
    if (bar1 != bar2) return ContractionFn::one();
    ParamMonomial pole = bar1 ? ParamMonomial::s3(-2) : ParamMonomial::s3(2);
    return ContractionFn::factor(ParamMonomial::one(), 1) * ContractionFn::factor(pole, -1);
}

// ---------------------------------------------------------------------------
// normal-ordered words over the base symbols

enum class Base { LamPrime, LamBarPrime, WPrime };

inline std::string base_name(Base b) {
    switch (b) {
        case Base::LamPrime: return "L'";
        case Base::LamBarPrime: return "Lb'";
        default: return "W'";
    }
}

enum class Gen { Lam, LamBar, TBase, A };

// One factor of the contraction skeleton: Lambda(shift z)^exp etc.
struct SkelFactor {
    Gen kind = Gen::Lam;
    int color = -1;  // for A factors
    ParamMonomial shift;
    int exp = 1;

    friend bool operator<(const SkelFactor& a, const SkelFactor& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        if (a.color != b.color) return a.color < b.color;
        return a.shift < b.shift;
    }
    friend bool operator==(const SkelFactor& a, const SkelFactor& b) {
        return a.kind == b.kind && a.color == b.color && a.shift == b.shift && a.exp == b.exp;
    }
};

inline ParamMonomial lambda_pair_shift(const CartanMatrix& C) {
    // Lambda(z) = :Lambda'(z) Y_1(z) / Y_{1b}(s1^k z): with k = 1 (gl_sym), 2 (osp)
    return C.family == Family::osp ? ParamMonomial::s1(2) : ParamMonomial::s1();
}

inline Letter top_letter(const CartanMatrix& C) { return alphabet(C).front(); }

// Y content injected by a skeleton generator at unit shift.
inline YMonomial gen_y_content(const CartanMatrix& C, Gen kind, int color) {
    switch (kind) {
        case Gen::Lam:
        case Gen::LamBar: {
            bool b = kind == Gen::LamBar;
            int i1 = C.index_of({1, b});
            int i1o = C.index_of({1, !b});
            return YMonomial::generator(i1, ParamMonomial::one()) *
                   YMonomial::generator(i1o, lambda_pair_shift(C), -1);
        }
        case Gen::TBase:
            return letter_monomial(C, top_letter(C));
        case Gen::A:
            return affine_root(C, color, ParamMonomial::one());
    }
    return {};
}

// A normal-ordered word: base symbols + Y content for identity, and the
// certified skeleton over {Lambda, LambdaBar, TBase, A} for contractions.
struct CurrentWord {
    std::map<std::pair<Base, ParamMonomial>, int> bases;
    YMonomial ycontent;
    std::vector<SkelFactor> skel;

    static CurrentWord lambda(const CartanMatrix& C, ParamMonomial shift, bool bar = false,
                              int e = 1) {
        CurrentWord w;
        w.mul_lambda(C, shift, bar, e);
        return w;
    }
    static CurrentWord tbase(const CartanMatrix& C, ParamMonomial shift, int e = 1) {
        CurrentWord w;
        w.mul_tbase(C, shift, e);
        return w;
    }

    // base symbol without dressing or skeleton; identity-layer words only
    void mul_pure_base(Base b, ParamMonomial shift, int e) {
        auto key = std::make_pair(b, shift);
        bases[key] += e;
        if (bases[key] == 0) bases.erase(key);
    }
    void mul_base(Base b, ParamMonomial shift, int e) { mul_pure_base(b, shift, e); }
    void mul_skel(Gen kind, int color, ParamMonomial shift, int e) {
        for (size_t i = 0; i < skel.size(); ++i)
            if (skel[i].kind == kind && skel[i].color == color && skel[i].shift == shift) {
                skel[i].exp += e;
                if (skel[i].exp == 0) skel.erase(skel.begin() + i);
                return;
            }
        skel.push_back({kind, color, shift, e});
        std::sort(skel.begin(), skel.end());
    }
    void mul_lambda(const CartanMatrix& C, ParamMonomial shift, bool bar, int e = 1) {
        mul_base(bar ? Base::LamBarPrime : Base::LamPrime, shift, e);
        Gen kind = bar ? Gen::LamBar : Gen::Lam;
        YMonomial yc = gen_y_content(C, kind, -1).tau(shift);
        ycontent = ycontent * yc.pow(e);
        mul_skel(kind, -1, shift, e);
    }
    void mul_tbase(const CartanMatrix& C, ParamMonomial shift, int e = 1) {
        mul_base(Base::WPrime, shift, e);
        ycontent = ycontent * gen_y_content(C, Gen::TBase, -1).tau(shift).pow(e);
        mul_skel(Gen::TBase, -1, shift, e);
    }
    void mul_aroot(const CartanMatrix& C, int color, ParamMonomial shift, int e) {
        ycontent = ycontent * affine_root(C, color, shift).pow(e);
        mul_skel(Gen::A, color, shift, e);
    }

    CurrentWord tau(ParamMonomial mu) const {
        CurrentWord w;
        for (const auto& [k, e] : bases) w.bases[{k.first, k.second * mu}] = e;
        w.ycontent = ycontent.tau(mu);
        w.skel = skel;
        for (auto& f : w.skel) f.shift = f.shift * mu;
        std::sort(w.skel.begin(), w.skel.end());
        return w;
    }

    friend CurrentWord operator*(const CurrentWord& a, const CurrentWord& b) {
        CurrentWord w = a;
        for (const auto& [k, e] : b.bases) {
            w.bases[k] += e;
            if (w.bases[k] == 0) w.bases.erase(k);
        }
        w.ycontent = w.ycontent * b.ycontent;
        for (const auto& f : b.skel) w.mul_skel(f.kind, f.color, f.shift, f.exp);
        return w;
    }

    // canonical identity is (bases, ycontent); the skeleton is a certificate
    friend bool operator==(const CurrentWord& a, const CurrentWord& b) {
        return a.bases == b.bases && a.ycontent == b.ycontent;
    }
    friend bool operator<(const CurrentWord& a, const CurrentWord& b) {
        if (a.bases != b.bases) return a.bases < b.bases;
        return a.ycontent < b.ycontent;
    }

    // apath certificate: the skeleton must reproduce the stored base multiset
    // and Y content exactly
    bool certified(const CartanMatrix& C) const {
        std::map<std::pair<Base, ParamMonomial>, int> eb;
        YMonomial ey;
        for (const auto& f : skel) {
            switch (f.kind) {
                case Gen::Lam:
                    eb[{Base::LamPrime, f.shift}] += f.exp;
                    break;
                case Gen::LamBar:
                    eb[{Base::LamBarPrime, f.shift}] += f.exp;
                    break;
                case Gen::TBase:
                    eb[{Base::WPrime, f.shift}] += f.exp;
                    break;
                case Gen::A:
                    break;
            }
            ey = ey * gen_y_content(C, f.kind, f.color).tau(f.shift).pow(f.exp);
        }
        for (auto it = eb.begin(); it != eb.end();)
            it = it->second == 0 ? eb.erase(it) : std::next(it);
        return eb == bases && ey == ycontent;
    }

    std::string str(const CartanMatrix& C) const {
        std::string s;
        for (const auto& [k, e] : bases) {
            if (!s.empty()) s += " ";
            s += base_name(k.first) + "[" + k.second.str() + "]";
            if (e != 1) s += "^" + std::to_string(e);
        }
        if (!ycontent.is_one()) {
            if (!s.empty()) s += " ";
            s += ycontent.str(C);
        }
        return s.empty() ? "1" : s;
    }
};

// coefficient-weighted formal sum of words
struct CurrentSum {
    std::vector<std::pair<ParamRational, CurrentWord>> terms;

    void add(const ParamRational& c, const CurrentWord& w) {
        if (c.is_zero()) return;
        for (size_t i = 0; i < terms.size(); ++i)
            if (terms[i].second == w) {
                terms[i].first += c;
                if (terms[i].first.is_zero()) terms.erase(terms.begin() + i);
                return;
            }
        terms.push_back({c, w});
    }

    void normalize() {
        std::erase_if(terms, [](const auto& t) { return t.first.is_zero(); });
        std::sort(terms.begin(), terms.end(),
                  [](const auto& a, const auto& b) { return a.second < b.second; });
    }

    friend bool operator==(const CurrentSum& a, const CurrentSum& b) {
        CurrentSum x = a, y = b;
        x.normalize();
        y.normalize();
        return x.terms == y.terms;
    }
};

// ---------------------------------------------------------------------------
// word contraction

inline ContractionFn pair_contraction(const CartanMatrix& C, const SkelFactor& f1,
                                      const SkelFactor& f2) {
    ContractionFn base;
    bool lam1 = f1.kind == Gen::Lam || f1.kind == Gen::LamBar;
    bool lam2 = f2.kind == Gen::Lam || f2.kind == Gen::LamBar;
    if (lam1 && lam2) {
        base = prim_lam_lam(f1.kind == Gen::LamBar, f2.kind == Gen::LamBar);
    } else if (lam1 && f2.kind == Gen::A) {
        base = prim_lam_a(C, f1.kind == Gen::LamBar, f2.color);
    } else if (f1.kind == Gen::A && lam2) {
        base = prim_lam_a(C, f2.kind == Gen::LamBar, f1.color).swapped();
    } else if (f1.kind == Gen::A && f2.kind == Gen::A) {
        base = prim_a_a(C, f1.color, f2.color);
    } else if (f1.kind == Gen::TBase && lam2) {
        base = ContractionFn::one();
    } else if (lam1 && f2.kind == Gen::TBase) {
        base = ContractionFn::one();
    } else if (f1.kind == Gen::TBase && f2.kind == Gen::A) {
        // the W' part is blind to the screenings, so only the top-letter
        // content of the dressed word contracts
        YMonomial top = letter_monomial(C, top_letter(C));
        for (const auto& [key, e] : top.exps())
            base *= prim_a_y(C, f2.color, key.color).swapped().subst(key.shift, ParamMonomial::one()).pow(e);
    } else if (f1.kind == Gen::A && f2.kind == Gen::TBase) {
        YMonomial top = letter_monomial(C, top_letter(C));
        for (const auto& [key, e] : top.exps())
            base *= prim_a_y(C, f1.color, key.color).subst(ParamMonomial::one(), key.shift).pow(e);
    } else {
        throw unsupported_pair("pair_contraction: unsupported generator pair");
    }
    return base.subst(f1.shift, f2.shift).pow(f1.exp * f2.exp);
}

// full contraction <W1(z) W2(w)> as a rational function
inline ContractionFn contract_words(const CartanMatrix& C, const CurrentWord& w1,
                                    const CurrentWord& w2) {
    ContractionFn f;
    for (const auto& a : w1.skel)
        for (const auto& b : w2.skel) f *= pair_contraction(C, a, b);
    return f;
}

// ---------------------------------------------------------------------------
// homogeneous rational functions reduced to one variable t = z/w

struct TPoly {
    // coefficient of t^{shift + i} is coef[i]
    int shift = 0;
    std::vector<ParamRational> coef;

    bool is_zero() const {
        for (const auto& c : coef)
            if (!c.is_zero()) return false;
        return true;
    }
    void trim() {
        while (!coef.empty() && coef.back().is_zero()) coef.pop_back();
        size_t lead = 0;
        while (lead < coef.size() && coef[lead].is_zero()) ++lead;
        if (lead) {
            coef.erase(coef.begin(), coef.begin() + lead);
            shift += static_cast<int>(lead);
        }
        if (coef.empty()) shift = 0;
    }
    static TPoly constant(ParamRational c) {
        TPoly p;
        p.coef = {std::move(c)};
        p.trim();
        return p;
    }
    static TPoly linear(ParamMonomial root) {
        // t - root
        TPoly p;
        p.coef = {ParamRational::monomial(root, BigRat(-1)), ParamRational(1)};
        return p;
    }
    friend TPoly operator*(const TPoly& a, const TPoly& b) {
        TPoly r;
        if (a.coef.empty() || b.coef.empty()) return r;
        r.shift = a.shift + b.shift;
        r.coef.assign(a.coef.size() + b.coef.size() - 1, ParamRational());
        for (size_t i = 0; i < a.coef.size(); ++i)
            for (size_t j = 0; j < b.coef.size(); ++j) r.coef[i + j] += a.coef[i] * b.coef[j];
        r.trim();
        return r;
    }
    friend TPoly operator+(const TPoly& a, const TPoly& b) {
        if (a.coef.empty()) return b;
        if (b.coef.empty()) return a;
        TPoly r;
        r.shift = std::min(a.shift, b.shift);
        int top = std::max(a.shift + static_cast<int>(a.coef.size()),
                           b.shift + static_cast<int>(b.coef.size()));
        r.coef.assign(top - r.shift, ParamRational());
        for (size_t i = 0; i < a.coef.size(); ++i) r.coef[a.shift - r.shift + i] += a.coef[i];
        for (size_t i = 0; i < b.coef.size(); ++i) r.coef[b.shift - r.shift + i] += b.coef[i];
        r.trim();
        return r;
    }
    ParamRational eval(ParamMonomial t) const {
        ParamRational v;
        for (size_t i = 0; i < coef.size(); ++i)
            v += coef[i] * ParamRational::monomial(t.pow(shift + static_cast<int>(i)));
        return v;
    }
    // divide exactly by (t - root); throws if not divisible
    TPoly divide_linear(ParamMonomial root) const {
        TPoly q;
        q.shift = shift;
        if (coef.empty()) return q;
        q.coef.assign(coef.size() - 1, ParamRational());
        ParamRational carry;
        for (size_t i = coef.size(); i-- > 1;) {
            carry = coef[i] + carry;
            q.coef[i - 1] = carry;
            carry = carry * ParamRational::monomial(root);
        }
        ParamRational rem = coef[0] + carry;
        if (!rem.is_zero()) throw not_divisible("TPoly: linear factor does not divide");
        q.trim();
        return q;
    }
};

// Sum of homogeneous contraction functions of one common degree, reduced to
// the single variable t = z/w over a factored common denominator.
struct TRatio {
    TPoly num;
    std::map<ParamMonomial, int> den;  // (t - c)^e, e > 0
    int deg = 0;
    bool started = false;

    static TRatio zero() { return {}; }

    void add(const ContractionFn& f, const ParamRational& coeff) {
        if (!started) {
            deg = f.degree();
            started = true;
        } else if (f.degree() != deg) {
            throw error("TRatio: mixed homogeneity degrees");
        }
        // bring f over the accumulated denominator
        std::map<ParamMonomial, int> fden;
        TPoly fnum = TPoly::constant(f.pref * coeff);
        fnum.shift += f.zpow;
        for (const auto& [c, e] : f.roots) {
            if (e > 0)
                for (int i = 0; i < e; ++i) fnum = fnum * TPoly::linear(c);
            else
                fden[c] = -e;
        }
        // new common denominator
        std::map<ParamMonomial, int> nden = den;
        for (const auto& [c, e] : fden) nden[c] = std::max(nden[c], e);
        // scale both numerators
        for (const auto& [c, e] : nden) {
            int have = 0;
            auto it = den.find(c);
            if (it != den.end()) have = it->second;
            for (int i = 0; i < e - have; ++i) num = num * TPoly::linear(c);
            int fhave = 0;
            auto it2 = fden.find(c);
            if (it2 != fden.end()) fhave = it2->second;
            for (int i = 0; i < e - fhave; ++i) fnum = fnum * TPoly::linear(c);
        }
        num = num + fnum;
        den = std::move(nden);
    }

    bool is_zero() const { return num.is_zero(); }

    // true if every denominator factor divides the numerator
    bool pole_free() const {
        TPoly n = num;
        for (const auto& [c, e] : den)
            for (int i = 0; i < e; ++i) {
                try {
                    n = n.divide_linear(c);
                } catch (const not_divisible&) {
                    return false;
                }
            }
        return true;
    }

    // poles with positive order after cancellation against the numerator
    std::vector<std::pair<ParamMonomial, int>> poles() const {
        std::vector<std::pair<ParamMonomial, int>> out;
        for (const auto& [c, e] : den) {
            TPoly n = num;
            int cancelled = 0;
            for (int i = 0; i < e; ++i) {
                try {
                    n = n.divide_linear(c);
                    ++cancelled;
                } catch (const not_divisible&) {
                    break;
                }
            }
            if (cancelled < e) out.push_back({c, e - cancelled});
        }
        return out;
    }

    // weight of z^{-1} delta(c w/z) at a simple pole t = c
    ParamRational delta_coeff(ParamMonomial c) const {
        TPoly n = num;
        ParamRational rest(1);
        for (const auto& [c2, e] : den) {
            if (c2 == c) {
                if (e != 1) {
                    // cancel the extra orders against the numerator first
                    for (int i = 0; i < e - 1; ++i) n = n.divide_linear(c2);
                }
                continue;
            }
            ParamRational diff(ParamLaurent::monomial(c) - ParamLaurent::monomial(c2));
            for (int i = 0; i < e; ++i) rest = rest * diff;
        }
        return n.eval(c) / rest / ParamRational::monomial(c);
    }
};

// ---------------------------------------------------------------------------
// commutator delta extraction

struct DeltaTerm {
    ParamMonomial locus;  // z = locus * w
    CurrentSum sum;
};

// [V1(z), V2(w)] as a finite list of delta supports with attached word sums.
// A simple pole of the pairwise contraction at z = c w contributes
// z^{-1} delta(c w/z) [(z - c w) f]|_{z=cw} on the merged word.  Higher-order
// poles are fatal unless the caller passes a collector for them.
inline std::vector<DeltaTerm> commutator_delta(
    const CartanMatrix& C, const CurrentSum& v1, const CurrentSum& v2,
    std::vector<std::pair<ParamMonomial, int>>* higher_order = nullptr,
    std::vector<ParamMonomial>* cancelled = nullptr) {
    std::map<ParamMonomial, CurrentSum> acc;
    for (const auto& [c1, w1] : v1.terms)
        for (const auto& [c2, w2] : v2.terms) {
            ContractionFn f = contract_words(C, w1, w2);
            if (f.degree() != 0) throw error("commutator_delta: non-homogeneous contraction");
            for (const auto& [root, e] : f.roots) {
                if (e >= 0) continue;
                if (e < -1) {
                    if (higher_order) {
                        higher_order->push_back({root, -e});
                        continue;
                    }
                    throw higher_order_pole("commutator_delta: pole of order > 1");
                }
                ParamRational r = f.pref * ParamRational::monomial(root.pow(f.zpow));
                for (const auto& [c2r, e2] : f.roots) {
                    if (c2r == root) continue;
                    ParamRational diff(ParamLaurent::monomial(root) - ParamLaurent::monomial(c2r));
                    r = r * diff.pow(e2);
                }
                r = r / ParamRational::monomial(root);
                acc[root].add(c1 * c2 * r, w1.tau(root) * w2);
            }
        }
    std::vector<DeltaTerm> out;
    for (auto& [locus, sum] : acc) {
        sum.normalize();
        if (!sum.terms.empty()) out.push_back({locus, std::move(sum)});
        else if (cancelled) cancelled->push_back(locus);
    }
    return out;
}

}  // namespace qqforge

#endif
