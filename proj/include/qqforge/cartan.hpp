#ifndef QQFORGE_CARTAN_HPP
#define QQFORGE_CARTAN_HPP

#include <string>
#include <vector>

#include "qqforge/param.hpp"

namespace qqforge {

enum class Family { gl_sym, osp, gl_std, custom };

inline std::string family_name(Family f) {
    switch (f) {
        case Family::gl_sym: return "gl-sym";
        case Family::osp: return "osp";
        case Family::gl_std: return "gl-std";
        default: return "custom";
    }
}

// A color label as drawn on the Dynkin diagram: value + bar flag.
struct ColorLabel {
    int value = 0;
    bool barred = false;

    friend bool operator==(ColorLabel a, ColorLabel b) {
        return a.value == b.value && a.barred == b.barred;
    }
    std::string str() const { return std::to_string(value) + (barred ? "b" : ""); }
};

struct ValidationItem {
    std::string axiom;
    bool pass = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationItem> items;
    bool all_pass() const {
        for (const auto& it : items)
            if (!it.pass) return false;
        return true;
    }
};

// Fraction-free (Bareiss) determinant over an integral domain with exact division.
template <typename Ring>
Ring bareiss_det(std::vector<std::vector<Ring>> m) {
    const size_t n = m.size();
    if (n == 0) return Ring(1);
    Ring prev(1);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            size_t p = k + 1;
            while (p < n && m[p][k].is_zero()) ++p;
            if (p == n) return Ring(0);
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                m[i][j] = exact_divide(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
        prev = m[k][k];
    }
    Ring det = m[n - 1][n - 1];
    return sign == 1 ? det : -det;
}

// Deformed Cartan matrix with parities, sigma data and symmetrizers.
class CartanMatrix {
public:
    Family family = Family::custom;
    int n = 0, m = 0;
    std::vector<ColorLabel> labels;
    std::vector<bool> fermionic;
    std::vector<std::vector<ParamLaurent>> c;  // entries c_{ij}
    std::vector<ParamMonomial> sigma;          // diagonal root sigma_i
    std::vector<ParamMonomial> sigma_p, sigma_pp;  // bosonic split, sigma*sigma_p*sigma_pp = 1
    std::vector<ParamLaurent> d;               // symmetrizers
    std::vector<int> bar;                      // label involution as index permutation

    int rank() const { return static_cast<int>(labels.size()); }

    int index_of(ColorLabel l) const {
        for (int i = 0; i < rank(); ++i)
            if (labels[i] == l) return i;
        throw error("unknown color label " + l.str());
    }

    const ParamLaurent& entry(int i, int j) const { return c[i][j]; }

    ParamLaurent b_entry(int i, int j) const { return d[i] * c[i][j]; }

    std::vector<std::vector<ParamLaurent>> b_matrix() const {
        std::vector<std::vector<ParamLaurent>> B(rank(), std::vector<ParamLaurent>(rank()));
        for (int i = 0; i < rank(); ++i)
            for (int j = 0; j < rank(); ++j) B[i][j] = b_entry(i, j);
        return B;
    }

    ParamLaurent det_c() const { return bareiss_det(c); }

    std::vector<std::vector<GammaPoly>> k_matrix() const {
        std::vector<std::vector<GammaPoly>> K(rank(), std::vector<GammaPoly>(rank()));
        for (int i = 0; i < rank(); ++i)
            for (int j = 0; j < rank(); ++j) K[i][j] = gamma_limit(b_entry(i, j));
        return K;
    }

    GammaPoly det_k() const { return bareiss_det(k_matrix()); }

    // S-Y contraction parameter for a bosonic color: the symmetrizer root other
    // than s3 (satisfies stilde = s3^{-1} sigma_i^{-1}).
    ParamMonomial stilde(int i) const {
        if (fermionic[i]) throw not_bosonic("stilde: fermionic color");
        if (sigma_pp[i] == ParamMonomial::s3()) return sigma_p[i];
        return sigma_pp[i];
    }

    ValidationReport validate() const {
        ValidationReport rep;
        auto check = [&rep](const std::string& name, bool ok, std::string detail = "") {
            rep.items.push_back({name, ok, std::move(detail)});
        };

        bool alt = true;
        std::string alt_detail;
        for (int i = 0; i < rank() && alt; ++i)
            for (int j = 0; j < rank() && alt; ++j)
                for (const auto& [mono, coef] : c[i][j].terms())
                    if (!(coef == BigRat(1) || coef == BigRat(-1))) {
                        alt = false;
                        alt_detail = "entry (" + labels[i].str() + "," + labels[j].str() +
                                     ") has coefficient " + coef.str();
                    }
        check("alternating-sum entries", alt, alt_detail);

        bool diag = true;
        std::string diag_detail;
        for (int i = 0; i < rank(); ++i) {
            ParamLaurent expect =
                fermionic[i]
                    ? ParamLaurent::monomial(sigma[i]) - ParamLaurent::monomial(sigma[i].inv())
                    : ParamLaurent::monomial(sigma[i]) + ParamLaurent::monomial(sigma[i].inv());
            if (c[i][i] != expect) {
                diag = false;
                diag_detail = "color " + labels[i].str();
                break;
            }
        }
        check("diagonal form", diag, diag_detail);

        bool sig = true;
        std::string sig_detail;
        for (int i = 0; i < rank(); ++i) {
            if (fermionic[i]) {
                if (d[i] != c[i][i]) { sig = false; sig_detail = "d mismatch at " + labels[i].str(); break; }
            } else {
                if (!(sigma[i] * sigma_p[i] * sigma_pp[i]).is_one()) {
                    sig = false; sig_detail = "sigma product at " + labels[i].str(); break;
                }
                ParamLaurent tp = ParamLaurent::monomial(sigma_p[i]) - ParamLaurent::monomial(sigma_p[i].inv());
                ParamLaurent tpp = ParamLaurent::monomial(sigma_pp[i]) - ParamLaurent::monomial(sigma_pp[i].inv());
                if (d[i] != -(tp * tpp)) { sig = false; sig_detail = "d mismatch at " + labels[i].str(); break; }
            }
        }
        check("symmetrizer structure", sig, sig_detail);

        bool symm = true;
        std::string symm_detail;
        for (int i = 0; i < rank() && symm; ++i)
            for (int j = i + 1; j < rank(); ++j)
                if (b_entry(i, j) != b_entry(j, i)) {
                    symm = false;
                    symm_detail = "B(" + labels[i].str() + "," + labels[j].str() + ")";
                    break;
                }
        check("B symmetric", symm, symm_detail);

        bool invinv = true;
        for (int i = 0; i < rank() && invinv; ++i)
            for (int j = 0; j < rank(); ++j)
                if (b_entry(i, j).invert_params() != b_entry(i, j)) { invinv = false; break; }
        check("B inversion invariant", invinv);

        check("det C nonzero", !det_c().is_zero());
        return rep;
    }
};

// gl(2n|1), symmetric diagram: colors n,...,1,1b,...,nb with 1 and 1b fermionic.
inline CartanMatrix gl_sym(int n) {
    if (n < 1) throw rank_too_small("gl_sym: need n >= 1");
    CartanMatrix C;
    C.family = Family::gl_sym;
    C.n = n;
    const int l = 2 * n;
    for (int v = n; v >= 1; --v) C.labels.push_back({v, false});
    for (int v = 1; v <= n; ++v) C.labels.push_back({v, true});
    C.fermionic.assign(l, false);
    C.bar.assign(l, 0);
    C.sigma.assign(l, ParamMonomial::one());
    C.sigma_p.assign(l, ParamMonomial::one());
    C.sigma_pp.assign(l, ParamMonomial::one());
    C.d.assign(l, ParamLaurent());
    C.c.assign(l, std::vector<ParamLaurent>(l));

    auto idx = [&](int v, bool barred) { return C.index_of({v, barred}); };
    for (int i = 0; i < l; ++i) {
        bool f = C.labels[i].value == 1;
        C.fermionic[i] = f;
        C.bar[i] = idx(C.labels[i].value, !C.labels[i].barred);
        if (f) {
            C.sigma[i] = ParamMonomial::s3();
            C.d[i] = ParamLaurent::t3();
        } else {
            C.sigma[i] = ParamMonomial::q();
            C.sigma_p[i] = ParamMonomial::s1();
            C.sigma_pp[i] = ParamMonomial::s3();
            C.d[i] = -(ParamLaurent::t1() * ParamLaurent::t3());
        }
    }
    auto qq = ParamLaurent::monomial(ParamMonomial::q()) + ParamLaurent::monomial(ParamMonomial::q(-1));
    for (int i = 0; i < l; ++i) C.c[i][i] = C.fermionic[i] ? ParamLaurent::t3() : qq;
    C.c[idx(1, false)][idx(1, true)] = ParamLaurent::t2();
    C.c[idx(1, true)][idx(1, false)] = ParamLaurent::t2();
    if (n >= 2) {
        C.c[idx(1, false)][idx(2, false)] = ParamLaurent::t1();
        C.c[idx(1, true)][idx(2, true)] = ParamLaurent::t1();
    }
    for (int v = 2; v <= n - 1; ++v) {
        C.c[idx(v, false)][idx(v + 1, false)] = ParamLaurent(-1);
        C.c[idx(v, true)][idx(v + 1, true)] = ParamLaurent(-1);
    }
    for (int v = 1; v <= n - 1; ++v) {
        C.c[idx(v + 1, false)][idx(v, false)] = ParamLaurent(-1);
        C.c[idx(v + 1, true)][idx(v, true)] = ParamLaurent(-1);
    }
    return C;
}

// osp(2|2n): colors n,...,1,1b with 1 and 1b fermionic.
inline CartanMatrix osp(int n) {
    if (n < 2) throw rank_too_small("osp: need n >= 2");
    CartanMatrix C;
    C.family = Family::osp;
    C.n = n;
    const int l = n + 1;
    for (int v = n; v >= 1; --v) C.labels.push_back({v, false});
    C.labels.push_back({1, true});
    C.fermionic.assign(l, false);
    C.bar.assign(l, 0);
    C.sigma.assign(l, ParamMonomial::one());
    C.sigma_p.assign(l, ParamMonomial::one());
    C.sigma_pp.assign(l, ParamMonomial::one());
    C.d.assign(l, ParamLaurent());
    C.c.assign(l, std::vector<ParamLaurent>(l));

    auto idx = [&](int v, bool barred) { return C.index_of({v, barred}); };
    for (int i = 0; i < l; ++i) {
        bool f = C.labels[i].value == 1;
        C.fermionic[i] = f;
        C.bar[i] = C.labels[i].value == 1 ? idx(1, !C.labels[i].barred) : i;
        if (f) {
            C.sigma[i] = ParamMonomial::s3();
            C.d[i] = ParamLaurent::t3();
        } else {
            C.sigma[i] = ParamMonomial::q();
            C.sigma_p[i] = ParamMonomial::s1();
            C.sigma_pp[i] = ParamMonomial::s3();
            C.d[i] = -(ParamLaurent::t1() * ParamLaurent::t3());
        }
    }
    auto qq = ParamLaurent::monomial(ParamMonomial::q()) + ParamLaurent::monomial(ParamMonomial::q(-1));
    for (int i = 0; i < l; ++i) C.c[i][i] = C.fermionic[i] ? ParamLaurent::t3() : qq;
    // c_{1,1b} = c_{1b,1} = q s1^{-1} - q^{-1} s1
    ParamLaurent cross = ParamLaurent::monomial({-1, 1}) - ParamLaurent::monomial({1, -1});
    C.c[idx(1, false)][idx(1, true)] = cross;
    C.c[idx(1, true)][idx(1, false)] = cross;
    C.c[idx(2, false)][idx(1, false)] = ParamLaurent(-1);
    C.c[idx(2, false)][idx(1, true)] = ParamLaurent(-1);
    C.c[idx(1, false)][idx(2, false)] = ParamLaurent::t1();
    C.c[idx(1, true)][idx(2, false)] = ParamLaurent::t1();
    for (int v = 2; v <= n - 1; ++v) {
        C.c[idx(v, false)][idx(v + 1, false)] = ParamLaurent(-1);
        C.c[idx(v + 1, false)][idx(v, false)] = ParamLaurent(-1);
    }
    return C;
}

// gl(n|m), standard parity: colors n-1,...,1,0,1b,...,(m-1)b with 0 fermionic.
inline CartanMatrix gl_std(int n, int m) {
    if (n < 1 || m < 1) throw rank_too_small("gl_std: need n, m >= 1");
    CartanMatrix C;
    C.family = Family::gl_std;
    C.n = n;
    C.m = m;
    const int l = n + m - 1;
    for (int v = n - 1; v >= 0; --v) C.labels.push_back({v, false});
    for (int v = 1; v <= m - 1; ++v) C.labels.push_back({v, true});
    C.fermionic.assign(l, false);
    C.bar.assign(l, 0);
    C.sigma.assign(l, ParamMonomial::one());
    C.sigma_p.assign(l, ParamMonomial::one());
    C.sigma_pp.assign(l, ParamMonomial::one());
    C.d.assign(l, ParamLaurent());
    C.c.assign(l, std::vector<ParamLaurent>(l));

    auto idx = [&](int v, bool barred) { return C.index_of({v, barred}); };
    for (int i = 0; i < l; ++i) {
        C.bar[i] = i;  // no diagram involution for the standard parity
        if (C.labels[i].value == 0) {
            C.fermionic[i] = true;
            C.sigma[i] = ParamMonomial::s3();
            C.d[i] = ParamLaurent::t3();
        } else if (!C.labels[i].barred) {
            C.sigma[i] = ParamMonomial::q();
            C.sigma_p[i] = ParamMonomial::s1();
            C.sigma_pp[i] = ParamMonomial::s3();
            C.d[i] = -(ParamLaurent::t1() * ParamLaurent::t3());
        } else {
            C.sigma[i] = ParamMonomial::s1();
            C.sigma_p[i] = ParamMonomial::q();
            C.sigma_pp[i] = ParamMonomial::s3();
            C.d[i] = -(ParamLaurent::t2() * ParamLaurent::t3());
        }
    }
    for (int i = 0; i < l; ++i) {
        if (C.fermionic[i]) C.c[i][i] = ParamLaurent::t3();
        else {
            auto s = C.sigma[i];
            C.c[i][i] = ParamLaurent::monomial(s) + ParamLaurent::monomial(s.inv());
        }
    }
    if (n >= 2) C.c[idx(0, false)][idx(1, false)] = ParamLaurent::t1();
    if (m >= 2) C.c[idx(0, false)][idx(1, true)] = ParamLaurent::t2();
    for (int v = 1; v <= n - 2; ++v) C.c[idx(v, false)][idx(v + 1, false)] = ParamLaurent(-1);
    for (int v = 0; v <= n - 2; ++v) C.c[idx(v + 1, false)][idx(v, false)] = ParamLaurent(-1);
    if (m >= 2) C.c[idx(1, true)][idx(0, false)] = ParamLaurent(-1);
    for (int v = 1; v <= m - 2; ++v) {
        C.c[idx(v + 1, true)][idx(v, true)] = ParamLaurent(-1);
        C.c[idx(v, true)][idx(v + 1, true)] = ParamLaurent(-1);
    }
    return C;
}

// Single bosonic color with free sigma data; the smallest legal matrix.
// Used by tests that need an abstract one-color ring.
inline CartanMatrix one_bosonic_color() {
    CartanMatrix C;
    C.family = Family::custom;
    C.n = 1;
    C.labels = {{1, false}};
    C.fermionic = {false};
    C.bar = {0};
    C.sigma = {ParamMonomial::q()};
    C.sigma_p = {ParamMonomial::s1()};
    C.sigma_pp = {ParamMonomial::s3()};
    C.d = {-(ParamLaurent::t1() * ParamLaurent::t3())};
    auto qq = ParamLaurent::monomial(ParamMonomial::q()) + ParamLaurent::monomial(ParamMonomial::q(-1));
    C.c = {{qq}};
    return C;
}

}  // namespace qqforge

#endif
