#ifndef QQFORGE_YCALC_HPP
#define QQFORGE_YCALC_HPP

#include <map>
#include <string>
#include <vector>

#include "qqforge/cartan.hpp"

namespace qqforge {

// Key of one Y generator: color index into the owning Cartan matrix + shift.
struct YKey {
    int color = 0;
    ParamMonomial shift;

    friend bool operator==(YKey a, YKey b) { return a.color == b.color && a.shift == b.shift; }
    friend bool operator!=(YKey a, YKey b) { return !(a == b); }
    friend bool operator<(YKey a, YKey b) {
        if (a.color != b.color) return a.color < b.color;
        return a.shift < b.shift;
    }
};

// Monomial in the Y variables; exponents nonzero.
class YMonomial {
public:
    using exps_t = std::map<YKey, int>;

    YMonomial() = default;
    static YMonomial generator(int color, ParamMonomial shift, int exp = 1) {
        YMonomial m;
        if (exp != 0) m.e_[{color, shift}] = exp;
        return m;
    }

    const exps_t& exps() const { return e_; }
    bool is_one() const { return e_.empty(); }
    int exp(int color, ParamMonomial shift) const {
        auto it = e_.find({color, shift});
        return it == e_.end() ? 0 : it->second;
    }

    void mul_gen(int color, ParamMonomial shift, int exp) {
        if (exp == 0) return;
        YKey k{color, shift};
        auto it = e_.find(k);
        if (it == e_.end()) e_[k] = exp;
        else {
            it->second += exp;
            if (it->second == 0) e_.erase(it);
        }
    }

    friend YMonomial operator*(const YMonomial& x, const YMonomial& y) {
        YMonomial r = x;
        for (const auto& [k, e] : y.e_) r.mul_gen(k.color, k.shift, e);
        return r;
    }
    YMonomial inv() const {
        YMonomial r;
        for (const auto& [k, e] : e_) r.e_[k] = -e;
        return r;
    }
    friend YMonomial operator/(const YMonomial& x, const YMonomial& y) { return x * y.inv(); }
    YMonomial pow(int p) const {
        YMonomial r;
        if (p != 0)
            for (const auto& [k, e] : e_) r.e_[k] = e * p;
        return r;
    }

    friend bool operator==(const YMonomial& x, const YMonomial& y) { return x.e_ == y.e_; }
    friend bool operator!=(const YMonomial& x, const YMonomial& y) { return !(x == y); }
    friend bool operator<(const YMonomial& x, const YMonomial& y) { return x.e_ < y.e_; }

    bool generic() const {
        for (const auto& [k, e] : e_)
            if (e != 1 && e != -1) return false;
        return true;
    }

    YMonomial tau(ParamMonomial mu) const {
        YMonomial r;
        for (const auto& [k, e] : e_) r.e_[{k.color, k.shift * mu}] = e;
        return r;
    }

    std::string str(const CartanMatrix& C) const {
        if (e_.empty()) return "1";
        std::string s;
        for (const auto& [k, e] : e_) {
            if (!s.empty()) s += " ";
            s += "Y[" + C.labels[k.color].str() + "," + k.shift.str() + "]";
            if (e != 1) s += "^" + std::to_string(e);
        }
        return s;
    }

private:
    exps_t e_;
};

inline bool mutually_generic(const YMonomial& m, const YMonomial& n) {
    return (m * n).generic() && (m / n).generic();
}

// Integer combination of Y monomials attached to a Cartan matrix.
class QQChar {
public:
    using terms_t = std::map<YMonomial, long long>;

    QQChar() = default;
    explicit QQChar(const CartanMatrix* C) : cartan_(C) {}
    QQChar(const CartanMatrix* C, const YMonomial& m) : cartan_(C) { terms_[m] = 1; }

    const CartanMatrix* cartan() const { return cartan_; }
    const terms_t& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    long long coeff(const YMonomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? 0 : it->second;
    }

    void add_term(const YMonomial& m, long long c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) terms_[m] = c;
        else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend QQChar operator+(const QQChar& x, const QQChar& y) {
        QQChar r = x;
        if (!r.cartan_) r.cartan_ = y.cartan_;
        for (const auto& [m, c] : y.terms_) r.add_term(m, c);
        return r;
    }
    friend QQChar operator-(const QQChar& x, const QQChar& y) {
        QQChar r = x;
        if (!r.cartan_) r.cartan_ = y.cartan_;
        for (const auto& [m, c] : y.terms_) r.add_term(m, -c);
        return r;
    }
    friend QQChar operator*(const QQChar& x, const QQChar& y) {
        QQChar r(x.cartan_ ? x.cartan_ : y.cartan_);
        for (const auto& [mx, cx] : x.terms_)
            for (const auto& [my, cy] : y.terms_) r.add_term(mx * my, cx * cy);
        return r;
    }
    friend QQChar operator*(const YMonomial& m, const QQChar& x) {
        QQChar r(x.cartan_);
        for (const auto& [mx, cx] : x.terms_) r.add_term(m * mx, cx);
        return r;
    }
    friend bool operator==(const QQChar& x, const QQChar& y) { return x.terms_ == y.terms_; }
    friend bool operator!=(const QQChar& x, const QQChar& y) { return !(x == y); }

    QQChar tau(ParamMonomial mu) const {
        QQChar r(cartan_);
        for (const auto& [m, c] : terms_) r.terms_[m.tau(mu)] = c;
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [m, c] : terms_) {
            if (!s.empty()) s += c < 0 ? " - " : " + ";
            else if (c < 0) s += "-";
            long long a = c < 0 ? -c : c;
            if (a != 1) s += std::to_string(a) + "*";
            s += m.str(*cartan_);
        }
        return s;
    }

private:
    const CartanMatrix* cartan_ = nullptr;
    terms_t terms_;
};

// shift automorphism tau_mu
inline YMonomial tau_shift(const YMonomial& x, ParamMonomial mu) { return x.tau(mu); }
inline QQChar tau_shift(const QQChar& x, ParamMonomial mu) { return x.tau(mu); }

// restriction to one color: Y_{i,s} -> Y_{0,s} of a rank-one ring, others -> 1
inline YMonomial restrict_monomial(const YMonomial& m, int color) {
    YMonomial r;
    for (const auto& [k, e] : m.exps())
        if (k.color == color) r.mul_gen(0, k.shift, e);
    return r;
}
inline QQChar restrict_char(const QQChar& x, int color) {
    QQChar r(nullptr);
    for (const auto& [m, c] : x.terms()) r.add_term(restrict_monomial(m, color), c);
    return r;
}

// degree vector: fermionic colors count exponents, bosonic colors count zero
inline std::vector<int> degree(const CartanMatrix& C, const YMonomial& m) {
    std::vector<int> deg(C.rank(), 0);
    for (const auto& [k, e] : m.exps())
        if (C.fermionic[k.color]) deg[k.color] += e;
    return deg;
}
inline std::vector<int> degree(const CartanMatrix& C, const QQChar& x) {
    bool first = true;
    std::vector<int> deg;
    for (const auto& [m, c] : x.terms()) {
        auto d = degree(C, m);
        if (first) { deg = d; first = false; }
        else if (d != deg) throw mixed_degree("degree: terms of mixed degree");
    }
    if (first) deg.assign(C.rank(), 0);
    return deg;
}

// Affine root A_{i,mu}: built from the signed monomials of the i-th column,
// A_{i,1} = prod_j prod_{(sign,s) in c_{ji}} Y_{j,s}^{sign}, then tau-shifted.
inline YMonomial affine_root(const CartanMatrix& C, int color, ParamMonomial mu) {
    YMonomial r;
    for (int j = 0; j < C.rank(); ++j) {
        if (C.c[j][color].is_zero()) continue;
        for (const auto& [sign, mono] : signed_monomials(C.c[j][color]))
            r.mul_gen(j, mono * mu, sign);
    }
    return r;
}

// Detect v = u * A_{i,mu}^{-1} and recover the shift mu.
inline bool affine_step(const CartanMatrix& C, int color, const YMonomial& u, const YMonomial& v,
                        ParamMonomial& mu) {
    YMonomial ratio = v / u;
    if (ratio.is_one()) return false;
    const YMonomial a1 = affine_root(C, color, ParamMonomial::one());
    auto key0 = a1.exps().begin();
    for (const auto& [k, e] : ratio.exps()) {
        if (k.color != key0->first.color) continue;
        ParamMonomial c = k.shift / key0->first.shift;
        if (ratio == affine_root(C, color, c).inv()) {
            mu = c;
            return true;
        }
    }
    return false;
}

// bar involution on colors
inline YMonomial bar_map(const CartanMatrix& C, const YMonomial& m) {
    YMonomial r;
    for (const auto& [k, e] : m.exps()) r.mul_gen(C.bar[k.color], k.shift, e);
    return r;
}
inline QQChar bar_map(const CartanMatrix& C, const QQChar& x) {
    QQChar r(x.cartan());
    for (const auto& [m, c] : x.terms()) r.add_term(bar_map(C, m), c);
    return r;
}

}  // namespace qqforge

#endif
