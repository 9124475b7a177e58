#ifndef QQFORGE_PARAM_HPP
#define QQFORGE_PARAM_HPP

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qqforge/bigint.hpp"
#include "qqforge/errors.hpp"

namespace qqforge {

// Monomial s1^a * s2^b in the two deformation parameters.
// The group law is exponent addition; q = s2 and s3 = (s1*s2)^-1.
struct ParamMonomial {
    int a = 0;
    int b = 0;

    static ParamMonomial one() { return {0, 0}; }
    static ParamMonomial s1(int e = 1) { return {e, 0}; }
    static ParamMonomial s2(int e = 1) { return {0, e}; }
    static ParamMonomial q(int e = 1) { return {0, e}; }
    static ParamMonomial s3(int e = 1) { return {-e, -e}; }

    bool is_one() const { return a == 0 && b == 0; }
    ParamMonomial inv() const { return {-a, -b}; }
    ParamMonomial pow(int e) const { return {a * e, b * e}; }

    friend ParamMonomial operator*(ParamMonomial x, ParamMonomial y) {
        return {x.a + y.a, x.b + y.b};
    }
    friend ParamMonomial operator/(ParamMonomial x, ParamMonomial y) {
        return {x.a - y.a, x.b - y.b};
    }
    friend bool operator==(ParamMonomial x, ParamMonomial y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(ParamMonomial x, ParamMonomial y) { return !(x == y); }
    // graded lex: total degree first, then exponent of s1, then s2
    friend bool operator<(ParamMonomial x, ParamMonomial y) {
        int gx = x.a + x.b, gy = y.a + y.b;
        if (gx != gy) return gx < gy;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    }

    std::string str() const {
        if (is_one()) return "1";
        std::string s;
        if (a != 0) s += "s1^" + std::to_string(a);
        if (b != 0) {
            if (!s.empty()) s += "*";
            s += "s2^" + std::to_string(b);
        }
        return s;
    }
};

// Exact Laurent polynomial in s1, s2 with rational coefficients.
// Stored sparse and always normalized: no zero coefficients.
class ParamLaurent {
public:
    using terms_t = std::map<ParamMonomial, BigRat>;

    ParamLaurent() = default;
    ParamLaurent(long long c) {
        if (c != 0) terms_[ParamMonomial::one()] = BigRat(c);
    }
    ParamLaurent(const BigRat& c) {
        if (!c.is_zero()) terms_[ParamMonomial::one()] = c;
    }
    static ParamLaurent monomial(ParamMonomial m, BigRat c = BigRat(1)) {
        ParamLaurent p;
        if (!c.is_zero()) p.terms_[m] = std::move(c);
        return p;
    }
    // t_i = s_i - s_i^{-1}
    static ParamLaurent t1() { return monomial(ParamMonomial::s1()) - monomial(ParamMonomial::s1(-1)); }
    static ParamLaurent t2() { return monomial(ParamMonomial::s2()) - monomial(ParamMonomial::s2(-1)); }
    static ParamLaurent t3() { return monomial(ParamMonomial::s3()) - monomial(ParamMonomial::s3(-1)); }

    const terms_t& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->first.is_one() && terms_.begin()->second.is_one();
    }
    size_t size() const { return terms_.size(); }

    BigRat coeff(ParamMonomial m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? BigRat(0) : it->second;
    }

    void add_term(ParamMonomial m, const BigRat& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_[m] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend ParamLaurent operator+(const ParamLaurent& x, const ParamLaurent& y) {
        ParamLaurent r = x;
        for (const auto& [m, c] : y.terms_) r.add_term(m, c);
        return r;
    }
    friend ParamLaurent operator-(const ParamLaurent& x, const ParamLaurent& y) {
        ParamLaurent r = x;
        for (const auto& [m, c] : y.terms_) r.add_term(m, -c);
        return r;
    }
    friend ParamLaurent operator-(const ParamLaurent& x) {
        ParamLaurent r;
        for (const auto& [m, c] : x.terms_) r.terms_[m] = -c;
        return r;
    }
    friend ParamLaurent operator*(const ParamLaurent& x, const ParamLaurent& y) {
        ParamLaurent r;
        for (const auto& [mx, cx] : x.terms_)
            for (const auto& [my, cy] : y.terms_) r.add_term(mx * my, cx * cy);
        return r;
    }
    ParamLaurent& operator+=(const ParamLaurent& o) { *this = *this + o; return *this; }
    ParamLaurent& operator-=(const ParamLaurent& o) { *this = *this - o; return *this; }
    ParamLaurent& operator*=(const ParamLaurent& o) { *this = *this * o; return *this; }

    friend bool operator==(const ParamLaurent& x, const ParamLaurent& y) {
        return x.terms_ == y.terms_;
    }
    friend bool operator!=(const ParamLaurent& x, const ParamLaurent& y) { return !(x == y); }
    friend bool operator<(const ParamLaurent& x, const ParamLaurent& y) {
        return std::lexicographical_compare(
            x.terms_.begin(), x.terms_.end(), y.terms_.begin(), y.terms_.end(),
            [](const auto& p, const auto& q) {
                if (p.first != q.first) return p.first < q.first;
                return p.second < q.second;
            });
    }

    ParamLaurent shifted(ParamMonomial m) const {
        ParamLaurent r;
        for (const auto& [mm, c] : terms_) r.terms_[mm * m] = c;
        return r;
    }

    // Exponent substitution s1 -> s1^u11 s2^u12, s2 -> s1^u21 s2^u22.
    // Used for the inversion symmetry (u = -I) and for specializations like s3 = 1.
    ParamLaurent map_exponents(int u11, int u12, int u21, int u22) const {
        ParamLaurent r;
        for (const auto& [m, c] : terms_)
            r.add_term({m.a * u11 + m.b * u21, m.a * u12 + m.b * u22}, c);
        return r;
    }
    ParamLaurent invert_params() const { return map_exponents(-1, 0, 0, -1); }

    ParamMonomial min_monomial() const {
        int amin = 0, bmin = 0;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (first) { amin = m.a; bmin = m.b; first = false; }
            else { amin = std::min(amin, m.a); bmin = std::min(bmin, m.b); }
        }
        return {amin, bmin};
    }
    ParamMonomial leading_monomial() const {
        if (terms_.empty()) throw error("leading_monomial of zero");
        return terms_.rbegin()->first;  // graded-lex max
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [m, c] : terms_) {
            std::string cs = c.str();
            if (!s.empty()) {
                if (!cs.empty() && cs[0] == '-') { s += " - "; cs = cs.substr(1); }
                else s += " + ";
            }
            if (m.is_one()) s += cs;
            else if (cs == "1") s += m.str();
            else if (cs == "-1") s += "-" + m.str();
            else s += cs + "*" + m.str();
        }
        return s;
    }

private:
    terms_t terms_;
};

inline ParamLaurent operator*(const BigRat& c, const ParamLaurent& p) {
    ParamLaurent r;
    if (c.is_zero()) return r;
    for (const auto& [m, pc] : p.terms()) r.add_term(m, c * pc);
    return r;
}

// ---------------------------------------------------------------------------
// exact division and signed monomials

// Exact quotient q with q*d == p; throws not_divisible otherwise.
inline ParamLaurent exact_divide(const ParamLaurent& p, const ParamLaurent& d) {
    if (d.is_zero()) throw error("exact_divide: zero divisor");
    if (p.is_zero()) return ParamLaurent();
    // shift both into the polynomial cone so leading-term division terminates
    ParamMonomial sp = p.min_monomial(), sd = d.min_monomial();
    ParamLaurent rem = p.shifted(sp.inv());
    ParamLaurent dd = d.shifted(sd.inv());
    ParamMonomial dl = dd.leading_monomial();
    BigRat dc = dd.coeff(dl);
    ParamLaurent q;
    while (!rem.is_zero()) {
        ParamMonomial rl = rem.leading_monomial();
        ParamMonomial qm = rl / dl;
        if (qm.a < 0 || qm.b < 0) throw not_divisible("exact_divide: no Laurent quotient");
        BigRat qc = rem.coeff(rl) / dc;
        q.add_term(qm, qc);
        rem -= ParamLaurent::monomial(qm, qc) * dd;
    }
    return q.shifted(sp / sd);
}

inline bool divides(const ParamLaurent& d, const ParamLaurent& p) {
    try { exact_divide(p, d); return true; }
    catch (const not_divisible&) { return false; }
}

// Each integer coefficient n contributes |n| copies of its monomial with sign(n).
inline std::vector<std::pair<int, ParamMonomial>> signed_monomials(const ParamLaurent& p) {
    std::vector<std::pair<int, ParamMonomial>> out;
    for (const auto& [m, c] : p.terms()) {
        if (!c.is_integer()) throw non_integral("signed_monomials: non-integral coefficient");
        long long n = c.num().to_ll();
        int s = n > 0 ? 1 : -1;
        for (long long i = 0; i < (n > 0 ? n : -n); ++i) out.emplace_back(s, m);
    }
    return out;
}

// ---------------------------------------------------------------------------
// multivariate gcd (content-recursive over the two variables)

namespace detail {

// dense univariate integer polynomial helpers (variable = s2)
using upoly = std::vector<BigInt>;  // upoly[i] = coeff of y^i, no trailing zeros

inline void utrim(upoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}
inline BigInt ucontent(const upoly& p) {
    BigInt g(0);
    for (const auto& c : p) g = BigInt::gcd(g, c);
    return g;
}
inline upoly udiv_int(const upoly& p, const BigInt& d) {
    upoly r = p;
    for (auto& c : r) c = c / d;
    return r;
}
inline upoly uprim(const upoly& p) {
    if (p.empty()) return p;
    BigInt g = ucontent(p);
    upoly r = udiv_int(p, g);
    if (r.back().is_negative())
        for (auto& c : r) c = -c;
    return r;
}
inline upoly umul(const upoly& a, const upoly& b) {
    if (a.empty() || b.empty()) return {};
    upoly r(a.size() + b.size() - 1, BigInt(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    utrim(r);
    return r;
}
inline upoly uscale(const upoly& a, const BigInt& c) {
    if (c.is_zero()) return {};
    upoly r = a;
    for (auto& x : r) x = x * c;
    return r;
}
inline upoly usub(const upoly& a, const upoly& b) {
    upoly r = a;
    if (r.size() < b.size()) r.resize(b.size(), BigInt(0));
    for (size_t i = 0; i < b.size(); ++i) r[i] = r[i] - b[i];
    utrim(r);
    return r;
}
// pseudo-remainder lc(b)^{deg a - deg b + 1} a mod b (b nonzero)
inline upoly uprem(upoly a, const upoly& b) {
    utrim(a);
    if (a.size() < b.size()) return a;
    int scale_left = static_cast<int>(a.size()) - static_cast<int>(b.size()) + 1;
    while (a.size() >= b.size() && !a.empty()) {
        size_t shift = a.size() - b.size();
        BigInt lc = a.back();
        a = uscale(a, b.back());
        --scale_left;
        upoly sb(shift, BigInt(0));
        sb.insert(sb.end(), b.begin(), b.end());
        a = usub(a, uscale(sb, lc));
    }
    for (; scale_left > 0; --scale_left) a = uscale(a, b.back());
    return a;
}
// subresultant polynomial remainder sequence; keeps coefficient growth
// polynomial instead of the exponential blowup of the naive Euclid
inline upoly ugcd(upoly a, upoly b) {
    utrim(a); utrim(b);
    if (a.empty()) return uprim(b);
    if (b.empty()) return uprim(a);
    BigInt ca = ucontent(a), cb = ucontent(b);
    a = uprim(a); b = uprim(b);
    if (a.size() < b.size()) std::swap(a, b);
    BigInt g(1), h(1);
    while (true) {
        int delta = static_cast<int>(a.size()) - static_cast<int>(b.size());
        upoly r = uprem(a, b);
        if (r.empty()) break;
        if (r.size() == 1) { b = upoly{BigInt(1)}; break; }
        a = b;
        BigInt div = g;
        for (int i = 0; i < delta; ++i) div = div * h;
        b = udiv_int(r, div);
        g = a.back();
        if (delta > 0) {
            BigInt gn(1);
            for (int i = 0; i < delta; ++i) gn = gn * g;
            BigInt hd(1);
            for (int i = 0; i + 1 < delta; ++i) hd = hd * h;
            h = gn / hd;
        }
    }
    BigInt cg = BigInt::gcd(ca, cb);
    return umul(uprim(b), upoly{cg});
}

// bivariate integer polynomial viewed as poly in x (=s1) with upoly coefficients
using bpoly = std::map<int, upoly>;  // x-degree -> coefficient in y

inline void btrim(bpoly& p) {
    for (auto it = p.begin(); it != p.end();) {
        utrim(it->second);
        if (it->second.empty()) it = p.erase(it);
        else ++it;
    }
}
inline int bdeg(const bpoly& p) { return p.empty() ? -1 : p.rbegin()->first; }
inline bpoly bmul(const bpoly& a, const bpoly& b) {
    bpoly r;
    for (const auto& [da, ca] : a)
        for (const auto& [db, cb] : b) {
            upoly prod = umul(ca, cb);
            auto& slot = r[da + db];
            if (slot.empty()) slot = prod;
            else {
                if (slot.size() < prod.size()) slot.resize(prod.size(), BigInt(0));
                for (size_t i = 0; i < prod.size(); ++i) slot[i] = slot[i] + prod[i];
            }
        }
    btrim(r);
    return r;
}
inline bpoly bscale(const bpoly& a, const upoly& c) {
    bpoly r;
    for (const auto& [d, ca] : a) r[d] = umul(ca, c);
    btrim(r);
    return r;
}
inline bpoly bsub(bpoly a, const bpoly& b) {
    for (const auto& [d, cb] : b) {
        auto& slot = a[d];
        if (slot.size() < cb.size()) slot.resize(cb.size(), BigInt(0));
        for (size_t i = 0; i < cb.size(); ++i) slot[i] = slot[i] - cb[i];
    }
    btrim(a);
    return a;
}
inline upoly bcontent(const bpoly& p) {
    upoly g;
    for (const auto& [d, c] : p) g = ugcd(g, c);
    return g;
}
// exact division by a univariate content (every coefficient divisible)
inline bpoly bdiv_u(const bpoly& p, const upoly& c);

inline upoly udiv_exact(const upoly& a, const upoly& b) {
    // exact univariate division; caller guarantees divisibility
    upoly rem = a, q;
    utrim(rem);
    if (rem.empty()) return {};
    q.assign(rem.size() - b.size() + 1, BigInt(0));
    while (rem.size() >= b.size() && !rem.empty()) {
        size_t shift = rem.size() - b.size();
        BigInt qc = rem.back() / b.back();
        q[shift] = qc;
        upoly sb(shift, BigInt(0));
        sb.insert(sb.end(), b.begin(), b.end());
        rem = usub(rem, uscale(sb, qc));
    }
    utrim(q);
    return q;
}
inline bpoly bdiv_u(const bpoly& p, const upoly& c) {
    bpoly r;
    for (const auto& [d, pc] : p) r[d] = udiv_exact(pc, c);
    btrim(r);
    return r;
}
// pseudo-remainder lc(b)^{deg a - deg b + 1} a mod b in x
inline bpoly bprem(bpoly a, const bpoly& b) {
    btrim(a);
    int db = bdeg(b);
    const upoly& lb = b.rbegin()->second;
    if (bdeg(a) < db) return a;
    int scale_left = bdeg(a) - db + 1;
    while (bdeg(a) >= db && !a.empty()) {
        int da = bdeg(a);
        upoly la = a.rbegin()->second;
        a = bscale(a, lb);
        --scale_left;
        bpoly shifted;
        for (const auto& [d, c] : b) shifted[d + da - db] = umul(c, la);
        a = bsub(a, shifted);
    }
    for (; scale_left > 0; --scale_left) a = bscale(a, lb);
    return a;
}
inline upoly upow(const upoly& p, int e) {
    upoly r{BigInt(1)};
    for (int i = 0; i < e; ++i) r = umul(r, p);
    return r;
}

// bivariate gcd via the subresultant sequence in x over Z[y]
inline bpoly bgcd(bpoly a, bpoly b) {
    btrim(a); btrim(b);
    if (a.empty()) return b;
    if (b.empty()) return a;
    upoly ca = bcontent(a), cb = bcontent(b);
    a = bdiv_u(a, ca);
    b = bdiv_u(b, cb);
    if (bdeg(a) < bdeg(b)) std::swap(a, b);
    upoly g{BigInt(1)}, h{BigInt(1)};
    while (true) {
        if (bdeg(b) == 0) { b = bpoly{{0, upoly{BigInt(1)}}}; break; }
        int delta = bdeg(a) - bdeg(b);
        bpoly r = bprem(a, b);
        if (r.empty()) break;
        a = std::move(b);
        b = bdiv_u(r, umul(g, upow(h, delta)));
        g = a.rbegin()->second;
        if (delta > 0) h = udiv_exact(upow(g, delta), upow(h, delta - 1));
    }
    bpoly prim = bdiv_u(b, bcontent(b));
    upoly cg = ugcd(ca, cb);
    return bscale(prim, cg);
}

inline bpoly to_bpoly(const ParamLaurent& p, BigInt& denom_out) {
    // p must have nonnegative exponents; returns integer-coefficient polynomial
    // with denom_out the cleared common denominator
    BigInt den(1);
    for (const auto& [m, c] : p.terms()) den = den * (c.den() / BigInt::gcd(den, c.den()));
    bpoly out;
    for (const auto& [m, c] : p.terms()) {
        BigInt ic = c.num() * (den / c.den());
        auto& slot = out[m.a];
        if (static_cast<int>(slot.size()) <= m.b) slot.resize(m.b + 1, BigInt(0));
        slot[m.b] = slot[m.b] + ic;
    }
    btrim(out);
    denom_out = den;
    return out;
}
inline ParamLaurent from_bpoly(const bpoly& p) {
    ParamLaurent out;
    for (const auto& [d, c] : p)
        for (size_t i = 0; i < c.size(); ++i)
            if (!c[i].is_zero()) out.add_term({d, static_cast<int>(i)}, BigRat(c[i]));
    return out;
}

}  // namespace detail

// gcd of two Laurent polynomials, defined up to units; result is a primitive
// polynomial with support in the nonnegative cone.
inline ParamLaurent laurent_gcd(const ParamLaurent& p, const ParamLaurent& q) {
    if (p.is_zero()) return q;
    if (q.is_zero()) return p;
    ParamLaurent ps = p.shifted(p.min_monomial().inv());
    ParamLaurent qs = q.shifted(q.min_monomial().inv());
    BigInt dp, dq;
    detail::bpoly a = detail::to_bpoly(ps, dp);
    detail::bpoly b = detail::to_bpoly(qs, dq);
    detail::bpoly g = detail::bgcd(a, b);
    ParamLaurent out = detail::from_bpoly(g);
    // strip integer content and any shared monomial factor
    ParamLaurent shifted = out.shifted(out.min_monomial().inv());
    BigRat lead = shifted.terms().rbegin()->second;
    BigRat content(0);
    for (const auto& [m, c] : shifted.terms()) {
        content = BigRat(BigInt::gcd(content.num(), c.num()), BigInt(1));
    }
    if (lead.sign() < 0) content = -content;
    ParamLaurent res;
    for (const auto& [m, c] : shifted.terms()) res.add_term(m, c / content);
    return res;
}

// ---------------------------------------------------------------------------
// ParamRational: element of the fraction field Q(s1,s2) in canonical form.
// Canonical means: numerator and denominator coprime, denominator supported in
// the nonnegative cone with min exponents (0,0), and the denominator's
// graded-lex least monomial has coefficient +1.
class ParamRational {
public:
    ParamRational() : num_(), den_(1) {}
    ParamRational(long long v) : num_(v), den_(1) {}
    ParamRational(const BigRat& v) : num_(v), den_(1) {}
    ParamRational(ParamLaurent n) : num_(std::move(n)), den_(1) { canonicalize(); }
    ParamRational(ParamLaurent n, ParamLaurent d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_.is_zero()) throw error("ParamRational: zero denominator");
        canonicalize();
    }
    static ParamRational monomial(ParamMonomial m, BigRat c = BigRat(1)) {
        return ParamRational(ParamLaurent::monomial(m, std::move(c)));
    }

    const ParamLaurent& num() const { return num_; }
    const ParamLaurent& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_laurent() const { return den_.is_one(); }

    friend ParamRational operator+(const ParamRational& x, const ParamRational& y) {
        return ParamRational(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
    }
    friend ParamRational operator-(const ParamRational& x, const ParamRational& y) {
        return ParamRational(x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_);
    }
    friend ParamRational operator*(const ParamRational& x, const ParamRational& y) {
        return ParamRational(x.num_ * y.num_, x.den_ * y.den_);
    }
    friend ParamRational operator/(const ParamRational& x, const ParamRational& y) {
        if (y.is_zero()) throw error("ParamRational: division by zero");
        return ParamRational(x.num_ * y.den_, x.den_ * y.num_);
    }
    friend ParamRational operator-(const ParamRational& x) {
        ParamRational r = x;
        r.num_ = -r.num_;
        return r;
    }
    ParamRational& operator+=(const ParamRational& o) { *this = *this + o; return *this; }
    ParamRational& operator-=(const ParamRational& o) { *this = *this - o; return *this; }
    ParamRational& operator*=(const ParamRational& o) { *this = *this * o; return *this; }
    ParamRational& operator/=(const ParamRational& o) { *this = *this / o; return *this; }

    ParamRational inv() const {
        if (is_zero()) throw error("ParamRational: inverse of zero");
        return ParamRational(den_, num_);
    }

    ParamRational pow(int e) const {
        ParamRational r(1);
        ParamRational base = e < 0 ? inv() : *this;
        for (int i = 0; i < (e < 0 ? -e : e); ++i) r *= base;
        return r;
    }

    friend bool operator==(const ParamRational& x, const ParamRational& y) {
        return x.num_ == y.num_ && x.den_ == y.den_;
    }
    friend bool operator!=(const ParamRational& x, const ParamRational& y) { return !(x == y); }
    friend bool operator<(const ParamRational& x, const ParamRational& y) {
        if (x.num_ != y.num_) return x.num_ < y.num_;
        return x.den_ < y.den_;
    }

    std::string str() const {
        if (den_.is_one()) return num_.str();
        return "(" + num_.str() + ") / (" + den_.str() + ")";
    }

private:
    void canonicalize() {
        if (num_.is_zero()) { den_ = ParamLaurent(1); return; }
        ParamLaurent g = laurent_gcd(num_, den_);
        if (!g.is_one()) {
            num_ = exact_divide(num_, g);
            den_ = exact_divide(den_, g);
        }
        ParamMonomial shift = den_.min_monomial().inv();
        num_ = num_.shifted(shift);
        den_ = den_.shifted(shift);
        BigRat c = den_.terms().begin()->second;  // graded-lex least coefficient
        BigRat ci = c.inv();
        num_ = ci * num_;
        den_ = ci * den_;
    }

    ParamLaurent num_;
    ParamLaurent den_;
};

// ---------------------------------------------------------------------------
// Polynomials in gamma over Q (classical limit of the symmetrized matrix).
class GammaPoly {
public:
    GammaPoly() = default;
    GammaPoly(long long c) { if (c != 0) coef_.push_back(BigRat(c)); }
    GammaPoly(BigRat c) { if (!c.is_zero()) coef_.push_back(std::move(c)); }
    static GammaPoly gamma() { return from_coeffs({BigRat(0), BigRat(1)}); }
    static GammaPoly from_coeffs(std::vector<BigRat> c) {
        GammaPoly p;
        p.coef_ = std::move(c);
        p.trim();
        return p;
    }

    bool is_zero() const { return coef_.empty(); }
    int degree() const { return static_cast<int>(coef_.size()) - 1; }
    BigRat coeff(size_t i) const { return i < coef_.size() ? coef_[i] : BigRat(0); }

    friend GammaPoly operator+(const GammaPoly& x, const GammaPoly& y) {
        GammaPoly r = x;
        if (r.coef_.size() < y.coef_.size()) r.coef_.resize(y.coef_.size(), BigRat(0));
        for (size_t i = 0; i < y.coef_.size(); ++i) r.coef_[i] += y.coef_[i];
        r.trim();
        return r;
    }
    friend GammaPoly operator-(const GammaPoly& x, const GammaPoly& y) { return x + (-y); }
    friend GammaPoly operator-(const GammaPoly& x) {
        GammaPoly r = x;
        for (auto& c : r.coef_) c = -c;
        return r;
    }
    friend GammaPoly operator*(const GammaPoly& x, const GammaPoly& y) {
        if (x.is_zero() || y.is_zero()) return {};
        GammaPoly r;
        r.coef_.assign(x.coef_.size() + y.coef_.size() - 1, BigRat(0));
        for (size_t i = 0; i < x.coef_.size(); ++i)
            for (size_t j = 0; j < y.coef_.size(); ++j) r.coef_[i + j] += x.coef_[i] * y.coef_[j];
        r.trim();
        return r;
    }
    GammaPoly& operator+=(const GammaPoly& o) { *this = *this + o; return *this; }
    GammaPoly& operator-=(const GammaPoly& o) { *this = *this - o; return *this; }
    GammaPoly& operator*=(const GammaPoly& o) { *this = *this * o; return *this; }

    friend bool operator==(const GammaPoly& x, const GammaPoly& y) { return x.coef_ == y.coef_; }
    friend bool operator!=(const GammaPoly& x, const GammaPoly& y) { return !(x == y); }

    // exact division; throws if not divisible (Bareiss pivots are)
    friend GammaPoly exact_divide(const GammaPoly& p, const GammaPoly& d) {
        if (d.is_zero()) throw error("GammaPoly: division by zero");
        GammaPoly rem = p, q;
        if (rem.is_zero()) return q;
        q.coef_.assign(std::max<size_t>(rem.coef_.size(), d.coef_.size()), BigRat(0));
        while (!rem.is_zero() && rem.coef_.size() >= d.coef_.size()) {
            size_t shift = rem.coef_.size() - d.coef_.size();
            BigRat qc = rem.coef_.back() / d.coef_.back();
            q.coef_[shift] = qc;
            for (size_t i = 0; i < d.coef_.size(); ++i)
                rem.coef_[shift + i] -= qc * d.coef_[i];
            rem.trim();
        }
        if (!rem.is_zero()) throw not_divisible("GammaPoly: not divisible");
        q.trim();
        return q;
    }

    std::string str() const {
        if (coef_.empty()) return "0";
        std::string s;
        for (size_t i = coef_.size(); i-- > 0;) {
            if (coef_[i].is_zero()) continue;
            std::string cs = coef_[i].str();
            if (!s.empty()) {
                if (cs[0] == '-') { s += " - "; cs = cs.substr(1); }
                else s += " + ";
            }
            if (i == 0) s += cs;
            else {
                if (cs == "1") s += "";
                else if (cs == "-1") s += "-";
                else s += cs + "*";
                s += i == 1 ? "g" : "g^" + std::to_string(i);
            }
        }
        return s;
    }

private:
    void trim() {
        while (!coef_.empty() && coef_.back().is_zero()) coef_.pop_back();
    }
    std::vector<BigRat> coef_;
};

// Classical limit of a symmetrized-matrix entry: with s1 = s3^{-g} and
// s2 = s3^{-(1-g)}, a monomial s1^a s2^b tends to s3^{c(g)} with
// c(g) = -a*g - b*(1-g); the limit of t3^{-2} * p exists iff the coefficient
// sums of order 0 and 1 vanish, and then equals (1/8) * sum n_j c_j(g)^2.
// Returns the negated limit, i.e. the corresponding entry of K.
inline GammaPoly gamma_limit(const ParamLaurent& p) {
    BigRat s0(0);          // sum n_j
    BigRat lin0(0), lin1(0);  // sum n_j c_j as constant + gamma coefficient
    BigRat q0(0), q1(0), q2(0);
    for (const auto& [m, n] : p.terms()) {
        BigRat a(m.a), b(m.b);
        // c(g) = (b - a) g - b
        BigRat cg = b - a, cc = -b;
        s0 += n;
        lin0 += n * cc;
        lin1 += n * cg;
        q0 += n * cc * cc;
        q1 += n * BigRat(2) * cc * cg;
        q2 += n * cg * cg;
    }
    if (!s0.is_zero() || !lin0.is_zero() || !lin1.is_zero())
        throw limit_diverges("gamma_limit: limit does not exist");
    BigRat k(-1, 8);
    return GammaPoly::from_coeffs({k * q0, k * q1, k * q2});
}

}  // namespace qqforge

#endif
