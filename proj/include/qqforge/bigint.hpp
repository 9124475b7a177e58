#ifndef QQFORGE_BIGINT_HPP
#define QQFORGE_BIGINT_HPP

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace qqforge {

// Arbitrary-precision signed integer, sign + base-2^32 magnitude.
// The polynomial layer above is the hot path; coefficients rarely exceed a
// few limbs.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v) {
        if (v < 0) { neg_ = true; }
        unsigned long long u = neg_ ? 0ULL - static_cast<unsigned long long>(v)
                                    : static_cast<unsigned long long>(v);
        while (u) { limb_.push_back(static_cast<uint32_t>(u & 0xffffffffULL)); u >>= 32; }
    }

    bool is_zero() const { return limb_.empty(); }
    bool is_negative() const { return neg_; }
    bool is_one() const { return !neg_ && limb_.size() == 1 && limb_[0] == 1; }

    int sign() const { return limb_.empty() ? 0 : (neg_ ? -1 : 1); }

    friend bool operator==(const BigInt& a, const BigInt& b) {
        return a.neg_ == b.neg_ && a.limb_ == b.limb_;
    }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
    friend bool operator<(const BigInt& a, const BigInt& b) {
        if (a.neg_ != b.neg_) return a.neg_;
        int c = cmp_mag(a.limb_, b.limb_);
        return a.neg_ ? c > 0 : c < 0;
    }

    friend BigInt operator-(const BigInt& a) {
        BigInt r = a;
        if (!r.limb_.empty()) r.neg_ = !r.neg_;
        return r;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.neg_ == b.neg_) {
            BigInt r;
            r.limb_ = add_mag(a.limb_, b.limb_);
            r.neg_ = a.neg_ && !r.limb_.empty();
            return r;
        }
        int c = cmp_mag(a.limb_, b.limb_);
        BigInt r;
        if (c == 0) return r;
        if (c > 0) { r.limb_ = sub_mag(a.limb_, b.limb_); r.neg_ = a.neg_; }
        else       { r.limb_ = sub_mag(b.limb_, a.limb_); r.neg_ = b.neg_; }
        return r;
    }
    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        BigInt r;
        if (a.is_zero() || b.is_zero()) return r;
        r.limb_.assign(a.limb_.size() + b.limb_.size(), 0);
        for (size_t i = 0; i < a.limb_.size(); ++i) {
            uint64_t carry = 0;
            for (size_t j = 0; j < b.limb_.size(); ++j) {
                uint64_t cur = static_cast<uint64_t>(a.limb_[i]) * b.limb_[j]
                             + r.limb_[i + j] + carry;
                r.limb_[i + j] = static_cast<uint32_t>(cur & 0xffffffffULL);
                carry = cur >> 32;
            }
            size_t k = i + b.limb_.size();
            while (carry) {
                uint64_t cur = r.limb_[k] + carry;
                r.limb_[k] = static_cast<uint32_t>(cur & 0xffffffffULL);
                carry = cur >> 32;
                ++k;
            }
        }
        r.trim();
        r.neg_ = (a.neg_ != b.neg_);
        return r;
    }

    // Truncated quotient (rounds toward zero), as in C integer division.
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
        if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
        int c = cmp_mag(a.limb_, b.limb_);
        if (c < 0) { q = BigInt(); r = a; return; }
        std::vector<uint32_t> qm, rm;
        divmod_mag(a.limb_, b.limb_, qm, rm);
        q.limb_ = std::move(qm); q.trim();
        r.limb_ = std::move(rm); r.trim();
        q.neg_ = !q.limb_.empty() && (a.neg_ != b.neg_);
        r.neg_ = !r.limb_.empty() && a.neg_;
    }
    friend BigInt operator/(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return q;
    }
    friend BigInt operator%(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return r;
    }

    static BigInt gcd(BigInt a, BigInt b) {
        a.neg_ = false; b.neg_ = false;
        while (!b.is_zero()) {
            BigInt q, r;
            divmod(a, b, q, r);
            a = b;
            r.neg_ = false;
            b = r;
        }
        return a;
    }

    BigInt abs() const { BigInt r = *this; r.neg_ = false; return r; }

    // Fits-in-long-long check used by tests; throws if it does not fit.
    long long to_ll() const {
        if (limb_.size() > 2) throw std::overflow_error("BigInt: to_ll overflow");
        unsigned long long u = 0;
        for (size_t i = limb_.size(); i-- > 0;) u = (u << 32) | limb_[i];
        if (u > 0x7fffffffffffffffULL + (neg_ ? 1ULL : 0ULL))
            throw std::overflow_error("BigInt: to_ll overflow");
        return neg_ ? -static_cast<long long>(u) : static_cast<long long>(u);
    }

    std::string str() const {
        if (limb_.empty()) return "0";
        std::vector<uint32_t> m = limb_;
        std::string digits;
        while (!m.empty()) {
            uint64_t rem = 0;
            for (size_t i = m.size(); i-- > 0;) {
                uint64_t cur = (rem << 32) | m[i];
                m[i] = static_cast<uint32_t>(cur / 1000000000ULL);
                rem = cur % 1000000000ULL;
            }
            while (!m.empty() && m.back() == 0) m.pop_back();
            for (int d = 0; d < 9; ++d) {
                digits.push_back(static_cast<char>('0' + rem % 10));
                rem /= 10;
            }
        }
        while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
        std::string out;
        if (neg_) out.push_back('-');
        out.append(digits.rbegin(), digits.rend());
        return out;
    }

private:
    void trim() {
        while (!limb_.empty() && limb_.back() == 0) limb_.pop_back();
        if (limb_.empty()) neg_ = false;
    }

    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a,
                                         const std::vector<uint32_t>& b) {
        const auto& big = a.size() >= b.size() ? a : b;
        const auto& small = a.size() >= b.size() ? b : a;
        std::vector<uint32_t> r = big;
        uint64_t carry = 0;
        for (size_t i = 0; i < r.size(); ++i) {
            uint64_t cur = static_cast<uint64_t>(r[i]) + (i < small.size() ? small[i] : 0) + carry;
            r[i] = static_cast<uint32_t>(cur & 0xffffffffULL);
            carry = cur >> 32;
            if (carry == 0 && i >= small.size()) break;
        }
        if (carry) r.push_back(static_cast<uint32_t>(carry));
        return r;
    }
    // requires |a| >= |b|
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a,
                                         const std::vector<uint32_t>& b) {
        std::vector<uint32_t> r = a;
        int64_t borrow = 0;
        for (size_t i = 0; i < r.size(); ++i) {
            int64_t cur = static_cast<int64_t>(r[i]) - (i < b.size() ? b[i] : 0) - borrow;
            borrow = cur < 0;
            if (cur < 0) cur += (1LL << 32);
            r[i] = static_cast<uint32_t>(cur);
            if (borrow == 0 && i >= b.size()) break;
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
    // Knuth algorithm D on magnitudes; |a| >= |b|, b nonzero.
    static void divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                           std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
        if (b.size() == 1) {
            q.assign(a.size(), 0);
            uint64_t rem = 0;
            for (size_t i = a.size(); i-- > 0;) {
                uint64_t cur = (rem << 32) | a[i];
                q[i] = static_cast<uint32_t>(cur / b[0]);
                rem = cur % b[0];
            }
            r.clear();
            if (rem) r.push_back(static_cast<uint32_t>(rem));
            return;
        }
        int shift = 0;
        for (uint32_t top = b.back(); (top & 0x80000000u) == 0; top <<= 1) ++shift;
        auto shl = [&](const std::vector<uint32_t>& v) {
            std::vector<uint32_t> o(v.size() + 1, 0);
            for (size_t i = 0; i < v.size(); ++i) {
                o[i] |= shift ? (v[i] << shift) : v[i];
                if (shift) o[i + 1] = v[i] >> (32 - shift);
            }
            while (!o.empty() && o.back() == 0) o.pop_back();
            return o;
        };
        std::vector<uint32_t> u = shl(a), v = shl(b);
        size_t n = v.size(), m = u.size() - n;
        u.push_back(0);
        q.assign(m + 1, 0);
        for (size_t j = m + 1; j-- > 0;) {
            uint64_t num = (static_cast<uint64_t>(u[j + n]) << 32) | u[j + n - 1];
            uint64_t qh = num / v[n - 1], rh = num % v[n - 1];
            while (qh >= (1ULL << 32) ||
                   (n >= 2 && qh * v[n - 2] > ((rh << 32) | u[j + n - 2]))) {
                --qh; rh += v[n - 1];
                if (rh >= (1ULL << 32)) break;
            }
            int64_t borrow = 0; uint64_t carry = 0;
            for (size_t i = 0; i < n; ++i) {
                uint64_t p = qh * v[i] + carry;
                carry = p >> 32;
                int64_t t = static_cast<int64_t>(u[i + j]) - static_cast<int64_t>(p & 0xffffffffULL) - borrow;
                borrow = t < 0;
                if (t < 0) t += (1LL << 32);
                u[i + j] = static_cast<uint32_t>(t);
            }
            int64_t t = static_cast<int64_t>(u[j + n]) - static_cast<int64_t>(carry) - borrow;
            if (t < 0) {
                t += (1LL << 32);
                --qh;
                uint64_t c2 = 0;
                for (size_t i = 0; i < n; ++i) {
                    uint64_t cur = static_cast<uint64_t>(u[i + j]) + v[i] + c2;
                    u[i + j] = static_cast<uint32_t>(cur & 0xffffffffULL);
                    c2 = cur >> 32;
                }
                t += static_cast<int64_t>(c2);
            }
            u[j + n] = static_cast<uint32_t>(t);
            q[j] = static_cast<uint32_t>(qh);
        }
        r.assign(u.begin(), u.begin() + n);
        if (shift) {
            for (size_t i = 0; i < r.size(); ++i) {
                r[i] >>= shift;
                if (i + 1 < n) r[i] |= u[i + 1] << (32 - shift);
            }
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
    }

    bool neg_ = false;
    std::vector<uint32_t> limb_;  // little-endian, no trailing zeros
};

// Exact rational with normalized sign and lowest terms.
class BigRat {
public:
    BigRat() : num_(0), den_(1) {}
    BigRat(long long v) : num_(v), den_(1) {}
    BigRat(BigInt n) : num_(std::move(n)), den_(1) {}
    BigRat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
    BigRat(long long n, long long d) : num_(n), den_(d) { normalize(); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_integer() const { return den_.is_one(); }
    int sign() const { return num_.sign(); }

    friend bool operator==(const BigRat& a, const BigRat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const BigRat& a, const BigRat& b) { return !(a == b); }
    friend bool operator<(const BigRat& a, const BigRat& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }

    friend BigRat operator+(const BigRat& a, const BigRat& b) {
        return BigRat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend BigRat operator-(const BigRat& a, const BigRat& b) {
        return BigRat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend BigRat operator*(const BigRat& a, const BigRat& b) {
        return BigRat(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend BigRat operator/(const BigRat& a, const BigRat& b) {
        if (b.is_zero()) throw std::domain_error("BigRat: division by zero");
        return BigRat(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend BigRat operator-(const BigRat& a) { return BigRat(-a.num_, a.den_); }
    BigRat& operator+=(const BigRat& o) { *this = *this + o; return *this; }
    BigRat& operator-=(const BigRat& o) { *this = *this - o; return *this; }
    BigRat& operator*=(const BigRat& o) { *this = *this * o; return *this; }
    BigRat& operator/=(const BigRat& o) { *this = *this / o; return *this; }

    BigRat inv() const {
        if (is_zero()) throw std::domain_error("BigRat: inverse of zero");
        return BigRat(den_, num_);
    }

    std::string str() const {
        if (den_.is_one()) return num_.str();
        return num_.str() + "/" + den_.str();
    }

private:
    void normalize() {
        if (den_.is_zero()) throw std::domain_error("BigRat: zero denominator");
        if (num_.is_zero()) { den_ = BigInt(1); return; }
        BigInt g = BigInt::gcd(num_, den_);
        num_ = num_ / g;
        den_ = den_ / g;
        if (den_.is_negative()) { num_ = -num_; den_ = -den_; }
    }

    BigInt num_;
    BigInt den_;
};

}  // namespace qqforge

#endif
