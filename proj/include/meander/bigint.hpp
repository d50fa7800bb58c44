#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace meander {

// Arbitrary-precision signed integer, sign + magnitude in base 2^32.
// Magnitudes in this project stay small (a few hundred bits: factorials up
// to ~60!, central binomials up to C(204,102)), so schoolbook arithmetic
// is plenty.
class BigInt {
public:
    BigInt() = default;

    BigInt(long long v) {  // NOLINT(google-explicit-constructor)
        if (v < 0) {
            negative_ = true;
            // avoid overflow on LLONG_MIN
            unsigned long long u = ~static_cast<unsigned long long>(v) + 1ULL;
            assign_u64(u);
        } else {
            assign_u64(static_cast<unsigned long long>(v));
        }
    }

    BigInt(int v) : BigInt(static_cast<long long>(v)) {}  // NOLINT(google-explicit-constructor)

    static BigInt from_string(const std::string& s) {
        BigInt r;
        size_t i = 0;
        bool neg = false;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
            neg = (s[i] == '-');
            ++i;
        }
        if (i == s.size()) throw std::invalid_argument("BigInt: empty numeral");
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9')
                throw std::invalid_argument("BigInt: bad digit in numeral");
            r.mul_small(10);
            r.add_small(static_cast<uint32_t>(s[i] - '0'));
        }
        r.negative_ = neg && !r.is_zero();
        return r;
    }

    bool is_zero() const { return limbs_.empty(); }
    bool is_negative() const { return negative_; }
    int sign() const { return is_zero() ? 0 : (negative_ ? -1 : 1); }

    bool operator==(const BigInt& o) const {
        return negative_ == o.negative_ && limbs_ == o.limbs_;
    }
    bool operator!=(const BigInt& o) const { return !(*this == o); }

    bool operator<(const BigInt& o) const {
        if (negative_ != o.negative_) return negative_;
        int c = cmp_mag(limbs_, o.limbs_);
        return negative_ ? c > 0 : c < 0;
    }
    bool operator>(const BigInt& o) const { return o < *this; }
    bool operator<=(const BigInt& o) const { return !(o < *this); }
    bool operator>=(const BigInt& o) const { return !(*this < o); }

    BigInt operator-() const {
        BigInt r = *this;
        if (!r.is_zero()) r.negative_ = !r.negative_;
        return r;
    }

    BigInt operator+(const BigInt& o) const {
        BigInt r;
        if (negative_ == o.negative_) {
            r.limbs_ = add_mag(limbs_, o.limbs_);
            r.negative_ = negative_ && !r.limbs_.empty();
        } else {
            int c = cmp_mag(limbs_, o.limbs_);
            if (c == 0) return BigInt();
            if (c > 0) {
                r.limbs_ = sub_mag(limbs_, o.limbs_);
                r.negative_ = negative_;
            } else {
                r.limbs_ = sub_mag(o.limbs_, limbs_);
                r.negative_ = o.negative_;
            }
        }
        return r;
    }

    BigInt operator-(const BigInt& o) const { return *this + (-o); }

    BigInt operator*(const BigInt& o) const {
        if (is_zero() || o.is_zero()) return BigInt();
        BigInt r;
        r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
        for (size_t i = 0; i < limbs_.size(); ++i) {
            uint64_t carry = 0;
            for (size_t j = 0; j < o.limbs_.size(); ++j) {
                uint64_t cur = static_cast<uint64_t>(limbs_[i]) * o.limbs_[j] +
                               r.limbs_[i + j] + carry;
                r.limbs_[i + j] = static_cast<uint32_t>(cur);
                carry = cur >> 32;
            }
            r.limbs_[i + o.limbs_.size()] += static_cast<uint32_t>(carry);
        }
        r.trim();
        r.negative_ = (negative_ != o.negative_);
        return r;
    }

    // Truncated quotient (rounds toward zero), matching C++ integer division.
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
        if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
        int c = cmp_mag(a.limbs_, b.limbs_);
        if (c < 0) {
            q = BigInt();
            r = a;
            return;
        }
        q.limbs_.clear();
        r = BigInt();
        // binary long division on magnitudes, most significant bit first
        q.limbs_.assign(a.limbs_.size(), 0);
        for (size_t bit = a.limbs_.size() * 32; bit-- > 0;) {
            r.shl1();
            if (a.limbs_[bit / 32] >> (bit % 32) & 1u) r.set_bit0();
            if (cmp_mag(r.limbs_, b.limbs_) >= 0) {
                r.limbs_ = sub_mag(r.limbs_, b.limbs_);
                q.limbs_[bit / 32] |= (1u << (bit % 32));
            }
        }
        q.trim();
        r.trim();
        q.negative_ = (a.negative_ != b.negative_) && !q.is_zero();
        r.negative_ = a.negative_ && !r.is_zero();
    }

    BigInt operator/(const BigInt& o) const {
        BigInt q, r;
        divmod(*this, o, q, r);
        return q;
    }
    BigInt operator%(const BigInt& o) const {
        BigInt q, r;
        divmod(*this, o, q, r);
        return r;
    }

    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    static BigInt gcd(BigInt a, BigInt b) {
        a.negative_ = false;
        b.negative_ = false;
        while (!b.is_zero()) {
            BigInt q, r;
            divmod(a, b, q, r);
            a = b;
            b = r;
        }
        return a;
    }

    static BigInt pow(const BigInt& base, unsigned e) {
        BigInt r(1), b = base;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    static BigInt factorial(unsigned n) {
        BigInt r(1);
        for (unsigned i = 2; i <= n; ++i) r.mul_small(i);
        return r;
    }

    static BigInt binomial(unsigned n, long long k) {
        if (k < 0 || static_cast<unsigned long long>(k) > n) return BigInt(0);
        unsigned kk = static_cast<unsigned>(k);
        if (kk > n - kk) kk = n - kk;
        BigInt num(1);
        for (unsigned i = 0; i < kk; ++i) {
            num.mul_small(n - i);
            num = num / BigInt(static_cast<long long>(i + 1));
        }
        return num;
    }

    // n!! with the convention 0!! = 1, (-1)!! = 1.
    static BigInt double_factorial(int n) {
        BigInt r(1);
        for (int i = n; i >= 2; i -= 2) r.mul_small(static_cast<uint32_t>(i));
        return r;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::vector<uint32_t> mag = limbs_;
        std::string digits;
        while (!mag.empty()) {
            uint64_t rem = 0;
            for (size_t i = mag.size(); i-- > 0;) {
                uint64_t cur = (rem << 32) | mag[i];
                mag[i] = static_cast<uint32_t>(cur / 1000000000ULL);
                rem = cur % 1000000000ULL;
            }
            while (!mag.empty() && mag.back() == 0) mag.pop_back();
            for (int d = 0; d < 9; ++d) {
                digits.push_back(static_cast<char>('0' + rem % 10));
                rem /= 10;
            }
        }
        while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
        std::string out;
        if (negative_) out.push_back('-');
        out.append(digits.rbegin(), digits.rend());
        return out;
    }

    // Lossy conversion for reporting.
    long double to_long_double() const {
        long double v = 0.0L;
        for (size_t i = limbs_.size(); i-- > 0;) v = v * 4294967296.0L + limbs_[i];
        return negative_ ? -v : v;
    }

    bool fits_i64() const {
        if (limbs_.size() > 2) return false;
        unsigned long long mag = 0;
        for (size_t i = limbs_.size(); i-- > 0;) mag = (mag << 32) | limbs_[i];
        return negative_ ? mag <= (1ULL << 63) : mag < (1ULL << 63);
    }

    long long to_i64() const {
        if (!fits_i64()) throw std::overflow_error("BigInt: does not fit int64");
        unsigned long long mag = 0;
        for (size_t i = limbs_.size(); i-- > 0;) mag = (mag << 32) | limbs_[i];
        return negative_ ? -static_cast<long long>(mag) : static_cast<long long>(mag);
    }

private:
    // little-endian limbs; empty means zero
    std::vector<uint32_t> limbs_;
    bool negative_ = false;

    void assign_u64(unsigned long long u) {
        limbs_.clear();
        while (u) {
            limbs_.push_back(static_cast<uint32_t>(u));
            u >>= 32;
        }
    }

    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
        if (limbs_.empty()) negative_ = false;
    }

    void mul_small(uint32_t f) {
        uint64_t carry = 0;
        for (auto& l : limbs_) {
            uint64_t cur = static_cast<uint64_t>(l) * f + carry;
            l = static_cast<uint32_t>(cur);
            carry = cur >> 32;
        }
        if (carry) limbs_.push_back(static_cast<uint32_t>(carry));
        trim();
    }

    void add_small(uint32_t v) {
        uint64_t carry = v;
        for (size_t i = 0; carry && i < limbs_.size(); ++i) {
            uint64_t cur = limbs_[i] + carry;
            limbs_[i] = static_cast<uint32_t>(cur);
            carry = cur >> 32;
        }
        if (carry) limbs_.push_back(static_cast<uint32_t>(carry));
    }

    void shl1() {
        uint32_t carry = 0;
        for (auto& l : limbs_) {
            uint32_t nc = l >> 31;
            l = (l << 1) | carry;
            carry = nc;
        }
        if (carry) limbs_.push_back(carry);
    }

    void set_bit0() {
        if (limbs_.empty()) limbs_.push_back(1);
        else limbs_[0] |= 1u;
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
            uint64_t cur = static_cast<uint64_t>(r[i]) + carry +
                           (i < small.size() ? small[i] : 0u);
            r[i] = static_cast<uint32_t>(cur);
            carry = cur >> 32;
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
            int64_t cur = static_cast<int64_t>(r[i]) - borrow -
                          (i < b.size() ? b[i] : 0u);
            if (cur < 0) {
                cur += (1LL << 32);
                borrow = 1;
            } else {
                borrow = 0;
            }
            r[i] = static_cast<uint32_t>(cur);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
};

}  // namespace meander
