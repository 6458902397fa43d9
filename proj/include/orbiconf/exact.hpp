// Exact scalar types used by every chain-level computation.
//
// Integer and Rational keep values that fit in 64 bits inline and fall back
// to GMP only on overflow. Boundary matrices of combinatorial complexes have
// tiny entries, so almost all arithmetic stays on the fast path.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>

namespace orbiconf {

namespace detail {

using i128 = __int128;
using u128 = unsigned __int128;

inline u128 uabs128(i128 v) { return v < 0 ? u128(-(v + 1)) + 1 : u128(v); }

inline u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline bool fits64(i128 v) {
    return v >= i128(INT64_MIN) && v <= i128(INT64_MAX);
}

inline mpz_class mpz_from_i128(i128 v) {
    bool neg = v < 0;
    u128 u = uabs128(v);
    mpz_class hi(static_cast<unsigned long>(uint64_t(u >> 64)));
    mpz_class lo(static_cast<unsigned long>(uint64_t(u)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

inline mpz_class mpz_from_i64(int64_t v) { return mpz_class(static_cast<long>(v)); }

} // namespace detail

class Integer {
public:
    Integer() = default;
    Integer(int v) : small_(v) {}
    Integer(long v) : small_(v) {}
    Integer(long long v) : small_(v) {}
    explicit Integer(const mpz_class& v) { assign(v); }

    Integer(const Integer& o) : small_(o.small_) {
        if (o.big_) big_ = std::make_unique<mpz_class>(*o.big_);
    }
    Integer(Integer&&) noexcept = default;
    Integer& operator=(const Integer& o) {
        if (this != &o) {
            small_ = o.small_;
            big_ = o.big_ ? std::make_unique<mpz_class>(*o.big_) : nullptr;
        }
        return *this;
    }
    Integer& operator=(Integer&&) noexcept = default;

    bool is_small() const { return !big_; }
    int64_t small_value() const { return small_; }
    mpz_class to_mpz() const { return big_ ? *big_ : detail::mpz_from_i64(small_); }

    bool is_zero() const { return !big_ && small_ == 0; }
    int sign() const {
        if (big_) return sgn(*big_);
        return (small_ > 0) - (small_ < 0);
    }
    bool is_unit() const { return !big_ && (small_ == 1 || small_ == -1); }

    friend Integer operator+(const Integer& a, const Integer& b) {
        if (!a.big_ && !b.big_) {
            int64_t r;
            if (!__builtin_add_overflow(a.small_, b.small_, &r)) return Integer(static_cast<long long>(r));
        }
        return Integer(mpz_class(a.to_mpz() + b.to_mpz()));
    }
    friend Integer operator-(const Integer& a, const Integer& b) {
        if (!a.big_ && !b.big_) {
            int64_t r;
            if (!__builtin_sub_overflow(a.small_, b.small_, &r)) return Integer(static_cast<long long>(r));
        }
        return Integer(mpz_class(a.to_mpz() - b.to_mpz()));
    }
    friend Integer operator*(const Integer& a, const Integer& b) {
        if (!a.big_ && !b.big_) {
            int64_t r;
            if (!__builtin_mul_overflow(a.small_, b.small_, &r)) return Integer(static_cast<long long>(r));
        }
        return Integer(mpz_class(a.to_mpz() * b.to_mpz()));
    }
    // Truncating division, as for built-in integers.
    friend Integer operator/(const Integer& a, const Integer& b) {
        if (b.is_zero()) throw std::domain_error("Integer division by zero");
        if (!a.big_ && !b.big_ && !(a.small_ == INT64_MIN && b.small_ == -1))
            return Integer(static_cast<long long>(a.small_ / b.small_));
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
        return Integer(q);
    }
    friend Integer operator%(const Integer& a, const Integer& b) {
        if (b.is_zero()) throw std::domain_error("Integer division by zero");
        if (!a.big_ && !b.big_ && !(a.small_ == INT64_MIN && b.small_ == -1))
            return Integer(static_cast<long long>(a.small_ % b.small_));
        mpz_class r;
        mpz_tdiv_r(r.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
        return Integer(r);
    }
    Integer operator-() const { return Integer(0) - *this; }
    Integer& operator+=(const Integer& o) { return *this = *this + o; }
    Integer& operator-=(const Integer& o) { return *this = *this - o; }
    Integer& operator*=(const Integer& o) { return *this = *this * o; }

    friend bool operator==(const Integer& a, const Integer& b) {
        if (!a.big_ && !b.big_) return a.small_ == b.small_;
        return a.to_mpz() == b.to_mpz();
    }
    friend bool operator<(const Integer& a, const Integer& b) {
        if (!a.big_ && !b.big_) return a.small_ < b.small_;
        return a.to_mpz() < b.to_mpz();
    }
    friend bool operator!=(const Integer& a, const Integer& b) { return !(a == b); }
    friend bool operator>(const Integer& a, const Integer& b) { return b < a; }
    friend bool operator<=(const Integer& a, const Integer& b) { return !(b < a); }
    friend bool operator>=(const Integer& a, const Integer& b) { return !(a < b); }

    friend Integer abs(const Integer& a) { return a.sign() < 0 ? -a : a; }
    friend Integer gcd(const Integer& a, const Integer& b) {
        if (!a.big_ && !b.big_) {
            detail::u128 g = detail::gcd128(detail::uabs128(a.small_), detail::uabs128(b.small_));
            if (g <= detail::u128(INT64_MAX)) return Integer(static_cast<long long>(g));
        }
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
        return Integer(g);
    }

    std::string to_string() const { return big_ ? big_->get_str() : std::to_string(small_); }
    friend std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.to_string(); }

private:
    void assign(const mpz_class& v) {
        if (mpz_fits_slong_p(v.get_mpz_t())) {
            small_ = v.get_si();
            big_.reset();
        } else {
            small_ = 0;
            big_ = std::make_unique<mpz_class>(v);
        }
    }

    int64_t small_ = 0;
    std::unique_ptr<mpz_class> big_;
};

class Rational {
public:
    Rational() = default;
    Rational(int v) : num_(v) {}
    Rational(long v) : num_(v) {}
    Rational(long long v) : num_(v) {}
    Rational(long long n, long long d) { set_small(n, d); }
    Rational(const Integer& v) {
        if (v.is_small()) num_ = v.small_value();
        else assign(mpq_class(v.to_mpz()));
    }
    explicit Rational(const mpq_class& v) { assign(v); }

    Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
        if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
    }
    Rational(Rational&&) noexcept = default;
    Rational& operator=(const Rational& o) {
        if (this != &o) {
            num_ = o.num_;
            den_ = o.den_;
            big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
        }
        return *this;
    }
    Rational& operator=(Rational&&) noexcept = default;

    mpq_class to_mpq() const {
        if (big_) return *big_;
        mpq_class q(detail::mpz_from_i64(num_), detail::mpz_from_i64(den_));
        return q;
    }
    bool is_zero() const { return !big_ && num_ == 0; }
    int sign() const {
        if (big_) return sgn(*big_);
        return (num_ > 0) - (num_ < 0);
    }
    bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }
    bool is_unit() const { return !big_ && den_ == 1 && (num_ == 1 || num_ == -1); }
    Integer numerator() const { return big_ ? Integer(mpz_class(big_->get_num())) : Integer(static_cast<long long>(num_)); }
    Integer denominator() const { return big_ ? Integer(mpz_class(big_->get_den())) : Integer(static_cast<long long>(den_)); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) {
            if (a.den_ == 1 && b.den_ == 1) {
                int64_t r;
                if (!__builtin_add_overflow(a.num_, b.num_, &r)) return Rational(static_cast<long long>(r));
            }
            return from128(detail::i128(a.num_) * b.den_ + detail::i128(b.num_) * a.den_,
                           detail::i128(a.den_) * b.den_);
        }
        return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) {
            if (a.den_ == 1 && b.den_ == 1) {
                int64_t r;
                if (!__builtin_sub_overflow(a.num_, b.num_, &r)) return Rational(static_cast<long long>(r));
            }
            return from128(detail::i128(a.num_) * b.den_ - detail::i128(b.num_) * a.den_,
                           detail::i128(a.den_) * b.den_);
        }
        return Rational(mpq_class(a.to_mpq() - b.to_mpq()));
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) {
            if (a.den_ == 1 && b.den_ == 1) {
                int64_t r;
                if (!__builtin_mul_overflow(a.num_, b.num_, &r)) return Rational(static_cast<long long>(r));
            }
            return from128(detail::i128(a.num_) * b.num_, detail::i128(a.den_) * b.den_);
        }
        return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational division by zero");
        if (!a.big_ && !b.big_) {
            if (b.den_ == 1 && (b.num_ == 1 || b.num_ == -1) && a.num_ != INT64_MIN)
                return b.num_ == 1 ? a : -a;
            return from128(detail::i128(a.num_) * b.den_, detail::i128(a.den_) * b.num_);
        }
        return Rational(mpq_class(a.to_mpq() / b.to_mpq()));
    }
    Rational operator-() const {
        if (!big_ && num_ != INT64_MIN) {
            Rational r;
            r.num_ = -num_;
            r.den_ = den_;
            return r;
        }
        return Rational(mpq_class(-to_mpq()));
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
        return a.to_mpq() == b.to_mpq();
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_)
            return detail::i128(a.num_) * b.den_ < detail::i128(b.num_) * a.den_;
        return a.to_mpq() < b.to_mpq();
    }

    friend Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

    std::string to_string() const {
        if (big_) return big_->get_str();
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }
    friend std::ostream& operator<<(std::ostream& os, const Rational& v) { return os << v.to_string(); }

private:
    static Rational from128(detail::i128 n, detail::i128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        detail::u128 g = detail::gcd128(detail::uabs128(n), detail::u128(d));
        if (g > 1) {
            n /= detail::i128(g);
            d /= detail::i128(g);
        }
        Rational r;
        if (detail::fits64(n) && detail::fits64(d)) {
            r.num_ = int64_t(n);
            r.den_ = int64_t(d);
        } else {
            r.big_ = std::make_unique<mpq_class>(detail::mpz_from_i128(n), detail::mpz_from_i128(d));
            r.big_->canonicalize();
        }
        return r;
    }

    void set_small(long long n, long long d) {
        if (d == 0) throw std::domain_error("Rational with zero denominator");
        *this = from128(n, d);
    }

    void assign(const mpq_class& v) {
        if (mpz_fits_slong_p(v.get_num_mpz_t()) && mpz_fits_slong_p(v.get_den_mpz_t())) {
            num_ = v.get_num().get_si();
            den_ = v.get_den().get_si();
            big_.reset();
        } else {
            num_ = 0;
            den_ = 1;
            big_ = std::make_unique<mpq_class>(v);
        }
    }

    int64_t num_ = 0;
    int64_t den_ = 1;
    std::unique_ptr<mpq_class> big_;
};

template <class T>
inline bool is_zero(const T& v) { return v.is_zero(); }
inline bool is_zero(long long v) { return v == 0; }

} // namespace orbiconf
