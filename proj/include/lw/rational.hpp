#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <ostream>
#include <string>
#include <string_view>

namespace lw {

// Arbitrary-precision rational, kept in lowest terms with a positive
// denominator.  Thin value wrapper over GMP's mpq.
class Rat {
public:
    Rat() = default;
    template <std::integral T>
    Rat(T v) : q_(static_cast<long>(v)) {}  // NOLINT: implicit by intent
    Rat(long num, long den);
    explicit Rat(const mpz_class& z) : q_(z) {}
    explicit Rat(mpq_class q);

    static Rat parse(std::string_view s);
    std::string str() const { return q_.get_str(); }

    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }
    bool is_integer() const { return q_.get_den() == 1; }
    bool is_zero() const { return sgn(q_) == 0; }
    int sign() const { return sgn(q_); }
    double to_double() const { return q_.get_d(); }
    const mpq_class& raw() const { return q_; }

    Rat operator-() const;
    Rat& operator+=(const Rat& o);
    Rat& operator-=(const Rat& o);
    Rat& operator*=(const Rat& o);
    Rat& operator/=(const Rat& o);

    friend Rat operator+(const Rat& a, const Rat& b);
    friend Rat operator-(const Rat& a, const Rat& b);
    friend Rat operator*(const Rat& a, const Rat& b);
    friend Rat operator/(const Rat& a, const Rat& b);

    friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

private:
    mpq_class q_;
};

Rat abs(const Rat& r);

}  // namespace lw
