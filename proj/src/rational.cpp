#include "lw/rational.hpp"

#include "lw/error.hpp"

namespace lw {

Rat::Rat(long num, long den) {
    if (den == 0) fail(ErrorKind::InvalidInput, "rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rat::Rat(mpq_class q) : q_(std::move(q)) {
    if (q_.get_den() == 0) fail(ErrorKind::InvalidInput, "rational with zero denominator");
    q_.canonicalize();
}

Rat Rat::parse(std::string_view s) {
    std::string text(s);
    auto slash = text.find('/');
    mpz_class num, den = 1;
    try {
        if (slash == std::string::npos) {
            num = mpz_class(text, 10);
        } else {
            num = mpz_class(text.substr(0, slash), 10);
            den = mpz_class(text.substr(slash + 1), 10);
        }
    } catch (const std::invalid_argument&) {
        fail(ErrorKind::InvalidInput, "not a rational number: '" + text + "'");
    }
    if (den == 0) fail(ErrorKind::InvalidInput, "rational with zero denominator: '" + text + "'");
    mpq_class q(num, den);
    q.canonicalize();
    return Rat(q);
}

Rat Rat::operator-() const {
    Rat r;
    r.q_ = -q_;
    return r;
}

Rat& Rat::operator+=(const Rat& o) {
    q_ += o.q_;
    return *this;
}
Rat& Rat::operator-=(const Rat& o) {
    q_ -= o.q_;
    return *this;
}
Rat& Rat::operator*=(const Rat& o) {
    q_ *= o.q_;
    return *this;
}
Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) fail(ErrorKind::Precondition, "division by zero");
    q_ /= o.q_;
    return *this;
}

Rat operator+(const Rat& a, const Rat& b) {
    Rat r;
    r.q_ = a.q_ + b.q_;
    return r;
}
Rat operator-(const Rat& a, const Rat& b) {
    Rat r;
    r.q_ = a.q_ - b.q_;
    return r;
}
Rat operator*(const Rat& a, const Rat& b) {
    Rat r;
    r.q_ = a.q_ * b.q_;
    return r;
}
Rat operator/(const Rat& a, const Rat& b) {
    if (b.is_zero()) fail(ErrorKind::Precondition, "division by zero");
    Rat r;
    r.q_ = a.q_ / b.q_;
    return r;
}

Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }

}  // namespace lw
