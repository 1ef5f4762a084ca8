#include "blinfty/rational.hpp"

#include <numeric>

namespace blinfty {

namespace {

using i128 = __int128;

long long narrow(i128 v) {
    if (v > i128(INT64_MAX) || v < i128(INT64_MIN))
        throw arithmetic_overflow("rational arithmetic exceeded 64-bit range");
    return static_cast<long long>(v);
}

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rational make_reduced(i128 n, i128 d) {
    if (d == 0) throw argument_error("zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    if (n == 0) return Rational(0);
    i128 g = gcd128(n, d);
    return Rational(narrow(n / g), narrow(d / g));
}

} // namespace

Rational::Rational(long long n, long long d) {
    Rational r = make_reduced(i128(n), i128(d));
    num_ = r.num_;
    den_ = r.den_;
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational Rational::operator+(const Rational& o) const {
    return make_reduced(i128(num_) * o.den_ + i128(o.num_) * den_, i128(den_) * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
    return make_reduced(i128(num_) * o.den_ - i128(o.num_) * den_, i128(den_) * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
    return make_reduced(i128(num_) * o.num_, i128(den_) * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw argument_error("division by zero");
    return make_reduced(i128(num_) * o.den_, i128(den_) * o.num_);
}

bool Rational::operator<(const Rational& o) const {
    return i128(num_) * o.den_ < i128(o.num_) * den_;
}

Rational Rational::inverse() const {
    if (num_ == 0) throw argument_error("inverse of zero");
    return make_reduced(i128(den_), i128(num_));
}

std::string Rational::str() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(s));
        long long n = std::stoll(s.substr(0, slash));
        long long d = std::stoll(s.substr(slash + 1));
        return Rational(n, d);
    } catch (const std::exception&) {
        throw argument_error("malformed rational: " + s);
    }
}

Rational factorial(int n) {
    if (n < 0) throw argument_error("factorial of negative");
    i128 acc = 1;
    for (int i = 2; i <= n; ++i) {
        acc *= i;
        if (acc > i128(INT64_MAX)) throw arithmetic_overflow("factorial overflow");
    }
    return Rational(static_cast<long long>(acc));
}

} // namespace blinfty
