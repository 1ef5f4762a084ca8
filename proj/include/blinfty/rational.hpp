#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace blinfty {

/// Raised when exact integer arithmetic would leave the 64-bit range.
/// Results are exact or this is thrown; never silently wrong.
struct arithmetic_overflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad user input (unknown generator, malformed value, length mismatch).
struct argument_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Incompatible configuration (mixed coefficient modes, cutoff mismatch).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact rational number, always in lowest terms with positive denominator.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d);

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    Rational operator-() const;
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;
    bool operator<=(const Rational& o) const { return *this < o || *this == o; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    Rational inverse() const;

    /// Serialized form "p/q" (always with the denominator).
    std::string str() const;
    static Rational parse(const std::string& s);

  private:
    long long num_;
    long long den_;
};

Rational factorial(int n);

/// Cutoff for Novikov truncation; empty optional means +infinity.
using Cutoff = std::optional<Rational>;

inline bool below_cutoff(const Rational& t, const Cutoff& w) {
    return !w.has_value() || t < *w;
}

} // namespace blinfty
