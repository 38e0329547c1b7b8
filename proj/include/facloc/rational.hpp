#ifndef FACLOC_RATIONAL_HPP
#define FACLOC_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace facloc {

/// Exact fraction kept in lowest terms with a positive denominator.
///
/// Used for approximation ratios and analytic bounds. Comparisons
/// cross-multiply in 128-bit arithmetic, so they are exact for every
/// value representable in the 64-bit fields.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t numerator, std::int64_t denominator);

    std::int64_t numerator() const { return num_; }
    std::int64_t denominator() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// Smallest integer not below the value.
    std::int64_t ceil() const;

    Rational operator+(const Rational& rhs) const;
    Rational operator-(const Rational& rhs) const;
    Rational operator*(const Rational& rhs) const;
    Rational operator/(const Rational& rhs) const;
    Rational operator-() const { return Rational(-num_, den_); }

    bool operator==(const Rational& rhs) const = default;
    std::strong_ordering operator<=>(const Rational& rhs) const;

    /// "num/den", always with an explicit denominator.
    std::string to_string() const;

    /// Parses "a", "a/b" or "-a/b". Throws std::invalid_argument on malformed
    /// input or a zero denominator.
    static Rational parse(std::string_view text);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// "num/den (d.dddddd)"; the decimal part is informational only.
std::string format_with_decimal(const Rational& value);

}  // namespace facloc

#endif  // FACLOC_RATIONAL_HPP
