#include "facloc/rational.hpp"

#include <charconv>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace facloc {

namespace {

__extension__ typedef __int128 Wide;

std::int64_t narrow(Wide value) {
    if (value > INT64_MAX || value < INT64_MIN) {
        throw std::overflow_error("rational overflow");
    }
    return static_cast<std::int64_t>(value);
}

Rational make_reduced(Wide num, Wide den) {
    if (den == 0) {
        throw std::invalid_argument("rational with zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    Wide a = num < 0 ? -num : num;
    Wide b = den;
    while (b != 0) {
        Wide t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        num /= a;
        den /= a;
    }
    return Rational(narrow(num), narrow(den));
}

std::int64_t parse_int(std::string_view text) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw std::invalid_argument("malformed rational component '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

Rational::Rational(std::int64_t value) : num_(value), den_(1) {}

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
    if (denominator == 0) {
        throw std::invalid_argument("rational with zero denominator");
    }
    if (denominator < 0) {
        numerator = -numerator;
        denominator = -denominator;
    }
    const std::int64_t g = std::gcd(numerator, denominator);
    num_ = numerator / g;
    den_ = denominator / g;
}

std::int64_t Rational::ceil() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) {
        ++q;
    }
    return q;
}

Rational Rational::operator+(const Rational& rhs) const {
    return make_reduced(static_cast<Wide>(num_) * rhs.den_ + static_cast<Wide>(rhs.num_) * den_,
                        static_cast<Wide>(den_) * rhs.den_);
}

Rational Rational::operator-(const Rational& rhs) const { return *this + (-rhs); }

Rational Rational::operator*(const Rational& rhs) const {
    return make_reduced(static_cast<Wide>(num_) * rhs.num_, static_cast<Wide>(den_) * rhs.den_);
}

Rational Rational::operator/(const Rational& rhs) const {
    if (rhs.num_ == 0) {
        throw std::invalid_argument("rational division by zero");
    }
    return make_reduced(static_cast<Wide>(num_) * rhs.den_, static_cast<Wide>(den_) * rhs.num_);
}

std::strong_ordering Rational::operator<=>(const Rational& rhs) const {
    const Wide lhs_cross = static_cast<Wide>(num_) * rhs.den_;
    const Wide rhs_cross = static_cast<Wide>(rhs.num_) * den_;
    if (lhs_cross < rhs_cross) return std::strong_ordering::less;
    if (lhs_cross > rhs_cross) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::to_string() const { return std::to_string(num_) + "/" + std::to_string(den_); }

Rational Rational::parse(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_int(text));
    }
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::string format_with_decimal(const Rational& value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), " (%.6f)", value.to_double());
    return value.to_string() + buf;
}

}  // namespace facloc
