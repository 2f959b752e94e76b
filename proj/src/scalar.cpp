#include "sigtensor/scalar.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace sigtensor {

namespace {

mpz_class parse_integer(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty integer");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("bad integer: " + std::string(s));
    for (std::size_t j = i; j < s.size(); ++j) {
        if (s[j] < '0' || s[j] > '9') throw std::invalid_argument("bad integer: " + std::string(s));
    }
    mpz_class z;
    std::string digits(s.substr(s[0] == '+' ? 1 : 0));
    z.set_str(digits, 10);
    return z;
}

}  // namespace

Rational::Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::domain_error("zero denominator");
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::parse(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const mpz_class num = parse_integer(text.substr(0, slash));
        const mpz_class den = parse_integer(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
        mpq_class q(num, den);
        q.canonicalize();
        return Rational(q);
    }
    long exponent = 0;
    std::string_view mantissa = text;
    if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = text.substr(0, e);
        const auto rest = text.substr(e + 1);
        const char* first = rest.data() + (!rest.empty() && rest[0] == '+' ? 1 : 0);
        auto [ptr, ec] = std::from_chars(first, rest.data() + rest.size(), exponent);
        if (ec != std::errc() || ptr != rest.data() + rest.size()) {
            throw std::invalid_argument("bad exponent: " + std::string(text));
        }
    }
    std::string digits;
    if (const auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        digits = std::string(mantissa.substr(0, dot));
        const auto frac = mantissa.substr(dot + 1);
        digits += frac;
        exponent -= static_cast<long>(frac.size());
        if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    } else {
        digits = std::string(mantissa);
    }
    mpq_class q(parse_integer(digits));
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    if (exponent < 0) {
        q /= scale;
    } else {
        q *= scale;
    }
    q.canonicalize();
    return Rational(q);
}

std::string Rational::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational factorial(int n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(f);
}

Rational binomial(int n, int k) {
    if (k < 0 || k > n) return Rational(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(b);
}

Rational pow(const Rational& base, int exponent) {
    if (exponent < 0) return Rational(1) / pow(base, -exponent);
    mpz_class num;
    mpz_class den;
    mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), static_cast<unsigned long>(exponent));
    return Rational(mpq_class(num, den));
}

std::optional<Rational> exact_root(const Rational& x, int n) {
    if (n < 1) return std::nullopt;
    const bool negative = x.sign() < 0;
    if (negative && n % 2 == 0) return std::nullopt;
    mpz_class num = x.numerator();
    if (negative) num = -num;
    const mpz_class den = x.denominator();
    mpz_class rn;
    mpz_class rd;
    if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(n)) == 0) return std::nullopt;
    if (mpz_root(rd.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(n)) == 0) return std::nullopt;
    if (negative) rn = -rn;
    return Rational(mpq_class(rn, rd));
}

std::string ScalarTraits<double>::to_string(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double ScalarTraits<double>::parse(std::string_view s) {
    if (s.find('/') != std::string_view::npos) return Rational::parse(s).to_double();
    std::string copy(s);
    std::size_t used = 0;
    const double v = std::stod(copy, &used);
    if (used != copy.size()) throw std::invalid_argument("bad float: " + copy);
    return v;
}

}  // namespace sigtensor
