#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace sigtensor {

// Exact rational number, always in lowest terms with positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
    Rational(int v) : v_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
    Rational(long num, long den);
    explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }
    explicit Rational(const mpz_class& v) : v_(v) {}

    // Accepts "p", "p/q" and finite decimals such as "-1.25" or "3e-2".
    static Rational parse(std::string_view text);

    std::string str() const;
    double to_double() const { return v_.get_d(); }
    const mpq_class& raw() const { return v_; }
    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }
    int sign() const { return sgn(v_); }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class v_;
};

Rational factorial(int n);
Rational binomial(int n, int k);
Rational pow(const Rational& base, int exponent);

// Exact n-th root when it exists in Q (for even n only the non-negative root).
std::optional<Rational> exact_root(const Rational& x, int n);

// Arithmetic contract used by the generic algebra.
template <typename S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static constexpr const char* name = "rational";
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static Rational from_int(long v) { return Rational(v); }
    static Rational from_rational(const Rational& r) { return r; }
    static bool is_zero(const Rational& x) { return x.is_zero(); }
    static bool near_zero(const Rational& x) { return x.is_zero(); }
    static bool equal(const Rational& a, const Rational& b) { return a == b; }
    static double magnitude(const Rational& x) { return std::fabs(x.to_double()); }
    static std::string to_string(const Rational& x) { return x.str(); }
    static Rational parse(std::string_view s) { return Rational::parse(s); }
};

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static constexpr const char* name = "float";
    static inline double tolerance = 1e-10;
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static double from_int(long v) { return static_cast<double>(v); }
    static double from_rational(const Rational& r) { return r.to_double(); }
    static bool is_zero(double x) { return x == 0.0; }
    static bool near_zero(double x) { return std::fabs(x) <= tolerance; }
    static bool equal(double a, double b) {
        return std::fabs(a - b) <= tolerance * std::max({1.0, std::fabs(a), std::fabs(b)});
    }
    static double magnitude(double x) { return std::fabs(x); }
    static std::string to_string(double x);
    static double parse(std::string_view s);
};

// Forward-mode dual number with a dense gradient of fixed length.
template <typename S>
class Dual {
public:
    Dual() = default;
    Dual(S value) : value_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
    Dual(S value, std::vector<S> grad) : value_(std::move(value)), grad_(std::move(grad)) {}

    static Dual variable(S value, std::size_t index, std::size_t count) {
        std::vector<S> g(count, ScalarTraits<S>::zero());
        g[index] = ScalarTraits<S>::one();
        return Dual(std::move(value), std::move(g));
    }

    const S& value() const { return value_; }
    const std::vector<S>& grad() const { return grad_; }
    S derivative(std::size_t i) const { return i < grad_.size() ? grad_[i] : ScalarTraits<S>::zero(); }

    Dual& operator+=(const Dual& o) {
        value_ += o.value_;
        axpy(o.grad_, ScalarTraits<S>::one());
        return *this;
    }
    Dual& operator-=(const Dual& o) {
        value_ -= o.value_;
        axpy(o.grad_, -ScalarTraits<S>::one());
        return *this;
    }
    Dual& operator*=(const Dual& o) {
        for (auto& g : grad_) g *= o.value_;
        axpy(o.grad_, value_);
        value_ *= o.value_;
        return *this;
    }
    Dual& operator/=(const Dual& o) {
        const S inv = ScalarTraits<S>::one() / o.value_;
        for (auto& g : grad_) g *= inv;
        axpy(o.grad_, -value_ * inv * inv);
        value_ *= inv;
        return *this;
    }

    friend Dual operator+(Dual a, const Dual& b) { return a += b; }
    friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
    friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
    friend Dual operator/(Dual a, const Dual& b) { return a /= b; }
    friend Dual operator-(Dual a) {
        a.value_ = -a.value_;
        for (auto& g : a.grad_) g = -g;
        return a;
    }
    friend bool operator==(const Dual& a, const Dual& b) { return a.value_ == b.value_; }

private:
    void axpy(const std::vector<S>& g, const S& a) {
        if (g.empty()) return;
        if (grad_.size() < g.size()) grad_.resize(g.size(), ScalarTraits<S>::zero());
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (!ScalarTraits<S>::is_zero(g[i])) grad_[i] += a * g[i];
        }
    }

    S value_{};
    std::vector<S> grad_;
};

template <typename S>
struct ScalarTraits<Dual<S>> {
    static constexpr bool exact = ScalarTraits<S>::exact;
    static Dual<S> zero() { return Dual<S>(ScalarTraits<S>::zero()); }
    static Dual<S> one() { return Dual<S>(ScalarTraits<S>::one()); }
    static Dual<S> from_int(long v) { return Dual<S>(ScalarTraits<S>::from_int(v)); }
    static Dual<S> from_rational(const Rational& r) { return Dual<S>(ScalarTraits<S>::from_rational(r)); }
    static bool is_zero(const Dual<S>& x) {
        if (!ScalarTraits<S>::is_zero(x.value())) return false;
        for (const auto& g : x.grad()) {
            if (!ScalarTraits<S>::is_zero(g)) return false;
        }
        return true;
    }
    static bool near_zero(const Dual<S>& x) { return ScalarTraits<S>::near_zero(x.value()); }
    static bool equal(const Dual<S>& a, const Dual<S>& b) { return ScalarTraits<S>::equal(a.value(), b.value()); }
};

}  // namespace sigtensor
