#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>

#include "sigtensor/errors.hpp"
#include "sigtensor/paths.hpp"
#include "sigtensor/shuffle.hpp"

namespace sigtensor {

template <typename S>
struct RecoveryResult {
    TensorSeries<S> series;
    int multiplicity = 0;  // complex preimages
    int real_count = 0;    // 1 for odd n, 2 for even n
    int pivot = 1;         // letter p used for σ_p = (n! σ_{p..p})^{1/n}
    std::string root_choice;
};

namespace detail {

inline std::optional<Rational> real_root(const Rational& x, int n) { return exact_root(x, n); }

inline std::optional<double> real_root(double x, int n) {
    if (x < 0 && n % 2 == 0) return std::nullopt;
    const double r = std::pow(std::fabs(x), 1.0 / n);
    return x < 0 ? -r : r;
}

template <typename S>
S pow_int(const S& x, int e) {
    S r = ScalarTraits<S>::one();
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

}  // namespace detail

// Odd levels negated; the second real preimage when n is even.
template <typename S>
TensorSeries<S> alternate_preimage(const TensorSeries<S>& s) {
    auto r = s;
    for (int k = 1; k <= r.trunc(); k += 2) r[k] = -r[k];
    return r;
}

// Group-like element with level n equal to t (generic case).
template <typename S>
RecoveryResult<S> recover_group_element(const LevelTensor<S>& t, bool verify = true) {
    const int n = t.order();
    const int d = t.dim();
    if (n < 1) throw std::invalid_argument("recovery needs order ≥ 1");
    // Shuffles of n single letters carry coefficients up to (n−1)!, which must fit in int64.
    if (n > 20) throw std::invalid_argument("recovery supports order ≤ 20");
    int pivot = 0;
    for (int p = 1; p <= d && pivot == 0; ++p) {
        if (!ScalarTraits<S>::near_zero(t.at(Word(std::vector<int>(static_cast<std::size_t>(n), p))))) pivot = p;
    }
    if (pivot == 0) throw NonGenericError("non-generic input: every diagonal entry σ_{i..i} vanishes, so level 1 is zero");
    const Word diag(std::vector<int>(static_cast<std::size_t>(n), pivot));
    const S base = ScalarTraits<S>::from_rational(factorial(n)) * t.at(diag);
    const auto root = detail::real_root(base, n);
    if (!root) {
        throw RootUnavailableError("root unavailable in this scalar mode: " + std::to_string(n) + "-th root of " +
                                   ScalarTraits<S>::to_string(base));
    }
    const S sp = *root;

    RecoveryResult<S> result{TensorSeries<S>::unit(d, n), n, n % 2 == 0 ? 2 : 1, pivot, ""};
    auto& s = result.series;
    s[n] = t;
    const Word p{pivot};
    const S denom = detail::pow_int(sp, n - 1);
    for (int i = 1; i <= d; ++i) {
        std::vector<Word> parts(static_cast<std::size_t>(n - 1), p);
        parts.push_back(Word{i});
        s[1][static_cast<std::size_t>(i - 1)] = evaluate_form(shuffle_all(parts), t) / denom;
    }
    for (int k = n - 1; k >= 2; --k) {
        auto& level = s[k];
        for (std::size_t idx = 0; idx < level.size(); ++idx) {
            const Word w = index_word(idx, d, k);
            level[idx] = evaluate_form(shuffle_words(w, p), s[k + 1]) / sp;
        }
    }
    result.root_choice = (n % 2 == 0 ? "positive real root " : "real root ") + std::string("σ_") +
                         std::to_string(pivot) + " = (" + std::to_string(n) + "!·σ_" + diag.str() + ")^(1/" +
                         std::to_string(n) + ")";
    if (verify) {
        if (auto bad = grouplike_violation(s)) {
            throw std::invalid_argument("input is not on the universal variety: shuffle relation " + bad->first.str() +
                                        " ⧢ " + bad->second.str() + " fails");
        }
    }
    return result;
}

// Homogeneous coordinates (x11:x12:x21:x22) and the matrix they describe.
struct ProjectiveRecovery {
    std::array<Rational, 4> coords;
    Matrix<Rational> matrix;  // d × m, as consumed by the forward map
    bool used_printed_relations = true;
};

// Two-step planar paths, x_ij = coordinate j of step i.
ProjectiveRecovery recover_pl_2_2_3(const LevelTensor<Rational>& t);
// Quadratic planar paths, x_ij = coefficient of t^j in coordinate i.
ProjectiveRecovery recover_poly_2_2_3(const LevelTensor<Rational>& t);

// Rows of the printed relation systems (unknown order x11, x12, x21, x22).
Matrix<Rational> pl_relation_rows(const LevelTensor<Rational>& t);
Matrix<Rational> poly_relation_rows(const LevelTensor<Rational>& t);

// True when a and b are nonzero multiples of each other.
bool proportional(const LevelTensor<Rational>& a, const LevelTensor<Rational>& b);

enum class PathFamily { L, P };

template <typename S>
LevelTensor<S> family_core(PathFamily f, int m, int k) {
    return f == PathFamily::L ? canonical_axis<S>(m, k) : canonical_mono<S>(m, k);
}

struct GaussNewtonOptions {
    double tol = 1e-10;
    int max_iter = 200;
    int restarts = 8;
    std::uint64_t seed = 0;
};

struct GaussNewtonResult {
    Matrix<double> x;
    double residual = 0.0;  // relative
    bool converged = false;
    int restart = -1;
    int iterations = 0;
};

// Best fit over all restarts; `converged` tells whether tol was reached.
GaussNewtonResult gauss_newton_fit(PathFamily family, int d, int m, const LevelTensor<double>& t,
                                   const GaussNewtonOptions& opts = {});
// As above, throwing NumericalFailure when no restart converges.
Matrix<double> gauss_newton_recover(PathFamily family, int d, int m, int k, const LevelTensor<double>& t,
                                    const GaussNewtonOptions& opts = {});

struct JacobianReport {
    PathFamily family;
    int d, k, m;
    int parameter_count;
    int rank;
    int projective_dim;
};

JacobianReport jacobian_rank(PathFamily family, int d, int k, int m, int seed_count = 2, std::uint64_t seed = 0);

}  // namespace sigtensor
