#pragma once

#include <array>
#include <optional>
#include <variant>

#include "sigtensor/matrix.hpp"
#include "sigtensor/shuffle.hpp"

namespace sigtensor {

template <typename S>
struct PiecewiseLinear {
    int dim = 0;
    std::vector<std::vector<S>> steps;  // column vectors X_1..X_m
};

// X_i(t) = sum_j coeffs(i, j-1) t^j; no constant term.
template <typename S>
struct PolynomialPath {
    Matrix<S> coeffs;  // d × m
};

template <typename S>
struct AxisParallel {
    int dim = 0;
    std::vector<int> dirs;  // letters in 1..d
    std::vector<S> lengths;
};

template <typename S>
struct LogLinear {
    TensorSeries<S> lie;  // levels above the degree are zero
};

template <typename S>
using PathSpec = std::variant<PiecewiseLinear<S>, PolynomialPath<S>, AxisParallel<S>, LogLinear<S>>;

template <typename S>
Matrix<S> steps_matrix(const PiecewiseLinear<S>& p) {
    Matrix<S> x(p.dim, static_cast<int>(p.steps.size()));
    for (int j = 0; j < x.cols(); ++j) {
        const auto& step = p.steps[static_cast<std::size_t>(j)];
        if (static_cast<int>(step.size()) != p.dim) throw std::invalid_argument("step has wrong dimension");
        for (int i = 0; i < p.dim; ++i) x(i, j) = step[static_cast<std::size_t>(i)];
    }
    return x;
}

template <typename S>
PiecewiseLinear<S> steps_from_matrix(const Matrix<S>& x) {
    PiecewiseLinear<S> p{x.rows(), {}};
    for (int j = 0; j < x.cols(); ++j) p.steps.push_back(x.column(j));
    return p;
}

template <typename S>
PiecewiseLinear<S> to_piecewise_linear(const AxisParallel<S>& a) {
    if (a.dirs.size() != a.lengths.size()) throw std::invalid_argument("dirs and lengths differ in length");
    PiecewiseLinear<S> p{a.dim, {}};
    for (std::size_t i = 0; i < a.dirs.size(); ++i) {
        if (a.dirs[i] < 1 || a.dirs[i] > a.dim) throw std::invalid_argument("axis direction out of range");
        std::vector<S> step(static_cast<std::size_t>(a.dim), ScalarTraits<S>::zero());
        step[static_cast<std::size_t>(a.dirs[i] - 1)] = a.lengths[i];
        p.steps.push_back(std::move(step));
    }
    return p;
}

// Entry 1/prod(c_i!) on weakly increasing words (c_i = multiplicity of letter i), else 0.
template <typename S>
LevelTensor<S> canonical_axis(int m, int k) {
    LevelTensor<S> t(m, k);
    for (std::size_t idx = 0; idx < t.size(); ++idx) {
        const Word w = index_word(idx, m, k);
        if (!std::is_sorted(w.begin(), w.end())) continue;
        Rational v(1);
        std::size_t run = 0;
        for (std::size_t j = 0; j < w.size(); ++j) {
            run = (j > 0 && w[j] == w[j - 1]) ? run + 1 : 1;
            v /= Rational(static_cast<long>(run));
        }
        t[idx] = ScalarTraits<S>::from_rational(v);
    }
    return t;
}

// Entry prod_j i_j / (i_1 + ... + i_j).
template <typename S>
LevelTensor<S> canonical_mono(int m, int k) {
    LevelTensor<S> t(m, k);
    for (std::size_t idx = 0; idx < t.size(); ++idx) {
        const Word w = index_word(idx, m, k);
        Rational v(1);
        long partial = 0;
        for (int letter : w) {
            partial += letter;
            v *= Rational(letter, partial);
        }
        t[idx] = ScalarTraits<S>::from_rational(v);
    }
    return t;
}

// [[core; X, ..., X]], one mode at a time.
template <typename S>
LevelTensor<S> tensor_congruence(const LevelTensor<S>& core, const Matrix<S>& x) {
    const int m = core.dim();
    const int k = core.order();
    const int d = x.rows();
    if (x.cols() != m) throw std::invalid_argument("congruence matrix has " + std::to_string(x.cols()) +
                                                   " columns, core has dimension " + std::to_string(m));
    // Work tensor with modes 1..l of size d and l+1..k of size m.
    std::vector<S> cur(core.entries().begin(), core.entries().end());
    for (int l = 0; l < k; ++l) {
        const std::size_t outer_n = power(static_cast<std::size_t>(d), static_cast<std::size_t>(l));
        const std::size_t inner_n = power(static_cast<std::size_t>(m), static_cast<std::size_t>(k - l - 1));
        std::vector<S> next(outer_n * static_cast<std::size_t>(d) * inner_n, ScalarTraits<S>::zero());
        for (std::size_t o = 0; o < outer_n; ++o) {
            for (int i = 0; i < m; ++i) {
                const std::size_t src = (o * static_cast<std::size_t>(m) + static_cast<std::size_t>(i)) * inner_n;
                bool any = false;
                for (std::size_t r = 0; r < inner_n && !any; ++r) any = !ScalarTraits<S>::is_zero(cur[src + r]);
                if (!any) continue;
                for (int j = 0; j < d; ++j) {
                    const S& a = x(j, i);
                    if (ScalarTraits<S>::is_zero(a)) continue;
                    const std::size_t dst = (o * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)) * inner_n;
                    for (std::size_t r = 0; r < inner_n; ++r) next[dst + r] += a * cur[src + r];
                }
            }
        }
        cur = std::move(next);
    }
    if (k == 0) return LevelTensor<S>(d, 0, std::move(cur));
    return LevelTensor<S>(d, k, std::move(cur));
}

// exp(v) as a series: level k is v^{⊗k}/k!.
template <typename S>
TensorSeries<S> vector_exp(const std::vector<S>& v, int n) {
    auto s = TensorSeries<S>::unit(static_cast<int>(v.size()), n);
    const auto x = vector_tensor(v);
    for (int k = 1; k <= n; ++k) {
        s[k] = outer(s[k - 1], x);
        s[k] *= ScalarTraits<S>::one() / ScalarTraits<S>::from_int(k);
    }
    return s;
}

// Chen: exp(X_1) ⊗ ... ⊗ exp(X_m).
template <typename S>
TensorSeries<S> pl_signature(const PiecewiseLinear<S>& p, int n) {
    auto s = TensorSeries<S>::unit(p.dim, n);
    for (const auto& step : p.steps) {
        if (static_cast<int>(step.size()) != p.dim) throw std::invalid_argument("step has wrong dimension");
        s = concat_product(s, vector_exp(step, n));
    }
    return s;
}

// Sum over weakly increasing τ: {1..k} → {1..m} of prod 1/|τ^{-1}(l)|! X_τ(1) ⊗ ... ⊗ X_τ(k).
template <typename S>
LevelTensor<S> pl_level_direct(const PiecewiseLinear<S>& p, int k) {
    const int m = static_cast<int>(p.steps.size());
    LevelTensor<S> total(p.dim, k);
    if (k == 0) {
        total[0] = ScalarTraits<S>::one();
        return total;
    }
    if (m == 0) return total;
    std::vector<int> counts(static_cast<std::size_t>(m), 0);
    // Enumerate compositions of k into m non-negative parts.
    auto visit = [&](auto&& self, int slot, int left) -> void {
        if (slot == m - 1) {
            counts[static_cast<std::size_t>(slot)] = left;
            LevelTensor<S> term(p.dim, 0);
            term[0] = ScalarTraits<S>::one();
            Rational weight(1);
            for (int l = 0; l < m; ++l) {
                const int c = counts[static_cast<std::size_t>(l)];
                weight /= factorial(c);
                for (int r = 0; r < c; ++r) term = outer(term, vector_tensor(p.steps[static_cast<std::size_t>(l)]));
            }
            total += term * ScalarTraits<S>::from_rational(weight);
            return;
        }
        for (int c = 0; c <= left; ++c) {
            counts[static_cast<std::size_t>(slot)] = c;
            self(self, slot + 1, left - c);
        }
    };
    visit(visit, 0, k);
    return total;
}

namespace detail {

template <typename S>
using UniPoly = std::vector<S>;  // coefficient of t^j at position j

template <typename S>
UniPoly<S> poly_mul(const UniPoly<S>& a, const UniPoly<S>& b) {
    if (a.empty() || b.empty()) return {};
    UniPoly<S> r(a.size() + b.size() - 1, ScalarTraits<S>::zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (ScalarTraits<S>::is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

template <typename S>
UniPoly<S> antiderivative(const UniPoly<S>& a) {
    UniPoly<S> r(a.size() + 1, ScalarTraits<S>::zero());
    for (std::size_t j = 0; j < a.size(); ++j) r[j + 1] = a[j] / ScalarTraits<S>::from_int(static_cast<long>(j + 1));
    return r;
}

template <typename S>
S value_at_one(const UniPoly<S>& a) {
    S s = ScalarTraits<S>::zero();
    for (const auto& c : a) s += c;
    return s;
}

}  // namespace detail

// Iterated antiderivatives F_{w i}(t) = ∫_0^t F_w(s) X_i'(s) ds, σ_w = F_w(1).
template <typename S>
TensorSeries<S> poly_signature_integrate(const PolynomialPath<S>& p, int n) {
    const int d = p.coeffs.rows();
    const int m = p.coeffs.cols();
    std::vector<detail::UniPoly<S>> deriv(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        auto& dp = deriv[static_cast<std::size_t>(i)];
        dp.assign(static_cast<std::size_t>(std::max(m, 1)), ScalarTraits<S>::zero());
        for (int j = 1; j <= m; ++j) dp[static_cast<std::size_t>(j - 1)] = ScalarTraits<S>::from_int(j) * p.coeffs(i, j - 1);
    }
    auto s = TensorSeries<S>::unit(d, n);
    std::vector<detail::UniPoly<S>> prev{detail::UniPoly<S>{ScalarTraits<S>::one()}};
    for (int k = 1; k <= n; ++k) {
        std::vector<detail::UniPoly<S>> cur;
        cur.reserve(prev.size() * static_cast<std::size_t>(d));
        for (const auto& f : prev) {
            for (int i = 0; i < d; ++i) cur.push_back(detail::antiderivative(detail::poly_mul(f, deriv[static_cast<std::size_t>(i)])));
        }
        for (std::size_t idx = 0; idx < cur.size(); ++idx) s[k][idx] = detail::value_at_one(cur[idx]);
        prev = std::move(cur);
    }
    return s;
}

template <typename S>
LevelTensor<S> poly_signature_congruence(const PolynomialPath<S>& p, int k) {
    return tensor_congruence(canonical_mono<S>(p.coeffs.cols(), k), p.coeffs);
}

template <typename S>
int lie_degree(const LogLinear<S>& p) {
    int deg = 0;
    for (int k = 1; k <= p.lie.trunc(); ++k) {
        if (!p.lie[k].is_zero()) deg = k;
    }
    return deg;
}

template <typename S>
TensorSeries<S> loglinear_signature(const LogLinear<S>& p, int n) {
    if (auto bad = lie_violation(p.lie)) {
        throw std::invalid_argument(bad->first.empty() ? "log-linear input has a constant term"
                                                       : "log-linear input is not Lie: shuffle " + bad->first.str() +
                                                             " ⧢ " + bad->second.str() + " is nonzero");
    }
    return exp_series(retruncate(p.lie, n));
}

template <typename S>
LevelTensor<S> loglinear_level(const LogLinear<S>& p, int k) {
    return project_level(loglinear_signature(p, k), k);
}

// Cubic part of exp(X + Q): X^{⊗3}/6 + (X⊗Q + Q⊗X)/2.
template <typename S>
LevelTensor<S> rough_veronese_cubic(const std::vector<S>& x, const Matrix<S>& q) {
    const int d = static_cast<int>(x.size());
    LevelTensor<S> qt(d, 2);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) qt[static_cast<std::size_t>(i * d + j)] = q(i, j);
    const auto xt = vector_tensor(x);
    auto r = tensor_power(x, 3) * (ScalarTraits<S>::one() / ScalarTraits<S>::from_int(6));
    r += (outer(xt, qt) + outer(qt, xt)) * (ScalarTraits<S>::one() / ScalarTraits<S>::from_int(2));
    return r;
}

template <typename S>
TensorSeries<S> signature(const PathSpec<S>& path, int n) {
    return std::visit(
        [n](const auto& p) -> TensorSeries<S> {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, PiecewiseLinear<S>>) {
                return pl_signature(p, n);
            } else if constexpr (std::is_same_v<P, PolynomialPath<S>>) {
                return poly_signature_integrate(p, n);
            } else if constexpr (std::is_same_v<P, AxisParallel<S>>) {
                return pl_signature(to_piecewise_linear(p), n);
            } else {
                return loglinear_signature(p, n);
            }
        },
        path);
}

template <typename S>
int path_dim(const PathSpec<S>& path) {
    return std::visit(
        [](const auto& p) -> int {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, PolynomialPath<S>>) {
                return p.coeffs.rows();
            } else if constexpr (std::is_same_v<P, LogLinear<S>>) {
                return p.lie.dim();
            } else {
                return p.dim;
            }
        },
        path);
}

// ℓ1 = σ1212 − σ1221 − σ2112 + σ2121, ℓ2 = σ1122 − σ1221 − σ2112 + σ2211.
template <typename S>
std::array<S, 2> ell_invariants(const LevelTensor<S>& t) {
    if (t.dim() != 2 || t.order() != 4) throw std::invalid_argument("ℓ invariants need d=2, k=4");
    auto e = [&](const char* w) { return t.at(Word::parse(w)); };
    const S common = e("1221") + e("2112");
    return {e("1212") + e("2121") - common, e("1122") + e("2211") - common};
}

// Alternating sum over permutation words.
template <typename S>
S volume_invariant(const LevelTensor<S>& t) {
    if (t.order() != t.dim()) throw std::invalid_argument("volume invariant needs k = d");
    std::vector<int> perm(static_cast<std::size_t>(t.dim()));
    std::iota(perm.begin(), perm.end(), 1);
    S sum = ScalarTraits<S>::zero();
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < perm.size(); ++i)
            for (std::size_t j = i + 1; j < perm.size(); ++j) inversions += perm[i] > perm[j] ? 1 : 0;
        const S& v = t.at(Word(perm));
        if (inversions % 2 == 0) {
            sum += v;
        } else {
            sum -= v;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sum;
}

template <typename S>
struct LinearInvariants {
    std::optional<S> l1;
    std::optional<S> l2;
    std::optional<S> ratio;  // ℓ1/ℓ2, absent when ℓ2 vanishes
    std::optional<S> volume;
};

template <typename S>
LinearInvariants<S> linear_invariants(const LevelTensor<S>& t) {
    LinearInvariants<S> r;
    if (t.dim() == 2 && t.order() == 4) {
        const auto l = ell_invariants(t);
        r.l1 = l[0];
        r.l2 = l[1];
        if (!ScalarTraits<S>::is_zero(l[1])) r.ratio = l[0] / l[1];
    }
    if (t.order() == t.dim()) r.volume = volume_invariant(t);
    if (!r.l1 && !r.volume) throw std::invalid_argument("no linear invariant for this tensor shape");
    return r;
}

enum class QuadricFamily { P, L };

// The three quadrics in (α, β, γ) coordinates; coefficient 10 for P, 9 for L.
template <typename S>
std::array<S, 3> quadric_family_eval(const LevelTensor<S>& t, QuadricFamily family) {
    if (t.dim() != 2 || t.order() != 3) throw std::invalid_argument("quadric family needs d=2, k=3");
    auto e = [&](const char* w) { return t.at(Word::parse(w)); };
    const S two = ScalarTraits<S>::from_int(2);
    const S three = ScalarTraits<S>::from_int(3);
    const S sixth = ScalarTraits<S>::one() / ScalarTraits<S>::from_int(6);
    const S a1 = e("111") * sixth;
    const S a4 = e("222") * sixth;
    const S a2 = (e("112") + e("121") + e("211")) * sixth;
    const S a3 = (e("122") + e("212") + e("221")) * sixth;
    const S b1 = two * a2 - e("112");
    const S g1 = two * a2 - e("121");
    const S b2 = two * a3 - e("221");
    const S g2 = two * a3 - e("212");
    const S c = ScalarTraits<S>::from_int(family == QuadricFamily::P ? 10 : 9);
    const S u = two * b1 + g1;
    const S v = two * b2 + g2;
    return {u * u - c * (a2 * g1 + three * a1 * g2), u * v + c * (a3 * g1 + a2 * g2),
            v * v - c * (a3 * g2 + three * a4 * g1)};
}

}  // namespace sigtensor
