#include "sigtensor/recovery.hpp"

#include <Eigen/Dense>
#include <limits>
#include <random>

namespace sigtensor {

namespace {

Rational e(const LevelTensor<Rational>& t, const char* w) { return t.at(Word::parse(w)); }

void require_planar_cubic(const LevelTensor<Rational>& t) {
    if (t.dim() != 2 || t.order() != 3) throw std::invalid_argument("closed-form recovery needs d=2, k=3");
}

using ForwardMap = LevelTensor<Rational> (*)(const std::array<Rational, 4>&);

Matrix<Rational> pl_matrix(const std::array<Rational, 4>& x) {
    return Matrix<Rational>::from_rows({{x[0], x[2]}, {x[1], x[3]}});
}

Matrix<Rational> poly_matrix(const std::array<Rational, 4>& x) {
    return Matrix<Rational>::from_rows({{x[0], x[1]}, {x[2], x[3]}});
}

LevelTensor<Rational> pl_forward(const std::array<Rational, 4>& x) {
    return tensor_congruence(canonical_axis<Rational>(2, 3), pl_matrix(x));
}

LevelTensor<Rational> poly_forward(const std::array<Rational, 4>& x) {
    return tensor_congruence(canonical_mono<Rational>(2, 3), poly_matrix(x));
}

// Basis of all relations sum_a c_a(σ) x_a = 0 with c_a linear in σ that hold
// identically on the parametrization; each basis vector is 4 blocks of 8.
std::vector<std::vector<Rational>> bilinear_relations(ForwardMap forward) {
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<int> dist(-9, 9);
    constexpr int kSamples = 64;
    Matrix<Rational> sys(kSamples, 32);
    for (int row = 0; row < kSamples; ++row) {
        std::array<Rational, 4> x;
        for (auto& v : x) v = Rational(dist(rng), 1 + (dist(rng) + 9) % 4);
        const auto sig = forward(x);
        for (int a = 0; a < 4; ++a)
            for (int w = 0; w < 8; ++w) sys(row, a * 8 + w) = sig[static_cast<std::size_t>(w)] * x[static_cast<std::size_t>(a)];
    }
    return kernel_basis(sys);
}

Matrix<Rational> derived_rows(const std::vector<std::vector<Rational>>& basis, const LevelTensor<Rational>& t) {
    Matrix<Rational> rows(static_cast<int>(basis.size()), 4);
    for (std::size_t r = 0; r < basis.size(); ++r)
        for (int a = 0; a < 4; ++a) {
            Rational v(0);
            for (int w = 0; w < 8; ++w) v += basis[r][static_cast<std::size_t>(a * 8 + w)] * t[static_cast<std::size_t>(w)];
            rows(static_cast<int>(r), a) = v;
        }
    return rows;
}

ProjectiveRecovery solve_projective(const Matrix<Rational>& printed, const std::vector<std::vector<Rational>>& derived,
                                    const LevelTensor<Rational>& t, Matrix<Rational> (*to_matrix)(const std::array<Rational, 4>&)) {
    auto kernel = kernel_basis(printed);
    bool used_printed = true;
    if (kernel.size() != 1) {
        kernel = kernel_basis(derived_rows(derived, t));
        used_printed = false;
    }
    if (kernel.size() != 1) {
        throw NonGenericError("degenerate input: the linear relations leave a " + std::to_string(kernel.size()) +
                              "-dimensional solution space");
    }
    std::array<Rational, 4> x;
    // Normalize so the first nonzero coordinate is 1.
    Rational lead(0);
    for (const auto& v : kernel[0]) {
        if (!v.is_zero()) {
            lead = v;
            break;
        }
    }
    for (int i = 0; i < 4; ++i) x[static_cast<std::size_t>(i)] = kernel[0][static_cast<std::size_t>(i)] / lead;
    return ProjectiveRecovery{x, to_matrix(x), used_printed};
}

}  // namespace

Matrix<Rational> pl_relation_rows(const LevelTensor<Rational>& t) {
    require_planar_cubic(t);
    const Rational zero(0);
    return Matrix<Rational>::from_rows({
        {zero, zero, e(t, "122") - e(t, "212"), -(e(t, "121") - e(t, "211"))},
        {zero, e(t, "121") - e(t, "211"), -(e(t, "212") - e(t, "221")), zero},
        {Rational(3) * e(t, "211"), Rational(-3) * e(t, "111"), e(t, "211") - e(t, "121"), zero},
    });
}

Matrix<Rational> poly_relation_rows(const LevelTensor<Rational>& t) {
    require_planar_cubic(t);
    const Rational zero(0);
    const Rational second2 = e(t, "122") - Rational(2) * e(t, "212") + e(t, "221");
    const Rational second1 = e(t, "112") - Rational(2) * e(t, "121") + e(t, "211");
    return Matrix<Rational>::from_rows({
        {zero, zero, Rational(5) * second2, Rational(2) * e(t, "122") - Rational(10) * e(t, "212") + Rational(8) * e(t, "221")},
        {zero, second2, zero, second1},
        {Rational(5) * e(t, "121"), -(e(t, "112") - Rational(5) * e(t, "121") - e(t, "211")), Rational(-5) * e(t, "111"),
         Rational(-5) * e(t, "111")},
    });
}

ProjectiveRecovery recover_pl_2_2_3(const LevelTensor<Rational>& t) {
    static const auto derived = bilinear_relations(pl_forward);
    return solve_projective(pl_relation_rows(t), derived, t, pl_matrix);
}

ProjectiveRecovery recover_poly_2_2_3(const LevelTensor<Rational>& t) {
    static const auto derived = bilinear_relations(poly_forward);
    return solve_projective(poly_relation_rows(t), derived, t, poly_matrix);
}

bool proportional(const LevelTensor<Rational>& a, const LevelTensor<Rational>& b) {
    if (a.dim() != b.dim() || a.order() != b.order() || a.is_zero() || b.is_zero()) return false;
    std::optional<Rational> ratio;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero() != b[i].is_zero()) return false;
        if (a[i].is_zero()) continue;
        const Rational r = a[i] / b[i];
        if (ratio && *ratio != r) return false;
        ratio = r;
    }
    return true;
}

namespace {

using DualD = Dual<double>;

struct Evaluation {
    Eigen::VectorXd r;
    Eigen::MatrixXd j;
};

Evaluation evaluate(const LevelTensor<DualD>& core, const Eigen::VectorXd& params, int d, int m,
                    const LevelTensor<double>& t) {
    const auto count = static_cast<std::size_t>(d * m);
    Matrix<DualD> x(d, m);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < m; ++j) {
            const auto idx = static_cast<std::size_t>(i * m + j);
            x(i, j) = DualD::variable(params(static_cast<Eigen::Index>(idx)), idx, count);
        }
    const auto sig = tensor_congruence(core, x);
    Evaluation ev{Eigen::VectorXd(static_cast<Eigen::Index>(t.size())),
                  Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(t.size()), static_cast<Eigen::Index>(count))};
    for (std::size_t w = 0; w < t.size(); ++w) {
        ev.r(static_cast<Eigen::Index>(w)) = sig[w].value() - t[w];
        for (std::size_t p = 0; p < count; ++p) ev.j(static_cast<Eigen::Index>(w), static_cast<Eigen::Index>(p)) = sig[w].derivative(p);
    }
    return ev;
}

}  // namespace

GaussNewtonResult gauss_newton_fit(PathFamily family, int d, int m, const LevelTensor<double>& t,
                                   const GaussNewtonOptions& opts) {
    const int k = t.order();
    if (t.dim() != d) throw std::invalid_argument("tensor dimension does not match d");
    double tnorm = 0.0;
    for (double v : t.entries()) tnorm += v * v;
    tnorm = std::sqrt(tnorm);
    GaussNewtonResult best;
    best.x = Matrix<double>(d, m);
    best.residual = std::numeric_limits<double>::infinity();
    if (tnorm == 0.0) {
        best.residual = 0.0;
        best.converged = true;
        best.restart = 0;
        return best;
    }
    const auto core = convert_level<DualD>(family_core<Rational>(family, m, k));
    const auto n = static_cast<Eigen::Index>(d * m);
    const double scale = std::pow(tnorm, 1.0 / k);
    for (int restart = 0; restart < opts.restarts; ++restart) {
        std::mt19937_64 rng(opts.seed * 1000003ULL + static_cast<std::uint64_t>(restart));
        std::normal_distribution<double> normal(0.0, 1.0);
        Eigen::VectorXd params(n);
        for (Eigen::Index i = 0; i < n; ++i) params(i) = scale * normal(rng);
        auto ev = evaluate(core, params, d, m, t);
        double res = ev.r.norm();
        double lambda = 1e-3;
        int it = 0;
        for (; it < opts.max_iter && res / tnorm >= opts.tol; ++it) {
            const Eigen::MatrixXd jtj = ev.j.transpose() * ev.j;
            const Eigen::VectorXd g = ev.j.transpose() * ev.r;
            Eigen::MatrixXd a = jtj;
            for (Eigen::Index i = 0; i < n; ++i) a(i, i) += lambda * (jtj(i, i) + 1e-12 * tnorm);
            const Eigen::VectorXd step = a.ldlt().solve(-g);
            const Eigen::VectorXd trial = params + step;
            auto tev = evaluate(core, trial, d, m, t);
            const double tres = tev.r.norm();
            if (std::isfinite(tres) && tres < res) {
                params = trial;
                ev = std::move(tev);
                res = tres;
                lambda = std::max(lambda / 10.0, 1e-15);
            } else {
                lambda *= 10.0;
                if (lambda > 1e15) break;
            }
        }
        const double rel = res / tnorm;
        if (rel < best.residual) {
            best.residual = rel;
            best.restart = restart;
            best.iterations = it;
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < m; ++j) best.x(i, j) = params(i * m + j);
        }
        if (rel < opts.tol) break;
    }
    best.converged = best.residual < opts.tol;
    return best;
}

Matrix<double> gauss_newton_recover(PathFamily family, int d, int m, int k, const LevelTensor<double>& t,
                                    const GaussNewtonOptions& opts) {
    if (t.order() != k) throw std::invalid_argument("tensor order does not match k");
    auto fit = gauss_newton_fit(family, d, m, t, opts);
    if (!fit.converged) {
        throw NumericalFailure("recovery failed: best relative residual " + ScalarTraits<double>::to_string(fit.residual));
    }
    return fit.x;
}

JacobianReport jacobian_rank(PathFamily family, int d, int k, int m, int seed_count, std::uint64_t seed) {
    using DualQ = Dual<Rational>;
    const auto core = convert_level<DualQ>(family_core<Rational>(family, m, k));
    const auto count = static_cast<std::size_t>(d * m);
    int best = 0;
    for (int s = 0; s < seed_count; ++s) {
        std::mt19937_64 rng(seed * 7919ULL + static_cast<std::uint64_t>(s));
        std::uniform_int_distribution<int> dist(-7, 7);
        Matrix<DualQ> x(d, m);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < m; ++j) {
                const auto idx = static_cast<std::size_t>(i * m + j);
                x(i, j) = DualQ::variable(Rational(dist(rng)), idx, count);
            }
        const auto sig = tensor_congruence(core, x);
        Matrix<Rational> jac(static_cast<int>(count), static_cast<int>(sig.size()));
        for (std::size_t w = 0; w < sig.size(); ++w)
            for (std::size_t p = 0; p < count; ++p) jac(static_cast<int>(p), static_cast<int>(w)) = sig[w].derivative(p);
        best = std::max(best, exact_rank(jac));
    }
    return JacobianReport{family, d, k, m, static_cast<int>(count), best, best - 1};
}

}  // namespace sigtensor
