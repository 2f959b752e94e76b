#pragma once

#include <json.hpp>

#include <string>

#include "sigtensor/lyndon.hpp"
#include "sigtensor/paths.hpp"
#include "sigtensor/stochastic.hpp"

namespace sigtensor {

using Json = nlohmann::ordered_json;

// Scalars are read from strings ("p/q", decimals) or JSON numbers.
template <typename S>
S scalar_from_json(const Json& j) {
    if (j.is_string()) return ScalarTraits<S>::parse(j.get<std::string>());
    if (j.is_number_integer()) return ScalarTraits<S>::from_int(j.get<long>());
    if (j.is_number()) return ScalarTraits<S>::parse(j.dump());
    throw std::invalid_argument("expected a scalar, got " + j.dump());
}

template <typename S>
Json scalar_to_json(const S& x) {
    return ScalarTraits<S>::to_string(x);
}

// "rational" unless the document says "float".
std::string scalar_mode(const Json& j);

template <typename S>
Json tensor_to_json(const LevelTensor<S>& t) {
    Json entries = Json::object();
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (ScalarTraits<S>::is_zero(t[i])) continue;
        entries[index_word(i, t.dim(), t.order()).str()] = scalar_to_json(t[i]);
    }
    return Json{{"dim", t.dim()}, {"order", t.order()}, {"scalar", ScalarTraits<S>::name}, {"entries", entries}};
}

template <typename S>
LevelTensor<S> tensor_from_json(const Json& j) {
    const int d = j.at("dim").get<int>();
    const int k = j.at("order").get<int>();
    if (d < 1 || d > 9) throw std::invalid_argument("tensor JSON supports 1 ≤ dim ≤ 9");
    if (k < 0) throw std::invalid_argument("negative order");
    LevelTensor<S> t(d, k);
    if (j.contains("entries")) {
        for (const auto& [key, value] : j.at("entries").items()) {
            const Word w = Word::parse(key);
            if (static_cast<int>(w.size()) != k) throw std::invalid_argument("entry key " + key + " has wrong length");
            t.at(w) = scalar_from_json<S>(value);
        }
    }
    return t;
}

template <typename S>
Json series_to_json(const TensorSeries<S>& s) {
    Json levels = Json::array();
    levels.push_back(scalar_to_json(s.scalar()));
    for (int k = 1; k <= s.trunc(); ++k) levels.push_back(tensor_to_json(s[k]));
    return Json{{"dim", s.dim()}, {"trunc", s.trunc()}, {"scalar", ScalarTraits<S>::name}, {"levels", levels}};
}

template <typename S>
TensorSeries<S> series_from_json(const Json& j) {
    const int d = j.at("dim").get<int>();
    const int n = j.at("trunc").get<int>();
    const auto& levels = j.at("levels");
    if (!levels.is_array() || static_cast<int>(levels.size()) != n + 1) {
        throw std::invalid_argument("series JSON needs trunc+1 levels");
    }
    TensorSeries<S> s(d, n);
    s.scalar() = scalar_from_json<S>(levels[0]);
    for (int k = 1; k <= n; ++k) {
        Json level = levels[static_cast<std::size_t>(k)];
        if (!level.contains("order")) level["order"] = k;
        if (!level.contains("dim")) level["dim"] = d;
        auto t = tensor_from_json<S>(level);
        if (t.order() != k || t.dim() != d) throw std::invalid_argument("series level " + std::to_string(k) + " has wrong shape");
        s[k] = std::move(t);
    }
    return s;
}

template <typename S>
std::vector<S> vector_from_json(const Json& j) {
    std::vector<S> v;
    for (const auto& x : j) v.push_back(scalar_from_json<S>(x));
    return v;
}

template <typename S>
Matrix<S> matrix_from_json(const Json& j) {
    std::vector<std::vector<S>> rows;
    for (const auto& r : j) rows.push_back(vector_from_json<S>(r));
    return Matrix<S>::from_rows(rows);
}

template <typename S>
Json matrix_to_json(const Matrix<S>& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

template <typename S>
PathSpec<S> path_from_json(const Json& j) {
    const std::string type = j.at("type").get<std::string>();
    const int d = j.at("dim").get<int>();
    if (d < 1) throw std::invalid_argument("path dimension must be positive");
    if (type == "piecewise_linear") {
        PiecewiseLinear<S> p{d, {}};
        for (const auto& step : j.at("steps")) {
            p.steps.push_back(vector_from_json<S>(step));
            if (static_cast<int>(p.steps.back().size()) != d) throw std::invalid_argument("step has wrong dimension");
        }
        return p;
    }
    if (type == "polynomial") {
        auto c = matrix_from_json<S>(j.at("coeffs"));
        if (c.rows() != d) throw std::invalid_argument("coeffs must have dim rows");
        return PolynomialPath<S>{std::move(c)};
    }
    if (type == "axis_parallel") {
        AxisParallel<S> a{d, j.at("dirs").get<std::vector<int>>(), vector_from_json<S>(j.at("lengths"))};
        to_piecewise_linear(a);  // validates
        return a;
    }
    if (type == "log_linear") {
        auto lie = series_from_json<S>(j.at("lie"));
        if (lie.dim() != d) throw std::invalid_argument("Lie series dimension differs from path dimension");
        return LogLinear<S>{std::move(lie)};
    }
    throw std::invalid_argument("unknown path type: " + type);
}

template <typename S>
BrownianModel<S> model_from_json(const Json& j) {
    BrownianModel<S> m;
    m.mu = vector_from_json<S>(j.at("mu"));
    m.sigma = matrix_from_json<S>(j.at("sigma"));
    if (j.contains("q") && !j.at("q").is_null()) m.q = matrix_from_json<S>(j.at("q"));
    m.validate();
    return m;
}

template <typename S>
MixtureModel<S> mixture_from_json(const Json& j) {
    MixtureModel<S> mix;
    mix.signed_weights = j.value("signed", false);
    for (const auto& c : j.at("components")) {
        mix.components.emplace_back(scalar_from_json<S>(c.at("weight")), model_from_json<S>(c.at("model")));
    }
    return mix;
}

Json polynomial_to_json(const LyndonPolynomial& p);
LyndonPolynomial polynomial_from_json(const Json& j);
Json normal_form_to_json(const Word& w, const LyndonPolynomial& p);

// Polynomial in signature coordinates σ_w, evaluated on a series.
template <typename S>
S evaluate_on_series(const LyndonPolynomial& p, const TensorSeries<S>& s) {
    S sum = ScalarTraits<S>::zero();
    for (const auto& [mono, c] : p) {
        S term = ScalarTraits<S>::from_rational(c);
        for (const auto& w : mono) term *= s.coeff(w);
        sum += term;
    }
    return sum;
}

struct RelationFile {
    int dim = 0;
    int trunc = 0;
    std::vector<std::pair<std::string, LyndonPolynomial>> relations;
};

RelationFile relation_file_from_json(const Json& j);

}  // namespace sigtensor
