#include "sigtensor/json_io.hpp"

namespace sigtensor {

std::string scalar_mode(const Json& j) {
    if (j.is_object() && j.contains("scalar")) {
        const auto mode = j.at("scalar").get<std::string>();
        if (mode != "rational" && mode != "float") throw std::invalid_argument("unknown scalar mode: " + mode);
        return mode;
    }
    return "rational";
}

Json polynomial_to_json(const LyndonPolynomial& p) {
    Json terms = Json::array();
    for (const auto& [mono, c] : p) {
        Json vars = Json::array();
        for (const auto& w : mono) vars.push_back(w.str());
        terms.push_back(Json{{"vars", vars}, {"coeff", c.str()}});
    }
    return terms;
}

LyndonPolynomial polynomial_from_json(const Json& j) {
    LyndonPolynomial p;
    for (const auto& term : j) {
        Monomial mono;
        for (const auto& v : term.at("vars")) mono.push_back(Word::parse(v.get<std::string>()));
        std::sort(mono.begin(), mono.end());
        auto& slot = p[mono];
        slot += scalar_from_json<Rational>(term.at("coeff"));
        if (slot.is_zero()) p.erase(mono);
    }
    return p;
}

Json normal_form_to_json(const Word& w, const LyndonPolynomial& p) {
    return Json{{"word", w.str()}, {"poly", polynomial_to_json(p)}};
}

RelationFile relation_file_from_json(const Json& j) {
    RelationFile f;
    f.dim = j.at("dim").get<int>();
    f.trunc = j.at("trunc").get<int>();
    for (const auto& r : j.at("relations")) {
        f.relations.emplace_back(r.value("label", std::string{}), polynomial_from_json(r.at("terms")));
    }
    return f;
}

}  // namespace sigtensor
