#include <doctest.h>

#include <fstream>

#include "sigtensor/json_io.hpp"
#include "sigtensor/varieties.hpp"
#include "test_support.hpp"

using namespace sigtensor;
using namespace sigtensor::testing;

namespace {

Json load(const std::string& name) {
    std::ifstream in(std::string(SIGTENSOR_DATA_DIR) + "/" + name);
    REQUIRE(in.good());
    return Json::parse(in);
}

}  // namespace

TEST_CASE("tensor and series round trips") {
    std::mt19937_64 rng(70);
    const auto s = random_grouplike(rng, 2, 4);
    const auto back = series_from_json<Q>(Json::parse(series_to_json(s).dump()));
    CHECK(back == s);

    const auto t = tensor_to_json(s[3]);
    CHECK(t.at("scalar") == "rational");
    CHECK(tensor_from_json<Q>(t) == s[3]);

    LevelTensor<double> f(2, 2);
    f.at(Word{1, 2}) = 0.1;
    f.at(Word{2, 1}) = -3.25e-7;
    CHECK(tensor_from_json<double>(Json::parse(tensor_to_json(f).dump())) == f);
}

TEST_CASE("scalar parsing") {
    CHECK(scalar_to_json(Q(6, -4)) == "-3/2");
    CHECK(scalar_from_json<Q>(Json("4/6")) == Q(2, 3));
    CHECK(scalar_from_json<Q>(Json(7)) == Q(7));
    CHECK(scalar_from_json<Q>(Json("0.25")) == Q(1, 4));
    CHECK(scalar_from_json<double>(Json(0.5)) == 0.5);
    CHECK_THROWS(scalar_from_json<Q>(Json::array()));
    CHECK_THROWS(scalar_from_json<Q>(Json("1/0")));
    CHECK(scalar_mode(Json{{"scalar", "float"}}) == "float");
    CHECK(scalar_mode(Json::object()) == "rational");
    CHECK_THROWS(scalar_mode(Json{{"scalar", "complex"}}));
}

TEST_CASE("absent entries are zero and bad keys are rejected") {
    const auto t = tensor_from_json<Q>(Json::parse(R"({"dim":2,"order":2,"entries":{"12":"1/2"}})"));
    CHECK(t.at(Word{1, 2}) == Q(1, 2));
    CHECK(t.at(Word{1, 1}) == Q(0));
    CHECK(tensor_from_json<Q>(Json::parse(R"({"dim":3,"order":2})")) == LevelTensor<Q>(3, 2));
    CHECK_THROWS(tensor_from_json<Q>(Json::parse(R"({"dim":2,"order":2,"entries":{"123":"1"}})")));
    CHECK_THROWS(tensor_from_json<Q>(Json::parse(R"({"dim":2,"order":2,"entries":{"13":"1"}})")));
    CHECK_THROWS(tensor_from_json<Q>(Json::parse(R"({"dim":10,"order":1})")));
    CHECK_THROWS(series_from_json<Q>(Json::parse(R"({"dim":2,"trunc":2,"levels":["1"]})")));

    const auto s = series_from_json<Q>(Json::parse(R"({"dim":2,"trunc":2,"levels":["1",{"entries":{"2":"3"}},{}]})"));
    CHECK(s.coeff(Word{2}) == Q(3));
    CHECK(s[2].is_zero());
}

TEST_CASE("path documents") {
    const auto pl = path_from_json<Q>(Json::parse(R"({"type":"piecewise_linear","dim":2,"steps":[["1","0"],[0,"1/2"]]})"));
    CHECK(signature(pl, 2)[2].at(Word{1, 2}) == Q(1, 2));

    const auto poly = path_from_json<Q>(Json::parse(R"({"type":"polynomial","dim":2,"coeffs":[[1,0],[0,1]]})"));
    CHECK(signature(poly, 2)[2] == canonical_mono<Q>(2, 2));

    const auto axis = path_from_json<Q>(Json::parse(R"({"type":"axis_parallel","dim":3,"dirs":[1,2,3],"lengths":[1,1,1]})"));
    CHECK(signature(axis, 3)[3] == canonical_axis<Q>(3, 3));

    const auto ll = path_from_json<Q>(
        Json::parse(R"({"type":"log_linear","dim":2,"lie":{"dim":2,"trunc":2,"levels":["0",{"entries":{"1":"1"}},{"entries":{"12":"1","21":"-1"}}]}})"));
    CHECK(signature(ll, 3).coeff(Word{1, 2}) == Q(1));

    const auto empty = path_from_json<Q>(Json::parse(R"({"type":"piecewise_linear","dim":2,"steps":[]})"));
    CHECK(signature(empty, 3) == TensorSeries<Q>::unit(2, 3));

    CHECK_THROWS(path_from_json<Q>(Json::parse(R"({"type":"spline","dim":2})")));
    CHECK_THROWS(path_from_json<Q>(Json::parse(R"({"type":"piecewise_linear","dim":2,"steps":[[1]]})")));
    CHECK_THROWS(path_from_json<Q>(Json::parse(R"({"type":"axis_parallel","dim":2,"dirs":[3],"lengths":[1]})")));
    CHECK_THROWS(path_from_json<Q>(Json::parse(R"({"type":"polynomial","dim":3,"coeffs":[[1,0],[0,1]]})")));
}

TEST_CASE("model and mixture documents") {
    const auto m = model_from_json<Q>(Json::parse(R"({"mu":["1","-1/2"],"sigma":[[2,1],[1,2]],"q":null})"));
    CHECK(m.sigma(0, 1) == Q(1));
    CHECK_FALSE(m.q.has_value());
    CHECK(expected_signature(m, 2).coeff(Word{1, 1}) == Q(3, 2));
    CHECK_THROWS(model_from_json<Q>(Json::parse(R"({"mu":[0,0],"sigma":[[1,2],[0,1]]})")));

    const auto mix = mixture_from_json<Q>(Json::parse(
        R"({"components":[{"weight":"1/4","model":{"mu":[1,0],"sigma":[[1,0],[0,1]]}},
                          {"weight":"3/4","model":{"mu":[0,1],"sigma":[[1,0],[0,1]]}}]})"));
    CHECK(mixture_expected_signature(mix, 2).coeff(Word{1}) == Q(1, 4));
    const auto neg = mixture_from_json<Q>(Json::parse(
        R"({"signed":true,"components":[{"weight":-1,"model":{"mu":[1,0],"sigma":[[1,0],[0,1]]}},
                                        {"weight":2,"model":{"mu":[0,1],"sigma":[[1,0],[0,1]]}}]})"));
    CHECK(neg.signed_weights);
    CHECK_NOTHROW(mixture_expected_signature(neg, 2));
}

TEST_CASE("polynomial documents") {
    const auto phi = normal_form(Word{1, 2, 1}, 2, 3);
    const auto j = normal_form_to_json(Word{1, 2, 1}, phi);
    CHECK(j.at("word") == "121");
    CHECK(polynomial_from_json(j.at("poly")) == phi);
    CHECK(j.dump() == R"({"word":"121","poly":[{"vars":["1","12"],"coeff":"1"},{"vars":["112"],"coeff":"-2"}]})");

    // Terms with equal monomials merge; vars order does not matter.
    const auto p = polynomial_from_json(Json::parse(R"([{"vars":["2","1"],"coeff":"1"},{"vars":["1","2"],"coeff":"-1"}])"));
    CHECK(p.empty());
}

TEST_CASE("bundled fixtures") {
    CHECK(tensor_from_json<Q>(load("canonical_axis_3_2.json")) == canonical_axis<Q>(3, 2));
    CHECK(tensor_from_json<Q>(load("canonical_mono_3_2.json")) == canonical_mono<Q>(3, 2));

    const auto lx = path_from_json<Q>(load("lyons_xu.json"));
    const auto s = signature(lx, 4);
    for (int k = 1; k <= 3; ++k) CHECK(s[k].is_zero());
    CHECK_FALSE(s[4].is_zero());

    const auto rel = relation_file_from_json(load("groebner_2_3.json"));
    REQUIRE(rel.relations.size() == 11);
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = random_grouplike(rng, rel.dim, rel.trunc);
        for (const auto& [label, poly] : rel.relations) REQUIRE(evaluate_on_series(poly, g) == Q(0));
    }
    auto off = random_grouplike(rng, 2, 3);
    off[3].at(Word{1, 1, 1}) += Q(1);
    bool any = false;
    for (const auto& [label, poly] : rel.relations) any = any || !evaluate_on_series(poly, off).is_zero();
    CHECK(any);
}
