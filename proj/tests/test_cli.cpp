#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "sigtensor/json_io.hpp"
#include "sigtensor/varieties.hpp"

using namespace sigtensor;
using Q = Rational;

namespace {

struct Run {
    int code;
    std::string out;
    Json json() const { return Json::parse(out); }
};

Run run(const std::string& args) {
    const std::string cmd = std::string(SIGTENSOR_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    while (const auto n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const std::string& name) { return std::string(SIGTENSOR_DATA_DIR) + "/" + name; }

std::string scratch(const std::string& name, const std::string& content) {
    const auto dir = std::filesystem::temp_directory_path() / "sigtensor_cli_test";
    std::filesystem::create_directories(dir);
    const auto path = (dir / name).string();
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST_CASE("compute reproduces the canonical matrices") {
    const auto axis = scratch("axis.json", R"({"type":"axis_parallel","dim":3,"dirs":[1,2,3],"lengths":[1,1,1]})");
    const auto r = run("compute " + axis + " --level 2");
    REQUIRE(r.code == 0);
    CHECK(tensor_from_json<Q>(r.json()) == tensor_from_json<Q>(Json::parse(std::ifstream(data("canonical_axis_3_2.json")))));

    const auto mono = scratch("mono.json", R"({"type":"polynomial","dim":3,"coeffs":[[1,0,0],[0,1,0],[0,0,1]]})");
    const auto m = run("compute " + mono + " --level 2");
    REQUIRE(m.code == 0);
    CHECK(tensor_from_json<Q>(m.json()) == canonical_mono<Q>(3, 2));

    const auto f = run("compute " + mono + " --level 2 --scalar float");
    REQUIRE(f.code == 0);
    CHECK(f.json().at("scalar") == "float");
    CHECK(tensor_from_json<double>(f.json()).at(Word{1, 2}) == doctest::Approx(2.0 / 3.0));

    const auto empty = scratch("empty.json", R"({"type":"piecewise_linear","dim":2,"steps":[]})");
    const auto e = run("compute " + empty + " --trunc 3");
    REQUIRE(e.code == 0);
    CHECK(series_from_json<Q>(e.json()) == TensorSeries<Q>::unit(2, 3));
}

TEST_CASE("compute output is group-like; a perturbed copy is not") {
    const auto path = scratch("pl.json", R"({"type":"piecewise_linear","dim":2,"steps":[["1","2"],["-1/2","3"]]})");
    const auto r = run("compute " + path + " --trunc 4");
    REQUIRE(r.code == 0);
    const auto good = scratch("series.json", r.out);
    CHECK(run("check " + good + " --what grouplike").code == 0);

    auto doc = r.json();
    doc["levels"][2]["entries"]["12"] = "7";
    const auto bad = run("check " + scratch("bad.json", doc.dump()) + " --what grouplike");
    CHECK(bad.code == 1);
    CHECK(bad.json().at("witness").at("I") == "1");
    CHECK(bad.json().at("witness").at("J") == "2");
    CHECK(run("check " + good + " --what lie").code == 1);
}

TEST_CASE("check Mdm on a three-step path in four dimensions") {
    const auto path = scratch("p4.json", R"({"type":"piecewise_linear","dim":4,"steps":[[1,2,0,1],[0,1,3,-1],[2,0,1,1]]})");
    const auto t = scratch("m4.json", run("compute " + path + " --level 2").out);
    const auto yes = run("check " + t + " --what Mdm --m 3");
    CHECK(yes.code == 0);
    for (const auto& g : yes.json().at("generators")) CHECK(g.at("value") == "0");
    const auto no = run("check " + t + " --variety Mdm --m 2");
    CHECK(no.code == 1);
    CHECK(no.json().contains("witness"));
    CHECK(run("check " + t + " --what Mdm").code == 2);
}

TEST_CASE("verify-vanishing") {
    const auto lx = run("verify-vanishing " + data("lyons_xu.json") + " --upto 5");
    REQUIRE(lx.code == 0);
    CHECK(lx.json().at("firstNonzeroLevel") == 4);
    CHECK(lx.json().at("latticeLength") == "14");

    const auto unit = run("verify-vanishing " + scratch("unit.json", R"({"type":"axis_parallel","dim":2,"dirs":[1],"lengths":[1]})"));
    CHECK(unit.json().at("firstNonzeroLevel") == 1);
    CHECK(unit.json().at("latticeLength") == "1");

    const auto back = run("verify-vanishing " +
                          scratch("back.json", R"({"type":"axis_parallel","dim":2,"dirs":[1,1],"lengths":["5/2","-5/2"]})") +
                          " --upto 6");
    REQUIRE(back.code == 0);
    CHECK(back.json().at("firstNonzeroLevel").is_null());
    CHECK(back.json().at("note") == "none <= 6");

    const auto pl = scratch("pl2.json", R"({"type":"piecewise_linear","dim":2,"steps":[[1,0]]})");
    CHECK(run("verify-vanishing " + pl).code == 2);
}

TEST_CASE("recover") {
    const auto path = scratch("rpl.json", R"({"type":"piecewise_linear","dim":2,"steps":[["1","2"],["-1/2","3"]]})");
    const auto t = scratch("t3.json", run("compute " + path + " --level 3").out);
    const auto exact = run("recover --family pl --d 2 --m 2 --k 3 --input " + t);
    REQUIRE(exact.code == 0);
    const auto j = exact.json();
    CHECK(j.at("residual") == 0.0);
    CHECK(j.at("multiplicity") == 1);
    CHECK(matrix_from_json<Q>(j.at("matrix")) == Matrix<Q>::from_rows({{Q(1), Q(-1, 2)}, {Q(2), Q(3)}}));

    const auto newton = run("recover --family pl --d 2 --m 2 --k 3 --mode newton --input " + t);
    REQUIRE(newton.code == 0);
    CHECK(newton.json().at("residual").get<double>() < 1e-8);
    CHECK(newton.json().at("conjectured").contains("M"));

    const auto poly = scratch("rpoly.json", R"({"type":"polynomial","dim":2,"coeffs":[["2","-1"],["1/3","1"]]})");
    const auto tp = scratch("tp3.json", run("compute " + poly + " --level 3").out);
    const auto rp = run("recover --family poly --d 2 --m 2 --k 3 --input " + tp);
    REQUIRE(rp.code == 0);
    CHECK(matrix_from_json<Q>(rp.json().at("matrix")) == Matrix<Q>::from_rows({{Q(2), Q(-1)}, {Q(1, 3), Q(1)}}));

    const auto group = run("recover --family group --input " + t);
    REQUIRE(group.code == 0);
    CHECK(group.json().at("multiplicity") == 3);
    CHECK(group.json().at("realCount") == 1);

    CHECK(run("recover --family pl --d 3 --m 2 --k 3 --input " + t).code == 2);
    CHECK(run("recover --family spline --d 2 --m 2 --k 3 --input " + t).code == 2);

    // exp([e1,[e1,e2]]) at level 3 has no recoverable level 1.
    const auto degenerate = scratch("deg.json", R"({"dim":2,"order":3,"entries":{"112":"1","121":"-2","211":"1"}})");
    CHECK(run("recover --family group --input " + degenerate).code == 3);
}

TEST_CASE("lyndon, normal-form, invariants") {
    const auto l = run("lyndon --d 2 --n 4");
    REQUIRE(l.code == 0);
    CHECK(l.json().at("count") == 8);
    CHECK(l.json().at("words").size() == 8);

    const auto nf = run("normal-form --word 121");
    REQUIRE(nf.code == 0);
    CHECK(nf.out.find(R"("coeff": "-2")") != std::string::npos);
    CHECK(polynomial_from_json(nf.json().at("poly")) == normal_form(Word{1, 2, 1}, 2, 3));
    CHECK(run("normal-form --all --d 2 --n 3").json().size() == 9);
    CHECK(run("normal-form").code == 2);

    const auto axis = scratch("a24.json", run("compute " + scratch("a.json", R"({"type":"axis_parallel","dim":2,"dirs":[1,2],"lengths":[1,1]})") +
                                              " --level 4")
                                              .out);
    CHECK(run("invariants " + axis).json().at("ratio") == "0");
    const auto mono = scratch("m24.json", run("compute " + scratch("m.json", R"({"type":"polynomial","dim":2,"coeffs":[[1,0],[0,1]]})") +
                                              " --level 4")
                                              .out);
    CHECK(run("invariants " + mono).json().at("ratio") == "1/5");
    CHECK(run("invariants " + data("canonical_axis_3_2.json")).code == 2);
}

TEST_CASE("usage errors") {
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("compute " + data("lyons_xu.json")).code == 2);
    CHECK(run("compute " + data("lyons_xu.json") + " --level 30").code == 2);
    CHECK(run("compute /nonexistent.json --level 2").code == 2);
    CHECK(run("compute " + scratch("broken.json", "{bad") + " --level 2").code == 2);
    CHECK(run("compute " + data("lyons_xu.json") + " --level 2 --trunc 2").code == 2);
    CHECK(run("--help").code == 0);
}

TEST_CASE("expected") {
    const auto model = scratch("model.json", R"({"mu":["1","-1/2"],"sigma":[[2,1],[1,2]],"q":null})");
    const auto r = run("expected " + model + " --trunc 3");
    REQUIRE(r.code == 0);
    CHECK(series_from_json<Q>(r.json()).coeff(Word{1, 1}) == Q(3, 2));
    const auto indefinite = scratch("ind.json", R"({"mu":[0,0],"sigma":[[1,2],[2,1]]})");
    CHECK(run("expected " + indefinite).code == 0);
    CHECK(run("expected " + indefinite + " --require-pd").code == 2);
    const auto mix = scratch("mix.json", R"({"components":[{"weight":"1/2","model":{"mu":[1,0],"sigma":[[1,0],[0,1]]}},
                                                           {"weight":"1/2","model":{"mu":[0,1],"sigma":[[1,0],[0,1]]}}]})");
    const auto rm = run("expected " + mix + " --trunc 2");
    REQUIRE(rm.code == 0);
    CHECK(series_from_json<Q>(rm.json()).coeff(Word{2}) == Q(1, 2));
}
