#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>

#include "sigtensor/json_io.hpp"
#include "sigtensor/recovery.hpp"
#include "sigtensor/varieties.hpp"

using namespace sigtensor;

namespace {

enum Exit { kOk = 0, kFalse = 1, kUsage = 2, kNumerical = 3 };

constexpr double kEntryCap = 1e7;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Json read_json(const std::string& path) {
    if (path == "-") return Json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    return Json::parse(in);
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

// "exact" and "rational" are synonyms; an empty flag defers to the document.
bool use_float(const std::string& flag, const Json& doc) {
    if (flag.empty()) return scalar_mode(doc) == "float";
    if (flag == "float") return true;
    if (flag == "exact" || flag == "rational") return false;
    throw UsageError("unknown scalar mode " + flag);
}

void check_cap(int d, int k) {
    if (std::pow(static_cast<double>(d), k) > kEntryCap) {
        throw UsageError("level " + std::to_string(k) + " in dimension " + std::to_string(d) + " exceeds the entry cap");
    }
}

Json pair_json(const ShufflePair& p) {
    if (p.first.empty()) return Json{{"relation", "constant term"}};
    return Json{{"I", p.first.str()}, {"J", p.second.str()}};
}

// Tensor documents carry "order"; series documents carry "levels".
bool is_series_doc(const Json& j) { return j.contains("levels"); }

struct ComputeArgs {
    std::string input;
    int level = -1;
    int trunc = -1;
    std::string scalar;
};

template <typename S>
int compute(const ComputeArgs& a, const Json& doc) {
    const auto path = path_from_json<S>(doc);
    const int d = path_dim(path);
    const int n = a.level >= 0 ? a.level : a.trunc;
    check_cap(d, n);
    const auto s = signature(path, n);
    emit(a.level >= 0 ? tensor_to_json(s[n]) : series_to_json(s));
    return kOk;
}

struct ExpectedArgs {
    std::string input;
    int trunc = 2;
    std::string scalar;
    bool require_pd = false;
};

template <typename S>
int expected(const ExpectedArgs& a, const Json& doc) {
    if (doc.contains("components")) {
        const auto mix = mixture_from_json<S>(doc);
        if (a.require_pd)
            for (const auto& [w, m] : mix.components) m.validate(true);
        check_cap(static_cast<int>(mix.components.at(0).second.mu.size()), a.trunc);
        emit(series_to_json(mixture_expected_signature(mix, a.trunc)));
    } else {
        const auto model = model_from_json<S>(doc);
        model.validate(a.require_pd);
        check_cap(static_cast<int>(model.mu.size()), a.trunc);
        emit(series_to_json(expected_signature(model, a.trunc)));
    }
    return kOk;
}

struct RecoverArgs {
    std::string input;
    std::string family;
    std::string mode = "exact";
    std::string scalar;
    int d = 0, m = 0, k = 0;
    std::uint64_t seed = 0;
    int restarts = 8;
};

template <typename S>
int recover_universal(const Json& doc) {
    const auto t = tensor_from_json<S>(doc);
    const auto r = recover_group_element(t);
    Json out{{"family", "group"},
             {"multiplicity", r.multiplicity},
             {"realCount", r.real_count},
             {"rootChoice", r.root_choice},
             {"residual", 0},
             {"series", series_to_json(r.series)}};
    if (r.real_count == 2) out["alternate"] = series_to_json(alternate_preimage(r.series));
    emit(out);
    return kOk;
}

LevelTensor<Rational> forward(PathFamily f, const Matrix<Rational>& x, int k) {
    if (f == PathFamily::L) return pl_signature(steps_from_matrix(x), k)[k];
    return poly_signature_integrate(PolynomialPath<Rational>{x}, k)[k];
}

int recover_exact(const RecoverArgs& a, PathFamily family, const Json& doc) {
    if (a.d != 2 || a.m != 2 || a.k != 3) {
        throw UsageError("exact recovery has closed forms only for d=2, m=2, k=3; use --mode newton");
    }
    const auto t = tensor_from_json<Rational>(doc);
    if (t.dim() != 2 || t.order() != 3) throw UsageError("input tensor must have dim 2 and order 3");
    const auto r = family == PathFamily::L ? recover_pl_2_2_3(t) : recover_poly_2_2_3(t);

    // T = λ·σ(X); rescale X by λ^(1/3) when that root is rational.
    const auto image = forward(family, r.matrix, 3);
    std::optional<Rational> lambda;
    for (std::size_t i = 0; i < t.size() && !lambda; ++i)
        if (!image[i].is_zero()) lambda = t[i] / image[i];
    Json out{{"family", a.family}, {"mode", "exact"}, {"multiplicity", 1},
             {"usedPrintedRelations", r.used_printed_relations}};
    Json coords = Json::array();
    for (const auto& c : r.coords) coords.push_back(c.str());
    out["projective"] = coords;
    if (!lambda || !proportional(image, t)) {
        out["residual"] = 1.0;
        out["matrix"] = matrix_to_json(r.matrix);
        emit(out);
        return kNumerical;
    }
    const auto root = exact_root(*lambda, 3);
    auto x = r.matrix;
    if (root) x = x * *root;
    out["matrix"] = matrix_to_json(x);
    out["scale"] = root ? Rational(1).str() : lambda->str();
    out["residual"] = 0.0;
    emit(out);
    return kOk;
}

int recover_newton(const RecoverArgs& a, PathFamily family, const Json& doc) {
    if (a.d < 1 || a.m < 1 || a.k < 3) throw UsageError("newton mode needs d, m ≥ 1 and k ≥ 3");
    check_cap(a.d, a.k);
    const auto t = tensor_from_json<double>(doc);
    if (t.dim() != a.d || t.order() != a.k) throw UsageError("input tensor shape differs from --d/--k");
    GaussNewtonOptions opts;
    opts.seed = a.seed;
    opts.restarts = a.restarts;
    const auto r = gauss_newton_fit(family, a.d, a.m, t, opts);
    const auto lambda = lyndon_count(a.d, a.k);
    Json out{{"family", a.family},
             {"mode", "newton"},
             {"matrix", matrix_to_json(r.x)},
             {"residual", r.residual},
             {"converged", r.converged},
             {"restart", r.restart},
             {"iterations", r.iterations},
             {"multiplicity", nullptr},
             {"conjectured", {{"lambda", lambda}, {"M", (lambda + a.d - 1) / static_cast<std::uint64_t>(a.d)}}}};
    emit(out);
    if (!r.converged) {
        std::cerr << "recovery failed: best relative residual " << r.residual << '\n';
        return kNumerical;
    }
    return kOk;
}

int recover(const RecoverArgs& a) {
    const Json doc = read_json(a.input);
    if (a.family == "group") return use_float(a.scalar, doc) ? recover_universal<double>(doc) : recover_universal<Rational>(doc);
    const PathFamily family = a.family == "pl" ? PathFamily::L : PathFamily::P;
    if (a.mode == "exact") return recover_exact(a, family, doc);
    return recover_newton(a, family, doc);
}

struct CheckArgs {
    std::string input;
    std::string what;
    int m = -1;
    std::string scalar;
};

template <typename S>
int check(const CheckArgs& a, const Json& doc) {
    Json out{{"property", a.what}};
    bool holds = false;
    if (a.what == "grouplike" || a.what == "lie") {
        if (!is_series_doc(doc)) throw UsageError(a.what + " needs a series document");
        const auto s = series_from_json<S>(doc);
        const auto bad = a.what == "lie" ? lie_violation(s) : grouplike_violation(s);
        holds = !bad;
        out["holds"] = holds;
        if (bad) out["witness"] = pair_json(*bad);
    } else {
        if (a.m < 1) throw UsageError("Mdm needs --m ≥ 1");
        if (is_series_doc(doc)) throw UsageError("Mdm needs an order-2 tensor");
        const auto t = tensor_from_json<S>(doc);
        if (t.order() != 2) throw UsageError("Mdm needs an order-2 tensor");
        const auto mat = level_to_matrix(t);
        holds = membership_Mdm(mat, a.m);
        out["m"] = a.m;
        out["holds"] = holds;
        Json gens = Json::array();
        std::optional<std::string> first;
        for (const auto& g : generator_values(mat, a.m)) {
            gens.push_back(Json{{"name", g.label}, {"value", scalar_to_json(g.value)}});
            if (!first && !ScalarTraits<S>::near_zero(g.value)) first = g.label;
        }
        out["generators"] = gens;
        if (!holds) out["witness"] = first ? Json(*first) : Json("rank bound");
    }
    emit(out);
    return holds ? kOk : kFalse;
}

template <typename S>
int invariants(const Json& doc) {
    const auto t = tensor_from_json<S>(doc);
    Json out = Json::object();
    auto put = [&](const char* key, const std::optional<S>& v) { out[key] = v ? scalar_to_json(*v) : Json(nullptr); };
    if ((t.dim() == 2 && t.order() == 4) || t.order() == t.dim()) {
        const auto inv = linear_invariants(t);
        put("l1", inv.l1);
        put("l2", inv.l2);
        put("ratio", inv.ratio);
        put("volume", inv.volume);
    }
    if (t.dim() == 2 && t.order() == 3) {
        for (const auto& [key, family] : {std::pair{"quadricsP", QuadricFamily::P}, std::pair{"quadricsL", QuadricFamily::L}}) {
            Json vals = Json::array();
            for (const auto& v : quadric_family_eval(t, family)) vals.push_back(scalar_to_json(v));
            out[key] = vals;
        }
    }
    if (out.empty()) throw UsageError("no invariant is defined for this tensor shape");
    emit(out);
    return kOk;
}

int verify_vanishing(const std::string& input, int upto) {
    const Json doc = read_json(input);
    if (doc.value("type", std::string{}) != "axis_parallel") throw UsageError("verify-vanishing needs an axis-parallel path");
    const auto path = path_from_json<Rational>(doc);
    const auto& axis = std::get<AxisParallel<Rational>>(path);
    check_cap(axis.dim, upto);
    const auto s = signature(path, upto);
    Json first = nullptr;
    for (int k = 1; k <= upto; ++k) {
        if (!s[k].is_zero()) {
            first = k;
            break;
        }
    }
    Rational length(0);
    for (const auto& a : axis.lengths) length += a.sign() < 0 ? -a : a;
    Json out{{"firstNonzeroLevel", first}, {"latticeLength", length.str()}, {"upto", upto}};
    if (first.is_null()) out["note"] = "none <= " + std::to_string(upto);
    emit(out);
    return kOk;
}

int lyndon(int d, int n) {
    if (d < 1 || n < 1) throw UsageError("lyndon needs d, n ≥ 1");
    check_cap(d, n);
    Json words = Json::array();
    for (const auto& w : lyndon_words(d, n)) words.push_back(w.str());
    Json by_length = Json::array();
    for (int k = 1; k <= n; ++k) by_length.push_back(lyndon_count_length(d, k));
    emit(Json{{"d", d}, {"n", n}, {"count", lyndon_count(d, n)}, {"byLength", by_length}, {"words", words}});
    return kOk;
}

int normal_form_cmd(const std::string& word, int d, int n, bool all) {
    if (all) {
        if (d < 1 || n < 1) throw UsageError("--all needs --d and --n");
        check_cap(d, n);
        const NormalFormTable table(d, n);
        Json out = Json::array();
        for (int k = 1; k <= n; ++k)
            for (const auto& w : all_words(d, k))
                if (!is_lyndon(w)) out.push_back(normal_form_to_json(w, table.phi(w)));
        emit(out);
        return kOk;
    }
    if (word.empty()) throw UsageError("normal-form needs --word or --all");
    const Word w = Word::parse(word);
    int max_letter = 0;
    for (int l : w.letters()) max_letter = std::max(max_letter, l);
    if (d < 1) d = max_letter;
    if (n < 1) n = static_cast<int>(w.size());
    if (max_letter > d || static_cast<int>(w.size()) > n) throw UsageError("word does not fit the given d and n");
    emit(normal_form_to_json(w, normal_form(w, d, n)));
    return kOk;
}

// Maps library exceptions onto the documented exit codes.
int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const NonGenericError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    } catch (const RootUnavailableError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    } catch (const NumericalFailure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    } catch (const Json::exception& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Signature tensors of paths: compute, check and invert."};
    app.require_subcommand(1);
    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "Seed for every randomized step")->capture_default_str();

    ComputeArgs ca;
    auto* compute_cmd = app.add_subcommand("compute", "Signature of a path document");
    compute_cmd->add_option("path", ca.input, "Path JSON, or - for stdin")->required();
    auto* level_opt = compute_cmd->add_option("--level", ca.level, "Single level k")->check(CLI::NonNegativeNumber);
    auto* trunc_opt = compute_cmd->add_option("--trunc", ca.trunc, "Series truncated at n")->check(CLI::NonNegativeNumber);
    level_opt->excludes(trunc_opt);
    compute_cmd->add_option("--scalar", ca.scalar, "exact or float")->check(CLI::IsMember({"exact", "rational", "float"}));

    ExpectedArgs ea;
    auto* expected_cmd = app.add_subcommand("expected", "Expected signature of a Brownian model or mixture");
    expected_cmd->add_option("model", ea.input, "Model or mixture JSON")->required();
    expected_cmd->add_option("--trunc", ea.trunc, "Truncation order")->check(CLI::NonNegativeNumber)->capture_default_str();
    expected_cmd->add_option("--scalar", ea.scalar, "exact or float")->check(CLI::IsMember({"exact", "rational", "float"}));
    expected_cmd->add_flag("--require-pd", ea.require_pd, "Reject covariances that are not positive definite");

    RecoverArgs ra;
    auto* recover_cmd = app.add_subcommand("recover", "Invert a signature tensor");
    recover_cmd->add_option("--family", ra.family, "pl, poly, or group (universal recovery)")
        ->required()
        ->check(CLI::IsMember({"pl", "poly", "group"}));
    recover_cmd->add_option("--d", ra.d, "Ambient dimension");
    recover_cmd->add_option("--m", ra.m, "Number of steps or polynomial degree");
    recover_cmd->add_option("--k", ra.k, "Tensor order");
    recover_cmd->add_option("--input", ra.input, "Tensor JSON")->required();
    recover_cmd->add_option("--mode", ra.mode, "exact or newton")->check(CLI::IsMember({"exact", "newton"}))->capture_default_str();
    recover_cmd->add_option("--scalar", ra.scalar, "Scalar mode for --family group")->check(CLI::IsMember({"exact", "rational", "float"}));
    recover_cmd->add_option("--restarts", ra.restarts, "Newton restarts")->check(CLI::PositiveNumber)->capture_default_str();

    int ld = 0, ln = 0;
    auto* lyndon_cmd = app.add_subcommand("lyndon", "Lyndon words of length ≤ n");
    lyndon_cmd->add_option("--d", ld, "Alphabet size")->required();
    lyndon_cmd->add_option("--n", ln, "Maximal length")->required();

    std::string nf_word;
    int nd = 0, nn = 0;
    bool nf_all = false;
    auto* nf_cmd = app.add_subcommand("normal-form", "Polynomial in Lyndon coordinates for a word");
    nf_cmd->add_option("--word", nf_word, "Word such as 121");
    nf_cmd->add_option("--d", nd, "Alphabet size (default: largest letter)");
    nf_cmd->add_option("--n", nn, "Truncation (default: word length)");
    nf_cmd->add_flag("--all", nf_all, "Every non-Lyndon word up to length n");

    CheckArgs ka;
    auto* check_cmd = app.add_subcommand("check", "Test a tensor or series for a property");
    check_cmd->add_option("input", ka.input, "Tensor or series JSON")->required();
    check_cmd->add_option("--what,--variety", ka.what, "grouplike, lie or Mdm")
        ->required()
        ->check(CLI::IsMember({"grouplike", "lie", "Mdm"}));
    check_cmd->add_option("--m", ka.m, "m for Mdm");
    check_cmd->add_option("--scalar", ka.scalar, "exact or float")->check(CLI::IsMember({"exact", "rational", "float"}));

    std::string inv_input, inv_scalar;
    auto* inv_cmd = app.add_subcommand("invariants", "Linear and quadric invariants of a tensor");
    inv_cmd->add_option("input", inv_input, "Tensor JSON")->required();
    inv_cmd->add_option("--scalar", inv_scalar, "exact or float")->check(CLI::IsMember({"exact", "rational", "float"}));

    std::string vv_input;
    int upto = 4;
    auto* vv_cmd = app.add_subcommand("verify-vanishing", "First nonzero signature level of an axis-parallel path");
    vv_cmd->add_option("path", vv_input, "Axis-parallel path JSON")->required();
    vv_cmd->add_option("--upto", upto, "Highest level inspected")->check(CLI::PositiveNumber)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    ra.seed = seed;

    return guarded([&]() -> int {
        if (compute_cmd->parsed()) {
            if (ca.level < 0 && ca.trunc < 0) throw UsageError("compute needs --level or --trunc");
            const Json doc = read_json(ca.input);
            return use_float(ca.scalar, doc) ? compute<double>(ca, doc) : compute<Rational>(ca, doc);
        }
        if (expected_cmd->parsed()) {
            const Json doc = read_json(ea.input);
            return use_float(ea.scalar, doc) ? expected<double>(ea, doc) : expected<Rational>(ea, doc);
        }
        if (recover_cmd->parsed()) return recover(ra);
        if (lyndon_cmd->parsed()) return lyndon(ld, ln);
        if (nf_cmd->parsed()) return normal_form_cmd(nf_word, nd, nn, nf_all);
        if (check_cmd->parsed()) {
            const Json doc = read_json(ka.input);
            return use_float(ka.scalar, doc) ? check<double>(ka, doc) : check<Rational>(ka, doc);
        }
        if (inv_cmd->parsed()) {
            const Json doc = read_json(inv_input);
            return use_float(inv_scalar, doc) ? invariants<double>(doc) : invariants<Rational>(doc);
        }
        if (vv_cmd->parsed()) return verify_vanishing(vv_input, upto);
        return kUsage;
    });
}
