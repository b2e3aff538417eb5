// lipfree: norms, duality pairings and certified free-space norms over
// finite pointed metric spaces, plus the verification suites.
//
// Exit codes: 0 command succeeded / all checks passed; 1 a verification
// check failed (counterexample found) or validate diagnosed a bad space;
// 2 input error (unknown command, malformed JSON, space/function mismatch).
#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lipfree/json_io.hpp"
#include "lipfree/theorem_lab.hpp"

using namespace lipfree;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

struct Options {
    std::string space_path, function_path, molecule_path, out_path;
    std::string format = "text";
    uint64_t seed = 0;
    long trials = -1;  // -1: per-suite default
    int n_max = 8;
    double tol = -1;  // -1: policy default
    bool exact = false;
    bool certify = false;
    // gen parameters
    double length = 4.0, spacing = 1.0;
    int points = 8;
    int interval_n = 2;
};

Tolerance make_tolerance(const Options& opt) {
    Tolerance t;
    if (opt.tol > 0) {
        t.rel = opt.tol;
        t.abs = opt.tol * 1e-3;
        t.duality_rel = opt.tol * 100;
    }
    return t;
}

json load_json_file(const std::string& path, const char* what) {
    if (path.empty()) throw InputError(std::string("missing required --") + what + " file");
    return parse_json(read_text_file(path), path);
}

void emit(const Options& opt, const std::string& text) {
    if (!opt.out_path.empty())
        write_text_file(opt.out_path, text);
    else
        std::cout << text;
}

template <class R>
int cmd_validate(const Options& opt) {
    auto parts = space_parts_from_json<R>(load_json_file(opt.space_path, "space"));
    auto v = BasicMetricSpace<R>::validated(std::move(parts.labels), std::move(parts.dist), parts.base,
                                            make_tolerance(opt));
    if (auto* diag = std::get_if<MetricDiagnostic>(&v)) {
        if (opt.format == "json")
            emit(opt, json{{"valid", false}, {"violation", diag->message()}}.dump(2) + "\n");
        else
            emit(opt, "invalid: " + diag->message() + "\n");
        return kExitCheckFailed;
    }
    const auto& space = std::get<BasicMetricSpace<R>>(v);
    if (opt.format == "json") {
        json j{{"valid", true},
               {"points", space.size()},
               {"pointed", space.pointed()},
               {"diameter", num_traits<R>::to_double(space.diameter())}};
        if (space.pointed()) j["base"] = space.base_label();
        emit(opt, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "valid metric space: " << space.size() << " points";
        if (space.pointed()) os << ", base point \"" << space.base_label() << "\"";
        os << ", diameter " << num_traits<R>::to_double(space.diameter()) << "\n";
        emit(opt, os.str());
    }
    return kExitOk;
}

template <class R>
int cmd_lipnorm(const Options& opt) {
    auto space = share(space_from_json<R>(load_json_file(opt.space_path, "space")));
    auto f = function_from_json<R>(load_json_file(opt.function_path, "function"), space);
    const double lip = num_traits<R>::to_double(lipschitz_number(f));
    const double sup = num_traits<R>::to_double(sup_norm(f));
    const double norm = num_traits<R>::to_double(lip_norm(f));
    if (opt.format == "json") {
        emit(opt, json{{"lipschitz_number", lip}, {"sup_norm", sup}, {"lip_norm", norm}}.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "L(f)     = " << lip << "\n"
           << "‖f‖_inf  = " << sup << "\n"
           << "‖f‖_L    = " << norm << "\n";
        emit(opt, os.str());
    }
    return kExitOk;
}

template <class R>
int cmd_aenorm(const Options& opt) {
    auto space = share(space_from_json<R>(load_json_file(opt.space_path, "space")));
    if (!space->pointed()) throw InputError("aenorm needs a pointed space (set \"base\")");
    auto m = molecule_from_json<R>(load_json_file(opt.molecule_path, "molecule"), space);
    const auto dual = ae_norm_dual(m);
    const auto primal = ae_norm_primal(m);
    const auto checks = check_certificates(m, primal, dual, make_tolerance(opt));
    const double pv = num_traits<R>::to_double(primal.value);
    const double dv = num_traits<R>::to_double(dual.value);

    if (opt.format == "json") {
        json j = opt.certify ? certificate_to_json(m, primal, dual, checks)
                             : json{{"primal", {{"value", pv}}}, {"dual", {{"value", dv}}},
                                    {"gap", std::fabs(pv - dv)}};
        emit(opt, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "primal (transport cost) = " << pv << "\n"
           << "dual (Lipschitz ball)   = " << dv << "\n"
           << "gap                     = " << std::fabs(pv - dv) << "\n"
           << "certificates            = " << (checks.all() ? "all pass" : "FAILED") << "\n";
        if (opt.certify) {
            os << "witness:\n";
            for (int i = 0; i < space->size(); ++i)
                os << "  " << space->label(i) << " = "
                   << num_traits<R>::to_double(dual.certificate.witness(i)) << "\n";
            os << "plan:\n";
            for (const auto& entry : primal.plan.entries)
                os << "  " << space->label(entry.source) << " -> " << space->label(entry.sink) << " : "
                   << num_traits<R>::to_double(entry.flow) << "\n";
        }
        emit(opt, os.str());
    }
    return checks.all() ? kExitOk : kExitCheckFailed;
}

template <class R>
int cmd_pair(const Options& opt) {
    auto space = share(space_from_json<R>(load_json_file(opt.space_path, "space")));
    auto f = function_from_json<R>(load_json_file(opt.function_path, "function"), space);
    auto m = molecule_from_json<R>(load_json_file(opt.molecule_path, "molecule"), space);
    const double value = num_traits<R>::to_double(pairing(m, f));
    if (opt.format == "json")
        emit(opt, json{{"pairing", value}}.dump(2) + "\n");
    else
        emit(opt, "<m, f> = " + json(value).dump() + "\n");
    return kExitOk;
}

long default_trials(const std::string& suite) {
    if (suite == "duality") return 1000;      // 200 spaces x 5 molecules
    if (suite == "elementary") return 1000000;
    return 10000;
}

std::string render_table(const json& detail) {
    std::ostringstream os;
    os << "  N   ae_norm        <m+,1>   <m,f_N>  ratio\n";
    for (const auto& row : detail) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%3d   %-12.10g %6.0f   %6.0f   %.6g\n", row.at("N").get<int>(),
                      row.at("ae_norm").get<double>(), row.at("positive_pairing").get<double>(),
                      row.at("separating_pairing").get<double>(), row.at("ratio").get<double>());
        os << buf;
    }
    return os.str();
}

template <class R>
int cmd_verify(const Options& opt, const std::string& which) {
    std::vector<std::string> names;
    if (which == "all")
        names = suite_names();
    else if (std::find(suite_names().begin(), suite_names().end(), which) != suite_names().end())
        names = {which};
    else
        throw InputError("unknown verification suite \"" + which + "\" (try: all, " +
                         [] {
                             std::string s;
                             for (const auto& n : suite_names()) s += n + ", ";
                             return s.substr(0, s.size() - 2);
                         }() +
                         ")");

    json reports = json::array();
    bool all_passed = true;
    std::ostringstream text;
    for (const auto& name : names) {
        LabConfig cfg;
        cfg.seed = opt.seed;
        cfg.trials = opt.trials > 0 ? opt.trials : default_trials(name);
        cfg.n_max = opt.n_max;
        cfg.tol = make_tolerance(opt);
        auto r = run_suite<R>(name, cfg);
        all_passed = all_passed && r.passed;
        reports.push_back(check_result_to_json(r));
        char line[160];
        std::snprintf(line, sizeof(line), "[%s] %-18s trials=%-8ld max_residual=%.3g\n",
                      r.passed ? "PASS" : "FAIL", r.name.c_str(), r.trials, r.max_residual);
        text << line;
        if (name == "example25" && !r.detail.is_null()) text << render_table(r.detail);
        if (!r.passed) text << "  counterexample: " << r.counterexample.dump() << "\n";
    }
    emit(opt, opt.format == "json" ? reports.dump(2) + "\n" : text.str());
    return all_passed ? kExitOk : kExitCheckFailed;
}

int cmd_gen(const Options& opt, const std::string& kind) {
    json j;
    if (kind == "grid") {
        j = space_to_json(interval_grid<double>(opt.length, opt.spacing));
    } else if (kind == "augmented-interval") {
        auto ex = example_molecule<double>(opt.interval_n);
        j = space_to_json(*ex.space);
    } else if (kind == "random") {
        if (opt.points < 2) throw InputError("gen random: need at least 2 points");
        Rng rng(opt.seed);
        j = space_to_json(random_space<double>(rng, opt.points, true));
    } else {
        throw InputError("unknown gen kind \"" + kind + "\" (grid, augmented-interval, random)");
    }
    emit(opt, j.dump(2) + "\n");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lipschitz function spaces and free-space norms over finite pointed metric spaces"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", opt.format, "output format: text|json")
            ->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--out", opt.out_path, "write output to this file instead of stdout");
        sub->add_option("--tol", opt.tol, "relative comparison tolerance (abs scales by 1e-3, duality by 1e2)");
        sub->add_flag("--exact", opt.exact, "exact rational arithmetic");
    };

    auto* validate = app.add_subcommand("validate", "check a space file against the metric axioms");
    validate->add_option("--space", opt.space_path)->required();
    add_common(validate);

    auto* lipnorm = app.add_subcommand("lipnorm", "Lipschitz number, sup norm and Lip norm of a function");
    lipnorm->add_option("--space", opt.space_path)->required();
    lipnorm->add_option("--function", opt.function_path)->required();
    add_common(lipnorm);

    auto* aenorm = app.add_subcommand("aenorm", "free-space norm of a molecule by both solvers");
    aenorm->add_option("--space", opt.space_path)->required();
    aenorm->add_option("--molecule", opt.molecule_path)->required();
    aenorm->add_flag("--certify", opt.certify, "emit the dual witness and transport plan");
    add_common(aenorm);

    auto* pair = app.add_subcommand("pair", "duality pairing <m, f>");
    pair->add_option("--space", opt.space_path)->required();
    pair->add_option("--function", opt.function_path)->required();
    pair->add_option("--molecule", opt.molecule_path)->required();
    add_common(pair);

    std::string suite = "all";
    auto* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("suite", suite, "suite name or \"all\"");
    verify->add_option("--seed", opt.seed, "random seed");
    verify->add_option("--trials", opt.trials, "trial count (default per suite)");
    verify->add_option("--n-max", opt.n_max, "growth-table depth for example25");
    add_common(verify);

    auto* example25 = app.add_subcommand("example25", "growth table for the alternating dyadic molecule");
    example25->add_option("--n-max", opt.n_max, "table depth");
    example25->add_option("--seed", opt.seed, "random seed");
    add_common(example25);

    std::string gen_kind;
    auto* gen = app.add_subcommand("gen", "generate space files (grid, augmented-interval, random)");
    gen->add_option("kind", gen_kind, "grid | augmented-interval | random")->required();
    gen->add_option("--length", opt.length, "grid length");
    gen->add_option("--spacing", opt.spacing, "grid spacing");
    gen->add_option("--points", opt.points, "random space size");
    gen->add_option("--seed", opt.seed, "random seed");
    gen->add_option("--n", opt.interval_n, "augmented-interval depth N");
    add_common(gen);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (app.got_subcommand(validate))
            return opt.exact ? cmd_validate<Rational>(opt) : cmd_validate<double>(opt);
        if (app.got_subcommand(lipnorm))
            return opt.exact ? cmd_lipnorm<Rational>(opt) : cmd_lipnorm<double>(opt);
        if (app.got_subcommand(aenorm))
            return opt.exact ? cmd_aenorm<Rational>(opt) : cmd_aenorm<double>(opt);
        if (app.got_subcommand(pair))
            return opt.exact ? cmd_pair<Rational>(opt) : cmd_pair<double>(opt);
        if (app.got_subcommand(verify))
            return opt.exact ? cmd_verify<Rational>(opt, suite) : cmd_verify<double>(opt, suite);
        if (app.got_subcommand(example25))
            return opt.exact ? cmd_verify<Rational>(opt, "example25") : cmd_verify<double>(opt, "example25");
        if (app.got_subcommand(gen)) return cmd_gen(opt, gen_kind);
        throw InputError("no command given");
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const InvalidInput& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const SolverFailure& e) {
        std::cerr << "solver defect: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}
