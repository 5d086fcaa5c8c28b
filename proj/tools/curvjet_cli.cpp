#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "curvjet/error.hpp"
#include "curvjet/io.hpp"
#include "curvjet/jet.hpp"
#include "curvjet/metric_jet.hpp"
#include "curvjet/suites.hpp"

using namespace curvjet;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

// Bad command-line usage, as opposed to failing checks or rejected inputs.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::optional<int> dim;
    std::vector<int> signature;
    std::uint64_t seed = 0;
    double tol = kDefaultTolerance;
    std::string suite = "all";
    std::string in;
    std::string out;
    std::string format = "text";
    std::string kind = "jet";
    int samples = 25;
    bool full = false;
};

std::vector<Space> spaces(const Options& opt, std::vector<int> default_dims) {
    if (!opt.signature.empty()) {
        if (opt.dim && *opt.dim != static_cast<int>(opt.signature.size())) {
            throw UsageError("--dim disagrees with the length of --signature");
        }
        for (int s : opt.signature) {
            if (s != 1 && s != -1) throw UsageError("--signature entries must be +1 or -1");
        }
        if (opt.signature.size() < 2) throw UsageError("dimension must be at least 2");
        return {Space(opt.signature)};
    }
    if (opt.dim) default_dims = {*opt.dim};
    std::vector<Space> out;
    for (int n : default_dims) {
        if (n < 2) throw UsageError("--dim must be at least 2");
        out.push_back(Space::euclidean(n));
    }
    return out;
}

Space single_space(const Options& opt) { return spaces(opt, {4}).front(); }

void emit(const Options& opt, const std::string& text) {
    if (opt.out.empty()) {
        std::cout << text;
    } else {
        write_text_file(opt.out, text);
    }
}

void emit_json(const Options& opt, const Json& doc) { emit(opt, doc.dump(2) + "\n"); }

Json config_echo(const Options& opt, const std::vector<Space>& used) {
    Json cfg;
    Json dims = Json::array();
    for (const Space& s : used) dims.push_back(space_to_json(s));
    cfg["spaces"] = std::move(dims);
    cfg["seed"] = opt.seed;
    cfg["tol"] = opt.tol;
    cfg["suite"] = opt.suite;
    cfg["samples"] = opt.samples;
    if (!opt.in.empty()) cfg["in"] = opt.in;
    return cfg;
}

int emit_report(const Options& opt, const Report& rep, const Json& cfg) {
    if (opt.format == "json") {
        emit_json(opt, report_to_json(rep, cfg));
    } else {
        emit(opt, report_to_text(rep));
    }
    return rep.pass() ? kExitPass : kExitFail;
}

TwoJet require_two_jet(const JetDocument& doc) {
    if (!doc.d2R) throw InvalidArgument("input is a one-jet; a two-jet needs d2R");
    return {doc.R, doc.dR, *doc.d2R};
}

int cmd_gen(const Options& opt) {
    const Space space = single_space(opt);
    const JetSpace js(space);
    if (opt.kind == "jet") {
        emit_json(opt, jet_to_json(random_two_jet(js, opt.seed)));
    } else if (opt.kind == "einstein-one-jet") {
        const OneJet one = random_einstein_one_jet(js, opt.seed);
        emit_json(opt, one_jet_to_json(one.R, one.dR));
    } else if (opt.kind == "einstein-jet") {
        emit_json(opt, jet_to_json(random_einstein_jet(js, opt.seed)));
    } else if (opt.kind == "constant-curvature") {
        const Tensor g = metric(space);
        emit_json(opt, jet_to_json(TwoJet{kulkarni(g, g), Tensor(space, 5), Tensor(space, 6)}));
    } else if (opt.kind == "curvature") {
        emit_json(opt, tensor_to_json(js.C0().random_element(opt.seed)));
    } else if (opt.kind == "metric") {
        emit_json(opt, polymetric_to_json(random_polymetric(space, opt.seed)));
    } else {
        throw UsageError("unknown --kind '" + opt.kind + "'");
    }
    return kExitPass;
}

// Checks on a jet read from a file.
Report check_jet_file(const Options& opt, const TwoJet& jet, const JetSpace& js) {
    const bool all = opt.suite == "all";
    Report rep;
    rep.append(validate_two_jet(jet, opt.tol), "validate: ");
    if (all || opt.suite == "einstein") {
        const EinsteinCheck ec = einstein_check(jet, opt.tol);
        rep.append(ec.defects, "einstein: ");
        rep.add("einstein: verdicts agree", ec.agree() ? 0.0 : 1.0, 0.5);
        rep.add("einstein: is Einstein", ec.verdict_definition ? 0.0 : 1.0, 0.5);
    }
    if (all || opt.suite == "weitzenbock") {
        rep.append(weitzenbock_special(jet, opt.tol), "weitzenbock: ");
        rep.append(weitzenbock_check(section_from_jet(jet), opt.tol), "weitzenbock self: ");
    }
    if (all || opt.suite == "registry") {
        for (const std::string& name : identity_names()) {
            rep.append(verify_identity(name, js, jet, opt.seed), "registry: ");
        }
    }
    return rep;
}

int cmd_check(const Options& opt) {
    if (!is_suite(opt.suite)) throw UsageError("unknown suite '" + opt.suite + "'");
    if (!opt.in.empty()) {
        static const std::vector<std::string> file_suites{"all", "einstein", "weitzenbock", "registry"};
        if (std::find(file_suites.begin(), file_suites.end(), opt.suite) == file_suites.end()) {
            throw UsageError("suite '" + opt.suite + "' does not take an input file");
        }
        const TwoJet jet = require_two_jet(jet_from_json(read_json_file(opt.in)));
        const JetSpace js(jet.space());
        return emit_report(opt, check_jet_file(opt, jet, js), config_echo(opt, {jet.space()}));
    }
    const std::vector<Space> used = spaces(opt, opt.full ? std::vector<int>{3, 4, 5} : std::vector<int>{3, 4});
    const SuiteConfig cfg{opt.seed, opt.full ? 100 : opt.samples, opt.tol};
    Report rep;
    for (const Space& space : used) {
        const JetSpace js(space);
        std::string prefix = "n=" + std::to_string(space.dim());
        if (!space.riemannian()) {
            prefix += " (";
            for (int i = 0; i < space.dim(); ++i) prefix += space.sign(i) > 0 ? '+' : '-';
            prefix += ")";
        }
        rep.append(run_suite(opt.suite, js, cfg), prefix + " ");
    }
    return emit_report(opt, rep, config_echo(opt, used));
}

int cmd_extend(const Options& opt) {
    if (opt.in.empty()) throw UsageError("extend needs --in");
    const JetDocument doc = jet_from_json(read_json_file(opt.in));
    const JetSpace js(doc.R.space());
    const Extension ext = einstein_extend(js, doc.R, doc.dR, opt.tol);
    emit_json(opt, jet_to_json(ext.jet));
    const EinsteinCheck ec = einstein_check(ext.jet, opt.tol);
    Report rep = ec.defects;
    rep.add_diagnostic("correction solve residual", ext.solve_residual);
    rep.add_diagnostic("correction solution space dimension", ext.solution_dim);
    rep.add_diagnostic("Weyl-only hat correction residual", ext.hat_weyl_residual);
    std::cerr << report_to_text(rep);
    return rep.pass() ? kExitPass : kExitFail;
}

int cmd_fit(const Options& opt) {
    if (opt.in.empty()) throw UsageError("fit needs --in");
    const TwoJet jet = require_two_jet(jet_from_json(read_json_file(opt.in)));
    const Report valid = validate_two_jet(jet, opt.tol);
    if (!valid.pass()) {
        std::cerr << "input is not a valid two-jet\n" << report_to_text(valid);
        return kExitFail;
    }
    const JacobiFit fit = fit_jacobi_relation(jet, opt.tol);
    if (opt.format == "json") {
        Json doc{{"tool", kToolName}, {"version", kToolVersion}, {"c", fit.c}, {"residual", fit.residual}};
        doc["main_residual"] = fit.main_residual ? Json(*fit.main_residual) : Json(nullptr);
        emit_json(opt, doc);
    } else {
        std::ostringstream text;
        text << std::setprecision(17) << "c = " << fit.c << "\nresidual = " << fit.residual << '\n';
        if (fit.main_residual) text << "rough Laplacian relation residual = " << *fit.main_residual << '\n';
        emit(opt, text.str());
    }
    return kExitPass;
}

int cmd_metric(const Options& opt) {
    if (opt.in.empty()) throw UsageError("metric needs --in");
    const Json doc = read_json_file(opt.in);
    if (doc.contains("records")) {
        emit_json(opt, jet_to_json(curvature_two_jet(polymetric_from_json(doc))));
    } else {
        const JetDocument jet = jet_from_json(doc);
        emit_json(opt, polymetric_to_json(seed_metric(jet.R, jet.dR)));
    }
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Curvature two-jet verification and construction"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);
    Options opt;

    const auto common = [&](CLI::App* sub) {
        sub->add_option("--dim", opt.dim, "Dimension (Euclidean signature unless --signature is given)");
        sub->add_option("--signature", opt.signature, "Comma list of +1/-1")->delimiter(',');
        sub->add_option("--seed", opt.seed, "Random seed");
        sub->add_option("--tol", opt.tol, "Relative tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--out", opt.out, "Output file (default stdout)");
        sub->add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"text", "json"}));
    };

    CLI::App* gen = app.add_subcommand("gen", "Generate a random jet, tensor or metric");
    common(gen);
    gen->add_option("--kind", opt.kind, "jet | einstein-one-jet | einstein-jet | constant-curvature | curvature | metric");

    CLI::App* check = app.add_subcommand("check", "Run identity suites, or check a jet file");
    common(check);
    check->add_option("--suite", opt.suite, "Suite name or 'all'");
    check->add_option("--in", opt.in, "Two-jet file to check");
    check->add_option("--samples", opt.samples, "Seeds per suite")->check(CLI::PositiveNumber);
    check->add_flag("--full", opt.full, "Dimensions 3, 4, 5 with 100 seeds");

    CLI::App* extend = app.add_subcommand("extend", "Extend an Einstein one-jet to a two-jet");
    common(extend);
    extend->add_option("--in", opt.in, "One-jet file")->required();

    CLI::App* fit = app.add_subcommand("fit", "Fit the second-order Jacobi relation");
    common(fit);
    fit->add_option("--in", opt.in, "Two-jet file")->required();

    CLI::App* metric_cmd = app.add_subcommand("metric", "Curvature jet of a polynomial metric, or the seed metric of a jet");
    common(metric_cmd);
    metric_cmd->add_option("--in", opt.in, "Polynomial metric or jet file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_gen(opt);
        if (check->parsed()) return cmd_check(opt);
        if (extend->parsed()) return cmd_extend(opt);
        if (fit->parsed()) return cmd_fit(opt);
        return cmd_metric(opt);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFail;
    }
}
