#include "curvjet/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>

#include "curvjet/error.hpp"
#include "curvjet/metric_jet.hpp"

namespace curvjet {

namespace {

using Suite = std::function<void(const JetSpace&, const SuiteConfig&, Report&)>;

std::uint64_t sample_seed(const SuiteConfig& cfg, int i, std::uint64_t salt) {
    return derive_seed(derive_seed(cfg.seed, salt), static_cast<std::uint64_t>(i));
}

void merge_all(Report& into, const Report& from, const std::string& prefix = {}) {
    for (const Record& r : from.records()) {
        if (r.kind == CheckKind::Diagnostic) continue;
        into.merge_max(prefix + r.name, r.residual, r.threshold, r.note);
    }
}

// Output [x5,x6,x2,x4] of F evaluated at (x_tau5, x_sigma2, x_tau6, x_sigma4), summed over both swaps.
Tensor ssum(const Tensor& F) { return swap_pair_sum(F); }

void eigenvalue_suite(const JetSpace& js, const SuiteConfig& cfg, Report& rep) {
    const Basis* bases[] = {&js.C0(), &js.C1(), &js.C2()};
    for (int k = 0; k <= 2; ++k) {
        const double factor = young_factor(k);
        const std::string name = "young eigenvalue k=" + std::to_string(k);
        for (int i = 0; i < cfg.samples; ++i) {
            const Tensor t = bases[k]->random_element(sample_seed(cfg, i, 10 + static_cast<std::uint64_t>(k)));
            rep.merge_max(name, relative_residual(young_apply(t, k), factor * t), cfg.tol,
                          "factor " + std::to_string(static_cast<int>(factor)));
        }
    }
    const Tensor g = metric(js.space());
    const Tensor gg = kulkarni(g, g);
    rep.add("young eigenvalue on g^g", relative_residual(young_apply(gg, 0), 12.0 * gg), cfg.tol);
}

void star_suite(const JetSpace& js, const SuiteConfig& cfg, Report& rep) {
    for (int i = 0; i < cfg.samples; ++i) {
        const Tensor R = js.C0().random_element(sample_seed(cfg, i, 20));
        const Tensor Rp = js.C0().random_element(sample_seed(cfg, i, 21));
        merge_all(rep, star_lemma_check(R, Rp, cfg.tol));
        merge_all(rep, star_lemma_check(R, R, cfg.tol), "self ");
    }
    if (js.space().dim() < 3) return;
    for (int i = 0; i < cfg.samples; ++i) {
        const Tensor R = random_einstein_one_jet(js, sample_seed(cfg, i, 22)).R;
        const Tensor RR = star_action(R, R);
        const Tensor F = first_slot_action(R, R);
        const Tensor jac = symmetrize(symmetrize(RR, {0, 2}), {1, 3});
        const Tensor jacF = symmetrize(symmetrize(-4.0 * F, {0, 2}), {1, 3});
        rep.merge_max("einstein jacobi form", relative_residual(jac, jacF), cfg.tol);
        rep.merge_max("einstein ricci of R*R", relative_norm(ricci(RR).ric, RR.norm()), cfg.tol);
    }
}

void weitzenbock_suite(const JetSpace& js, const SuiteConfig& cfg, Report& rep) {
    for (int i = 0; i < cfg.samples; ++i) {
        const TwoJet jet = random_two_jet(js, sample_seed(cfg, i, 30));
        merge_all(rep, weitzenbock_special(jet, cfg.tol));
        merge_all(rep, weitzenbock_check(section_from_jet(jet), cfg.tol), "weitzenbock self ");
        const Tensor background = js.C0().random_element(sample_seed(cfg, i, 31));
        merge_all(rep, weitzenbock_check(random_section_jet(js, background, sample_seed(cfg, i, 32)), cfg.tol),
                  "weitzenbock ");
    }
    if (js.space().dim() < 3) return;
    for (int i = 0; i < cfg.samples; ++i) {
        const TwoJet jet = random_einstein_jet(js, sample_seed(cfg, i, 33));
        const Report r = weitzenbock_special(jet, cfg.tol);
        if (const Record* e = r.find("einstein form")) {
            rep.merge_max("einstein form", e->residual, cfg.tol);
        } else {
            rep.merge_max("einstein form", 1.0, cfg.tol, "Ricci Hessian did not vanish");
        }
    }
}

void hierarchy_suite(const JetSpace& js, const SuiteConfig& cfg, Report& rep) {
    for (int i = 0; i < cfg.samples; ++i) {
        const Tensor d2 = js.C2().random_element(sample_seed(cfg, i, 40));
        const Tensor h = hess_ric(d2);
        const Tensor dd = div_der(d2);
        const Tensor rl = rough_laplacian(d2);
        rep.merge_max("divergence from Ricci Hessian", relative_residual(dd, reindex(h, "acbd->abcd") - reindex(h, "adbc->abcd")), cfg.tol);
        rep.merge_max("rough Laplacian from Ricci Hessian", relative_residual(rl, young_apply(reindex(h, "acbd->abcd"), 0) / 4.0), cfg.tol);
        rep.merge_max("rough Laplacian from divergence", relative_residual(rl, dd - reindex(dd, "bacd->abcd")), cfg.tol);
    }
    const Eigen::MatrixXd kernel = null_space(js.hess_ric_solver().matrix());
    rep.add_diagnostic("Ricci Hessian kernel dimension on C_2", static_cast<double>(kernel.cols()));
    if (kernel.cols() == 0) return;
    const Basis flat(js.space(), 6, js.C2().matrix() * kernel);
    for (int i = 0; i < cfg.samples; ++i) {
        const Tensor d2 = flat.random_element(sample_seed(cfg, i, 41));
        rep.merge_max("kernel: Ricci Hessian", relative_norm(hess_ric(d2), d2.norm()), cfg.tol);
        rep.merge_max("kernel: divergence", relative_norm(div_der(d2), d2.norm()), cfg.tol);
        rep.merge_max("kernel: rough Laplacian", relative_norm(rough_laplacian(d2), d2.norm()), cfg.tol);
    }
}

void factors_suite(const JetSpace& js, const SuiteConfig& cfg, Report& rep) {
    for (int i = 0; i < cfg.samples; ++i) {
        const TwoJet jet = random_two_jet(js, sample_seed(cfg, i, 50));
        const TildeOps t = tilde_ops(jet);
        const Tensor RR = star_action(jet.R, jet.R);
        const Tensor P = ricci_action(jet.R);
        const Tensor h = hess_ric(jet.d2R);
        const Tensor literal = 2.0 * ssum(-1.0 * RR + 2.0 * P + 10.0 * reindex(h, "acbd->abcd"));
        rep.merge_max("associated Ricci Hessian", relative_residual(t.tilde_hess_ric, literal), cfg.tol,
                      "coefficients -1, +2, +10, overall 2");
        const Tensor corrected = -2.0 * ssum(RR) - 12.0 * ssum(P) - 40.0 * P + 80.0 * h;
        rep.merge_max("associated Ricci Hessian corrected", relative_residual(t.tilde_hess_ric, corrected), cfg.tol,
                      "-2 S(R*R) - 12 S(R.ric) - 40 R.ric + 80 Hess ric");
        rep.merge_max("associated rough Laplacian", relative_residual(t.tilde_rough, 80.0 * rough_laplacian(jet.d2R) + 16.0 * RR),
                      cfg.tol, "80 and 16");
    }
    if (js.space().dim() < 3) return;
    for (int i = 0; i < cfg.samples; ++i) {
        const TwoJet jet = random_einstein_jet(js, sample_seed(cfg, i, 51));
        const Tensor RR = star_action(jet.R, jet.R);
        const Tensor rhs = -4.0 * (reindex(RR, "acbd->abcd") + reindex(RR, "adbc->abcd"));
        rep.merge_max("einstein associated Ricci Hessian",
                      relative_residual(tilde_ops(jet).tilde_hess_ric, rhs, jet.R.norm() * jet.R.norm()), cfg.tol);
    }
}

void hat_suite(const JetSpace& js, const SuiteConfig& cfg, Report& rep) {
    if (js.weyl_basis().size() == 0) {
        rep.add_diagnostic("Weyl space dimension", 0.0, "every check is 0 = 0 in this dimension");
    }
    static const char* names[] = {"hat-ricci-trace", "hat-rough-laplacian", "metric-slot-trace-3",
                                  "metric-slot-trace-6", "metric-trace-2n-4"};
    const TwoJet none = TwoJet::zero(js.space());
    for (int i = 0; i < cfg.samples; ++i) {
        for (const char* name : names) {
            merge_all(rep, verify_identity(name, js, none, sample_seed(cfg, i, 60)));
        }
    }
    const Basis& c0 = js.C0();
    const Eigen::MatrixXd m = matrix_of(c0, [](const Tensor& s) { return hat_embed(s); });
    const int rank = numeric_rank(m);
    rep.add("hat embedding rank deficit", static_cast<double>(c0.size() - rank), 0.5,
            "rank " + std::to_string(rank) + " of " + std::to_string(c0.size()));
}

void einstein_suite(const JetSpace& js, const SuiteConfig& cfg, Report& rep) {
    int disagreements = 0;
    int einstein_rejected = 0;
    int perturbed_accepted = 0;
    double worst_defect = 0.0;
    for (int i = 0; i < cfg.samples; ++i) {
        const TwoJet jet = random_einstein_jet(js, sample_seed(cfg, i, 70));
        const EinsteinCheck ok = einstein_check(jet, cfg.tol);
        for (const Record& r : ok.defects.records()) worst_defect = std::max(worst_defect, r.residual);
        disagreements += ok.agree() ? 0 : 1;
        einstein_rejected += ok.verdict_definition ? 0 : 1;
        const EinsteinCheck bad = einstein_check(perturb_jet(js, jet, sample_seed(cfg, i, 71)), cfg.tol);
        disagreements += bad.agree() ? 0 : 1;
        perturbed_accepted += bad.verdict_definition ? 1 : 0;
    }
    const std::string of = "of " + std::to_string(2 * cfg.samples) + " jets";
    rep.add("verdict disagreements", disagreements, 0.5, of);
    rep.add("constructed Einstein jets rejected", einstein_rejected, 0.5);
    rep.add("perturbed jets accepted", perturbed_accepted, 0.5);
    rep.add_diagnostic("largest Einstein-jet defect", worst_defect);
    const Tensor g = metric(js.space());
    const TwoJet space_form{kulkarni(g, g), Tensor(js.space(), 5), Tensor(js.space(), 6)};
    const EinsteinCheck sf = einstein_check(space_form, cfg.tol);
    rep.add("constant curvature verdicts", sf.verdict_definition && sf.agree() ? 0.0 : 1.0, 0.5);
}

void corollary_suite(const JetSpace& js, const SuiteConfig& cfg, Report& rep) {
    const double main_tol = 10.0 * cfg.tol;
    const Tensor g = metric(js.space());
    int exercised = 0;
    const auto exercise = [&](const TwoJet& jet) {
        const JacobiFit fit = fit_jacobi_relation(jet, cfg.tol);
        if (fit.main_residual) {
            ++exercised;
            rep.merge_max("rough Laplacian from fitted constant", *fit.main_residual, main_tol);
        }
        return fit;
    };
    std::mt19937_64 gen(derive_seed(cfg.seed, 80));
    std::normal_distribution<double> dist(0.0, 1.0);
    for (int i = 0; i < cfg.samples; ++i) {
        const double lambda = dist(gen);
        const TwoJet sym{lambda * kulkarni(g, g), Tensor(js.space(), 5), Tensor(js.space(), 6)};
        const JacobiFit fit = exercise(sym);
        rep.merge_max("symmetric jet fitted constant", std::abs(fit.c), cfg.tol);
    }
    if (js.space().dim() >= 3) {
        double worst_fit = 0.0;
        for (int i = 0; i < cfg.samples; ++i) {
            worst_fit = std::max(worst_fit, exercise(random_einstein_jet(js, sample_seed(cfg, i, 81))).residual);
        }
        rep.add_diagnostic("Einstein jets: largest fit residual", worst_fit);
    }
    rep.add_diagnostic("jets with a fitted relation", exercised);
}

void roundtrip_suite(const JetSpace& js, const SuiteConfig& cfg, Report& rep) {
    const double loose = 10.0 * cfg.tol;
    for (int i = 0; i < cfg.samples; ++i) {
        const Tensor R = js.C0().random_element(sample_seed(cfg, i, 90));
        const Tensor dR = js.C1().random_element(sample_seed(cfg, i, 91));
        const TwoJet back = curvature_two_jet(seed_metric(R, dR));
        rep.merge_max("seed metric reproduces R", relative_residual(back.R, R), loose);
        rep.merge_max("seed metric reproduces dR", relative_residual(back.dR, dR), loose);
    }
    if (js.space().dim() < 3) return;
    double worst_hat = 0.0;
    for (int i = 0; i < cfg.samples; ++i) {
        const OneJet one = random_einstein_one_jet(js, sample_seed(cfg, i, 92));
        const Extension ext = einstein_extend(js, one.R, one.dR, cfg.tol);
        merge_all(rep, validate_two_jet(ext.jet, loose), "extension ");
        const EinsteinCheck ec = einstein_check(ext.jet, cfg.tol);
        rep.merge_max("extension is Einstein", ec.verdict_definition && ec.agree() ? 0.0 : 1.0, 0.5);
        rep.merge_max("extension correction solve", ext.solve_residual, loose);
        worst_hat = std::max(worst_hat, ext.hat_weyl_residual);
        if (i == 0) rep.add_diagnostic("extension solution space dimension", ext.solution_dim);
    }
    rep.add_diagnostic("largest residual with Weyl-only hat correction", worst_hat);
}

void dimensions_suite(const JetSpace& js, const SuiteConfig&, Report& rep) {
    const int n = js.space().dim();
    const int expected = n * n * (n * n - 1) / 12;
    const int rank = js.C0().size();
    rep.add("curvature space dimension", std::abs(rank - expected), 0.5,
            "rank " + std::to_string(rank) + ", expected " + std::to_string(expected));
    for (int k = 0; k <= 2; ++k) {
        const KernelCheck kc = kulkarni_kernel_check(js.space(), k, 0);
        rep.add("Kulkarni kernel on N_" + std::to_string(k + 2), kc.n_dim - kc.rank, 0.5,
                "rank " + std::to_string(kc.rank) + " of " + std::to_string(kc.n_dim));
    }
}

void metric_suite(const JetSpace& js, const SuiteConfig& cfg, Report& rep) {
    const double loose = 10.0 * cfg.tol;
    for (int i = 0; i < cfg.samples; ++i) {
        merge_all(rep, validate_two_jet(curvature_two_jet(random_polymetric(js.space(), sample_seed(cfg, i, 100))), loose),
                  "polynomial metric ");
    }
    const Tensor g = metric(js.space());
    const TwoJet sphere = curvature_two_jet(constant_curvature_metric(js.space(), 1.0));
    rep.add("constant curvature metric R", relative_residual(sphere.R, -0.5 * kulkarni(g, g)), loose);
    rep.add("constant curvature metric dR", relative_norm(sphere.dR, 1.0), loose);
    rep.add("constant curvature metric d2R", relative_norm(sphere.d2R, 1.0), loose);
}

void registry_suite(const JetSpace& js, const SuiteConfig& cfg, Report& rep) {
    for (int i = 0; i < cfg.samples; ++i) {
        const TwoJet jet = random_two_jet(js, sample_seed(cfg, i, 110));
        for (const std::string& name : identity_names()) {
            merge_all(rep, verify_identity(name, js, jet, sample_seed(cfg, i, 111)));
        }
    }
}

const std::map<std::string, Suite>& suites() {
    static const std::map<std::string, Suite> table{
        {"eigenvalue", eigenvalue_suite}, {"star", star_suite},         {"weitzenbock", weitzenbock_suite},
        {"hierarchy", hierarchy_suite},   {"factors", factors_suite},   {"hat", hat_suite},
        {"einstein", einstein_suite},     {"corollary", corollary_suite}, {"roundtrip", roundtrip_suite},
        {"dimensions", dimensions_suite}, {"metric", metric_suite},     {"registry", registry_suite},
    };
    return table;
}

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : suites()) names.push_back(name);
    return names;
}

bool is_suite(const std::string& name) { return name == "all" || suites().contains(name); }

Report run_suite(const std::string& name, const JetSpace& js, const SuiteConfig& cfg) {
    if (cfg.samples < 1) throw InvalidArgument("a suite needs at least one sample");
    if (!(cfg.tol > 0.0)) throw InvalidArgument("tolerance must be positive");
    Report rep;
    if (name == "all") {
        for (const auto& [suite, fn] : suites()) {
            Report part;
            try {
                fn(js, cfg, part);
            } catch (const Unsupported& e) {
                part = Report{};
                part.add_diagnostic("skipped", 0.0, e.what());
            }
            rep.append(part, suite + ": ");
        }
        return rep;
    }
    const auto it = suites().find(name);
    if (it == suites().end()) throw InvalidArgument("unknown suite '" + name + "'");
    it->second(js, cfg, rep);
    return rep;
}

TwoJet random_einstein_jet(const JetSpace& js, std::uint64_t seed) {
    const OneJet one = random_einstein_one_jet(js, seed);
    return einstein_extend(js, one.R, one.dR).jet;
}

TwoJet perturb_jet(const JetSpace& js, const TwoJet& jet, std::uint64_t seed, double relative) {
    Tensor b = js.C2().random_element(seed);
    if (hess_ric(b).norm() < 1e-8 * b.norm()) {
        // A generic element always has a Ricci Hessian; fall back to scanning the basis.
        for (int i = 0; i < js.C2().size(); ++i) {
            b = js.C2().element(i);
            if (hess_ric(b).norm() > 1e-8) break;
        }
    }
    const double scale = std::max({jet.d2R.norm(), jet.R.norm() * jet.R.norm(), 1.0});
    TwoJet out = jet;
    out.d2R += (relative * scale / b.norm()) * b;
    return out;
}

KernelCheck kulkarni_kernel_check(const Space& space, int k, std::uint64_t seed) {
    const int m = k + 2;
    // Spanning set of Sym^m (x) Sym^2 from symmetrized random tensors, then the N_m subspace.
    const int n = space.dim();
    auto binom = [](int a, int b) {
        long long r = 1;
        for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
        return static_cast<int>(r);
    };
    const int target = binom(n + m - 1, m) * n * (n + 1) / 2;
    std::vector<int> lead(static_cast<std::size_t>(m));
    std::iota(lead.begin(), lead.end(), 0);
    std::vector<Tensor> family;
    for (int i = 0; i < target + 8; ++i) {
        family.push_back(SymBiform(random_tensor(space, m + 2, derive_seed(seed, static_cast<std::uint64_t>(i))), m).tensor());
    }
    const Basis sym = orthonormal_span(family);
    const Eigen::MatrixXd defect = matrix_of(sym, [m](const Tensor& t) { return Nk_defect_tensor(SymBiform(t, m)); });
    const Basis nk(space, m + 2, sym.matrix() * null_space(defect));
    if (nk.size() == 0) return {k, 0, 0};
    const Eigen::MatrixXd kn = matrix_of(nk, [m](const Tensor& t) { return kulkarni(SymBiform(t, m)); });
    return {k, nk.size(), numeric_rank(kn)};
}

}  // namespace curvjet
