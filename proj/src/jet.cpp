#include "curvjet/jet.hpp"

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

constexpr double kTiny = 1e-300;
constexpr double kConstructionThreshold = 1e-8;

double ratio(double num, double den) {
    if (num == 0.0) return 0.0;
    return num / std::max(den, kTiny);
}

Tensor flat_to_tensor(const Space& space, int valence, const Eigen::VectorXd& v) {
    return Tensor(space, valence, std::vector<double>(v.data(), v.data() + v.size()));
}

Eigen::VectorXd tensor_to_flat(const Tensor& t) {
    return Eigen::Map<const Eigen::VectorXd>(t.data().data(), static_cast<Eigen::Index>(t.size()));
}

const Tableau kSquare{{{0, 2}, {1, 3}}};

// Largest norm among all pairwise metric traces.
double max_trace_norm(const Tensor& t) {
    double m = 0.0;
    for (int i = 0; i < t.valence(); ++i)
        for (int j = i + 1; j < t.valence(); ++j) m = std::max(m, metric_trace(t, i, j).norm());
    return m;
}

// Q(T)(x,y,x,y) depends only on this symmetrization.
Tensor jacobi_quadratic(const Tensor& t) { return symmetrize(symmetrize(t, {0, 2}), {1, 3}); }

// R'_{x2,x4}.ric(x1,x3) - R'_{x2,x3}.ric(x1,x4) + R'_{x1,x3}.ric(x2,x4) - R'_{x1,x4}.ric(x2,x3)
Tensor ricci_terms(const Tensor& P) {
    return reindex(P, "bdac->abcd") - reindex(P, "bcad->abcd") + reindex(P, "acbd->abcd") - reindex(P, "adbc->abcd");
}

// Right-hand side of the six-term expression for R*R'.
Tensor six_term(const Tensor& R, const Tensor& Rp) {
    const Tensor F = first_slot_action(R, Rp);
    const Tensor P = ricci_action(Rp, ricci(R).ric);
    return -(2.0 * F - 2.0 * swap_slots(F, 0, 1) + ricci_terms(P));
}

// Stacks count random C_0 elements along new leading slots of total size count.
Tensor stacked_C0(const Basis& c0, int lead_valence, std::uint64_t seed) {
    const Space& space = c0.space();
    Tensor out(space, lead_valence + 4);
    const std::size_t block = static_cast<std::size_t>(std::pow(space.dim(), 4));
    const std::size_t count = out.size() / block;
    for (std::size_t i = 0; i < count; ++i) {
        const Tensor e = c0.random_element(derive_seed(seed, i));
        std::copy(e.data().begin(), e.data().end(), out.data().begin() + static_cast<std::ptrdiff_t>(i * block));
    }
    return out;
}

}  // namespace

Tensor curvature_action_on(const Tensor& R, const Tensor& A) {
    const int n = R.dim();
    const Tensor E = curvature_endomorphisms(R);
    Tensor out(R.space(), A.valence() + 2);
    const std::size_t block = A.size();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const Tensor act = derivation(endomorphism(E, x, y), A);
            std::copy(act.data().begin(), act.data().end(),
                      out.data().begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(x * n + y) * block));
        }
    return out;
}

Report validate_two_jet(const TwoJet& jet, double tol) {
    if (jet.R.valence() != 4 || jet.dR.valence() != 5 || jet.d2R.valence() != 6) {
        throw InvalidArgument("two-jet needs valences 4, 5, 6");
    }
    // Defects of the derivatives are measured against the curvature scale, so a vanishing
    // derivative made of rounding noise does not count as a violation.
    const double r = jet.R.norm();
    const double s1 = std::max(jet.dR.norm(), r);
    const double s2 = std::max({jet.d2R.norm(), r * r, jet.dR.norm()});
    Report rep;
    rep.add("R in C_0", jet.R.is_zero() ? 0.0 : curvature_defect(jet.R, 0), tol);
    rep.add("dR in C_1", jet.dR.is_zero() ? 0.0 : ratio(Ck_defect(jet.dR, 1) * jet.dR.norm(), s1), tol);
    double d2 = 0.0;
    if (!jet.d2R.is_zero()) {
        d2 = ratio(std::max(curvature_defect(jet.d2R, 2), cyclic_defect(jet.d2R, 1)) * jet.d2R.norm(), s2);
    }
    rep.add("d2R in V* (x) C_1", d2, tol);
    const Tensor antisym = jet.d2R - swap_slots(jet.d2R, 0, 1);
    rep.add("Ricci identity", ratio((antisym - curvature_action_on(jet.R, jet.R)).norm(), s2), tol);
    return rep;
}

Report validate_section_jet(const SectionTwoJet& jet, double tol) {
    Report rep;
    rep.add("background in C_0", jet.background.is_zero() ? 0.0 : curvature_defect(jet.background, 0), tol);
    rep.add("R' in C_0", jet.Rp.is_zero() ? 0.0 : curvature_defect(jet.Rp, 0), tol);
    rep.add("dR' in V* (x) C_0", jet.dRp.is_zero() ? 0.0 : curvature_defect(jet.dRp, 1), tol);
    rep.add("d2R' in V* (x) V* (x) C_0", jet.d2Rp.is_zero() ? 0.0 : curvature_defect(jet.d2Rp, 2), tol);
    const Tensor antisym = jet.d2Rp - swap_slots(jet.d2Rp, 0, 1);
    rep.add("Ricci identity", relative_residual(antisym, curvature_action_on(jet.background, jet.Rp)), tol);
    return rep;
}

LeastSquares::LeastSquares(Eigen::MatrixXd m, double cutoff)
    : m_(std::move(m)), svd_(svd(m_, true, true)), rank_(svd_.rank(cutoff)) {}

Eigen::VectorXd LeastSquares::solve(const Eigen::VectorXd& rhs) const {
    // Minimum-norm solution over the retained singular triplets.
    const auto r = static_cast<Eigen::Index>(rank_);
    const Eigen::VectorXd proj = svd_.U.leftCols(r).transpose() * rhs;
    return svd_.V.leftCols(r) * proj.cwiseQuotient(svd_.S.head(r));
}

JetSpace::JetSpace(Space space, std::uint64_t seed) : space_(std::move(space)), seed_(seed) {}

const Basis& JetSpace::C0() const {
    std::lock_guard lock(mutex_);
    if (!c0_) c0_ = basis_Ck(space_, 0, derive_seed(seed_, 0));
    return *c0_;
}

const Basis& JetSpace::C1() const {
    std::lock_guard lock(mutex_);
    if (!c1_) c1_ = basis_Ck(space_, 1, derive_seed(seed_, 1));
    return *c1_;
}

const Basis& JetSpace::C2() const {
    std::lock_guard lock(mutex_);
    if (!c2_) c2_ = basis_Ck(space_, 2, derive_seed(seed_, 2));
    return *c2_;
}

const Basis& JetSpace::weyl_basis() const {
    const Basis& c0 = C0();
    std::lock_guard lock(mutex_);
    if (!weyl_) {
        std::vector<Tensor> family;
        for (int i = 0; i < c0.size(); ++i) family.push_back(weyl_part(c0.element(i)));
        const double largest = std::accumulate(family.begin(), family.end(), 0.0,
                                               [](double m, const Tensor& t) { return std::max(m, t.norm()); });
        // In dimension 3 every Weyl part is rounding noise.
        if (largest < 1e-10) {
            weyl_ = Basis(space_, 4, Eigen::MatrixXd(static_cast<Eigen::Index>(c0.element(0).size()), 0));
        } else {
            weyl_ = orthonormal_span(family);
        }
    }
    return *weyl_;
}

const Basis& JetSpace::trace_free_C1() const {
    const Basis& c1 = C1();
    std::lock_guard lock(mutex_);
    if (!tf_c1_) {
        const Eigen::MatrixXd m = matrix_of(c1, [](const Tensor& t) { return derivative_of_ricci(t); });
        tf_c1_ = Basis(space_, 5, c1.matrix() * null_space(m));
    }
    return *tf_c1_;
}

const LeastSquares& JetSpace::hess_ric_solver() const {
    const Basis& c2 = C2();
    std::lock_guard lock(mutex_);
    if (!hess_) hess_ = std::make_unique<LeastSquares>(matrix_of(c2, [](const Tensor& t) { return hess_ric(t); }));
    return *hess_;
}

const Eigen::MatrixXd& JetSpace::sym2_C0() const {
    const Basis& c0 = C0();
    std::lock_guard lock(mutex_);
    if (!sym2_) {
        const int n = space_.dim();
        const auto block = static_cast<Eigen::Index>(c0.matrix().rows());
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(block * n * n, static_cast<Eigen::Index>(n * (n + 1) / 2) * c0.size());
        Eigen::Index col = 0;
        for (int x = 0; x < n; ++x)
            for (int y = x; y < n; ++y) {
                const double w = x == y ? 1.0 : std::sqrt(0.5);
                for (int b = 0; b < c0.size(); ++b, ++col) {
                    m.block((x * n + y) * block, col, block, 1) = w * c0.matrix().col(b);
                    if (x != y) m.block((y * n + x) * block, col, block, 1) = w * c0.matrix().col(b);
                }
            }
        sym2_ = std::move(m);
    }
    return *sym2_;
}

const LeastSquares& JetSpace::bianchi_solver() const {
    const Eigen::MatrixXd& s2 = sym2_C0();
    std::lock_guard lock(mutex_);
    if (!bianchi_) {
        Eigen::MatrixXd m(s2.rows(), s2.cols());
        for (Eigen::Index c = 0; c < s2.cols(); ++c) {
            const Tensor t = flat_to_tensor(space_, 6, s2.col(c));
            m.col(c) = tensor_to_flat(cyclic_sum(t, 1, 2, 3));
        }
        bianchi_ = std::make_unique<LeastSquares>(std::move(m));
    }
    return *bianchi_;
}

TwoJet random_two_jet(const JetSpace& js, std::uint64_t seed) {
    const Space& space = js.space();
    Tensor R = js.C0().random_element(derive_seed(seed, 1));
    Tensor dR = js.C1().random_element(derive_seed(seed, 2));
    // Forced antisymmetric part, then a symmetric part restoring second Bianchi.
    const Tensor anti = 0.5 * curvature_action_on(R, R);
    const Eigen::VectorXd rhs = -tensor_to_flat(cyclic_sum(anti, 1, 2, 3));
    Tensor d2R = anti;
    if (rhs.norm() > 0.0) {
        const LeastSquares& solver = js.bianchi_solver();
        const Eigen::VectorXd coef = solver.solve(rhs);
        const double res = (solver.matrix() * coef - rhs).norm() / rhs.norm();
        if (res > kConstructionThreshold) {
            throw ConstructionFailed("second Bianchi least squares left relative residual " + std::to_string(res));
        }
        d2R += flat_to_tensor(space, 6, js.sym2_C0() * coef);
    }
    d2R += js.C2().random_element(derive_seed(seed, 3));
    return {std::move(R), std::move(dR), std::move(d2R)};
}

SectionTwoJet random_section_jet(const JetSpace& js, const Tensor& background, std::uint64_t seed) {
    if (!(background.space() == js.space()) || background.valence() != 4) {
        throw InvalidArgument("background must be a valence-4 tensor over the jet space");
    }
    Tensor Rp = js.C0().random_element(derive_seed(seed, 1));
    Tensor dRp = stacked_C0(js.C0(), 1, derive_seed(seed, 2));
    Tensor S = stacked_C0(js.C0(), 2, derive_seed(seed, 3));
    S = 0.5 * (S + swap_slots(S, 0, 1));
    Tensor d2Rp = S + 0.5 * curvature_action_on(background, Rp);
    return {background, std::move(Rp), std::move(dRp), std::move(d2Rp)};
}

SectionTwoJet section_from_jet(const TwoJet& jet) { return {jet.R, jet.R, jet.dR, jet.d2R}; }

OneJet random_einstein_one_jet(const JetSpace& js, std::uint64_t seed) {
    std::mt19937_64 gen(derive_seed(seed, 0));
    std::normal_distribution<double> dist(0.0, 1.0);
    const double lambda = dist(gen);
    const Tensor g = metric(js.space());
    Tensor R = lambda * kulkarni(g, g) + js.weyl_basis().random_element(derive_seed(seed, 1));
    Tensor dR = js.trace_free_C1().random_element(derive_seed(seed, 2));
    return {std::move(R), std::move(dR)};
}

Tensor hess_ric(const Tensor& d2R) { return -metric_trace(d2R, 3, 5); }
Tensor div_der(const Tensor& d2R) { return -metric_trace(d2R, 1, 2); }
Tensor rough_laplacian(const Tensor& d2R) { return -metric_trace(d2R, 0, 1); }

JetTraces jet_traces(const TwoJet& jet) {
    return {hess_ric(jet.d2R), div_der(jet.d2R), rough_laplacian(jet.d2R)};
}

SymBiform sym_jacobi(const Tensor& D, int k) {
    if (k < 0 || D.valence() != k + 4) throw InvalidArgument("sym_jacobi needs valence k+4");
    // out[s_1..s_k, s_{k+1}, s_{k+2}, x, y] = D[s_1..s_k, x, s_{k+1}, s_{k+2}, y]
    std::vector<int> perm(static_cast<std::size_t>(k + 4));
    std::iota(perm.begin(), perm.end(), 0);
    perm[static_cast<std::size_t>(k)] = k + 2;
    perm[static_cast<std::size_t>(k + 1)] = k;
    perm[static_cast<std::size_t>(k + 2)] = k + 1;
    std::vector<int> lead(static_cast<std::size_t>(k + 2));
    std::iota(lead.begin(), lead.end(), 0);
    return SymBiform(symmetrize(permute(D, perm), lead), k + 2);
}

SymBiform sym_jacobi(const TwoJet& jet, int k) {
    switch (k) {
        case 0: return sym_jacobi(jet.R, 0);
        case 1: return sym_jacobi(jet.dR, 1);
        case 2: return sym_jacobi(jet.d2R, 2);
        default: throw InvalidArgument("two-jets carry k = 0, 1, 2 only");
    }
}

SymBiform odot_g(const SymBiform& h) {
    const int m = h.degree();
    // h (x) g has slots [s_1..s_m, x, y, p, q]; move p, q before x, y.
    const Tensor t = outer(h.tensor(), metric(h.space()));
    std::vector<int> perm(static_cast<std::size_t>(m + 4));
    std::iota(perm.begin(), perm.end(), 0);
    perm[static_cast<std::size_t>(m)] = m + 2;
    perm[static_cast<std::size_t>(m + 1)] = m + 3;
    perm[static_cast<std::size_t>(m + 2)] = m;
    perm[static_cast<std::size_t>(m + 3)] = m + 1;
    std::vector<int> lead(static_cast<std::size_t>(m + 2));
    std::iota(lead.begin(), lead.end(), 0);
    return SymBiform(symmetrize(permute(t, perm), lead), m + 2);
}

TildeOps tilde_ops(const TwoJet& jet) {
    const Tensor Y = young_apply(jet.d2R, 2);
    return {-metric_trace(Y, 2, 4), -metric_trace(Y, 0, 1)};
}

Tensor hat_embed(const Tensor& S) {
    if (S.valence() != 4) throw InvalidArgument("hat_embed needs a valence-4 tensor");
    return young_apply(outer(metric(S.space()), S), 2);
}

Tensor swap_pair_sum(const Tensor& F) {
    const Tensor A = reindex(F, "acbd->abcd");
    return A + reindex(A, "bacd->abcd") + reindex(A, "abdc->abcd") + reindex(A, "badc->abcd");
}

Report weitzenbock_check(const SectionTwoJet& jet, double tol) {
    const Tensor& d2 = jet.d2Rp;
    // d delta: nabla_x delta(y) - nabla_y delta(x), with nabla_w delta R'(x;a,b) = -sum d2R'(w,e_i; e_i,x,a,b)
    const Tensor nabla_delta = -metric_trace(d2, 1, 2);
    const Tensor d_delta = nabla_delta - swap_slots(nabla_delta, 0, 1);
    // delta d: nabla_w dR'(x,y,z) = d2(w,x;y,z) + d2(w,y;z,x) + d2(w,z;x,y), then the negated first trace.
    const Tensor D = d2 + reindex(d2, "wyzxab->wxyzab") + reindex(d2, "wzxyab->wxyzab");
    const Tensor delta_d = -metric_trace(D, 0, 1);
    const Tensor L = d_delta + delta_d;

    const Tensor rough = rough_laplacian(d2);
    const Tensor RRp = star_action(jet.background, jet.Rp);
    const Tensor P = ricci_action(jet.Rp, ricci(jet.background).ric);
    const Tensor F = first_slot_action(jet.background, jet.Rp);

    Report rep;
    rep.add("full", relative_residual(L, rough + 0.5 * RRp + 0.5 * ricci_terms(P)), tol);
    rep.add("strict", relative_residual(young_apply(L, 0) / 12.0, rough + 0.5 * RRp), tol);
    rep.add("exact", relative_residual(L, rough - (F - swap_slots(F, 0, 1))), tol);
    return rep;
}

Report weitzenbock_special(const TwoJet& jet, double tol) {
    const Tensor rough = rough_laplacian(jet.d2R);
    const Tensor h = hess_ric(jet.d2R);
    const Tensor RR = star_action(jet.R, jet.R);
    const double floor = jet.R.norm() * jet.R.norm();
    Report rep;
    rep.add("special", relative_residual(rough, young_apply(reindex(h, "acbd->abcd"), 0) / 4.0 - 0.5 * RR, floor), tol);
    const double hsize = ratio(h.norm(), std::max(jet.d2R.norm(), floor));
    if (hsize < tol) rep.add("einstein form", relative_residual(rough, -0.5 * RR, floor), tol);
    return rep;
}

EinsteinCheck einstein_check(const TwoJet& jet, double tol) {
    const Space& space = jet.space();
    const int n = space.dim();
    const Tensor g = metric(space);
    const auto [ric, s] = ricci(jet.R);
    const double rnorm = jet.R.norm();
    const double a1 = ratio((ric - (s / n) * g).norm(), rnorm);
    const double a2 = ratio(derivative_of_ricci(jet.dR).norm(), std::max(jet.dR.norm(), rnorm));
    const double a3 = ratio(hess_ric(jet.d2R).norm(), std::max(jet.d2R.norm(), rnorm * rnorm));

    const Tensor RR = star_action(jet.R, jet.R);
    const Tensor lead = young_apply(jet.d2R, 2);
    const Tensor corr = young_apply(outer(g, RR), 2) / (n + 4.0);
    const double b = ratio(max_trace_norm(lead - corr), std::max({lead.norm(), corr.norm(), rnorm * rnorm}));

    const Tensor j2 = sym_jacobi(jet.d2R, 2).tensor();
    const Tensor j0 = odot_g(sym_jacobi(RR, 0)).tensor() / (n + 4.0);
    const double c = ratio(max_trace_norm(j2 - j0), std::max({j2.norm(), j0.norm(), rnorm * rnorm}));

    EinsteinCheck out{};
    out.defects.add("ric - (s/n) g", a1, tol);
    out.defects.add("nabla ric", a2, tol);
    out.defects.add("nabla^2 ric", a3, tol);
    out.defects.add("tableau trace defect", b, tol);
    out.defects.add("odot trace defect", c, tol);
    const bool base = a1 < tol && a2 < tol;
    out.verdict_definition = base && a3 < tol;
    out.verdict_tableau = base && b < tol;
    out.verdict_odot = base && c < tol;
    return out;
}

JacobiFit fit_jacobi_relation(const TwoJet& jet, double tol) {
    if (jet.R.is_zero()) throw UndefinedFit("the Jacobi relation fit needs R != 0");
    const Tensor r2 = sym_jacobi(jet.d2R, 2).tensor();
    const Tensor basis = odot_g(sym_jacobi(jet.R, 0)).tensor();
    const auto a = std::span<const double>(r2.data());
    const auto b = std::span<const double>(basis.data());
    const double bb = std::inner_product(b.begin(), b.end(), b.begin(), 0.0);
    const double c = bb == 0.0 ? 0.0 : std::inner_product(a.begin(), a.end(), b.begin(), 0.0) / bb;
    const double rnorm = jet.R.norm();
    const double residual = ratio((r2 - c * basis).norm(), std::max(r2.norm(), rnorm * rnorm));
    JacobiFit fit{c, residual, std::nullopt};
    if (residual < tol && einstein_check(jet, tol).verdict_definition) {
        const int n = jet.space().dim();
        const Tensor rough = rough_laplacian(jet.d2R);
        fit.main_residual = ratio((rough + ((n + 4) * c / 2.0) * jet.R).norm(), std::max(rough.norm(), rnorm * rnorm));
    }
    return fit;
}

Extension einstein_extend(const JetSpace& js, const Tensor& R, const Tensor& dR, double tol) {
    const Space& space = js.space();
    if (R.valence() != 4 || dR.valence() != 5 || !(R.space() == space) || !(dR.space() == space)) {
        throw InvalidArgument("one-jet needs R of valence 4 and dR of valence 5 over the jet space");
    }
    const int n = space.dim();
    if (!R.is_zero() && curvature_defect(R, 0) > 1e-8) throw InvalidArgument("R is not an algebraic curvature tensor");
    if (!dR.is_zero() && Ck_defect(dR, 1) > 1e-8) throw InvalidArgument("dR violates the second Bianchi identity");
    const Tensor g = metric(space);
    const auto [ric, s] = ricci(R);
    const double a1 = ratio((ric - (s / n) * g).norm(), R.norm());
    if (!(a1 < tol)) throw InvalidArgument("ric ∉ ℝ·g (relative defect " + std::to_string(a1) + ")");
    const double a2 = ratio(derivative_of_ricci(dR).norm(), std::max(dR.norm(), R.norm()));
    if (!(a2 < tol)) throw InvalidArgument("∇ric ≠ 0 (relative defect " + std::to_string(a2) + ")");

    const TwoJet base = curvature_two_jet(seed_metric(R, dR));
    const Tensor RR = star_action(R, R);
    const Tensor defect = young_apply(base.d2R - outer(g, RR) / (n + 4.0), 2);
    const Tensor h = hess_ric(defect);

    const LeastSquares& solver = js.hess_ric_solver();
    Extension ext{TwoJet{R, dR, base.d2R}, solver.nullity(), 0.0, 0.0};
    if (h.is_zero() || h.norm() == 0.0) return ext;

    const Eigen::VectorXd rhs = -tensor_to_flat(h);
    const Eigen::VectorXd coef = solver.solve(rhs);
    ext.solve_residual = (solver.matrix() * coef - rhs).norm() / rhs.norm();
    if (ext.solve_residual > kConstructionThreshold) {
        throw ExtensionFailed("no C_2 correction cancels the trace defect; relative residual " +
                              std::to_string(ext.solve_residual));
    }
    ext.jet.d2R += js.C2().combine(coef) / young_factor(2);

    const Basis& weyl = js.weyl_basis();
    if (weyl.size() == 0) {
        ext.hat_weyl_residual = 1.0;
    } else {
        const Eigen::MatrixXd m = matrix_of(weyl, [](const Tensor& w) { return hess_ric(hat_embed(w)); });
        const LeastSquares ls(m);
        ext.hat_weyl_residual = (m * ls.solve(rhs) - rhs).norm() / rhs.norm();
    }
    return ext;
}

namespace {

struct IdentityInputs {
    TwoJet jet;
    Tensor weyl;
};

using IdentityFn = std::function<void(const IdentityInputs&, Report&)>;

const std::map<std::string, IdentityFn>& registry() {
    static const std::map<std::string, IdentityFn> table = [] {
        std::map<std::string, IdentityFn> t;
        t["derivation-trace"] = [](const IdentityInputs& in, Report& rep) {
            const Tensor& R = in.jet.R;
            const Tensor act = curvature_action_on(R, R);
            const Tensor F = first_slot_action(R, R);
            const Tensor P = ricci_action(R);
            const Tensor l1 = metric_trace(apply_tableau(reindex(act, "ecabdf->abcdef"), kSquare), 0, 2);
            const Tensor l2 = metric_trace(apply_tableau(reindex(act, "eacbdf->abcdef"), kSquare), 0, 2);
            const Tensor rhs = 3.0 * (reindex(F, "cabd->abcd") + reindex(F, "cbad->abcd") +
                                      reindex(P, "cabd->abcd") + reindex(P, "cbad->abcd"));
            rep.add("derivation-trace", relative_residual(l1, rhs), kDefaultTolerance);
            rep.add("derivation-trace-swapped", relative_residual(l1, l2), kDefaultTolerance);
        };
        t["derivation-trace-6"] = [](const IdentityInputs& in, Report& rep) {
            const Tensor& R = in.jet.R;
            const Tensor act = curvature_action_on(R, R);
            const Tensor F = first_slot_action(R, R);
            const Tensor P = ricci_action(R);
            const Tensor l = metric_trace(apply_tableau(reindex(act, "efabcd->abcdef"), Tableau{{{0, 2, 5}, {1, 3}}}), 0, 2);
            const Tensor rhs = 6.0 * (-2.0 * reindex(P, "cdab->abcd") + reindex(F, "cadb->abcd") +
                                      reindex(F, "cbda->abcd") - reindex(P, "cabd->abcd") - reindex(P, "cbad->abcd"));
            rep.add("derivation-trace-6", relative_residual(l, rhs), kDefaultTolerance);
        };
        t["second-derivative-trace"] = [](const IdentityInputs& in, Report& rep) {
            const Tensor& d2 = in.jet.d2R;
            const Tensor F = first_slot_action(in.jet.R, in.jet.R);
            const Tensor l = -metric_trace(apply_tableau(reindex(d2, "acebfd->abcdef"), kSquare), 0, 2);
            Tensor B = reindex(rough_laplacian(d2), "cadb->abcd") + hess_ric(d2) -
                       2.0 * reindex(div_der(d2), "acbd->abcd") - reindex(F, "acbd->abcd");
            B = B + reindex(B, "bacd->abcd");
            B = B + reindex(B, "abdc->abcd");
            rep.add("second-derivative-trace", relative_residual(l, B), kDefaultTolerance);
        };
        t["ricci-action-annihilated"] = [](const IdentityInputs& in, Report& rep) {
            const Tensor P = ricci_action(in.jet.R);
            rep.add("ricci-action-annihilated", ratio(apply_tableau(P, kSquare).norm(), P.norm()), kDefaultTolerance);
        };
        t["metric-slot-trace-3"] = [](const IdentityInputs& in, Report& rep) {
            const Tensor& W = in.weyl;
            const Tensor A = reindex(outer(metric(W.space()), W), "afcbed->abcdef");
            const Tensor l = metric_trace(apply_tableau(A, kSquare), 0, 2);
            const Tensor r = 3.0 * (reindex(W, "dbca->abcd") + reindex(W, "dacb->abcd"));
            rep.add("metric-slot-trace-3", relative_residual(l, r), kDefaultTolerance);
        };
        t["metric-slot-trace-6"] = [](const IdentityInputs& in, Report& rep) {
            const Tensor& W = in.weyl;
            const Tensor A = reindex(outer(metric(W.space()), W), "efabcd->abcdef");
            const Tensor l = metric_trace(apply_tableau(A, Tableau{{{0, 2, 4}, {1, 3}}}), 0, 2);
            const Tensor r = 6.0 * (reindex(W, "dbca->abcd") + reindex(W, "dacb->abcd"));
            rep.add("metric-slot-trace-6", relative_residual(l, r), kDefaultTolerance);
        };
        t["metric-trace-2n-4"] = [](const IdentityInputs& in, Report& rep) {
            const Tensor& W = in.weyl;
            const int n = W.dim();
            const Tensor A = reindex(outer(metric(W.space()), W), "acebfd->abcdef");
            const Tensor l = metric_trace(apply_tableau(A, kSquare), 0, 2);
            const Tensor r = (2.0 * n - 4.0) * (reindex(W, "cadb->abcd") + reindex(W, "cbda->abcd"));
            rep.add("metric-trace-2n-4", relative_residual(l, r), kDefaultTolerance);
        };
        t["kulkarni-constant"] = [](const IdentityInputs& in, Report& rep) {
            const TwoJet& j = in.jet;
            // d2R of a jet is not in C_2; its Young image rescaled is.
            const Tensor members[] = {j.R, j.dR, young_apply(j.d2R, 2) / young_factor(2)};
            double worst = 0.0;
            double factorial = 1.0;
            for (int k = 0; k <= 2; ++k) {
                factorial *= (k + 2);
                const Tensor l = young_apply(members[k], k);
                const Tensor r = -2.0 * factorial * kulkarni(sym_jacobi(members[k], k));
                worst = std::max(worst, relative_residual(l, r));
            }
            rep.add("kulkarni-constant", worst, kDefaultTolerance);
            const Tensor g = metric(j.R.space());
            const Tensor l = young_apply(outer(g, j.R), 2);
            const Tensor r = -48.0 * kulkarni(odot_g(sym_jacobi(j.R, 0)));
            rep.add("kulkarni-constant-metric", relative_residual(l, r), kDefaultTolerance);
        };
        t["associated-ricci-difference"] = [](const IdentityInputs& in, Report& rep) {
            const TwoJet& j = in.jet;
            const Tensor RR = star_action(j.R, j.R);
            const Tensor P = ricci_action(j.R);
            const Tensor diff = tilde_ops(j).tilde_hess_ric - 80.0 * hess_ric(j.d2R);
            const Tensor literal = -80.0 * P + 2.0 * swap_pair_sum(-1.0 * RR + 2.0 * P);
            rep.add("associated-ricci-difference", relative_residual(diff, literal), kDefaultTolerance);
            const Tensor corrected = -40.0 * P - 2.0 * swap_pair_sum(RR) - 12.0 * swap_pair_sum(P);
            rep.add("associated-ricci-difference-corrected", relative_residual(diff, corrected), kDefaultTolerance);
        };
        t["hat-ricci-trace"] = [](const IdentityInputs& in, Report& rep) {
            const Tensor& W = in.weyl;
            const int n = W.dim();
            const Tensor l = -metric_trace(hat_embed(W), 2, 4);
            Tensor r = reindex(W, "acbd->abcd");
            r = r + reindex(r, "abdc->abcd");
            rep.add("hat-ricci-trace", relative_residual(l, -4.0 * (n + 4) * r), kDefaultTolerance);
        };
        t["hat-rough-laplacian"] = [](const IdentityInputs& in, Report& rep) {
            const Tensor& W = in.weyl;
            const int n = W.dim();
            const Tensor l = -metric_trace(hat_embed(W), 0, 1);
            rep.add("hat-rough-laplacian", relative_residual(l, -24.0 * (n + 4) * W), kDefaultTolerance);
        };
        return t;
    }();
    return table;
}

}  // namespace

std::vector<std::string> identity_names() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : registry()) names.push_back(name);
    return names;
}

Report verify_identity(const std::string& name, const JetSpace& js, const TwoJet& jet, std::uint64_t seed) {
    const auto it = registry().find(name);
    if (it == registry().end()) throw InvalidArgument("unknown identity '" + name + "'");
    const IdentityInputs in{jet, js.weyl_basis().random_element(derive_seed(seed, 7))};
    Report rep;
    it->second(in, rep);
    return rep;
}

Report verify_identity(const std::string& name, const JetSpace& js, std::uint64_t seed) {
    if (registry().find(name) == registry().end()) throw InvalidArgument("unknown identity '" + name + "'");
    return verify_identity(name, js, random_two_jet(js, seed), seed);
}

Report star_lemma_check(const Tensor& R, const Tensor& Rp, double tol) {
    Report rep;
    const Tensor RRp = star_action(R, Rp);
    const Tensor six = six_term(R, Rp);
    rep.add("six-term", relative_residual(RRp, six), tol);

    const Tensor F = first_slot_action(R, Rp);
    const Tensor P = ricci_action(Rp, ricci(R).ric);
    rep.add("jacobi-form", relative_residual(jacobi_quadratic(RRp), jacobi_quadratic(-2.0 * P - 4.0 * F)), tol);

    rep.add("ricci-form", ricci_of_star(R, Rp).residual, tol);
    const Tensor rs = star_action(R, ricci(Rp).ric);
    rep.add("scalar-form", ratio(std::abs(metric_trace(rs, 0, 1)[0]), rs.norm()), tol);

    const Tensor sym = 0.5 * (RRp + star_action(Rp, R));
    rep.add("six-term-polarized", relative_residual(sym, 0.5 * (six + six_term(Rp, R))), tol);
    rep.add("six-term-projected", relative_residual(RRp, young_apply(six, 0) / young_factor(0)), tol);
    return rep;
}

}  // namespace curvjet
