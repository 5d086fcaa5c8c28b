#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "curvjet/curvature.hpp"
#include "curvjet/report.hpp"
#include "curvjet/tensor.hpp"
#include "curvjet/twojet.hpp"
#include "curvjet/young.hpp"

namespace curvjet {

inline constexpr double kDefaultTolerance = 1e-9;

// Ricci identity target: T[x,y,...] = E[x,y] . A for every basis pair.
Tensor curvature_action_on(const Tensor& R, const Tensor& A);

// Per-constraint residuals of an algebraic two-jet.
Report validate_two_jet(const TwoJet& jet, double tol);
Report validate_section_jet(const SectionTwoJet& jet, double tol);

// Minimum-norm least squares with the shared rank cutoff.
class LeastSquares {
public:
    explicit LeastSquares(Eigen::MatrixXd m, double cutoff = kRankCutoff);

    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
    int rank() const { return rank_; }
    int nullity() const { return static_cast<int>(m_.cols()) - rank_; }
    const Eigen::MatrixXd& matrix() const { return m_; }

private:
    Eigen::MatrixXd m_;
    Svd svd_;
    int rank_;
};

// Lazily built bases and solvers for one space. Safe to share between threads.
class JetSpace {
public:
    explicit JetSpace(Space space, std::uint64_t seed = 0x5eedULL);
    JetSpace(const JetSpace&) = delete;
    JetSpace& operator=(const JetSpace&) = delete;

    const Space& space() const { return space_; }

    const Basis& C0() const;
    const Basis& C1() const;
    const Basis& C2() const;
    const Basis& weyl_basis() const;
    // Elements of C_1 with vanishing derivative of Ricci.
    const Basis& trace_free_C1() const;
    // hess_ric restricted to C_2.
    const LeastSquares& hess_ric_solver() const;
    // Cyclic sum over slots 1,2,3 restricted to Sym^2 (x) C_0.
    const LeastSquares& bianchi_solver() const;
    // Spanning columns of Sym^2 (x) C_0 matching bianchi_solver.
    const Eigen::MatrixXd& sym2_C0() const;

private:
    Space space_;
    std::uint64_t seed_;
    mutable std::mutex mutex_;
    mutable std::optional<Basis> c0_, c1_, c2_, weyl_, tf_c1_;
    mutable std::unique_ptr<LeastSquares> hess_, bianchi_;
    mutable std::optional<Eigen::MatrixXd> sym2_;
};

TwoJet random_two_jet(const JetSpace& js, std::uint64_t seed);
// Section jet over the given background; R' drawn at random.
SectionTwoJet random_section_jet(const JetSpace& js, const Tensor& background, std::uint64_t seed);
// Section jet whose section is the background itself, with its own (R, dR, d2R).
SectionTwoJet section_from_jet(const TwoJet& jet);

struct OneJet {
    Tensor R;
    Tensor dR;
};
// lambda g^g + W with W Weyl and dR trace free; lambda drawn from N(0,1).
OneJet random_einstein_one_jet(const JetSpace& js, std::uint64_t seed);

struct JetTraces {
    Tensor hess_ric;  // [x,y,a,b] = -sum sign_i d2R(x,y; a,e_i,b,e_i)
    Tensor div_der;   // [x,a,b,c] = -sum sign_i d2R(x,e_i; e_i,a,b,c)
    Tensor rough;     // [a,b,c,d] = -sum sign_i d2R(e_i,e_i; a,b,c,d)
};
JetTraces jet_traces(const TwoJet& jet);
Tensor hess_ric(const Tensor& d2R);
Tensor div_der(const Tensor& d2R);
Tensor rough_laplacian(const Tensor& d2R);

// Averaged (xi_1..xi_k; x, xi_{k+1}, xi_{k+2}, y) of a jet-ordered D of valence k+4.
SymBiform sym_jacobi(const Tensor& D, int k);
SymBiform sym_jacobi(const TwoJet& jet, int k);
// Averaged h (x) g with g in the new symmetric slots.
SymBiform odot_g(const SymBiform& h);

struct TildeOps {
    Tensor tilde_hess_ric;  // [x5,x6,x2,x4]
    Tensor tilde_rough;     // [x1,x2,x3,x4]
};
TildeOps tilde_ops(const TwoJet& jet);

// Young operator for k = 2 applied to g(x5,x6) S(x1..x4).
Tensor hat_embed(const Tensor& S);

// F[a,b,c,d] at (x_tau5, x_sigma2, x_tau6, x_sigma4) summed over both swaps; output [x5,x6,x2,x4].
Tensor swap_pair_sum(const Tensor& F);

// Records: full (as literally stated), strict (Young projected), exact (pre-lemma form).
Report weitzenbock_check(const SectionTwoJet& jet, double tol = kDefaultTolerance);
// Records: special, and einstein-form when hess_ric vanishes.
Report weitzenbock_special(const TwoJet& jet, double tol = kDefaultTolerance);

struct EinsteinCheck {
    bool verdict_definition;
    bool verdict_tableau;
    bool verdict_odot;
    Report defects;
    bool agree() const { return verdict_definition == verdict_tableau && verdict_tableau == verdict_odot; }
};
EinsteinCheck einstein_check(const TwoJet& jet, double tol = kDefaultTolerance);

struct JacobiFit {
    double c;
    double residual;
    std::optional<double> main_residual;
};
JacobiFit fit_jacobi_relation(const TwoJet& jet, double tol = kDefaultTolerance);

struct Extension {
    TwoJet jet;
    int solution_dim;              // nullity of hess_ric on C_2
    double solve_residual;         // relative residual of the C_2 solve
    double hat_weyl_residual;      // best relative residual using hat_embed of Weyl tensors only
};
// Preconditions are checked at `tol`; violations throw InvalidArgument naming the constraint.
Extension einstein_extend(const JetSpace& js, const Tensor& R, const Tensor& dR, double tol = kDefaultTolerance);

// Named identities from the tableau calculus, evaluated on seeded random inputs.
std::vector<std::string> identity_names();
Report verify_identity(const std::string& name, const JetSpace& js, std::uint64_t seed);
Report verify_identity(const std::string& name, const JetSpace& js, const TwoJet& jet, std::uint64_t seed);

// Identities relating R*R' to first-slot actions and Ricci terms.
Report star_lemma_check(const Tensor& R, const Tensor& Rp, double tol = kDefaultTolerance);

}  // namespace curvjet
