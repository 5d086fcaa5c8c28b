#include "curvjet/curvature.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "curvjet/error.hpp"
#include "curvjet/young.hpp"

namespace curvjet {

namespace {

void require_valence(const Tensor& t, int v, const char* what) {
    if (t.valence() != v) throw InvalidArgument(std::string(what) + ": wrong valence");
}

// Symmetrize slots [0, m) and [m, m+2) by averaging.
Tensor symmetrize_biform(const Tensor& t, int m) {
    Tensor out = t;
    if (m > 1) {
        std::vector<int> lead(static_cast<std::size_t>(m));
        std::iota(lead.begin(), lead.end(), 0);
        out = symmetrize(out, lead);
    }
    return symmetrize(out, {m, m + 1});
}

}  // namespace

SymBiform::SymBiform(Tensor t, int degree) : tensor_(std::move(t)), degree_(degree) {
    if (degree < 0 || tensor_.valence() != degree + 2) {
        throw InvalidArgument("SymBiform needs valence degree + 2");
    }
    tensor_ = symmetrize_biform(tensor_, degree);
}

RicciData ricci(const Tensor& R) {
    require_valence(R, 4, "ricci");
    Tensor ric = -metric_trace(R, 1, 3);
    const double s = metric_trace(ric, 0, 1)[0];
    return {std::move(ric), s};
}

Decomposition decompose(const Tensor& R) {
    require_valence(R, 4, "decompose");
    const int n = R.dim();
    if (n <= 2) throw Unsupported("the Weyl decomposition needs dimension at least 3");
    const Tensor g = metric(R.space());
    const auto [ric, s] = ricci(R);
    const Tensor ric0 = ric - (s / n) * g;
    // Coefficients are negative because ric(g^g) = -2(n-1) g under the Ricci convention above.
    Tensor scalar_part = (-s / (2.0 * n * (n - 1))) * kulkarni(g, g);
    Tensor ricci_part = (-1.0 / (n - 2)) * kulkarni(g, ric0);
    Tensor weyl = R - scalar_part - ricci_part;
    return {std::move(scalar_part), std::move(ricci_part), std::move(weyl)};
}

Tensor weyl_part(const Tensor& R) { return decompose(R).weyl; }

Tensor kulkarni(const Tensor& h1, const Tensor& h2) {
    require_valence(h1, 2, "kulkarni");
    require_valence(h2, 2, "kulkarni");
    if (!(h1.space() == h2.space())) throw InvalidArgument("kulkarni: mismatched spaces");
    const int n = h1.dim();
    Tensor out(h1.space(), 4);
    std::size_t o = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    out[o++] = h1.at({a, c}) * h2.at({b, d}) - h1.at({b, c}) * h2.at({a, d}) -
                               h1.at({a, d}) * h2.at({b, c}) + h1.at({b, d}) * h2.at({a, c});
                }
    return out;
}

Tensor kulkarni(const SymBiform& h) {
    const int m = h.degree();
    if (m < 2) throw InvalidArgument("kulkarni needs a SymBiform of degree at least 2");
    const Tensor& t = h.tensor();
    const int v = m + 2;
    const int k = m - 2;
    // t is indexed [x_1..x_k, p, q, r, s]; output [x_1..x_k, a, b, c, d].
    // h(x,a,c;b,d) - h(x,b,c;a,d) - h(x,a,d;b,c) + h(x,b,d;a,c)
    auto term = [&](std::array<int, 4> where) {
        // where[i] = output slot (0..3 relative to k) receiving input slot k+i
        std::vector<int> perm(static_cast<std::size_t>(v));
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = 0; i < 4; ++i) perm[static_cast<std::size_t>(k + i)] = k + where[static_cast<std::size_t>(i)];
        return permute(t, perm);
    };
    constexpr int a = 0, b = 1, c = 2, d = 3;
    return term({a, c, b, d}) - term({b, c, a, d}) - term({a, d, b, c}) + term({b, d, a, c});
}

Tensor curvature_endomorphisms(const Tensor& R) {
    require_valence(R, 4, "curvature_endomorphisms");
    // E[x,y,a,b] = sign_a R(x,y,b,a)
    Tensor E = swap_slots(R, 2, 3);
    const int n = R.dim();
    std::size_t o = 0;
    for (std::size_t blk = 0; blk < E.size() / static_cast<std::size_t>(n * n); ++blk)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) E[o++] *= R.space().sign(a);
    return E;
}

Tensor endomorphism(const Tensor& E, int x, int y) {
    require_valence(E, 4, "endomorphism");
    const int n = E.dim();
    Tensor B(E.space(), 2);
    const std::size_t base = E.offset(std::vector<int>{x, y, 0, 0});
    for (std::size_t i = 0; i < static_cast<std::size_t>(n * n); ++i) B[i] = E[base + i];
    return B;
}

Tensor derivation(const Tensor& B, const Tensor& A) {
    const int n = A.dim();
    const int v = A.valence();
    Tensor out(A.space(), v);
    // (B.A)(..b at m..) = -sum_a B[a,b] A(..a at m..)
    for (int m = 0; m < v; ++m) {
        const std::size_t st = A.stride(m);
        for (std::size_t i = 0; i < A.size(); ++i) {
            const int b = static_cast<int>((i / st) % static_cast<std::size_t>(n));
            const std::size_t base = i - static_cast<std::size_t>(b) * st;
            double acc = 0.0;
            for (int a = 0; a < n; ++a) acc += B[static_cast<std::size_t>(a * n + b)] * A[base + static_cast<std::size_t>(a) * st];
            out[i] -= acc;
        }
    }
    return out;
}

Tensor skew_action(const Tensor& B, const Tensor& A) {
    require_valence(B, 2, "skew_action");
    if (!(B.space() == A.space())) throw InvalidArgument("skew_action: mismatched spaces");
    // Skew for g means sign_c B[c,b] = -sign_b B[b,c].
    const int n = B.dim();
    double defect = 0.0;
    for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
            defect = std::max(defect, std::abs(B.space().sign(c) * B.at({c, b}) + B.space().sign(b) * B.at({b, c})));
        }
    if (defect > 1e-10 * std::max(B.norm(), 1.0)) throw InvalidArgument("skew_action: endomorphism is not skew");
    return derivation(B, A);
}

Tensor star_action(const Tensor& R, const Tensor& A) {
    require_valence(R, 4, "star_action");
    if (!(R.space() == A.space())) throw InvalidArgument("star_action: mismatched spaces");
    const int n = R.dim();
    const int v = A.valence();
    const Tensor E = curvature_endomorphisms(R);
    Tensor out(A.space(), v);
    // R*A(x) = -sum_i sum_j sign_j (R_{x_i,e_j} . A)(x with e_j at slot i)
    for (int x = 0; x < n; ++x) {
        for (int j = 0; j < n; ++j) {
            const Tensor act = derivation(endomorphism(E, x, j), A);
            const double sj = R.space().sign(j);
            for (int i = 0; i < v; ++i) {
                const std::size_t st = A.stride(i);
                for (std::size_t o = 0; o < out.size(); ++o) {
                    if (static_cast<int>((o / st) % static_cast<std::size_t>(n)) != x) continue;
                    const std::size_t src = o - static_cast<std::size_t>(x) * st + static_cast<std::size_t>(j) * st;
                    out[o] -= sj * act[src];
                }
            }
        }
    }
    return out;
}

RicciOfStar ricci_of_star(const Tensor& R, const Tensor& Rp) {
    Tensor lhs = metric_trace(star_action(R, Rp), 1, 3);
    Tensor rhs = -star_action(R, ricci(Rp).ric);
    const double res = relative_residual(lhs, rhs);
    return {std::move(lhs), std::move(rhs), res};
}

Tensor ricci_action(const Tensor& R, const Tensor& ric) {
    const int n = R.dim();
    const Tensor E = curvature_endomorphisms(R);
    Tensor out(R.space(), 4);
    const std::size_t block = static_cast<std::size_t>(n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const Tensor act = derivation(endomorphism(E, a, b), ric);
            const std::size_t base = static_cast<std::size_t>(a * n + b) * block;
            for (std::size_t i = 0; i < block; ++i) out[base + i] = act[i];
        }
    return out;
}

Tensor ricci_action(const Tensor& R) { return ricci_action(R, ricci(R).ric); }

Tensor first_slot_action(const Tensor& R, const Tensor& A) {
    require_valence(A, 4, "first_slot_action");
    const int n = R.dim();
    const Tensor E = curvature_endomorphisms(R);
    Tensor out(R.space(), 4);
    const std::size_t block = static_cast<std::size_t>(n * n * n);
    for (int x = 0; x < n; ++x)
        for (int i = 0; i < n; ++i) {
            const Tensor act = derivation(endomorphism(E, x, i), A);
            const double si = R.space().sign(i);
            for (std::size_t r = 0; r < block; ++r) {
                out[static_cast<std::size_t>(x) * block + r] += si * act[static_cast<std::size_t>(i) * block + r];
            }
        }
    return out;
}

Tensor divergence(const Tensor& dR) {
    require_valence(dR, 5, "divergence");
    if (!dR.is_zero() && Ck_defect(dR, 1) > 1e-8) throw InvalidArgument("divergence needs dR in C_1");
    return -metric_trace(dR, 0, 1);
}

Tensor derivative_of_ricci(const Tensor& dR) {
    require_valence(dR, 5, "derivative_of_ricci");
    return -metric_trace(dR, 2, 4);
}

Tensor exterior_derivative_of_ricci(const Tensor& dR) {
    const Tensor nric = derivative_of_ricci(dR);
    return nric - swap_slots(nric, 0, 1);
}

Tensor Nk_defect_tensor(const SymBiform& h) {
    const int m = h.degree();
    std::vector<int> slots(static_cast<std::size_t>(m + 1));
    std::iota(slots.begin(), slots.end(), 0);
    return symmetrize(h.tensor(), slots);
}

bool is_member_Nk(const SymBiform& h, double tol) {
    return relative_norm(Nk_defect_tensor(h), h.tensor().norm()) < tol;
}

SphereNormalization sphere_one_form_eigenvalues(const Space& space) {
    const Tensor g = metric(space);
    const Tensor gg = kulkarni(g, g);
    // Any 1-form works; R*alpha is a multiple of alpha for a constant-curvature R.
    Tensor alpha(space, 1);
    alpha[0] = 1.0;
    auto eigen = [&](const Tensor& R) { return star_action(R, alpha)[0]; };
    return {eigen(-0.5 * gg), eigen(gg), space.dim()};
}

}  // namespace curvjet
