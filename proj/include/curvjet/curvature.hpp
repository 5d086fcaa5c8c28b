#pragma once

#include "curvjet/tensor.hpp"

namespace curvjet {

// Tensor of valence m+2, symmetric in the first m slots and in the last two.
// Symmetry is enforced on construction by averaging.
class SymBiform {
public:
    SymBiform(Tensor t, int degree);

    int degree() const { return degree_; }
    const Tensor& tensor() const { return tensor_; }
    const Space& space() const { return tensor_.space(); }

private:
    Tensor tensor_;
    int degree_;
};

struct RicciData {
    Tensor ric;
    double scalar;
};

struct Decomposition {
    Tensor scalar_part;
    Tensor ricci_part;
    Tensor weyl;
};

// ric(x,y) = -sum_i sign_i R(x, e_i, y, e_i).
RicciData ricci(const Tensor& R);
Decomposition decompose(const Tensor& R);
Tensor weyl_part(const Tensor& R);

// h1(a,c)h2(b,d) - h1(b,c)h2(a,d) - h1(a,d)h2(b,c) + h1(b,d)h2(a,c)
Tensor kulkarni(const Tensor& h1, const Tensor& h2);
// Four-term product on a SymBiform of degree k+2; output in jet order [x_1..x_k, a, b, c, d].
Tensor kulkarni(const SymBiform& h);

// E[x,y,a,b] = (R_{x,y} e_b)^a, so that g(R_{x,y} z, w) = R(x,y,z,w).
Tensor curvature_endomorphisms(const Tensor& R);
// The single endomorphism R_{x,y} as a valence-2 array B[a,b] = (B e_b)^a.
Tensor endomorphism(const Tensor& E, int x, int y);

// B.A = -sum_i A(..., B x_i, ...); B must be skew for the metric.
Tensor skew_action(const Tensor& B, const Tensor& A);
// Same without the skewness check, for internal use on trusted inputs.
Tensor derivation(const Tensor& B, const Tensor& A);

// R*A = -sum_i sum_j R_{x_i, e_j} . A(..., e_j at i, ...)
Tensor star_action(const Tensor& R, const Tensor& A);

struct RicciOfStar {
    Tensor lhs;  // sum_i R*R'(x, e_i, y, e_i)
    Tensor rhs;  // -R*ric'(x, y)
    double residual;
};
RicciOfStar ricci_of_star(const Tensor& R, const Tensor& Rp);

// P[a,b,c,d] = (R_{a,b} . ric)(c,d) with ric the Ricci tensor of R unless given.
Tensor ricci_action(const Tensor& R, const Tensor& ric);
Tensor ricci_action(const Tensor& R);

// F[x,b,c,d] = sum_i sign_i (R_{x,e_i} . A)(e_i, b, c, d) for a valence-4 A.
Tensor first_slot_action(const Tensor& R, const Tensor& A);

// delta_x R(y,z) = -sum_i sign_i dR(e_i; e_i, x, y, z), stored [x,y,z].
Tensor divergence(const Tensor& dR);
// nabla_x ric(a,b) = -sum_i sign_i dR(x; a, e_i, b, e_i), stored [x,a,b].
Tensor derivative_of_ricci(const Tensor& dR);
// d ric(x,y,z) = nabla_x ric(y,z) - nabla_y ric(x,z).
Tensor exterior_derivative_of_ricci(const Tensor& dR);

// Averaging symmetrization over the m symmetric slots plus one of the last two.
Tensor Nk_defect_tensor(const SymBiform& h);
bool is_member_Nk(const SymBiform& h, double tol);

// Unit round sphere candidates: R = -g^g/2 (sectional curvature +1) and R = g^g.
struct SphereNormalization {
    double unit_sectional_eigenvalue;
    double kulkarni_square_eigenvalue;
    int dim;
};
SphereNormalization sphere_one_form_eigenvalues(const Space& space);

}  // namespace curvjet
