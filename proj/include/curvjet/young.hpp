#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "curvjet/tensor.hpp"

namespace curvjet {

enum class TableauOrder { RowsThenColumns, ColumnsThenRows };

// The shipped composition order; pinned by the eigenvalue 12 of g-wedge-g.
inline constexpr TableauOrder kDefaultTableauOrder = TableauOrder::RowsThenColumns;

// Rows of a Young tableau filled with 0-based slot numbers.
struct Tableau {
    std::vector<std::vector<int>> rows;
};

// Unnormalized signed symmetrizer: row sums and column differences.
Tensor apply_tableau(const Tensor& t, const Tableau& tableau,
                     TableauOrder order = kDefaultTableauOrder);

// Tableau with first row 1,3,5,...,k+4 and second row 2,4 (labels 1-based).
Tableau curvature_tableau(int k);

// Jet-ordered tensors keep the k derivative slots first: [d_1..d_k, x_1..x_4].
// The tableau labels refer to the order x_1..x_4, d_1..d_k.
Tensor jet_to_label_order(const Tensor& t, int k);
Tensor label_to_jet_order(const Tensor& t, int k);

Tensor young_apply(const Tensor& t, int k, TableauOrder order = kDefaultTableauOrder);
// 2(k+3)(k+2)k!
double young_factor(int k);

// Projection onto C_k (the normalized symmetrizer).
Tensor project_Ck(const Tensor& t, int k);
Tensor random_Ck(const Space& space, int k, std::uint64_t seed);

// Antisymmetry, pair symmetry and first Bianchi on slots s..s+3, relative to |t|.
double curvature_defect(const Tensor& t, int first_slot);
// Cyclic sum over slots s, s+1, s+2 relative to |t|.
double cyclic_defect(const Tensor& t, int first_slot);

// Largest violation of the defining linear conditions of C_k, relative to |t|.
double Ck_defect(const Tensor& t, int k);
bool is_member_Ck(const Tensor& t, int k, double tol);

// Orthonormal spanning set of a tensor subspace, stored column-wise.
class Basis {
public:
    Basis(Space space, int valence, Eigen::MatrixXd columns);

    const Space& space() const { return space_; }
    int valence() const { return valence_; }
    int size() const { return static_cast<int>(columns_.cols()); }
    const Eigen::MatrixXd& matrix() const { return columns_; }

    Tensor element(int i) const;
    Tensor combine(const Eigen::VectorXd& coeffs) const;
    Eigen::VectorXd coordinates(const Tensor& t) const;
    Tensor random_element(std::uint64_t seed) const;

private:
    Space space_;
    int valence_;
    Eigen::MatrixXd columns_;
};

// Singular values below cutoff * (largest) count as zero.
inline constexpr double kRankCutoff = 1e-8;

struct Svd {
    Eigen::MatrixXd U;  // thin
    Eigen::VectorXd S;
    Eigen::MatrixXd V;  // thin, or square when full_v
    int rank(double cutoff = kRankCutoff) const;
};
// Divide-and-conquer SVD, redone with one-sided Jacobi if the former returns non-finite values
// (Eigen 3.4.0 does on some rank-deficient inputs).
Svd svd(const Eigen::MatrixXd& m, bool want_u, bool want_v, bool full_v = false);

Basis orthonormal_span(const std::vector<Tensor>& family, double cutoff = kRankCutoff);
int numeric_rank(const Eigen::MatrixXd& m, double cutoff = kRankCutoff);
// Orthonormal basis of the null space of m, column-wise.
Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double cutoff = kRankCutoff);

// Columns of the matrix are the flattened images of the basis elements under f.
template <class F>
Eigen::MatrixXd matrix_of(const Basis& basis, F&& f) {
    Eigen::MatrixXd m;
    for (int i = 0; i < basis.size(); ++i) {
        const Tensor img = f(basis.element(i));
        if (i == 0) m.resize(static_cast<Eigen::Index>(img.size()), basis.size());
        m.col(i) = Eigen::Map<const Eigen::VectorXd>(img.data().data(), static_cast<Eigen::Index>(img.size()));
    }
    return m;
}

// Spanning set of C_k from a seeded generating family.
Basis basis_Ck(const Space& space, int k, std::uint64_t seed = 0x5eedULL);

}  // namespace curvjet
