#include "curvjet/young.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "curvjet/error.hpp"

namespace curvjet {

namespace {

Tensor column_difference(const Tensor& t, const Tableau& tab) {
    Tensor out = t;
    const std::size_t ncols = tab.rows.empty() ? 0 : tab.rows.front().size();
    for (std::size_t c = 0; c < ncols; ++c) {
        std::vector<int> col;
        for (const auto& row : tab.rows) {
            if (row.size() > c) col.push_back(row[c]);
        }
        if (col.size() == 2) {
            out = out - swap_slots(out, col[0], col[1]);
        } else if (col.size() > 2) {
            throw Unsupported("columns longer than two are not implemented");
        }
    }
    return out;
}

Tensor row_sum(const Tensor& t, const Tableau& tab) {
    Tensor out = t;
    for (const auto& row : tab.rows) {
        if (row.size() > 1) out = symmetric_sum(out, row);
    }
    return out;
}

}  // namespace

double curvature_defect(const Tensor& t, int s) {
    const double ref = t.norm();
    std::vector<int> pair(static_cast<std::size_t>(t.valence()));
    std::iota(pair.begin(), pair.end(), 0);
    std::swap(pair[static_cast<std::size_t>(s)], pair[static_cast<std::size_t>(s + 2)]);
    std::swap(pair[static_cast<std::size_t>(s + 1)], pair[static_cast<std::size_t>(s + 3)]);
    double d = relative_norm(t + swap_slots(t, s, s + 1), ref);
    d = std::max(d, relative_norm(t + swap_slots(t, s + 2, s + 3), ref));
    d = std::max(d, relative_norm(t - permute(t, pair), ref));
    d = std::max(d, relative_norm(cyclic_sum(t, s, s + 1, s + 2), ref));
    return d;
}

double cyclic_defect(const Tensor& t, int s) {
    return relative_norm(cyclic_sum(t, s, s + 1, s + 2), t.norm());
}

Tensor apply_tableau(const Tensor& t, const Tableau& tableau, TableauOrder order) {
    for (const auto& row : tableau.rows) {
        for (int s : row) {
            if (s < 0 || s >= t.valence()) throw InvalidArgument("tableau slot out of range");
        }
    }
    if (order == TableauOrder::RowsThenColumns) return column_difference(row_sum(t, tableau), tableau);
    return row_sum(column_difference(t, tableau), tableau);
}

Tableau curvature_tableau(int k) {
    if (k < 0) throw InvalidArgument("negative derivative order");
    Tableau tab;
    std::vector<int> first{0, 2};
    for (int i = 0; i < k; ++i) first.push_back(4 + i);
    tab.rows = {first, {1, 3}};
    return tab;
}

Tensor jet_to_label_order(const Tensor& t, int k) {
    std::vector<int> perm(static_cast<std::size_t>(t.valence()));
    for (int s = 0; s < k; ++s) perm[static_cast<std::size_t>(s)] = 4 + s;
    for (int s = 0; s < 4; ++s) perm[static_cast<std::size_t>(k + s)] = s;
    return permute(t, perm);
}

Tensor label_to_jet_order(const Tensor& t, int k) {
    std::vector<int> perm(static_cast<std::size_t>(t.valence()));
    for (int s = 0; s < 4; ++s) perm[static_cast<std::size_t>(s)] = k + s;
    for (int s = 0; s < k; ++s) perm[static_cast<std::size_t>(4 + s)] = s;
    return permute(t, perm);
}

Tensor young_apply(const Tensor& t, int k, TableauOrder order) {
    if (k < 0 || t.valence() != k + 4) throw InvalidArgument("young_apply needs valence k+4");
    if (k == 0) return apply_tableau(t, curvature_tableau(0), order);
    return label_to_jet_order(apply_tableau(jet_to_label_order(t, k), curvature_tableau(k), order), k);
}

double young_factor(int k) {
    double f = 2.0 * (k + 3) * (k + 2);
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

Tensor project_Ck(const Tensor& t, int k) { return young_apply(t, k) / young_factor(k); }

Tensor random_Ck(const Space& space, int k, std::uint64_t seed) {
    return project_Ck(random_tensor(space, k + 4, seed), k);
}

double Ck_defect(const Tensor& t, int k) {
    if (k < 0 || k > 2) throw Unsupported("membership test is implemented for k = 0, 1, 2");
    if (t.valence() != k + 4) throw InvalidArgument("membership test needs valence k+4");
    if (t.is_zero()) return 0.0;
    switch (k) {
        case 0:
            return curvature_defect(t, 0);
        case 1:
            return std::max(curvature_defect(t, 1), cyclic_defect(t, 0));
        default: {
            double d = relative_norm(t - swap_slots(t, 0, 1), t.norm());
            d = std::max(d, curvature_defect(t, 2));
            return std::max(d, cyclic_defect(t, 1));
        }
    }
}

bool is_member_Ck(const Tensor& t, int k, double tol) { return Ck_defect(t, k) < tol; }

Basis::Basis(Space space, int valence, Eigen::MatrixXd columns)
    : space_(std::move(space)), valence_(valence), columns_(std::move(columns)) {}

Tensor Basis::element(int i) const {
    const auto col = columns_.col(i);
    return Tensor(space_, valence_, std::vector<double>(col.data(), col.data() + col.size()));
}

Tensor Basis::combine(const Eigen::VectorXd& coeffs) const {
    const Eigen::VectorXd v = columns_ * coeffs;
    return Tensor(space_, valence_, std::vector<double>(v.data(), v.data() + v.size()));
}

Eigen::VectorXd Basis::coordinates(const Tensor& t) const {
    const Eigen::Map<const Eigen::VectorXd> v(t.data().data(), static_cast<Eigen::Index>(t.size()));
    return columns_.transpose() * v;
}

Tensor Basis::random_element(std::uint64_t seed) const {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    Eigen::VectorXd c(size());
    for (int i = 0; i < size(); ++i) c(i) = dist(gen);
    return combine(c);
}

int Svd::rank(double cutoff) const {
    if (S.size() == 0 || S(0) == 0.0) return 0;
    return static_cast<int>((S.array() > cutoff * S(0)).count());
}

Svd svd(const Eigen::MatrixXd& m, bool want_u, bool want_v, bool full_v) {
    unsigned int options = 0;
    if (want_u) options |= Eigen::ComputeThinU;
    if (want_v) options |= full_v ? Eigen::ComputeFullV : Eigen::ComputeThinV;
    const auto finite = [](const Svd& r) {
        return r.S.allFinite() && r.U.allFinite() && r.V.allFinite();
    };
    const auto unpack = [&](const auto& dec) {
        Svd r;
        r.S = dec.singularValues();
        if (want_u) r.U = dec.matrixU();
        if (want_v) r.V = dec.matrixV();
        return r;
    };
    Svd r = unpack(Eigen::BDCSVD<Eigen::MatrixXd>(m, options));
    if (finite(r)) return r;
    return unpack(Eigen::JacobiSVD<Eigen::MatrixXd>(m, options));
}

int numeric_rank(const Eigen::MatrixXd& m, double cutoff) {
    if (m.size() == 0) return 0;
    return svd(m, false, false).rank(cutoff);
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double cutoff) {
    const Svd d = svd(m, false, true, true);
    return d.V.rightCols(m.cols() - d.rank(cutoff));
}

Basis orthonormal_span(const std::vector<Tensor>& family, double cutoff) {
    if (family.empty()) throw InvalidArgument("empty generating family");
    const auto rows = static_cast<Eigen::Index>(family.front().size());
    Eigen::MatrixXd m(rows, static_cast<Eigen::Index>(family.size()));
    for (std::size_t i = 0; i < family.size(); ++i) {
        m.col(static_cast<Eigen::Index>(i)) =
            Eigen::Map<const Eigen::VectorXd>(family[i].data().data(), rows);
    }
    const Svd d = svd(m, true, false);
    return Basis(family.front().space(), family.front().valence(), d.U.leftCols(d.rank(cutoff)));
}

Basis basis_Ck(const Space& space, int k, std::uint64_t seed) {
    if (k < 0 || k > 2) throw Unsupported("basis extraction is implemented for k = 0, 1, 2");
    double entries = 1.0;
    for (int i = 0; i < k + 4; ++i) entries *= space.dim();
    if (entries > 1e5) throw ResourceLimit("C_k basis would need more than 1e5 coefficients per tensor");

    // Gram-Schmidt with reorthogonalization over projected random tensors;
    // stops once a run of candidates adds nothing new.
    const auto rows = static_cast<Eigen::Index>(entries);
    std::vector<Eigen::VectorXd> cols;
    int misses = 0;
    std::uint64_t s = seed;
    while (misses < 8) {
        const Tensor t = project_Ck(random_tensor(space, k + 4, s++), k);
        Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(t.data().data(), rows);
        const double original = v.norm();
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : cols) v -= q.dot(v) * q;
        }
        if (v.norm() > kRankCutoff * original) {
            cols.push_back(v / v.norm());
            misses = 0;
        } else {
            ++misses;
        }
    }
    Eigen::MatrixXd m(rows, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = cols[i];
    return Basis(space, k + 4, std::move(m));
}

}  // namespace curvjet
