#include <doctest.h>

#include "curvjet/curvature.hpp"
#include "curvjet/error.hpp"
#include "curvjet/young.hpp"
#include "oracles.hpp"

using namespace curvjet;

TEST_CASE("young factor") {
    CHECK(young_factor(0) == 12.0);
    CHECK(young_factor(1) == 24.0);
    CHECK(young_factor(2) == 80.0);
}

TEST_CASE("young operator at k = 0") {
    const Space s = Space::euclidean(3);
    CHECK(young_apply(Tensor(s, 4), 0).is_zero());
    const Tensor gg = oracle::kulkarni_square(s);
    CHECK(relative_residual(young_apply(gg, 0), 12.0 * gg) < 1e-15);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Tensor t = random_tensor(s, 4, seed);
        const Tensor y = young_apply(t, 0);
        CHECK(relative_residual(y, oracle::young0(t)) < 1e-14);
        CHECK(relative_residual(young_apply(y, 0), 12.0 * y) < 1e-13);
    }
    CHECK_THROWS_AS(young_apply(Tensor(s, 5), 0), InvalidArgument);
}

TEST_CASE("composition order is pinned by the eigenvalue on g^g") {
    for (const Space& s : {Space::euclidean(3), Space({1, -1, 1, 1})}) {
        const Tensor gg = oracle::kulkarni_square(s);
        CHECK(relative_residual(young_apply(gg, 0, kDefaultTableauOrder), 12.0 * gg) < 1e-15);
        // The other order is also available; it is quasi-idempotent with the same factor.
        const Tensor t = random_tensor(s, 4, 1);
        const Tensor y = young_apply(t, 0, TableauOrder::ColumnsThenRows);
        CHECK(relative_residual(young_apply(y, 0, TableauOrder::ColumnsThenRows), 12.0 * y) < 1e-13);
    }
}

TEST_CASE("eigenvalues on C_k") {
    for (int n : {3, 4}) {
        const Space s = Space::euclidean(n);
        for (int k = 0; k <= 2; ++k) {
            for (std::uint64_t seed = 0; seed < 5; ++seed) {
                const Tensor t = random_Ck(s, k, seed);
                CHECK(relative_residual(young_apply(t, k), young_factor(k) * t) < 1e-10);
            }
        }
    }
}

TEST_CASE("membership") {
    const Space s = Space::euclidean(3);
    CHECK(is_member_Ck(oracle::kulkarni_square(s), 0, 1e-10));
    for (std::uint64_t seed = 0; seed < 100; ++seed) CHECK_FALSE(is_member_Ck(random_tensor(s, 4, seed), 0, 1e-10));
    for (int k = 0; k <= 2; ++k) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const Tensor y = young_apply(random_tensor(s, k + 4, seed), k);
            CHECK(is_member_Ck(y, k, 1e-10));
            // Conversely members are fixed up to the factor.
            CHECK(relative_residual(young_apply(y, k), young_factor(k) * y) < 1e-10);
        }
    }
    // The defining conditions themselves, for k = 2: Sym^2 (x) C_0 and V* (x) C_1.
    const Tensor y2 = young_apply(random_tensor(s, 6, 3), 2);
    CHECK(relative_residual(swap_slots(y2, 0, 1), y2) < 1e-12);
    CHECK(curvature_defect(y2, 2) < 1e-12);
    CHECK(cyclic_defect(y2, 1) < 1e-12);
    CHECK_THROWS_AS(is_member_Ck(Tensor(s, 7), 3, 1e-9), Unsupported);
}

TEST_CASE("basis dimensions") {
    CHECK(basis_Ck(Space::euclidean(2), 0).size() == 1);
    CHECK(basis_Ck(Space::euclidean(3), 0).size() == 6);
    CHECK(basis_Ck(Space::euclidean(4), 0).size() == 20);
    CHECK(basis_Ck(Space({1, -1, 1, 1}), 0).size() == 20);
    // Hook-length dimensions of C_1 and C_2 at n = 3.
    CHECK(basis_Ck(Space::euclidean(3), 1).size() == 15);
    CHECK(basis_Ck(Space::euclidean(3), 2).size() == 27);
    const Basis b = basis_Ck(Space::euclidean(3), 1);
    for (int i = 0; i < b.size(); ++i) CHECK(is_member_Ck(b.element(i), 1, 1e-10));
    const Eigen::MatrixXd gram = b.matrix().transpose() * b.matrix();
    CHECK((gram - Eigen::MatrixXd::Identity(b.size(), b.size())).norm() < 1e-12);
    CHECK_THROWS_AS(basis_Ck(Space::euclidean(8), 2), ResourceLimit);
    CHECK_THROWS_AS(basis_Ck(Space::euclidean(3), 3), Unsupported);
}

TEST_CASE("basis coordinates round trip") {
    const Basis b = basis_Ck(Space::euclidean(3), 0);
    const Tensor t = b.random_element(5);
    CHECK(relative_residual(b.combine(b.coordinates(t)), t) < 1e-14);
}

TEST_CASE("general tableau on arbitrary valence") {
    const Space s = Space::euclidean(3);
    const Tableau square{{{0, 2}, {1, 3}}};
    const Tensor t = random_tensor(s, 4, 2);
    CHECK(relative_residual(apply_tableau(t, square), young_apply(t, 0)) < 1e-15);
    CHECK_THROWS_AS(apply_tableau(t, Tableau{{{0, 2}, {1, 4}}}), InvalidArgument);
}

TEST_CASE("svd helper and null space") {
    Eigen::MatrixXd m(3, 3);
    m << 1, 2, 3, 2, 4, 6, 1, 0, 1;
    CHECK(numeric_rank(m) == 2);
    const Eigen::MatrixXd ns = null_space(m);
    CHECK(ns.cols() == 1);
    CHECK((m * ns).norm() < 1e-12);
}
