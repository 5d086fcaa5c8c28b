#include <doctest.h>

#include "curvjet/curvature.hpp"
#include "curvjet/error.hpp"
#include "curvjet/jet.hpp"
#include "curvjet/suites.hpp"
#include "curvjet/young.hpp"
#include "oracles.hpp"

using namespace curvjet;

namespace {

// B[a,b] = sign_a A[a,b] with A antisymmetric is skew for the metric.
Tensor random_skew(const Space& s, std::uint64_t seed) {
    const Tensor r = random_tensor(s, 2, seed);
    const Tensor a = r - swap_slots(r, 0, 1);
    Tensor b(s, 2);
    for (int i = 0; i < s.dim(); ++i)
        for (int j = 0; j < s.dim(); ++j) b.at({i, j}) = s.sign(i) * a.at({i, j});
    return b;
}

const Space kSpaces[] = {Space::euclidean(3), Space::euclidean(4), Space({1, -1, 1, 1})};

}  // namespace

TEST_CASE("ricci") {
    const Space s = Space::euclidean(3);
    const RicciData zero = ricci(Tensor(s, 4));
    CHECK(zero.ric.is_zero());
    CHECK(zero.scalar == 0.0);
    const Tensor gg = oracle::kulkarni_square(s);
    const RicciData rd = ricci(gg);
    CHECK(relative_residual(rd.ric, -4.0 * metric(s)) < 1e-15);
    CHECK(rd.scalar == doctest::Approx(-12.0));
    for (const Space& sp : kSpaces) {
        const Tensor R = random_Ck(sp, 0, 3);
        CHECK(relative_residual(ricci(R).ric, oracle::ricci(R)) < 1e-14);
        CHECK(relative_norm(ricci(weyl_part(R)).ric, R.norm()) < 1e-10);
    }
}

TEST_CASE("kulkarni product") {
    for (const Space& s : kSpaces) {
        const Tensor g = metric(s);
        CHECK(relative_residual(kulkarni(g, g), oracle::kulkarni_square(s)) < 1e-15);
        CHECK(kulkarni(Tensor(s, 2), g).is_zero());
        for (int k = 0; k <= 2; ++k) {
            const SymBiform h(random_tensor(s, k + 4, static_cast<std::uint64_t>(k)), k + 2);
            CHECK(is_member_Ck(kulkarni(h), k, 1e-10));
        }
    }
}

TEST_CASE("Kulkarni map has trivial kernel on N_{k+2}") {
    for (int k = 0; k <= 2; ++k) {
        const KernelCheck kc = kulkarni_kernel_check(Space::euclidean(3), k, 1);
        CHECK(kc.n_dim > 0);
        CHECK(kc.rank == kc.n_dim);
    }
}

TEST_CASE("decomposition") {
    for (const Space& s : kSpaces) {
        const Tensor g = metric(s);
        const Decomposition d = decompose(kulkarni(g, g));
        CHECK(relative_norm(d.weyl, 1.0) < 1e-14);
        CHECK(relative_norm(d.ricci_part, 1.0) < 1e-14);
        CHECK(relative_residual(d.scalar_part, kulkarni(g, g)) < 1e-14);
        const Decomposition z = decompose(Tensor(s, 4));
        CHECK(z.scalar_part.is_zero());
        CHECK(z.weyl.is_zero());
        const Tensor R = random_Ck(s, 0, 7);
        const Decomposition p = decompose(R);
        CHECK(relative_residual(p.scalar_part + p.ricci_part + p.weyl, R) < 1e-10);
        CHECK(relative_norm(ricci(p.weyl).ric, R.norm()) < 1e-10);
        CHECK(relative_norm(metric_trace(ricci(p.ricci_part).ric, 0, 1), R.norm()) < 1e-10);
    }
    CHECK_THROWS_AS(decompose(Tensor(Space::euclidean(2), 4)), Unsupported);
}

TEST_CASE("derivation action") {
    for (const Space& s : kSpaces) {
        const Tensor g = metric(s);
        const Tensor B = random_skew(s, 1);
        CHECK(relative_norm(skew_action(B, g), B.norm()) < 1e-14);
        CHECK(relative_norm(skew_action(B, kulkarni(g, g)), B.norm()) < 1e-14);
        const Tensor a = random_tensor(s, 2, 2);
        const Tensor b = random_tensor(s, 1, 3);
        const Tensor lhs = skew_action(B, outer(a, b));
        const Tensor rhs = outer(skew_action(B, a), b) + outer(a, skew_action(B, b));
        CHECK(relative_residual(lhs, rhs) < 1e-14);
        CHECK_THROWS_AS(skew_action(random_tensor(s, 2, 4), g), InvalidArgument);
    }
}

TEST_CASE("curvature action R*A") {
    for (const Space& s : kSpaces) {
        const int n = s.dim();
        const Tensor R = random_Ck(s, 0, 11);
        const Tensor Rp = random_Ck(s, 0, 12);
        SUBCASE("on 1-forms it applies the Ricci endomorphism") {
            const Tensor alpha = random_tensor(s, 1, 13);
            const Tensor ric = oracle::ricci(R);
            Tensor expected(s, 1);
            for (int x = 0; x < n; ++x) {
                double v = 0.0;
                for (int j = 0; j < n; ++j) v += s.sign(j) * ric.at({x, j}) * alpha.at({j});
                expected.at({x}) = v;
            }
            CHECK(relative_residual(star_action(R, alpha), expected) < 1e-13);
        }
        SUBCASE("R*ric' is trace free") {
            const Tensor rs = star_action(R, ricci(Rp).ric);
            CHECK(std::abs(metric_trace(rs, 0, 1)[0]) < 1e-12 * rs.norm());
        }
        SUBCASE("preserves symmetries of A") { CHECK(is_member_Ck(star_action(R, Rp), 0, 1e-10)); }
        SUBCASE("vanishes on constant curvature") {
            const Tensor gg = kulkarni(metric(s), metric(s));
            CHECK(relative_norm(star_action(gg, gg), 1.0) < 1e-13);
            CHECK(relative_norm(star_action(R, gg), R.norm()) < 1e-13);
        }
        SUBCASE("Ricci of R*R'") {
            for (std::uint64_t seed = 0; seed < 100; ++seed) {
                const RicciOfStar r = ricci_of_star(random_Ck(s, 0, 100 + seed), random_Ck(s, 0, 300 + seed));
                CHECK(r.residual < 1e-10);
            }
            const RicciOfStar flat = ricci_of_star(R, weyl_part(Rp));
            CHECK(relative_norm(flat.lhs, R.norm() * Rp.norm()) < 1e-10);
            const RicciOfStar zero = ricci_of_star(Tensor(s, 4), Rp);
            CHECK(zero.lhs.is_zero());
            CHECK(zero.residual == 0.0);
        }
        SUBCASE("respects the Ricci-flat part and kills the scalar part") {
            const Tensor W = weyl_part(Rp);
            CHECK(relative_norm(ricci(star_action(R, W)).ric, R.norm() * W.norm()) < 1e-10);
            CHECK(std::abs(ricci(star_action(R, Rp)).scalar) < 1e-10 * R.norm() * Rp.norm());
        }
    }
}

TEST_CASE("tableau operator annihilates R.ric") {
    const Tableau square{{{0, 2}, {1, 3}}};
    for (const Space& s : kSpaces) {
        const Tensor P = ricci_action(random_Ck(s, 0, 5));
        CHECK(relative_norm(apply_tableau(P, square), P.norm()) < 1e-10);
    }
}

TEST_CASE("divergence and the contracted second Bianchi identity") {
    for (const Space& s : kSpaces) {
        CHECK(divergence(Tensor(s, 5)).is_zero());
        const Tensor dR = random_Ck(s, 1, 9);
        // delta_z R(x, y) = d ric(x, y, z); divergence is stored [z, x, y].
        const Tensor div = divergence(dR);
        const Tensor dric = exterior_derivative_of_ricci(dR);
        CHECK(relative_residual(reindex(div, "zxy->xyz"), dric) < 1e-10);
        CHECK_THROWS_AS(divergence(random_tensor(s, 5, 1)), InvalidArgument);
    }
    const JetSpace js(Space::euclidean(4));
    const Tensor tf = js.trace_free_C1().random_element(3);
    CHECK(relative_norm(derivative_of_ricci(tf), tf.norm()) < 1e-10);
    CHECK(relative_norm(divergence(tf), tf.norm()) < 1e-10);
}

TEST_CASE("N_k membership") {
    for (const Space& s : kSpaces) {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            CHECK(is_member_Nk(sym_jacobi(random_Ck(s, 0, seed), 0), 1e-10));
        }
        CHECK_FALSE(is_member_Nk(SymBiform(metric(s), 0), 1e-10));
        CHECK(is_member_Nk(SymBiform(Tensor(s, 4), 2), 1e-10));
    }
}

TEST_CASE("round sphere eigenvalue on 1-forms") {
    for (int n : {3, 4, 5}) {
        const SphereNormalization sn = sphere_one_form_eigenvalues(Space::euclidean(n));
        CHECK(sn.dim == n);
        CHECK(sn.unit_sectional_eigenvalue == doctest::Approx(n - 1));
        CHECK(sn.kulkarni_square_eigenvalue == doctest::Approx(-2.0 * (n - 1)));
        // Neither candidate normalization gives n.
        CHECK(sn.unit_sectional_eigenvalue != doctest::Approx(n));
        CHECK(sn.kulkarni_square_eigenvalue != doctest::Approx(n));
    }
}

TEST_CASE("R*R' identities") {
    const Space s = Space::euclidean(4);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Tensor R = random_Ck(s, 0, seed);
        const Tensor Rp = random_Ck(s, 0, 1000 + seed);
        const Report pair = star_lemma_check(R, Rp);
        CHECK(pair.find("ricci-form")->pass);
        CHECK(pair.find("scalar-form")->pass);
        CHECK(pair.find("six-term-polarized")->pass);
        CHECK(pair.find("six-term-projected")->pass);
        const Report self = star_lemma_check(R, R);
        CHECK(self.find("six-term")->pass);
        CHECK(self.find("jacobi-form")->pass);
    }
}
