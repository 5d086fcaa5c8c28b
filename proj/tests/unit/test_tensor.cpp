#include <doctest.h>

#include <cmath>
#include <random>

#include "curvjet/curvature.hpp"
#include "curvjet/error.hpp"
#include "curvjet/tensor.hpp"
#include "oracles.hpp"

using namespace curvjet;

namespace {

std::vector<double> random_vector(int n, std::mt19937_64& gen) {
    std::normal_distribution<double> d;
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& x : v) x = d(gen);
    return v;
}

}  // namespace

TEST_CASE("space validation") {
    CHECK_THROWS_AS(Space({1}), InvalidArgument);
    CHECK_THROWS_AS(Space({1, 2}), InvalidArgument);
    CHECK(Space::euclidean(3).riemannian());
    CHECK_FALSE(Space({1, -1}).riemannian());
}

TEST_CASE("tensor shape checks") {
    const Space s = Space::euclidean(2);
    CHECK_THROWS_AS(Tensor(s, 2, {1.0, 2.0}), InvalidArgument);
    CHECK_THROWS_AS(Tensor(s, 1, {1.0, NAN}), InvalidArgument);
    CHECK_THROWS_AS(Tensor(s, 2) + Tensor(s, 3), InvalidArgument);
    const Tensor sc = scalar(s, 2.5);
    CHECK(sc.valence() == 0);
    CHECK(sc[0] == 2.5);
}

TEST_CASE("permute") {
    const Space s = Space::euclidean(2);
    const Tensor t(s, 2, {1.0, 2.0, 3.0, 4.0});
    SUBCASE("identity") { CHECK(relative_residual(permute(t, {0, 1}), t) == 0.0); }
    SUBCASE("swap twice") { CHECK(relative_residual(permute(permute(t, {1, 0}), {1, 0}), t) == 0.0); }
    SUBCASE("n=2 swap relabels [a,b,c,d] to [a,c,b,d]") {
        const Tensor p = permute(t, {1, 0});
        CHECK(p[0] == 1.0);
        CHECK(p[1] == 3.0);
        CHECK(p[2] == 2.0);
        CHECK(p[3] == 4.0);
    }
    SUBCASE("output slot perm[s] receives input slot s") {
        const Tensor r = random_tensor(Space::euclidean(3), 3, 4);
        const Tensor p = permute(r, {2, 0, 1});
        CHECK(p.at({1, 2, 0}) == r.at({0, 1, 2}));
        CHECK(p.at({2, 0, 1}) == r.at({1, 2, 0}));
    }
    CHECK_THROWS_AS(permute(t, {0}), InvalidArgument);
    CHECK_THROWS_AS(permute(t, {0, 0}), InvalidArgument);
}

TEST_CASE("reindex follows einsum letter semantics") {
    const Tensor r = random_tensor(Space::euclidean(3), 4, 11);
    const Tensor out = reindex(r, "acbd->abcd");
    for_each_index(3, 4, [&](std::span<const int> i) {
        CHECK(out.at({i[0], i[1], i[2], i[3]}) == r.at({i[0], i[2], i[1], i[3]}));
    });
    CHECK_THROWS_AS(reindex(r, "abc->abc"), InvalidArgument);
}

TEST_CASE("symmetrize") {
    const Space s = Space::euclidean(2);
    SUBCASE("hand example") {
        const Tensor t(s, 2, {0.0, 1.0, 0.0, 0.0});
        const Tensor sym = symmetrize(t, {0, 1});
        CHECK(sym[0] == 0.0);
        CHECK(sym[1] == 0.5);
        CHECK(sym[2] == 0.5);
        CHECK(sym[3] == 0.0);
    }
    SUBCASE("antisymmetric input vanishes") {
        const Tensor a(s, 2, {0.0, 1.0, -1.0, 0.0});
        CHECK(symmetrize(a, {0, 1}).is_zero());
    }
    SUBCASE("idempotent") {
        const Tensor r = random_tensor(Space::euclidean(3), 4, 2);
        const Tensor once = symmetrize(r, {0, 2, 3});
        CHECK(relative_residual(symmetrize(once, {0, 2, 3}), once) < 1e-15);
    }
    CHECK_THROWS_AS(symmetrize(Tensor(s, 2), {0, 2}), InvalidArgument);
    CHECK_THROWS_AS(symmetrize(Tensor(s, 2), std::initializer_list<int>{}), InvalidArgument);
}

TEST_CASE("metric trace") {
    for (const Space& s : {Space::euclidean(4), Space({1, -1, 1, 1})}) {
        const Tensor g = metric(s);
        CHECK(metric_trace(g, 0, 1)[0] == doctest::Approx(s.dim()));
        const Tensor r = random_tensor(s, 2, 3);
        CHECK(std::abs(metric_trace(r - swap_slots(r, 0, 1), 0, 1)[0]) < 1e-14);
        // g(a,c) g(b,d) traced over its first and third slots is n g.
        const Tensor gg = reindex(outer(g, g), "acbd->abcd");
        CHECK(relative_residual(metric_trace(gg, 0, 2), 4.0 * g) < 1e-15);
        CHECK(relative_residual(metric_trace(outer(g, g), 0, 1), 4.0 * g) < 1e-15);
        // Against the loop oracle.
        const Tensor t = random_tensor(s, 4, 5);
        for (auto [i, j] : {std::pair{0, 2}, std::pair{1, 3}, std::pair{0, 3}}) {
            CHECK(relative_residual(metric_trace(t, i, j), oracle::trace4(t, i, j)) < 1e-14);
        }
    }
    CHECK_THROWS_AS(metric_trace(Tensor(Space::euclidean(2), 1), 0, 0), InvalidArgument);
    CHECK_THROWS_AS(metric_trace(Tensor(Space::euclidean(2), 2), 0, 0), InvalidArgument);
}

TEST_CASE("metric trace commutes with permutations fixing the traced slots") {
    const Space s({1, -1, 1});
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Tensor t = random_tensor(s, 5, seed);
        // Swap slots 1 and 4 while tracing 0 and 2; in the result they sit at 0 and 2.
        const Tensor lhs = metric_trace(swap_slots(t, 1, 4), 0, 2);
        const Tensor rhs = swap_slots(metric_trace(t, 0, 2), 0, 2);
        CHECK(relative_residual(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("symmetric product") {
    const Space s = Space::euclidean(3);
    std::mt19937_64 gen(9);
    const Tensor a = symmetrize_all(random_tensor(s, 2, 1));
    const Tensor b = symmetrize_all(random_tensor(s, 1, 2));
    const Tensor c = symmetrize_all(random_tensor(s, 2, 3));
    CHECK(relative_residual(sym_product(scalar(s, 1.0), a), a) < 1e-15);
    CHECK(relative_residual(sym_product(a, b), sym_product(b, a)) < 1e-15);
    CHECK(relative_residual(sym_product(sym_product(a, b), c), sym_product(a, sym_product(b, c))) < 1e-12);
    const Tensor g = metric(s);
    const Tensor gg = sym_product(g, g);
    for (int trial = 0; trial < 20; ++trial) {
        const auto xi = random_vector(3, gen);
        const double q = oracle::gdot(s, xi, xi);
        CHECK(oracle::evaluate(gg, {xi, xi, xi, xi}) == doctest::Approx(q * q).epsilon(1e-12));
    }
    CHECK_THROWS_AS(sym_product(g, metric(Space::euclidean(2))), InvalidArgument);
}

TEST_CASE("random tensors are seeded") {
    const Space s = Space::euclidean(3);
    CHECK(relative_residual(random_tensor(s, 3, 42), random_tensor(s, 3, 42)) == 0.0);
    CHECK(relative_residual(random_tensor(s, 3, 42), random_tensor(s, 3, 43)) > 0.0);
    const Tensor sc = random_tensor(s, 0, 5);
    CHECK(sc.size() == 1);
    CHECK(std::isfinite(sc[0]));
    CHECK(derive_seed(1, 2) != derive_seed(2, 1));
}

TEST_CASE("polarization recovers a SymBiform from its diagonal") {
    // h(v_1..v_m; x, y) = 1/m! sum over subsets S of (-1)^(m-|S|) p(sum_S v)(x, y)
    const Space s = Space::euclidean(3);
    std::mt19937_64 gen(21);
    for (int m = 1; m <= 3; ++m) {
        const SymBiform h(random_tensor(s, m + 2, static_cast<std::uint64_t>(m)), m);
        auto diagonal = [&](const std::vector<double>& xi, const std::vector<double>& x, const std::vector<double>& y) {
            std::vector<std::vector<double>> vs(static_cast<std::size_t>(m), xi);
            vs.push_back(x);
            vs.push_back(y);
            return oracle::evaluate(h.tensor(), vs);
        };
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<std::vector<double>> v;
            for (int i = 0; i < m; ++i) v.push_back(random_vector(3, gen));
            const auto x = random_vector(3, gen);
            const auto y = random_vector(3, gen);
            double recovered = 0.0;
            double fact = 1.0;
            for (int i = 2; i <= m; ++i) fact *= i;
            for (int mask = 1; mask < (1 << m); ++mask) {
                std::vector<double> sum(3, 0.0);
                int size = 0;
                for (int i = 0; i < m; ++i) {
                    if (!(mask & (1 << i))) continue;
                    ++size;
                    for (int c = 0; c < 3; ++c) sum[static_cast<std::size_t>(c)] += v[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
                }
                recovered += ((m - size) % 2 == 0 ? 1.0 : -1.0) * diagonal(sum, x, y);
            }
            recovered /= fact;
            std::vector<std::vector<double>> direct = v;
            direct.push_back(x);
            direct.push_back(y);
            const double expected = oracle::evaluate(h.tensor(), direct);
            CHECK(std::abs(recovered - expected) <= 1e-9 * std::max(1.0, std::abs(expected)));
        }
    }
}

TEST_CASE("SymBiform averages on construction") {
    const Space s = Space::euclidean(3);
    const SymBiform h(random_tensor(s, 4, 8), 2);
    const Tensor& t = h.tensor();
    CHECK(relative_residual(swap_slots(t, 0, 1), t) < 1e-15);
    CHECK(relative_residual(swap_slots(t, 2, 3), t) < 1e-15);
    CHECK_THROWS_AS(SymBiform(random_tensor(s, 3, 1), 2), InvalidArgument);
}
