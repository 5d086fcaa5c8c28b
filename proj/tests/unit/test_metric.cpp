#include <doctest.h>

#include <cmath>
#include <vector>

#include "curvjet/curvature.hpp"
#include "curvjet/error.hpp"
#include "curvjet/jet.hpp"
#include "curvjet/metric_jet.hpp"
#include "curvjet/young.hpp"
#include "oracles.hpp"

using namespace curvjet;

namespace {

using Matrix = std::vector<std::vector<double>>;

// p(Q x), expanded monomial by monomial.
TruncPoly substitute(const TruncPoly& p, const Matrix& Q) {
    const auto& table = p.table_ptr();
    const int n = table->vars();
    const int D = p.degree();
    std::vector<TruncPoly> lin;
    for (int i = 0; i < n; ++i) {
        TruncPoly l(table, D);
        for (int j = 0; j < n; ++j)
            l += Q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * TruncPoly::variable(table, D, j);
        lin.push_back(l);
    }
    TruncPoly out(table, D);
    for (int m = 0; m < table->count_upto(D); ++m) {
        const double c = p.coefficients()[static_cast<std::size_t>(m)];
        if (c == 0.0) continue;
        TruncPoly term = TruncPoly::constant(table, D, c);
        const auto e = table->exponents(m);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k) term = term * lin[static_cast<std::size_t>(i)];
        out += term;
    }
    return out;
}

// Pullback of g under x -> Q x: Q^T g(Q x) Q.
PolyMetric pull_back(const PolyMetric& g, const Matrix& Q) {
    const int n = g.space().dim();
    std::vector<TruncPoly> entries;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            TruncPoly e(g.table(), g.degree());
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const double w = Q[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] *
                                     Q[static_cast<std::size_t>(j)][static_cast<std::size_t>(b)];
                    if (w != 0.0) e += w * substitute(g.entry(i, j), Q);
                }
            entries.push_back(e);
        }
    return PolyMetric(g.space(), std::move(entries));
}

Matrix rotation(double t) {
    const double c = std::cos(t), s = std::sin(t);
    // Rotation in the (0,1) plane followed by one in the (1,2) plane.
    const Matrix a{{c, -s, 0}, {s, c, 0}, {0, 0, 1}};
    const Matrix b{{1, 0, 0}, {0, c, -s}, {0, s, c}};
    Matrix q(3, std::vector<double>(3, 0.0));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                    a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] * b[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
    return q;
}

}  // namespace

TEST_CASE("truncated polynomials") {
    auto table = std::make_shared<const MonomialTable>(2, 3);
    CHECK(table->size() == 10);
    CHECK(table->count_upto(1) == 3);
    const TruncPoly x = TruncPoly::variable(table, 3, 0);
    const TruncPoly y = TruncPoly::variable(table, 3, 1);
    const TruncPoly p = (x + y) * (x + y) * (x + y) * (x + y);
    for (double c : p.coefficients()) CHECK(c == 0.0);
    const TruncPoly q = (x + y) * (x + y);
    CHECK(q.coefficient(std::vector<int>{1, 1}) == 2.0);
    CHECK(q.derivative(0).coefficient(std::vector<int>{0, 1}) == 2.0);
    CHECK_THROWS_AS(TruncPoly(table, 4), InvalidArgument);
}

TEST_CASE("Christoffel symbols") {
    const Space s2 = Space::euclidean(2);
    for (const TruncPoly& c : christoffel(PolyMetric::flat(s2)))
        for (double v : c.coefficients()) CHECK(v == 0.0);
    // g_00 = 1 + y: Gamma^0_01 = (1/2)/(1 + y) and Gamma^1_00 = -1/2.
    auto table = std::make_shared<const MonomialTable>(2, 4);
    const TruncPoly one = TruncPoly::constant(table, 4, 1.0);
    const TruncPoly y = TruncPoly::variable(table, 4, 1);
    const PolyMetric g(s2, {one + y, TruncPoly(table, 4), TruncPoly(table, 4), one});
    const std::vector<TruncPoly> gamma = christoffel(g);
    const int n = 2;
    const TruncPoly& g001 = gamma[static_cast<std::size_t>(0 * n * n + 0 * n + 1)];
    CHECK(g001.degree() == 3);
    for (int k = 0; k <= 3; ++k) {
        CHECK(g001.coefficient(std::vector<int>{0, k}) == doctest::Approx(0.5 * std::pow(-1.0, k)));
    }
    const TruncPoly& g100 = gamma[static_cast<std::size_t>(1 * n * n + 0 * n + 0)];
    CHECK(g100.value_at_origin() == doctest::Approx(-0.5));
    CHECK(g100.coefficient(std::vector<int>{0, 1}) == 0.0);
    // Symmetric in the lower indices.
    const std::vector<TruncPoly> r = christoffel(random_polymetric(Space::euclidean(3), 4));
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(r[static_cast<std::size_t>(k * 9 + i * 3 + j)] == r[static_cast<std::size_t>(k * 9 + j * 3 + i)]);
}

TEST_CASE("metric validation") {
    auto table = std::make_shared<const MonomialTable>(2, 4);
    const TruncPoly one = TruncPoly::constant(table, 4, 1.0);
    const TruncPoly x = TruncPoly::variable(table, 4, 0);
    const TruncPoly zero(table, 4);
    CHECK_THROWS_AS(PolyMetric(Space::euclidean(2), {one, x, zero, one}), InvalidArgument);
    CHECK_THROWS_AS(PolyMetric(Space::euclidean(2), {one, zero, zero, 2.0 * one}), InvalidArgument);
    CHECK_THROWS_AS(PolyMetric(Space::euclidean(2), {one, zero, one}), InvalidArgument);
}

TEST_CASE("curvature two-jet of model metrics") {
    for (const Space& s : {Space::euclidean(3), Space::euclidean(4), Space({1, -1, 1})}) {
        const TwoJet flat = curvature_two_jet(PolyMetric::flat(s));
        CHECK(flat.R.is_zero());
        CHECK(flat.dR.is_zero());
        CHECK(flat.d2R.is_zero());
        for (double K : {1.0, -0.5}) {
            const TwoJet j = curvature_two_jet(constant_curvature_metric(s, K));
            const Tensor expected = (-K / 2.0) * oracle::kulkarni_square(s);
            CHECK(relative_residual(j.R, expected) < 1e-12);
            CHECK(relative_norm(j.dR, 1.0) < 1e-12);
            CHECK(relative_norm(j.d2R, 1.0) < 1e-12);
        }
    }
    CHECK_THROWS_AS(curvature_two_jet(PolyMetric::flat(Space::euclidean(3), 3)), InvalidArgument);
}

TEST_CASE("jets of random metrics are valid") {
    for (const Space& s : {Space::euclidean(3), Space({1, -1, 1, 1})}) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const TwoJet j = curvature_two_jet(random_polymetric(s, seed));
            CHECK_MESSAGE(validate_two_jet(j, 1e-9).pass(), "seed " << seed);
        }
    }
}

TEST_CASE("seed metric reproduces its one-jet") {
    const Space s = Space::euclidean(3);
    const TwoJet z = curvature_two_jet(seed_metric(Tensor(s, 4), Tensor(s, 5)));
    CHECK(z.R.is_zero());
    CHECK(z.dR.is_zero());
    const JetSpace js(Space::euclidean(4));
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const TwoJet src = random_two_jet(js, seed);
        const TwoJet out = curvature_two_jet(seed_metric(src.R, src.dR));
        CHECK(relative_residual(out.R, src.R) < 1e-10);
        CHECK(relative_residual(out.dR, src.dR) < 1e-10);
        CHECK(validate_two_jet(out, 1e-9).pass());
    }
}

TEST_CASE("curvature jet is natural under rotations") {
    const PolyMetric g = random_polymetric(Space::euclidean(3), 11);
    const Matrix Q = rotation(0.7);
    const TwoJet a = curvature_two_jet(g);
    const TwoJet b = curvature_two_jet(pull_back(g, Q));
    CHECK(relative_residual(b.R, oracle::transform(a.R, Q)) < 1e-10);
    CHECK(relative_residual(b.dR, oracle::transform(a.dR, Q)) < 1e-10);
    CHECK(relative_residual(b.d2R, oracle::transform(a.d2R, Q)) < 1e-10);
}
