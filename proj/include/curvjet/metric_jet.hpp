#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "curvjet/tensor.hpp"
#include "curvjet/twojet.hpp"

namespace curvjet {

// Exponent vectors of all monomials in `vars` variables up to total degree `degree`,
// ordered by total degree so that lower-degree truncations are prefixes.
class MonomialTable {
public:
    MonomialTable(int vars, int degree);

    int vars() const { return vars_; }
    int degree() const { return degree_; }
    int size() const { return static_cast<int>(exponents_.size()); }
    // Number of monomials of total degree <= d.
    int count_upto(int d) const { return count_upto_[static_cast<std::size_t>(d)]; }
    int total_degree(int i) const { return total_[static_cast<std::size_t>(i)]; }
    std::span<const int> exponents(int i) const;
    // -1 when absent or above the table degree.
    int index_of(std::span<const int> exps) const;
    int product(int i, int j) const { return product_[static_cast<std::size_t>(i * size() + j)]; }
    // d/dx_var of monomial i is factor * monomial target, or target = -1.
    std::pair<int, int> derivative(int var, int i) const;

private:
    int vars_;
    int degree_;
    std::vector<std::vector<int>> exponents_;
    std::vector<int> total_;
    std::vector<int> count_upto_;
    std::vector<int> product_;
    std::vector<std::pair<int, int>> derivative_;
};

// Multivariate polynomial truncated at a total degree; arithmetic drops higher terms.
class TruncPoly {
public:
    TruncPoly(std::shared_ptr<const MonomialTable> table, int degree);

    static TruncPoly constant(std::shared_ptr<const MonomialTable> table, int degree, double value);
    static TruncPoly variable(std::shared_ptr<const MonomialTable> table, int degree, int var);

    int degree() const { return degree_; }
    const MonomialTable& table() const { return *table_; }
    const std::shared_ptr<const MonomialTable>& table_ptr() const { return table_; }
    std::span<const double> coefficients() const { return coeffs_; }
    std::span<double> coefficients() { return coeffs_; }

    double coefficient(std::span<const int> exps) const;
    void set_coefficient(std::span<const int> exps, double value);
    double value_at_origin() const { return coeffs_.front(); }

    TruncPoly derivative(int var) const;
    TruncPoly truncated(int degree) const;

    TruncPoly& operator+=(const TruncPoly& other);
    TruncPoly& operator-=(const TruncPoly& other);
    TruncPoly& operator*=(double s);
    friend TruncPoly operator+(TruncPoly a, const TruncPoly& b) { return a += b; }
    friend TruncPoly operator-(TruncPoly a, const TruncPoly& b) { return a -= b; }
    friend TruncPoly operator*(double s, TruncPoly a) { return a *= s; }
    // Product truncated at the smaller of the two degrees.
    friend TruncPoly operator*(const TruncPoly& a, const TruncPoly& b);

    bool operator==(const TruncPoly& other) const;

private:
    std::shared_ptr<const MonomialTable> table_;
    int degree_;
    std::vector<double> coeffs_;
};

// Metric germ with polynomial entries; g(0) is the signature matrix.
class PolyMetric {
public:
    PolyMetric(Space space, std::vector<TruncPoly> entries);

    const Space& space() const { return space_; }
    int degree() const { return entries_.front().degree(); }
    const TruncPoly& entry(int i, int j) const;
    const std::vector<TruncPoly>& entries() const { return entries_; }
    std::shared_ptr<const MonomialTable> table() const { return table_; }

    static PolyMetric flat(const Space& space, int degree = 4);

private:
    Space space_;
    std::shared_ptr<const MonomialTable> table_;
    std::vector<TruncPoly> entries_;
};

inline constexpr int kDefaultMetricDegree = 4;

// Gamma^k_ij stored at k*n*n + i*n + j, truncated at degree D-1.
std::vector<TruncPoly> christoffel(const PolyMetric& g);

// Curvature and its first two covariant derivatives at the origin.
TwoJet curvature_two_jet(const PolyMetric& g);

// g(u,v) = sign - R(u,xi,xi,v)/3 - dR(xi; u,xi,xi,v)/6 as a polynomial in xi.
PolyMetric seed_metric(const Tensor& R, const Tensor& dR, int degree = kDefaultMetricDegree);

// Signature matrix plus seeded normal coefficients of degree 1..degree scaled by `scale`.
PolyMetric random_polymetric(const Space& space, std::uint64_t seed, int degree = kDefaultMetricDegree,
                             double scale = 0.1);

// Conformally flat metric (1 + K r^2 / 4)^-2 * sign expanded to degree 4, r^2 = sum sign_i x_i^2.
PolyMetric constant_curvature_metric(const Space& space, double curvature);

}  // namespace curvjet
