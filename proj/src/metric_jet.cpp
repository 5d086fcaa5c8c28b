#include "curvjet/metric_jet.hpp"

#include <cmath>
#include <map>
#include <random>

#include "curvjet/error.hpp"

namespace curvjet {

namespace {

void enumerate(int vars, int total, std::vector<int>& cur, int pos, std::vector<std::vector<int>>& out) {
    if (pos == vars - 1) {
        cur[static_cast<std::size_t>(pos)] = total;
        out.push_back(cur);
        return;
    }
    for (int e = total; e >= 0; --e) {
        cur[static_cast<std::size_t>(pos)] = e;
        enumerate(vars, total - e, cur, pos + 1, out);
    }
}

std::size_t ipow(int base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
    return r;
}

// Tensor of truncated polynomials, layout [entry][monomial], all entries of one degree.
struct PolyTensor {
    const MonomialTable* table;
    int n;
    int valence;
    int degree;
    int width;
    std::vector<double> c;

    PolyTensor(const MonomialTable& t, int dim, int v, int deg)
        : table(&t), n(dim), valence(v), degree(deg), width(t.count_upto(deg)),
          c(ipow(dim, v) * static_cast<std::size_t>(t.count_upto(deg)), 0.0) {}

    std::size_t entries() const { return ipow(n, valence); }
    double* poly(std::size_t e) { return c.data() + e * static_cast<std::size_t>(width); }
    const double* poly(std::size_t e) const { return c.data() + e * static_cast<std::size_t>(width); }
    std::size_t stride(int slot) const { return ipow(n, valence - 1 - slot); }
};

// out += s * a * b, truncated at the degree of out.
void mul_add(const MonomialTable& t, double* out, int out_deg, const double* a, int a_deg, const double* b,
             int b_deg, double s) {
    const int na = t.count_upto(std::min(a_deg, out_deg));
    for (int i = 0; i < na; ++i) {
        const double ai = a[i];
        if (ai == 0.0) continue;
        const int room = std::min(out_deg - t.total_degree(i), b_deg);
        const int nb = t.count_upto(room);
        for (int j = 0; j < nb; ++j) {
            if (b[j] != 0.0) out[t.product(i, j)] += s * ai * b[j];
        }
    }
}

// Prepends a derivative slot: out[k, idx] = d/dx_k T[idx].
PolyTensor derivative(const PolyTensor& T) {
    PolyTensor out(*T.table, T.n, T.valence + 1, T.degree - 1);
    const std::size_t m = T.entries();
    for (int k = 0; k < T.n; ++k) {
        for (std::size_t e = 0; e < m; ++e) {
            const double* src = T.poly(e);
            double* dst = out.poly(static_cast<std::size_t>(k) * m + e);
            for (int i = 0; i < T.width; ++i) {
                const auto [target, factor] = T.table->derivative(k, i);
                if (target >= 0 && target < out.width) dst[target] += factor * src[i];
            }
        }
    }
    return out;
}

// nabla_m T(a_1..a_v) = d_m T(a) - sum_s Gamma^p_{m a_s} T(.. p at s ..), result [m, a_1..a_v].
PolyTensor covariant_derivative(const PolyTensor& T, const PolyTensor& gamma) {
    PolyTensor out = derivative(T);
    const int n = T.n;
    const MonomialTable& tab = *T.table;
    const std::size_t m_entries = T.entries();
    for (int m = 0; m < n; ++m) {
        for (std::size_t e = 0; e < m_entries; ++e) {
            double* dst = out.poly(static_cast<std::size_t>(m) * m_entries + e);
            for (int s = 0; s < T.valence; ++s) {
                const std::size_t st = T.stride(s);
                const int as = static_cast<int>((e / st) % static_cast<std::size_t>(n));
                const std::size_t base = e - static_cast<std::size_t>(as) * st;
                for (int p = 0; p < n; ++p) {
                    const double* gam = gamma.poly(static_cast<std::size_t>((p * n + m) * n + as));
                    mul_add(tab, dst, out.degree, gam, gamma.degree, T.poly(base + static_cast<std::size_t>(p) * st),
                            T.degree, -1.0);
                }
            }
        }
    }
    return out;
}

PolyTensor metric_tensor(const PolyMetric& g, int degree) {
    const int n = g.space().dim();
    PolyTensor out(*g.table(), n, 2, degree);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const auto c = g.entry(i, j).coefficients();
            std::copy(c.begin(), c.begin() + std::min<std::ptrdiff_t>(out.width, static_cast<std::ptrdiff_t>(c.size())),
                      out.poly(static_cast<std::size_t>(i * n + j)));
        }
    return out;
}

// Neumann series around the constant signature matrix; exact to the truncation degree.
PolyTensor inverse_metric_series(const PolyTensor& g, const Space& space) {
    const int n = g.n;
    const MonomialTable& tab = *g.table;
    // M = -G0^{-1} H, with H the non-constant part of g.
    PolyTensor M(tab, n, 2, g.degree);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double* src = g.poly(static_cast<std::size_t>(i * n + j));
            double* dst = M.poly(static_cast<std::size_t>(i * n + j));
            for (int q = 1; q < g.width; ++q) dst[q] = -space.sign(i) * src[q];
        }
    PolyTensor inv(tab, n, 2, g.degree);
    PolyTensor term(tab, n, 2, g.degree);
    for (int i = 0; i < n; ++i) {
        inv.poly(static_cast<std::size_t>(i * n + i))[0] = space.sign(i);
        term.poly(static_cast<std::size_t>(i * n + i))[0] = space.sign(i);
    }
    for (int it = 0; it < g.degree; ++it) {
        PolyTensor next(tab, n, 2, g.degree);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                for (int j = 0; j < n; ++j) {
                    mul_add(tab, next.poly(static_cast<std::size_t>(i * n + k)), g.degree,
                            M.poly(static_cast<std::size_t>(i * n + j)), g.degree,
                            term.poly(static_cast<std::size_t>(j * n + k)), g.degree, 1.0);
                }
        term = std::move(next);
        for (std::size_t q = 0; q < inv.c.size(); ++q) inv.c[q] += term.c[q];
    }
    return inv;
}

// Gamma^l_ij stored [l, i, j] at degree `degree`.
PolyTensor christoffel_tensor(const PolyMetric& g, int degree) {
    const int n = g.space().dim();
    const MonomialTable& tab = *g.table();
    const PolyTensor gt = metric_tensor(g, degree + 1);
    const PolyTensor inv = inverse_metric_series(gt, g.space());
    const PolyTensor dg = derivative(gt);  // dg[k,i,j] = d_k g_ij
    // Gamma_{kij} = (d_i g_jk + d_j g_ik - d_k g_ij) / 2
    PolyTensor low(tab, n, 3, degree);
    auto at = [n](int a, int b, int c) { return static_cast<std::size_t>((a * n + b) * n + c); };
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double* dst = low.poly(at(k, i, j));
                const double* a = dg.poly(at(i, j, k));
                const double* b = dg.poly(at(j, i, k));
                const double* c = dg.poly(at(k, i, j));
                for (int q = 0; q < low.width; ++q) dst[q] = 0.5 * (a[q] + b[q] - c[q]);
            }
    PolyTensor out(tab, n, 3, degree);
    for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    mul_add(tab, out.poly(at(l, i, j)), degree, inv.poly(static_cast<std::size_t>(l * n + k)),
                            inv.degree, low.poly(at(k, i, j)), degree, 1.0);
                }
    return out;
}

Tensor value_at_origin(const PolyTensor& T, const Space& space) {
    Tensor out(space, T.valence);
    for (std::size_t e = 0; e < T.entries(); ++e) out[e] = T.poly(e)[0];
    return out;
}

}  // namespace

MonomialTable::MonomialTable(int vars, int degree) : vars_(vars), degree_(degree) {
    if (vars < 1 || degree < 0) throw InvalidArgument("monomial table needs vars >= 1 and degree >= 0");
    std::vector<int> cur(static_cast<std::size_t>(vars), 0);
    for (int d = 0; d <= degree; ++d) {
        enumerate(vars, d, cur, 0, exponents_);
        count_upto_.push_back(static_cast<int>(exponents_.size()));
    }
    for (const auto& e : exponents_) {
        int t = 0;
        for (int x : e) t += x;
        total_.push_back(t);
    }
    const int m = size();
    std::map<std::vector<int>, int> lookup;
    for (int i = 0; i < m; ++i) lookup[exponents_[static_cast<std::size_t>(i)]] = i;
    product_.assign(static_cast<std::size_t>(m * m), -1);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (total_[static_cast<std::size_t>(i)] + total_[static_cast<std::size_t>(j)] > degree) continue;
            std::vector<int> e = exponents_[static_cast<std::size_t>(i)];
            for (int v = 0; v < vars; ++v) e[static_cast<std::size_t>(v)] += exponents_[static_cast<std::size_t>(j)][static_cast<std::size_t>(v)];
            product_[static_cast<std::size_t>(i * m + j)] = lookup.at(e);
        }
    derivative_.assign(static_cast<std::size_t>(vars * m), {-1, 0});
    for (int v = 0; v < vars; ++v)
        for (int i = 0; i < m; ++i) {
            std::vector<int> e = exponents_[static_cast<std::size_t>(i)];
            const int ev = e[static_cast<std::size_t>(v)];
            if (ev == 0) continue;
            e[static_cast<std::size_t>(v)] -= 1;
            derivative_[static_cast<std::size_t>(v * m + i)] = {lookup.at(e), ev};
        }
}

std::span<const int> MonomialTable::exponents(int i) const { return exponents_.at(static_cast<std::size_t>(i)); }

int MonomialTable::index_of(std::span<const int> exps) const {
    if (static_cast<int>(exps.size()) != vars_) throw InvalidArgument("exponent vector length differs from variable count");
    int t = 0;
    for (int e : exps) {
        if (e < 0) throw InvalidArgument("negative exponent");
        t += e;
    }
    if (t > degree_) return -1;
    for (int i = t == 0 ? 0 : count_upto(t - 1); i < count_upto(t); ++i) {
        const auto& e = exponents_[static_cast<std::size_t>(i)];
        if (std::equal(e.begin(), e.end(), exps.begin())) return i;
    }
    return -1;
}

std::pair<int, int> MonomialTable::derivative(int var, int i) const {
    return derivative_[static_cast<std::size_t>(var * size() + i)];
}

TruncPoly::TruncPoly(std::shared_ptr<const MonomialTable> table, int degree)
    : table_(std::move(table)), degree_(degree) {
    if (!table_) throw InvalidArgument("polynomial needs a monomial table");
    if (degree < 0 || degree > table_->degree()) throw InvalidArgument("polynomial degree outside the table range");
    coeffs_.assign(static_cast<std::size_t>(table_->count_upto(degree)), 0.0);
}

TruncPoly TruncPoly::constant(std::shared_ptr<const MonomialTable> table, int degree, double value) {
    TruncPoly p(std::move(table), degree);
    p.coeffs_[0] = value;
    return p;
}

TruncPoly TruncPoly::variable(std::shared_ptr<const MonomialTable> table, int degree, int var) {
    TruncPoly p(std::move(table), degree);
    if (var < 0 || var >= p.table_->vars()) throw InvalidArgument("variable index out of range");
    if (degree >= 1) p.coeffs_[static_cast<std::size_t>(1 + var)] = 1.0;
    return p;
}

double TruncPoly::coefficient(std::span<const int> exps) const {
    const int i = table_->index_of(exps);
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0.0;
    return coeffs_[static_cast<std::size_t>(i)];
}

void TruncPoly::set_coefficient(std::span<const int> exps, double value) {
    const int i = table_->index_of(exps);
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) throw InvalidArgument("monomial above the truncation degree");
    coeffs_[static_cast<std::size_t>(i)] = value;
}

TruncPoly TruncPoly::derivative(int var) const {
    if (var < 0 || var >= table_->vars()) throw InvalidArgument("variable index out of range");
    TruncPoly out(table_, std::max(degree_ - 1, 0));
    for (int i = 0; i < static_cast<int>(coeffs_.size()); ++i) {
        const auto [target, factor] = table_->derivative(var, i);
        if (target >= 0 && target < static_cast<int>(out.coeffs_.size())) {
            out.coeffs_[static_cast<std::size_t>(target)] += factor * coeffs_[static_cast<std::size_t>(i)];
        }
    }
    return out;
}

TruncPoly TruncPoly::truncated(int degree) const {
    TruncPoly out(table_, degree);
    const std::size_t m = std::min(out.coeffs_.size(), coeffs_.size());
    std::copy(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(m), out.coeffs_.begin());
    return out;
}

TruncPoly& TruncPoly::operator+=(const TruncPoly& other) {
    if (table_ != other.table_ || degree_ != other.degree_) throw InvalidArgument("polynomials differ in table or degree");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
}

TruncPoly& TruncPoly::operator-=(const TruncPoly& other) {
    if (table_ != other.table_ || degree_ != other.degree_) throw InvalidArgument("polynomials differ in table or degree");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
}

TruncPoly& TruncPoly::operator*=(double s) {
    for (double& c : coeffs_) c *= s;
    return *this;
}

TruncPoly operator*(const TruncPoly& a, const TruncPoly& b) {
    if (a.table_ != b.table_) throw InvalidArgument("polynomials use different monomial tables");
    TruncPoly out(a.table_, std::min(a.degree_, b.degree_));
    mul_add(*a.table_, out.coeffs_.data(), out.degree_, a.coeffs_.data(), a.degree_, b.coeffs_.data(), b.degree_, 1.0);
    return out;
}

bool TruncPoly::operator==(const TruncPoly& other) const {
    return degree_ == other.degree_ && coeffs_ == other.coeffs_;
}

PolyMetric::PolyMetric(Space space, std::vector<TruncPoly> entries)
    : space_(std::move(space)), entries_(std::move(entries)) {
    const int n = space_.dim();
    if (static_cast<int>(entries_.size()) != n * n) throw InvalidArgument("metric needs dim*dim entries");
    table_ = entries_.front().table_ptr();
    if (table_->vars() != n) throw InvalidArgument("metric polynomials must have one variable per dimension");
    for (const auto& p : entries_) {
        if (p.table_ptr() != table_ || p.degree() != entries_.front().degree()) {
            throw InvalidArgument("metric entries must share one monomial table and degree");
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const auto a = entry(i, j).coefficients();
            const auto b = entry(j, i).coefficients();
            for (std::size_t q = 0; q < a.size(); ++q) {
                if (std::abs(a[q] - b[q]) > 1e-12) throw InvalidArgument("metric entries must be symmetric");
            }
            const double expect = i == j ? space_.sign(i) : 0.0;
            if (std::abs(entry(i, j).value_at_origin() - expect) > 1e-12) {
                throw InvalidArgument("metric value at the origin must be the signature matrix");
            }
        }
}

const TruncPoly& PolyMetric::entry(int i, int j) const {
    const int n = space_.dim();
    return entries_.at(static_cast<std::size_t>(i * n + j));
}

PolyMetric PolyMetric::flat(const Space& space, int degree) {
    auto tab = std::make_shared<const MonomialTable>(space.dim(), degree);
    std::vector<TruncPoly> entries;
    for (int i = 0; i < space.dim(); ++i)
        for (int j = 0; j < space.dim(); ++j) entries.push_back(TruncPoly::constant(tab, degree, i == j ? space.sign(i) : 0.0));
    return PolyMetric(space, std::move(entries));
}

std::vector<TruncPoly> christoffel(const PolyMetric& g) {
    if (g.degree() < 1) throw InvalidArgument("christoffel symbols need a metric of degree at least 1");
    const int n = g.space().dim();
    const int deg = g.degree() - 1;
    const PolyTensor gam = christoffel_tensor(g, deg);
    std::vector<TruncPoly> out;
    for (std::size_t e = 0; e < ipow(n, 3); ++e) {
        TruncPoly p(g.table(), deg);
        std::copy(gam.poly(e), gam.poly(e) + gam.width, p.coefficients().begin());
        out.push_back(std::move(p));
    }
    return out;
}

TwoJet curvature_two_jet(const PolyMetric& g) {
    if (g.degree() < 4) throw InvalidArgument("the second covariant derivative at the origin needs metric degree >= 4");
    const int n = g.space().dim();
    const MonomialTable& tab = *g.table();
    // Degrees: Gamma 3, its derivative 2, R 2, nabla R 1, nabla^2 R 0.
    const PolyTensor gam = christoffel_tensor(g, 3);
    const PolyTensor dgam = derivative(gam);  // [a, l, i, j]
    PolyTensor rup(tab, n, 4, 2);             // R_{ijk}^p stored [i, j, k, p]
    auto at3 = [n](int a, int b, int c) { return static_cast<std::size_t>((a * n + b) * n + c); };
    auto at4 = [n](int a, int b, int c, int d) { return static_cast<std::size_t>(((a * n + b) * n + c) * n + d); };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int p = 0; p < n; ++p) {
                    double* dst = rup.poly(at4(i, j, k, p));
                    const double* a = dgam.poly(at4(i, p, j, k));
                    const double* b = dgam.poly(at4(j, p, i, k));
                    for (int q = 0; q < rup.width; ++q) dst[q] = a[q] - b[q];
                    for (int m = 0; m < n; ++m) {
                        mul_add(tab, dst, 2, gam.poly(at3(m, j, k)), 3, gam.poly(at3(p, i, m)), 3, 1.0);
                        mul_add(tab, dst, 2, gam.poly(at3(m, i, k)), 3, gam.poly(at3(p, j, m)), 3, -1.0);
                    }
                }
    const PolyTensor gt = metric_tensor(g, 2);
    PolyTensor rl(tab, n, 4, 2);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    for (int p = 0; p < n; ++p) {
                        mul_add(tab, rl.poly(at4(i, j, k, l)), 2, rup.poly(at4(i, j, k, p)), 2,
                                gt.poly(static_cast<std::size_t>(p * n + l)), 2, 1.0);
                    }
    const PolyTensor dr = covariant_derivative(rl, gam);
    const PolyTensor d2r = covariant_derivative(dr, gam);
    return {value_at_origin(rl, g.space()), value_at_origin(dr, g.space()), value_at_origin(d2r, g.space())};
}

PolyMetric seed_metric(const Tensor& R, const Tensor& dR, int degree) {
    if (R.valence() != 4 || dR.valence() != 5 || !(R.space() == dR.space())) {
        throw InvalidArgument("seed_metric needs R of valence 4 and dR of valence 5 over one space");
    }
    if (degree < 3) throw InvalidArgument("the seed metric has degree three");
    const Space& space = R.space();
    const int n = space.dim();
    auto tab = std::make_shared<const MonomialTable>(n, degree);
    std::vector<TruncPoly> entries(static_cast<std::size_t>(n * n), TruncPoly(tab, degree));
    std::vector<int> e(static_cast<std::size_t>(n));
    // Averaging over (u,v) and (v,u) keeps the entries exactly symmetric.
    for (int u = 0; u < n; ++u)
        for (int v = u; v < n; ++v) {
            TruncPoly p = TruncPoly::constant(tab, degree, u == v ? space.sign(u) : 0.0);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    std::fill(e.begin(), e.end(), 0);
                    ++e[static_cast<std::size_t>(a)];
                    ++e[static_cast<std::size_t>(b)];
                    const double r = 0.5 * (R.at({u, a, b, v}) + R.at({v, a, b, u}));
                    p.set_coefficient(e, p.coefficient(e) - r / 3.0);
                    for (int c = 0; c < n; ++c) {
                        ++e[static_cast<std::size_t>(c)];
                        const double d = 0.5 * (dR.at({c, u, a, b, v}) + dR.at({c, v, a, b, u}));
                        p.set_coefficient(e, p.coefficient(e) - d / 6.0);
                        --e[static_cast<std::size_t>(c)];
                    }
                }
            entries[static_cast<std::size_t>(u * n + v)] = p;
            entries[static_cast<std::size_t>(v * n + u)] = std::move(p);
        }
    return PolyMetric(space, std::move(entries));
}

PolyMetric random_polymetric(const Space& space, std::uint64_t seed, int degree, double scale) {
    const int n = space.dim();
    auto tab = std::make_shared<const MonomialTable>(n, degree);
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<TruncPoly> entries(static_cast<std::size_t>(n * n), TruncPoly(tab, degree));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            TruncPoly p = TruncPoly::constant(tab, degree, i == j ? space.sign(i) : 0.0);
            for (std::size_t q = 1; q < p.coefficients().size(); ++q) p.coefficients()[q] = scale * dist(gen);
            entries[static_cast<std::size_t>(i * n + j)] = p;
            entries[static_cast<std::size_t>(j * n + i)] = p;
        }
    return PolyMetric(space, std::move(entries));
}

PolyMetric constant_curvature_metric(const Space& space, double curvature) {
    const int n = space.dim();
    const int degree = kDefaultMetricDegree;
    auto tab = std::make_shared<const MonomialTable>(n, degree);
    TruncPoly r2(tab, degree);
    for (int i = 0; i < n; ++i) {
        const TruncPoly x = TruncPoly::variable(tab, degree, i);
        r2 += static_cast<double>(space.sign(i)) * (x * x);
    }
    // (1 + u)^-2 = 1 - 2u + 3u^2 - ... with u = K r^2 / 4
    const TruncPoly u = (curvature / 4.0) * r2;
    const TruncPoly factor = TruncPoly::constant(tab, degree, 1.0) - 2.0 * u + 3.0 * (u * u);
    std::vector<TruncPoly> entries;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            entries.push_back(i == j ? static_cast<double>(space.sign(i)) * factor : TruncPoly(tab, degree));
        }
    return PolyMetric(space, std::move(entries));
}

}  // namespace curvjet
