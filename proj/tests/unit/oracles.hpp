#pragma once

// Brute-force reference computations written directly from index formulas,
// independent of the library's permutation and contraction kernels.

#include <array>
#include <cmath>
#include <vector>

#include "curvjet/tensor.hpp"

namespace oracle {

using curvjet::Space;
using curvjet::Tensor;

inline double g(const Space& s, int a, int b) { return a == b ? s.sign(a) : 0.0; }

// 2(g_ac g_bd - g_ad g_bc)
inline Tensor kulkarni_square(const Space& s) {
    const int n = s.dim();
    Tensor out(s, 4);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d)
                    out.at({a, b, c, d}) = 2.0 * (g(s, a, c) * g(s, b, d) - g(s, a, d) * g(s, b, c));
    return out;
}

// ric(x,y) = -sum_i sign_i R(x, e_i, y, e_i)
inline Tensor ricci(const Tensor& R) {
    const Space& s = R.space();
    const int n = s.dim();
    Tensor out(s, 2);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            double v = 0.0;
            for (int i = 0; i < n; ++i) v -= s.sign(i) * R.at({x, i, y, i});
            out.at({x, y}) = v;
        }
    return out;
}

// Young operator for k = 0 as an explicit sum over the 4 row and 4 column permutations.
// Rows {0,2}, {1,3}; columns {0,1}, {2,3}. Row sum applied first, then the signed column sum.
inline Tensor young0(const Tensor& t) {
    const Space& s = t.space();
    const int n = s.dim();
    auto row = [&](const Tensor& in) {
        Tensor out(s, 4);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d)
                        out.at({a, b, c, d}) = in.at({a, b, c, d}) + in.at({c, b, a, d}) + in.at({a, d, c, b}) +
                                               in.at({c, d, a, b});
        return out;
    };
    auto col = [&](const Tensor& in) {
        Tensor out(s, 4);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d)
                        out.at({a, b, c, d}) = in.at({a, b, c, d}) - in.at({b, a, c, d}) - in.at({a, b, d, c}) +
                                               in.at({b, a, d, c});
        return out;
    };
    return col(row(t));
}

// Contraction of t with sign_a over two slots of a valence-4 tensor, by loops.
inline Tensor trace4(const Tensor& t, int i, int j) {
    const Space& s = t.space();
    const int n = s.dim();
    Tensor out(s, 2);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            double v = 0.0;
            for (int a = 0; a < n; ++a) {
                std::array<int, 4> idx{};
                int free = 0;
                for (int slot = 0; slot < 4; ++slot) {
                    if (slot == i || slot == j) {
                        idx[static_cast<std::size_t>(slot)] = a;
                    } else {
                        idx[static_cast<std::size_t>(slot)] = free++ == 0 ? p : q;
                    }
                }
                v += s.sign(a) * t.at({idx[0], idx[1], idx[2], idx[3]});
            }
            out.at({p, q}) = v;
        }
    return out;
}

// Full contraction of t with vectors in the listed order.
inline double evaluate(const Tensor& t, const std::vector<std::vector<double>>& vs) {
    double total = 0.0;
    curvjet::for_each_index(t.dim(), t.valence(), [&](std::span<const int> idx) {
        double w = t[t.offset(idx)];
        for (std::size_t s = 0; s < vs.size(); ++s) w *= vs[s][static_cast<std::size_t>(idx[s])];
        total += w;
    });
    return total;
}

inline double gdot(const Space& s, const std::vector<double>& u, const std::vector<double>& v) {
    double r = 0.0;
    for (int i = 0; i < s.dim(); ++i) r += s.sign(i) * u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
    return r;
}

// Transform every slot by a matrix: out(a,...) = sum Q[i][a] ... t(i,...).
inline Tensor transform(const Tensor& t, const std::vector<std::vector<double>>& Q) {
    Tensor out(t.space(), t.valence());
    const int n = t.dim();
    curvjet::for_each_index(n, t.valence(), [&](std::span<const int> out_idx) {
        double v = 0.0;
        curvjet::for_each_index(n, t.valence(), [&](std::span<const int> in_idx) {
            double w = t[t.offset(in_idx)];
            for (std::size_t s = 0; s < in_idx.size() && w != 0.0; ++s) {
                w *= Q[static_cast<std::size_t>(in_idx[s])][static_cast<std::size_t>(out_idx[s])];
            }
            v += w;
        });
        out[out.offset(out_idx)] = v;
    });
    return out;
}

}  // namespace oracle
