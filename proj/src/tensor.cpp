#include "curvjet/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "curvjet/error.hpp"

namespace curvjet {

namespace {

std::size_t ipow(int base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
    return r;
}

double factorial(int k) {
    double r = 1.0;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

}  // namespace

Space::Space(std::vector<int> signature) : signature_(std::move(signature)) {
    if (signature_.size() < 2) throw InvalidArgument("space dimension must be at least 2");
    for (int s : signature_) {
        if (s != 1 && s != -1) throw InvalidArgument("signature entries must be +1 or -1");
    }
}

Space Space::euclidean(int dim) {
    if (dim < 2) throw InvalidArgument("space dimension must be at least 2");
    return Space(std::vector<int>(static_cast<std::size_t>(dim), 1));
}

bool Space::riemannian() const {
    return std::all_of(signature_.begin(), signature_.end(), [](int s) { return s == 1; });
}

Tensor::Tensor(Space space, int valence)
    : space_(std::move(space)), valence_(valence) {
    if (valence < 0) throw InvalidArgument("negative valence");
    data_.assign(ipow(space_.dim(), valence), 0.0);
}

Tensor::Tensor(Space space, int valence, std::vector<double> data)
    : space_(std::move(space)), valence_(valence), data_(std::move(data)) {
    if (valence < 0) throw InvalidArgument("negative valence");
    if (data_.size() != ipow(space_.dim(), valence)) {
        throw InvalidArgument("tensor data length " + std::to_string(data_.size()) +
                              " does not match dim^valence");
    }
    for (double v : data_) {
        if (!std::isfinite(v)) throw InvalidArgument("tensor entries must be finite");
    }
}

std::size_t Tensor::stride(int slot) const { return ipow(dim(), valence_ - 1 - slot); }

std::size_t Tensor::offset(std::span<const int> idx) const {
    std::size_t off = 0;
    for (int i : idx) off = off * static_cast<std::size_t>(dim()) + static_cast<std::size_t>(i);
    return off;
}

double& Tensor::at(std::initializer_list<int> idx) {
    if (static_cast<int>(idx.size()) != valence_) throw InvalidArgument("index length mismatch");
    return data_[offset(std::span<const int>(idx.begin(), idx.size()))];
}

double Tensor::at(std::initializer_list<int> idx) const {
    if (static_cast<int>(idx.size()) != valence_) throw InvalidArgument("index length mismatch");
    return data_[offset(std::span<const int>(idx.begin(), idx.size()))];
}

double Tensor::norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
}

bool Tensor::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return v == 0.0; });
}

void Tensor::require_same_shape(const Tensor& other) const {
    if (!(space_ == other.space_) || valence_ != other.valence_) {
        throw InvalidArgument("tensor shapes or spaces differ");
    }
}

Tensor& Tensor::operator+=(const Tensor& other) { return add_scaled(other, 1.0); }
Tensor& Tensor::operator-=(const Tensor& other) { return add_scaled(other, -1.0); }

Tensor& Tensor::operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
}

Tensor& Tensor::add_scaled(const Tensor& other, double s) {
    require_same_shape(other);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += s * other.data_[i];
    return *this;
}

Tensor scalar(const Space& space, double value) { return Tensor(space, 0, {value}); }

Tensor metric(const Space& space) {
    Tensor g(space, 2);
    for (int i = 0; i < space.dim(); ++i) g.at({i, i}) = space.sign(i);
    return g;
}

// With a diagonal +-1 metric the inverse has the same entries.
Tensor inverse_metric(const Space& space) { return metric(space); }

Tensor permute(const Tensor& t, std::span<const int> perm) {
    const int v = t.valence();
    if (static_cast<int>(perm.size()) != v) throw InvalidArgument("permutation length differs from valence");
    std::vector<bool> seen(static_cast<std::size_t>(v), false);
    for (int p : perm) {
        if (p < 0 || p >= v || seen[static_cast<std::size_t>(p)]) throw InvalidArgument("not a permutation");
        seen[static_cast<std::size_t>(p)] = true;
    }
    Tensor out(t.space(), v);
    if (v == 0) {
        out[0] = t[0];
        return out;
    }
    // Stride in the output for each input slot.
    std::vector<std::size_t> ostride(static_cast<std::size_t>(v));
    for (int s = 0; s < v; ++s) ostride[static_cast<std::size_t>(s)] = out.stride(perm[static_cast<std::size_t>(s)]);
    const int n = t.dim();
    std::vector<int> idx(static_cast<std::size_t>(v), 0);
    std::size_t o = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        out[o] = t[i];
        int s = v - 1;
        while (s >= 0) {
            auto us = static_cast<std::size_t>(s);
            if (++idx[us] < n) {
                o += ostride[us];
                break;
            }
            idx[us] = 0;
            o -= ostride[us] * static_cast<std::size_t>(n - 1);
            --s;
        }
    }
    return out;
}

Tensor permute(const Tensor& t, std::initializer_list<int> perm) {
    return permute(t, std::span<const int>(perm.begin(), perm.size()));
}

Tensor reindex(const Tensor& t, std::string_view pattern) {
    const auto arrow = pattern.find("->");
    if (arrow == std::string_view::npos) throw InvalidArgument("reindex pattern needs '->'");
    const auto from = pattern.substr(0, arrow);
    const auto to = pattern.substr(arrow + 2);
    if (static_cast<int>(from.size()) != t.valence() || from.size() != to.size()) {
        throw InvalidArgument("reindex pattern does not match valence");
    }
    std::vector<int> perm;
    for (char c : from) {
        const auto pos = to.find(c);
        if (pos == std::string_view::npos) throw InvalidArgument("reindex letters differ");
        perm.push_back(static_cast<int>(pos));
    }
    return permute(t, perm);
}

Tensor swap_slots(const Tensor& t, int i, int j) {
    std::vector<int> perm(static_cast<std::size_t>(t.valence()));
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm.at(static_cast<std::size_t>(i)), perm.at(static_cast<std::size_t>(j)));
    return permute(t, perm);
}

// out[.., a@s0, b@s1, c@s2, ..] = t + t(b,c,a) + t(c,a,b)
Tensor cyclic_sum(const Tensor& t, int s0, int s1, int s2) {
    std::vector<int> perm(static_cast<std::size_t>(t.valence()));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> once = perm;
    once[static_cast<std::size_t>(s0)] = s1;
    once[static_cast<std::size_t>(s1)] = s2;
    once[static_cast<std::size_t>(s2)] = s0;
    const Tensor t1 = permute(t, once);
    return t + t1 + permute(t1, once);
}

Tensor symmetric_sum(const Tensor& t, std::span<const int> slots) {
    if (slots.empty()) throw InvalidArgument("symmetrization needs at least one slot");
    for (int s : slots) {
        if (s < 0 || s >= t.valence()) throw InvalidArgument("slot index out of range");
    }
    std::vector<int> targets(slots.begin(), slots.end());
    std::sort(targets.begin(), targets.end());
    if (std::adjacent_find(targets.begin(), targets.end()) != targets.end()) {
        throw InvalidArgument("repeated slot in symmetrization");
    }
    Tensor out(t.space(), t.valence());
    std::vector<int> perm(static_cast<std::size_t>(t.valence()));
    do {
        std::iota(perm.begin(), perm.end(), 0);
        for (std::size_t i = 0; i < slots.size(); ++i) perm[static_cast<std::size_t>(slots[i])] = targets[i];
        out += permute(t, perm);
    } while (std::next_permutation(targets.begin(), targets.end()));
    return out;
}

Tensor symmetrize(const Tensor& t, std::span<const int> slots) {
    return symmetric_sum(t, slots) / factorial(static_cast<int>(slots.size()));
}

Tensor symmetrize(const Tensor& t, std::initializer_list<int> slots) {
    return symmetrize(t, std::span<const int>(slots.begin(), slots.size()));
}

Tensor symmetrize_all(const Tensor& t) {
    if (t.valence() == 0) return t;
    std::vector<int> slots(static_cast<std::size_t>(t.valence()));
    std::iota(slots.begin(), slots.end(), 0);
    return symmetrize(t, slots);
}

Tensor metric_trace(const Tensor& t, int i, int j) {
    const int v = t.valence();
    if (v < 2) throw InvalidArgument("trace needs valence at least 2");
    if (i == j || i < 0 || j < 0 || i >= v || j >= v) throw InvalidArgument("invalid trace slots");
    if (i > j) std::swap(i, j);
    const int n = t.dim();
    Tensor out(t.space(), v - 2);
    const std::size_t si = t.stride(i);
    const std::size_t sj = t.stride(j);
    std::vector<int> full(static_cast<std::size_t>(v), 0);
    std::size_t o = 0;
    for_each_index(n, v - 2, [&](std::span<const int> rest) {
        for (int s = 0, k = 0; s < v; ++s) {
            if (s == i || s == j) continue;
            full[static_cast<std::size_t>(s)] = rest[static_cast<std::size_t>(k++)];
        }
        full[static_cast<std::size_t>(i)] = 0;
        full[static_cast<std::size_t>(j)] = 0;
        const std::size_t base = t.offset(full);
        double acc = 0.0;
        for (int a = 0; a < n; ++a) acc += t.space().sign(a) * t[base + static_cast<std::size_t>(a) * (si + sj)];
        out[o++] = acc;
    });
    return out;
}

Tensor outer(const Tensor& a, const Tensor& b) {
    if (!(a.space() == b.space())) throw InvalidArgument("mismatched spaces");
    Tensor out(a.space(), a.valence() + b.valence());
    std::size_t o = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) out[o++] = a[i] * b[j];
    }
    return out;
}

Tensor sym_product(const Tensor& a, const Tensor& b) { return symmetrize_all(outer(a, b)); }

Tensor random_tensor(const Space& space, int valence, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    Tensor t(space, valence);
    for (double& v : t.data()) v = dist(gen);
    return t;
}

double relative_residual(const Tensor& a, const Tensor& b, double floor) {
    const double scale = std::max({a.norm(), b.norm(), floor});
    const double diff = (a - b).norm();
    if (scale == 0.0) return 0.0;
    return diff / scale;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finalizer over the combined value
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double relative_norm(const Tensor& t, double reference) {
    const double v = t.norm();
    if (v == 0.0) return 0.0;
    return v / std::max(reference, 1e-300);
}

}  // namespace curvjet
