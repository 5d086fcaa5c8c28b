#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace curvjet {

// Pseudo-Euclidean vector space with diagonal metric g(e_i, e_j) = sign_i * delta_ij.
class Space {
public:
    explicit Space(std::vector<int> signature);
    static Space euclidean(int dim);

    int dim() const { return static_cast<int>(signature_.size()); }
    int sign(int i) const { return signature_[static_cast<std::size_t>(i)]; }
    std::span<const int> signature() const { return signature_; }
    bool riemannian() const;

    bool operator==(const Space&) const = default;

private:
    std::vector<int> signature_;
};

// Dense covariant tensor, row-major with slot 0 slowest.
class Tensor {
public:
    Tensor(Space space, int valence);
    Tensor(Space space, int valence, std::vector<double> data);

    const Space& space() const { return space_; }
    int dim() const { return space_.dim(); }
    int valence() const { return valence_; }
    std::size_t size() const { return data_.size(); }

    std::span<double> data() { return data_; }
    std::span<const double> data() const { return data_; }

    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }

    double& at(std::initializer_list<int> idx);
    double at(std::initializer_list<int> idx) const;
    std::size_t offset(std::span<const int> idx) const;

    // Stride of a slot in the flat layout.
    std::size_t stride(int slot) const;

    double norm() const;
    bool is_zero() const;

    Tensor& operator+=(const Tensor& other);
    Tensor& operator-=(const Tensor& other);
    Tensor& operator*=(double s);
    Tensor& operator/=(double s) { return *this *= 1.0 / s; }
    Tensor& add_scaled(const Tensor& other, double s);

    friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
    friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
    friend Tensor operator-(Tensor a) { return a *= -1.0; }
    friend Tensor operator*(Tensor a, double s) { return a *= s; }
    friend Tensor operator*(double s, Tensor a) { return a *= s; }
    friend Tensor operator/(Tensor a, double s) { return a /= s; }

private:
    void require_same_shape(const Tensor& other) const;

    Space space_;
    int valence_;
    std::vector<double> data_;
};

// Calls f(idx) for every multi-index of the given valence in storage order.
template <class F>
void for_each_index(int dim, int valence, F&& f) {
    std::vector<int> idx(static_cast<std::size_t>(valence), 0);
    const std::span<const int> view(idx);
    while (true) {
        f(view);
        int s = valence - 1;
        while (s >= 0 && ++idx[static_cast<std::size_t>(s)] == dim) {
            idx[static_cast<std::size_t>(s)] = 0;
            --s;
        }
        if (s < 0) return;
    }
}

Tensor scalar(const Space& space, double value);
Tensor metric(const Space& space);
Tensor inverse_metric(const Space& space);

// Output slot perm[s] receives input slot s: out(x_perm(0), ...) = in(x_0, ...).
Tensor permute(const Tensor& t, std::span<const int> perm);
Tensor permute(const Tensor& t, std::initializer_list<int> perm);

// Letter relabelling, e.g. reindex(t, "acbd->abcd") gives out[a,b,c,d] = t[a,c,b,d].
Tensor reindex(const Tensor& t, std::string_view pattern);

// Swap two slots.
Tensor swap_slots(const Tensor& t, int i, int j);

// t + t(b,c,a) + t(c,a,b) over slots s0, s1, s2.
Tensor cyclic_sum(const Tensor& t, int s0, int s1, int s2);

// Unnormalized sum over all permutations of the listed slots.
Tensor symmetric_sum(const Tensor& t, std::span<const int> slots);
// Averaging symmetrization (a projector).
Tensor symmetrize(const Tensor& t, std::span<const int> slots);
Tensor symmetrize(const Tensor& t, std::initializer_list<int> slots);
Tensor symmetrize_all(const Tensor& t);

// Sum over a of sign_a * t(..., e_a, ..., e_a, ...); the two slots are removed.
Tensor metric_trace(const Tensor& t, int i, int j);

Tensor outer(const Tensor& a, const Tensor& b);
// Full averaging symmetrization of a (x) b for fully symmetric inputs.
Tensor sym_product(const Tensor& a, const Tensor& b);

Tensor random_tensor(const Space& space, int valence, std::uint64_t seed);
// Independent seed for a numbered sub-stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// |a - b| / max(|a|, |b|, floor), zero when both vanish. A floor at the natural scale of
// the inputs keeps two copies of rounding noise from looking like a mismatch.
double relative_residual(const Tensor& a, const Tensor& b, double floor = 0.0);
// |t| relative to a reference norm, guarded against zero references.
double relative_norm(const Tensor& t, double reference);

}  // namespace curvjet
