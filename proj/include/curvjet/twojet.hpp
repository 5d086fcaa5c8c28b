#pragma once

#include "curvjet/tensor.hpp"

namespace curvjet {

// (R, nabla R, nabla^2 R) in jet order: dR is [d, x1..x4], d2R is [d1, d2, x1..x4].
struct TwoJet {
    Tensor R;
    Tensor dR;
    Tensor d2R;

    const Space& space() const { return R.space(); }
    static TwoJet zero(const Space& space);
};

// Jet of a section R' over a fixed background curvature tensor.
struct SectionTwoJet {
    Tensor background;
    Tensor Rp;
    Tensor dRp;
    Tensor d2Rp;

    const Space& space() const { return background.space(); }
};

inline TwoJet TwoJet::zero(const Space& space) {
    return {Tensor(space, 4), Tensor(space, 5), Tensor(space, 6)};
}

}  // namespace curvjet
