#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "curvjet/jet.hpp"
#include "curvjet/report.hpp"

namespace curvjet {

struct SuiteConfig {
    std::uint64_t seed = 0;
    int samples = 25;
    double tol = kDefaultTolerance;
};

// Named property suites shared by the CLI and the acceptance binary. "all" runs every suite.
std::vector<std::string> suite_names();
bool is_suite(const std::string& name);
Report run_suite(const std::string& name, const JetSpace& js, const SuiteConfig& cfg);

// Einstein two-jet from a random Einstein one-jet.
TwoJet random_einstein_jet(const JetSpace& js, std::uint64_t seed);
// Adds a C_2 element with nonzero Ricci Hessian, scaled to `relative` of the jet's second-order size.
TwoJet perturb_jet(const JetSpace& js, const TwoJet& jet, std::uint64_t seed, double relative = 1e-2);

// Ranks of the Kulkarni map restricted to N_{k+2}, compared with the dimension of N_{k+2}.
struct KernelCheck {
    int k;
    int n_dim;
    int rank;
};
KernelCheck kulkarni_kernel_check(const Space& space, int k, std::uint64_t seed);

}  // namespace curvjet
