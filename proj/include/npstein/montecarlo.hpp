// Seeded Monte Carlo for second-chaos elements. Draws are a pure function of
// (seed, global index) through a counter-based generator, normals come from
// deterministic inversion of the Gaussian CDF (no rejection), and reduction
// runs over fixed-size chunks so results do not depend on the shard count.
#pragma once

#include "npstein/poly.hpp"

#include <cstdint>
#include <vector>

namespace npstein {

struct McEstimate {
    double mean = 0.0;
    double stderr_of_mean = 0.0;  // sample std / sqrt(n)
    long long n = 0;
    std::uint64_t seed = 0;
};

// Counter-based uniform stream: value at `index` is independent of any other
// index and of how the range is partitioned.
double mc_uniform01(std::uint64_t seed, std::uint64_t index);

// Quantile of the standard normal, Newton-refined to near machine precision.
double normal_quantile(double u);

// First `n` draws of F = sum_k lambda_k (Z_k^2 - 1), deterministic per seed.
std::vector<double> sample_element(const std::vector<double>& lambdas, long long n,
                                   std::uint64_t seed);

// Monte Carlo estimate of E[p(F)]; shards only partition the index range.
McEstimate estimate_expect_poly(const std::vector<double>& lambdas, const Poly<double>& p,
                                long long n, std::uint64_t seed, int shards = 1);

// One estimate per element along a path (shared polynomial, common seed).
std::vector<McEstimate> convergence_trace(const std::vector<std::vector<double>>& path,
                                          const Poly<double>& p, long long n, std::uint64_t seed,
                                          int shards = 1);

// Samples needed so that 4 * stderr <= half_width for a given variance.
long long mc_samples_for(double variance, double half_width);

}  // namespace npstein
