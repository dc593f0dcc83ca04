#include "npstein/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>

namespace npstein {
namespace {

constexpr double kSqrt2 = 1.41421356237309504880168872420969808;
constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993438187;
constexpr long long kChunk = 65536;

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double phi_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }
double phi_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

struct Accum {
    double sum = 0.0, sum_c = 0.0;    // Neumaier-compensated Σ v
    double sum2 = 0.0, sum2_c = 0.0;  // Σ v²
    long long n = 0;

    void add(double v) {
        neumaier(sum, sum_c, v);
        neumaier(sum2, sum2_c, v * v);
        ++n;
    }
    void merge(const Accum& o) {
        neumaier(sum, sum_c, o.sum + o.sum_c);
        neumaier(sum2, sum2_c, o.sum2 + o.sum2_c);
        n += o.n;
    }

private:
    static void neumaier(double& s, double& c, double v) {
        const double t = s + v;
        c += (std::fabs(s) >= std::fabs(v)) ? (s - t) + v : (v - t) + s;
        s = t;
    }
};

double draw_element(const std::vector<double>& lambdas, std::uint64_t seed, std::uint64_t i) {
    const std::uint64_t d = lambdas.size();
    double acc = 0.0;
    for (std::uint64_t k = 0; k < d; ++k) {
        const double z = normal_quantile(mc_uniform01(seed, i * d + k));
        acc += lambdas[k] * (z * z - 1.0);
    }
    return acc;
}

// Chunk results are merged in chunk order regardless of sharding, so the
// final sums are bit-identical for any shard count.
Accum accumulate_range(const std::vector<double>& lambdas, const Poly<double>& p,
                       std::uint64_t seed, long long first_chunk, long long last_chunk,
                       long long n) {
    Accum total;
    for (long long c = first_chunk; c < last_chunk; ++c) {
        Accum chunk;
        const long long lo = c * kChunk;
        const long long hi = std::min(n, lo + kChunk);
        for (long long i = lo; i < hi; ++i)
            chunk.add(p.eval(draw_element(lambdas, seed, static_cast<std::uint64_t>(i))));
        total.merge(chunk);
    }
    return total;
}

}  // namespace

double mc_uniform01(std::uint64_t seed, std::uint64_t index) {
    const std::uint64_t bits = mix64(mix64(seed) ^ (index * 0xd1342543de82ef95ULL + 1));
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

double normal_quantile(double u) {
    if (!(u > 0.0 && u < 1.0)) throw std::domain_error("normal_quantile: u must be in (0,1)");
    const double q = std::min(u, 1.0 - u);
    double x;
    if (q > 0.2) {
        x = 0.0;
    } else {
        // tail seed from Phi(-x) ~ phi(x)/x
        const double r = std::sqrt(-2.0 * std::log(q));
        x = -(r - std::log(r * 2.50662827463100050) / r);
    }
    for (int it = 0; it < 8; ++it) {
        const double err = phi_cdf(x) - q;
        const double step = err / phi_pdf(x);
        x -= step;
        if (std::fabs(step) < 1e-14 * (1.0 + std::fabs(x))) break;
    }
    // x solves Phi(x) = min(u, 1-u) <= 1/2; reflect for the upper half.
    return u <= 0.5 ? x : -x;
}

std::vector<double> sample_element(const std::vector<double>& lambdas, long long n,
                                   std::uint64_t seed) {
    if (lambdas.empty())
        throw std::invalid_argument("sample_element: spectral coefficients required");
    if (n < 1) throw std::invalid_argument("sample_element: n must be >= 1");
    std::vector<double> out;
    out.reserve(n);
    for (long long i = 0; i < n; ++i)
        out.push_back(draw_element(lambdas, seed, static_cast<std::uint64_t>(i)));
    return out;
}

McEstimate estimate_expect_poly(const std::vector<double>& lambdas, const Poly<double>& p,
                                long long n, std::uint64_t seed, int shards) {
    if (lambdas.empty())
        throw std::invalid_argument("estimate_expect_poly: spectral coefficients required");
    if (n < 2) throw std::invalid_argument("estimate_expect_poly: n must be >= 2");
    if (shards < 1) throw std::invalid_argument("estimate_expect_poly: shards must be >= 1");

    const long long chunks = (n + kChunk - 1) / kChunk;
    const int used = static_cast<int>(std::min<long long>(shards, chunks));
    std::vector<std::future<Accum>> parts;
    parts.reserve(used);
    for (int s = 0; s < used; ++s) {
        const long long first = chunks * s / used;
        const long long last = chunks * (s + 1) / used;
        parts.push_back(std::async(std::launch::async, accumulate_range, std::cref(lambdas),
                                   std::cref(p), seed, first, last, n));
    }
    Accum total;
    for (auto& f : parts) total.merge(f.get());

    McEstimate e;
    e.n = n;
    e.seed = seed;
    e.mean = (total.sum + total.sum_c) / n;
    const double ss = (total.sum2 + total.sum2_c) - n * e.mean * e.mean;
    e.stderr_of_mean = std::sqrt(std::max(0.0, ss / (n - 1)) / n);
    return e;
}

std::vector<McEstimate> convergence_trace(const std::vector<std::vector<double>>& path,
                                          const Poly<double>& p, long long n, std::uint64_t seed,
                                          int shards) {
    if (path.empty()) throw std::invalid_argument("convergence_trace: empty path");
    std::vector<McEstimate> out;
    out.reserve(path.size());
    for (const auto& lambdas : path) out.push_back(estimate_expect_poly(lambdas, p, n, seed, shards));
    return out;
}

long long mc_samples_for(double variance, double half_width) {
    if (half_width <= 0) throw std::invalid_argument("mc_samples_for: half_width must be positive");
    if (variance <= 0) return 2;
    return static_cast<long long>(std::ceil(16.0 * variance / (half_width * half_width))) + 1;
}

}  // namespace npstein
