#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace mswtc {

// xoshiro256++ with splitmix64 seeding. Self-contained so that streams are
// reproducible across compilers and standard libraries; std::* distributions
// are implementation-defined and would break byte-identical reruns.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    // [0, 1) with 53 random bits
    double uniform();
    double uniform(double lo, double hi);

    // standard normal, Box-Muller (pairs cached)
    double normal();
    double normal(double mean, double stddev);

    // unbiased integer in [0, n), n > 0
    std::uint64_t uniform_int(std::uint64_t n);

    bool bernoulli(double p);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_int(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // k distinct indices drawn from [0, n) by partial Fisher-Yates
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

private:
    std::uint64_t state_[4];
    bool have_cached_normal_ = false;
    double cached_normal_ = 0.0;
};

// FNV-1a over the label bytes; used to derive named substreams.
std::uint64_t hash_label(std::string_view label);

// Independent stream for (seed, label, index). All randomness in the pipeline
// flows from one top-level seed through these, so any component can be re-run
// in isolation with the stream it would have seen in the full run.
Rng derive_stream(std::uint64_t seed, std::string_view label, std::uint64_t index = 0);

}  // namespace mswtc
