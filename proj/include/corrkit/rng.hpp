#pragma once

#include <cstdint>
#include <limits>

namespace corrkit {

// Counter-based generator: output k of stream s under seed is a pure hash of
// (seed, s, k). Distributions below are written out so that streams match
// bit-for-bit across standard libraries.
class Rng {
public:
    using result_type = std::uint64_t;

    Rng(std::uint64_t seed, std::uint64_t stream = 0);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() { return bits(counter_++); }

    double uniform();                       // [0,1)
    double uniform(double lo, double hi);
    double normal();                        // standard normal
    double exponential();                   // rate 1
    std::uint64_t below(std::uint64_t n);   // [0,n)

    std::uint64_t counter() const { return counter_; }

private:
    result_type bits(std::uint64_t k) const;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    bool have_spare_ = false;
    double spare_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace corrkit
