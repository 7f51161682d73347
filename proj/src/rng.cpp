#include "corrkit/rng.hpp"

#include <cmath>

namespace corrkit {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : key_(splitmix64(seed) ^ splitmix64(splitmix64(stream) + 0x632be59bd9b4e019ULL)) {}

Rng::result_type Rng::bits(std::uint64_t k) const {
    // two rounds so neighbouring counters decorrelate
    return splitmix64(splitmix64(key_ + k * 0xda942042e4dd58b5ULL) ^ key_);
}

double Rng::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller; 1-u keeps the log finite
    const double u = 1.0 - uniform(), v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double t = 2.0 * M_PI * v;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
}

double Rng::exponential() { return -std::log(1.0 - uniform()); }

std::uint64_t Rng::below(std::uint64_t n) {
    if (n <= 1) return 0;
    // rejection keeps it unbiased
    const std::uint64_t lim = max() - max() % n;
    std::uint64_t x;
    do x = (*this)();
    while (x >= lim);
    return x % n;
}

}  // namespace corrkit
