#ifndef BNSL_RNG_HPP
#define BNSL_RNG_HPP

#include <cstdint>
#include <random>

namespace bnsl {

// All sampling runs on std::mt19937_64 with explicit seeding. The engine's
// output sequence is fixed by the standard, and uniform doubles are derived
// below instead of going through std::uniform_real_distribution (whose
// mapping is implementation-defined), so sampled datasets are reproducible
// across platforms and standard libraries.
using Rng = std::mt19937_64;

// Uniform double in [0, 1) built from the top 53 bits of one engine draw.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Draws an index from a normalized probability row [begin, begin+k).
inline int draw_categorical(Rng& rng, const double* probs, int k) {
    double u = uniform01(rng);
    double acc = 0.0;
    for (int i = 0; i < k; ++i) {
        acc += probs[i];
        if (u < acc) return i;
    }
    return k - 1;  // guard against rounding in the cumulative sum
}

}  // namespace bnsl

#endif  // BNSL_RNG_HPP
