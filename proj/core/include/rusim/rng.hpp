// rng.hpp
// Seed derivation for reproducible Monte Carlo: one master seed, one
// independent substream per trial. No shared mutable generator anywhere.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rusim/protocol.hpp"
#include "rusim/state.hpp"

namespace rusim {

// splitmix64 step; the standard mixer for expanding one seed into many.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seed for substream `stream` of a master seed: splitmix64 advanced past the
// stream index so neighbouring streams are decorrelated.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t state = master + (stream + 1) * 0x9e3779b97f4a7c15ULL;
    return splitmix64(state);
}

inline std::mt19937_64 make_stream(std::uint64_t master, std::uint64_t stream) {
    return std::mt19937_64(derive_seed(master, stream));
}

// Haar-like random state: normalized complex Gaussian amplitudes.
inline StateVector random_state(std::vector<std::string> labels, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Amplitude> amps(labels.size());
    for (auto& a : amps) {
        double re = gauss(rng);
        double im = gauss(rng);
        a = Amplitude{re, im};
    }
    return StateVector(std::move(labels), std::move(amps)).normalized();
}

inline PhaseTriple random_phase_triple(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
    double p1 = angle(rng);
    double p2 = angle(rng);
    double p3 = angle(rng);
    return PhaseTriple(p1, p2, p3);
}

}  // namespace rusim
