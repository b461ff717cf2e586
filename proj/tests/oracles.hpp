// oracles.hpp
// Test-only reference implementations, kept independent of the library code
// paths they check: brute-force partial projection, brute-force two-photon
// scattering by operator expansion, and small comparison helpers.

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "rusim/optics.hpp"
#include "rusim/rng.hpp"
#include "rusim/state.hpp"

namespace oracles {

// Brute-force partial projection of `measured` on the second subsystem of a
// two-part joint state: sums over all joint amplitudes directly.
struct BruteProjection {
    std::vector<rusim::Amplitude> raw;  // unnormalized residual, one per first part
    double probability = 0.0;
};

inline BruteProjection project_second_subsystem(const rusim::StateVector& measured,
                                                const rusim::StateVector& joint) {
    BruteProjection result;
    std::vector<std::string> first_parts;
    for (std::size_t j = 0; j < joint.size(); ++j) {
        const std::string& label = joint.labels()[j];
        auto sep = label.find(';');
        std::string first = label.substr(0, sep);
        std::string second = label.substr(sep + 1);
        std::size_t idx = 0;
        for (; idx < first_parts.size(); ++idx) {
            if (first_parts[idx] == first) break;
        }
        if (idx == first_parts.size()) {
            first_parts.push_back(first);
            result.raw.push_back({0.0, 0.0});
        }
        result.raw[idx] += std::conj(measured.amplitude(second)) * joint[j];
    }
    for (const auto& r : result.raw) result.probability += std::norm(r);
    return result;
}

// Brute-force two-photon scattering: expands
// (sum_m U(m, n1) b_m†)(sum_m U(m, n2) b_m†)|vac> term by term and converts
// creation-operator strings to Fock amplitudes via sqrt(occ!) factors.
inline rusim::FockAmplitudes scatter_by_expansion(const rusim::ModeUnitary& u,
                                                  const rusim::FockState& input) {
    int modes = input.modes();
    std::vector<int> photons;
    for (int m = 0; m < modes; ++m) {
        for (int k = 0; k < input.occupations()[static_cast<std::size_t>(m)]; ++k) {
            photons.push_back(m);
        }
    }
    int n1 = photons[0];
    int n2 = photons[1];

    std::map<rusim::FockState, rusim::Amplitude> coeff;
    for (int m1 = 0; m1 < modes; ++m1) {
        for (int m2 = 0; m2 < modes; ++m2) {
            std::vector<int> occ(static_cast<std::size_t>(modes), 0);
            occ[static_cast<std::size_t>(m1)] += 1;
            occ[static_cast<std::size_t>(m2)] += 1;
            coeff[rusim::FockState(occ)] +=
                u(static_cast<std::size_t>(m1), static_cast<std::size_t>(n1)) *
                u(static_cast<std::size_t>(m2), static_cast<std::size_t>(n2));
        }
    }
    rusim::FockAmplitudes out;
    for (const auto& [config, c] : coeff) {
        out[config] = c * config.normalization() / input.normalization();
    }
    return out;
}

inline double max_amplitude_deviation(const rusim::FockAmplitudes& a,
                                      const rusim::FockAmplitudes& b) {
    double max_dev = 0.0;
    auto lookup = [](const rusim::FockAmplitudes& m, const rusim::FockState& k) {
        auto it = m.find(k);
        return it == m.end() ? rusim::Amplitude{0.0, 0.0} : it->second;
    };
    for (const auto& [k, v] : a) max_dev = std::max(max_dev, std::abs(v - lookup(b, k)));
    for (const auto& [k, v] : b) max_dev = std::max(max_dev, std::abs(v - lookup(a, k)));
    return max_dev;
}

inline double max_state_deviation(const rusim::StateVector& a, const rusim::StateVector& b) {
    double max_dev = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        max_dev = std::max(max_dev, std::abs(a[i] - b[i]));
    }
    return max_dev;
}

// Aligns b's global phase to a (phase of the largest overlap component),
// then returns the maximum componentwise deviation.
inline double max_deviation_up_to_phase(const rusim::StateVector& a, const rusim::StateVector& b) {
    rusim::Amplitude overlap = rusim::inner(b, a);
    double mag = std::abs(overlap);
    rusim::Amplitude phase = mag > 0.0 ? overlap / mag : rusim::Amplitude{1.0, 0.0};
    return max_state_deviation(a, phase * b);
}

// Random product of protocol gates, for norm-preservation properties.
inline rusim::UnitaryMatrix random_gate_product(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(0, 3);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
    rusim::UnitaryMatrix u = rusim::UnitaryMatrix::identity(4);
    for (int step = 0; step < 3; ++step) {
        switch (pick(rng)) {
            case 0: u = rusim::cz_gate() * u; break;
            case 1: u = rusim::z_on_first(angle(rng)) * u; break;
            case 2: u = rusim::z_on_second(angle(rng)) * u; break;
            default:
                u = rusim::u_phase(rusim::random_phase_triple(rng)) * u;
                break;
        }
    }
    return u;
}

}  // namespace oracles
