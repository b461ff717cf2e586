// optics.hpp
// Fock-space simulation of the two hardware realizations of the partial Bell
// measurement: polarization rotations + 50:50 beam splitter, and the 4x4
// Bell multiport. Click patterns are classified back to outcome labels.

#pragma once

#include <array>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rusim/protocol.hpp"
#include "rusim/state.hpp"

namespace rusim {

// m x m matrix acting on photon creation operators: a_n† -> sum_m U(m, n) b_m†.
using ModeUnitary = UnitaryMatrix;

// Amplitudes below this floor are dropped when superpositions are summed into
// output distributions; cancellations in this artifact are exact or leave
// only floating-point dust far beneath it.
inline constexpr double kAmplitudeFloor = 1e-14;

// Thrown when a click pattern has zero amplitude for every protocol input.
class UnreachablePattern : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Thrown when fewer than two photons are accounted for in a pattern.
class LossyPattern : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Occupation-number configuration over m optical modes. The normalization
// factor sqrt(prod occ_n!) relative to raw creation-operator strings is
// centralized here so permanents and tensor expansion share it.
class FockState {
public:
    explicit FockState(std::vector<int> occupations);

    const std::vector<int>& occupations() const { return occ_; }
    int modes() const { return static_cast<int>(occ_.size()); }
    int photon_count() const;
    double normalization() const;  // sqrt(prod occ_n!)
    std::string to_string() const;

    friend bool operator==(const FockState& a, const FockState& b) { return a.occ_ == b.occ_; }
    friend bool operator<(const FockState& a, const FockState& b) { return a.occ_ < b.occ_; }

private:
    std::vector<int> occ_;
};

// Detectors that fired with their inferred photon counts. On a lossless run
// a single clicked port is inferred to hold both photons; the counts stay
// explicit so the eta < 1 analysis can see where that inference breaks.
struct ClickPattern {
    std::map<int, int> counts;  // detector id -> inferred count (>= 1)

    int total_photons() const;
    std::set<int> fired() const;
    std::string to_string() const;

    friend bool operator==(const ClickPattern& a, const ClickPattern& b) {
        return a.counts == b.counts;
    }
    friend bool operator<(const ClickPattern& a, const ClickPattern& b) {
        return a.counts < b.counts;
    }
};

using FockAmplitudes = std::map<FockState, Amplitude>;

// The 4x4 Bell multiport, entries U(n, m) = (1/2) i^{(n-1)(m-1)} (1-based).
// Only n = 4 is supported.
ModeUnitary bell_multiport(int n);

// Symmetric 50:50 beam splitter, transmission 1/sqrt(2), reflection i/sqrt(2).
ModeUnitary beam_splitter_50_50();

// Scatters a two-photon input configuration through u. The amplitude of
// output configuration S is perm(U_sub) / sqrt(prod in_mult! * prod out_mult!)
// with U_sub the 2x2 submatrix selected by the input/output mode multisets.
// Every output configuration is returned, including exact zeros.
FockAmplitudes scatter_two_photons(const ModeUnitary& u, const FockState& input);

// Linear extension of scatter_two_photons to a superposition of two-photon
// configurations; entries below kAmplitudeFloor are dropped after summation.
FockAmplitudes scatter_superposition(const ModeUnitary& u, const FockAmplitudes& input);

// Time-bin state to multiport input modes: |EE> -> a1†a2†, |EL> -> a1†a4†,
// |LE> -> a2†a3†, |LL> -> a3†a4†.
FockAmplitudes embed_timebin_to_modes(const StateVector& photonic);

// Multiport click rules: {1,4} or {2,3} -> Phi_1; {1,2} or {3,4} -> Phi_2;
// both photons in port 1 or 3 -> Phi_3; both in 2 or 4 -> Phi_4. Patterns
// {1,3} and {2,4} are unreachable.
OutcomeLabel classify_multiport(const ClickPattern& c);

// Polarization rotations for the beam-splitter realization, derived from the
// partial Bell basis' x/y states under E -> h, L -> v as
// U_i = |h><x_i| + |v><y_i|. Returned in the (h, v) basis.
std::pair<ModeUnitary, ModeUnitary> polarization_rotations();

// The full 4-mode network of the beam-splitter realization over
// (A,h), (A,v), (B,h), (B,v): per-port polarization rotations followed by
// the 50:50 beam splitter across ports.
ModeUnitary fig2a_network();

// Detector ids for the beam-splitter realization.
inline constexpr int kDetectorAH = 0;
inline constexpr int kDetectorAV = 1;
inline constexpr int kDetectorBH = 2;
inline constexpr int kDetectorBV = 3;

// Sends a time-bin photonic state through the beam-splitter realization
// (E -> h, L -> v conversion assumed ideal) and returns the click-pattern
// distribution over the four polarization-sensitive detector channels.
std::map<ClickPattern, double> simulate_fig2a(const StateVector& photonic);

// Beam-splitter click rules: mixed polarization in the same port -> Phi_1,
// mixed polarization across ports -> Phi_2, both h -> Phi_3, both v -> Phi_4.
OutcomeLabel classify_fig2a(const ClickPattern& c);

// Click-pattern distribution of the multiport realization (ports 1..4).
std::map<ClickPattern, double> simulate_multiport(const StateVector& photonic);

// Outcome distributions Phi_1..Phi_4 induced by each path; all three agree
// within kTolerance for every normalized photonic state.
std::array<double, 4> abstract_outcome_distribution(const StateVector& photonic);
std::array<double, 4> fig2a_outcome_distribution(const StateVector& photonic);
std::array<double, 4> multiport_outcome_distribution(const StateVector& photonic);

}  // namespace rusim
