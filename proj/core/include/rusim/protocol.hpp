// protocol.hpp
// The measurement-based controlled-Z protocol between two photon-source
// qubits: time-bin encoding, the mutually unbiased measurement family, the
// concrete partial Bell basis, the four-outcome decomposition of the encoded
// state, and the per-outcome correction unitaries.

#pragma once

#include <array>
#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

#include "rusim/state.hpp"

namespace rusim {

// Phases arriving from user config are decimal literals, so angle comparisons
// run at a looser tolerance than the algebraic checks.
inline constexpr double kAngleTolerance = 1e-9;

// Thrown by is_entangling when phi3 - phi1 - phi2 is neither 0 nor pi
// (mod 2pi): such bases are partially entangled and not used by the protocol.
class PhaseTripleNotInProtocolFamily : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// (phi1, phi2, phi3), canonicalized into [0, 2pi).
struct PhaseTriple {
    PhaseTriple(double p1, double p2, double p3);

    double phi1;
    double phi2;
    double phi3;
};

// Measurement outcome index, 1..4.
class OutcomeLabel {
public:
    explicit OutcomeLabel(int index);
    int index() const { return index_; }

    friend bool operator==(const OutcomeLabel&, const OutcomeLabel&) = default;
    friend auto operator<=>(const OutcomeLabel&, const OutcomeLabel&) = default;

private:
    int index_;
};

enum class BasisVectorKind { entangled, product };

// The four-vector measurement basis over {EE, EL, LE, LL}, each vector
// mutually unbiased with the computational basis, plus the single-photon
// x/y states it is built from (used to derive the Fig.-2a-style polarization
// rotations instead of hard-coding them).
struct MeasurementBasis {
    std::vector<StateVector> vectors;               // Phi_1..Phi_4, in order
    std::array<BasisVectorKind, 4> classification;  // per-vector tag
    StateVector x1, y1, x2, y2;                     // over {E, L}
};

// Canonical label sets (lexicographic basis order).
const std::vector<std::string>& qubit_labels();       // {"0", "1"}
const std::vector<std::string>& two_qubit_labels();   // {"00", "01", "10", "11"}
const std::vector<std::string>& photon_labels();      // {"E", "L"}
const std::vector<std::string>& two_photon_labels();  // {"EE", "EL", "LE", "LL"}

// Gate set.
UnitaryMatrix cz_gate();               // diag(1, 1, 1, -1)
UnitaryMatrix z_rotation(double phi);  // diag(1, e^{-i phi})
UnitaryMatrix z_on_first(double phi);  // Z(phi) on qubit 1 of a pair
UnitaryMatrix z_on_second(double phi);

// alpha|0> + beta|1>  ->  alpha|0;E> + beta|1;L>.
StateVector encode_single(const StateVector& s);

// Coefficient of |xy> moves to |xy;B(x)B(y)> with B(0)=E, B(1)=L. The output
// spans all 16 joint labels in lexicographic order.
StateVector encode_pair(const StateVector& s);

// (1/2)(|EE> + e^{i phi1}|EL> + e^{i phi2}|LE> + e^{i phi3}|LL>).
StateVector mub_vector(const PhaseTriple& p);

// diag(1, e^{-i phi1}, e^{-i phi2}, e^{-i phi3}) — the back-action a
// mub_vector detection imposes on the sources.
UnitaryMatrix u_phase(const PhaseTriple& p);

// true  iff phi3 - phi1 - phi2 = pi (mod 2pi): detection is maximally
//       entangled and the back-action is CZ up to local rotations;
// false iff the difference is 0 (mod 2pi): detection is a product state.
bool is_entangling(const PhaseTriple& p);

// The concrete partial Bell basis: two maximally entangled vectors (Phi_1,
// Phi_2) and two product vectors (Phi_3, Phi_4), built from the x/y
// single-photon states. Immutable, validated once.
const MeasurementBasis& partial_bell_basis();

struct DecompositionEntry {
    OutcomeLabel outcome;
    double probability;
    StateVector residual;  // normalized post-measurement source state
};

// Resolves an encoded pair state into the four (outcome, probability,
// residual) branches. Probabilities are 1/4 each for any normalized input;
// residual global phases are not contractual (assert with fidelities).
std::vector<DecompositionEntry> decompose(const StateVector& enc);

struct Correction {
    UnitaryMatrix unitary;
    bool gate_succeeded;
};

// Outcome-conditioned local correction: outcomes 1 and 2 complete the CZ
// gate, outcomes 3 and 4 restore the input state.
Correction correction_unitary(OutcomeLabel o);

// Short identifier for the correction applied on outcome o.
std::string correction_name(OutcomeLabel o);

}  // namespace rusim
