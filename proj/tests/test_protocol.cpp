#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>

#include "oracles.hpp"
#include "rusim/protocol.hpp"
#include "rusim/rng.hpp"
#include "rusim/state.hpp"

using namespace rusim;

namespace {

constexpr double kPi = std::numbers::pi;

Amplitude polar(double mag, double angle) { return std::polar(mag, angle); }

// The four basis vectors written out componentwise over (EE, EL, LE, LL).
StateVector expected_phi(int index) {
    switch (index) {
        case 1:
            return StateVector(two_photon_labels(),
                               {polar(0.5, kPi / 4), polar(0.5, -kPi / 4),
                                polar(0.5, 3 * kPi / 4), polar(0.5, -3 * kPi / 4)});
        case 2:
            return StateVector(two_photon_labels(),
                               {polar(0.5, 3 * kPi / 4), polar(0.5, -3 * kPi / 4),
                                polar(0.5, kPi / 4), polar(0.5, -kPi / 4)});
        case 3:
            return StateVector(two_photon_labels(),
                               {{0.5, 0.0}, {0.5, 0.0}, {0.5, 0.0}, {0.5, 0.0}});
        default:
            return StateVector(two_photon_labels(),
                               {{0.0, 0.5}, {0.0, -0.5}, {0.0, -0.5}, {0.0, 0.5}});
    }
}

// Phase triples read off the four basis vectors.
PhaseTriple phi_triple(int index) {
    switch (index) {
        case 1: return PhaseTriple(3 * kPi / 2, kPi / 2, kPi);
        case 2: return PhaseTriple(kPi / 2, 3 * kPi / 2, kPi);
        case 3: return PhaseTriple(0.0, 0.0, 0.0);
        default: return PhaseTriple(kPi, kPi, 0.0);
    }
}

// The outcome-conditioned residuals with their explicit global phases.
StateVector expected_residual(int outcome, const StateVector& psi_in) {
    switch (outcome) {
        case 1:
            return polar(1.0, -kPi / 4) *
                   apply(z_on_first(kPi / 2) * z_on_second(-kPi / 2) * cz_gate(), psi_in);
        case 2:
            return (Amplitude{-1.0, 0.0} * polar(1.0, kPi / 4)) *
                   apply(z_on_first(-kPi / 2) * z_on_second(kPi / 2) * cz_gate(), psi_in);
        case 3:
            return psi_in;
        default:
            return Amplitude{0.0, -1.0} *
                   apply(z_on_first(kPi) * z_on_second(kPi), psi_in);
    }
}

}  // namespace

TEST_CASE("encode_single maps bits to time bins") {
    StateVector zero = encode_single(StateVector::basis(qubit_labels(), "0"));
    CHECK(std::abs(zero.amplitude("0;E") - Amplitude{1.0, 0.0}) < kTolerance);

    StateVector one = encode_single(StateVector::basis(qubit_labels(), "1"));
    CHECK(std::abs(one.amplitude("1;L") - Amplitude{1.0, 0.0}) < kTolerance);

    double s = 1.0 / std::sqrt(2.0);
    StateVector plus = encode_single(StateVector(qubit_labels(), {{s, 0.0}, {s, 0.0}}));
    CHECK(std::abs(plus.amplitude("0;E") - Amplitude{s, 0.0}) < kTolerance);
    CHECK(std::abs(plus.amplitude("1;L") - Amplitude{s, 0.0}) < kTolerance);
    CHECK(std::abs(plus.amplitude("0;L")) < kTolerance);
    CHECK(std::abs(plus.amplitude("1;E")) < kTolerance);
}

TEST_CASE("encode_pair moves coefficients onto matching time bins") {
    StateVector s01 = encode_pair(StateVector::basis(two_qubit_labels(), "01"));
    CHECK(std::abs(s01.amplitude("01;EL") - Amplitude{1.0, 0.0}) < kTolerance);

    std::mt19937_64 rng = make_stream(21, 0);
    StateVector psi = random_state(two_qubit_labels(), rng);
    StateVector enc = encode_pair(psi);
    CHECK(std::abs(enc.amplitude("00;EE") - psi.amplitude("00")) < kTolerance);
    CHECK(std::abs(enc.amplitude("01;EL") - psi.amplitude("01")) < kTolerance);
    CHECK(std::abs(enc.amplitude("10;LE") - psi.amplitude("10")) < kTolerance);
    CHECK(std::abs(enc.amplitude("11;LL") - psi.amplitude("11")) < kTolerance);
    CHECK(std::abs(enc.amplitude("00;LL")) < kTolerance);
    CHECK(std::abs(enc.norm() - psi.norm()) < kTolerance);
}

TEST_CASE("mub_vector hits the basis vectors at the read-off phase triples") {
    StateVector flat = mub_vector(phi_triple(3));
    CHECK(oracles::max_state_deviation(flat, expected_phi(3)) < kTolerance);

    // (pi, pi, 0) aligns with Phi_4 up to the global phase i
    StateVector v = mub_vector(phi_triple(4));
    CHECK(oracles::max_state_deviation(Amplitude{0.0, 1.0} * v, expected_phi(4)) < kTolerance);

    std::mt19937_64 rng = make_stream(22, 0);
    for (int i = 0; i < 100; ++i) {
        StateVector random_vec = mub_vector(random_phase_triple(rng));
        for (const auto& a : random_vec.amplitudes()) {
            CHECK(std::abs(std::abs(a) - 0.5) < kTolerance);
        }
    }
}

TEST_CASE("u_phase of the zero triple is the identity") {
    UnitaryMatrix u = u_phase(PhaseTriple(0.0, 0.0, 0.0));
    UnitaryMatrix id = UnitaryMatrix::identity(4);
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            CHECK(std::abs(u(r, c) - id(r, c)) < kTolerance);
        }
    }
}

TEST_CASE("entangling u_phase factors into local rotations times cz") {
    std::mt19937_64 rng = make_stream(23, 0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    for (int i = 0; i < 100; ++i) {
        double p1 = angle(rng);
        double p2 = angle(rng);
        UnitaryMatrix u = u_phase(PhaseTriple(p1, p2, p1 + p2 + kPi));
        UnitaryMatrix factored = z_on_first(p2) * z_on_second(p1) * cz_gate();
        for (std::size_t r = 0; r < 4; ++r) {
            for (std::size_t c = 0; c < 4; ++c) {
                CHECK(std::abs(u(r, c) - factored(r, c)) < kTolerance);
            }
        }
        // same statement at the level of basis-state actions
        for (const auto& label : two_qubit_labels()) {
            StateVector b = StateVector::basis(two_qubit_labels(), label);
            CHECK(std::abs(fidelity_up_to_global_phase(apply(u, b), apply(factored, b)) - 1.0) <
                  kTolerance);
        }
    }
}

TEST_CASE("detecting a mub vector imposes exactly u_phase on the sources") {
    std::mt19937_64 rng = make_stream(24, 0);
    for (int i = 0; i < 100; ++i) {
        PhaseTriple p = random_phase_triple(rng);
        StateVector psi = random_state(two_qubit_labels(), rng);
        ProjectionResult proj = project_partial(mub_vector(p), encode_pair(psi), 1);
        REQUIRE(proj.residual.has_value());
        CHECK(std::abs(proj.probability - 0.25) < kTolerance);
        StateVector expected = apply(u_phase(p), psi);
        CHECK(std::abs(fidelity_up_to_global_phase(*proj.residual, expected) - 1.0) < kTolerance);
    }
}

TEST_CASE("is_entangling separates the two protocol families") {
    CHECK(is_entangling(PhaseTriple(kPi / 2, -kPi / 2, kPi)));
    CHECK_FALSE(is_entangling(PhaseTriple(0.0, 0.0, 0.0)));
    CHECK_THROWS_AS(is_entangling(PhaseTriple(0.0, 0.0, kPi / 3)),
                    PhaseTripleNotInProtocolFamily);

    for (int i = 1; i <= 4; ++i) {
        CHECK(is_entangling(phi_triple(i)) == (i <= 2));
    }

    // angle comparisons run at the looser 1e-9 tolerance
    CHECK(is_entangling(PhaseTriple(0.0, 0.0, kPi + 5e-10)));
    CHECK_FALSE(is_entangling(PhaseTriple(0.0, 0.0, 2.0 * kPi - 5e-10)));
}

TEST_CASE("phase triples canonicalize into [0, 2pi)") {
    PhaseTriple p(-kPi / 2, 5.0 * kPi, 0.0);
    CHECK(p.phi1 == doctest::Approx(3.0 * kPi / 2).epsilon(1e-12));
    CHECK(p.phi2 == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(p.phi3 == 0.0);
    CHECK_THROWS_AS(PhaseTriple(std::nan(""), 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("outcome labels are restricted to 1..4") {
    CHECK_THROWS_AS(OutcomeLabel(0), std::invalid_argument);
    CHECK_THROWS_AS(OutcomeLabel(5), std::invalid_argument);
    CHECK(OutcomeLabel(2).index() == 2);
}

TEST_CASE("partial Bell basis reproduces the expected component table") {
    const MeasurementBasis& basis = partial_bell_basis();
    REQUIRE(basis.vectors.size() == 4);
    for (int i = 1; i <= 4; ++i) {
        CHECK(oracles::max_state_deviation(basis.vectors[static_cast<std::size_t>(i - 1)],
                                           expected_phi(i)) < kTolerance);
    }
    CHECK(basis.classification[0] == BasisVectorKind::entangled);
    CHECK(basis.classification[1] == BasisVectorKind::entangled);
    CHECK(basis.classification[2] == BasisVectorKind::product);
    CHECK(basis.classification[3] == BasisVectorKind::product);

    // the spelled-out amplitude from the Phi_1 line: (1/2)e^{i pi/4}(-i) on EL
    Amplitude el = basis.vectors[0].amplitude("EL");
    CHECK(std::abs(el - polar(0.5, kPi / 4) * Amplitude{0.0, -1.0}) < kTolerance);
}

TEST_CASE("partial Bell basis is orthonormal and mutually unbiased") {
    const MeasurementBasis& basis = partial_bell_basis();
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            Amplitude g = inner(basis.vectors[i], basis.vectors[j]);
            Amplitude expected = (i == j) ? Amplitude{1.0, 0.0} : Amplitude{0.0, 0.0};
            CHECK(std::abs(g - expected) < kTolerance);
        }
        for (const auto& label : two_photon_labels()) {
            CHECK(std::abs(std::abs(basis.vectors[i].amplitude(label)) - 0.5) < kTolerance);
        }
    }
}

TEST_CASE("stored x/y states generate the basis") {
    const MeasurementBasis& basis = partial_bell_basis();
    double s = 1.0 / std::sqrt(2.0);
    CHECK(oracles::max_state_deviation(basis.x1, StateVector(photon_labels(), {{s, 0.0}, {s, 0.0}})) <
          kTolerance);
    CHECK(oracles::max_state_deviation(basis.y1, StateVector(photon_labels(), {{s, 0.0}, {-s, 0.0}})) <
          kTolerance);
    CHECK(oracles::max_state_deviation(basis.x2, basis.x1) < kTolerance);
    CHECK(oracles::max_state_deviation(basis.y2, StateVector(photon_labels(), {{0.0, s}, {0.0, -s}})) <
          kTolerance);

    Amplitude inv_sqrt2{s, 0.0};
    StateVector phi1 = inv_sqrt2 * (tensor(basis.x1, basis.y2) + tensor(basis.y1, basis.x2));
    StateVector phi2 = inv_sqrt2 * (tensor(basis.x1, basis.y2) - tensor(basis.y1, basis.x2));
    CHECK(oracles::max_state_deviation(phi1, basis.vectors[0]) < kTolerance);
    CHECK(oracles::max_state_deviation(phi2, basis.vectors[1]) < kTolerance);
    CHECK(oracles::max_state_deviation(tensor(basis.x1, basis.x2), basis.vectors[2]) < kTolerance);
    CHECK(oracles::max_state_deviation(tensor(basis.y1, basis.y2), basis.vectors[3]) < kTolerance);
}

TEST_CASE("decompose on a basis input returns the input on every branch") {
    auto branches = decompose(encode_pair(StateVector::basis(two_qubit_labels(), "00")));
    REQUIRE(branches.size() == 4);
    StateVector s00 = StateVector::basis(two_qubit_labels(), "00");
    for (const auto& branch : branches) {
        CHECK(std::abs(branch.probability - 0.25) < kTolerance);
        CHECK(std::abs(fidelity_up_to_global_phase(branch.residual, s00) - 1.0) < kTolerance);
    }
}

TEST_CASE("decompose residuals carry the expected dressings and phases") {
    std::mt19937_64 rng = make_stream(25, 0);
    for (int i = 0; i < 100; ++i) {
        StateVector psi = random_state(two_qubit_labels(), rng);
        auto branches = decompose(encode_pair(psi));
        for (int outcome = 1; outcome <= 4; ++outcome) {
            const auto& branch = branches[static_cast<std::size_t>(outcome - 1)];
            CHECK(branch.outcome == OutcomeLabel(outcome));
            CHECK(std::abs(branch.probability - 0.25) < kTolerance);
            // componentwise, including the global phase of the projection
            CHECK(oracles::max_state_deviation(branch.residual,
                                               expected_residual(outcome, psi)) < kTolerance);
        }
        // outcome 3 returns the input itself
        CHECK(oracles::max_state_deviation(branches[2].residual, psi) < kTolerance);
    }
}

TEST_CASE("decompose agrees with the brute-force projection oracle") {
    std::mt19937_64 rng = make_stream(26, 0);
    const MeasurementBasis& basis = partial_bell_basis();
    StateVector psi = random_state(two_qubit_labels(), rng);
    StateVector enc = encode_pair(psi);
    auto branches = decompose(enc);
    for (std::size_t i = 0; i < 4; ++i) {
        oracles::BruteProjection brute = oracles::project_second_subsystem(basis.vectors[i], enc);
        CHECK(std::abs(branches[i].probability - brute.probability) < kTolerance);
        double scale = 1.0 / std::sqrt(brute.probability);
        for (std::size_t k = 0; k < 4; ++k) {
            CHECK(std::abs(branches[i].residual[k] - scale * brute.raw[k]) < kTolerance);
        }
    }
}

TEST_CASE("decomposition branches reassemble the encoded state") {
    std::mt19937_64 rng = make_stream(27, 0);
    for (int i = 0; i < 100; ++i) {
        StateVector psi = random_state(two_qubit_labels(), rng);
        StateVector enc = encode_pair(psi);
        auto branches = decompose(enc);
        const MeasurementBasis& basis = partial_bell_basis();
        StateVector rebuilt =
            Amplitude{0.5, 0.0} * tensor(branches[0].residual, basis.vectors[0], ";");
        for (std::size_t k = 1; k < 4; ++k) {
            rebuilt = rebuilt +
                      Amplitude{0.5, 0.0} * tensor(branches[k].residual, basis.vectors[k], ";");
        }
        CHECK(oracles::max_state_deviation(rebuilt, enc) < kTolerance);
    }
}

TEST_CASE("decompose rejects states outside the encoded subspace") {
    std::mt19937_64 rng = make_stream(28, 0);
    std::vector<std::string> joint_labels;
    for (const auto& a : two_qubit_labels()) {
        for (const auto& p : two_photon_labels()) joint_labels.push_back(a + ";" + p);
    }
    StateVector off_subspace = random_state(joint_labels, rng);
    CHECK_THROWS_AS(decompose(off_subspace), std::invalid_argument);
    CHECK_THROWS_AS(decompose(random_state(two_qubit_labels(), rng)), std::invalid_argument);
}

TEST_CASE("corrections complete the gate or restore the input") {
    Correction c3 = correction_unitary(OutcomeLabel(3));
    CHECK_FALSE(c3.gate_succeeded);
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            CHECK(std::abs(c3.unitary(r, c) - UnitaryMatrix::identity(4)(r, c)) < kTolerance);
        }
    }

    Correction c4 = correction_unitary(OutcomeLabel(4));
    CHECK_FALSE(c4.gate_succeeded);
    UnitaryMatrix sign_flip = kron(z_rotation(std::numbers::pi), z_rotation(std::numbers::pi));
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            CHECK(std::abs(c4.unitary(r, c) - sign_flip(r, c)) < kTolerance);
        }
    }

    CHECK(correction_unitary(OutcomeLabel(1)).gate_succeeded);
    CHECK(correction_unitary(OutcomeLabel(2)).gate_succeeded);

    std::mt19937_64 rng = make_stream(29, 0);
    for (int i = 0; i < 100; ++i) {
        StateVector psi = random_state(two_qubit_labels(), rng);
        StateVector target = apply(cz_gate(), psi);
        auto branches = decompose(encode_pair(psi));
        for (int outcome = 1; outcome <= 4; ++outcome) {
            Correction c = correction_unitary(OutcomeLabel(outcome));
            StateVector corrected =
                apply(c.unitary, branches[static_cast<std::size_t>(outcome - 1)].residual);
            const StateVector& reference = c.gate_succeeded ? target : psi;
            CHECK(std::abs(fidelity_up_to_global_phase(corrected, reference) - 1.0) < kTolerance);
        }
    }
}

TEST_CASE("correction names are stable identifiers") {
    CHECK(correction_name(OutcomeLabel(1)) == "Z1(-pi/2) Z2(+pi/2)");
    CHECK(correction_name(OutcomeLabel(2)) == "Z1(+pi/2) Z2(-pi/2)");
    CHECK(correction_name(OutcomeLabel(3)) == "identity");
    CHECK(correction_name(OutcomeLabel(4)) == "Z1(pi) Z2(pi)");
}
