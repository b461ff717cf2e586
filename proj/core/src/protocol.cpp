#include "rusim/protocol.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace rusim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double phi) {
    if (!std::isfinite(phi)) {
        throw std::invalid_argument("PhaseTriple: phase must be finite");
    }
    double w = std::fmod(phi, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

Amplitude phase(double phi) { return std::polar(1.0, phi); }

// Distance between two angles on the circle.
double circular_distance(double a, double b) {
    double d = std::abs(wrap_angle(a) - wrap_angle(b));
    return std::min(d, kTwoPi - d);
}

StateVector photon_state(Amplitude e, Amplitude l) {
    return StateVector(photon_labels(), {e, l});
}

}  // namespace

PhaseTriple::PhaseTriple(double p1, double p2, double p3)
    : phi1(wrap_angle(p1)), phi2(wrap_angle(p2)), phi3(wrap_angle(p3)) {}

OutcomeLabel::OutcomeLabel(int index) : index_(index) {
    if (index < 1 || index > 4) {
        throw std::invalid_argument("OutcomeLabel: index must be in 1..4");
    }
}

const std::vector<std::string>& qubit_labels() {
    static const std::vector<std::string> labels{"0", "1"};
    return labels;
}

const std::vector<std::string>& two_qubit_labels() {
    static const std::vector<std::string> labels{"00", "01", "10", "11"};
    return labels;
}

const std::vector<std::string>& photon_labels() {
    static const std::vector<std::string> labels{"E", "L"};
    return labels;
}

const std::vector<std::string>& two_photon_labels() {
    static const std::vector<std::string> labels{"EE", "EL", "LE", "LL"};
    return labels;
}

UnitaryMatrix cz_gate() {
    return UnitaryMatrix::diagonal({{1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {-1.0, 0.0}});
}

UnitaryMatrix z_rotation(double phi) {
    return UnitaryMatrix::diagonal({{1.0, 0.0}, phase(-phi)});
}

UnitaryMatrix z_on_first(double phi) { return kron(z_rotation(phi), UnitaryMatrix::identity(2)); }

UnitaryMatrix z_on_second(double phi) { return kron(UnitaryMatrix::identity(2), z_rotation(phi)); }

StateVector encode_single(const StateVector& s) {
    if (s.labels() != qubit_labels()) {
        throw std::invalid_argument("encode_single: input must live on {0, 1}");
    }
    if (!s.is_normalized()) {
        throw std::invalid_argument("encode_single: input must be normalized");
    }
    std::vector<std::string> labels{"0;E", "0;L", "1;E", "1;L"};
    std::vector<Amplitude> amps{s[0], {0.0, 0.0}, {0.0, 0.0}, s[1]};
    return StateVector(std::move(labels), std::move(amps));
}

StateVector encode_pair(const StateVector& s) {
    if (s.labels() != two_qubit_labels()) {
        throw std::invalid_argument("encode_pair: input must live on {00, 01, 10, 11}");
    }
    if (!s.is_normalized()) {
        throw std::invalid_argument("encode_pair: input must be normalized");
    }
    const auto& photons = two_photon_labels();
    std::vector<std::string> labels;
    std::vector<Amplitude> amps;
    labels.reserve(16);
    amps.reserve(16);
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t p = 0; p < 4; ++p) {
            labels.push_back(two_qubit_labels()[a] + ";" + photons[p]);
            // |xy> carries its photon pair only on the matching time bins
            amps.push_back(a == p ? s[a] : Amplitude{0.0, 0.0});
        }
    }
    return StateVector(std::move(labels), std::move(amps));
}

StateVector mub_vector(const PhaseTriple& p) {
    return StateVector(two_photon_labels(),
                       {{0.5, 0.0}, 0.5 * phase(p.phi1), 0.5 * phase(p.phi2), 0.5 * phase(p.phi3)});
}

UnitaryMatrix u_phase(const PhaseTriple& p) {
    return UnitaryMatrix::diagonal({{1.0, 0.0}, phase(-p.phi1), phase(-p.phi2), phase(-p.phi3)});
}

bool is_entangling(const PhaseTriple& p) {
    double delta = p.phi3 - p.phi1 - p.phi2;
    if (circular_distance(delta, std::numbers::pi) <= kAngleTolerance) return true;
    if (circular_distance(delta, 0.0) <= kAngleTolerance) return false;
    throw PhaseTripleNotInProtocolFamily(
        "phi3 - phi1 - phi2 is neither 0 nor pi (mod 2pi)");
}

const MeasurementBasis& partial_bell_basis() {
    static const MeasurementBasis basis = [] {
        const double s = 1.0 / std::sqrt(2.0);
        StateVector x1 = photon_state({s, 0.0}, {s, 0.0});
        StateVector y1 = photon_state({s, 0.0}, {-s, 0.0});
        StateVector x2 = x1;
        StateVector y2 = photon_state({0.0, s}, {0.0, -s});

        const Amplitude inv_sqrt2{s, 0.0};
        StateVector phi1 = inv_sqrt2 * (tensor(x1, y2) + tensor(y1, x2));
        StateVector phi2 = inv_sqrt2 * (tensor(x1, y2) - tensor(y1, x2));
        StateVector phi3 = tensor(x1, x2);
        StateVector phi4 = tensor(y1, y2);

        MeasurementBasis b{
            {std::move(phi1), std::move(phi2), std::move(phi3), std::move(phi4)},
            {BasisVectorKind::entangled, BasisVectorKind::entangled, BasisVectorKind::product,
             BasisVectorKind::product},
            std::move(x1), std::move(y1), std::move(x2), std::move(y2)};

        // orthonormal and mutually unbiased, checked once at startup
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                Amplitude g = inner(b.vectors[i], b.vectors[j]);
                Amplitude expected = (i == j) ? Amplitude{1.0, 0.0} : Amplitude{0.0, 0.0};
                if (std::abs(g - expected) >= kTolerance) {
                    throw std::logic_error("partial_bell_basis: basis is not orthonormal");
                }
            }
            for (const auto& label : two_photon_labels()) {
                if (std::abs(std::abs(b.vectors[i].amplitude(label)) - 0.5) >= kTolerance) {
                    throw std::logic_error("partial_bell_basis: basis is not mutually unbiased");
                }
            }
        }
        return b;
    }();
    return basis;
}

std::vector<DecompositionEntry> decompose(const StateVector& enc) {
    if (!enc.is_normalized()) {
        throw std::invalid_argument("decompose: input must be normalized");
    }
    // The input must be an encode_pair output: the full 16-label joint basis
    // with support only where the photon bins match the source bits.
    const auto& atoms = two_qubit_labels();
    const auto& photons = two_photon_labels();
    std::size_t idx = 0;
    if (enc.size() != 16) {
        throw std::invalid_argument("decompose: input is not an encoded pair state");
    }
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t p = 0; p < 4; ++p, ++idx) {
            if (enc.labels()[idx] != atoms[a] + ";" + photons[p]) {
                throw std::invalid_argument("decompose: input is not an encoded pair state");
            }
            if (a != p && std::abs(enc[idx]) >= kTolerance) {
                throw std::invalid_argument(
                    "decompose: input has support outside the encoded subspace");
            }
        }
    }

    const MeasurementBasis& basis = partial_bell_basis();
    std::vector<DecompositionEntry> entries;
    entries.reserve(4);
    for (int i = 0; i < 4; ++i) {
        ProjectionResult proj = project_partial(basis.vectors[static_cast<std::size_t>(i)], enc, 1);
        if (!proj.residual.has_value()) {
            throw std::logic_error("decompose: vanishing branch in a complete measurement");
        }
        entries.push_back(
            {OutcomeLabel(i + 1), proj.probability, std::move(*proj.residual)});
    }
    return entries;
}

Correction correction_unitary(OutcomeLabel o) {
    const double half_pi = std::numbers::pi / 2.0;
    switch (o.index()) {
        case 1:
            return {z_on_first(-half_pi) * z_on_second(half_pi), true};
        case 2:
            return {z_on_first(half_pi) * z_on_second(-half_pi), true};
        case 3:
            return {UnitaryMatrix::identity(4), false};
        default:
            return {z_on_first(std::numbers::pi) * z_on_second(std::numbers::pi), false};
    }
}

std::string correction_name(OutcomeLabel o) {
    switch (o.index()) {
        case 1:
            return "Z1(-pi/2) Z2(+pi/2)";
        case 2:
            return "Z1(+pi/2) Z2(-pi/2)";
        case 3:
            return "identity";
        default:
            return "Z1(pi) Z2(pi)";
    }
}

}  // namespace rusim
