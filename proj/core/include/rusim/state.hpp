// state.hpp
// Exact complex linear algebra for small labeled tensor-product Hilbert spaces:
// state vectors, unitaries, inner products and projective measurement.

#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rusim {

using Amplitude = std::complex<double>;

// Global tolerance for exact-algebra checks (norms, unitarity, fidelities).
inline constexpr double kTolerance = 1e-12;

// Registers in this artifact never exceed 16 amplitudes; larger tensor
// products are rejected.
inline constexpr std::size_t kMaxAmplitudes = 16;

// Squared-norm threshold below which a projection is reported as vanishing.
inline constexpr double kVanishingProbability = 1e-24;

// Separator between subsystem parts in joint basis labels, e.g. "00;EE".
inline constexpr char kSubsystemSeparator = ';';

// Dense complex amplitude vector over an ordered list of unique basis labels.
// Values are immutable after construction; all amplitudes must be finite.
class StateVector {
public:
    StateVector(std::vector<std::string> basis_labels, std::vector<Amplitude> amplitudes);

    // Basis state |which> over the given labels.
    static StateVector basis(std::vector<std::string> basis_labels, std::string_view which);

    std::size_t size() const { return amplitudes_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<Amplitude>& amplitudes() const { return amplitudes_; }
    const Amplitude& operator[](std::size_t i) const { return amplitudes_[i]; }

    // Amplitude on a named basis label; throws std::invalid_argument if the
    // label is not part of the basis.
    Amplitude amplitude(std::string_view label) const;

    double norm_squared() const;
    double norm() const;
    bool is_normalized(double tol = kTolerance) const;
    StateVector normalized() const;

    bool same_basis(const StateVector& other) const { return labels_ == other.labels_; }

private:
    std::vector<std::string> labels_;
    std::vector<Amplitude> amplitudes_;
};

StateVector operator+(const StateVector& a, const StateVector& b);
StateVector operator-(const StateVector& a, const StateVector& b);
StateVector operator*(const Amplitude& z, const StateVector& s);

// dim x dim complex matrix, checked unitary (max |U†U - I| < kTolerance) at
// construction. Entries are stored row-major; (r, c) = <r|U|c>.
class UnitaryMatrix {
public:
    UnitaryMatrix(std::size_t dim, std::vector<Amplitude> entries);

    static UnitaryMatrix identity(std::size_t dim);
    // diag(entries); every entry must have unit modulus.
    static UnitaryMatrix diagonal(std::vector<Amplitude> entries);

    std::size_t dim() const { return dim_; }
    const Amplitude& operator()(std::size_t r, std::size_t c) const {
        return entries_[r * dim_ + c];
    }
    UnitaryMatrix adjoint() const;

private:
    std::size_t dim_;
    std::vector<Amplitude> entries_;
};

UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b);

// Kronecker product; index (i * dim_b + j) pairs row i of a with row j of b,
// matching the lexicographic label order used throughout.
UnitaryMatrix kron(const UnitaryMatrix& a, const UnitaryMatrix& b);

// |a> ⊗ |b> with concatenated labels. A non-empty separator marks a subsystem
// boundary that project_partial can split on (e.g. "00" + ";" + "EE").
// Both inputs must be normalized; rejects results above kMaxAmplitudes.
StateVector tensor(const StateVector& a, const StateVector& b,
                   const std::string& separator = "");

// U|s>; dimensions must match. Norm is preserved within kTolerance.
StateVector apply(const UnitaryMatrix& u, const StateVector& s);

// <a|b>, conjugate-linear in the first argument. Bases must be identical.
Amplitude inner(const StateVector& a, const StateVector& b);

struct ProjectionResult {
    // Normalized remainder; empty when the overlap vanishes.
    std::optional<StateVector> residual;
    double probability = 0.0;
};

// Projects |measured><measured| (x) I onto the named subsystem of a joint
// state whose labels are kSubsystemSeparator-joined parts. Returns the
// normalized residual on the remaining parts and the outcome probability.
ProjectionResult project_partial(const StateVector& measured, const StateVector& joint,
                                 std::size_t measured_subsystem);

// |<a|b>|^2 for normalized states on the same basis; 1 iff a = e^{i theta} b.
double fidelity_up_to_global_phase(const StateVector& a, const StateVector& b);

}  // namespace rusim
