#include "rusim/state.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <utility>

namespace rusim {

namespace {

void require_finite(const std::vector<Amplitude>& values, const char* what) {
    for (const auto& v : values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw std::invalid_argument(std::string(what) + " contains a non-finite amplitude");
        }
    }
}

std::vector<std::string> split_label(const std::string& label) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = label.find(kSubsystemSeparator, start);
        if (pos == std::string::npos) {
            parts.push_back(label.substr(start));
            return parts;
        }
        parts.push_back(label.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string join_parts(const std::vector<std::string>& parts, std::size_t skip) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i == skip) continue;
        if (!out.empty()) out += kSubsystemSeparator;
        out += parts[i];
    }
    return out;
}

}  // namespace

StateVector::StateVector(std::vector<std::string> basis_labels, std::vector<Amplitude> amplitudes)
    : labels_(std::move(basis_labels)), amplitudes_(std::move(amplitudes)) {
    if (labels_.size() != amplitudes_.size()) {
        throw std::invalid_argument("StateVector: label/amplitude length mismatch");
    }
    if (labels_.empty()) {
        throw std::invalid_argument("StateVector: empty basis");
    }
    std::set<std::string> unique(labels_.begin(), labels_.end());
    if (unique.size() != labels_.size()) {
        throw std::invalid_argument("StateVector: duplicate basis labels");
    }
    require_finite(amplitudes_, "StateVector");
}

StateVector StateVector::basis(std::vector<std::string> basis_labels, std::string_view which) {
    std::vector<Amplitude> amps(basis_labels.size(), Amplitude{0.0, 0.0});
    auto it = std::find(basis_labels.begin(), basis_labels.end(), which);
    if (it == basis_labels.end()) {
        throw std::invalid_argument("StateVector::basis: unknown label '" + std::string(which) + "'");
    }
    amps[static_cast<std::size_t>(it - basis_labels.begin())] = Amplitude{1.0, 0.0};
    return StateVector(std::move(basis_labels), std::move(amps));
}

Amplitude StateVector::amplitude(std::string_view label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw std::invalid_argument("StateVector::amplitude: unknown label '" + std::string(label) + "'");
    }
    return amplitudes_[static_cast<std::size_t>(it - labels_.begin())];
}

double StateVector::norm_squared() const {
    double total = 0.0;
    for (const auto& a : amplitudes_) total += std::norm(a);
    return total;
}

double StateVector::norm() const { return std::sqrt(norm_squared()); }

bool StateVector::is_normalized(double tol) const {
    return std::abs(norm_squared() - 1.0) <= tol;
}

StateVector StateVector::normalized() const {
    double n = norm();
    if (n <= 0.0) {
        throw std::domain_error("StateVector::normalized: zero norm");
    }
    std::vector<Amplitude> amps = amplitudes_;
    for (auto& a : amps) a /= n;
    return StateVector(labels_, std::move(amps));
}

StateVector operator+(const StateVector& a, const StateVector& b) {
    if (!a.same_basis(b)) {
        throw std::invalid_argument("StateVector addition: basis mismatch");
    }
    std::vector<Amplitude> amps(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) amps[i] = a[i] + b[i];
    return StateVector(a.labels(), std::move(amps));
}

StateVector operator-(const StateVector& a, const StateVector& b) {
    return a + (Amplitude{-1.0, 0.0} * b);
}

StateVector operator*(const Amplitude& z, const StateVector& s) {
    std::vector<Amplitude> amps(s.amplitudes());
    for (auto& a : amps) a *= z;
    return StateVector(s.labels(), std::move(amps));
}

UnitaryMatrix::UnitaryMatrix(std::size_t dim, std::vector<Amplitude> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (dim_ == 0 || entries_.size() != dim_ * dim_) {
        throw std::invalid_argument("UnitaryMatrix: entry count does not match dimension");
    }
    require_finite(entries_, "UnitaryMatrix");
    // max |U†U - I| must stay below kTolerance
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            Amplitude sum{0.0, 0.0};
            for (std::size_t k = 0; k < dim_; ++k) {
                sum += std::conj((*this)(k, r)) * (*this)(k, c);
            }
            Amplitude expected = (r == c) ? Amplitude{1.0, 0.0} : Amplitude{0.0, 0.0};
            if (std::abs(sum - expected) >= kTolerance) {
                throw std::invalid_argument("UnitaryMatrix: matrix is not unitary within tolerance");
            }
        }
    }
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t dim) {
    std::vector<Amplitude> entries(dim * dim, Amplitude{0.0, 0.0});
    for (std::size_t i = 0; i < dim; ++i) entries[i * dim + i] = Amplitude{1.0, 0.0};
    return UnitaryMatrix(dim, std::move(entries));
}

UnitaryMatrix UnitaryMatrix::diagonal(std::vector<Amplitude> diag) {
    std::size_t dim = diag.size();
    std::vector<Amplitude> entries(dim * dim, Amplitude{0.0, 0.0});
    for (std::size_t i = 0; i < dim; ++i) entries[i * dim + i] = diag[i];
    return UnitaryMatrix(dim, std::move(entries));
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
    std::vector<Amplitude> entries(dim_ * dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            entries[r * dim_ + c] = std::conj((*this)(c, r));
        }
    }
    return UnitaryMatrix(dim_, std::move(entries));
}

UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("UnitaryMatrix product: dimension mismatch");
    }
    std::size_t dim = a.dim();
    std::vector<Amplitude> entries(dim * dim, Amplitude{0.0, 0.0});
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t k = 0; k < dim; ++k) {
            Amplitude ark = a(r, k);
            for (std::size_t c = 0; c < dim; ++c) {
                entries[r * dim + c] += ark * b(k, c);
            }
        }
    }
    return UnitaryMatrix(dim, std::move(entries));
}

UnitaryMatrix kron(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    std::size_t dim = a.dim() * b.dim();
    std::vector<Amplitude> entries(dim * dim);
    for (std::size_t ra = 0; ra < a.dim(); ++ra) {
        for (std::size_t rb = 0; rb < b.dim(); ++rb) {
            for (std::size_t ca = 0; ca < a.dim(); ++ca) {
                for (std::size_t cb = 0; cb < b.dim(); ++cb) {
                    entries[(ra * b.dim() + rb) * dim + (ca * b.dim() + cb)] = a(ra, ca) * b(rb, cb);
                }
            }
        }
    }
    return UnitaryMatrix(dim, std::move(entries));
}

StateVector tensor(const StateVector& a, const StateVector& b, const std::string& separator) {
    if (a.size() * b.size() > kMaxAmplitudes) {
        throw std::length_error("tensor: product register exceeds the 16-amplitude cap");
    }
    if (!a.is_normalized() || !b.is_normalized()) {
        throw std::invalid_argument("tensor: inputs must be normalized");
    }
    std::vector<std::string> labels;
    std::vector<Amplitude> amps;
    labels.reserve(a.size() * b.size());
    amps.reserve(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            labels.push_back(a.labels()[i] + separator + b.labels()[j]);
            amps.push_back(a[i] * b[j]);
        }
    }
    return StateVector(std::move(labels), std::move(amps));
}

StateVector apply(const UnitaryMatrix& u, const StateVector& s) {
    if (u.dim() != s.size()) {
        throw std::invalid_argument("apply: matrix/state dimension mismatch");
    }
    std::vector<Amplitude> amps(s.size(), Amplitude{0.0, 0.0});
    for (std::size_t r = 0; r < s.size(); ++r) {
        for (std::size_t c = 0; c < s.size(); ++c) {
            amps[r] += u(r, c) * s[c];
        }
    }
    return StateVector(s.labels(), std::move(amps));
}

Amplitude inner(const StateVector& a, const StateVector& b) {
    if (!a.same_basis(b)) {
        throw std::invalid_argument("inner: basis mismatch");
    }
    Amplitude sum{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum += std::conj(a[i]) * b[i];
    }
    return sum;
}

ProjectionResult project_partial(const StateVector& measured, const StateVector& joint,
                                 std::size_t measured_subsystem) {
    if (!measured.is_normalized()) {
        throw std::invalid_argument("project_partial: measured state must be normalized");
    }

    // Split every joint label into parts and index the residual basis in
    // order of first appearance.
    std::vector<std::string> residual_labels;
    std::vector<Amplitude> raw;
    std::set<std::string> seen_measured_parts;
    for (std::size_t j = 0; j < joint.size(); ++j) {
        auto parts = split_label(joint.labels()[j]);
        if (measured_subsystem >= parts.size() || parts.size() < 2) {
            throw std::invalid_argument("project_partial: unknown subsystem id");
        }
        const std::string& mpart = parts[measured_subsystem];
        seen_measured_parts.insert(mpart);
        std::string rlabel = join_parts(parts, measured_subsystem);
        auto it = std::find(residual_labels.begin(), residual_labels.end(), rlabel);
        std::size_t ridx;
        if (it == residual_labels.end()) {
            ridx = residual_labels.size();
            residual_labels.push_back(rlabel);
            raw.push_back(Amplitude{0.0, 0.0});
        } else {
            ridx = static_cast<std::size_t>(it - residual_labels.begin());
        }
        raw[ridx] += std::conj(measured.amplitude(mpart)) * joint[j];
    }

    std::set<std::string> measured_set(measured.labels().begin(), measured.labels().end());
    if (measured_set != seen_measured_parts) {
        throw std::invalid_argument(
            "project_partial: measured basis does not match the subsystem's labels");
    }

    double probability = 0.0;
    for (const auto& r : raw) probability += std::norm(r);

    ProjectionResult result;
    if (probability < kVanishingProbability) {
        result.probability = 0.0;
        return result;
    }
    result.probability = probability;
    double scale = 1.0 / std::sqrt(probability);
    for (auto& r : raw) r *= scale;
    result.residual = StateVector(std::move(residual_labels), std::move(raw));
    return result;
}

double fidelity_up_to_global_phase(const StateVector& a, const StateVector& b) {
    if (!a.is_normalized() || !b.is_normalized()) {
        throw std::invalid_argument("fidelity_up_to_global_phase: states must be normalized");
    }
    return std::norm(inner(a, b));
}

}  // namespace rusim
