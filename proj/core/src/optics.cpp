#include "rusim/optics.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace rusim {

namespace {

// i^k for integer k.
Amplitude i_power(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

void require_two_photon_timebin(const StateVector& photonic, const char* where) {
    if (photonic.labels() != two_photon_labels()) {
        throw std::invalid_argument(std::string(where) + ": input must live on {EE, EL, LE, LL}");
    }
    if (!photonic.is_normalized()) {
        throw std::invalid_argument(std::string(where) + ": input must be normalized");
    }
}

// The two occupied mode indices of a two-photon configuration, m1 <= m2.
std::pair<int, int> occupied_pair(const FockState& f) {
    int first = -1, second = -1;
    const auto& occ = f.occupations();
    for (int m = 0; m < f.modes(); ++m) {
        for (int k = 0; k < occ[static_cast<std::size_t>(m)]; ++k) {
            if (first < 0) {
                first = m;
            } else {
                second = m;
            }
        }
    }
    return {first, second};
}

FockState two_photon_config(int modes, int m1, int m2) {
    std::vector<int> occ(static_cast<std::size_t>(modes), 0);
    occ[static_cast<std::size_t>(m1)] += 1;
    occ[static_cast<std::size_t>(m2)] += 1;
    return FockState(std::move(occ));
}

ClickPattern pattern_from_config(const FockState& f, int first_detector_id) {
    ClickPattern p;
    const auto& occ = f.occupations();
    for (int m = 0; m < f.modes(); ++m) {
        if (occ[static_cast<std::size_t>(m)] > 0) {
            p.counts[first_detector_id + m] = occ[static_cast<std::size_t>(m)];
        }
    }
    return p;
}

std::map<ClickPattern, double> pattern_distribution(const FockAmplitudes& amps,
                                                    int first_detector_id) {
    std::map<ClickPattern, double> dist;
    for (const auto& [config, amp] : amps) {
        dist[pattern_from_config(config, first_detector_id)] += std::norm(amp);
    }
    return dist;
}

template <typename Classifier>
std::array<double, 4> outcome_distribution(const std::map<ClickPattern, double>& patterns,
                                           Classifier classify) {
    std::array<double, 4> dist{0.0, 0.0, 0.0, 0.0};
    for (const auto& [pattern, prob] : patterns) {
        dist[static_cast<std::size_t>(classify(pattern).index() - 1)] += prob;
    }
    return dist;
}

}  // namespace

FockState::FockState(std::vector<int> occupations) : occ_(std::move(occupations)) {
    if (occ_.empty()) {
        throw std::invalid_argument("FockState: at least one mode required");
    }
    for (int n : occ_) {
        if (n < 0) throw std::invalid_argument("FockState: negative occupation");
    }
}

int FockState::photon_count() const {
    int total = 0;
    for (int n : occ_) total += n;
    return total;
}

double FockState::normalization() const {
    double f = 1.0;
    for (int n : occ_) {
        for (int k = 2; k <= n; ++k) f *= k;
    }
    return std::sqrt(f);
}

std::string FockState::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < occ_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(occ_[i]);
    }
    return s + ")";
}

int ClickPattern::total_photons() const {
    int total = 0;
    for (const auto& [id, count] : counts) total += count;
    return total;
}

std::set<int> ClickPattern::fired() const {
    std::set<int> ids;
    for (const auto& [id, count] : counts) ids.insert(id);
    return ids;
}

std::string ClickPattern::to_string() const {
    std::string s = "{";
    bool first = true;
    for (const auto& [id, count] : counts) {
        if (!first) s += ", ";
        first = false;
        s += "d" + std::to_string(id) + ":" + std::to_string(count);
    }
    return s + "}";
}

ModeUnitary bell_multiport(int n) {
    if (n != 4) {
        throw std::invalid_argument("bell_multiport: only the 4x4 network is supported");
    }
    std::vector<Amplitude> entries(16);
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            entries[static_cast<std::size_t>(r * 4 + c)] = 0.5 * i_power(r * c);
        }
    }
    return ModeUnitary(4, std::move(entries));
}

ModeUnitary beam_splitter_50_50() {
    const double s = 1.0 / std::sqrt(2.0);
    return ModeUnitary(2, {{s, 0.0}, {0.0, s}, {0.0, s}, {s, 0.0}});
}

FockAmplitudes scatter_two_photons(const ModeUnitary& u, const FockState& input) {
    if (input.photon_count() != 2) {
        throw std::invalid_argument("scatter_two_photons: input must carry exactly 2 photons");
    }
    if (input.modes() != static_cast<int>(u.dim())) {
        throw std::invalid_argument("scatter_two_photons: mode count mismatch");
    }
    auto [n1, n2] = occupied_pair(input);
    double in_norm = input.normalization();

    FockAmplitudes out;
    for (int m1 = 0; m1 < input.modes(); ++m1) {
        for (int m2 = m1; m2 < input.modes(); ++m2) {
            FockState config = two_photon_config(input.modes(), m1, m2);
            Amplitude perm =
                u(static_cast<std::size_t>(m1), static_cast<std::size_t>(n1)) *
                    u(static_cast<std::size_t>(m2), static_cast<std::size_t>(n2)) +
                u(static_cast<std::size_t>(m1), static_cast<std::size_t>(n2)) *
                    u(static_cast<std::size_t>(m2), static_cast<std::size_t>(n1));
            out[config] = perm / (in_norm * config.normalization());
        }
    }
    return out;
}

FockAmplitudes scatter_superposition(const ModeUnitary& u, const FockAmplitudes& input) {
    FockAmplitudes sum;
    for (const auto& [config, weight] : input) {
        FockAmplitudes scattered = scatter_two_photons(u, config);
        for (const auto& [out_config, amp] : scattered) {
            sum[out_config] += weight * amp;
        }
    }
    FockAmplitudes pruned;
    for (const auto& [config, amp] : sum) {
        if (std::abs(amp) > kAmplitudeFloor) pruned.insert({config, amp});
    }
    return pruned;
}

FockAmplitudes embed_timebin_to_modes(const StateVector& photonic) {
    require_two_photon_timebin(photonic, "embed_timebin_to_modes");
    // early photons to ports 1/2, late photons to ports 3/4 (0-based modes)
    static const std::array<std::pair<int, int>, 4> mode_pairs{
        std::pair<int, int>{0, 1},  // EE -> a1 a2
        std::pair<int, int>{0, 3},  // EL -> a1 a4
        std::pair<int, int>{1, 2},  // LE -> a2 a3
        std::pair<int, int>{2, 3},  // LL -> a3 a4
    };
    FockAmplitudes out;
    for (std::size_t b = 0; b < 4; ++b) {
        if (std::abs(photonic[b]) > kAmplitudeFloor) {
            out[two_photon_config(4, mode_pairs[b].first, mode_pairs[b].second)] = photonic[b];
        }
    }
    return out;
}

OutcomeLabel classify_multiport(const ClickPattern& c) {
    if (c.total_photons() < 2) {
        throw LossyPattern("classify_multiport: fewer than 2 photons accounted for");
    }
    if (c.total_photons() > 2) {
        throw std::invalid_argument("classify_multiport: more than 2 photons in pattern");
    }
    std::set<int> ports = c.fired();
    for (int p : ports) {
        if (p < 1 || p > 4) {
            throw std::invalid_argument("classify_multiport: detector id outside ports 1..4");
        }
    }
    if (ports.size() == 1) {
        int port = *ports.begin();
        return (port == 1 || port == 3) ? OutcomeLabel(3) : OutcomeLabel(4);
    }
    int a = *ports.begin();
    int b = *std::next(ports.begin());
    if ((a == 1 && b == 4) || (a == 2 && b == 3)) return OutcomeLabel(1);
    if ((a == 1 && b == 2) || (a == 3 && b == 4)) return OutcomeLabel(2);
    throw UnreachablePattern("classify_multiport: pattern " + c.to_string() +
                             " has zero amplitude for every protocol input");
}

std::pair<ModeUnitary, ModeUnitary> polarization_rotations() {
    const MeasurementBasis& basis = partial_bell_basis();
    auto rotation = [](const StateVector& x, const StateVector& y) {
        // U = |h><x| + |v><y| with E -> h, L -> v
        return ModeUnitary(2, {std::conj(x[0]), std::conj(x[1]),
                               std::conj(y[0]), std::conj(y[1])});
    };
    return {rotation(basis.x1, basis.y1), rotation(basis.x2, basis.y2)};
}

ModeUnitary fig2a_network() {
    auto [u1, u2] = polarization_rotations();

    // modes: 0 = (A,h), 1 = (A,v), 2 = (B,h), 3 = (B,v)
    std::vector<Amplitude> rot(16, Amplitude{0.0, 0.0});
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            rot[r * 4 + c] = u1(r, c);
            rot[(r + 2) * 4 + (c + 2)] = u2(r, c);
        }
    }

    ModeUnitary bs2 = beam_splitter_50_50();
    std::vector<Amplitude> bs(16, Amplitude{0.0, 0.0});
    for (std::size_t pol = 0; pol < 2; ++pol) {
        // the splitter mixes ports A and B within each polarization
        bs[(0 + pol) * 4 + (0 + pol)] = bs2(0, 0);
        bs[(0 + pol) * 4 + (2 + pol)] = bs2(0, 1);
        bs[(2 + pol) * 4 + (0 + pol)] = bs2(1, 0);
        bs[(2 + pol) * 4 + (2 + pol)] = bs2(1, 1);
    }

    return ModeUnitary(4, std::move(bs)) * ModeUnitary(4, std::move(rot));
}

std::map<ClickPattern, double> simulate_fig2a(const StateVector& photonic) {
    require_two_photon_timebin(photonic, "simulate_fig2a");
    // E -> (port, h), L -> (port, v); source 1 feeds port A, source 2 port B
    static const std::array<std::pair<int, int>, 4> mode_pairs{
        std::pair<int, int>{kDetectorAH, kDetectorBH},  // EE
        std::pair<int, int>{kDetectorAH, kDetectorBV},  // EL
        std::pair<int, int>{kDetectorAV, kDetectorBH},  // LE
        std::pair<int, int>{kDetectorAV, kDetectorBV},  // LL
    };
    FockAmplitudes input;
    for (std::size_t b = 0; b < 4; ++b) {
        if (std::abs(photonic[b]) > kAmplitudeFloor) {
            input[two_photon_config(4, mode_pairs[b].first, mode_pairs[b].second)] = photonic[b];
        }
    }
    return pattern_distribution(scatter_superposition(fig2a_network(), input), 0);
}

OutcomeLabel classify_fig2a(const ClickPattern& c) {
    if (c.total_photons() < 2) {
        throw LossyPattern("classify_fig2a: fewer than 2 photons accounted for");
    }
    if (c.total_photons() > 2) {
        throw std::invalid_argument("classify_fig2a: more than 2 photons in pattern");
    }
    // detector id = 2 * port + polarization (0 = h, 1 = v)
    std::vector<std::pair<int, int>> photons;
    for (const auto& [id, count] : c.counts) {
        if (id < 0 || id > 3) {
            throw std::invalid_argument("classify_fig2a: unknown detector id");
        }
        for (int k = 0; k < count; ++k) photons.push_back({id / 2, id % 2});
    }
    const auto& [port_a, pol_a] = photons[0];
    const auto& [port_b, pol_b] = photons[1];
    if (pol_a == pol_b) {
        return pol_a == 0 ? OutcomeLabel(3) : OutcomeLabel(4);
    }
    return port_a == port_b ? OutcomeLabel(1) : OutcomeLabel(2);
}

std::map<ClickPattern, double> simulate_multiport(const StateVector& photonic) {
    require_two_photon_timebin(photonic, "simulate_multiport");
    FockAmplitudes scattered =
        scatter_superposition(bell_multiport(4), embed_timebin_to_modes(photonic));
    return pattern_distribution(scattered, 1);
}

std::array<double, 4> abstract_outcome_distribution(const StateVector& photonic) {
    require_two_photon_timebin(photonic, "abstract_outcome_distribution");
    const MeasurementBasis& basis = partial_bell_basis();
    std::array<double, 4> dist{};
    for (std::size_t i = 0; i < 4; ++i) {
        dist[i] = std::norm(inner(basis.vectors[i], photonic));
    }
    return dist;
}

std::array<double, 4> fig2a_outcome_distribution(const StateVector& photonic) {
    return outcome_distribution(simulate_fig2a(photonic), classify_fig2a);
}

std::array<double, 4> multiport_outcome_distribution(const StateVector& photonic) {
    return outcome_distribution(simulate_multiport(photonic), classify_multiport);
}

}  // namespace rusim
