// engine.hpp
// Stochastic execution of the repeat-until-success loop: sample measurement
// outcomes, apply corrections, retry until the entangling outcome occurs.
// Detector inefficiency is modeled per attempt; a lost photon aborts the run
// and invalidates the qubits.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "rusim/protocol.hpp"
#include "rusim/state.hpp"

namespace rusim {

// Per-photon detection efficiency; both photons of an attempt are detected
// with probability eta^2.
struct DetectorModel {
    explicit DetectorModel(double eta);
    double eta;
};

inline constexpr int kDefaultMaxAttempts = 10000;

// One pass of the loop. outcome is empty for a photon-loss event, in which
// case no correction is applied and no post state exists.
struct AttemptRecord {
    int attempt_index = 0;
    std::optional<OutcomeLabel> outcome;
    std::string correction_applied;
    std::optional<StateVector> post_state;
    bool succeeded = false;
};

enum class RunStatus { Succeeded, LossAborted, Exhausted };

struct RusRun {
    // Corrected output on success, the restored input on exhaustion, and
    // empty (qubits destroyed) after a loss.
    std::optional<StateVector> final_state;
    std::vector<AttemptRecord> records;
    RunStatus status = RunStatus::Exhausted;
};

// Draws one measurement outcome from an encoded pair state; outcome i occurs
// with its decompose probability (1/4 each). Returns the post-measurement
// source state.
std::pair<OutcomeLabel, StateVector> sample_outcome(const StateVector& enc, std::mt19937_64& rng);

// Runs the loop on a normalized two-qubit state. Each attempt encodes the
// current state; with probability eta^2 an outcome is sampled and corrected.
// Outcomes 1/2 complete the gate, 3/4 restore the input and the loop repeats.
RusRun rus_gate(const StateVector& psi_in, const DetectorModel& d, int max_attempts,
                std::mt19937_64& rng);

// Per-attempt probability of a heralded entangling outcome: eta^2 / 2.
double attempt_success_probability(const DetectorModel& d);

struct RunStatistics {
    std::int64_t trials = 0;
    double mean_attempts = 0.0;
    std::map<int, std::int64_t> attempt_histogram;  // attempts per trial -> frequency
    std::int64_t loss_failures = 0;
    double mean_fidelity_vs_target = 0.0;  // over succeeded trials, target = CZ psi_in
    std::int64_t succeeded = 0;
    std::array<std::int64_t, 4> outcome_counts{};  // heralded outcomes across all attempts
};

// Runs `trials` independent rus_gate executions. Trial k draws from substream
// k of the master seed, so results are reproducible for any worker count.
RunStatistics run_rus_trials(const StateVector& psi_in, const DetectorModel& d,
                             std::int64_t trials, int max_attempts, std::uint64_t master_seed);

// Grows a chain cluster edge by edge; each edge costs a geometric(eta^2/2)
// number of attempts (heralded failures retry, a loss destroys only the
// attempt on the growing edge). Returns mean total attempts for every chain
// length 2..n_qubits.
std::map<int, double> cluster_growth_experiment(int n_qubits, const DetectorModel& d,
                                                std::int64_t trials, std::uint64_t master_seed);

}  // namespace rusim
