#include "rusim/engine.hpp"

#include <cmath>
#include <stdexcept>

#include "rusim/parallel.hpp"
#include "rusim/rng.hpp"

namespace rusim {

DetectorModel::DetectorModel(double eta_) : eta(eta_) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("DetectorModel: eta must lie in [0, 1]");
    }
}

std::pair<OutcomeLabel, StateVector> sample_outcome(const StateVector& enc, std::mt19937_64& rng) {
    std::vector<DecompositionEntry> branches = decompose(enc);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double u = unit(rng);
    double cumulative = 0.0;
    for (std::size_t i = 0; i < branches.size(); ++i) {
        cumulative += branches[i].probability;
        if (u < cumulative || i + 1 == branches.size()) {
            return {branches[i].outcome, std::move(branches[i].residual)};
        }
    }
    throw std::logic_error("sample_outcome: empty decomposition");
}

RusRun rus_gate(const StateVector& psi_in, const DetectorModel& d, int max_attempts,
                std::mt19937_64& rng) {
    if (max_attempts < 1) {
        throw std::invalid_argument("rus_gate: max_attempts must be at least 1");
    }
    if (psi_in.labels() != two_qubit_labels() || !psi_in.is_normalized()) {
        throw std::invalid_argument("rus_gate: input must be a normalized two-qubit state");
    }

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double both_detected = d.eta * d.eta;

    RusRun run;
    StateVector current = psi_in;
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        StateVector enc = encode_pair(current);
        if (unit(rng) >= both_detected) {
            AttemptRecord record;
            record.attempt_index = attempt;
            record.correction_applied = "none";
            record.succeeded = false;
            run.records.push_back(std::move(record));
            run.status = RunStatus::LossAborted;
            return run;
        }
        auto [outcome, residual] = sample_outcome(enc, rng);
        Correction correction = correction_unitary(outcome);
        StateVector post = apply(correction.unitary, residual);

        AttemptRecord record;
        record.attempt_index = attempt;
        record.outcome = outcome;
        record.correction_applied = correction_name(outcome);
        record.post_state = post;
        record.succeeded = correction.gate_succeeded;
        run.records.push_back(std::move(record));

        if (correction.gate_succeeded) {
            run.final_state = std::move(post);
            run.status = RunStatus::Succeeded;
            return run;
        }
        current = std::move(post);
    }
    run.final_state = std::move(current);
    run.status = RunStatus::Exhausted;
    return run;
}

double attempt_success_probability(const DetectorModel& d) { return d.eta * d.eta / 2.0; }

RunStatistics run_rus_trials(const StateVector& psi_in, const DetectorModel& d,
                             std::int64_t trials, int max_attempts, std::uint64_t master_seed) {
    if (trials < 1) {
        throw std::invalid_argument("run_rus_trials: trials must be at least 1");
    }
    StateVector target = apply(cz_gate(), psi_in);

    struct TrialResult {
        int attempts = 0;
        bool succeeded = false;
        bool lost = false;
        double fidelity = 0.0;
        std::array<std::int16_t, 4> outcome_counts{};
    };
    std::vector<TrialResult> results(static_cast<std::size_t>(trials));

    parallel_for(trials, [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t t = begin; t < end; ++t) {
            std::mt19937_64 stream = make_stream(master_seed, static_cast<std::uint64_t>(t));
            RusRun run = rus_gate(psi_in, d, max_attempts, stream);
            TrialResult& r = results[static_cast<std::size_t>(t)];
            r.attempts = static_cast<int>(run.records.size());
            r.succeeded = run.status == RunStatus::Succeeded;
            r.lost = run.status == RunStatus::LossAborted;
            for (const auto& record : run.records) {
                if (record.outcome.has_value()) {
                    r.outcome_counts[static_cast<std::size_t>(record.outcome->index() - 1)] += 1;
                }
            }
            if (r.succeeded) {
                r.fidelity = fidelity_up_to_global_phase(*run.final_state, target);
            }
        }
    });

    RunStatistics stats;
    stats.trials = trials;
    std::int64_t total_attempts = 0;
    double fidelity_sum = 0.0;
    for (const auto& r : results) {
        total_attempts += r.attempts;
        stats.attempt_histogram[r.attempts] += 1;
        if (r.lost) stats.loss_failures += 1;
        if (r.succeeded) {
            stats.succeeded += 1;
            fidelity_sum += r.fidelity;
        }
        for (std::size_t i = 0; i < 4; ++i) stats.outcome_counts[i] += r.outcome_counts[i];
    }
    stats.mean_attempts = static_cast<double>(total_attempts) / static_cast<double>(trials);
    stats.mean_fidelity_vs_target =
        stats.succeeded > 0 ? fidelity_sum / static_cast<double>(stats.succeeded) : 0.0;
    return stats;
}

std::map<int, double> cluster_growth_experiment(int n_qubits, const DetectorModel& d,
                                                std::int64_t trials, std::uint64_t master_seed) {
    if (n_qubits < 2) {
        throw std::invalid_argument("cluster_growth_experiment: need at least 2 qubits");
    }
    if (d.eta <= 0.0) {
        throw std::invalid_argument("cluster_growth_experiment: eta must be positive");
    }
    if (trials < 1) {
        throw std::invalid_argument("cluster_growth_experiment: trials must be at least 1");
    }

    double p = attempt_success_probability(d);
    std::size_t edges = static_cast<std::size_t>(n_qubits - 1);

    // cumulative attempt counts per chain length, one row per trial
    std::vector<std::vector<std::int64_t>> cost(static_cast<std::size_t>(trials),
                                                std::vector<std::int64_t>(edges, 0));
    parallel_for(trials, [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t t = begin; t < end; ++t) {
            std::mt19937_64 stream = make_stream(master_seed, static_cast<std::uint64_t>(t));
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            std::int64_t total = 0;
            for (std::size_t e = 0; e < edges; ++e) {
                std::int64_t attempts = 1;
                while (unit(stream) >= p) ++attempts;
                total += attempts;
                cost[static_cast<std::size_t>(t)][e] = total;
            }
        }
    });

    std::map<int, double> curve;
    for (std::size_t e = 0; e < edges; ++e) {
        double sum = 0.0;
        for (std::int64_t t = 0; t < trials; ++t) {
            sum += static_cast<double>(cost[static_cast<std::size_t>(t)][e]);
        }
        curve[static_cast<int>(e) + 2] = sum / static_cast<double>(trials);
    }
    return curve;
}

}  // namespace rusim
