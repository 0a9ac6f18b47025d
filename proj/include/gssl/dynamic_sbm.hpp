#pragma once

#include "gssl/feature_matrix.hpp"
#include "gssl/generators.hpp"
#include "gssl/metrics.hpp"
#include "gssl/sampling_solver.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gssl {

enum class DensityPreset { hcd, mcd, lcd };

/// Dynamic stochastic block model whose size follows an M/M/K/K queue:
/// Poisson arrivals at `arrival_rate` per step, exponential lifetimes with
/// rate `departure_rate`, arrivals lost while `capacity` nodes are present.
struct DynamicSbmSpec {
    std::size_t classes = 3;
    std::vector<double> class_probabilities;  // empty: uniform
    double p_in = 0.1;
    double p_out = 0.005;
    double arrival_rate = 5e-5;
    double departure_rate = 1e-7;
    std::size_t capacity = 1000;
    std::size_t initial_size = 500;
    std::size_t labeled_per_class = 2;
    bool permanent_labels = false;
    std::uint64_t seed = 1;

    void validate() const;
    std::vector<double> probabilities() const;
    /// Scales p_in by 2, 1 or 0.5.
    void apply_density(DensityPreset preset);
};

DensityPreset parse_density(std::string_view name);

enum class EventKind { arrival, departure, label_replacement };

struct SimulationEvent {
    double time = 0.0;
    EventKind kind = EventKind::arrival;
    std::optional<NodeId> node;  // arrival (none when blocked) / departure / departed label holder
    ClassIndex cls = 0;
    std::optional<NodeId> replacement;                                 // label_replacement only
    ReplacementOutcome::Via via = ReplacementOutcome::Via::none;       // label_replacement only

    friend bool operator==(const SimulationEvent&, const SimulationEvent&) = default;
};

/// One `<time> <kind> <details>` line per event.
void write_event_log(std::ostream& out, const std::vector<SimulationEvent>& events);

struct DynamicSbmResult {
    TrajectoryRecord trajectory;
    std::vector<SimulationEvent> events;
    std::vector<std::pair<double, std::size_t>> size_path;  // (time, size from then on)
    double duration = 0.0;
    std::size_t label_count_changes = 0;  // times a class lost or could not replace a label

    /// Exact time average of the node count over [from, to].
    double time_averaged_size(double from, double to) const;
};

/// Event-driven co-simulation: one sampling step per time unit, events due
/// at or before a step processed first. The trajectory gets one row per
/// `iteration_length` steps (0 means `capacity`).
DynamicSbmResult simulate_dynamic_sbm(const DynamicSbmSpec& spec, const SolverConfig& solver,
                                      std::uint64_t duration, std::size_t iteration_length = 0);

}  // namespace gssl
