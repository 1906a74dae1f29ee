#pragma once

#include "nnlif/diagnostics.hpp"
#include "nnlif/scenario.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nnlif {

/// Gaussian exp(-(v - v0)^2/(2 sigma0^2)) at interior nodes, zero ends,
/// scaled so that h * sum = mass.
std::vector<double> gaussian_ic(double v0, double sigma0, const Grid& grid, double mass = 1.0);

/// Stationary density for n_inf, renormalized to unit mass on the grid.
std::vector<double> stationary_ic(double n_inf, const Grid& grid, const ModelParams& params);

struct RatePoint {
    double t = 0.0;
    double n = 0.0;
};

/// mass is h * sum(p) over interior nodes; mass + r is the conserved total.
struct MassPoint {
    double t = 0.0;
    double mass = 0.0;
    double r = 0.0;
};

struct Snapshot {
    double t = 0.0;
    std::vector<double> p;
};

struct EnergyPoint {
    double t = 0.0;
    double e = 0.0;
};

enum class StopReason { completed, blowup, instability };

const char* to_string(StopReason reason) noexcept;

struct RunResult {
    std::vector<double> v;  // grid nodes
    std::vector<RatePoint> rate;
    std::vector<Snapshot> snapshots;
    std::vector<EntropyReport> entropy;
    std::vector<MassPoint> mass;
    std::vector<EnergyPoint> energy;
    /// Stationary reference used for the entropy series, when enabled.
    std::optional<StationaryProfile> entropy_reference;
    double energy_c = 0.0;

    std::vector<double> final_p;
    double final_rate = 0.0;
    double final_r = 0.0;
    double final_mass = 0.0;

    StopReason stop_reason = StopReason::completed;
    double stop_time = 0.0;
    std::string stop_detail;
    long steps = 0;
    long negative_density_steps = 0;
};

/// Runs a scenario from t = 0 to t_end (or an early stop). Deterministic.
/// Throws ConfigError on invalid configuration.
RunResult run_scenario(const ScenarioConfig& cfg);

enum class RefinementAxis { space, time };

struct OrderRow {
    int level = 0;
    double step = 0.0;  // h or tau of this level
    std::optional<double> err_l1;
    std::optional<double> order_l1;
    std::optional<double> err_linf;
    std::optional<double> order_linf;
    bool last = false;
};

/**
 * Successive-halving study at t_end of the base scenario. Row k compares the
 * runs at levels k and k+1 on the nodes of level k (grids nest, so no
 * interpolation): err = ||w_k - w_{k+1}|| in L1 (h_k * sum) and Linf, and
 * order_k = log2(err_k / err_{k+1}). levels rows need levels + 1 runs. Runs
 * use the warn policy for negative densities; a row whose runs stop early
 * (non-finite values or the blow-up threshold) has no error. Levels run
 * concurrently when parallel is set; results are merged by level index.
 */
std::vector<OrderRow> convergence_order(const ScenarioConfig& base, RefinementAxis axis, int levels,
                                        bool parallel = true);

struct OscillationReport {
    bool sustained = false;
    std::vector<double> peak_times;
    std::vector<double> peak_heights;
    double period = 0.0;
    /// (max spacing - min spacing) / mean spacing.
    double spacing_spread = 0.0;
    /// Least-squares slope of peak height against peak time.
    double amplitude_slope = 0.0;
    std::string summary;
};

/**
 * Peak analysis of a firing-rate series. The first 20% of samples are
 * discarded; a peak is a 3-point local maximum whose height above the
 * lowest value since the previous peak is at least 1% of the retained
 * series' range (and above an absolute floor), so round-off ripples on a
 * converged rate do not count. Fewer than 3 peaks means no sustained
 * oscillation. Throws InvalidArgument for fewer than 100 samples.
 */
OscillationReport oscillation_report(std::span<const RatePoint> series);

}  // namespace nnlif
