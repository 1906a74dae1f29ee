#pragma once

#include "nnlif/grid_model.hpp"
#include "nnlif/stationary.hpp"

#include <functional>
#include <span>
#include <vector>

namespace nnlif {

/// h * sum of interior densities, plus the refractory mass for the variant.
double total_mass(std::span<const double> p, const Grid& grid, double refractory = 0.0) noexcept;

/// S = sum h G(p_i/p_inf_i) p_inf_i with G(x) = (x-1)^2/2.
double relative_entropy(std::span<const double> p, const StationaryProfile& stationary,
                        const Grid& grid);

/// Same sum with a caller-supplied convex G. Only the quadratic G carries
/// the dissipation guarantee.
double relative_entropy(std::span<const double> p, const StationaryProfile& stationary,
                        const Grid& grid, const std::function<double(double)>& convex);

struct EntropyReport {
    double s = 0.0;
    double bulk = 0.0;
    double boundary = 0.0;
    double t = 0.0;
};

/**
 * Relative entropy together with the two terms of its semi-discrete time
 * derivative, for G(x) = (x-1)^2/2 and r_i = p_i/p_inf_i:
 *
 *   bulk     = a * sum_{i=1}^{n-2} (r_{i+1}-r_i)^2 [(-1/(2h) - g/4) p_inf_{i+1} + (-1/(2h) + g/4) p_inf_i]
 *   boundary = -(N_inf/2) (r_l - N/N_inf)^2
 *
 * g is evaluated at N_inf. a = a(N_inf) is 1 in the linear model, where the
 * sum of both terms is dS/dt exactly for the discrete stationary profile.
 */
EntropyReport entropy_dissipation(std::span<const double> p, const StationaryProfile& stationary,
                                  double n_rate, const Grid& grid, const ModelParams& params,
                                  double t = 0.0);

/// One stored point of a run for the energy functional.
struct EnergySample {
    double t = 0.0;
    std::vector<double> p;
    double n_rate = 0.0;
};

/**
 * Semi-discrete energy at the last sample:
 *
 *   E = sum_{i=1}^{n-1} p_i ln(p_i/M_i) h - C (G_l - G_{n-1}),
 *   G_i(t) = integral_0^t ln(p_i/M_i) ds  (trapezoid over the samples).
 *
 * Maxwellians use each sample's own firing rate. Throws InvalidArgument on
 * a nonpositive interior density or an empty history.
 */
double discrete_energy(std::span<const EnergySample> history, double c_bound, const Grid& grid,
                       const ModelParams& params);

/// Streaming form of discrete_energy: keeps only the running integrals.
class EnergyAccumulator {
public:
    EnergyAccumulator(const Grid& grid, const ModelParams& params);

    void add(double t, std::span<const double> p, double n_rate);

    bool empty() const noexcept { return count_ == 0; }
    double time() const noexcept { return last_t_; }
    /// sum p_i ln(p_i/M_i) h at the latest sample.
    double free_energy() const noexcept { return free_energy_; }
    /// G_l - G_{n-1} at the latest sample.
    double boundary_integral() const noexcept { return integral_l_ - integral_last_; }
    double value(double c_bound) const noexcept { return free_energy_ - c_bound * boundary_integral(); }

private:
    Grid grid_;
    ModelParams params_;
    std::size_t count_ = 0;
    double last_t_ = 0.0;
    double last_log_l_ = 0.0;
    double last_log_last_ = 0.0;
    double integral_l_ = 0.0;
    double integral_last_ = 0.0;
    double free_energy_ = 0.0;
};

}  // namespace nnlif
