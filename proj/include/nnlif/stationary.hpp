#pragma once

#include "nnlif/grid_model.hpp"

#include <vector>

namespace nnlif {

enum class ProfileFlavor { continuous_quadrature, discrete_recursion };

/// A stationary firing rate with its density sampled at the grid nodes.
struct StationaryProfile {
    double n_inf = 0.0;
    std::vector<double> p_inf;
    ProfileFlavor flavor = ProfileFlavor::continuous_quadrature;
};

/**
 * Closed-form stationary density for a given firing rate N:
 *
 *   p(v) = (N/a) exp(-h(v)^2/(2a)) * integral_{max(v, v_reset)}^{v_fire} exp(h(w)^2/(2a)) dw
 *
 * with h the drift at N. Each cell of the inner integral is integrated by
 * adaptive Gauss-Kronrod; exponents are shifted by their maximum over
 * [v_reset, v_fire] so the evaluation stays finite for large b N. The value
 * at v_min is the untruncated formula; the value at v_fire is 0.
 */
std::vector<double> stationary_density(double n_inf, const Grid& grid, const ModelParams& params);

StationaryProfile continuous_stationary(double n_inf, const Grid& grid, const ModelParams& params);

/// h * sum of interior stationary_density(n_rate) minus 1.
double normalization_defect(double n_rate, const Grid& grid, const ModelParams& params);

/// Mass lost by truncating at v_min, estimated as p(v_min) times one unit of voltage.
double truncation_tail(const StationaryProfile& profile) noexcept;

struct RateSearch {
    double n_max = 10.0;
    int samples = 400;
    /// Lowest sample as a fraction of n_max.
    double n_min_fraction = 1e-5;
};

/**
 * Roots of the normalization defect. Samples on a log-spaced grid in
 * (0, n_max], brackets sign changes and bisects each to |defect| < 1e-8.
 * An empty result means no stationary state in the searched range.
 */
std::vector<double> find_stationary_rates(const ModelParams& params, const Grid& grid,
                                          const RateSearch& search = {});

/**
 * Discrete stationary profile for a fixed rate N (the discrete rate is
 * identified with the continuous one). Sets p_{n-1} = h N / a, then walks
 * down with
 *
 *   p_i = [(a/h + a g/2) p_{i+1} + N H(v_{i+1/2} - v_reset)] / (a/h - a g/2)
 *
 * so that the Scharfetter-Gummel flux equals N H at every interior
 * interface. |g| <= 2/h keeps the denominator positive. The construction is
 * only meaningful when the Maxwellians do not depend on N, so b != 0 or
 * a1 != 0 is rejected unless allow_rate_dependent is set.
 */
StationaryProfile discrete_stationary(double n_inf, const Grid& grid, const ModelParams& params,
                                      bool allow_rate_dependent = false);

/// Stationary profile sampled at nodes, with zero ends and unit mass h*sum.
std::vector<double> normalized_stationary_density(double n_inf, const Grid& grid,
                                                  const ModelParams& params);

}  // namespace nnlif
