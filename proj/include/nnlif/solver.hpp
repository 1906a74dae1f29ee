#pragma once

#include "nnlif/grid_model.hpp"

#include <span>
#include <vector>

namespace nnlif {

enum class Scheme { explicit_euler, semi_implicit };
enum class NegativeDensityPolicy { abort, warn };

struct StepConfig {
    double tau = 1e-3;
    Scheme scheme = Scheme::semi_implicit;
    NegativeDensityPolicy negative_density = NegativeDensityPolicy::abort;
    /// Runs stop once the firing rate exceeds this value.
    double blowup_threshold = 1e3;

    void validate() const;
};

/// Node densities p_0..p_n (p_0 = p_n = 0), time and the numerical firing
/// rate consistent with p_{n-1}.
struct SolverState {
    std::vector<double> p;
    double t = 0.0;
    double n_rate = 0.0;
};

/**
 * Numerical firing rate from the one-sided difference at v_fire.
 *
 * N = a(N) p_{n-1} / h is linear in N, so it is solved in closed form:
 * N = a0 (p/h) / (1 - a1 p/h). Throws NumericalFailure(firing_rate_breakdown)
 * when the denominator is not positive.
 */
double firing_rate(double p_last, const Grid& grid, const ModelParams& params);

/// Firing rate with the diffusion coefficient supplied instead of solved for.
double firing_rate_frozen(double p_last, double diffusion_coefficient, const Grid& grid) noexcept;

/// Builds a state from node values: zeroes both ends and computes n_rate.
SolverState make_state(std::vector<double> p, const Grid& grid, const ModelParams& params,
                       double t = 0.0);

/**
 * Modified flux at interface i with Maxwellians frozen at n_rate:
 * -a (M^H/h) (p_{i+1}/M_{i+1} - p_i/M_i) - n_rate H(v_{i+1/2} - v_reset)
 * for 1 <= i <= n-2, and exactly 0 at the boundary interfaces 0 and n-1.
 * The explicit scheme evaluates it on p^m, the semi-implicit one on p^{m+1}.
 */
double modified_flux(int i, std::span<const double> p, double n_rate, const Grid& grid,
                     const ModelParams& params);

/// Positivity condition tau/h^2 < 1/a(N). Diagnostic only.
bool cfl_ok(double tau, const Grid& grid, double n_rate, const ModelParams& params);

/**
 * Solves a tridiagonal system by elimination without pivoting. lower[0] and
 * upper[m-1] are ignored. Throws NumericalFailure(singular_system) on a zero
 * pivot.
 */
std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs);

/**
 * One backward-Euler solve of the frozen Scharfetter-Gummel operator:
 *
 *   (I + tau/h^2 * a * L) p^{m+1} = p^m + (tau/h) (reinjection e_l - outflux e_{n-1})
 *
 * reinjection enters node l and outflux leaves node n-1; both are explicit.
 * Returns the full node vector with zero ends. The base model passes
 * N_h^m for both; the delay/refractory variant passes R^m/gamma and N^m.
 */
std::vector<double> implicit_sg_update(std::span<const double> p_now, const Grid& grid,
                                       const SgCoefficients& coeffs, double tau,
                                       double reinjection, double outflux);

/// Forward-Euler counterpart of implicit_sg_update.
std::vector<double> explicit_sg_update(std::span<const double> p_now, const Grid& grid,
                                       const SgCoefficients& coeffs, double tau,
                                       double reinjection, double outflux);

SolverState explicit_step(const SolverState& state, const StepConfig& cfg, const Grid& grid,
                          const ModelParams& params);

SolverState semi_implicit_step(const SolverState& state, const StepConfig& cfg, const Grid& grid,
                               const ModelParams& params);

/// Dispatches on cfg.scheme.
SolverState step(const SolverState& state, const StepConfig& cfg, const Grid& grid,
                 const ModelParams& params);

/// Throws NumericalFailure(non_finite) on NaN/inf and, under the abort
/// policy, NumericalFailure(negative_density) on a negative interior value.
/// Returns the number of negative interior nodes.
int check_density(std::span<const double> p, NegativeDensityPolicy policy);

double h_sum(std::span<const double> p, const Grid& grid) noexcept;

}  // namespace nnlif
