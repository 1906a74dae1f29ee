#pragma once

#include "nnlif/grid_model.hpp"
#include "nnlif/solver.hpp"

#include <deque>
#include <vector>

namespace nnlif {

/// Pre-history of the firing rate on [-D, 0).
enum class PreHistory { initial_rate, zero };

struct VariantParams {
    double delay = 0.0;   // D
    double gamma = 1.0;   // refractory period
    PreHistory prehistory = PreHistory::initial_rate;

    void validate() const;
};

/**
 * Density state plus refractory mass R and the last D/tau firing rates,
 * oldest first. history.front() is N(t - D).
 */
struct DelayRefractoryState {
    SolverState base;
    double r = 0.0;
    std::deque<double> history;
    double delay = 0.0;
    double gamma = 1.0;
};

/// Number of buffered rates, D/tau. Throws InvalidArgument unless D/tau is an
/// integer to 1e-12 relative tolerance.
int delay_steps(double delay, double tau);

/// Largest tau' <= tau for which D/tau' is an integer (tau itself when D = 0).
double fit_tau_to_delay(double tau, double delay);

/// Initial state. p gets zero ends; N^0 uses the closed-form firing rate.
DelayRefractoryState make_variant_state(std::vector<double> p, double r0, const VariantParams& vp,
                                        double tau, const Grid& grid, const ModelParams& params);

/// N(t - D): the oldest buffered rate, or the current rate when D = 0.
double delayed_rate(const DelayRefractoryState& state) noexcept;

/// Forward Euler for dR/dt = N - R/gamma.
double refractory_update(double r, double n_rate, double gamma, double tau);

/**
 * One semi-implicit step of the delay/refractory model.
 *
 * Maxwellians and a are frozen at the delayed rate N_d, the reset node
 * receives R^m/gamma, node n-1 loses the current rate N^m, R advances by
 * forward Euler with N^m and the new rate is a(N_d) p^{m+1}_{n-1}/h. The
 * buffer then drops N_d and appends N^m. h*sum(p) + R is conserved exactly
 * in exact arithmetic.
 */
DelayRefractoryState variant_step(const DelayRefractoryState& state, const StepConfig& cfg,
                                  const Grid& grid, const ModelParams& params);

}  // namespace nnlif
