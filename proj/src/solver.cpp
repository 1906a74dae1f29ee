#include "nnlif/solver.hpp"

#include "nnlif/errors.hpp"

#include <cmath>
#include <sstream>

namespace nnlif {

void StepConfig::validate() const {
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw InvalidArgument("step: tau must be positive");
    }
    if (!(blowup_threshold > 0.0)) {
        throw InvalidArgument("step: blowup_threshold must be positive");
    }
}

double firing_rate(double p_last, const Grid& grid, const ModelParams& params) {
    if (p_last == 0.0) return 0.0;
    const double ratio = p_last / grid.spacing();
    const double denom = 1.0 - params.a1 * ratio;
    if (!(denom > 0.0)) {
        std::ostringstream msg;
        msg << "firing-rate closure breaks down: 1 - a1 p_{n-1}/h = " << denom;
        throw NumericalFailure(NumericalFailure::Kind::firing_rate_breakdown, msg.str());
    }
    return params.a0 * ratio / denom;
}

double firing_rate_frozen(double p_last, double diffusion_coefficient, const Grid& grid) noexcept {
    return diffusion_coefficient * p_last / grid.spacing();
}

SolverState make_state(std::vector<double> p, const Grid& grid, const ModelParams& params,
                       double t) {
    if (static_cast<int>(p.size()) != grid.cells() + 1) {
        throw InvalidArgument("state: density must have n+1 entries");
    }
    p.front() = 0.0;
    p.back() = 0.0;
    SolverState s;
    s.n_rate = firing_rate(p[grid.cells() - 1], grid, params);
    s.p = std::move(p);
    s.t = t;
    return s;
}

double modified_flux(int i, std::span<const double> p, double n_rate, const Grid& grid,
                     const ModelParams& params) {
    const int n = grid.cells();
    if (i < 0 || i > n - 1) throw InvalidArgument("modified_flux: interface out of range");
    if (i == 0 || i == n - 1) return 0.0;
    const double a = diffusion(n_rate, params);
    const double m_i = maxwellian(grid.node(i), n_rate, params);
    const double m_next = maxwellian(grid.node(i + 1), n_rate, params);
    const double m_half = harmonic_mean(m_i, m_next);
    const double shift = grid.right_of_reset(i) ? n_rate : 0.0;
    return -a * (m_half / grid.spacing()) * (p[i + 1] / m_next - p[i] / m_i) - shift;
}

bool cfl_ok(double tau, const Grid& grid, double n_rate, const ModelParams& params) {
    const double a = params.a0 + params.a1 * n_rate;
    if (!(a > 0.0)) return false;
    const double h = grid.spacing();
    return tau / (h * h) < 1.0 / a;
}

std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs) {
    const std::size_t m = diag.size();
    if (lower.size() != m || upper.size() != m || rhs.size() != m) {
        throw InvalidArgument("solve_tridiagonal: size mismatch");
    }
    std::vector<double> c(m), x(m);
    double pivot = diag[0];
    for (std::size_t k = 0; k < m; ++k) {
        if (k > 0) pivot = diag[k] - lower[k] * c[k - 1];
        if (pivot == 0.0 || !std::isfinite(pivot)) {
            throw NumericalFailure(NumericalFailure::Kind::singular_system,
                                   "tridiagonal elimination hit a zero pivot");
        }
        c[k] = (k + 1 < m) ? upper[k] / pivot : 0.0;
        x[k] = (rhs[k] - (k > 0 ? lower[k] * x[k - 1] : 0.0)) / pivot;
    }
    for (std::size_t k = m - 1; k-- > 0;) {
        x[k] -= c[k] * x[k + 1];
    }
    return x;
}

std::vector<double> implicit_sg_update(std::span<const double> p_now, const Grid& grid,
                                       const SgCoefficients& coeffs, double tau,
                                       double reinjection, double outflux) {
    const int n = grid.cells();
    const int m = n - 1;  // unknowns p_1..p_{n-1}
    const double h = grid.spacing();
    const double lambda = tau / h;
    const double c = coeffs.diffusion * tau / (h * h);

    std::vector<double> lower(m, 0.0), diag(m, 1.0), upper(m, 0.0), rhs(m);
    for (int i = 1; i <= n - 1; ++i) {
        const int k = i - 1;
        rhs[k] = p_now[i];
        if (i <= n - 2) {  // interface i+1/2
            diag[k] += c * coeffs.toward_self[i];
            upper[k] = -c * coeffs.toward_next[i];
        }
        if (i >= 2) {  // interface i-1/2
            diag[k] += c * coeffs.toward_next[i - 1];
            lower[k] = -c * coeffs.toward_self[i - 1];
        }
    }
    rhs[grid.reset_index() - 1] += lambda * reinjection;
    rhs[n - 2] -= lambda * outflux;

    const auto interior = solve_tridiagonal(lower, diag, upper, rhs);
    std::vector<double> p_next(n + 1, 0.0);
    for (int i = 1; i <= n - 1; ++i) p_next[i] = interior[i - 1];
    return p_next;
}

std::vector<double> explicit_sg_update(std::span<const double> p_now, const Grid& grid,
                                       const SgCoefficients& coeffs, double tau,
                                       double reinjection, double outflux) {
    const int n = grid.cells();
    const double h = grid.spacing();
    const double lambda = tau / h;
    const double c = coeffs.diffusion * tau / (h * h);

    // Interior Scharfetter-Gummel fluxes scaled by tau/h; boundary ones vanish.
    std::vector<double> flux(n, 0.0);
    for (int i = 1; i <= n - 2; ++i) {
        flux[i] = -c * (coeffs.toward_next[i] * p_now[i + 1] - coeffs.toward_self[i] * p_now[i]);
    }
    std::vector<double> p_next(n + 1, 0.0);
    for (int i = 1; i <= n - 1; ++i) {
        p_next[i] = p_now[i] - (flux[i] - flux[i - 1]);
    }
    p_next[grid.reset_index()] += lambda * reinjection;
    p_next[n - 1] -= lambda * outflux;
    return p_next;
}

int check_density(std::span<const double> p, NegativeDensityPolicy policy) {
    int negative = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!std::isfinite(p[i])) {
            std::ostringstream msg;
            msg << "non-finite density at node " << i;
            throw NumericalFailure(NumericalFailure::Kind::non_finite, msg.str());
        }
        if (p[i] < 0.0) ++negative;
    }
    if (negative > 0 && policy == NegativeDensityPolicy::abort) {
        std::ostringstream msg;
        msg << negative << " negative interior densities";
        throw NumericalFailure(NumericalFailure::Kind::negative_density, msg.str());
    }
    return negative;
}

double h_sum(std::span<const double> p, const Grid& grid) noexcept {
    double s = 0.0;
    for (int i = 1; i <= grid.cells() - 1; ++i) s += p[i];
    return grid.spacing() * s;
}

namespace {

SolverState finish_step(std::vector<double> p_next, const SolverState& state,
                        const StepConfig& cfg, const Grid& grid, const ModelParams& params) {
    check_density(p_next, cfg.negative_density);
    SolverState out;
    out.n_rate = firing_rate(p_next[grid.cells() - 1], grid, params);
    if (!std::isfinite(out.n_rate)) {
        throw NumericalFailure(NumericalFailure::Kind::non_finite, "non-finite firing rate");
    }
    out.p = std::move(p_next);
    out.t = state.t + cfg.tau;
    return out;
}

}  // namespace

SolverState explicit_step(const SolverState& state, const StepConfig& cfg, const Grid& grid,
                          const ModelParams& params) {
    const auto coeffs = sg_coefficients(grid, state.n_rate, params);
    auto p_next = explicit_sg_update(state.p, grid, coeffs, cfg.tau, state.n_rate, state.n_rate);
    return finish_step(std::move(p_next), state, cfg, grid, params);
}

SolverState semi_implicit_step(const SolverState& state, const StepConfig& cfg, const Grid& grid,
                               const ModelParams& params) {
    const auto coeffs = sg_coefficients(grid, state.n_rate, params);
    auto p_next = implicit_sg_update(state.p, grid, coeffs, cfg.tau, state.n_rate, state.n_rate);
    return finish_step(std::move(p_next), state, cfg, grid, params);
}

SolverState step(const SolverState& state, const StepConfig& cfg, const Grid& grid,
                 const ModelParams& params) {
    return cfg.scheme == Scheme::explicit_euler ? explicit_step(state, cfg, grid, params)
                                                : semi_implicit_step(state, cfg, grid, params);
}

}  // namespace nnlif
