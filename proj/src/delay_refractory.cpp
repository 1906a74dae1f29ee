#include "nnlif/delay_refractory.hpp"

#include "nnlif/errors.hpp"

#include <cmath>
#include <sstream>

namespace nnlif {

void VariantParams::validate() const {
    if (!(delay >= 0.0) || !std::isfinite(delay)) throw InvalidArgument("variant: delay must be >= 0");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidArgument("variant: gamma must be positive");
}

int delay_steps(double delay, double tau) {
    if (!(tau > 0.0)) throw InvalidArgument("variant: tau must be positive");
    if (delay == 0.0) return 0;
    const double ratio = delay / tau;
    const double k = std::round(ratio);
    if (std::abs(ratio - k) > 1e-12 * std::max(1.0, ratio) || k < 1.0) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "variant: delay " << delay << " is not an integer multiple of tau " << tau;
        throw InvalidArgument(msg.str());
    }
    return static_cast<int>(k);
}

double fit_tau_to_delay(double tau, double delay) {
    if (!(tau > 0.0)) throw InvalidArgument("variant: tau must be positive");
    if (delay == 0.0) return tau;
    const double k = std::ceil(delay / tau * (1.0 - 1e-12));
    return delay / std::max(1.0, k);
}

DelayRefractoryState make_variant_state(std::vector<double> p, double r0, const VariantParams& vp,
                                        double tau, const Grid& grid, const ModelParams& params) {
    vp.validate();
    if (!(r0 >= 0.0)) throw InvalidArgument("variant: r0 must be nonnegative");
    DelayRefractoryState s;
    s.base = make_state(std::move(p), grid, params);
    s.r = r0;
    s.delay = vp.delay;
    s.gamma = vp.gamma;
    const double fill = vp.prehistory == PreHistory::initial_rate ? s.base.n_rate : 0.0;
    s.history.assign(static_cast<std::size_t>(delay_steps(vp.delay, tau)), fill);
    return s;
}

double delayed_rate(const DelayRefractoryState& state) noexcept {
    return state.history.empty() ? state.base.n_rate : state.history.front();
}

double refractory_update(double r, double n_rate, double gamma, double tau) {
    if (!(gamma > 0.0)) throw InvalidArgument("refractory_update: gamma must be positive");
    return r + tau * (n_rate - r / gamma);
}

DelayRefractoryState variant_step(const DelayRefractoryState& state, const StepConfig& cfg,
                                  const Grid& grid, const ModelParams& params) {
    const double n_delayed = delayed_rate(state);
    const double n_now = state.base.n_rate;
    const auto coeffs = sg_coefficients(grid, n_delayed, params);

    auto p_next = implicit_sg_update(state.base.p, grid, coeffs, cfg.tau, state.r / state.gamma, n_now);
    check_density(p_next, cfg.negative_density);

    DelayRefractoryState out;
    out.delay = state.delay;
    out.gamma = state.gamma;
    out.r = refractory_update(state.r, n_now, state.gamma, cfg.tau);
    out.base.n_rate = firing_rate_frozen(p_next[grid.cells() - 1], coeffs.diffusion, grid);
    if (!std::isfinite(out.base.n_rate) || !std::isfinite(out.r)) {
        throw NumericalFailure(NumericalFailure::Kind::non_finite, "variant: non-finite rate");
    }
    out.base.p = std::move(p_next);
    out.base.t = state.base.t + cfg.tau;
    out.history = state.history;
    if (!out.history.empty()) {
        out.history.pop_front();
        out.history.push_back(n_now);
    }
    return out;
}

}  // namespace nnlif
