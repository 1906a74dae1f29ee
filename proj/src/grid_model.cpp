#include "nnlif/grid_model.hpp"

#include "nnlif/errors.hpp"

#include <cmath>
#include <sstream>

namespace nnlif {

const char* to_string(NumericalFailure::Kind kind) noexcept {
    switch (kind) {
        case NumericalFailure::Kind::nonpositive_diffusion: return "nonpositive diffusion";
        case NumericalFailure::Kind::firing_rate_breakdown: return "firing rate breakdown";
        case NumericalFailure::Kind::negative_density: return "negative density";
        case NumericalFailure::Kind::non_finite: return "non-finite state";
        case NumericalFailure::Kind::singular_system: return "singular system";
        case NumericalFailure::Kind::quadrature: return "quadrature failure";
    }
    return "unknown";
}

Grid::Grid(double v_min, double v_reset, double v_fire, int n)
    : v_min_(v_min), v_reset_(v_reset), v_fire_(v_fire), n_(n) {
    if (!(std::isfinite(v_min) && std::isfinite(v_reset) && std::isfinite(v_fire))) {
        throw InvalidArgument("grid: potentials must be finite");
    }
    if (!(v_min < v_reset && v_reset < v_fire)) {
        throw InvalidArgument("grid: require v_min < v_reset < v_fire");
    }
    if (n < 2) {
        throw InvalidArgument("grid: need at least 2 cells");
    }
    h_ = (v_fire - v_min) / n;
    const double offset = (v_reset - v_min) / h_;
    const double rounded = std::round(offset);
    if (std::abs(offset - rounded) > 1e-12 * std::max(1.0, std::abs(offset))) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "grid: v_reset=" << v_reset << " is not a node (offset " << offset
            << " cells from v_min with n=" << n << ")";
        throw InvalidArgument(msg.str());
    }
    l_ = static_cast<int>(rounded);
    if (l_ <= 0 || l_ >= n_) {
        throw InvalidArgument("grid: reset node must be interior");
    }
}

std::vector<double> Grid::nodes() const {
    std::vector<double> v(n_ + 1);
    for (int i = 0; i <= n_; ++i) v[i] = node(i);
    return v;
}

Grid Grid::refined() const { return Grid(v_min_, v_reset_, v_fire_, 2 * n_); }

void ModelParams::validate() const {
    if (!(std::isfinite(a0) && std::isfinite(a1) && std::isfinite(b) && std::isfinite(v_ext))) {
        throw InvalidArgument("model: coefficients must be finite");
    }
    if (!(a0 > 0.0)) {
        throw InvalidArgument("model: a0 must be positive");
    }
}

double drift(double v, double n_rate, const ModelParams& params) noexcept {
    return -v + params.b * n_rate + params.v_ext;
}

double diffusion(double n_rate, const ModelParams& params) {
    const double a = params.a0 + params.a1 * n_rate;
    if (!(a > 0.0)) {
        std::ostringstream msg;
        msg << "diffusion a(N) = " << a << " at N = " << n_rate << " is not positive";
        throw NumericalFailure(NumericalFailure::Kind::nonpositive_diffusion, msg.str());
    }
    return a;
}

double maxwellian(double v, double n_rate, const ModelParams& params) {
    const double a = diffusion(n_rate, params);
    const double d = v - params.center(n_rate);
    return std::exp(-d * d / (2.0 * a));
}

double harmonic_mean(double m_left, double m_right) {
    if (!(m_left > 0.0 && m_right > 0.0)) {
        throw InvalidArgument("harmonic_mean: inputs must be positive");
    }
    return 1.0 / (0.5 * (1.0 / m_left + 1.0 / m_right));
}

namespace {

// U_{i+1} - U_i with U = (v - c)^2 / (2a).
double exponent_step(int i, double center, double a, const Grid& grid) noexcept {
    return grid.spacing() * (grid.half_node(i) - center) / a;
}

}  // namespace

SgCoefficients sg_coefficients(const Grid& grid, double n_rate, const ModelParams& params) {
    SgCoefficients c;
    c.diffusion = diffusion(n_rate, params);
    const int n = grid.cells();
    const double center = params.center(n_rate);
    c.toward_next.resize(n);
    c.toward_self.resize(n);
    for (int i = 0; i < n; ++i) {
        const double delta = exponent_step(i, center, c.diffusion, grid);
        // M^H/M_i = 2/(1 + M_i/M_{i+1}) and M_i/M_{i+1} = exp(delta).
        c.toward_self[i] = 2.0 / (1.0 + std::exp(delta));
        c.toward_next[i] = 2.0 / (1.0 + std::exp(-delta));
    }
    return c;
}

double g_half(int i, double n_rate, const Grid& grid, const ModelParams& params) {
    if (i < 1 || i > grid.cells() - 2) {
        throw InvalidArgument("g_half: interface index out of range");
    }
    const double a = diffusion(n_rate, params);
    const double delta = exponent_step(i, params.center(n_rate), a, grid);
    return (2.0 / grid.spacing()) * std::tanh(0.5 * delta);
}

bool technical_assumption_holds(const Grid& grid, double n_rate, const ModelParams& params) {
    const double bound = 2.0 / grid.spacing();
    for (int i = 1; i <= grid.cells() - 2; ++i) {
        if (std::abs(g_half(i, n_rate, grid, params)) > bound) return false;
    }
    return true;
}

}  // namespace nnlif
