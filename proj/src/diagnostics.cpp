#include "nnlif/diagnostics.hpp"

#include "nnlif/errors.hpp"

#include <cmath>

namespace nnlif {

namespace {

void require_positive_profile(const StationaryProfile& stationary, const Grid& grid) {
    if (static_cast<int>(stationary.p_inf.size()) != grid.cells() + 1) {
        throw InvalidArgument("stationary profile size does not match the grid");
    }
    for (int i = 1; i <= grid.cells() - 1; ++i) {
        if (!(stationary.p_inf[i] > 0.0)) {
            throw InvalidArgument("stationary profile must be positive at interior nodes");
        }
    }
}

// ln(p/M) at node i, evaluated without forming M.
double log_ratio(double p, double v, double n_rate, const ModelParams& params) {
    if (!(p > 0.0)) throw InvalidArgument("energy: density must be positive at interior nodes");
    const double a = diffusion(n_rate, params);
    const double d = v - params.center(n_rate);
    return std::log(p) + d * d / (2.0 * a);
}

}  // namespace

double total_mass(std::span<const double> p, const Grid& grid, double refractory) noexcept {
    double s = 0.0;
    for (int i = 1; i <= grid.cells() - 1; ++i) s += p[i];
    return grid.spacing() * s + refractory;
}

double relative_entropy(std::span<const double> p, const StationaryProfile& stationary,
                        const Grid& grid) {
    return relative_entropy(p, stationary, grid, [](double x) { return 0.5 * (x - 1.0) * (x - 1.0); });
}

double relative_entropy(std::span<const double> p, const StationaryProfile& stationary,
                        const Grid& grid, const std::function<double(double)>& convex) {
    require_positive_profile(stationary, grid);
    double s = 0.0;
    for (int i = 1; i <= grid.cells() - 1; ++i) {
        const double q = stationary.p_inf[i];
        s += convex(p[i] / q) * q;
    }
    return grid.spacing() * s;
}

EntropyReport entropy_dissipation(std::span<const double> p, const StationaryProfile& stationary,
                                  double n_rate, const Grid& grid, const ModelParams& params,
                                  double t) {
    require_positive_profile(stationary, grid);
    const double n_inf = stationary.n_inf;
    if (!(n_inf > 0.0)) throw InvalidArgument("entropy_dissipation: N_inf must be positive");
    const double h = grid.spacing();
    const double a = diffusion(n_inf, params);
    const auto& q = stationary.p_inf;

    EntropyReport report;
    report.t = t;
    report.s = relative_entropy(p, stationary, grid);

    double bulk = 0.0;
    for (int i = 1; i <= grid.cells() - 2; ++i) {
        const double g = g_half(i, n_inf, grid, params);
        const double dr = p[i + 1] / q[i + 1] - p[i] / q[i];
        const double weight = (-0.5 / h - g / 4.0) * q[i + 1] + (-0.5 / h + g / 4.0) * q[i];
        bulk += dr * dr * weight;
    }
    report.bulk = a * bulk;

    const int l = grid.reset_index();
    const double gap = p[l] / q[l] - n_rate / n_inf;
    report.boundary = -0.5 * n_inf * gap * gap;
    return report;
}

double discrete_energy(std::span<const EnergySample> history, double c_bound, const Grid& grid,
                       const ModelParams& params) {
    if (history.empty()) throw InvalidArgument("discrete_energy: empty history");
    EnergyAccumulator acc(grid, params);
    for (const auto& sample : history) acc.add(sample.t, sample.p, sample.n_rate);
    return acc.value(c_bound);
}

EnergyAccumulator::EnergyAccumulator(const Grid& grid, const ModelParams& params)
    : grid_(grid), params_(params) {}

void EnergyAccumulator::add(double t, std::span<const double> p, double n_rate) {
    const int n = grid_.cells();
    const int l = grid_.reset_index();
    double free_energy = 0.0;
    for (int i = 1; i <= n - 1; ++i) {
        free_energy += p[i] * log_ratio(p[i], grid_.node(i), n_rate, params_);
    }
    const double log_l = log_ratio(p[l], grid_.node(l), n_rate, params_);
    const double log_last = log_ratio(p[n - 1], grid_.node(n - 1), n_rate, params_);
    if (count_ > 0) {
        if (!(t > last_t_)) throw InvalidArgument("energy: samples must advance in time");
        const double dt = t - last_t_;
        integral_l_ += 0.5 * dt * (log_l + last_log_l_);
        integral_last_ += 0.5 * dt * (log_last + last_log_last_);
    }
    free_energy_ = free_energy * grid_.spacing();
    last_log_l_ = log_l;
    last_log_last_ = log_last;
    last_t_ = t;
    ++count_;
}

}  // namespace nnlif
