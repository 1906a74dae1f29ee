#include "nnlif/stationary.hpp"

#include "nnlif/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nnlif {

namespace {

constexpr double kQuadratureTolerance = 1e-13;  // relative, per cell
constexpr unsigned kQuadratureDepth = 12;

void require_positive_rate(double n_rate, const char* where) {
    if (!(n_rate > 0.0) || !std::isfinite(n_rate)) {
        std::ostringstream msg;
        msg << where << ": firing rate must be positive, got " << n_rate;
        throw InvalidArgument(msg.str());
    }
}

}  // namespace

std::vector<double> stationary_density(double n_inf, const Grid& grid, const ModelParams& params) {
    require_positive_rate(n_inf, "stationary_density");
    const double a = diffusion(n_inf, params);
    const double center = params.center(n_inf);
    // exponent(v) = h(v)^2/(2a) with h(v) = center - v.
    auto exponent = [&](double v) { return (center - v) * (center - v) / (2.0 * a); };

    const int n = grid.cells();
    const int l = grid.reset_index();
    // Convex exponent: its maximum over [v_reset, v_fire] is at an endpoint.
    const double shift = std::max(exponent(grid.v_reset()), exponent(grid.v_fire()));

    // tail[i] = integral_{v_i}^{v_fire} exp(exponent - shift), for i >= l.
    std::vector<double> tail(n + 1, 0.0);
    using Quadrature = boost::math::quadrature::gauss_kronrod<double, 15>;
    for (int j = n - 1; j >= l; --j) {
        auto integrand = [&](double w) { return std::exp(exponent(w) - shift); };
        const double cell =
            Quadrature::integrate(integrand, grid.node(j), grid.node(j + 1), kQuadratureDepth,
                                  kQuadratureTolerance);
        if (!std::isfinite(cell)) {
            throw NumericalFailure(NumericalFailure::Kind::quadrature,
                                   "stationary_density: non-finite cell integral");
        }
        tail[j] = tail[j + 1] + cell;
    }

    std::vector<double> p(n + 1, 0.0);
    for (int i = 0; i < n; ++i) {
        const double integral = tail[std::max(i, l)];
        if (integral <= 0.0) continue;
        p[i] = (n_inf / a) * std::exp(shift - exponent(grid.node(i)) + std::log(integral));
        if (!std::isfinite(p[i])) {
            throw NumericalFailure(NumericalFailure::Kind::quadrature,
                                   "stationary_density: non-finite density");
        }
    }
    p[n] = 0.0;
    return p;
}

StationaryProfile continuous_stationary(double n_inf, const Grid& grid, const ModelParams& params) {
    return {n_inf, stationary_density(n_inf, grid, params), ProfileFlavor::continuous_quadrature};
}

double normalization_defect(double n_rate, const Grid& grid, const ModelParams& params) {
    const auto p = stationary_density(n_rate, grid, params);
    double s = 0.0;
    for (int i = 1; i <= grid.cells() - 1; ++i) s += p[i];
    return grid.spacing() * s - 1.0;
}

double truncation_tail(const StationaryProfile& profile) noexcept {
    return profile.p_inf.empty() ? 0.0 : profile.p_inf.front() * 1.0;
}

std::vector<double> find_stationary_rates(const ModelParams& params, const Grid& grid,
                                          const RateSearch& search) {
    if (!(search.n_max > 0.0)) throw InvalidArgument("find_stationary_rates: n_max must be positive");
    if (search.samples < 2) throw InvalidArgument("find_stationary_rates: need at least 2 samples");
    if (!(search.n_min_fraction > 0.0 && search.n_min_fraction < 1.0)) {
        throw InvalidArgument("find_stationary_rates: n_min_fraction must lie in (0, 1)");
    }

    // Rates where a(N) <= 0 are outside the model and treated as undefined.
    auto defect = [&](double n_rate, double& out) {
        try {
            out = normalization_defect(n_rate, grid, params);
            return std::isfinite(out);
        } catch (const NumericalFailure&) {
            return false;
        }
    };

    const double lo = search.n_max * search.n_min_fraction;
    const double log_step = std::log(search.n_max / lo) / (search.samples - 1);
    std::vector<double> roots;
    double prev_n = 0.0, prev_f = 0.0;
    bool have_prev = false;
    for (int k = 0; k < search.samples; ++k) {
        const double n_rate = (k == search.samples - 1) ? search.n_max : lo * std::exp(k * log_step);
        double f = 0.0;
        if (!defect(n_rate, f)) {
            have_prev = false;
            continue;
        }
        if (f == 0.0) {
            roots.push_back(n_rate);
        } else if (have_prev && (prev_f < 0.0) != (f < 0.0) && prev_f != 0.0) {
            double left = prev_n, right = n_rate, f_left = prev_f;
            double mid = 0.5 * (left + right), f_mid = f;
            bool ok = true;
            for (int it = 0; it < 200 && right - left > 1e-13 * std::max(1.0, mid); ++it) {
                mid = 0.5 * (left + right);
                if (!defect(mid, f_mid)) {
                    ok = false;
                    break;
                }
                if (f_mid == 0.0) break;
                if ((f_mid < 0.0) == (f_left < 0.0)) {
                    left = mid;
                    f_left = f_mid;
                } else {
                    right = mid;
                }
            }
            // A sign change across a singularity is not a root.
            if (ok && std::abs(f_mid) < 1e-8) roots.push_back(mid);
        }
        prev_n = n_rate;
        prev_f = f;
        have_prev = true;
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double x, double y) { return std::abs(x - y) <= 1e-10 * std::max(1.0, x); }),
                roots.end());
    return roots;
}

StationaryProfile discrete_stationary(double n_inf, const Grid& grid, const ModelParams& params,
                                      bool allow_rate_dependent) {
    require_positive_rate(n_inf, "discrete_stationary");
    if (!allow_rate_dependent && (params.b != 0.0 || params.a1 != 0.0)) {
        throw InvalidArgument(
            "discrete_stationary: requires b = 0 and a1 = 0 (Maxwellians independent of N)");
    }
    if (!technical_assumption_holds(grid, n_inf, params)) {
        throw InvalidArgument("discrete_stationary: |g| <= 2/h violated");
    }
    const int n = grid.cells();
    const double h = grid.spacing();
    const double a = diffusion(n_inf, params);

    StationaryProfile out{n_inf, std::vector<double>(n + 1, 0.0), ProfileFlavor::discrete_recursion};
    auto& p = out.p_inf;
    p[n - 1] = h * n_inf / a;
    for (int i = n - 2; i >= 1; --i) {
        const double g = g_half(i, n_inf, grid, params);
        const double denom = a / h - a * g / 2.0;
        if (!(denom > 0.0)) {
            throw InvalidArgument("discrete_stationary: degenerate recursion coefficient");
        }
        const double source = grid.right_of_reset(i) ? n_inf : 0.0;
        p[i] = ((a / h + a * g / 2.0) * p[i + 1] + source) / denom;
    }
    return out;
}

std::vector<double> normalized_stationary_density(double n_inf, const Grid& grid,
                                                  const ModelParams& params) {
    auto p = stationary_density(n_inf, grid, params);
    p.front() = 0.0;
    p.back() = 0.0;
    double mass = 0.0;
    for (int i = 1; i <= grid.cells() - 1; ++i) mass += p[i];
    mass *= grid.spacing();
    if (!(mass > 0.0)) throw InvalidArgument("stationary profile has zero mass");
    for (double& x : p) x /= mass;
    return p;
}

}  // namespace nnlif
