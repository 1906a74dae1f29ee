#include "nnlif/harness.hpp"

#include "nnlif/errors.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>

namespace nnlif {

const char* to_string(StopReason reason) noexcept {
    switch (reason) {
        case StopReason::completed: return "completed";
        case StopReason::blowup: return "blowup";
        case StopReason::instability: return "instability";
    }
    return "unknown";
}

std::vector<double> gaussian_ic(double v0, double sigma0, const Grid& grid, double mass) {
    if (!(sigma0 > 0.0) || !std::isfinite(sigma0)) {
        throw InvalidArgument("gaussian_ic: sigma0 must be positive");
    }
    const int n = grid.cells();
    std::vector<double> p(n + 1, 0.0);
    double sum = 0.0;
    for (int i = 1; i <= n - 1; ++i) {
        const double d = grid.node(i) - v0;
        p[i] = std::exp(-d * d / (2.0 * sigma0 * sigma0));
        sum += p[i];
    }
    if (!(sum > 0.0)) {
        throw InvalidArgument("gaussian_ic: Gaussian vanishes at every interior node");
    }
    const double scale = mass / (grid.spacing() * sum);
    for (double& x : p) x *= scale;
    return p;
}

std::vector<double> stationary_ic(double n_inf, const Grid& grid, const ModelParams& params) {
    return normalized_stationary_density(n_inf, grid, params);
}

namespace {

long step_count(double t_end, double tau) {
    return static_cast<long>(std::ceil(t_end / tau - 1e-9));
}

std::vector<double> initial_density(const ScenarioConfig& cfg, const Grid& grid, double mass) {
    if (const auto* g = std::get_if<GaussianIc>(&cfg.ic)) {
        return gaussian_ic(g->v0, g->sigma0, grid, mass);
    }
    auto p = stationary_ic(std::get<StationaryIc>(cfg.ic).n_inf, grid, cfg.params);
    for (double& x : p) x *= mass;
    return p;
}

StationaryProfile entropy_reference(const ScenarioConfig& cfg, const Grid& grid) {
    double n_inf = 0.0;
    if (cfg.outputs.entropy_n_inf) {
        n_inf = *cfg.outputs.entropy_n_inf;
    } else {
        const auto roots = find_stationary_rates(cfg.params, grid);
        if (roots.empty()) {
            throw ConfigError({"outputs.entropy: no stationary state found; set outputs.entropy_n_inf"});
        }
        n_inf = roots.front();
    }
    const bool linear = cfg.params.b == 0.0 && cfg.params.a1 == 0.0;
    const auto flavor = cfg.outputs.entropy_flavor.value_or(
        linear ? ProfileFlavor::discrete_recursion : ProfileFlavor::continuous_quadrature);
    if (flavor == ProfileFlavor::discrete_recursion) {
        return discrete_stationary(n_inf, grid, cfg.params, /*allow_rate_dependent=*/true);
    }
    return continuous_stationary(n_inf, grid, cfg.params);
}

// Uniform view over base and variant states for the time loop.
struct Stepper {
    const ScenarioConfig& cfg;
    const Grid& grid;
    StepConfig step_cfg;
    SolverState base;
    std::optional<DelayRefractoryState> variant;

    const std::vector<double>& p() const { return variant ? variant->base.p : base.p; }
    double rate() const { return variant ? variant->base.n_rate : base.n_rate; }
    double r() const { return variant ? variant->r : 0.0; }

    void advance(double t_next) {
        if (variant) {
            variant = variant_step(*variant, step_cfg, grid, cfg.params);
            variant->base.t = t_next;
        } else {
            base = step(base, step_cfg, grid, cfg.params);
            base.t = t_next;
        }
    }
};

}  // namespace

RunResult run_scenario(const ScenarioConfig& cfg) {
    cfg.validate();
    const Grid grid = cfg.grid();
    cfg.params.validate();

    RunResult result;
    result.v = grid.nodes();

    Stepper stepper{cfg, grid, cfg.step_config(), {}, std::nullopt};
    if (cfg.variant) {
        const double r0 = cfg.variant->r0;
        VariantParams vp{cfg.variant->d, cfg.variant->gamma, cfg.variant->prehistory};
        stepper.variant = make_variant_state(initial_density(cfg, grid, 1.0 - r0), r0, vp, cfg.tau,
                                             grid, cfg.params);
    } else {
        stepper.base = make_state(initial_density(cfg, grid, 1.0), grid, cfg.params);
    }

    if (cfg.outputs.entropy) result.entropy_reference = entropy_reference(cfg, grid);

    const long steps = step_count(cfg.t_end, cfg.tau);
    std::vector<std::pair<long, double>> snapshot_steps;
    for (double ts : cfg.outputs.snapshot_times) {
        snapshot_steps.emplace_back(std::min(steps, std::lround(ts / cfg.tau)), ts);
    }

    std::optional<EnergyAccumulator> energy;
    struct EnergyRaw {
        double t, free_energy, boundary_integral;
    };
    std::vector<EnergyRaw> energy_raw;
    if (cfg.outputs.energy) energy.emplace(grid, cfg.params);
    double max_rate = stepper.rate();

    auto record = [&](long m, bool force) {
        const double t = m * cfg.tau;
        if (m % cfg.outputs.rate_every == 0 || force) {
            result.rate.push_back({t, stepper.rate()});
            result.mass.push_back({t, total_mass(stepper.p(), grid), stepper.r()});
            if (result.entropy_reference) {
                result.entropy.push_back(entropy_dissipation(stepper.p(), *result.entropy_reference,
                                                             stepper.rate(), grid, cfg.params, t));
            }
        }
        for (const auto& [target, requested] : snapshot_steps) {
            if (target == m) result.snapshots.push_back({t, stepper.p()});
        }
        if (energy && (m % cfg.outputs.energy_every == 0 || force)) {
            try {
                if (energy->empty() || t > energy->time()) {
                    energy->add(t, stepper.p(), stepper.rate());
                    energy_raw.push_back({t, energy->free_energy(), energy->boundary_integral()});
                }
            } catch (const InvalidArgument&) {
                energy.reset();  // density touched zero; the functional is undefined from here on
            }
        }
    };

    record(0, true);
    long m = 0;
    for (; m < steps; ++m) {
        const double t_next = (m + 1) * cfg.tau;
        try {
            stepper.advance(t_next);
        } catch (const NumericalFailure& e) {
            const bool rate_failure = e.kind() == NumericalFailure::Kind::firing_rate_breakdown ||
                                      e.kind() == NumericalFailure::Kind::nonpositive_diffusion;
            result.stop_reason = rate_failure ? StopReason::blowup : StopReason::instability;
            result.stop_time = t_next;
            result.stop_detail = e.what();
            break;
        }
        if (cfg.negative_density == NegativeDensityPolicy::warn) {
            const auto& p = stepper.p();
            if (std::any_of(p.begin(), p.end(), [](double x) { return x < 0.0; })) {
                ++result.negative_density_steps;
            }
        }
        max_rate = std::max(max_rate, stepper.rate());
        if (stepper.rate() > cfg.blowup_threshold) {
            record(m + 1, true);
            result.stop_reason = StopReason::blowup;
            result.stop_time = t_next;
            result.stop_detail = "firing rate exceeded blowup_threshold";
            ++m;
            break;
        }
        record(m + 1, m + 1 == steps);
    }

    result.steps = m;
    if (result.stop_reason == StopReason::completed) result.stop_time = m * cfg.tau;
    result.final_p = stepper.p();
    result.final_rate = stepper.rate();
    result.final_r = stepper.r();
    result.final_mass = total_mass(result.final_p, grid);

    if (!energy_raw.empty()) {
        result.energy_c = cfg.outputs.energy_c.value_or(1.2 * max_rate);
        for (const auto& e : energy_raw) {
            result.energy.push_back({e.t, e.free_energy - result.energy_c * e.boundary_integral});
        }
    }
    return result;
}

namespace {

struct LevelRun {
    bool ok = false;
    std::vector<double> p;
    double h = 0.0;
};

LevelRun run_level(ScenarioConfig cfg) {
    cfg.negative_density = NegativeDensityPolicy::warn;
    cfg.outputs = OutputConfig{};
    cfg.outputs.rate_every = std::numeric_limits<int>::max();
    LevelRun out;
    out.h = (cfg.v_fire - cfg.v_min) / cfg.n;
    try {
        auto r = run_scenario(cfg);
        out.ok = r.stop_reason == StopReason::completed;
        out.p = std::move(r.final_p);
    } catch (const NumericalFailure&) {
        out.ok = false;
    }
    return out;
}

}  // namespace

std::vector<OrderRow> convergence_order(const ScenarioConfig& base, RefinementAxis axis, int levels,
                                        bool parallel) {
    if (levels < 3) throw InvalidArgument("convergence_order: need at least 3 levels");
    base.validate();
    if (axis == RefinementAxis::space && base.variant) {
        throw InvalidArgument("convergence_order: spatial study of the variant is not supported");
    }

    std::vector<ScenarioConfig> configs;
    for (int k = 0; k <= levels; ++k) {
        ScenarioConfig c = base;
        if (axis == RefinementAxis::space) {
            c.n = base.n << k;
        } else {
            c.tau = base.tau / std::ldexp(1.0, k);
        }
        configs.push_back(c);
    }

    std::vector<LevelRun> runs(configs.size());
    if (parallel) {
        std::vector<std::future<LevelRun>> futures;
        for (const auto& c : configs) futures.push_back(std::async(std::launch::async, run_level, c));
        for (std::size_t k = 0; k < futures.size(); ++k) runs[k] = futures[k].get();
    } else {
        for (std::size_t k = 0; k < configs.size(); ++k) runs[k] = run_level(configs[k]);
    }

    std::vector<OrderRow> rows(levels);
    for (int k = 0; k < levels; ++k) {
        OrderRow& row = rows[k];
        row.level = k;
        row.step = axis == RefinementAxis::space ? runs[k].h : configs[k].tau;
        row.last = (k == levels - 1);
        if (!runs[k].ok || !runs[k + 1].ok) continue;
        const auto& coarse = runs[k].p;
        const auto& fine = runs[k + 1].p;
        const int stride = axis == RefinementAxis::space ? 2 : 1;
        double l1 = 0.0, linf = 0.0;
        for (std::size_t i = 0; i < coarse.size(); ++i) {
            const double d = std::abs(coarse[i] - fine[i * stride]);
            l1 += d;
            linf = std::max(linf, d);
        }
        row.err_l1 = runs[k].h * l1;
        row.err_linf = linf;
    }
    for (int k = 0; k + 1 < levels; ++k) {
        if (rows[k].err_l1 && rows[k + 1].err_l1) {
            rows[k].order_l1 = std::log2(*rows[k].err_l1 / *rows[k + 1].err_l1);
            rows[k].order_linf = std::log2(*rows[k].err_linf / *rows[k + 1].err_linf);
        }
    }
    return rows;
}

OscillationReport oscillation_report(std::span<const RatePoint> series) {
    if (series.size() < 100) throw InvalidArgument("oscillation_report: need at least 100 samples");
    const std::size_t start = series.size() / 5;
    const auto tail = series.subspan(start);

    double lo = tail.front().n, hi = tail.front().n;
    for (const auto& s : tail) {
        lo = std::min(lo, s.n);
        hi = std::max(hi, s.n);
    }
    const double range = hi - lo;
    const double floor = 1e-9 * std::max(1.0, std::abs(hi));

    OscillationReport report;
    if (range > floor) {
        const double min_rise = std::max(0.01 * range, floor);
        double trough = tail.front().n;
        for (std::size_t i = 1; i + 1 < tail.size(); ++i) {
            trough = std::min(trough, tail[i].n);
            const bool local_max = tail[i - 1].n < tail[i].n && tail[i].n >= tail[i + 1].n;
            if (local_max && tail[i].n - trough >= min_rise) {
                report.peak_times.push_back(tail[i].t);
                report.peak_heights.push_back(tail[i].n);
                trough = tail[i].n;
            }
        }
    }

    const std::size_t peaks = report.peak_times.size();
    if (peaks < 3) {
        report.summary = "no sustained oscillation";
        return report;
    }
    std::vector<double> spacing(peaks - 1);
    for (std::size_t k = 0; k + 1 < peaks; ++k) {
        spacing[k] = report.peak_times[k + 1] - report.peak_times[k];
    }
    const double mean = std::accumulate(spacing.begin(), spacing.end(), 0.0) / spacing.size();
    const auto [smin, smax] = std::minmax_element(spacing.begin(), spacing.end());
    report.period = mean;
    report.spacing_spread = (*smax - *smin) / mean;

    const double t_mean =
        std::accumulate(report.peak_times.begin(), report.peak_times.end(), 0.0) / peaks;
    const double y_mean =
        std::accumulate(report.peak_heights.begin(), report.peak_heights.end(), 0.0) / peaks;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < peaks; ++k) {
        sxy += (report.peak_times[k] - t_mean) * (report.peak_heights[k] - y_mean);
        sxx += (report.peak_times[k] - t_mean) * (report.peak_times[k] - t_mean);
    }
    report.amplitude_slope = sxx > 0.0 ? sxy / sxx : 0.0;
    report.sustained = true;
    report.summary = "sustained oscillation";
    return report;
}

}  // namespace nnlif
