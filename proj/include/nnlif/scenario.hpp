#pragma once

#include "nnlif/delay_refractory.hpp"
#include "nnlif/errors.hpp"
#include "nnlif/grid_model.hpp"
#include "nnlif/solver.hpp"
#include "nnlif/stationary.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace nnlif {

struct GaussianIc {
    double v0 = 0.0;
    double sigma0 = 0.5;
};

struct StationaryIc {
    double n_inf = 0.0;
};

using InitialCondition = std::variant<GaussianIc, StationaryIc>;

struct VariantConfig {
    double d = 0.0;
    double gamma = 1.0;
    double r0 = 0.0;
    PreHistory prehistory = PreHistory::initial_rate;
};

struct OutputConfig {
    int rate_every = 1;
    std::vector<double> snapshot_times;
    bool entropy = false;
    bool energy = false;
    int energy_every = 10;
    /// Reference stationary rate for the entropy; searched for when absent.
    std::optional<double> entropy_n_inf;
    /// Defaults to the discrete profile when b = a1 = 0, else continuous.
    std::optional<ProfileFlavor> entropy_flavor;
    /// Energy constant C; defaults to 1.2 times the largest observed rate.
    std::optional<double> energy_c;
};

struct ScenarioConfig {
    ModelParams params;
    double v_min = -4.0;
    double v_reset = 1.0;
    double v_fire = 2.0;
    int n = 300;
    double tau = 1e-3;
    double t_end = 1.0;
    Scheme scheme = Scheme::semi_implicit;
    InitialCondition ic = GaussianIc{};
    std::optional<VariantConfig> variant;
    OutputConfig outputs;
    NegativeDensityPolicy negative_density = NegativeDensityPolicy::abort;
    double blowup_threshold = 1e3;

    Grid grid() const { return Grid(v_min, v_reset, v_fire, n); }
    StepConfig step_config() const { return {tau, scheme, negative_density, blowup_threshold}; }

    /// Throws ConfigError listing every invalid field.
    void validate() const;
};

/// Invalid configuration; what() lists one "field: problem" per line.
class ConfigError : public InvalidArgument {
public:
    explicit ConfigError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    std::vector<std::string> problems_;
};

/**
 * Parses a scenario from flat TOML-style text: `key = value` lines, `#`
 * comments, optional `[ic]`, `[variant]` and `[outputs]` table headers (or
 * dotted keys such as `ic.kind`). Values are numbers, quoted strings,
 * true/false or one-line arrays of numbers. Unknown keys are errors.
 */
ScenarioConfig parse_scenario(std::string_view text);

ScenarioConfig load_scenario(const std::filesystem::path& path);

const char* to_string(Scheme scheme) noexcept;

}  // namespace nnlif
