#include "nnlif/scenario.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace nnlif {

namespace {

std::string join_lines(const std::vector<std::string>& items) {
    std::string out = "invalid scenario configuration";
    for (const auto& item : items) {
        out += "\n  ";
        out += item;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

struct Value {
    enum class Type { number, string, boolean, array } type = Type::number;
    double number = 0.0;
    std::string text;
    bool flag = false;
    std::vector<double> items;
};

std::optional<double> parse_number(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    if (s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size()) return std::nullopt;
    return v;
}

std::string strip_comment(std::string_view line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) return std::string(line.substr(0, i));
    }
    return std::string(line);
}

std::optional<Value> parse_value(std::string_view raw) {
    const auto s = trim(raw);
    Value v;
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
        v.type = Value::Type::string;
        v.text = std::string(s.substr(1, s.size() - 2));
        return v;
    }
    if (s == "true" || s == "false") {
        v.type = Value::Type::boolean;
        v.flag = (s == "true");
        return v;
    }
    if (s.size() >= 2 && s.front() == '[' && s.back() == ']') {
        v.type = Value::Type::array;
        auto body = trim(s.substr(1, s.size() - 2));
        while (!body.empty()) {
            const auto comma = body.find(',');
            const auto item = trim(body.substr(0, comma));
            if (!item.empty()) {
                auto x = parse_number(item);
                if (!x) return std::nullopt;
                v.items.push_back(*x);
            }
            if (comma == std::string_view::npos) break;
            body = body.substr(comma + 1);
        }
        return v;
    }
    auto x = parse_number(s);
    if (!x) return std::nullopt;
    v.number = *x;
    return v;
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "a0", "a1", "b", "v_ext", "v_min", "v_reset", "v_fire", "n", "tau", "t_end", "scheme",
        "negative_density", "blowup_threshold",
        "ic.kind", "ic.v0", "ic.sigma0", "ic.n_inf",
        "variant.d", "variant.gamma", "variant.r0", "variant.prehistory",
        "outputs.rate_every", "outputs.snapshot_times", "outputs.entropy", "outputs.energy",
        "outputs.energy_every", "outputs.entropy_n_inf", "outputs.entropy_flavor",
        "outputs.energy_c",
    };
    return keys;
}

class Reader {
public:
    explicit Reader(std::map<std::string, Value> values) : values_(std::move(values)) {}

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    void number(const std::string& key, double& out) {
        auto it = values_.find(key);
        if (it == values_.end()) return;
        if (it->second.type != Value::Type::number) {
            problems.push_back(key + ": expected a number");
            return;
        }
        out = it->second.number;
    }

    void integer(const std::string& key, int& out) {
        double x = out;
        auto it = values_.find(key);
        if (it == values_.end()) return;
        number(key, x);
        if (it->second.type == Value::Type::number) {
            if (x != std::floor(x) || std::abs(x) > 2e9) {
                problems.push_back(key + ": expected an integer");
                return;
            }
            out = static_cast<int>(x);
        }
    }

    void boolean(const std::string& key, bool& out) {
        auto it = values_.find(key);
        if (it == values_.end()) return;
        if (it->second.type != Value::Type::boolean) {
            problems.push_back(key + ": expected true or false");
            return;
        }
        out = it->second.flag;
    }

    std::optional<std::string> string(const std::string& key) {
        auto it = values_.find(key);
        if (it == values_.end()) return std::nullopt;
        if (it->second.type != Value::Type::string) {
            problems.push_back(key + ": expected a quoted string");
            return std::nullopt;
        }
        return it->second.text;
    }

    void array(const std::string& key, std::vector<double>& out) {
        auto it = values_.find(key);
        if (it == values_.end()) return;
        if (it->second.type == Value::Type::number) {
            out = {it->second.number};
            return;
        }
        if (it->second.type != Value::Type::array) {
            problems.push_back(key + ": expected an array of numbers");
            return;
        }
        out = it->second.items;
    }

    std::vector<std::string> problems;

private:
    std::map<std::string, Value> values_;
};

}  // namespace

const char* to_string(Scheme scheme) noexcept {
    return scheme == Scheme::explicit_euler ? "explicit" : "semi_implicit";
}

ConfigError::ConfigError(std::vector<std::string> problems)
    : InvalidArgument(join_lines(problems)), problems_(std::move(problems)) {}

void ScenarioConfig::validate() const {
    std::vector<std::string> p;
    if (!(params.a0 > 0.0) || !std::isfinite(params.a0)) p.push_back("a0: must be positive");
    if (!std::isfinite(params.a1)) p.push_back("a1: must be finite");
    if (!std::isfinite(params.b)) p.push_back("b: must be finite");
    if (!std::isfinite(params.v_ext)) p.push_back("v_ext: must be finite");
    if (!(v_min < v_reset && v_reset < v_fire)) {
        p.push_back("v_min, v_reset, v_fire: require v_min < v_reset < v_fire");
    }
    if (n < 2) p.push_back("n: must be at least 2");
    if (p.empty()) {
        try {
            (void)grid();
        } catch (const InvalidArgument& e) {
            p.push_back(std::string("v_reset: ") + e.what());
        }
    }
    if (!(tau > 0.0) || !std::isfinite(tau)) p.push_back("tau: must be positive");
    if (!(t_end > 0.0) || !std::isfinite(t_end)) p.push_back("t_end: must be positive");
    if (!(blowup_threshold > 0.0)) p.push_back("blowup_threshold: must be positive");
    if (const auto* g = std::get_if<GaussianIc>(&ic)) {
        if (!(g->sigma0 > 0.0) || !std::isfinite(g->sigma0)) p.push_back("ic.sigma0: must be positive");
        if (!std::isfinite(g->v0)) p.push_back("ic.v0: must be finite");
    } else if (const auto* s = std::get_if<StationaryIc>(&ic)) {
        if (!(s->n_inf > 0.0)) p.push_back("ic.n_inf: must be positive");
    }
    if (variant) {
        if (!(variant->d >= 0.0)) p.push_back("variant.d: must be nonnegative");
        if (!(variant->gamma > 0.0)) p.push_back("variant.gamma: must be positive");
        if (!(variant->r0 >= 0.0 && variant->r0 < 1.0)) p.push_back("variant.r0: must lie in [0, 1)");
        if (variant->d > 0.0 && tau > 0.0) {
            try {
                (void)delay_steps(variant->d, tau);
            } catch (const InvalidArgument&) {
                p.push_back("variant.d: must be an integer multiple of tau");
            }
        }
        if (scheme != Scheme::semi_implicit) p.push_back("scheme: the variant model is semi_implicit only");
    }
    if (outputs.rate_every < 1) p.push_back("outputs.rate_every: must be at least 1");
    if (outputs.energy_every < 1) p.push_back("outputs.energy_every: must be at least 1");
    for (double t : outputs.snapshot_times) {
        if (!(t >= 0.0 && t <= t_end)) {
            p.push_back("outputs.snapshot_times: every time must lie in [0, t_end]");
            break;
        }
    }
    if (outputs.entropy_n_inf && !(*outputs.entropy_n_inf > 0.0)) {
        p.push_back("outputs.entropy_n_inf: must be positive");
    }
    if (!p.empty()) throw ConfigError(std::move(p));
}

ScenarioConfig parse_scenario(std::string_view text) {
    std::map<std::string, Value> values;
    std::vector<std::string> problems;
    std::string table;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string stripped = strip_comment(raw);
        const auto line = trim(stripped);
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(line_no);
        if (line.front() == '[') {
            if (line.back() != ']') {
                problems.push_back(where + ": malformed table header");
                continue;
            }
            table = std::string(trim(line.substr(1, line.size() - 2)));
            if (table != "ic" && table != "variant" && table != "outputs") {
                problems.push_back(where + ": unknown table [" + table + "]");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            problems.push_back(where + ": expected key = value");
            continue;
        }
        std::string key(trim(line.substr(0, eq)));
        if (!table.empty()) key = table + "." + key;
        if (!known_keys().count(key)) {
            problems.push_back(key + ": unknown key");
            continue;
        }
        auto value = parse_value(line.substr(eq + 1));
        if (!value) {
            problems.push_back(key + ": cannot parse value");
            continue;
        }
        if (values.count(key)) problems.push_back(key + ": given more than once");
        values[key] = std::move(*value);
    }

    Reader r(std::move(values));
    ScenarioConfig cfg;
    r.number("a0", cfg.params.a0);
    r.number("a1", cfg.params.a1);
    r.number("b", cfg.params.b);
    r.number("v_ext", cfg.params.v_ext);
    r.number("v_min", cfg.v_min);
    r.number("v_reset", cfg.v_reset);
    r.number("v_fire", cfg.v_fire);
    r.integer("n", cfg.n);
    r.number("tau", cfg.tau);
    r.number("t_end", cfg.t_end);
    r.number("blowup_threshold", cfg.blowup_threshold);
    if (auto s = r.string("scheme")) {
        if (*s == "explicit") cfg.scheme = Scheme::explicit_euler;
        else if (*s == "semi_implicit") cfg.scheme = Scheme::semi_implicit;
        else r.problems.push_back("scheme: expected \"explicit\" or \"semi_implicit\"");
    }
    if (auto s = r.string("negative_density")) {
        if (*s == "abort") cfg.negative_density = NegativeDensityPolicy::abort;
        else if (*s == "warn") cfg.negative_density = NegativeDensityPolicy::warn;
        else r.problems.push_back("negative_density: expected \"abort\" or \"warn\"");
    }

    std::string kind = "gaussian";
    if (auto s = r.string("ic.kind")) kind = *s;
    if (kind == "gaussian") {
        GaussianIc g;
        r.number("ic.v0", g.v0);
        r.number("ic.sigma0", g.sigma0);
        if (r.has("ic.n_inf")) r.problems.push_back("ic.n_inf: only valid with ic.kind = \"stationary\"");
        cfg.ic = g;
    } else if (kind == "stationary") {
        StationaryIc s;
        if (!r.has("ic.n_inf")) r.problems.push_back("ic.n_inf: required for a stationary initial condition");
        r.number("ic.n_inf", s.n_inf);
        cfg.ic = s;
    } else {
        r.problems.push_back("ic.kind: expected \"gaussian\" or \"stationary\"");
    }

    if (r.has("variant.d") || r.has("variant.gamma") || r.has("variant.r0") ||
        r.has("variant.prehistory")) {
        VariantConfig v;
        if (!r.has("variant.gamma")) r.problems.push_back("variant.gamma: required for the variant model");
        r.number("variant.d", v.d);
        r.number("variant.gamma", v.gamma);
        r.number("variant.r0", v.r0);
        if (auto s = r.string("variant.prehistory")) {
            if (*s == "initial") v.prehistory = PreHistory::initial_rate;
            else if (*s == "zero") v.prehistory = PreHistory::zero;
            else r.problems.push_back("variant.prehistory: expected \"initial\" or \"zero\"");
        }
        cfg.variant = v;
    }

    r.integer("outputs.rate_every", cfg.outputs.rate_every);
    r.array("outputs.snapshot_times", cfg.outputs.snapshot_times);
    r.boolean("outputs.entropy", cfg.outputs.entropy);
    r.boolean("outputs.energy", cfg.outputs.energy);
    r.integer("outputs.energy_every", cfg.outputs.energy_every);
    if (r.has("outputs.entropy_n_inf")) {
        double x = 0.0;
        r.number("outputs.entropy_n_inf", x);
        cfg.outputs.entropy_n_inf = x;
    }
    if (auto s = r.string("outputs.entropy_flavor")) {
        if (*s == "discrete") cfg.outputs.entropy_flavor = ProfileFlavor::discrete_recursion;
        else if (*s == "continuous") cfg.outputs.entropy_flavor = ProfileFlavor::continuous_quadrature;
        else r.problems.push_back("outputs.entropy_flavor: expected \"discrete\" or \"continuous\"");
    }
    if (r.has("outputs.energy_c")) {
        double x = 0.0;
        r.number("outputs.energy_c", x);
        cfg.outputs.energy_c = x;
    }

    problems.insert(problems.end(), r.problems.begin(), r.problems.end());
    if (!problems.empty()) throw ConfigError(std::move(problems));
    cfg.validate();
    return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({path.string() + ": cannot open file"});
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

}  // namespace nnlif
