#pragma once

#include <vector>

namespace nnlif {

/**
 * Uniform mesh on [v_min, v_fire] with the reset potential on a node.
 *
 * Nodes are v_i = v_min + i*h for i = 0..n. Interface i (the half node
 * v_{i+1/2}) sits between nodes i and i+1. Because v_reset is node l, the
 * Heaviside factor H(v_{i+1/2} - v_reset) is 1 exactly when i >= l and the
 * value H(0) is never needed.
 */
class Grid {
public:
    /// Throws InvalidArgument unless v_min < v_reset < v_fire, n >= 2 and
    /// (v_reset - v_min)/h is an integer to 1e-12 relative tolerance.
    Grid(double v_min, double v_reset, double v_fire, int n);

    double v_min() const noexcept { return v_min_; }
    double v_reset() const noexcept { return v_reset_; }
    double v_fire() const noexcept { return v_fire_; }
    int cells() const noexcept { return n_; }
    double spacing() const noexcept { return h_; }
    int reset_index() const noexcept { return l_; }

    double node(int i) const noexcept { return v_min_ + i * h_; }
    double half_node(int i) const noexcept { return v_min_ + (i + 0.5) * h_; }
    std::vector<double> nodes() const;

    /// H(v_{i+1/2} - v_reset).
    bool right_of_reset(int i) const noexcept { return i >= l_; }

    /// Same interval with n doubled; v_reset stays on a node.
    Grid refined() const;

private:
    double v_min_;
    double v_reset_;
    double v_fire_;
    int n_;
    double h_;
    int l_;
};

/// Drift -v + b N + v_ext and diffusion a0 + a1 N. v_ext is 0 for the base
/// model and nonzero only in the delay/refractory variant.
struct ModelParams {
    double a0 = 1.0;
    double a1 = 0.0;
    double b = 0.0;
    double v_ext = 0.0;

    /// Throws InvalidArgument when a0 <= 0 or any coefficient is not finite.
    void validate() const;

    /// Center of the Maxwellian, b N + v_ext.
    double center(double n_rate) const noexcept { return b * n_rate + v_ext; }
};

double drift(double v, double n_rate, const ModelParams& params) noexcept;

/// a(N) = a0 + a1 N. Throws NumericalFailure(nonpositive_diffusion) when the
/// result is not strictly positive.
double diffusion(double n_rate, const ModelParams& params);

/// exp(-(v - bN - v_ext)^2 / (2 a(N))).
double maxwellian(double v, double n_rate, const ModelParams& params);

/// (((1/m_left) + (1/m_right)) / 2)^-1; throws InvalidArgument on
/// nonpositive input.
double harmonic_mean(double m_left, double m_right);

/**
 * Scharfetter-Gummel weights at every interface for one frozen firing rate.
 *
 * With M^H the harmonic mean of M_i and M_{i+1}, the interface flux is
 *
 *   F_{i+1/2} = -(a/h) * (toward_next[i] * p_{i+1} - toward_self[i] * p_i)
 *
 * where toward_next[i] = M^H/M_{i+1} and toward_self[i] = M^H/M_i. Both are
 * evaluated from the exponent difference U_{i+1} - U_i so that Maxwellians
 * far below double range (large b N) never underflow. Entries exist for all
 * interfaces 0..n-1; the boundary ones are never used by the scheme.
 */
struct SgCoefficients {
    double diffusion = 1.0;
    std::vector<double> toward_next;
    std::vector<double> toward_self;
};

SgCoefficients sg_coefficients(const Grid& grid, double n_rate, const ModelParams& params);

/// g_{i+1/2} = (2/h)(M_i - M_{i+1})/(M_i + M_{i+1}), for 1 <= i <= n-2.
double g_half(int i, double n_rate, const Grid& grid, const ModelParams& params);

/// True when |g_{i+1/2}| <= 2/h at every interface 1..n-2.
bool technical_assumption_holds(const Grid& grid, double n_rate, const ModelParams& params);

}  // namespace nnlif
