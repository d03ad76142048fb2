#ifndef OPOT_LAYERED_HPP
#define OPOT_LAYERED_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "opot/schur.hpp"
#include "opot/torusint.hpp"

namespace opot {

/// Piecewise-constant impedance on [0, b]: interfaces 0 < y_1 < ... < y_d < b
/// and impedances a_0..a_d, one per layer.
struct LayeredMedium {
    double b = 1.0;
    std::vector<double> y;
    std::vector<double> a;

    int interfaces() const { return static_cast<int>(y.size()); }
    void validate() const;

    std::string to_json() const;
    static LayeredMedium from_json(const std::string& text);
    static LayeredMedium load(const std::string& path);
};

/// Schur data r_j = (a_{j-1} - a_j)/(a_{j-1} + a_j) with allocation
/// (1, ..., d), plus the torus line of layer widths eta_j = y_j - y_{j-1}.
std::pair<SchurData, TorusLine> medium_to_schur(const LayeredMedium& m);

/// Reflection coefficient through the Schur composition: the top convergent
/// evaluated on the line of round-trip layer phases, z_j = e^{2 i eta_j omega}.
Cx reflection_schur(const LayeredMedium& m, double omega);

/// Reflection coefficient from the boundary-value problem
/// (zeta u')' + omega^2 zeta u = 0 on [0, b], unit incoming wave at 0 and
/// none at b, solved exactly with per-layer plane waves; omega != 0.
Cx reflection_ode(const LayeredMedium& m, double omega);

/// Sampled reflection values with their provenance ("ode" or "schur").
struct ReflectionSpectrum {
    std::vector<double> omegas;
    std::vector<Cx> R;
    std::string source;
};

/// Uniform sweep of n frequencies over [-omega_max, omega_max], cell-centered
/// so omega = 0 is never sampled. Every |R| is checked against the strict
/// energy bound.
ReflectionSpectrum sweep_reflection(const LayeredMedium& m, double omega_max, int n,
                                    const std::string& source);

struct TraceRow {
    double L = 0.0;
    double average = 0.0;
    double reference = 0.0;
    double abs_error = 0.0;
};

/// For each L, the symmetric line average of log(1 - |R|^2) against the
/// reference sum_j log(1 - r_j^2).
std::vector<TraceRow> trace_check(const LayeredMedium& m, std::span<const double> L_schedule);

}  // namespace opot

#endif  // OPOT_LAYERED_HPP
