#ifndef OPOT_TORUSINT_HPP
#define OPOT_TORUSINT_HPP

#include <functional>
#include <span>
#include <vector>

#include "opot/polycore.hpp"
#include "opot/schur.hpp"

namespace opot {

/// Tensor product of N-point uniform grids on the circle; every node has
/// quadrature weight N^-d (normalized Lebesgue measure).
struct TorusGrid {
    int dim = 1;
    int points_per_axis = 64;

    TorusGrid(int d, int n);
    long long node_count() const;

    /// Default resolution: 64 points per axis for d <= 2, 32 for d >= 3.
    static TorusGrid preferred(int d);
};

/// Torus line omega -> (e^{i eta_1 omega}, ..., e^{i eta_d omega}).
struct TorusLine {
    std::vector<double> eta;

    explicit TorusLine(std::vector<double> frequencies);
    int dim() const { return static_cast<int>(eta.size()); }
    std::vector<Cx> point(double omega) const;
};

/// Density prod (1-|r_j|^2) / |phi*_n(z)|^2 of the measure attached to the
/// level-n convergent.
struct MeasureWeight {
    SchurData data;
    int level = 0;

    MeasureWeight(SchurData d, int n);
    double operator()(std::span<const Cx> z) const;
};

using RealIntegrand = std::function<double(std::span<const Cx>)>;
using ComplexIntegrand = std::function<Cx(std::span<const Cx>)>;

/// Visits every grid node in row-major order of axis indices.
void for_each_grid_node(const TorusGrid& grid,
                        const std::function<void(std::span<const Cx>)>& fn);

/// Grid mean N^-d sum f(node); exact for Fourier modes below the grid
/// Nyquist order, spectrally accurate for smooth integrands. Node values
/// are combined by pairwise-tree summation. Throws on non-finite values.
double integrate(const TorusGrid& grid, const RealIntegrand& f);
Cx integrate_cx(const TorusGrid& grid, const ComplexIntegrand& f);

/// Integral of log(1 - |f_m|^2) over the torus; the reference value is
/// sum_j log(1-|r_j|^2). Warns on stderr when max |r_j| > 0.95.
double szego_integral(const SchurData& data, const TorusGrid& grid);

/// Integral of log w with w = Re (1+f_m)/(1-f_m) on the torus.
double szego_log_w(const SchurData& data, const TorusGrid& grid);

/// Integral of log |1 - f_m| over the torus (vanishes for standard data).
double outer_log_integral(const SchurData& data, const TorusGrid& grid);

/// Gram matrix G[j][k] = integral of phi_j conj(phi_k) w dtau for
/// j, k <= jmax, with w the top-level measure weight.
std::vector<std::vector<Cx>> gram(const SchurData& data, const TorusGrid& grid, int jmax);

/// Left side Re (1+f_m(z))/(1-f_m(z)) and right side integral of K_z w dtau
/// of the Poisson reproducing identity, for an interior point with
/// every |z_j| <= 0.9.
std::pair<double, double> poisson_check(const SchurData& data, const TorusGrid& grid,
                                        std::span<const Cx> z);

/// Product Poisson kernel K_z evaluated at a torus point w.
double poisson_kernel(std::span<const Cx> z, std::span<const Cx> w);

/// Composite-trapezoid value of (1/2L) integral_{-L}^{L} g(line(omega)) domega.
double line_average(const TorusLine& line, const RealIntegrand& g, double L, double step);

/// Nyquist-safe default sampling step 2 pi / (20 Omega) with
/// Omega = (sum eta_j) * top level.
double default_line_step(const SchurData& data, const TorusLine& line);

/// Lambda_f(eps) = -integral log(1 - |f_m(eps z)|^2) dtau(z).
double lambda_dilated(const SchurData& data, const TorusGrid& grid, double eps);

}  // namespace opot

#endif  // OPOT_TORUSINT_HPP
