#include "opot/torusint.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>

namespace opot {

namespace {

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    size_t half = v.size() / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

std::vector<Cx> axis_points(int n) {
    std::vector<Cx> pts(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        double theta = 2.0 * std::numbers::pi * k / n;
        pts[static_cast<size_t>(k)] = Cx{std::cos(theta), std::sin(theta)};
    }
    return pts;
}

void warn_near_unit_parameters(const SchurData& data) {
    double worst = 0.0;
    for (const Cx& r : data.r) worst = std::max(worst, std::abs(r));
    if (worst > 0.95)
        std::fprintf(stderr,
                     "warning: max |r_j| = %.6f > 0.95, integrand is near-singular; "
                     "refine the grid\n",
                     worst);
}

}  // namespace

void for_each_grid_node(const TorusGrid& grid, const std::function<void(std::span<const Cx>)>& fn) {
    const auto axis = axis_points(grid.points_per_axis);
    std::vector<Cx> z(static_cast<size_t>(grid.dim));
    const long long total = grid.node_count();
    for (long long flat = 0; flat < total; ++flat) {
        long long rem = flat;
        for (int i = grid.dim - 1; i >= 0; --i) {
            z[static_cast<size_t>(i)] = axis[static_cast<size_t>(rem % grid.points_per_axis)];
            rem /= grid.points_per_axis;
        }
        fn(std::span<const Cx>(z));
    }
}

TorusGrid::TorusGrid(int d, int n) : dim(d), points_per_axis(n) {
    if (d < 1) throw std::invalid_argument("TorusGrid dimension must be >= 1");
    if (n < 2) throw std::invalid_argument("TorusGrid needs at least 2 points per axis");
}

long long TorusGrid::node_count() const {
    long long total = 1;
    for (int i = 0; i < dim; ++i) total *= points_per_axis;
    return total;
}

TorusGrid TorusGrid::preferred(int d) { return TorusGrid(d, d <= 2 ? 64 : 32); }

TorusLine::TorusLine(std::vector<double> frequencies) : eta(std::move(frequencies)) {
    if (eta.empty()) throw std::invalid_argument("TorusLine needs at least one frequency");
    for (double f : eta)
        if (!(f > 0.0)) throw std::invalid_argument("TorusLine frequencies must be positive");
}

std::vector<Cx> TorusLine::point(double omega) const {
    std::vector<Cx> z(eta.size());
    for (size_t i = 0; i < eta.size(); ++i) {
        double phase = eta[i] * omega;
        z[i] = Cx{std::cos(phase), std::sin(phase)};
    }
    return z;
}

MeasureWeight::MeasureWeight(SchurData d, int n) : data(std::move(d)), level(n) {
    data.validate();
    if (n < 0 || n > data.top_level()) throw std::invalid_argument("MeasureWeight level out of range");
}

double MeasureWeight::operator()(std::span<const Cx> z) const {
    Mat2 p = eval_transfer(data, level, z);
    double num = 1.0;
    for (int j = 1; j <= level; ++j) num *= 1.0 - std::norm(data.r[j]);
    return num / std::norm(p.d);
}

double integrate(const TorusGrid& grid, const RealIntegrand& f) {
    std::vector<double> values;
    values.reserve(static_cast<size_t>(grid.node_count()));
    for_each_grid_node(grid, [&](std::span<const Cx> z) {
        double v = f(z);
        if (!std::isfinite(v))
            throw std::domain_error("integrate: non-finite integrand value at node " +
                                    std::to_string(values.size()));
        values.push_back(v);
    });
    return pairwise_sum(values) / static_cast<double>(grid.node_count());
}

Cx integrate_cx(const TorusGrid& grid, const ComplexIntegrand& f) {
    std::vector<double> re, im;
    re.reserve(static_cast<size_t>(grid.node_count()));
    im.reserve(static_cast<size_t>(grid.node_count()));
    for_each_grid_node(grid, [&](std::span<const Cx> z) {
        Cx v = f(z);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::domain_error("integrate_cx: non-finite integrand value at node " +
                                    std::to_string(re.size()));
        re.push_back(v.real());
        im.push_back(v.imag());
    });
    return Cx{pairwise_sum(re), pairwise_sum(im)} / static_cast<double>(grid.node_count());
}

double szego_integral(const SchurData& data, const TorusGrid& grid) {
    data.validate();
    warn_near_unit_parameters(data);
    const int m = data.top_level();
    return integrate(grid, [&](std::span<const Cx> z) {
        return std::log(1.0 - std::norm(eval_convergent(data, m, z)));
    });
}

double szego_log_w(const SchurData& data, const TorusGrid& grid) {
    data.validate();
    warn_near_unit_parameters(data);
    const int m = data.top_level();
    return integrate(grid, [&](std::span<const Cx> z) {
        Cx f = eval_convergent(data, m, z);
        return std::log(((1.0 + f) / (1.0 - f)).real());
    });
}

double outer_log_integral(const SchurData& data, const TorusGrid& grid) {
    data.validate();
    const int m = data.top_level();
    return integrate(grid, [&](std::span<const Cx> z) {
        return std::log(std::abs(1.0 - eval_convergent(data, m, z)));
    });
}

std::vector<std::vector<Cx>> gram(const SchurData& data, const TorusGrid& grid, int jmax) {
    data.validate();
    const int m = data.top_level();
    if (jmax < 0 || jmax > m) throw std::invalid_argument("gram: jmax must lie in 0..top level");
    if (grid.dim != data.dim) throw std::invalid_argument("gram: grid dimension mismatch");

    double total_weight_product = 1.0;
    for (int j = 1; j <= m; ++j) total_weight_product *= 1.0 - std::norm(data.r[j]);

    std::vector<std::vector<Cx>> g(static_cast<size_t>(jmax) + 1,
                                   std::vector<Cx>(static_cast<size_t>(jmax) + 1, Cx{0, 0}));
    std::vector<Cx> phi_vals(static_cast<size_t>(jmax) + 1);

    for_each_grid_node(grid, [&](std::span<const Cx> z) {
        Mat2 p{Cx{1, 0}, Cx{1, 0}, Cx{-1, 0}, Cx{1, 0}};
        if (jmax >= 0) phi_vals[0] = -p.c;
        for (int j = 1; j <= m; ++j) {
            const Cx zv = z[static_cast<size_t>(data.nu[j - 1] - 1)];
            const Cx r = data.r[j];
            p = p * Mat2{zv, r * zv, std::conj(r), Cx{1, 0}};
            if (j <= jmax) phi_vals[static_cast<size_t>(j)] = -p.c;
        }
        const double w = total_weight_product / std::norm(p.d);
        for (int j = 0; j <= jmax; ++j)
            for (int k = 0; k <= jmax; ++k)
                g[static_cast<size_t>(j)][static_cast<size_t>(k)] +=
                    phi_vals[static_cast<size_t>(j)] * std::conj(phi_vals[static_cast<size_t>(k)]) * w;
    });

    const double scale = 1.0 / static_cast<double>(grid.node_count());
    for (auto& row : g)
        for (Cx& v : row) v *= scale;
    return g;
}

double poisson_kernel(std::span<const Cx> z, std::span<const Cx> w) {
    if (z.size() != w.size()) throw std::invalid_argument("poisson_kernel dimension mismatch");
    double k = 1.0;
    for (size_t j = 0; j < z.size(); ++j) {
        double s = std::abs(z[j]);
        double phi = std::arg(z[j]);
        double theta = std::arg(w[j]);
        k *= (1.0 - s * s) / (1.0 - 2.0 * s * std::cos(phi - theta) + s * s);
    }
    return k;
}

std::pair<double, double> poisson_check(const SchurData& data, const TorusGrid& grid,
                                        std::span<const Cx> z) {
    data.validate();
    if (static_cast<int>(z.size()) != data.dim)
        throw std::invalid_argument("poisson_check: point dimension mismatch");
    for (const Cx& v : z)
        if (std::abs(v) > 0.9)
            throw std::invalid_argument("poisson_check requires every |z_j| <= 0.9");

    const int m = data.top_level();
    Cx f = eval_convergent(data, m, z);
    double lhs = ((1.0 + f) / (1.0 - f)).real();

    MeasureWeight weight(data, m);
    double rhs = integrate(grid, [&](std::span<const Cx> node) {
        return poisson_kernel(z, node) * weight(node);
    });
    return {lhs, rhs};
}

double line_average(const TorusLine& line, const RealIntegrand& g, double L, double step) {
    if (!(L > 0.0)) throw std::invalid_argument("line_average: L must be positive");
    if (!(step > 0.0)) throw std::invalid_argument("line_average: step must be positive");
    const long long n = std::max<long long>(1, static_cast<long long>(std::ceil(2.0 * L / step)));
    const double h = 2.0 * L / static_cast<double>(n);

    std::vector<double> values;
    values.reserve(static_cast<size_t>(n) + 1);
    for (long long k = 0; k <= n; ++k) {
        const double omega = -L + h * static_cast<double>(k);
        const std::vector<Cx> z = line.point(omega);
        double v = g(z);
        if (!std::isfinite(v))
            throw std::domain_error("line_average: non-finite value at omega = " +
                                    std::to_string(omega));
        if (k == 0 || k == n) v *= 0.5;
        values.push_back(v);
    }
    return pairwise_sum(values) * h / (2.0 * L);
}

double default_line_step(const SchurData& data, const TorusLine& line) {
    double eta_sum = 0.0;
    for (double e : line.eta) eta_sum += e;
    double omega_max = eta_sum * std::max(1, data.top_level());
    return 2.0 * std::numbers::pi / (20.0 * omega_max);
}

double lambda_dilated(const SchurData& data, const TorusGrid& grid, double eps) {
    data.validate();
    if (!(eps >= 0.0) || eps > 1.0) throw std::invalid_argument("lambda_dilated: eps must lie in [0,1]");
    const int m = data.top_level();
    std::vector<Cx> scaled(static_cast<size_t>(data.dim));
    return -integrate(grid, [&](std::span<const Cx> z) {
        for (size_t i = 0; i < scaled.size(); ++i) scaled[i] = eps * z[i];
        return std::log(1.0 - std::norm(eval_convergent(data, m, scaled)));
    });
}

}  // namespace opot
