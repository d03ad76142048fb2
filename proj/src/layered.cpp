#include "opot/layered.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace opot {

void LayeredMedium::validate() const {
    if (y.empty()) throw std::invalid_argument("LayeredMedium needs at least one interface");
    if (a.size() != y.size() + 1)
        throw std::invalid_argument("LayeredMedium needs one impedance per layer (|a| = |y| + 1)");
    if (!(y.front() > 0.0) || !(y.back() < b))
        throw std::invalid_argument("interfaces must satisfy 0 < y_1 < ... < y_d < b");
    for (size_t i = 1; i < y.size(); ++i)
        if (!(y[i] > y[i - 1]))
            throw std::invalid_argument("interfaces must be strictly increasing");
    for (double v : a)
        if (!(v > 0.0)) throw std::invalid_argument("impedances must be strictly positive");
}

std::string LayeredMedium::to_json() const {
    nlohmann::json j;
    j["b"] = b;
    j["y"] = y;
    j["a"] = a;
    return j.dump();
}

LayeredMedium LayeredMedium::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    LayeredMedium m;
    m.b = j.at("b").get<double>();
    m.y = j.at("y").get<std::vector<double>>();
    m.a = j.at("a").get<std::vector<double>>();
    m.validate();
    return m;
}

LayeredMedium LayeredMedium::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

std::pair<SchurData, TorusLine> medium_to_schur(const LayeredMedium& m) {
    m.validate();
    const int d = m.interfaces();
    SchurData data;
    data.dim = d;
    data.r.reserve(static_cast<size_t>(d) + 1);
    data.r.push_back(Cx{0.0, 0.0});
    std::vector<double> eta(static_cast<size_t>(d));
    double prev_y = 0.0;
    for (int j = 1; j <= d; ++j) {
        const double lo = m.a[static_cast<size_t>(j - 1)];
        const double hi = m.a[static_cast<size_t>(j)];
        data.r.push_back(Cx{(lo - hi) / (lo + hi), 0.0});
        data.nu.push_back(j);
        eta[static_cast<size_t>(j - 1)] = m.y[static_cast<size_t>(j - 1)] - prev_y;
        prev_y = m.y[static_cast<size_t>(j - 1)];
    }
    data.validate();
    return {std::move(data), TorusLine(std::move(eta))};
}

Cx reflection_schur(const LayeredMedium& m, double omega) {
    auto [data, line] = medium_to_schur(m);
    // round-trip phase per layer: the ODE reflection lives at 2 omega on the
    // line of one-way widths
    const std::vector<Cx> z = line.point(2.0 * omega);
    return eval_convergent(data, data.top_level(), z);
}

Cx reflection_ode(const LayeredMedium& m, double omega) {
    m.validate();
    if (omega == 0.0) throw std::invalid_argument("reflection_ode requires omega != 0");
    const int d = m.interfaces();

    // march layer coefficients (A_j, B_j) of u = A e^{i omega x} + B e^{-i omega x};
    // T maps (A_0, B_0) to (A_d, B_d) via continuity of u and zeta u'
    Mat2 t{Cx{1, 0}, Cx{0, 0}, Cx{0, 0}, Cx{1, 0}};
    for (int j = 1; j <= d; ++j) {
        const double rho = m.a[static_cast<size_t>(j - 1)] / m.a[static_cast<size_t>(j)];
        const double phase = 2.0 * omega * m.y[static_cast<size_t>(j - 1)];
        const Cx up{std::cos(phase), std::sin(phase)};
        Mat2 step{Cx{0.5 * (1.0 + rho), 0.0}, 0.5 * (1.0 - rho) / up,
                  0.5 * (1.0 - rho) * up, Cx{0.5 * (1.0 + rho), 0.0}};
        t = step * t;
    }
    if (std::abs(t.d) < 1e-12)
        throw std::domain_error("reflection_ode: transfer system is numerically singular");
    // unit incoming wave (A_0 = 1), no wave from the right (B_d = 0)
    return -t.c / t.d;
}

ReflectionSpectrum sweep_reflection(const LayeredMedium& m, double omega_max, int n,
                                    const std::string& source) {
    m.validate();
    if (!(omega_max > 0.0) || n < 1) throw std::invalid_argument("sweep needs omega_max > 0, n >= 1");
    const bool use_ode = source == "ode";
    if (!use_ode && source != "schur") throw std::invalid_argument("source must be ode|schur");

    ReflectionSpectrum spec_out;
    spec_out.source = source;
    spec_out.omegas.reserve(static_cast<size_t>(n));
    spec_out.R.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double omega = -omega_max + 2.0 * omega_max * (i + 0.5) / n;
        if (omega == 0.0) omega = 0.5 * omega_max / n;  // odd n centers a cell on zero
        const Cx R = use_ode ? reflection_ode(m, omega) : reflection_schur(m, omega);
        if (omega != 0.0 && !(std::abs(R) < 1.0))
            throw std::domain_error("reflection modulus reached 1 at omega = " +
                                    std::to_string(omega));
        spec_out.omegas.push_back(omega);
        spec_out.R.push_back(R);
    }
    return spec_out;
}

std::vector<TraceRow> trace_check(const LayeredMedium& m, std::span<const double> L_schedule) {
    auto [data, line] = medium_to_schur(m);
    const int top = data.top_level();

    double reference = 0.0;
    for (int j = 1; j <= top; ++j) reference += std::log(1.0 - std::norm(data.r[static_cast<size_t>(j)]));

    const double step = default_line_step(data, line);
    std::vector<TraceRow> rows;
    rows.reserve(L_schedule.size());
    for (double L : L_schedule) {
        double avg = line_average(
            line,
            [&](std::span<const Cx> z) { return std::log(1.0 - std::norm(eval_convergent(data, top, z))); },
            L, step);
        rows.push_back(TraceRow{L, avg, reference, std::abs(avg - reference)});
    }
    return rows;
}

}  // namespace opot
