#include "opot/schur.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "opot/scattering.hpp"

namespace opot {

namespace {

constexpr double kDenominatorGuard = 1e-14;

void require_level(const SchurData& data, int n, int lo = 0) {
    if (n < lo || n > data.top_level())
        throw std::invalid_argument("level out of range: " + std::to_string(n));
}

Cx projective(const Mat2& m) {
    // action of m on (0,1)^t
    if (std::abs(m.d) < kDenominatorGuard)
        throw std::domain_error("projective denominator vanishes");
    return m.b / m.d;
}

}  // namespace

void SchurData::validate() const {
    if (dim < 1) throw std::invalid_argument("SchurData: dimension must be >= 1");
    if (r.empty()) throw std::invalid_argument("SchurData: need at least r_0");
    if (r.front() != Cx{0.0, 0.0})
        throw std::invalid_argument("SchurData: r_0 must be 0 (standard Schur function)");
    for (const Cx& v : r)
        if (std::abs(v) >= 1.0)
            throw std::invalid_argument("SchurData: every |r_j| must be < 1");
    if (nu.size() + 1 != r.size())
        throw std::invalid_argument("SchurData: length(nu) must be length(r) - 1");
    for (int j : nu)
        if (j < 1 || j > dim)
            throw std::invalid_argument("SchurData: allocation index out of range");
}

std::string SchurData::to_json() const {
    nlohmann::json j;
    j["d"] = dim;
    j["r"] = nlohmann::json::array();
    for (const Cx& v : r) j["r"].push_back({v.real(), v.imag()});
    j["nu"] = nu;
    return j.dump();
}

SchurData SchurData::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    SchurData data;
    data.dim = j.at("d").get<int>();
    for (const auto& v : j.at("r")) data.r.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    data.nu = j.at("nu").get<std::vector<int>>();
    data.validate();
    return data;
}

SchurData SchurData::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

std::vector<PolyQuad> build_quads(const SchurData& data) {
    data.validate();
    const int d = data.dim;
    std::vector<PolyQuad> quads;
    quads.reserve(data.r.size());

    PolyQuad q0;
    q0.level = 0;
    q0.psi = TorusPoly::constant(d, 1.0);
    q0.psi_star = TorusPoly::constant(d, 1.0);
    q0.phi = TorusPoly::constant(d, 1.0);
    q0.phi_star = TorusPoly::constant(d, 1.0);
    quads.push_back(q0);

    for (int n = 1; n <= data.top_level(); ++n) {
        const Cx r = data.r[n];
        const Cx rb = std::conj(r);
        const TorusPoly zv = TorusPoly::variable(d, data.nu[n - 1]);
        const PolyQuad& prev = quads.back();

        PolyQuad q;
        q.level = n;
        TorusPoly z_psi = zv * prev.psi;
        TorusPoly z_phi = zv * prev.phi;
        q.psi = z_psi + rb * prev.psi_star;
        q.psi_star = r * z_psi + prev.psi_star;
        q.phi = z_phi - rb * prev.phi_star;
        q.phi_star = -r * z_phi + prev.phi_star;
        quads.push_back(std::move(q));
    }
    return quads;
}

Mat2 eval_transfer(const SchurData& data, int n, std::span<const Cx> z) {
    data.validate();
    require_level(data, n);
    if (static_cast<int>(z.size()) != data.dim)
        throw std::invalid_argument("evaluation point dimension mismatch");
    Mat2 p{Cx{1, 0}, Cx{1, 0}, Cx{-1, 0}, Cx{1, 0}};  // M_0
    for (int j = 1; j <= n; ++j) {
        const Cx zv = z[data.nu[j - 1] - 1];
        const Cx r = data.r[j];
        Mat2 m{zv, r * zv, std::conj(r), Cx{1, 0}};
        p = p * m;
    }
    return p;
}

Cx eval_convergent(const SchurData& data, int n, std::span<const Cx> z) {
    Mat2 p = eval_transfer(data, n, z);
    Cx den = p.b + p.d;  // psi* + phi*
    if (std::abs(den) < kDenominatorGuard)
        throw std::domain_error("convergent denominator below conditioning guard");
    return (p.b - p.d) / den;
}

Cx eval_tail(const SchurData& data, int n, std::span<const Cx> z) {
    data.validate();
    if (n < 0 || n >= data.top_level())
        throw std::invalid_argument("tail level must satisfy 0 <= n < top level");
    if (static_cast<int>(z.size()) != data.dim)
        throw std::invalid_argument("evaluation point dimension mismatch");
    Mat2 p{Cx{1, 0}, Cx{0, 0}, Cx{0, 0}, Cx{1, 0}};
    for (int j = n + 1; j <= data.top_level(); ++j) {
        const Cx zv = z[data.nu[j - 1] - 1];
        const Cx r = data.r[j];
        Mat2 m{zv, r * zv, std::conj(r), Cx{1, 0}};
        p = p * m;
    }
    return projective(p);
}

Cx eval_g(const SchurData& data, int n, std::span<const Cx> z) {
    Mat2 p = eval_transfer(data, n, z);
    Cx den = p.b + p.d;
    if (std::abs(den) < kDenominatorGuard)
        throw std::domain_error("g_n denominator below conditioning guard");
    double num = 2.0;
    for (int j = 1; j <= n; ++j) num *= std::sqrt(1.0 - std::norm(data.r[j]));
    return num / den;
}

std::map<Monomial, Cx> taylor_from_weights(const SchurData& data, int max_degree) {
    data.validate();
    if (max_degree < 0) throw std::invalid_argument("max_degree must be >= 0");
    const int m = data.top_level();
    std::map<Monomial, Cx> out;
    for (const MultiIndex& alpha : enumerate_indices(m, max_degree)) {
        Cx c = weight(alpha, data.r);
        if (c == Cx{0.0, 0.0}) continue;
        Monomial mono(std::vector<int>(data.dim, 0));
        for (size_t j = 0; j < alpha.size(); ++j) mono.e[data.nu[j] - 1] += alpha[j];
        out[mono] += c;
    }
    // canonical form: drop exact zeros from cancelling weights
    for (auto it = out.begin(); it != out.end();)
        it = (it->second == Cx{0.0, 0.0}) ? out.erase(it) : std::next(it);
    return out;
}

std::map<Monomial, Cx> taylor_from_rational(const PolyQuad& quad, int max_degree) {
    if (max_degree < 0) throw std::invalid_argument("max_degree must be >= 0");
    const TorusPoly num = quad.psi_star - quad.phi_star;
    const TorusPoly den = quad.psi_star + quad.phi_star;
    const int d = num.dim();
    const Monomial zero(std::vector<int>(d, 0));
    const Cx c0 = den.coeff(zero);
    if (c0 == Cx{0.0, 0.0})
        throw std::domain_error("series division needs a nonzero constant denominator term");

    // degree-by-degree long division: peel the lowest remaining homogeneous
    // block of the remainder, divide by the constant term, subtract
    TorusPoly series(d);
    TorusPoly remainder = num;
    for (int deg = 0; deg <= max_degree; ++deg) {
        TorusPoly block(d);
        for (const auto& [mo, c] : remainder.terms())
            if (mo.degree() == deg) block.add_term(mo, c / c0);
        if (block.is_zero()) continue;
        series += block;
        remainder -= block * den;
    }

    std::map<Monomial, Cx> out;
    for (const auto& [mo, c] : series.terms()) out[mo] = c;
    return out;
}

std::vector<Cx> schur_algorithm_1d(std::vector<Cx> numerator, std::vector<Cx> denominator,
                                   int max_steps) {
    constexpr double kResidualTol = 1e-12;
    auto max_abs = [](const std::vector<Cx>& v) {
        double m = 0.0;
        for (const Cx& c : v) m = std::max(m, std::abs(c));
        return m;
    };
    auto value_at_zero = [](const std::vector<Cx>& v) { return v.empty() ? Cx{0, 0} : v[0]; };

    if (max_abs(denominator) == 0.0 || std::abs(value_at_zero(denominator)) == 0.0)
        throw std::invalid_argument("schur_algorithm_1d: denominator must be nonzero at 0");

    std::vector<Cx> out;
    for (int step = 0; step < max_steps; ++step) {
        const double den_scale = max_abs(denominator);
        const double num_scale = max_abs(numerator);
        if (num_scale <= kResidualTol * std::max(1.0, den_scale)) {
            out.push_back(Cx{0.0, 0.0});  // h vanished identically
            return out;
        }
        const Cx rn = value_at_zero(numerator) / value_at_zero(denominator);
        if (std::abs(rn) >= 1.0 - 1e-12)
            throw std::domain_error("schur_algorithm_1d: |r_" + std::to_string(step) +
                                    "| reached the unit circle; input is not a strict Schur "
                                    "function at that depth");
        out.push_back(rn);

        // next numerator: (num - r_n den) / z, exact cancellation of z
        std::vector<Cx> next_num(std::max(numerator.size(), denominator.size()), Cx{0, 0});
        for (size_t i = 0; i < next_num.size(); ++i) {
            Cx a = i < numerator.size() ? numerator[i] : Cx{0, 0};
            Cx b = i < denominator.size() ? denominator[i] : Cx{0, 0};
            next_num[i] = a - rn * b;
        }
        const double scale = std::max({1.0, num_scale, den_scale});
        if (std::abs(next_num[0]) > kResidualTol * scale)
            throw std::domain_error("schur_algorithm_1d: numerator not divisible by z (residual " +
                                    std::to_string(std::abs(next_num[0])) + ")");
        next_num.erase(next_num.begin());

        // next denominator: den - conj(r_n) num
        std::vector<Cx> next_den(std::max(numerator.size(), denominator.size()), Cx{0, 0});
        for (size_t i = 0; i < next_den.size(); ++i) {
            Cx a = i < numerator.size() ? numerator[i] : Cx{0, 0};
            Cx b = i < denominator.size() ? denominator[i] : Cx{0, 0};
            next_den[i] = b - std::conj(rn) * a;
        }

        numerator = std::move(next_num);
        denominator = std::move(next_den);
    }
    return out;
}

SchurData substitute(const SchurData& data, const MonomialSubstitution& sub) {
    data.validate();
    if (static_cast<int>(sub.kappa.size()) != data.dim)
        throw std::invalid_argument("substitute: kappa must map every source variable");
    for (const Monomial& k : sub.kappa) {
        if (k.dim() != sub.target_dim)
            throw std::invalid_argument("substitute: kappa image dimension mismatch");
        if (k.degree() == 0) throw std::invalid_argument("substitute: kappa image must be nonzero");
        for (int v : k.e)
            if (v < 0) throw std::invalid_argument("substitute: negative exponent in kappa");
    }

    SchurData out;
    out.dim = sub.target_dim;
    out.r.push_back(Cx{0.0, 0.0});
    for (int j = 1; j <= data.top_level(); ++j) {
        const Monomial& image = sub.kappa[data.nu[j - 1] - 1];
        const int block = image.degree();
        for (int s = 0; s < block - 1; ++s) out.r.push_back(Cx{0.0, 0.0});
        out.r.push_back(data.r[j]);
        for (int var = 1; var <= sub.target_dim; ++var)
            for (int rep = 0; rep < image.e[var - 1]; ++rep) out.nu.push_back(var);
    }
    out.validate();
    return out;
}

std::vector<Cx> to_univariate(const TorusPoly& p) {
    if (p.dim() != 1) throw std::invalid_argument("to_univariate requires a 1-variable polynomial");
    std::vector<Cx> coeffs(static_cast<size_t>(std::max(0, p.total_degree()) + 1), Cx{0, 0});
    for (const auto& [m, c] : p.terms()) coeffs[static_cast<size_t>(m.e[0])] = c;
    return coeffs;
}

}  // namespace opot
