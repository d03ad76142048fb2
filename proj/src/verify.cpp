#include "opot/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "opot/fixtures.hpp"
#include "opot/freqlattice.hpp"
#include "opot/scattering.hpp"

namespace opot {

namespace {

double rel_err(double lhs, double rhs) {
    return std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-30);
}

CheckRecord make_record(std::string name, std::string mode, double computed, double reference,
                        double tolerance) {
    CheckRecord rec;
    rec.name = std::move(name);
    rec.mode = std::move(mode);
    rec.computed = computed;
    rec.reference = reference;
    rec.tolerance = tolerance;
    if (rec.mode == "abs")
        rec.pass = std::abs(computed - reference) <= tolerance;
    else if (rec.mode == "upper")
        rec.pass = computed <= tolerance;
    else if (rec.mode == "lower")
        rec.pass = computed >= reference;
    else
        throw std::invalid_argument("unknown check mode: " + rec.mode);
    return rec;
}

double sum_log_one_minus_sq(const SchurData& data) {
    double s = 0.0;
    for (int j = 1; j <= data.top_level(); ++j) s += std::log(1.0 - std::norm(data.r[static_cast<size_t>(j)]));
    return s;
}

Mat2 step_matrix(const SchurData& data, int j, std::span<const Cx> z) {
    const Cx zv = z[static_cast<size_t>(data.nu[static_cast<size_t>(j - 1)] - 1)];
    const Cx r = data.r[static_cast<size_t>(j)];
    return Mat2{zv, r * zv, std::conj(r), Cx{1, 0}};
}

}  // namespace

namespace checks {

IdentitySuiteResult identity_suite(const SchurData& data, int grid_n) {
    data.validate();
    const int m = data.top_level();
    const int d = data.dim;
    const std::vector<PolyQuad> quads = build_quads(data);

    IdentitySuiteResult res;

    std::vector<double> prods(static_cast<size_t>(m) + 1, 1.0);
    for (int n = 1; n <= m; ++n)
        prods[static_cast<size_t>(n)] = prods[static_cast<size_t>(n - 1)] * (1.0 - std::norm(data.r[static_cast<size_t>(n)]));

    // term-map identities level by level
    Monomial multidegree(std::vector<int>(static_cast<size_t>(d), 0));
    for (int n = 0; n <= m; ++n) {
        if (n >= 1) multidegree.e[static_cast<size_t>(data.nu[static_cast<size_t>(n - 1)] - 1)] += 1;
        const PolyQuad& q = quads[static_cast<size_t>(n)];
        TorusPoly lhs = q.psi * q.phi_star + q.phi * q.psi_star;
        TorusPoly rhs = TorusPoly::monomial(d, multidegree, Cx{2.0 * prods[static_cast<size_t>(n)], 0.0});
        res.det_max_coeff_err = std::max(res.det_max_coeff_err, max_coeff_diff(lhs, rhs));
        res.star_max_coeff_err =
            std::max({res.star_max_coeff_err, max_coeff_diff(poly_star(q.phi, multidegree), q.phi_star),
                      max_coeff_diff(poly_star(q.psi, multidegree), q.psi_star)});
    }

    // negating every parameter swaps the two families exactly
    SchurData flipped = data;
    for (Cx& r : flipped.r) r = -r;
    const std::vector<PolyQuad> fq = build_quads(flipped);
    for (int n = 0; n <= m; ++n) {
        res.sign_flip_max_err = std::max(
            {res.sign_flip_max_err,
             max_coeff_diff(fq[static_cast<size_t>(n)].psi, quads[static_cast<size_t>(n)].phi),
             max_coeff_diff(fq[static_cast<size_t>(n)].psi_star, quads[static_cast<size_t>(n)].phi_star),
             max_coeff_diff(fq[static_cast<size_t>(n)].phi, quads[static_cast<size_t>(n)].psi),
             max_coeff_diff(fq[static_cast<size_t>(n)].phi_star, quads[static_cast<size_t>(n)].psi_star)});
    }

    // pointwise identities on the torus grid, every level
    TorusGrid grid(d, grid_n);
    std::vector<Mat2> prefix(static_cast<size_t>(m) + 1);
    std::vector<Mat2> suffix(static_cast<size_t>(m) + 1);
    for_each_grid_node(grid, [&](std::span<const Cx> z) {
        prefix[0] = Mat2{Cx{1, 0}, Cx{1, 0}, Cx{-1, 0}, Cx{1, 0}};
        for (int j = 1; j <= m; ++j)
            prefix[static_cast<size_t>(j)] = prefix[static_cast<size_t>(j - 1)] * step_matrix(data, j, z);
        suffix[static_cast<size_t>(m)] = Mat2{Cx{1, 0}, Cx{0, 0}, Cx{0, 0}, Cx{1, 0}};
        for (int j = m - 1; j >= 0; --j)
            suffix[static_cast<size_t>(j)] = step_matrix(data, j + 1, z) * suffix[static_cast<size_t>(j + 1)];

        const Mat2& top = prefix[static_cast<size_t>(m)];
        const Cx f = (top.b - top.d) / (top.b + top.d);

        for (int n = 0; n <= m; ++n) {
            const Mat2& p = prefix[static_cast<size_t>(n)];
            const Cx psi = p.a, psi_star = p.b, phi = -p.c, phi_star = p.d;
            const Cx fn = (psi_star - phi_star) / (psi_star + phi_star);
            const double prod = prods[static_cast<size_t>(n)];

            const double lhs_rp = ((1.0 + fn) / (1.0 - fn)).real();
            const double rhs_rp = prod / std::norm(phi_star);
            res.realpart_max_rel_err = std::max(res.realpart_max_rel_err, rel_err(lhs_rp, rhs_rp));

            const Cx gn = 2.0 * std::sqrt(prod) / (psi_star + phi_star);
            res.transmission_max_rel_err =
                std::max(res.transmission_max_rel_err, rel_err(1.0 - std::norm(fn), std::norm(gn)));

            if (n < m) {
                const Cx B = (psi - phi) / (psi_star + phi_star);
                const Mat2& s = suffix[static_cast<size_t>(n)];
                const Cx k = s.b / s.d;
                const double lhs_tail = (1.0 - std::norm(f)) * std::norm(1.0 + B * k);
                const double rhs_tail = (1.0 - std::norm(fn)) * (1.0 - std::norm(k));
                res.tail_max_rel_err = std::max(res.tail_max_rel_err, rel_err(lhs_tail, rhs_tail));
                res.tail_modulus_max_err =
                    std::max(res.tail_modulus_max_err, std::abs(std::abs(B) - std::abs(fn)));
            }
        }
    });
    return res;
}

double taylor_cross_max_diff(const SchurData& data, int degree) {
    const std::vector<PolyQuad> quads = build_quads(data);
    const std::map<Monomial, Cx> weights = taylor_from_weights(data, degree);
    const std::map<Monomial, Cx> rational = taylor_from_rational(quads.back(), degree);

    double worst = 0.0;
    auto at = [](const std::map<Monomial, Cx>& m, const Monomial& k) {
        auto it = m.find(k);
        return it == m.end() ? Cx{0, 0} : it->second;
    };
    for (const auto& [k, v] : weights) worst = std::max(worst, std::abs(v - at(rational, k)));
    for (const auto& [k, v] : rational) worst = std::max(worst, std::abs(v - at(weights, k)));
    return worst;
}

GramResult gram_errors(const SchurData& data, int grid_n, int jmax) {
    data.validate();
    const int m = data.top_level();
    const int d = data.dim;
    TorusGrid grid(d, grid_n);
    const std::vector<std::vector<Cx>> g = gram(data, grid, jmax);

    GramResult res;
    double prod = 1.0;
    for (int j = 0; j <= jmax; ++j) {
        if (j >= 1) prod *= 1.0 - std::norm(data.r[static_cast<size_t>(j)]);
        for (int k = 0; k <= jmax; ++k) {
            const Cx v = g[static_cast<size_t>(j)][static_cast<size_t>(k)];
            if (j == k)
                res.diag_max_err = std::max(res.diag_max_err, std::abs(v - prod));
            else
                res.offdiag_max = std::max(res.offdiag_max, std::abs(v));
        }
    }

    // phi*_j against every monomial spanned by steps 1..j
    std::vector<std::vector<Monomial>> monos(static_cast<size_t>(jmax) + 1);
    for (int j = 1; j <= jmax; ++j) {
        std::set<Monomial> seen;
        for (int mask = 1; mask < (1 << j); ++mask) {
            Monomial e(std::vector<int>(static_cast<size_t>(d), 0));
            for (int s = 1; s <= j; ++s)
                if (mask & (1 << (s - 1))) e.e[static_cast<size_t>(data.nu[static_cast<size_t>(s - 1)] - 1)] += 1;
            seen.insert(e);
        }
        monos[static_cast<size_t>(j)].assign(seen.begin(), seen.end());
    }

    double total_prod = 1.0;
    for (int j = 1; j <= m; ++j) total_prod *= 1.0 - std::norm(data.r[static_cast<size_t>(j)]);

    std::vector<std::vector<Cx>> sums(static_cast<size_t>(jmax) + 1);
    for (int j = 1; j <= jmax; ++j)
        sums[static_cast<size_t>(j)].assign(monos[static_cast<size_t>(j)].size(), Cx{0, 0});

    for_each_grid_node(grid, [&](std::span<const Cx> z) {
        Mat2 p{Cx{1, 0}, Cx{1, 0}, Cx{-1, 0}, Cx{1, 0}};
        std::vector<Cx> phi_star(static_cast<size_t>(jmax) + 1);
        phi_star[0] = p.d;
        for (int j = 1; j <= m; ++j) {
            p = p * step_matrix(data, j, z);
            if (j <= jmax) phi_star[static_cast<size_t>(j)] = p.d;
        }
        const double w = total_prod / std::norm(p.d);
        for (int j = 1; j <= jmax; ++j)
            for (size_t t = 0; t < monos[static_cast<size_t>(j)].size(); ++t) {
                Cx mono{1.0, 0.0};
                for (int i = 0; i < d; ++i)
                    for (int rep = 0; rep < monos[static_cast<size_t>(j)][t].e[static_cast<size_t>(i)]; ++rep)
                        mono *= z[static_cast<size_t>(i)];
                sums[static_cast<size_t>(j)][t] += phi_star[static_cast<size_t>(j)] * std::conj(mono) * w;
            }
    });
    const double scale = 1.0 / static_cast<double>(grid.node_count());
    for (int j = 1; j <= jmax; ++j)
        for (const Cx& s : sums[static_cast<size_t>(j)])
            res.star_orthogonality_max = std::max(res.star_orthogonality_max, std::abs(s) * scale);
    return res;
}

SzegoResult szego_errors(const SchurData& data, int grid_n) {
    TorusGrid grid(data.dim, grid_n);
    const double reference = sum_log_one_minus_sq(data);
    SzegoResult res;
    res.integral_err = std::abs(szego_integral(data, grid) - reference);
    res.log_w_err = std::abs(szego_log_w(data, grid) - reference);
    res.outer_abs = std::abs(outer_log_integral(data, grid));
    return res;
}

double poisson_gap(const SchurData& data, int grid_n, std::span<const Cx> z) {
    TorusGrid grid(data.dim, grid_n);
    auto [lhs, rhs] = poisson_check(data, grid, z);
    return std::abs(lhs - rhs);
}

CounterexampleResult counterexample_integral(int grid_n) {
    TorusGrid grid(2, grid_n);
    CounterexampleResult res;
    res.integral = integrate(grid, [](std::span<const Cx> z) {
        const Cx h = (z[0] + z[1]) / 4.0;
        return std::log(((1.0 + h) / (1.0 - h)).real());
    });
    res.reference = -std::log(112.0 - 64.0 * std::sqrt(3.0));
    res.gap_from_diag = std::abs(res.integral - std::log(0.75));
    return res;
}

double monotonicity_min_gap(const SchurData& data, int grid_n, std::span<const double> eps) {
    TorusGrid grid(data.dim, grid_n);
    double min_gap = std::numeric_limits<double>::infinity();
    double prev = 0.0;
    bool have_prev = false;
    for (double e : eps) {
        const double lam = lambda_dilated(data, grid, e);
        if (have_prev) min_gap = std::min(min_gap, lam - prev);
        prev = lam;
        have_prev = true;
    }
    return min_gap;
}

LineTrendResult birkhoff_trend(const SchurData& data, const TorusLine& line,
                               std::span<const double> L_schedule) {
    data.validate();
    const int m = data.top_level();
    const double reference = -sum_log_one_minus_sq(data);
    const double step = default_line_step(data, line);

    LineTrendResult res;
    for (double L : L_schedule) {
        const double avg = line_average(
            line,
            [&](std::span<const Cx> z) { return -std::log(1.0 - std::norm(eval_convergent(data, m, z))); },
            L, step);
        res.L.push_back(L);
        res.error.push_back(std::abs(avg - reference));
    }
    res.final_error = res.error.back();
    const size_t n = res.error.size();
    res.tail_nonincreasing =
        n >= 3 && res.error[n - 1] <= res.error[n - 2] && res.error[n - 2] <= res.error[n - 3];
    return res;
}

double univariate_roundtrip_max_err(const SchurData& data) {
    data.validate();
    if (data.dim != 1) throw std::invalid_argument("univariate round-trip needs d = 1 data");
    const std::vector<PolyQuad> quads = build_quads(data);
    const PolyQuad& top = quads.back();
    const std::vector<Cx> num = to_univariate(top.psi_star - top.phi_star);
    const std::vector<Cx> den = to_univariate(top.psi_star + top.phi_star);
    const std::vector<Cx> recovered = schur_algorithm_1d(num, den);

    double worst = 0.0;
    const size_t n = std::max(recovered.size(), data.r.size());
    for (size_t i = 0; i < n; ++i) {
        const Cx a = i < recovered.size() ? recovered[i] : Cx{0, 0};
        const Cx b = i < data.r.size() ? data.r[i] : Cx{0, 0};
        worst = std::max(worst, std::abs(a - b));
    }
    return worst;
}

LatticeExampleResult lattice_examples() {
    LatticeExampleResult res;
    std::vector<RationalBasisInput> inputs;

    {  // identity basis over Q(sqrt 2)
        RationalBasisInput in;
        in.B = {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
        in.b = {QuadExt(Rational(1)), QuadExt(Rational(0), Rational(1), 2)};
        inputs.push_back(std::move(in));
    }
    {  // eta = (2, 3): already integral
        RationalBasisInput in;
        in.B = {{Rational(2)}, {Rational(3)}};
        in.b = {QuadExt(Rational(1))};
        inputs.push_back(std::move(in));
    }
    {  // eta = (1/2, 1/3): clear denominators
        RationalBasisInput in;
        in.B = {{Rational(1, 2)}, {Rational(1, 3)}};
        in.b = {QuadExt(Rational(1))};
        inputs.push_back(std::move(in));
    }

    for (const RationalBasisInput& in : inputs) {
        LatticeDecomposition dec = decompose(in);
        if (!verify(dec, in)) {
            ++res.failures;
            continue;
        }
        // numeric factorization of the torus line at 100 sample points
        std::vector<double> eta_f, q_f;
        for (const QuadExt& v : in.eta()) eta_f.push_back(v.to_double());
        for (const QuadExt& v : dec.q) q_f.push_back(v.to_double());
        for (int s = 1; s <= 100; ++s) {
            const double omega = 0.173 * s;
            for (size_t i = 0; i < eta_f.size(); ++i) {
                const Cx direct{std::cos(eta_f[i] * omega), std::sin(eta_f[i] * omega)};
                double phase = 0.0;
                for (size_t c = 0; c < q_f.size(); ++c)
                    phase += static_cast<double>(dec.A[i][c].convert_to<long long>()) * q_f[c] * omega;
                const Cx composed{std::cos(phase), std::sin(phase)};
                res.line_factorization_max_err =
                    std::max(res.line_factorization_max_err, std::abs(direct - composed));
            }
        }
    }
    return res;
}

LayeredOracleResult layered_cross_oracle(const LayeredMedium& m, int samples,
                                         unsigned long long seed) {
    LayeredOracleResult res;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-100.0, 100.0);
    int done = 0;
    while (done < samples) {
        const double omega = dist(rng);
        if (std::abs(omega) < 1e-3) continue;
        const Cx rs = reflection_schur(m, omega);
        const Cx ro = reflection_ode(m, omega);
        res.modulus_max_diff = std::max(res.modulus_max_diff, std::abs(std::abs(rs) - std::abs(ro)));
        res.complex_max_diff = std::max(res.complex_max_diff, std::abs(rs - ro));
        ++done;
    }
    return res;
}

TraceResult trace_errors(const LayeredMedium& m, std::span<const double> L_schedule) {
    TraceResult res;
    res.rows = trace_check(m, L_schedule);
    for (const TraceRow& row : res.rows) res.max_error = std::max(res.max_error, row.abs_error);
    res.final_error = res.rows.back().abs_error;
    const size_t n = res.rows.size();
    res.tail_nonincreasing = n >= 3 && res.rows[n - 1].abs_error <= res.rows[n - 2].abs_error &&
                             res.rows[n - 2].abs_error <= res.rows[n - 3].abs_error;
    return res;
}

}  // namespace checks

bool Report::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

std::string Report::to_json() const {
    nlohmann::json j;
    j["all_pass"] = all_pass();
    j["checks"] = nlohmann::json::array();
    for (const CheckRecord& c : checks) {
        nlohmann::json e;
        e["name"] = c.name;
        e["mode"] = c.mode;
        e["computed"] = c.computed;
        e["reference"] = c.reference;
        e["tolerance"] = c.tolerance;
        e["pass"] = c.pass;
        e["runtime_s"] = c.runtime_s;
        e["note"] = c.note;
        j["checks"].push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

std::string Report::to_table() const {
    std::ostringstream os;
    char line[256];
    std::snprintf(line, sizeof(line), "%-42s %-6s %14s %14s %9s %6s %9s\n", "check", "mode",
                  "computed", "reference", "tol", "pass", "time[s]");
    os << line;
    for (const CheckRecord& c : checks) {
        std::snprintf(line, sizeof(line), "%-42s %-6s %14.6e %14.6e %9.1e %6s %9.3f",
                      c.name.c_str(), c.mode.c_str(), c.computed, c.reference, c.tolerance,
                      c.pass ? "ok" : "FAIL", c.runtime_s);
        os << line;
        if (!c.note.empty()) os << "  " << c.note;
        os << "\n";
    }
    std::snprintf(line, sizeof(line), "overall: %s\n", all_pass() ? "ok" : "FAIL");
    os << line;
    return os.str();
}

double RunConfig::tol(const std::string& check, double fallback) const {
    auto it = tolerance_overrides.find(check);
    return it == tolerance_overrides.end() ? fallback : it->second;
}

RunConfig RunConfig::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    RunConfig c;
    c.grid_n_d12 = j.value("grid_n_d12", c.grid_n_d12);
    c.grid_n_d3 = j.value("grid_n_d3", c.grid_n_d3);
    c.identity_grid_n = j.value("identity_grid_n", c.identity_grid_n);
    c.poisson_grid_n = j.value("poisson_grid_n", c.poisson_grid_n);
    c.counterexample_grid_n = j.value("counterexample_grid_n", c.counterexample_grid_n);
    c.taylor_degree = j.value("taylor_degree", c.taylor_degree);
    c.cross_oracle_samples = j.value("cross_oracle_samples", c.cross_oracle_samples);
    if (j.contains("L_schedule")) c.L_schedule = j["L_schedule"].get<std::vector<double>>();
    if (j.contains("birkhoff_eta")) c.birkhoff_eta = j["birkhoff_eta"].get<std::vector<double>>();
    c.seed = j.value("seed", c.seed);
    c.include_media = j.value("include_media", c.include_media);
    c.parallel = j.value("parallel", c.parallel);
    c.timing = j.value("timing", c.timing);
    if (j.contains("tolerances"))
        for (auto it = j["tolerances"].begin(); it != j["tolerances"].end(); ++it)
            c.tolerance_overrides[it.key()] = it.value().get<double>();
    return c;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

Report run_verify_all(const RunConfig& config) {
    using GroupFn = std::function<std::vector<CheckRecord>()>;
    struct Group {
        std::string name;
        GroupFn fn;
    };
    std::vector<Group> groups;
    auto add_group = [&groups](std::string name, GroupFn fn) {
        groups.push_back(Group{std::move(name), std::move(fn)});
    };

    const std::vector<std::pair<std::string, SchurData>> fixtures = {
        {"d1", fixtures::schur_d1()}, {"d2", fixtures::schur_d2()}, {"d3", fixtures::schur_d3()}};

    add_group("scattering.eigen_sweep", [&config]() {
        int failures = 0;
        for (int p = 0; p <= 12; ++p)
            for (int q = 0; q <= 12; ++q)
                if (!verify_eigen(p, q)) ++failures;
        return std::vector<CheckRecord>{make_record("scattering.eigen_sweep", "upper", failures, 0,
                                                    config.tol("scattering.eigen_sweep", 0.0))};
    });

    for (const auto& [tag, data] : fixtures) {
        add_group("schur.identities." + tag, [&config, tag = tag, data = data]() {
            const checks::IdentitySuiteResult r = checks::identity_suite(data, config.identity_grid_n);
            std::vector<CheckRecord> recs;
            recs.push_back(make_record("schur.det_identity." + tag, "upper", r.det_max_coeff_err, 0,
                                       config.tol("schur.det_identity", 1e-12)));
            recs.push_back(make_record("schur.star_identity." + tag, "upper", r.star_max_coeff_err, 0,
                                       config.tol("schur.star_identity", 1e-12)));
            recs.push_back(make_record("schur.sign_flip." + tag, "upper", r.sign_flip_max_err, 0,
                                       config.tol("schur.sign_flip", 0.0)));
            recs.push_back(make_record("schur.real_part_rep." + tag, "upper", r.realpart_max_rel_err, 0,
                                       config.tol("schur.real_part_rep", 1e-10)));
            recs.push_back(make_record("schur.transmission." + tag, "upper", r.transmission_max_rel_err,
                                       0, config.tol("schur.transmission", 1e-10)));
            recs.push_back(make_record("schur.tail_identity." + tag, "upper", r.tail_max_rel_err, 0,
                                       config.tol("schur.tail_identity", 1e-10)));
            recs.push_back(make_record("schur.tail_modulus." + tag, "upper", r.tail_modulus_max_err, 0,
                                       config.tol("schur.tail_modulus", 1e-10)));
            return recs;
        });
    }

    add_group("taylor.cross_oracle", [&config, fixtures]() {
        std::vector<CheckRecord> recs;
        for (const auto& [tag, data] : fixtures)
            recs.push_back(make_record("taylor.cross_oracle." + tag, "upper",
                                       checks::taylor_cross_max_diff(data, config.taylor_degree), 0,
                                       config.tol("taylor.cross_oracle", 1e-10)));
        return recs;
    });

    add_group("orthogonality.gram", [&config]() {
        const SchurData data = fixtures::schur_d2();
        const checks::GramResult r = checks::gram_errors(data, config.grid_n_d12, data.top_level());
        std::vector<CheckRecord> recs;
        recs.push_back(make_record("orthogonality.gram_offdiag.d2", "upper", r.offdiag_max, 0,
                                   config.tol("orthogonality.gram_offdiag", 1e-8)));
        recs.push_back(make_record("orthogonality.gram_diag.d2", "upper", r.diag_max_err, 0,
                                   config.tol("orthogonality.gram_diag", 1e-8)));
        recs.push_back(make_record("orthogonality.phi_star_monomials.d2", "upper",
                                   r.star_orthogonality_max, 0,
                                   config.tol("orthogonality.phi_star_monomials", 1e-8)));
        return recs;
    });

    for (const auto& [tag, data] : fixtures) {
        add_group("szego." + tag, [&config, tag = tag, data = data]() {
            const bool coarse = data.dim >= 3;
            const int n = coarse ? config.grid_n_d3 : config.grid_n_d12;
            const double tol = config.tol("szego", coarse ? 1e-6 : 1e-8);
            const checks::SzegoResult r = checks::szego_errors(data, n);
            std::vector<CheckRecord> recs;
            recs.push_back(make_record("szego.integral." + tag, "upper", r.integral_err, 0, tol));
            recs.push_back(make_record("szego.log_w." + tag, "upper", r.log_w_err, 0, tol));
            recs.push_back(make_record("szego.outer." + tag, "upper", r.outer_abs, 0, tol));
            return recs;
        });
    }

    add_group("poisson.reproduce", [&config]() {
        const SchurData data = fixtures::schur_d2();
        const std::vector<Cx> z{Cx{0.5, 0.0}, Cx{0.0, 0.3}};
        const double gap = checks::poisson_gap(data, config.poisson_grid_n, z);
        return std::vector<CheckRecord>{make_record("poisson.reproduce.d2", "upper", gap, 0,
                                                    config.tol("poisson.reproduce", 1e-8))};
    });

    add_group("counterexample", [&config]() {
        const checks::CounterexampleResult r =
            checks::counterexample_integral(config.counterexample_grid_n);
        std::vector<CheckRecord> recs;
        recs.push_back(make_record("counterexample.integral", "abs", r.integral, r.reference,
                                   config.tol("counterexample.integral", 1e-6)));
        recs.push_back(make_record("counterexample.gap_from_diagonal", "lower", r.gap_from_diag,
                                   0.14, 0));
        return recs;
    });

    add_group("monotonicity.lambda", [&config, fixtures]() {
        const std::vector<double> eps{0.2, 0.4, 0.6, 0.8, 0.95};
        std::vector<CheckRecord> recs;
        for (const auto& [tag, data] : fixtures) {
            const int n = data.dim >= 3 ? config.grid_n_d3 : config.grid_n_d12;
            recs.push_back(make_record("monotonicity.lambda." + tag, "lower",
                                       checks::monotonicity_min_gap(data, n, eps), 1e-12, 0));
        }
        return recs;
    });

    add_group("birkhoff", [&config]() {
        const SchurData data = fixtures::schur_d2();
        const TorusLine line(config.birkhoff_eta);
        const checks::LineTrendResult r = checks::birkhoff_trend(data, line, config.L_schedule);
        std::vector<CheckRecord> recs;
        recs.push_back(make_record("birkhoff.error_at_final_L.d2", "upper", r.final_error, 0,
                                   config.tol("birkhoff.error_at_final_L", 5e-3)));
        recs.push_back(
            make_record("birkhoff.tail_trend.d2", "lower", r.tail_nonincreasing ? 1.0 : 0.0, 1.0, 0));
        return recs;
    });

    add_group("roundtrip.univariate", [&config]() {
        return std::vector<CheckRecord>{
            make_record("roundtrip.univariate.d1", "upper",
                        checks::univariate_roundtrip_max_err(fixtures::schur_d1()), 0,
                        config.tol("roundtrip.univariate", 1e-10))};
    });

    add_group("lattice", [&config]() {
        const checks::LatticeExampleResult r = checks::lattice_examples();
        std::vector<CheckRecord> recs;
        recs.push_back(make_record("lattice.roundtrip_exact", "upper", r.failures, 0, 0));
        recs.push_back(make_record("lattice.line_factorization", "upper",
                                   r.line_factorization_max_err, 0,
                                   config.tol("lattice.line_factorization", 1e-12)));
        return recs;
    });

    if (config.include_media) {
        add_group("layered.cross_oracle", [&config]() {
            std::vector<CheckRecord> recs;
            const std::vector<std::pair<std::string, LayeredMedium>> media = {
                {"single", fixtures::medium_single()}, {"threelayer", fixtures::medium_threelayer()}};
            for (const auto& [tag, medium] : media) {
                const checks::LayeredOracleResult r =
                    checks::layered_cross_oracle(medium, config.cross_oracle_samples, config.seed);
                recs.push_back(make_record("layered.cross_oracle." + tag, "upper", r.modulus_max_diff,
                                           0, config.tol("layered.cross_oracle", 1e-10)));
            }
            return recs;
        });

        add_group("layered.trace", [&config]() {
            std::vector<CheckRecord> recs;
            const checks::TraceResult single =
                checks::trace_errors(fixtures::medium_single(), config.L_schedule);
            recs.push_back(make_record("layered.trace_single_max_err", "upper", single.max_error, 0,
                                       config.tol("layered.trace_single", 1e-10)));
            const checks::TraceResult three =
                checks::trace_errors(fixtures::medium_threelayer(), config.L_schedule);
            recs.push_back(make_record("layered.trace_threelayer_final_err", "upper",
                                       three.final_error, 0,
                                       config.tol("layered.trace_threelayer", 1e-2)));
            recs.push_back(make_record("layered.trace_threelayer_trend", "lower",
                                       three.tail_nonincreasing ? 1.0 : 0.0, 1.0, 0));
            return recs;
        });
    }

    auto timed = [&config](const Group& g) {
        const auto start = std::chrono::steady_clock::now();
        std::vector<CheckRecord> recs;
        try {
            recs = g.fn();
        } catch (const std::exception& e) {
            // a throwing group still shows up in the report, marked failed
            CheckRecord rec;
            rec.name = g.name + ".error";
            rec.mode = "upper";
            rec.computed = 1.0;
            rec.pass = false;
            rec.note = e.what();
            recs.push_back(std::move(rec));
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        for (CheckRecord& r : recs) r.runtime_s = config.timing ? secs : 0.0;
        return recs;
    };

    Report report;
    if (config.parallel) {
        std::vector<std::future<std::vector<CheckRecord>>> futures;
        futures.reserve(groups.size());
        for (const Group& g : groups)
            futures.push_back(std::async(std::launch::async, [&timed, &g]() { return timed(g); }));
        for (auto& f : futures)
            for (CheckRecord& r : f.get()) report.checks.push_back(std::move(r));
    } else {
        for (const Group& g : groups)
            for (CheckRecord& r : timed(g)) report.checks.push_back(std::move(r));
    }
    return report;
}

}  // namespace opot
