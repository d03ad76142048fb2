#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "opot/fixtures.hpp"
#include "opot/freqlattice.hpp"
#include "opot/layered.hpp"
#include "opot/scattering.hpp"
#include "opot/schur.hpp"
#include "opot/torusint.hpp"
#include "opot/verify.hpp"

namespace {

using namespace opot;

std::vector<double> parse_csv_doubles(const std::string& text) {
    std::vector<double> out;
    std::string token;
    std::stringstream ss(text);
    while (std::getline(ss, token, ',')) out.push_back(std::stod(token));
    return out;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

void print_quad(const PolyQuad& q) {
    std::printf("level %d\n", q.level);
    std::printf("  psi      = %s\n", q.psi.to_string().c_str());
    std::printf("  psi_star = %s\n", q.psi_star.to_string().c_str());
    std::printf("  phi      = %s\n", q.phi.to_string().c_str());
    std::printf("  phi_star = %s\n", q.phi_star.to_string().c_str());
}

int run(int argc, char** argv) {
    CLI::App app{"orthogonal polynomials on the torus: construction and verification"};
    app.require_subcommand(1);

    // ---- scatter ----
    auto* scatter = app.add_subcommand("scatter", "scattering polynomials");
    scatter->require_subcommand(1);

    int phi_p = 0, phi_q = 0;
    auto* scatter_phi = scatter->add_subcommand("phi", "print phi^(p,q)");
    scatter_phi->add_option("p", phi_p, "first index")->required();
    scatter_phi->add_option("q", phi_q, "second index")->required();

    int pmax = 12, qmax = 12;
    auto* scatter_verify = scatter->add_subcommand("verify", "eigenvalue identity table");
    scatter_verify->add_option("--pmax", pmax, "largest p");
    scatter_verify->add_option("--qmax", qmax, "largest q");

    // ---- schur ----
    auto* schur = app.add_subcommand("schur", "Schur function engine");
    schur->require_subcommand(1);

    std::string quads_model;
    int quads_level = -1;
    bool quads_json = false;
    auto* schur_quads = schur->add_subcommand("quads", "print the polynomial quad at a level");
    schur_quads->add_option("model", quads_model, "SchurData JSON file")->required();
    schur_quads->add_option("--level", quads_level, "level (default: top)");
    schur_quads->add_flag("--json", quads_json, "emit the four polynomials as JSON");

    std::string taylor_model, taylor_method = "both";
    int taylor_degree = 6;
    auto* schur_taylor = schur->add_subcommand("taylor", "Taylor coefficients");
    schur_taylor->add_option("model", taylor_model, "SchurData JSON file")->required();
    schur_taylor->add_option("--degree", taylor_degree, "total degree cap");
    schur_taylor->add_option("--method", taylor_method, "weights|rational|both");

    // ---- torus ----
    auto* torus = app.add_subcommand("torus", "torus integrals");
    torus->require_subcommand(1);

    std::string szego_model;
    int szego_grid = 0;
    auto* torus_szego = torus->add_subcommand("szego", "log integrals against the parameter sum");
    torus_szego->add_option("model", szego_model, "SchurData JSON file")->required();
    torus_szego->add_option("--grid", szego_grid, "points per axis (default: preferred)");

    std::string gram_model, gram_out;
    int gram_jmax = -1, gram_grid = 0;
    auto* torus_gram = torus->add_subcommand("gram", "Gram matrix of the orthogonal polynomials");
    torus_gram->add_option("model", gram_model, "SchurData JSON file")->required();
    torus_gram->add_option("--jmax", gram_jmax, "largest polynomial index (default: top)");
    torus_gram->add_option("--grid", gram_grid, "points per axis");
    torus_gram->add_option("--out", gram_out, "CSV output path");

    std::string line_model, line_eta, line_L = "250,500,1000,2000,4000", line_out;
    auto* torus_line = torus->add_subcommand("line", "ergodic line averages of the log integrand");
    torus_line->add_option("model", line_model, "SchurData JSON file")->required();
    torus_line->add_option("--eta", line_eta, "comma-separated frequencies")->required();
    torus_line->add_option("--L", line_L, "comma-separated half-lengths");
    torus_line->add_option("--out", line_out, "CSV output path");

    // ---- lattice ----
    auto* lattice = app.add_subcommand("lattice", "exact frequency lattice decomposition");
    lattice->require_subcommand(1);
    std::string lattice_input, lattice_field;
    auto* lattice_dec = lattice->add_subcommand("decompose", "eta = A q over the declared field");
    lattice_dec->add_option("--B", lattice_input, "JSON file with B, b and field")->required();
    lattice_dec->add_option("--field", lattice_field, "override the field declaration");

    // ---- layered ----
    auto* layered = app.add_subcommand("layered", "piecewise-constant impedance scattering");
    layered->require_subcommand(1);

    std::string sweep_medium, sweep_out, sweep_source = "ode";
    double sweep_omega_max = 100.0;
    int sweep_n = 4096;
    auto* layered_sweep = layered->add_subcommand("sweep", "reflection spectrum");
    layered_sweep->add_option("medium", sweep_medium, "medium JSON file")->required();
    layered_sweep->add_option("--omega-max", sweep_omega_max, "sweep range [-max, max]");
    layered_sweep->add_option("--n", sweep_n, "number of samples");
    layered_sweep->add_option("--source", sweep_source, "ode|schur");
    layered_sweep->add_option("--out", sweep_out, "CSV output path");

    std::string trace_medium, trace_L = "250,500,1000,2000,4000", trace_out;
    auto* layered_trace = layered->add_subcommand("trace", "trace-formula averages");
    layered_trace->add_option("medium", trace_medium, "medium JSON file")->required();
    layered_trace->add_option("--L", trace_L, "comma-separated half-lengths");
    layered_trace->add_option("--out", trace_out, "CSV output path");

    // ---- verify ----
    auto* verify_cmd = app.add_subcommand("verify", "run the verification battery");
    verify_cmd->require_subcommand(1);
    std::string verify_config, verify_out;
    bool verify_parallel = false, verify_timing = false;
    auto* verify_all = verify_cmd->add_subcommand("all", "all checks over the bundled fixtures");
    verify_all->add_option("--config", verify_config, "RunConfig JSON file");
    verify_all->add_option("--out", verify_out, "report JSON output path");
    verify_all->add_flag("--parallel", verify_parallel, "run independent checks concurrently");
    verify_all->add_flag("--timing", verify_timing, "include wall times in the report");

    CLI11_PARSE(app, argc, argv);

    if (scatter_phi->parsed()) {
        std::printf("phi^(%d,%d) = %s\n", phi_p, phi_q, phi(phi_p, phi_q).to_string().c_str());
        return 0;
    }
    if (scatter_verify->parsed()) {
        bool all_ok = true;
        std::printf("%4s %4s %6s\n", "p", "q", "eigen");
        for (int p = 0; p <= pmax; ++p)
            for (int q = 0; q <= qmax; ++q) {
                const bool ok = verify_eigen(p, q);
                all_ok = all_ok && ok;
                std::printf("%4d %4d %6s\n", p, q, ok ? "ok" : "FAIL");
            }
        std::printf("overall: %s\n", all_ok ? "ok" : "FAIL");
        return all_ok ? 0 : 1;
    }
    if (schur_quads->parsed()) {
        const SchurData data = SchurData::load(quads_model);
        const auto quads = build_quads(data);
        const int level = quads_level < 0 ? data.top_level() : quads_level;
        if (level < 0 || level > data.top_level()) throw std::runtime_error("level out of range");
        const PolyQuad& q = quads[static_cast<size_t>(level)];
        if (quads_json) {
            std::printf("{\"level\": %d, \"psi\": %s, \"psi_star\": %s, \"phi\": %s, \"phi_star\": %s}\n",
                        q.level, q.psi.to_json().c_str(), q.psi_star.to_json().c_str(),
                        q.phi.to_json().c_str(), q.phi_star.to_json().c_str());
        } else {
            print_quad(q);
        }
        return 0;
    }
    if (schur_taylor->parsed()) {
        const SchurData data = SchurData::load(taylor_model);
        const bool want_w = taylor_method == "weights" || taylor_method == "both";
        const bool want_r = taylor_method == "rational" || taylor_method == "both";
        if (!want_w && !want_r) throw std::runtime_error("method must be weights|rational|both");
        std::map<Monomial, Cx> mw, mr;
        if (want_w) mw = taylor_from_weights(data, taylor_degree);
        if (want_r) mr = taylor_from_rational(build_quads(data).back(), taylor_degree);
        const auto& keys = want_w ? mw : mr;
        std::map<Monomial, Cx> all = keys;
        for (const auto& [k, v] : (want_r ? mr : mw)) all.try_emplace(k, Cx{0, 0});
        double worst = 0.0;
        for (const auto& [k, unused] : all) {
            std::printf("e=[");
            for (int i = 0; i < k.dim(); ++i) std::printf(i ? ",%d" : "%d", k.e[static_cast<size_t>(i)]);
            std::printf("]");
            if (want_w) {
                const Cx v = mw.count(k) ? mw.at(k) : Cx{0, 0};
                std::printf("  weights=(% .12e, % .12e)", v.real(), v.imag());
            }
            if (want_r) {
                const Cx v = mr.count(k) ? mr.at(k) : Cx{0, 0};
                std::printf("  rational=(% .12e, % .12e)", v.real(), v.imag());
            }
            if (want_w && want_r) {
                const Cx a = mw.count(k) ? mw.at(k) : Cx{0, 0};
                const Cx b = mr.count(k) ? mr.at(k) : Cx{0, 0};
                worst = std::max(worst, std::abs(a - b));
            }
            std::printf("\n");
        }
        if (want_w && want_r) std::printf("max |weights - rational| = %.3e\n", worst);
        return 0;
    }
    if (torus_szego->parsed()) {
        const SchurData data = SchurData::load(szego_model);
        const TorusGrid grid(data.dim, szego_grid > 0 ? szego_grid : TorusGrid::preferred(data.dim).points_per_axis);
        double reference = 0.0;
        for (int j = 1; j <= data.top_level(); ++j)
            reference += std::log(1.0 - std::norm(data.r[static_cast<size_t>(j)]));
        const double v1 = szego_integral(data, grid);
        const double v2 = szego_log_w(data, grid);
        const double v3 = outer_log_integral(data, grid);
        std::printf("integral log(1-|f|^2) = %.15g   (reference %.15g, err %.3e)\n", v1, reference,
                    std::abs(v1 - reference));
        std::printf("integral log w        = %.15g   (reference %.15g, err %.3e)\n", v2, reference,
                    std::abs(v2 - reference));
        std::printf("integral log|1-f|     = %.15g   (reference 0, err %.3e)\n", v3, std::abs(v3));
        return 0;
    }
    if (torus_gram->parsed()) {
        const SchurData data = SchurData::load(gram_model);
        const int jmax = gram_jmax < 0 ? data.top_level() : gram_jmax;
        const TorusGrid grid(data.dim, gram_grid > 0 ? gram_grid : TorusGrid::preferred(data.dim).points_per_axis);
        const auto g = gram(data, grid, jmax);
        std::ostringstream csv;
        csv << "j,k,re,im\n";
        for (int j = 0; j <= jmax; ++j)
            for (int k = 0; k <= jmax; ++k) {
                char buf[128];
                std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g\n", j, k,
                              g[static_cast<size_t>(j)][static_cast<size_t>(k)].real(),
                              g[static_cast<size_t>(j)][static_cast<size_t>(k)].imag());
                csv << buf;
            }
        if (!gram_out.empty()) open_out(gram_out) << csv.str();
        else std::fputs(csv.str().c_str(), stdout);
        return 0;
    }
    if (torus_line->parsed()) {
        const SchurData data = SchurData::load(line_model);
        const TorusLine line(parse_csv_doubles(line_eta));
        if (line.dim() != data.dim) throw std::runtime_error("eta dimension must match the model");
        double reference = 0.0;
        for (int j = 1; j <= data.top_level(); ++j)
            reference += -std::log(1.0 - std::norm(data.r[static_cast<size_t>(j)]));
        const double step = default_line_step(data, line);
        std::ostringstream csv;
        csv << "L,average,reference,abs_error\n";
        for (double L : parse_csv_doubles(line_L)) {
            const double avg = line_average(
                line,
                [&](std::span<const Cx> z) {
                    return -std::log(1.0 - std::norm(eval_convergent(data, data.top_level(), z)));
                },
                L, step);
            char buf[160];
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", L, avg, reference,
                          std::abs(avg - reference));
            csv << buf;
        }
        if (!line_out.empty()) open_out(line_out) << csv.str();
        else std::fputs(csv.str().c_str(), stdout);
        return 0;
    }
    if (lattice_dec->parsed()) {
        std::ifstream in(lattice_input);
        if (!in) throw std::runtime_error("cannot open " + lattice_input);
        std::stringstream ss;
        ss << in.rdbuf();
        std::string text = ss.str();
        if (!lattice_field.empty()) {
            nlohmann::json j = nlohmann::json::parse(text);
            j["field"] = lattice_field;
            text = j.dump();
        }
        const RationalBasisInput input = RationalBasisInput::from_json(text);
        const LatticeDecomposition dec = decompose(input);
        std::printf("A =\n");
        for (const auto& row : dec.A) {
            std::printf("  [");
            for (size_t c = 0; c < row.size(); ++c)
                std::printf(c ? ", %s" : "%s", row[c].str().c_str());
            std::printf("]\n");
        }
        std::printf("q =\n");
        for (const QuadExt& v : dec.q) std::printf("  %s  (~ %.15g)\n", v.str().c_str(), v.to_double());
        std::printf("certificate: j = %d, t = %lld, m = %d, s = %s\n", dec.certificate.approximant_index,
                    dec.certificate.t, dec.certificate.m, dec.certificate.s.str().c_str());
        std::printf("verified: %s\n", verify(dec, input) ? "ok" : "FAIL");
        return verify(dec, input) ? 0 : 1;
    }
    if (layered_sweep->parsed()) {
        const LayeredMedium medium = LayeredMedium::load(sweep_medium);
        const ReflectionSpectrum spec = sweep_reflection(medium, sweep_omega_max, sweep_n, sweep_source);
        std::ostringstream csv;
        csv << "omega,re,im,mod2\n";
        for (size_t i = 0; i < spec.omegas.size(); ++i) {
            char buf[160];
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", spec.omegas[i],
                          spec.R[i].real(), spec.R[i].imag(), std::norm(spec.R[i]));
            csv << buf;
        }
        if (!sweep_out.empty()) open_out(sweep_out) << csv.str();
        else std::fputs(csv.str().c_str(), stdout);
        return 0;
    }
    if (layered_trace->parsed()) {
        const LayeredMedium medium = LayeredMedium::load(trace_medium);
        const std::vector<double> Ls = parse_csv_doubles(trace_L);
        std::ostringstream csv;
        csv << "L,average,reference,abs_error\n";
        for (const TraceRow& row : trace_check(medium, Ls)) {
            char buf[160];
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", row.L, row.average,
                          row.reference, row.abs_error);
            csv << buf;
        }
        if (!trace_out.empty()) open_out(trace_out) << csv.str();
        else std::fputs(csv.str().c_str(), stdout);
        return 0;
    }
    if (verify_all->parsed()) {
        RunConfig config = verify_config.empty() ? RunConfig{} : RunConfig::load(verify_config);
        if (verify_parallel) config.parallel = true;
        if (verify_timing) config.timing = true;
        if (const char* threads = std::getenv("OPOT_THREADS"))
            if (std::string(threads) == "1") config.parallel = false;
        const Report report = run_verify_all(config);
        std::fputs(report.to_table().c_str(), stdout);
        if (!verify_out.empty()) open_out(verify_out) << report.to_json();
        return report.all_pass() ? 0 : 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
