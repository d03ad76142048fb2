#include <doctest.h>

#include <fstream>
#include <sstream>

#include "opot/fixtures.hpp"
#include "opot/verify.hpp"

using namespace opot;

namespace {

RunConfig quick_config() {
    RunConfig cfg;
    cfg.grid_n_d12 = 32;
    cfg.grid_n_d3 = 12;
    cfg.identity_grid_n = 12;
    cfg.poisson_grid_n = 48;
    cfg.counterexample_grid_n = 64;
    cfg.taylor_degree = 4;
    cfg.cross_oracle_samples = 60;
    cfg.L_schedule = {60, 120, 240};
    // coarse grids cannot reach the production tolerances
    cfg.tolerance_overrides["szego"] = 2e-4;
    cfg.tolerance_overrides["orthogonality.gram_offdiag"] = 1e-5;
    cfg.tolerance_overrides["orthogonality.gram_diag"] = 1e-5;
    cfg.tolerance_overrides["orthogonality.phi_star_monomials"] = 1e-5;
    cfg.tolerance_overrides["poisson.reproduce"] = 1e-5;
    cfg.tolerance_overrides["counterexample.integral"] = 1e-5;
    cfg.tolerance_overrides["birkhoff.error_at_final_L"] = 0.2;
    cfg.tolerance_overrides["layered.trace_threelayer"] = 0.5;
    return cfg;
}

}  // namespace

TEST_SUITE("verify") {

TEST_CASE("identity suite on the d1 fixture") {
    auto r = checks::identity_suite(fixtures::schur_d1(), 16);
    CHECK(r.det_max_coeff_err < 1e-12);
    CHECK(r.star_max_coeff_err < 1e-12);
    CHECK(r.sign_flip_max_err == 0.0);
    CHECK(r.realpart_max_rel_err < 1e-10);
    CHECK(r.transmission_max_rel_err < 1e-10);
    CHECK(r.tail_max_rel_err < 1e-10);
    CHECK(r.tail_modulus_max_err < 1e-10);
}

TEST_CASE("taylor cross oracle on the fixtures") {
    for (const SchurData& data : fixtures::all_schur())
        CHECK(checks::taylor_cross_max_diff(data, 5) < 1e-10);
}

TEST_CASE("counterexample integral at a moderate grid") {
    auto r = checks::counterexample_integral(128);
    CHECK(std::abs(r.integral - r.reference) < 1e-6);
    CHECK(r.gap_from_diag > 0.14);
}

TEST_CASE("lattice example battery") {
    auto r = checks::lattice_examples();
    CHECK(r.failures == 0);
    CHECK(r.line_factorization_max_err < 1e-12);
}

TEST_CASE("monotonicity of the dilated log integral") {
    const std::vector<double> eps{0.2, 0.4, 0.6, 0.8, 0.95};
    CHECK(checks::monotonicity_min_gap(fixtures::schur_d1(), 32, eps) > 0.0);
}

TEST_CASE("line average error decreases over three doublings") {
    const std::vector<double> Ls{500, 1000, 2000, 4000};
    const TorusLine line({1.0, 1.4142135623730951});
    const auto r = checks::birkhoff_trend(fixtures::schur_d2(), line, Ls);
    REQUIRE(r.error.size() == 4);
    CHECK(r.error[1] < r.error[0]);
    CHECK(r.error[2] < r.error[1]);
    CHECK(r.error[3] < r.error[2]);
}

TEST_CASE("univariate round trip of the d1 fixture") {
    CHECK(checks::univariate_roundtrip_max_err(fixtures::schur_d1()) < 1e-10);
}

TEST_CASE("report bookkeeping") {
    Report rep;
    rep.checks.push_back(CheckRecord{"a", "upper", 0.5, 0.0, 1.0, true, 0.0, ""});
    rep.checks.push_back(CheckRecord{"b", "abs", 1.0, 1.0, 0.0, true, 0.0, ""});
    CHECK(rep.all_pass());
    rep.checks.push_back(CheckRecord{"c", "upper", 2.0, 0.0, 1.0, false, 0.0, ""});
    CHECK(!rep.all_pass());
    CHECK(rep.to_json().find("\"all_pass\": false") != std::string::npos);
    CHECK(rep.to_table().find("FAIL") != std::string::npos);
}

TEST_CASE("config round trip and overrides") {
    const std::string text = R"({
        "grid_n_d12": 16,
        "taylor_degree": 3,
        "include_media": false,
        "tolerances": {"szego": 0.5}
    })";
    RunConfig cfg = RunConfig::from_json(text);
    CHECK(cfg.grid_n_d12 == 16);
    CHECK(cfg.taylor_degree == 3);
    CHECK(!cfg.include_media);
    CHECK(cfg.tol("szego", 1e-8) == 0.5);
    CHECK(cfg.tol("other", 1e-8) == 1e-8);
}

TEST_CASE("full battery passes on a reduced budget") {
    const Report rep = run_verify_all(quick_config());
    for (const CheckRecord& c : rep.checks) {
        INFO(c.name, " computed=", c.computed, " ref=", c.reference, " tol=", c.tolerance);
        CHECK(c.pass);
    }
    CHECK(rep.all_pass());
}

TEST_CASE("deterministic report bytes") {
    RunConfig cfg = quick_config();
    cfg.include_media = false;  // keep it fast; determinism is the point here
    cfg.L_schedule = {30, 60, 120};
    const std::string a = run_verify_all(cfg).to_json();
    const std::string b = run_verify_all(cfg).to_json();
    CHECK(a == b);
}

TEST_CASE("parallel execution keeps the report order") {
    RunConfig cfg = quick_config();
    cfg.include_media = false;
    cfg.L_schedule = {30, 60, 120};
    const Report seq = run_verify_all(cfg);
    cfg.parallel = true;
    const Report par = run_verify_all(cfg);
    REQUIRE(seq.checks.size() == par.checks.size());
    for (size_t i = 0; i < seq.checks.size(); ++i) {
        CHECK(seq.checks[i].name == par.checks[i].name);
        CHECK(seq.checks[i].computed == par.checks[i].computed);
    }
}

TEST_CASE("a deliberately coarse grid fails the szego tolerance") {
    RunConfig cfg = quick_config();
    cfg.grid_n_d12 = 4;
    cfg.tolerance_overrides.erase("szego");  // production tolerance again
    cfg.include_media = false;
    cfg.L_schedule = {30, 60, 120};
    const Report rep = run_verify_all(cfg);
    bool szego_failed = false;
    for (const CheckRecord& c : rep.checks)
        if (c.name.rfind("szego.", 0) == 0 && !c.pass) szego_failed = true;
    CHECK(szego_failed);
    CHECK(!rep.all_pass());
}

TEST_CASE("a throwing check group is marked in the report") {
    RunConfig cfg = quick_config();
    cfg.include_media = false;
    cfg.L_schedule = {30, 60, 120};
    cfg.birkhoff_eta = {1.0, -2.0};  // invalid line frequencies
    const Report rep = run_verify_all(cfg);
    bool marked = false;
    for (const CheckRecord& c : rep.checks)
        if (c.name == "birkhoff.error" && !c.pass && !c.note.empty()) marked = true;
    CHECK(marked);
    CHECK(!rep.all_pass());
}

TEST_CASE("skipping media keeps only symbolic checks") {
    RunConfig cfg = quick_config();
    cfg.include_media = false;
    cfg.L_schedule = {30, 60, 120};
    const Report rep = run_verify_all(cfg);
    for (const CheckRecord& c : rep.checks) CHECK(c.name.rfind("layered.", 0) != 0);
}

TEST_CASE("bundled fixture files match the built-in data") {
    auto slurp = [](const std::string& path) {
        std::ifstream in(path);
        REQUIRE(in);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string dir = OPOT_FIXTURE_DIR;
    CHECK(SchurData::from_json(slurp(dir + "/schur_d1.json")).to_json() ==
          fixtures::schur_d1().to_json());
    CHECK(SchurData::from_json(slurp(dir + "/schur_d2.json")).to_json() ==
          fixtures::schur_d2().to_json());
    CHECK(SchurData::from_json(slurp(dir + "/schur_d3.json")).to_json() ==
          fixtures::schur_d3().to_json());
    CHECK(LayeredMedium::from_json(slurp(dir + "/medium_single.json")).to_json() ==
          fixtures::medium_single().to_json());
    CHECK(LayeredMedium::from_json(slurp(dir + "/medium_threelayer.json")).to_json() ==
          fixtures::medium_threelayer().to_json());
}

}
