#include <doctest.h>

#include <complex>
#include <random>
#include <vector>

#include "opot/polycore.hpp"
#include "opot/schur.hpp"

using namespace opot;

namespace {

TorusPoly random_poly(std::mt19937_64& rng, int dim, int max_terms, int max_exp,
                      bool integer_coeffs = false) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> expd(0, max_exp);
    std::uniform_int_distribution<int> intc(-4, 4);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    TorusPoly p(dim);
    const int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        std::vector<int> e(static_cast<size_t>(dim));
        for (int i = 0; i < dim; ++i) e[static_cast<size_t>(i)] = expd(rng);
        Cx c = integer_coeffs ? Cx(intc(rng), intc(rng)) : Cx(coef(rng), coef(rng));
        p.add_term(Monomial(e), c);
    }
    return p;
}

std::vector<Cx> random_torus_point(std::mt19937_64& rng, int dim) {
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    std::vector<Cx> z(static_cast<size_t>(dim));
    for (auto& v : z) {
        double t = angle(rng);
        v = Cx{std::cos(t), std::sin(t)};
    }
    return z;
}

std::vector<Cx> random_disk_point(std::mt19937_64& rng, int dim) {
    std::uniform_real_distribution<double> radius(0.0, 1.0);
    auto z = random_torus_point(rng, dim);
    for (auto& v : z) v *= radius(rng);
    return z;
}

}  // namespace

TEST_SUITE("polycore") {

TEST_CASE("addition basics") {
    TorusPoly z1 = TorusPoly::variable(2, 1);
    CHECK((z1 + (-z1)).is_zero());

    TorusPoly p = TorusPoly::constant(2, 1.0) + z1;
    TorusPoly q = TorusPoly::variable(2, 2);
    TorusPoly sum = p + q;
    CHECK(sum.coeff(Monomial{0, 0}) == Cx{1, 0});
    CHECK(sum.coeff(Monomial{1, 0}) == Cx{1, 0});
    CHECK(sum.coeff(Monomial{0, 1}) == Cx{1, 0});
    CHECK(sum.terms().size() == 3);

    std::mt19937_64 rng(7);
    TorusPoly r = random_poly(rng, 2, 8, 3);
    CHECK(r + TorusPoly(2) == r);
}

TEST_CASE("multiplication basics") {
    TorusPoly z1 = TorusPoly::variable(2, 1);
    TorusPoly z2 = TorusPoly::variable(2, 2);
    TorusPoly prod = z1 * z2;
    CHECK(prod.coeff(Monomial{1, 1}) == Cx{1, 0});
    CHECK(prod.terms().size() == 1);

    TorusPoly one = TorusPoly::constant(2, 1.0);
    CHECK((one + z1) * (one - z1) == one - z1 * z1);

    std::mt19937_64 rng(8);
    TorusPoly p = random_poly(rng, 2, 8, 3);
    CHECK(p * one == p);
}

TEST_CASE("dimension mismatch raises") {
    CHECK_THROWS_AS(TorusPoly::variable(1, 1) + TorusPoly::variable(2, 1), std::invalid_argument);
    CHECK_THROWS_AS(TorusPoly::variable(1, 1) * TorusPoly::variable(2, 1), std::invalid_argument);
    std::vector<Cx> z{Cx{1, 0}};
    CHECK_THROWS_AS(TorusPoly::variable(2, 1).eval(z), std::invalid_argument);
}

TEST_CASE("evaluation") {
    std::vector<Cx> ii{Cx{0, 1}, Cx{0, 1}};
    CHECK(TorusPoly::monomial(2, Monomial{1, 1}, 1.0).eval(ii) == Cx{-1, 0});
    CHECK(TorusPoly::constant(2, 7.0).eval(ii) == Cx{7, 0});
}

TEST_CASE("evaluation of phi_2 star matches the direct matrix product") {
    // two-step data, evaluated at z = (1, 1) against M_0 M_1 M_2 entry (2,2)
    SchurData data;
    data.dim = 2;
    data.r = {{0, 0}, {0.3, 0}, {0, 0.4}};
    data.nu = {1, 1};
    auto quads = build_quads(data);
    std::vector<Cx> z{Cx{1, 0}, Cx{1, 0}};

    auto mul = [](const std::vector<std::vector<Cx>>& A, const std::vector<std::vector<Cx>>& B) {
        std::vector<std::vector<Cx>> C(2, std::vector<Cx>(2));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) C[i][j] = A[i][0] * B[0][j] + A[i][1] * B[1][j];
        return C;
    };
    std::vector<std::vector<Cx>> m0{{Cx{1, 0}, Cx{1, 0}}, {Cx{-1, 0}, Cx{1, 0}}};
    auto mj = [&](int j) {
        Cx zv = z[static_cast<size_t>(data.nu[static_cast<size_t>(j - 1)] - 1)];
        Cx r = data.r[static_cast<size_t>(j)];
        return std::vector<std::vector<Cx>>{{zv, r * zv}, {std::conj(r), Cx{1, 0}}};
    };
    auto prod = mul(mul(m0, mj(1)), mj(2));
    CHECK(std::abs(quads[2].phi_star.eval(z) - prod[1][1]) < 1e-14);
}

TEST_CASE("star operation") {
    // star of the constant 1 against e gives z^e
    TorusPoly one = TorusPoly::constant(2, 1.0);
    Monomial e{2, 1};
    TorusPoly starred = poly_star(one, e);
    CHECK(starred == TorusPoly::monomial(2, e, 1.0));

    // involution with a dominating multidegree
    std::mt19937_64 rng(21);
    for (int rep = 0; rep < 20; ++rep) {
        TorusPoly p = random_poly(rng, 2, 6, 3);
        Monomial m = p.degree_vector();
        m.e[0] += rep % 2;
        CHECK(poly_star(poly_star(p, m), m) == p);
    }

    // multidegree must dominate
    TorusPoly z1sq = TorusPoly::monomial(2, Monomial{2, 0}, 1.0);
    CHECK_THROWS_AS(poly_star(z1sq, Monomial{1, 0}), std::invalid_argument);
}

TEST_CASE("star preserves modulus on the torus") {
    std::mt19937_64 rng(22);
    for (int rep = 0; rep < 20; ++rep) {
        TorusPoly p = random_poly(rng, 2, 6, 3);
        TorusPoly s = poly_star(p, p.degree_vector());
        auto z = random_torus_point(rng, 2);
        CHECK(std::abs(p.eval(z)) == doctest::Approx(std::abs(s.eval(z))).epsilon(1e-12));
    }
}

TEST_CASE("ring axioms on random sparse polynomials") {
    std::mt19937_64 rng(23);
    for (int rep = 0; rep < 20; ++rep) {
        // exact equality for integer coefficients
        TorusPoly a = random_poly(rng, 2, 5, 2, true);
        TorusPoly b = random_poly(rng, 2, 5, 2, true);
        TorusPoly c = random_poly(rng, 2, 5, 2, true);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
    }
    for (int rep = 0; rep < 20; ++rep) {
        TorusPoly a = random_poly(rng, 2, 5, 2);
        TorusPoly b = random_poly(rng, 2, 5, 2);
        TorusPoly c = random_poly(rng, 2, 5, 2);
        CHECK(max_coeff_diff((a * b) * c, a * (b * c)) < 1e-12);
        CHECK(max_coeff_diff(a * (b + c), a * b + a * c) < 1e-12);
    }
}

TEST_CASE("evaluation is multiplicative") {
    std::mt19937_64 rng(24);
    for (int rep = 0; rep < 30; ++rep) {
        TorusPoly p = random_poly(rng, 3, 5, 2);
        TorusPoly q = random_poly(rng, 3, 5, 2);
        auto z = random_disk_point(rng, 3);
        Cx lhs = (p * q).eval(z);
        Cx rhs = p.eval(z) * q.eval(z);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("json round trip keeps canonical order") {
    std::mt19937_64 rng(25);
    for (int rep = 0; rep < 10; ++rep) {
        TorusPoly p = random_poly(rng, 2, 6, 3);
        CHECK(TorusPoly::from_json(p.to_json()) == p);
    }
    TorusPoly p(2);
    p.add_term(Monomial{1, 0}, Cx{1, 0});
    p.add_term(Monomial{0, 1}, Cx{0, -2});
    CHECK(p.to_json() ==
          R"({"dim":2,"terms":[{"e":[0,1],"im":-2.0,"re":0.0},{"e":[1,0],"im":0.0,"re":1.0}]})");
}

TEST_CASE("hermitian polynomial derivative") {
    // d^2/dzbar dz (z zbar) = 1
    HermitianPoly zzbar = HermitianPoly::term(1, 1, 1);
    CHECK(hpoly_dbar_d(zzbar) == HermitianPoly::constant(1));

    // holomorphic kernel: d^2/dzbar dz (z^2) = 0
    CHECK(hpoly_dbar_d(HermitianPoly::term(2, 0, 1)).is_zero());
}

TEST_CASE("hermitian polynomial arithmetic and evaluation") {
    HermitianPoly p = HermitianPoly::constant(1) - HermitianPoly::term(1, 1, 1);  // 1 - z zbar
    Cx z{0.3, 0.4};
    CHECK(std::abs(p.eval(z) - Cx{1.0 - 0.25, 0.0}) < 1e-15);
    CHECK(p * BigInt(0) == HermitianPoly{});
    CHECK((p * p).coeff(2, 2) == 1);
    CHECK((p * p).coeff(1, 1) == -2);
    CHECK((p * p).coeff(0, 0) == 1);
}

}
