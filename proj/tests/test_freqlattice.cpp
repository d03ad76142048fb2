#include <doctest.h>

#include "opot/freqlattice.hpp"

using namespace opot;

TEST_SUITE("freqlattice") {

TEST_CASE("quadratic extension arithmetic") {
    const QuadExt root2(Rational(0), Rational(1), 2);
    const QuadExt one(Rational(1));

    CHECK((root2 * root2) == QuadExt(Rational(2)));
    CHECK((one + root2).is_positive());
    CHECK((root2 - one).is_positive());                      // sqrt 2 > 1
    CHECK(!(one - root2).is_positive());                     // 1 - sqrt 2 < 0
    CHECK((QuadExt(Rational(3)) - root2 - root2).is_positive());   // 3 - 2 sqrt 2 > 0
    CHECK(!(QuadExt(Rational(2)) - root2 - root2).is_positive());  // 2 - 2 sqrt 2 < 0
    CHECK((root2.scaled(Rational(1, 2)) * root2) == one);

    const QuadExt root3(Rational(0), Rational(1), 3);
    CHECK_THROWS_AS(root2 + root3, std::invalid_argument);
    CHECK(std::abs(root2.to_double() - 1.4142135623730951) < 1e-15);
}

TEST_CASE("continued fraction convergents") {
    auto conv = rational_convergents(std::sqrt(2.0), 6);
    REQUIRE(conv.size() >= 5);
    CHECK(conv[0] == Rational(1));
    CHECK(conv[1] == Rational(3, 2));
    CHECK(conv[2] == Rational(7, 5));
    CHECK(conv[3] == Rational(17, 12));
    CHECK(conv[4] == Rational(41, 29));

    auto one = rational_convergents(1.0, 6);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == Rational(1));
}

TEST_CASE("integer input passes straight through") {
    RationalBasisInput in;
    in.B = {{Rational(2)}, {Rational(3)}};
    in.b = {QuadExt(Rational(1))};
    LatticeDecomposition dec = decompose(in);
    CHECK(dec.A == std::vector<std::vector<BigInt>>{{2}, {3}});
    CHECK(dec.q.size() == 1);
    CHECK(dec.q[0] == QuadExt(Rational(1)));
    CHECK(dec.certificate.approximant_index == -1);
    CHECK(verify(dec, in));
}

TEST_CASE("denominators are cleared exactly") {
    RationalBasisInput in;
    in.B = {{Rational(1, 2)}, {Rational(1, 3)}};
    in.b = {QuadExt(Rational(1))};
    LatticeDecomposition dec = decompose(in);
    CHECK(verify(dec, in));
    // hand result: eta = (1/2, 1/3) = (3, 2) * 1/6
    CHECK(dec.A == std::vector<std::vector<BigInt>>{{3}, {2}});
    CHECK(dec.q[0] == QuadExt(Rational(1, 6)));
}

TEST_CASE("identity basis over Q(sqrt 2)") {
    RationalBasisInput in;
    in.B = {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
    in.b = {QuadExt(Rational(1)), QuadExt(Rational(0), Rational(1), 2)};
    LatticeDecomposition dec = decompose(in);
    CHECK(verify(dec, in));
    for (const auto& row : dec.A)
        for (const BigInt& v : row) CHECK(v >= 0);

    // the reconstruction is symbolic: eta - A q vanishes in the field
    const auto eta = in.eta();
    for (size_t i = 0; i < eta.size(); ++i) {
        QuadExt sum;
        for (size_t c = 0; c < dec.q.size(); ++c)
            sum = sum + dec.q[c].scaled(Rational(dec.A[i][c]));
        CHECK((eta[i] - sum).is_zero());
    }
}

TEST_CASE("constructive path through the quadratic field") {
    // non-integer B forces the projection construction to run with exact
    // field arithmetic end to end
    RationalBasisInput in;
    in.B = {{Rational(1, 2), Rational(0)}, {Rational(0), Rational(1, 3)}};
    in.b = {QuadExt(Rational(1)), QuadExt(Rational(0), Rational(1), 2)};
    LatticeDecomposition dec = decompose(in);
    CHECK(dec.certificate.approximant_index >= 1);  // not the integer fast path
    CHECK(verify(dec, in));
    const auto eta = in.eta();
    for (size_t i = 0; i < eta.size(); ++i) {
        QuadExt sum;
        for (size_t c = 0; c < dec.q.size(); ++c)
            sum = sum + dec.q[c].scaled(Rational(dec.A[i][c]));
        CHECK((eta[i] - sum).is_zero());
    }
}

TEST_CASE("tampering is detected") {
    RationalBasisInput in;
    in.B = {{Rational(1, 2)}, {Rational(1, 3)}};
    in.b = {QuadExt(Rational(1))};
    LatticeDecomposition dec = decompose(in);
    REQUIRE(verify(dec, in));
    dec.A[0][0] -= 1;
    CHECK(!verify(dec, in));
}

TEST_CASE("invalid inputs are rejected") {
    RationalBasisInput in;
    in.B = {{Rational(1)}};
    in.b = {QuadExt(Rational(-1))};
    CHECK_THROWS_AS(in.validate(), std::invalid_argument);

    RationalBasisInput neg;
    neg.B = {{Rational(-1)}};
    neg.b = {QuadExt(Rational(1))};
    CHECK_THROWS_AS(neg.validate(), std::invalid_argument);  // eta must be positive
}

TEST_CASE("json input") {
    const std::string text = R"json({
        "field": "Q(sqrt2)",
        "B": [["1", "0"], ["0", "1"]],
        "b": [{"rat": "1"}, {"rat": "0", "irr": "1"}]
    })json";
    RationalBasisInput in = RationalBasisInput::from_json(text);
    CHECK(in.rows() == 2);
    CHECK(in.cols() == 2);
    CHECK(in.b[1].radicand() == 2);
    LatticeDecomposition dec = decompose(in);
    CHECK(verify(dec, in));
}

}
