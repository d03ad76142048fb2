#ifndef OPOT_FREQLATTICE_HPP
#define OPOT_FREQLATTICE_HPP

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "opot/polycore.hpp"

namespace opot {

using Rational = boost::multiprecision::cpp_rational;

/// Element a + b sqrt(k) of a real quadratic extension of the rationals.
/// k = 0 marks a plain rational. Arithmetic is exact; mixing two distinct
/// nonzero radicands throws.
class QuadExt {
public:
    QuadExt() = default;
    QuadExt(Rational rational_part) : a_(std::move(rational_part)) {}
    QuadExt(Rational a, Rational b, long long radicand);

    const Rational& rat() const { return a_; }
    const Rational& irr() const { return b_; }
    long long radicand() const { return k_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_positive() const;

    QuadExt operator+(const QuadExt& rhs) const;
    QuadExt operator-(const QuadExt& rhs) const;
    QuadExt operator*(const QuadExt& rhs) const;
    QuadExt scaled(const Rational& s) const;
    bool operator==(const QuadExt& rhs) const;

    double to_double() const;
    std::string str() const;

private:
    Rational a_ = 0;
    Rational b_ = 0;
    long long k_ = 0;

    static long long merge_radicand(const QuadExt& x, const QuadExt& y);
};

/// The pair (B, b) with eta = B b entrywise: B rational d x D, b a vector
/// of strictly positive field elements.
struct RationalBasisInput {
    std::vector<std::vector<Rational>> B;
    std::vector<QuadExt> b;

    int rows() const { return static_cast<int>(B.size()); }
    int cols() const { return B.empty() ? 0 : static_cast<int>(B.front().size()); }
    void validate() const;
    std::vector<QuadExt> eta() const;

    static RationalBasisInput from_json(const std::string& text);
    static RationalBasisInput load(const std::string& path);
};

struct LatticeCertificate {
    int approximant_index = -1;  // j in the construction; -1 for the integer fast path
    long long t = 0;
    int m = -1;
    BigInt s = 1;
};

/// eta = A q with A a non-negative integer matrix and q strictly positive.
struct LatticeDecomposition {
    std::vector<std::vector<BigInt>> A;
    std::vector<QuadExt> q;
    LatticeCertificate certificate;
};

/// Constructive decomposition: rational approximants of b give projections
/// P_j; the first pair (j, t) with B + t B P_j > 0 and (I - t/(1+t) P_j) b > 0
/// yields A = s B (I + t P_j) and q = s^-1 (I - t/(1+t) P_j) b after clearing
/// denominators with s. Inputs already in non-negative integers pass through.
LatticeDecomposition decompose(const RationalBasisInput& input);

/// True iff eta = A q exactly, A has non-negative integer entries, and
/// every q entry is strictly positive.
bool verify(const LatticeDecomposition& decomp, const RationalBasisInput& input);

/// Continued-fraction convergents of x (index 0 = floor). Convergents of
/// positive x are positive from index 1 on.
std::vector<Rational> rational_convergents(double x, int count);

}  // namespace opot

#endif  // OPOT_FREQLATTICE_HPP
