#ifndef OPOT_POLYCORE_HPP
#define OPOT_POLYCORE_HPP

#include <complex>
#include <compare>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace opot {

using Cx = std::complex<double>;
using BigInt = boost::multiprecision::cpp_int;

/// Exponent vector of a monomial in d commuting variables.
struct Monomial {
    std::vector<int> e;

    Monomial() = default;
    explicit Monomial(std::vector<int> exps) : e(std::move(exps)) {}
    Monomial(std::initializer_list<int> exps) : e(exps) {}

    int dim() const { return static_cast<int>(e.size()); }
    int degree() const;

    /// True if every exponent of `other` is <= the matching exponent here.
    bool dominates(const Monomial& other) const;

    Monomial plus(const Monomial& other) const;
    Monomial minus(const Monomial& other) const;

    auto operator<=>(const Monomial&) const = default;
};

/// Sparse polynomial in d complex variables with complex coefficients.
///
/// Terms are kept in canonical form: lexicographic order on exponent
/// vectors, no exactly-zero coefficients stored. Two polynomials are
/// equal iff their canonical term maps are equal.
class TorusPoly {
public:
    using TermMap = std::map<Monomial, Cx>;

    TorusPoly() = default;  // the zero polynomial in one variable
    explicit TorusPoly(int dim);

    static TorusPoly constant(int dim, Cx c);
    static TorusPoly variable(int dim, int j);  // z_j, 1-based
    static TorusPoly monomial(int dim, const Monomial& m, Cx c);

    int dim() const { return dim_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Cx coeff(const Monomial& m) const;
    void add_term(const Monomial& m, Cx c);

    int total_degree() const;          // max |e| over stored terms; -1 if zero
    Monomial degree_vector() const;    // per-variable max exponent

    Cx eval(std::span<const Cx> z) const;

    TorusPoly& operator+=(const TorusPoly& rhs);
    TorusPoly& operator-=(const TorusPoly& rhs);
    TorusPoly& operator*=(const TorusPoly& rhs);
    TorusPoly& operator*=(Cx scalar);
    TorusPoly operator-() const;

    friend TorusPoly operator+(TorusPoly lhs, const TorusPoly& rhs) { return lhs += rhs; }
    friend TorusPoly operator-(TorusPoly lhs, const TorusPoly& rhs) { return lhs -= rhs; }
    friend TorusPoly operator*(const TorusPoly& lhs, const TorusPoly& rhs);
    friend TorusPoly operator*(Cx scalar, TorusPoly p) { return p *= scalar; }

    bool operator==(const TorusPoly&) const = default;

    std::string to_string() const;
    std::string to_json() const;
    static TorusPoly from_json(const std::string& text);

private:
    int dim_ = 1;
    TermMap terms_;
};

TorusPoly poly_add(const TorusPoly& p, const TorusPoly& q);
TorusPoly poly_mul(const TorusPoly& p, const TorusPoly& q);
Cx poly_eval(const TorusPoly& p, std::span<const Cx> z);

/// Conjugate-reciprocal partner: coefficient at exponent e becomes the
/// conjugate of p's coefficient at multidegree - e. Requires multidegree
/// to dominate the degree of p in every variable.
TorusPoly poly_star(const TorusPoly& p, const Monomial& multidegree);

/// Drop every term of total degree > max_degree.
TorusPoly truncate_total_degree(const TorusPoly& p, int max_degree);

/// Largest coefficient-wise |difference| between two polynomials.
double max_coeff_diff(const TorusPoly& p, const TorusPoly& q);

/// Polynomial in the pair (z, zbar) with exact integer coefficients.
class HermitianPoly {
public:
    using Key = std::pair<int, int>;  // (power of z, power of zbar)
    using TermMap = std::map<Key, BigInt>;

    HermitianPoly() = default;

    static HermitianPoly constant(BigInt c);
    static HermitianPoly term(int a, int b, BigInt c);

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    BigInt coeff(int a, int b) const;
    void add_term(int a, int b, const BigInt& c);

    HermitianPoly& operator+=(const HermitianPoly& rhs);
    HermitianPoly& operator-=(const HermitianPoly& rhs);
    HermitianPoly operator*(const HermitianPoly& rhs) const;
    HermitianPoly operator*(const BigInt& scalar) const;
    friend HermitianPoly operator+(HermitianPoly lhs, const HermitianPoly& rhs) { return lhs += rhs; }
    friend HermitianPoly operator-(HermitianPoly lhs, const HermitianPoly& rhs) { return lhs -= rhs; }

    bool operator==(const HermitianPoly&) const = default;

    /// Value at (z, conj z); the z^0 = 1 convention holds at z = 0.
    Cx eval(Cx z) const;

    std::string to_string() const;

private:
    TermMap terms_;
};

/// Formal mixed second derivative d^2/(dzbar dz), exact in integer
/// arithmetic. The full Laplace-Beltrami image is -(1-z zbar) times this.
HermitianPoly hpoly_dbar_d(const HermitianPoly& p);

/// Multiply by (1 - z zbar).
HermitianPoly hpoly_one_minus_zzbar_times(const HermitianPoly& p);

}  // namespace opot

#endif  // OPOT_POLYCORE_HPP
