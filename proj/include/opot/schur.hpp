#ifndef OPOT_SCHUR_HPP
#define OPOT_SCHUR_HPP

#include <map>
#include <span>
#include <string>
#include <vector>

#include "opot/polycore.hpp"

namespace opot {

/// Schur parameters r_0..r_m (r_0 = 0, all |r_j| < 1) together with the
/// variable allocation nu_1..nu_m, each in {1..d}.
struct SchurData {
    int dim = 1;
    std::vector<Cx> r;
    std::vector<int> nu;  // 1-based variable indices

    int top_level() const { return static_cast<int>(r.size()) - 1; }
    void validate() const;

    std::string to_json() const;
    static SchurData from_json(const std::string& text);
    static SchurData load(const std::string& path);
};

/// The four polynomial entries of P_n = M_0 ... M_n.
struct PolyQuad {
    int level = 0;
    TorusPoly psi, psi_star, phi, phi_star;
};

/// Map kappa from source variables {1..d} to nonzero multi-indices in the
/// target dimension D.
struct MonomialSubstitution {
    int target_dim = 1;
    std::vector<Monomial> kappa;  // kappa[j-1] is the image of variable j
};

/// Quads for levels 0..m via the recurrence P_{n+1} = P_n M_{n+1}.
std::vector<PolyQuad> build_quads(const SchurData& data);

/// 2x2 complex matrix helper for pointwise products M_0(z) ... M_n(z).
struct Mat2 {
    Cx a, b, c, d;  // rows (a b; c d)
    Mat2 operator*(const Mat2& rhs) const {
        return {a * rhs.a + b * rhs.c, a * rhs.b + b * rhs.d,
                c * rhs.a + d * rhs.c, c * rhs.b + d * rhs.d};
    }
};

/// Numeric P_n(z) = M_0(z) ... M_n(z); entries (psi, psi*; -phi, phi*).
Mat2 eval_transfer(const SchurData& data, int n, std::span<const Cx> z);

/// f_n(z) = (psi*_n - phi*_n) / (psi*_n + phi*_n).
Cx eval_convergent(const SchurData& data, int n, std::span<const Cx> z);

/// Fractional part k_n(z): projective action of M_{n+1} ... M_m on (0,1)^t.
Cx eval_tail(const SchurData& data, int n, std::span<const Cx> z);

/// g_n(z) = 2 prod_j sqrt(1-|r_j|^2) / (psi*_n + phi*_n).
Cx eval_g(const SchurData& data, int n, std::span<const Cx> z);

/// Taylor coefficients of the top convergent through the scattering-weight
/// sum: each admissible alpha contributes c_alpha(r) at the monomial
/// z_{nu_1}^{a_1} ... z_{nu_n}^{a_n}; coefficients of coinciding monomials add.
std::map<Monomial, Cx> taylor_from_weights(const SchurData& data, int max_degree);

/// Taylor coefficients by multivariate power-series division of
/// (psi* - phi*) by (psi* + phi*), truncated at total degree max_degree.
std::map<Monomial, Cx> taylor_from_rational(const PolyQuad& quad, int max_degree);

/// Univariate continued-fraction parameter extraction. Coefficients are
/// ascending; h = num/den must map the closed disk into itself with
/// den(0) != 0. Stops after max_steps or when the remainder vanishes.
/// Throws if some |r_n| >= 1 - 1e-12 (not a strict Schur function there).
std::vector<Cx> schur_algorithm_1d(std::vector<Cx> numerator, std::vector<Cx> denominator,
                                   int max_steps = 64);

/// Expand data so the new convergents satisfy f~_n(z) = f_n(z^kappa):
/// step j becomes |kappa(nu_j)| steps with parameters (0,..,0,r_j) and
/// allocation enumerating kappa(nu_j) by ascending variable index.
SchurData substitute(const SchurData& data, const MonomialSubstitution& sub);

/// Dense ascending coefficients of a univariate (d = 1) TorusPoly.
std::vector<Cx> to_univariate(const TorusPoly& p);

}  // namespace opot

#endif  // OPOT_SCHUR_HPP
