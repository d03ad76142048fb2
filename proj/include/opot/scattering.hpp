#ifndef OPOT_SCATTERING_HPP
#define OPOT_SCATTERING_HPP

#include <span>
#include <vector>

#include "opot/polycore.hpp"

namespace opot {

/// Multi-index alpha_1..alpha_n, implicitly zero beyond the stored entries.
/// Canonical form has no trailing zeros; the zero multi-index is empty.
using MultiIndex = std::vector<int>;

MultiIndex trim_multi_index(MultiIndex alpha);
int multi_index_support_max(const MultiIndex& alpha);

/// Exact binomial coefficient via Pascal recursion.
BigInt binomial(int n, int k);

/// The (z, zbar) polynomial phi^(p,q):
///   z^p when q = 0, the zero polynomial when p = 0 < q, and otherwise
///   sum_{j=1}^{min(p,q)} C(p,j) C(q-1,j-1) z^(p-j) (-zbar)^(q-j) (1-z zbar)^j.
HermitianPoly phi(int p, int q);

/// Value of phi^(p,q) at z = r (with zbar = conj r), computed directly
/// from the closed-form sum in double arithmetic.
Cx phi_eval(int p, int q, Cx r);

/// Scattering weight c_alpha(r) = phi^(1,a1)(r_0) prod_j phi^(aj,aj+1)(r_j),
/// with the index beyond the support treated as zero. Requires entries
/// r_0..r_n where n = max supp alpha.
Cx weight(const MultiIndex& alpha, std::span<const Cx> r);

/// All alpha supported in {1..n} with |alpha| <= max_total_degree that can
/// carry nonzero weight for standard data (r_0 = 0): the zero multi-index
/// plus the indices with contiguous support {1..k} and alpha_1 = 1.
/// Lexicographic order.
std::vector<MultiIndex> enumerate_indices(int n, int max_total_degree);

/// True iff -(1 - z zbar) d^2/(dzbar dz) phi^(p,q) == p q phi^(p,q)
/// exactly in integer arithmetic.
bool verify_eigen(int p, int q);

}  // namespace opot

#endif  // OPOT_SCATTERING_HPP
