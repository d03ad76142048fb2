#include "opot/scattering.hpp"

#include <algorithm>
#include <stdexcept>

namespace opot {

MultiIndex trim_multi_index(MultiIndex alpha) {
    while (!alpha.empty() && alpha.back() == 0) alpha.pop_back();
    return alpha;
}

int multi_index_support_max(const MultiIndex& alpha) {
    for (int i = static_cast<int>(alpha.size()); i > 0; --i)
        if (alpha[i - 1] != 0) return i;
    return 0;
}

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    // one Pascal row at a time
    std::vector<BigInt> row(static_cast<size_t>(n) + 1, 0);
    row[0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = i; j >= 1; --j) row[j] += row[j - 1];
    return row[k];
}

HermitianPoly phi(int p, int q) {
    if (p < 0 || q < 0) throw std::invalid_argument("phi requires p, q >= 0");
    if (q == 0) return HermitianPoly::term(p, 0, 1);
    if (p == 0) return HermitianPoly{};  // p = 0 < q
    HermitianPoly out;
    int jmax = std::min(p, q);
    for (int j = 1; j <= jmax; ++j) {
        BigInt base = binomial(p, j) * binomial(q - 1, j - 1);
        if ((q - j) % 2 != 0) base = -base;  // sign of (-zbar)^(q-j)
        // expand (1 - z zbar)^j
        for (int i = 0; i <= j; ++i) {
            BigInt c = base * binomial(j, i);
            if (i % 2 != 0) c = -c;
            out.add_term(p - j + i, q - j + i, c);
        }
    }
    return out;
}

Cx phi_eval(int p, int q, Cx r) {
    if (p < 0 || q < 0) throw std::invalid_argument("phi_eval requires p, q >= 0");
    if (q == 0) {
        Cx acc{1.0, 0.0};
        for (int i = 0; i < p; ++i) acc *= r;
        return acc;
    }
    if (p == 0) return Cx{0.0, 0.0};
    Cx rb = std::conj(r);
    double one_minus = 1.0 - std::norm(r);
    Cx sum{0.0, 0.0};
    int jmax = std::min(p, q);
    for (int j = 1; j <= jmax; ++j) {
        double coef = static_cast<double>(binomial(p, j) * binomial(q - 1, j - 1));
        Cx t{coef, 0.0};
        for (int i = 0; i < p - j; ++i) t *= r;
        for (int i = 0; i < q - j; ++i) t *= -rb;
        for (int i = 0; i < j; ++i) t *= one_minus;
        sum += t;
    }
    return sum;
}

Cx weight(const MultiIndex& alpha, std::span<const Cx> r) {
    int n = multi_index_support_max(alpha);
    if (static_cast<int>(r.size()) < n + 1)
        throw std::invalid_argument("weight: need Schur parameters r_0..r_n for n = max supp alpha");
    auto at = [&](int j) { return j < static_cast<int>(alpha.size()) ? alpha[j] : 0; };
    Cx c = phi_eval(1, at(0), r[0]);
    for (int j = 1; j <= n; ++j) {
        if (c == Cx{0.0, 0.0}) return c;
        c *= phi_eval(at(j - 1), at(j), r[j]);
    }
    return c;
}

std::vector<MultiIndex> enumerate_indices(int n, int max_total_degree) {
    if (n < 0 || max_total_degree < 0)
        throw std::invalid_argument("enumerate_indices requires non-negative arguments");
    std::vector<MultiIndex> out;
    out.push_back({});  // the zero multi-index
    if (n == 0 || max_total_degree == 0) return out;

    // compositions (1, a_2, ..., a_k) with a_i >= 1, k <= n, total <= cap
    MultiIndex cur{1};
    auto extend = [&](auto&& self) -> void {
        out.push_back(cur);
        if (static_cast<int>(cur.size()) == n) return;
        int used = 0;
        for (int v : cur) used += v;
        for (int next = 1; used + next <= max_total_degree; ++next) {
            cur.push_back(next);
            self(self);
            cur.pop_back();
        }
    };
    extend(extend);
    std::sort(out.begin(), out.end());
    return out;
}

bool verify_eigen(int p, int q) {
    if (p < 0 || q < 0) throw std::invalid_argument("verify_eigen requires p, q >= 0");
    HermitianPoly f = phi(p, q);
    HermitianPoly lhs = hpoly_one_minus_zzbar_times(hpoly_dbar_d(f)) * BigInt(-1);
    HermitianPoly rhs = f * BigInt(static_cast<long long>(p) * q);
    return lhs == rhs;
}

}  // namespace opot
