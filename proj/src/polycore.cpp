#include "opot/polycore.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

namespace opot {

namespace {

void require_same_dim(int a, int b) {
    if (a != b) {
        throw std::invalid_argument("polynomial dimension mismatch: " + std::to_string(a) +
                                    " vs " + std::to_string(b));
    }
}

Cx pow_int(Cx z, int k) {
    // k >= 0; returns 1 for k == 0 even at z == 0
    Cx acc{1.0, 0.0};
    while (k > 0) {
        if (k & 1) acc *= z;
        z *= z;
        k >>= 1;
    }
    return acc;
}

}  // namespace

int Monomial::degree() const {
    return std::accumulate(e.begin(), e.end(), 0);
}

bool Monomial::dominates(const Monomial& other) const {
    if (e.size() != other.e.size()) return false;
    for (size_t i = 0; i < e.size(); ++i)
        if (other.e[i] > e[i]) return false;
    return true;
}

Monomial Monomial::plus(const Monomial& other) const {
    Monomial out = *this;
    for (size_t i = 0; i < e.size(); ++i) out.e[i] += other.e[i];
    return out;
}

Monomial Monomial::minus(const Monomial& other) const {
    Monomial out = *this;
    for (size_t i = 0; i < e.size(); ++i) out.e[i] -= other.e[i];
    return out;
}

TorusPoly::TorusPoly(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("TorusPoly dimension must be >= 1");
}

TorusPoly TorusPoly::constant(int dim, Cx c) {
    TorusPoly p(dim);
    p.add_term(Monomial(std::vector<int>(dim, 0)), c);
    return p;
}

TorusPoly TorusPoly::variable(int dim, int j) {
    if (j < 1 || j > dim) throw std::invalid_argument("variable index out of range");
    std::vector<int> e(dim, 0);
    e[j - 1] = 1;
    TorusPoly p(dim);
    p.add_term(Monomial(std::move(e)), Cx{1.0, 0.0});
    return p;
}

TorusPoly TorusPoly::monomial(int dim, const Monomial& m, Cx c) {
    if (m.dim() != dim) throw std::invalid_argument("monomial dimension mismatch");
    TorusPoly p(dim);
    p.add_term(m, c);
    return p;
}

Cx TorusPoly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Cx{0.0, 0.0} : it->second;
}

void TorusPoly::add_term(const Monomial& m, Cx c) {
    if (m.dim() != dim_) throw std::invalid_argument("term dimension mismatch");
    for (int v : m.e)
        if (v < 0) throw std::invalid_argument("negative exponent");
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) it->second += c;
    if (it->second == Cx{0.0, 0.0}) {
        terms_.erase(it);
        return;
    }
    // canonicalize signed zeros so serialization is stable
    if (it->second.real() == 0.0) it->second = Cx{0.0, it->second.imag()};
    if (it->second.imag() == 0.0) it->second = Cx{it->second.real(), 0.0};
}

int TorusPoly::total_degree() const {
    int deg = -1;
    for (const auto& [m, c] : terms_) deg = std::max(deg, m.degree());
    return deg;
}

Monomial TorusPoly::degree_vector() const {
    Monomial out(std::vector<int>(dim_, 0));
    for (const auto& [m, c] : terms_)
        for (int i = 0; i < dim_; ++i) out.e[i] = std::max(out.e[i], m.e[i]);
    return out;
}

Cx TorusPoly::eval(std::span<const Cx> z) const {
    if (static_cast<int>(z.size()) != dim_)
        throw std::invalid_argument("evaluation point dimension mismatch");
    Cx sum{0.0, 0.0};
    for (const auto& [m, c] : terms_) {
        Cx t = c;
        for (int i = 0; i < dim_; ++i)
            if (m.e[i] != 0) t *= pow_int(z[i], m.e[i]);
        sum += t;
    }
    return sum;
}

TorusPoly& TorusPoly::operator+=(const TorusPoly& rhs) {
    require_same_dim(dim_, rhs.dim_);
    for (const auto& [m, c] : rhs.terms_) add_term(m, c);
    return *this;
}

TorusPoly& TorusPoly::operator-=(const TorusPoly& rhs) {
    require_same_dim(dim_, rhs.dim_);
    for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
    return *this;
}

TorusPoly operator*(const TorusPoly& lhs, const TorusPoly& rhs) {
    require_same_dim(lhs.dim_, rhs.dim_);
    TorusPoly out(lhs.dim_);
    for (const auto& [ma, ca] : lhs.terms_)
        for (const auto& [mb, cb] : rhs.terms_) out.add_term(ma.plus(mb), ca * cb);
    return out;
}

TorusPoly& TorusPoly::operator*=(const TorusPoly& rhs) {
    *this = *this * rhs;
    return *this;
}

TorusPoly& TorusPoly::operator*=(Cx scalar) {
    if (scalar == Cx{0.0, 0.0}) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= scalar;
    return *this;
}

TorusPoly TorusPoly::operator-() const {
    TorusPoly out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

std::string TorusPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        char buf[80];
        std::snprintf(buf, sizeof(buf), "(%g%+gi)", c.real(), c.imag());
        os << buf;
        for (int i = 0; i < dim_; ++i) {
            if (m.e[i] == 0) continue;
            os << " z" << (i + 1);
            if (m.e[i] > 1) os << "^" << m.e[i];
        }
    }
    return os.str();
}

std::string TorusPoly::to_json() const {
    nlohmann::json j;
    j["dim"] = dim_;
    j["terms"] = nlohmann::json::array();
    for (const auto& [m, c] : terms_) {
        nlohmann::json t;
        t["e"] = m.e;
        t["re"] = c.real();
        t["im"] = c.imag();
        j["terms"].push_back(std::move(t));
    }
    return j.dump();
}

TorusPoly TorusPoly::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    TorusPoly p(j.at("dim").get<int>());
    for (const auto& t : j.at("terms")) {
        Monomial m(t.at("e").get<std::vector<int>>());
        p.add_term(m, Cx{t.at("re").get<double>(), t.at("im").get<double>()});
    }
    return p;
}

TorusPoly poly_add(const TorusPoly& p, const TorusPoly& q) { return p + q; }
TorusPoly poly_mul(const TorusPoly& p, const TorusPoly& q) { return p * q; }
Cx poly_eval(const TorusPoly& p, std::span<const Cx> z) { return p.eval(z); }

TorusPoly poly_star(const TorusPoly& p, const Monomial& multidegree) {
    if (multidegree.dim() != p.dim())
        throw std::invalid_argument("multidegree dimension mismatch");
    if (!multidegree.dominates(p.degree_vector()))
        throw std::invalid_argument("multidegree does not dominate the polynomial degree");
    TorusPoly out(p.dim());
    for (const auto& [m, c] : p.terms()) out.add_term(multidegree.minus(m), std::conj(c));
    return out;
}

TorusPoly truncate_total_degree(const TorusPoly& p, int max_degree) {
    TorusPoly out(p.dim());
    for (const auto& [m, c] : p.terms())
        if (m.degree() <= max_degree) out.add_term(m, c);
    return out;
}

double max_coeff_diff(const TorusPoly& p, const TorusPoly& q) {
    if (p.dim() != q.dim())
        throw std::invalid_argument("dimension mismatch");
    double worst = 0.0;
    for (const auto& [m, c] : p.terms()) worst = std::max(worst, std::abs(c - q.coeff(m)));
    for (const auto& [m, c] : q.terms()) worst = std::max(worst, std::abs(c - p.coeff(m)));
    return worst;
}

HermitianPoly HermitianPoly::constant(BigInt c) {
    HermitianPoly p;
    p.add_term(0, 0, c);
    return p;
}

HermitianPoly HermitianPoly::term(int a, int b, BigInt c) {
    HermitianPoly p;
    p.add_term(a, b, c);
    return p;
}

BigInt HermitianPoly::coeff(int a, int b) const {
    auto it = terms_.find({a, b});
    return it == terms_.end() ? BigInt(0) : it->second;
}

void HermitianPoly::add_term(int a, int b, const BigInt& c) {
    if (a < 0 || b < 0) throw std::invalid_argument("negative exponent");
    auto [it, inserted] = terms_.try_emplace({a, b}, c);
    if (!inserted) it->second += c;
    if (it->second == 0) terms_.erase(it);
}

HermitianPoly& HermitianPoly::operator+=(const HermitianPoly& rhs) {
    for (const auto& [k, c] : rhs.terms_) add_term(k.first, k.second, c);
    return *this;
}

HermitianPoly& HermitianPoly::operator-=(const HermitianPoly& rhs) {
    for (const auto& [k, c] : rhs.terms_) add_term(k.first, k.second, -c);
    return *this;
}

HermitianPoly HermitianPoly::operator*(const HermitianPoly& rhs) const {
    HermitianPoly out;
    for (const auto& [ka, ca] : terms_)
        for (const auto& [kb, cb] : rhs.terms_)
            out.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return out;
}

HermitianPoly HermitianPoly::operator*(const BigInt& scalar) const {
    HermitianPoly out;
    if (scalar == 0) return out;
    for (const auto& [k, c] : terms_) out.add_term(k.first, k.second, c * scalar);
    return out;
}

Cx HermitianPoly::eval(Cx z) const {
    Cx zb = std::conj(z);
    Cx sum{0.0, 0.0};
    for (const auto& [k, c] : terms_) {
        Cx t{static_cast<double>(c), 0.0};
        t *= pow_int(z, k.first);
        t *= pow_int(zb, k.second);
        sum += t;
    }
    return sum;
}

std::string HermitianPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << (c >= 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        BigInt mag = c >= 0 ? c : BigInt(-c);
        bool has_vars = k.first > 0 || k.second > 0;
        if (mag != 1 || !has_vars) os << mag.str();
        if (k.first > 0) {
            os << (mag != 1 ? "*" : "") << "z";
            if (k.first > 1) os << "^" << k.first;
        }
        if (k.second > 0) {
            os << (k.first > 0 || mag != 1 ? "*" : "") << "zb";
            if (k.second > 1) os << "^" << k.second;
        }
    }
    return os.str();
}

HermitianPoly hpoly_dbar_d(const HermitianPoly& p) {
    HermitianPoly out;
    for (const auto& [k, c] : p.terms()) {
        if (k.first < 1 || k.second < 1) continue;
        out.add_term(k.first - 1, k.second - 1, c * k.first * k.second);
    }
    return out;
}

HermitianPoly hpoly_one_minus_zzbar_times(const HermitianPoly& p) {
    HermitianPoly out = p;
    for (const auto& [k, c] : p.terms()) out.add_term(k.first + 1, k.second + 1, -c);
    return out;
}

}  // namespace opot
