#include "opot/freqlattice.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace opot {

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

BigInt lcm_big(const BigInt& a, const BigInt& b) {
    if (a == 0 || b == 0) return 0;
    return a / boost::multiprecision::gcd(a, b) * b;
}

bool is_nonneg_integer(const Rational& r) { return denominator(r) == 1 && numerator(r) >= 0; }

long long parse_radicand(const std::string& field) {
    // accepted forms: "Q", "Q(sqrtN)"
    if (field == "Q") return 0;
    const std::string prefix = "Q(sqrt";
    if (field.rfind(prefix, 0) == 0 && field.back() == ')') {
        std::string num = field.substr(prefix.size(), field.size() - prefix.size() - 1);
        return std::stoll(num);
    }
    throw std::invalid_argument("unrecognized field declaration: " + field);
}

}  // namespace

QuadExt::QuadExt(Rational a, Rational b, long long radicand)
    : a_(std::move(a)), b_(std::move(b)), k_(radicand) {
    if (k_ < 0) throw std::invalid_argument("QuadExt radicand must be non-negative");
    if (b_ == 0) k_ = 0;
    if (b_ != 0 && k_ == 0) throw std::invalid_argument("QuadExt irrational part needs a radicand");
}

long long QuadExt::merge_radicand(const QuadExt& x, const QuadExt& y) {
    if (x.k_ == 0) return y.k_;
    if (y.k_ == 0 || x.k_ == y.k_) return x.k_;
    throw std::invalid_argument("QuadExt radicand mismatch");
}

bool QuadExt::is_positive() const {
    if (b_ == 0) return a_ > 0;
    if (a_ >= 0 && b_ > 0) return true;
    if (a_ <= 0 && b_ < 0) return false;
    // opposite signs: compare a^2 with b^2 k
    Rational lhs = a_ * a_;
    Rational rhs = b_ * b_ * k_;
    return b_ > 0 ? rhs > lhs : lhs > rhs;
}

QuadExt QuadExt::operator+(const QuadExt& rhs) const {
    long long k = merge_radicand(*this, rhs);
    Rational b = b_ + rhs.b_;
    return b == 0 ? QuadExt(a_ + rhs.a_) : QuadExt(a_ + rhs.a_, b, k);
}

QuadExt QuadExt::operator-(const QuadExt& rhs) const {
    long long k = merge_radicand(*this, rhs);
    Rational b = b_ - rhs.b_;
    return b == 0 ? QuadExt(a_ - rhs.a_) : QuadExt(a_ - rhs.a_, b, k);
}

QuadExt QuadExt::operator*(const QuadExt& rhs) const {
    long long k = merge_radicand(*this, rhs);
    Rational a = a_ * rhs.a_ + b_ * rhs.b_ * k;
    Rational b = a_ * rhs.b_ + b_ * rhs.a_;
    return b == 0 ? QuadExt(a) : QuadExt(a, b, k);
}

QuadExt QuadExt::scaled(const Rational& s) const {
    if (s == 0 || b_ == 0) return QuadExt(a_ * s);
    return QuadExt(a_ * s, b_ * s, k_);
}

bool QuadExt::operator==(const QuadExt& rhs) const {
    return a_ == rhs.a_ && b_ == rhs.b_ && (b_ == 0 || k_ == rhs.k_);
}

double QuadExt::to_double() const {
    double v = a_.convert_to<double>();
    if (b_ != 0) v += b_.convert_to<double>() * std::sqrt(static_cast<double>(k_));
    return v;
}

std::string QuadExt::str() const {
    std::ostringstream os;
    if (b_ == 0) {
        os << a_;
    } else {
        if (a_ != 0) os << a_ << (b_ > 0 ? " + " : " - ");
        else if (b_ < 0) os << "-";
        Rational mag = b_ > 0 ? b_ : Rational(-b_);
        if (mag != 1) os << mag << "*";
        os << "sqrt(" << k_ << ")";
    }
    return os.str();
}

void RationalBasisInput::validate() const {
    if (B.empty() || B.front().empty()) throw std::invalid_argument("B must be a nonempty matrix");
    for (const auto& row : B)
        if (static_cast<int>(row.size()) != cols())
            throw std::invalid_argument("B rows must have equal length");
    if (static_cast<int>(b.size()) != cols())
        throw std::invalid_argument("b length must match the column count of B");
    for (const QuadExt& v : b)
        if (!v.is_positive()) throw std::invalid_argument("b entries must be strictly positive");
    for (const QuadExt& v : eta())
        if (!v.is_positive()) throw std::invalid_argument("eta = B b must be strictly positive");
}

std::vector<QuadExt> RationalBasisInput::eta() const {
    std::vector<QuadExt> out(static_cast<size_t>(rows()));
    for (int i = 0; i < rows(); ++i) {
        QuadExt sum;
        for (int j = 0; j < cols(); ++j) sum = sum + b[static_cast<size_t>(j)].scaled(B[static_cast<size_t>(i)][static_cast<size_t>(j)]);
        out[static_cast<size_t>(i)] = sum;
    }
    return out;
}

RationalBasisInput RationalBasisInput::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    long long k = parse_radicand(j.value("field", "Q"));
    RationalBasisInput input;
    for (const auto& row : j.at("B")) {
        std::vector<Rational> r;
        for (const auto& entry : row) r.emplace_back(entry.get<std::string>());
        input.B.push_back(std::move(r));
    }
    for (const auto& entry : j.at("b")) {
        Rational rat(entry.at("rat").get<std::string>());
        Rational irr(entry.value("irr", std::string("0")));
        input.b.push_back(irr == 0 ? QuadExt(rat) : QuadExt(rat, irr, k));
    }
    input.validate();
    return input;
}

RationalBasisInput RationalBasisInput::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

std::vector<Rational> rational_convergents(double x, int count) {
    if (!(x > 0.0)) throw std::invalid_argument("rational_convergents requires x > 0");
    std::vector<Rational> out;
    BigInt h0 = 0, h1 = 1, k0 = 1, k1 = 0;  // (h1,k1) seeds p_{-1}/q_{-1}
    double frac = x;
    for (int i = 0; i < count; ++i) {
        double fl = std::floor(frac);
        if (fl > 9.0e17) break;  // coefficient no longer representable
        BigInt ai = static_cast<long long>(fl);
        BigInt h = ai * h1 + h0;
        BigInt k = ai * k1 + k0;
        out.emplace_back(h, k);
        h0 = h1; h1 = h; k0 = k1; k1 = k;
        double rem = frac - fl;
        if (rem < 1e-15) break;  // x is (numerically) rational, convergent is exact
        frac = 1.0 / rem;
    }
    return out;
}

LatticeDecomposition decompose(const RationalBasisInput& input) {
    input.validate();
    const int d = input.rows();
    const int D = input.cols();

    // already a non-negative integer matrix: nothing to construct
    bool integral = true;
    for (const auto& row : input.B)
        for (const Rational& v : row) integral = integral && is_nonneg_integer(v);
    if (integral) {
        LatticeDecomposition out;
        out.A.assign(static_cast<size_t>(d), std::vector<BigInt>(static_cast<size_t>(D)));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < D; ++j)
                out.A[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    numerator(input.B[static_cast<size_t>(i)][static_cast<size_t>(j)]);
        out.q = input.b;
        out.certificate = LatticeCertificate{};
        return out;
    }

    constexpr int kMaxApproximant = 24;
    constexpr long long kMaxT = 1LL << 20;

    // per-entry continued-fraction convergents of the floating image of b
    std::vector<std::vector<Rational>> convergents(static_cast<size_t>(D));
    for (int j = 0; j < D; ++j)
        convergents[static_cast<size_t>(j)] =
            rational_convergents(input.b[static_cast<size_t>(j)].to_double(), kMaxApproximant + 2);

    int best_j = -1;
    long long best_t = 0;
    for (int j = 1; j <= kMaxApproximant; ++j) {
        // approximant vector q^(j), clamped to the last convergent available
        std::vector<Rational> qj(static_cast<size_t>(D));
        bool positive = true;
        for (int i = 0; i < D; ++i) {
            const auto& conv = convergents[static_cast<size_t>(i)];
            qj[static_cast<size_t>(i)] = conv[std::min<size_t>(static_cast<size_t>(j), conv.size() - 1)];
            positive = positive && qj[static_cast<size_t>(i)] > 0;
        }
        if (!positive) continue;

        Rational dot = 0;
        for (const Rational& v : qj) dot += v * v;

        // P = q q^t / <q,q>;  BP[i][c] = (B_i . q) q_c / <q,q>
        std::vector<Rational> Bq(static_cast<size_t>(d), 0);
        for (int i = 0; i < d; ++i)
            for (int c = 0; c < D; ++c)
                Bq[static_cast<size_t>(i)] += input.B[static_cast<size_t>(i)][static_cast<size_t>(c)] * qj[static_cast<size_t>(c)];

        for (long long t = 1; t <= kMaxT; t *= 2) {
            best_j = j;
            best_t = t;

            // M = B + t B P
            std::vector<std::vector<Rational>> M(static_cast<size_t>(d),
                                                 std::vector<Rational>(static_cast<size_t>(D)));
            bool m_positive = true;
            for (int i = 0; i < d && m_positive; ++i)
                for (int c = 0; c < D; ++c) {
                    M[static_cast<size_t>(i)][static_cast<size_t>(c)] =
                        input.B[static_cast<size_t>(i)][static_cast<size_t>(c)] +
                        Rational(t) * Bq[static_cast<size_t>(i)] * qj[static_cast<size_t>(c)] / dot;
                    if (!(M[static_cast<size_t>(i)][static_cast<size_t>(c)] > 0)) {
                        m_positive = false;
                        break;
                    }
                }
            if (!m_positive) continue;

            // qvec = (I - t/(1+t) P) b
            Rational shrink = Rational(t) / Rational(t + 1);
            QuadExt qj_dot_b;
            for (int c = 0; c < D; ++c)
                qj_dot_b = qj_dot_b + input.b[static_cast<size_t>(c)].scaled(qj[static_cast<size_t>(c)]);
            std::vector<QuadExt> qvec(static_cast<size_t>(D));
            bool q_positive = true;
            for (int c = 0; c < D; ++c) {
                QuadExt correction = qj_dot_b.scaled(shrink * qj[static_cast<size_t>(c)] / dot);
                qvec[static_cast<size_t>(c)] = input.b[static_cast<size_t>(c)] - correction;
                q_positive = q_positive && qvec[static_cast<size_t>(c)].is_positive();
            }
            if (!q_positive) continue;

            // clear denominators: A = s M integer, q = qvec / s
            BigInt s = 1;
            for (const auto& row : M)
                for (const Rational& v : row) s = lcm_big(s, denominator(v));
            LatticeDecomposition out;
            out.A.assign(static_cast<size_t>(d), std::vector<BigInt>(static_cast<size_t>(D)));
            for (int i = 0; i < d; ++i)
                for (int c = 0; c < D; ++c) {
                    Rational scaled = M[static_cast<size_t>(i)][static_cast<size_t>(c)] * s;
                    out.A[static_cast<size_t>(i)][static_cast<size_t>(c)] = numerator(scaled);
                }
            out.q.resize(static_cast<size_t>(D));
            for (int c = 0; c < D; ++c)
                out.q[static_cast<size_t>(c)] = qvec[static_cast<size_t>(c)].scaled(Rational(1, s));
            out.certificate = LatticeCertificate{j, t, j, s};
            if (!verify(out, input))
                throw std::logic_error("lattice decomposition failed its own exactness check");
            return out;
        }
    }
    throw std::runtime_error("lattice decomposition: positivity not reached (best j = " +
                             std::to_string(best_j) + ", t = " + std::to_string(best_t) + ")");
}

bool verify(const LatticeDecomposition& decomp, const RationalBasisInput& input) {
    const int d = input.rows();
    const int D = input.cols();
    if (static_cast<int>(decomp.A.size()) != d || static_cast<int>(decomp.q.size()) != D) return false;
    for (const auto& row : decomp.A) {
        if (static_cast<int>(row.size()) != D) return false;
        for (const BigInt& v : row)
            if (v < 0) return false;
    }
    for (const QuadExt& v : decomp.q)
        if (!v.is_positive()) return false;

    const std::vector<QuadExt> eta = input.eta();
    for (int i = 0; i < d; ++i) {
        QuadExt sum;
        for (int c = 0; c < D; ++c)
            sum = sum + decomp.q[static_cast<size_t>(c)].scaled(
                            Rational(decomp.A[static_cast<size_t>(i)][static_cast<size_t>(c)]));
        if (!(sum == eta[static_cast<size_t>(i)])) return false;
    }
    return true;
}

}  // namespace opot
