#include "ktq/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "ktq/qmatrix.hpp"

namespace ktq {

long euler_phi(long n) {
    if (n <= 0) throw InvalidInput("euler_phi requires n >= 1");
    long result = n;
    long m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

std::vector<long> divisors(long n) {
    std::vector<long> ds;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            ds.push_back(d);
            if (d != n / d) ds.push_back(n / d);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

namespace {

// Little-endian exact polynomial division over Z; requires divisor monic-ish
// (leading coefficient dividing everything it meets, true for cyclotomics).
std::vector<Integer> poly_div_exact(std::vector<Integer> num, const std::vector<Integer>& den) {
    if (den.empty() || den.back() == 0) throw InternalError("poly_div_exact: bad divisor");
    if (num.size() < den.size()) throw InternalError("poly_div_exact: degree underflow");
    std::vector<Integer> quot(num.size() - den.size() + 1, Integer(0));
    for (long k = static_cast<long>(quot.size()) - 1; k >= 0; --k) {
        Integer top = num[k + den.size() - 1];
        if (top % den.back() != 0) throw InternalError("poly_div_exact: inexact division");
        Integer q = top / den.back();
        quot[k] = q;
        for (std::size_t i = 0; i < den.size(); ++i) num[k + i] -= q * den[i];
    }
    for (const auto& c : num)
        if (c != 0) throw InternalError("poly_div_exact: nonzero remainder");
    return quot;
}

struct LevelContext {
    long n = 1;
    long phi = 1;
    std::vector<Integer> poly;                   // Phi_n, little-endian, monic
    std::vector<std::vector<Rational>> power;    // power[k] = zeta^k in the power basis
};

const LevelContext& level_context(long n);

std::vector<Integer> cyclotomic_polynomial_uncached(long n) {
    // x^n - 1 divided by Phi_d for all proper divisors d.
    std::vector<Integer> num(n + 1, Integer(0));
    num[0] = -1;
    num[n] = 1;
    for (long d : divisors(n)) {
        if (d == n) continue;
        num = poly_div_exact(std::move(num), cyclotomic_polynomial(d));
    }
    return num;
}

LevelContext make_context(long n) {
    LevelContext ctx;
    ctx.n = n;
    ctx.phi = euler_phi(n);
    ctx.poly = cyclotomic_polynomial(n);
    // zeta^phi = -(low-order part of Phi_n); extend iteratively far enough to
    // cover products of reduced elements (2*phi-2) and lifts (up to n).
    long maxexp = std::max(2 * ctx.phi - 2, n - 1);
    ctx.power.resize(maxexp + 1, std::vector<Rational>(ctx.phi, Rational(0)));
    for (long k = 0; k <= std::min<long>(ctx.phi - 1, maxexp); ++k) ctx.power[k][k] = 1;
    for (long k = ctx.phi; k <= maxexp; ++k) {
        const auto& prev = ctx.power[k - 1];
        auto& cur = ctx.power[k];
        Rational top = prev[ctx.phi - 1];
        for (long i = ctx.phi - 1; i >= 1; --i) cur[i] = prev[i - 1];
        cur[0] = 0;
        if (top != 0) {
            for (long i = 0; i < ctx.phi; ++i) cur[i] -= top * Rational(ctx.poly[i]);
        }
    }
    return ctx;
}

const LevelContext& level_context(long n) {
    static std::map<long, LevelContext> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_context(n)).first;
    return it->second;
}

}  // namespace

std::vector<Integer> cyclotomic_polynomial(long n) {
    if (n <= 0) throw InvalidInput("cyclotomic_polynomial requires n >= 1");
    static std::map<long, std::vector<Integer>> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    auto poly = cyclotomic_polynomial_uncached(n);
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(n, poly);
    return poly;
}

Cyclotomic Cyclotomic::root_of_unity(long n, long k) {
    if (n <= 0) throw InvalidInput("root_of_unity requires n >= 1");
    k %= n;
    if (k < 0) k += n;
    const auto& ctx = level_context(n);
    return Cyclotomic(n, ctx.power[k]);
}

bool Cyclotomic::is_zero() const {
    return std::all_of(coeff_.begin(), coeff_.end(), [](const Rational& c) { return c == 0; });
}

bool Cyclotomic::is_rational() const {
    for (std::size_t i = 1; i < coeff_.size(); ++i)
        if (coeff_[i] != 0) return false;
    return true;
}

Rational Cyclotomic::to_rational() const {
    if (!is_rational()) throw InternalError("cyclotomic value is not rational: " + to_string());
    return coeff_[0];
}

Cyclotomic Cyclotomic::lifted(long m) const {
    if (m == level_) return *this;
    if (m <= 0 || m % level_ != 0)
        throw InternalError("cyclotomic lift target must be a positive multiple of the level");
    const auto& ctx = level_context(m);
    long stride = m / level_;
    std::vector<Rational> out(ctx.phi, Rational(0));
    for (std::size_t i = 0; i < coeff_.size(); ++i) {
        if (coeff_[i] == 0) continue;
        const auto& pw = ctx.power[static_cast<long>(i) * stride];
        for (long j = 0; j < ctx.phi; ++j) out[j] += coeff_[i] * pw[j];
    }
    return Cyclotomic(m, std::move(out));
}

Cyclotomic Cyclotomic::conj() const {
    const auto& ctx = level_context(level_);
    std::vector<Rational> out(ctx.phi, Rational(0));
    out[0] = coeff_[0];
    for (std::size_t i = 1; i < coeff_.size(); ++i) {
        if (coeff_[i] == 0) continue;
        const auto& pw = ctx.power[level_ - static_cast<long>(i)];
        for (long j = 0; j < ctx.phi; ++j) out[j] += coeff_[i] * pw[j];
    }
    return Cyclotomic(level_, std::move(out));
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) throw InternalError("cyclotomic inverse of zero");
    long phi = static_cast<long>(coeff_.size());
    // Solve (multiplication-by-this) x = 1 in the power basis.
    QMatrix m(phi, phi);
    for (long j = 0; j < phi; ++j) {
        Cyclotomic col = *this * root_of_unity(level_, j);
        for (long i = 0; i < phi; ++i) m.at(i, j) = col.coeff_[i];
    }
    std::vector<Rational> one(phi, Rational(0));
    one[0] = 1;
    auto sol = solve_consistent(m, one);
    if (!sol) throw InternalError("cyclotomic inverse: singular multiplication map");
    return Cyclotomic(level_, std::move(*sol));
}

Cyclotomic Cyclotomic::operator-() const {
    std::vector<Rational> out = coeff_;
    for (auto& c : out) c = -c;
    return Cyclotomic(level_, std::move(out));
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    long m = std::lcm(level_, o.level_);
    Cyclotomic a = lifted(m), b = o.lifted(m);
    for (std::size_t i = 0; i < a.coeff_.size(); ++i) a.coeff_[i] += b.coeff_[i];
    return a;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    long m = std::lcm(level_, o.level_);
    Cyclotomic a = lifted(m), b = o.lifted(m);
    const auto& ctx = level_context(m);
    long phi = ctx.phi;
    std::vector<Rational> conv(2 * phi - 1, Rational(0));
    for (long i = 0; i < phi; ++i) {
        if (a.coeff_[i] == 0) continue;
        for (long j = 0; j < phi; ++j) {
            if (b.coeff_[j] == 0) continue;
            conv[i + j] += a.coeff_[i] * b.coeff_[j];
        }
    }
    std::vector<Rational> out(phi, Rational(0));
    for (long k = 0; k < static_cast<long>(conv.size()); ++k) {
        if (conv[k] == 0) continue;
        if (k < phi) {
            out[k] += conv[k];
        } else {
            const auto& pw = ctx.power[k];
            for (long j = 0; j < phi; ++j) out[j] += conv[k] * pw[j];
        }
    }
    return Cyclotomic(m, std::move(out));
}

Cyclotomic Cyclotomic::operator*(const Rational& s) const {
    std::vector<Rational> out = coeff_;
    for (auto& c : out) c *= s;
    return Cyclotomic(level_, std::move(out));
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
    long m = std::lcm(level_, o.level_);
    return lifted(m).coeff_ == o.lifted(m).coeff_;
}

std::string Cyclotomic::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < coeff_.size(); ++i) {
        if (i) os << ",";
        os << rational_to_string(coeff_[i]);
    }
    os << "]@" << level_;
    return os.str();
}

}  // namespace ktq
