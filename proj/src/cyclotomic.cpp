#include "ecp/reptheory.hpp"

#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace ecp {

namespace {

std::vector<long> poly_divexact(std::vector<long> num, const std::vector<long>& den) {
    // coefficient vectors low-degree first, den monic
    size_t dn = den.size() - 1;
    std::vector<long> q(num.size() - dn, 0);
    for (size_t i = num.size(); i-- > dn;) {
        long c = num[i];
        q[i - dn] = c;
        for (size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    return q;
}

std::vector<long> compute_cyclotomic(long n, std::unordered_map<long, std::vector<long>>& memo) {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    std::vector<long> p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (long d = 1; d < n; ++d)
        if (n % d == 0) p = poly_divexact(p, compute_cyclotomic(d, memo));
    memo[n] = p;
    return p;
}

}  // namespace

const std::vector<long>& cyclotomic_poly(long n) {
    static std::mutex mu;
    static std::unordered_map<long, std::vector<long>> memo;
    static std::unordered_map<long, std::unique_ptr<std::vector<long>>> stable;
    std::lock_guard<std::mutex> lock(mu);
    auto it = stable.find(n);
    if (it != stable.end()) return *it->second;
    auto p = std::make_unique<std::vector<long>>(compute_cyclotomic(n, memo));
    auto& ref = *p;
    stable.emplace(n, std::move(p));
    return ref;
}

Cyc Cyc::from_exponents(long n, const std::vector<Rat>& full) {
    // full: coefficients of zeta^k for k = 0..len-1; reduce mod x^n - 1 then mod Phi_n
    std::vector<Rat> r(n, Rat(0));
    for (size_t k = 0; k < full.size(); ++k)
        if (full[k] != 0) r[k % n] += full[k];
    const auto& phi = cyclotomic_poly(n);
    size_t d = phi.size() - 1;
    for (size_t i = r.size(); i-- > d;) {
        if (r[i] == 0) continue;
        Rat c = r[i];
        for (size_t j = 0; j <= d; ++j) r[i - d + j] -= c * phi[j];
    }
    r.resize(d);
    return Cyc(n, std::move(r));
}

Cyc Cyc::zeta(long n, long k) {
    if (n < 1) throw MathError("zeta: bad order");
    k = mod(k, n);
    std::vector<Rat> full(k + 1, Rat(0));
    full[k] = 1;
    return from_exponents(n, full);
}

Cyc Cyc::lifted(long N) const {
    if (N == n_) return *this;
    if (N % n_ != 0) throw MathError("Cyc::lifted: order does not divide");
    long s = N / n_;
    std::vector<Rat> full(c_.size() == 0 ? 1 : (c_.size() - 1) * s + 1, Rat(0));
    for (size_t k = 0; k < c_.size(); ++k) full[k * s] = c_[k];
    return from_exponents(N, full);
}

namespace {
long common(long a, long b) { return std::lcm(a, b); }
}  // namespace

Cyc Cyc::operator+(const Cyc& o) const {
    long N = common(n_, o.n_);
    Cyc a = lifted(N), b = o.lifted(N);
    for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    return a;
}

Cyc Cyc::operator-() const {
    Cyc a = *this;
    for (auto& x : a.c_) x = -x;
    return a;
}

Cyc Cyc::operator-(const Cyc& o) const { return *this + (-o); }

Cyc Cyc::operator*(const Cyc& o) const {
    if (n_ == 1 && o.n_ == 1) return Cyc(c_[0] * o.c_[0]);
    long N = common(n_, o.n_);
    Cyc a = lifted(N), b = o.lifted(N);
    std::vector<Rat> full(a.c_.size() + b.c_.size(), Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j)
            if (b.c_[j] != 0) full[i + j] += a.c_[i] * b.c_[j];
    }
    return from_exponents(N, full);
}

Cyc Cyc::operator/(const Rat& r) const {
    if (r == 0) throw MathError("Cyc: division by zero");
    Cyc a = *this;
    for (auto& x : a.c_) x /= r;
    return a;
}

bool Cyc::operator==(const Cyc& o) const {
    if (n_ == o.n_) return c_ == o.c_;
    long N = common(n_, o.n_);
    return lifted(N).c_ == o.lifted(N).c_;
}

Cyc Cyc::galois(long k) const {
    if (std::gcd(mod(k, n_), n_) != 1 && n_ > 1) throw MathError("Cyc::galois: exponent not a unit");
    std::vector<Rat> full(n_, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) full[mod(static_cast<long>(i) * k, n_)] += c_[i];
    return from_exponents(n_, full);
}

Cyc Cyc::conj() const { return galois(-1); }

bool Cyc::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rat Cyc::rational() const {
    if (!is_rational()) throw MathError("Cyc: value is not rational: " + str());
    return c_.empty() ? Rat(0) : c_[0];
}

bool Cyc::is_zero() const {
    for (auto& x : c_)
        if (x != 0) return false;
    return true;
}

Rat Cyc::norm() const {
    Cyc prod(1);
    for (long k = 1; k <= n_; ++k)
        if (std::gcd(k, n_) == 1) prod = prod * galois(k);
    return prod.rational();
}

std::string Cyc::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << c_[i].get_str();
        if (i > 0) os << "*z" << n_ << "^" << i;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace ecp
