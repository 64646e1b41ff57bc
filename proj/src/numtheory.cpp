#include "ecp/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ecp {

Place Place::finite(long ell) {
    if (!is_prime(ell)) throw MathError("place: " + std::to_string(ell) + " is not prime");
    return Place{false, ell};
}

std::string Place::str() const { return real ? "inf" : std::to_string(ell); }

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<long> primes_up_to(long n) {
    std::vector<long> out;
    if (n < 2) return out;
    std::vector<bool> comp(n + 1, false);
    for (long i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (long j = i * i; j <= n; j += i) comp[j] = true;
    }
    return out;
}

namespace {

Int pollard_brent(const Int& n) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned long c = 1;; ++c) {
        Int y = 2, x, g = 1, q = 1, ys;
        unsigned long r = 1, m = 64;
        auto f = [&](const Int& z) {
            Int t = z * z + c;
            mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
            return t;
        };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = f(y);
            unsigned long k = 0;
            do {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    Int d = abs(x - y);
                    q = q * d;
                    mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                Int d = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_into(Int n, std::vector<Int>& out) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
        out.push_back(n);
        return;
    }
    Int d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

std::vector<Int> prime_factors(Int n) {
    n = abs(n);
    if (n == 0) throw MathError("prime_factors: zero");
    std::vector<Int> out;
    for (long p = 2; p < 10000 && Int(p) * p <= n; ++p) {
        if (!is_prime(p)) continue;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            out.emplace_back(p);
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) n /= p;
        }
    }
    std::vector<Int> rest;
    factor_into(n, rest);
    for (auto& q : rest)
        if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
    std::sort(out.begin(), out.end());
    return out;
}

int valuation(const Int& n, long ell) {
    if (n == 0) throw MathError("valuation of zero");
    Int m = n;
    int k = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), ell)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), ell);
        ++k;
    }
    return k;
}

int valuation(const Rat& x, long ell) {
    return valuation(Int(x.get_num()), ell) - valuation(Int(x.get_den()), ell);
}

Int strip(Int n, long ell) {
    if (n == 0) throw MathError("strip of zero");
    while (mpz_divisible_ui_p(n.get_mpz_t(), ell)) mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), ell);
    return n;
}

long mod(const Int& n, long m) { return static_cast<long>(mpz_fdiv_ui(n.get_mpz_t(), m)); }

long mod(long n, long m) {
    long r = n % m;
    return r < 0 ? r + m : r;
}

long powmod(long base, long long exp, long m) {
    if (m == 1) return 0;
    __int128 r = 1, b = mod(base, m);
    while (exp > 0) {
        if (exp & 1) r = r * b % m;
        b = b * b % m;
        exp >>= 1;
    }
    return static_cast<long>(r);
}

long invmod(long a, long m) {
    long g = std::gcd(mod(a, m), m);
    if (g != 1) throw MathError("invmod: not invertible");
    long t = 0, nt = 1, r = m, nr = mod(a, m);
    while (nr) {
        long q = r / nr;
        t -= q * nt;
        std::swap(t, nt);
        r -= q * nr;
        std::swap(r, nr);
    }
    return mod(t, m);
}

int legendre(long a, long ell) {
    long r = mod(a, ell);
    if (r == 0) return 0;
    return powmod(r, (ell - 1) / 2, ell) == 1 ? 1 : -1;
}

int legendre(const Int& a, long ell) { return legendre(mod(a, ell), ell); }

long nonresidue(long ell) {
    for (long n = 2; n < ell; ++n)
        if (legendre(n, ell) == -1) return n;
    throw MathError("nonresidue: no nonresidue mod " + std::to_string(ell));
}

long multiplicative_order(long a, long m) {
    a = mod(a, m);
    if (std::gcd(a, m) != 1) throw MathError("order: not a unit");
    long k = 1, x = a;
    while (x != 1 % m) {
        x = static_cast<long>((__int128)x * a % m);
        ++k;
    }
    return k;
}

bool SquareClass::trivial() const {
    if (place.real) return sign > 0;
    if (place.ell == 2) return two_adic == 1;
    return val_parity == 0 && unit_square;
}

bool SquareClass::unit() const {
    if (place.real) return true;
    if (place.ell == 2) return two_adic % 2 != 0;
    return val_parity == 0;
}

Rat SquareClass::representative() const {
    if (place.real) return Rat(sign);
    if (place.ell == 2) return Rat(two_adic);
    Int r = unit_square ? Int(1) : Int(nonresidue(place.ell));
    if (val_parity) r *= place.ell;
    return Rat(r);
}

std::string SquareClass::str() const {
    if (place.real) return sign > 0 ? "+" : "-";
    if (place.ell == 2) return std::to_string(two_adic);
    return std::string(val_parity ? "ell*" : "") + (unit_square ? "sq" : "nsq");
}

SquareClass square_class(const Rat& x, const Place& v) {
    if (x == 0) throw MathError("square_class: zero");
    SquareClass c;
    c.place = v;
    if (v.real) {
        c.sign = sgn(x) > 0 ? 1 : -1;
        return c;
    }
    const long ell = v.ell;
    int k = valuation(x, ell);
    Int num = strip(Int(x.get_num()), ell), den = strip(Int(x.get_den()), ell);
    // unit part u = num/den; class of u equals class of num*den
    Int u = num * den;
    c.val_parity = ((k % 2) + 2) % 2;
    if (ell == 2) {
        long r = mod(u, 8);  // 1,3,5,7
        int base = (r == 1) ? 1 : (r == 3) ? -5 : (r == 5) ? 5 : -1;
        c.two_adic = c.val_parity ? 2 * base : base;
        c.unit_square = (base == 1);
        return c;
    }
    c.unit_square = legendre(u, ell) == 1;
    return c;
}

SquareClass operator*(const SquareClass& a, const SquareClass& b) {
    if (!(a.place == b.place)) throw MathError("square classes at different places");
    return square_class(a.representative() * b.representative(), a.place);
}

SquareClass unramified_nonsquare(long ell) {
    Place v = Place::finite(ell);
    if (ell == 2) return square_class(Rat(5), v);
    return square_class(Rat(nonresidue(ell)), v);
}

bool same_square_class(const SquareClass& a, const SquareClass& b, int f) {
    if (!(a.place == b.place)) return false;
    if (f % 2 == 1 || a.place.real) return a == b;
    if (a.place.ell == 2) throw MathError("square classes at 2 over even-degree extensions are not modeled");
    return a.val_parity == b.val_parity;
}

namespace {

int hilbert_odd(const Rat& a, const Rat& b, long ell) {
    int al = valuation(a, ell), be = valuation(b, ell);
    Int u = strip(Int(a.get_num()), ell) * strip(Int(a.get_den()), ell);
    Int w = strip(Int(b.get_num()), ell) * strip(Int(b.get_den()), ell);
    int s = 1;
    if ((al & 1) && (be & 1) && ((ell - 1) / 2) % 2 == 1) s = -s;
    if (be & 1) s *= legendre(u, ell);
    if (al & 1) s *= legendre(w, ell);
    return s;
}

int hilbert_two(const Rat& a, const Rat& b) {
    int al = valuation(a, 2), be = valuation(b, 2);
    Int u = strip(Int(a.get_num()), 2) * strip(Int(a.get_den()), 2);
    Int w = strip(Int(b.get_num()), 2) * strip(Int(b.get_den()), 2);
    long u8 = mod(u, 8), w8 = mod(w, 8);
    auto eps = [](long x) { return ((x - 1) / 2) % 2; };
    auto omg = [](long x) { return ((x * x - 1) / 8) % 2; };
    long e = eps(u8) * eps(w8) + (al & 1) * omg(w8) + (be & 1) * omg(u8);
    return e % 2 ? -1 : 1;
}

}  // namespace

int hilbert_symbol(const Rat& a, const Rat& b, const Place& v) {
    if (a == 0 || b == 0) throw MathError("hilbert_symbol: zero");
    if (v.real) return (sgn(a) < 0 && sgn(b) < 0) ? -1 : 1;
    if (v.ell == 2) return hilbert_two(a, b);
    return hilbert_odd(a, b, v.ell);
}

int hilbert_symbol(const Rat& a, const Rat& b, const Place& v, int f) {
    int h = hilbert_symbol(a, b, v);
    return (f % 2 == 0) ? 1 : h;
}

CubeClassMu3 CubeClassMu3::operator+(const CubeClassMu3& o) const {
    return CubeClassMu3{ell, (val_mod3 + o.val_mod3) % 3, (unit_class + o.unit_class) % 3};
}

CubeClassMu3 CubeClassMu3::scaled(int k) const {
    k = ((k % 3) + 3) % 3;
    return CubeClassMu3{ell, (val_mod3 * k) % 3, (unit_class * k) % 3};
}

CubeClassMu3 cube_class_mu3(const Rat& x, long ell) {
    if (x == 0) throw MathError("cube_class_mu3: zero");
    if (!is_prime(ell) || ell == 3 || ell % 3 != 2)
        throw MathError("cube_class_mu3: need a prime ell = 2 mod 3");
    CubeClassMu3 c;
    c.ell = ell;
    c.val_mod3 = ((valuation(x, ell) % 3) + 3) % 3;
    Int u = strip(Int(x.get_num()), ell) * strip(Int(x.get_den()), ell) * strip(Int(x.get_den()), ell);
    // u lies in F_ell^x inside F_{ell^2}; (ell^2-1)/3 = (ell-1)*((ell+1)/3)
    long long e = (static_cast<long long>(ell) * ell - 1) / 3;
    long r = powmod(mod(u, ell), e % (ell - 1), ell);
    if (r != 1) throw MathError("cube_class_mu3: residue test out of range");
    c.unit_class = 0;
    return c;
}

}  // namespace ecp
