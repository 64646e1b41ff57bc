#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ecp {

using Int = mpz_class;
using Rat = mpq_class;

struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Place {
    bool real = false;
    long ell = 0;

    static Place finite(long ell);
    static Place infinity() { return Place{true, 0}; }
    bool operator==(const Place&) const = default;
    std::string str() const;
};

bool is_prime(long n);
std::vector<long> primes_up_to(long n);
std::vector<Int> prime_factors(Int n);

int valuation(const Int& n, long ell);
int valuation(const Rat& x, long ell);
Int strip(Int n, long ell);

long mod(const Int& n, long m);
long mod(long n, long m);
long powmod(long base, long long exp, long m);
long invmod(long a, long m);
int legendre(long a, long ell);
int legendre(const Int& a, long ell);
// smallest quadratic nonresidue mod an odd prime
long nonresidue(long ell);
long multiplicative_order(long a, long m);

// F_v^x / (F_v^x)^2 for F_v = Q_ell, or R.
struct SquareClass {
    Place place;
    int val_parity = 0;
    bool unit_square = true;  // odd ell
    int two_adic = 1;         // ell = 2: one of +-1, +-2, +-5, +-10
    int sign = 1;             // real place

    bool trivial() const;
    bool unit() const;  // even valuation part (odd ell or ell = 2)
    // rational representative of the class
    Rat representative() const;
    bool operator==(const SquareClass&) const = default;
    std::string str() const;
};

SquareClass square_class(const Rat& x, const Place& v);
SquareClass operator*(const SquareClass& a, const SquareClass& b);
// class of the unramified quadratic extension at a finite place
SquareClass unramified_nonsquare(long ell);

// Class equality after unramified base change of residue degree f.
bool same_square_class(const SquareClass& a, const SquareClass& b, int f = 1);

int hilbert_symbol(const Rat& a, const Rat& b, const Place& v);
// over the unramified extension of Q_ell of degree f
int hilbert_symbol(const Rat& a, const Rat& b, const Place& v, int f);

// Q_ell(mu_3)^x / cubes for ell = 2 mod 3
struct CubeClassMu3 {
    long ell = 0;
    int val_mod3 = 0;
    int unit_class = 0;

    bool trivial() const { return val_mod3 == 0 && unit_class == 0; }
    CubeClassMu3 operator+(const CubeClassMu3& o) const;
    CubeClassMu3 scaled(int k) const;
    bool operator==(const CubeClassMu3&) const = default;
};

CubeClassMu3 cube_class_mu3(const Rat& x, long ell);

}  // namespace ecp
