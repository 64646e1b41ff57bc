#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ecp/numtheory.hpp"

#include <random>

using namespace ecp;

namespace {

// primitive zero of z^2 - a x^2 - b y^2 mod ell^2; exact for odd ell and v(a), v(b) <= 1
int hilbert_brute(long a, long b, long ell) {
    const long M = ell * ell;
    for (long x = 0; x < M; ++x)
        for (long y = 0; y < M; ++y)
            for (long z = 0; z < M; ++z) {
                if (x % ell == 0 && y % ell == 0 && z % ell == 0) continue;
                long v = ((z * z - a * x * x - b * y * y) % M + M) % M;
                if (v == 0) return 1;
            }
    return -1;
}

long squarefree_part(long a, long ell) {
    while (a % (ell * ell) == 0) a /= ell * ell;
    return a;
}

}  // namespace

TEST_CASE("primes and valuations") {
    CHECK(primes_up_to(30) == std::vector<long>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
    CHECK(is_prime(1093));
    CHECK_FALSE(is_prime(737));
    CHECK(valuation(Int(-43264), 2) == 8);
    CHECK(valuation(Rat(7, 98), 7) == -1);
    CHECK(strip(Int(364), 2) == 91);
    CHECK(mod(-7, 5) == 3);
    CHECK(invmod(3, 7) == 5);
    CHECK(multiplicative_order(2, 19) == 18);
    CHECK(multiplicative_order(7, 19) == 3);
}

TEST_CASE("Legendre symbol against squares") {
    for (long ell : {3L, 5L, 7L, 11L, 13L, 67L}) {
        std::vector<int> sq(ell, -1);
        sq[0] = 0;
        for (long x = 1; x < ell; ++x) sq[x * x % ell] = 1;
        for (long a = 0; a < ell; ++a) CHECK(legendre(a, ell) == sq[a]);
        CHECK(legendre(nonresidue(ell), ell) == -1);
    }
}

TEST_CASE("Hilbert symbol against brute force") {
    for (long ell : {3L, 5L, 7L}) {
        const Place v = Place::finite(ell);
        for (long a = -12; a <= 12; ++a)
            for (long b = -12; b <= 12; ++b) {
                if (a == 0 || b == 0) continue;
                long a1 = squarefree_part(a, ell), b1 = squarefree_part(b, ell);
                if (a1 % (ell * ell) == 0 || b1 % (ell * ell) == 0) continue;
                CAPTURE(a);
                CAPTURE(b);
                CAPTURE(ell);
                CHECK(hilbert_symbol(Rat(a), Rat(b), v) == hilbert_brute(a1, b1, ell));
            }
    }
}

TEST_CASE("Hilbert reciprocity over random pairs") {
    std::mt19937_64 rng(20261019);
    std::uniform_int_distribution<long> dist(-5000, 5000);
    int pairs = 0;
    while (pairs < 100) {
        long a = dist(rng), b = dist(rng);
        if (a == 0 || b == 0) continue;
        ++pairs;
        int prod = hilbert_symbol(Rat(a), Rat(b), Place::infinity());
        std::vector<long> ps{2};
        for (auto& f : prime_factors(Int(a) * Int(b)))
            if (f != 2) ps.push_back(f.get_si());
        for (long ell : ps) prod *= hilbert_symbol(Rat(a), Rat(b), Place::finite(ell));
        CAPTURE(a);
        CAPTURE(b);
        CHECK(prod == 1);
    }
}

TEST_CASE("Hilbert symbol at 2 on unit pairs") {
    const Place two = Place::finite(2);
    // (u, w)_2 = (-1)^((u-1)(w-1)/4) for odd u, w
    for (long u : {1L, 3L, 5L, 7L, -1L, -3L})
        for (long w : {1L, 3L, 5L, 7L, -1L, -3L}) {
            long e = ((u - 1) / 2) * ((w - 1) / 2);
            CHECK(hilbert_symbol(Rat(u), Rat(w), two) == (mod(e, 2) ? -1 : 1));
        }
    CHECK(hilbert_symbol(Rat(2), Rat(3), two) == -1);
    CHECK(hilbert_symbol(Rat(2), Rat(7), two) == 1);
}

TEST_CASE("unramified extension Hilbert symbols") {
    const Place v = Place::finite(5);
    // (a, b) over the degree-f unramified extension is the base symbol to the f-th power for a, b in Q_5
    for (long a : {2L, 5L, 10L, -1L})
        for (long b : {3L, 5L, 15L}) {
            int base = hilbert_symbol(Rat(a), Rat(b), v);
            CHECK(hilbert_symbol(Rat(a), Rat(b), v, 2) == 1);
            CHECK(hilbert_symbol(Rat(a), Rat(b), v, 3) == base);
        }
}

TEST_CASE("square classes") {
    const Place v = Place::finite(7);
    CHECK(square_class(Rat(49), v).trivial());
    CHECK(square_class(Rat(2), v).trivial());
    CHECK_FALSE(square_class(Rat(3), v).trivial());
    CHECK(square_class(Rat(3 * 7), v) == square_class(Rat(5 * 7), v));
    CHECK(same_square_class(square_class(Rat(3), v), square_class(Rat(1), v), 2));
    CHECK(square_class(Rat(-3), Place::infinity()).sign == -1);
    const Place two = Place::finite(2);
    CHECK(square_class(Rat(17), two).trivial());
    CHECK_FALSE(square_class(Rat(5), two).trivial());
}

TEST_CASE("cube classes in Q_ell(mu_3)") {
    CHECK(cube_class_mu3(Rat(2), 2).val_mod3 == 1);
    CHECK(cube_class_mu3(Rat(8), 2).trivial());
    CHECK(cube_class_mu3(Rat(4), 2) == cube_class_mu3(Rat(2), 2).scaled(2));
    CHECK(cube_class_mu3(Rat(5 * 5 * 5 * 5), 5).val_mod3 == 1);
}
