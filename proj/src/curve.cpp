#include "ecp/curve.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ecp {

WeierstrassCurve::WeierstrassCurve(std::array<Int, 5> ainvs, std::string lbl) : a(std::move(ainvs)), label(std::move(lbl)) {}

WeierstrassCurve WeierstrassCurve::from_longs(long a1, long a2, long a3, long a4, long a6, std::string lbl) {
    return WeierstrassCurve({Int(a1), Int(a2), Int(a3), Int(a4), Int(a6)}, std::move(lbl));
}

Invariants WeierstrassCurve::inv() const { return invariants(*this); }

std::string WeierstrassCurve::ainvs_str() const {
    std::ostringstream os;
    os << "[" << a[0] << "," << a[1] << "," << a[2] << "," << a[3] << "," << a[4] << "]";
    return os.str();
}

WeierstrassCurve WeierstrassCurve::transformed(const Int& u, const Int& r, const Int& s, const Int& t) const {
    const Int &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a6 = a[4];
    Int n1 = a1 + 2 * s;
    Int n2 = a2 - s * a1 + 3 * r - s * s;
    Int n3 = a3 + r * a1 + 2 * t;
    Int n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
    Int n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
    // scaling by u instead of 1/u keeps the model integral
    Int u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
    return WeierstrassCurve({n1 * u, n2 * u2, n3 * u3, n4 * u4, n6 * u6}, label);
}

Invariants invariants(const WeierstrassCurve& E) {
    const Int &a1 = E.a[0], &a2 = E.a[1], &a3 = E.a[2], &a4 = E.a[3], &a6 = E.a[4];
    Invariants I;
    I.b2 = a1 * a1 + 4 * a2;
    I.b4 = 2 * a4 + a1 * a3;
    I.b6 = a3 * a3 + 4 * a6;
    I.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    I.c4 = I.b2 * I.b2 - 24 * I.b4;
    I.c6 = -I.b2 * I.b2 * I.b2 + 36 * I.b2 * I.b4 - 216 * I.b6;
    I.disc = -I.b2 * I.b2 * I.b8 - 8 * I.b4 * I.b4 * I.b4 - 27 * I.b6 * I.b6 + 9 * I.b2 * I.b4 * I.b6;
    if (I.disc == 0) throw MathError("singular curve: discriminant is zero");
    I.j = Rat(I.c4 * I.c4 * I.c4, I.disc);
    I.j.canonicalize();
    return I;
}

std::string to_string(Reduction r) {
    switch (r) {
        case Reduction::Good: return "good";
        case Reduction::SplitMult: return "split";
        case Reduction::NonsplitMult: return "nonsplit";
        case Reduction::AdditivePMR: return "PMR";
        case Reduction::AdditivePGA: return "PGA";
        case Reduction::AdditivePGNA: return "PGNA";
        case Reduction::AdditivePG: return "PG-unresolved";
    }
    return "?";
}

bool is_multiplicative(Reduction r) { return r == Reduction::SplitMult || r == Reduction::NonsplitMult; }
bool is_additive(Reduction r) { return r != Reduction::Good && !is_multiplicative(r); }
bool is_potentially_good_additive(Reduction r) {
    return r == Reduction::AdditivePGA || r == Reduction::AdditivePGNA || r == Reduction::AdditivePG;
}

namespace {

struct Model {
    Int a1, a2, a3, a4, a6;

    void change(const Int& r, const Int& s, const Int& t) {
        Int n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        Int n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
        Int n3 = a3 + r * a1 + 2 * t;
        Int n2 = a2 - s * a1 + 3 * r - s * s;
        Int n1 = a1 + 2 * s;
        a1 = n1; a2 = n2; a3 = n3; a4 = n4; a6 = n6;
    }
    WeierstrassCurve curve(const std::string& lbl) const { return WeierstrassCurve({a1, a2, a3, a4, a6}, lbl); }
};

bool divides(const Int& n, const Int& d) { return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0; }
bool divides(const Int& n, long d) { return mpz_divisible_ui_p(n.get_mpz_t(), d) != 0; }

Int ipow(long p, unsigned k) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, k);
    return r;
}

long residue(const Int& n, long p) { return mod(n, p); }

bool quad_has_root(const Int& a, const Int& b, long p) {
    // T^2 + a T - b over F_p
    long A = residue(a, p), B = residue(b, p);
    if (p == 2) {
        for (long t = 0; t < 2; ++t)
            if (mod(t * t + A * t - B, 2) == 0) return true;
        return false;
    }
    long d = mod(A * A + 4 * B, p);
    return legendre(d, p) >= 0;
}

long inv_mod(long a, long p) { return invmod(a, p); }

}  // namespace

LocalReductionData tate_local(const WeierstrassCurve& E, long ell) { return tate_local(E, ell, std::nullopt); }

LocalReductionData tate_local(const WeierstrassCurve& E, long ell, const std::optional<PgOverride>& ov) {
    if (!is_prime(ell)) throw MathError("tate_local: not a prime");
    const long p = ell;
    Invariants I0 = invariants(E);
    LocalReductionData out;
    out.ell = ell;
    out.vj = valuation(I0.j == 0 ? Rat(1) : I0.j, p);
    if (I0.j == 0) out.vj = 1 << 20;

    Model m{E.a[0], E.a[1], E.a[2], E.a[3], E.a[4]};
    const Int p2 = ipow(p, 2), p3 = ipow(p, 3), p4 = ipow(p, 4), p6 = ipow(p, 6);

    auto finish = [&](const std::string& kod, int f, int n) {
        out.kodaira = kod;
        out.f = f;
        out.vdisc_min = n;
        out.minimal = m.curve(E.label);
        out.disc_min = invariants(out.minimal).disc;
    };

    for (;;) {
        Invariants I = invariants(m.curve(""));
        int n = valuation(I.disc, p);
        if (n == 0) {
            finish("I0", 0, 0);
            out.reduction = Reduction::Good;
            out.a_ell = trace_of_frobenius(out.minimal, p);
            return out;
        }
        Int r, t;
        if (p == 2) {
            if (divides(I.b2, 2)) {
                r = residue(m.a4, 2);
                t = mod(r * (1 + m.a2 + m.a4) + m.a6, 2);
            } else {
                r = residue(m.a3, 2);
                t = mod(r + m.a4, 2);
            }
        } else if (p == 3) {
            r = divides(I.b2, 3) ? mod(-I.b6, 3) : mod(-I.b2 * I.b4, 3);
            t = mod(m.a1 * r + m.a3, 3);
        } else {
            if (divides(I.c4, p))
                r = mod(-Int(inv_mod(12, p)) * I.b2, p);
            else
                r = mod(-Int(inv_mod(mod(12 * I.c4, p), p)) * (I.c6 + I.b2 * I.c4), p);
            t = mod(-Int(inv_mod(2, p)) * (m.a1 * r + m.a3), p);
        }
        m.change(r, 0, t);
        I = invariants(m.curve(""));

        if (!divides(I.c4, p)) {
            bool split = quad_has_root(m.a1, m.a2, p);
            finish("I" + std::to_string(n), 1, n);
            out.reduction = split ? Reduction::SplitMult : Reduction::NonsplitMult;
            out.minus_c6_class = square_class(Rat(-I.c6), Place::finite(p));
            return out;
        }
        auto additive = [&](const std::string& kod, int f) { finish(kod, f, n); };
        if (!divides(m.a6, p2)) { additive("II", n); break; }
        if (!divides(I.b8, p3)) { additive("III", n - 1); break; }
        if (!divides(I.b6, p3)) { additive("IV", n - 2); break; }

        Int s;
        if (p == 2) {
            s = residue(m.a2, 2);
            t = 2 * residue(m.a6 / 4, 2);
        } else {
            s = mod(m.a1 * ((p + 1) / 2), p);
            t = mod(m.a3 * ((p + 1) / 2), p);
        }
        m.change(0, s, t);
        Int b = m.a2 / p, c = m.a4 / p2, d = m.a6 / p3;
        Int w = 27 * d * d - b * b * c * c + 4 * b * b * b * d - 18 * b * c * d + 4 * c * c * c;
        Int x = 3 * c - b * b;
        if (!divides(w, p)) { additive("I0*", n - 4); break; }
        if (!divides(x, p)) {
            Int rr;
            if (p == 2) rr = c;
            else if (p == 3) rr = b * c;
            else rr = (b * c - 9 * d) * Int(inv_mod(mod(2 * x, p), p));
            m.change(p * Int(mod(rr, p)), 0, 0);
            int k = 1;
            Int mx = p2, my = p2;
            for (;;) {
                Int xa2 = m.a2 / p, xa3 = m.a3 / my, xa4 = m.a4 / (p * mx), xa6 = m.a6 / (mx * my);
                if (!divides(xa3 * xa3 + 4 * xa6, p)) break;
                Int tt = (p == 2) ? Int(my * xa6) : Int(my * mod(-xa3 * ((p + 1) / 2), p));
                m.change(0, 0, tt);
                ++k;
                mx *= p;
                if (!divides(xa4 * xa4 - 4 * xa2 * xa6, p)) break;
                Int r2 = (p == 2) ? Int(mx * mod(xa6 * xa2, 2))
                                  : Int(mx * mod(-xa4 * Int(inv_mod(mod(2 * xa2, p), p)), p));
                m.change(r2, 0, 0);
                ++k;
                my *= p;
            }
            additive("I" + std::to_string(k) + "*", n - k - 4);
            break;
        }
        Int rp = (p == 3) ? Int(-d) : (p == 2) ? c : Int(-b * Int(inv_mod(3, p)));
        m.change(p * Int(mod(rp, p)), 0, 0);
        Int x3 = m.a3 / p2, x6 = m.a6 / p4;
        if (!divides(x3 * x3 + 4 * x6, p)) { additive("IV*", n - 6); break; }
        Int tt = (p == 2) ? x6 : Int(x3 * ((p + 1) / 2));
        m.change(0, 0, -p2 * Int(mod(tt, p)));
        if (!divides(m.a4, p4)) { additive("III*", n - 7); break; }
        if (!divides(m.a6, p6)) { additive("II*", n - 8); break; }
        m.a1 /= p;
        m.a2 /= p2;
        m.a3 /= p3;
        m.a4 /= p4;
        m.a6 /= p6;
    }

    // additive
    Invariants Im = invariants(out.minimal);
    if (out.vj < 0) {
        out.reduction = Reduction::AdditivePMR;
        out.minus_c6_class = square_class(Rat(-Im.c6), Place::finite(p));
        return out;
    }
    if (ov) {
        out.e = ov->e;
        out.pg_override_used = true;
        out.reduction = ov->abelian ? Reduction::AdditivePGA : Reduction::AdditivePGNA;
        return out;
    }
    if (p >= 5) {
        out.e = 12 / std::gcd(out.vdisc_min, 12);
        out.reduction = (mod(p, out.e) == 1) ? Reduction::AdditivePGA : Reduction::AdditivePGNA;
    } else {
        out.e = 0;
        out.reduction = Reduction::AdditivePG;
    }
    return out;
}

long count_points_naive(const WeierstrassCurve& E, long ell) {
    long a1 = mod(E.a[0], ell), a2 = mod(E.a[1], ell), a3 = mod(E.a[2], ell), a4 = mod(E.a[3], ell),
         a6 = mod(E.a[4], ell);
    long cnt = 1;
    for (long x = 0; x < ell; ++x)
        for (long y = 0; y < ell; ++y) {
            long lhs = (y * y + a1 * x % ell * y + a3 * y) % ell;
            long rhs = (((x * x % ell) * x) + a2 * (x * x % ell) + a4 * x + a6) % ell;
            if (lhs == rhs) ++cnt;
        }
    return cnt;
}

long count_points_mod(const WeierstrassCurve& E, long ell) {
    if (ell == 2) return count_points_naive(E, 2);
    Invariants I = invariants(E);
    if (divides(I.disc, ell)) throw MathError("count_points: bad reduction at " + std::to_string(ell));
    long b2 = mod(I.b2, ell), b4 = mod(I.b4, ell), b6 = mod(I.b6, ell);
    std::vector<signed char> chi(ell, -1);
    chi[0] = 0;
    for (long y = 1; y <= ell / 2; ++y) chi[(y * y) % ell] = 1;
    long sum = 0;
    for (long x = 0; x < ell; ++x) {
        long x2 = x * x % ell;
        long f = (4 * x2 % ell * x + b2 * x2 + 2 * b4 * x + b6) % ell;
        sum += chi[f];
    }
    return ell + 1 + sum;
}

long trace_of_frobenius(const WeierstrassCurve& E, long ell) {
    Invariants I = invariants(E);
    if (divides(I.disc, ell)) {
        LocalReductionData d = tate_local(E, ell);
        if (d.reduction != Reduction::Good)
            throw MathError("trace_of_frobenius: bad reduction at " + std::to_string(ell));
        return *d.a_ell;
    }
    return ell + 1 - count_points_mod(E, ell);
}

std::vector<std::optional<long>> trace_table(const WeierstrassCurve& E, const std::vector<long>& primes, Exec exec) {
    Invariants I = invariants(E);
    std::vector<std::optional<long>> out(primes.size());
    std::vector<char> bad(primes.size());
    for (size_t i = 0; i < primes.size(); ++i) bad[i] = divides(I.disc, primes[i]);
    // bad-at-model primes go through Tate serially (touches GMP heavily, few of them)
    for (size_t i = 0; i < primes.size(); ++i)
        if (bad[i]) {
            LocalReductionData d = tate_local(E, primes[i]);
            if (d.reduction == Reduction::Good) out[i] = d.a_ell;
        }
    const long n = static_cast<long>(primes.size());
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 4)
        for (long i = 0; i < n; ++i)
            if (!bad[i]) out[i] = primes[i] + 1 - count_points_mod(E, primes[i]);
    } else {
        for (long i = 0; i < n; ++i)
            if (!bad[i]) out[i] = primes[i] + 1 - count_points_mod(E, primes[i]);
    }
    return out;
}

Int trace_power(long a_ell, long ell, int f) {
    if (f < 1) throw MathError("trace_power: f >= 1");
    Int prev = 2, cur = a_ell;
    for (int k = 1; k < f; ++k) {
        Int next = Int(a_ell) * cur - Int(ell) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

std::vector<long> bad_primes(const WeierstrassCurve& E) {
    std::vector<long> out;
    for (const Int& q : prime_factors(invariants(E).disc)) {
        if (!q.fits_slong_p()) throw MathError("bad prime too large");
        long l = q.get_si();
        if (tate_local(E, l).f > 0) out.push_back(l);
    }
    return out;
}

Int conductor(const WeierstrassCurve& E) {
    Int N = 1;
    for (const Int& q : prime_factors(invariants(E).disc)) {
        long l = q.get_si();
        N *= ipow(l, tate_local(E, l).f);
    }
    return N;
}

ReductionClass classify_local(const LocalReductionData& d, long p, int f_base, bool strict) {
    if (d.ell == p) throw MathError("classify_reduction: ell must differ from p");
    ReductionClass c;
    c.ell = d.ell;
    c.f_base = f_base;
    c.q = ipow(d.ell, f_base);
    c.mu_p_in_Fv = mod(c.q, p) == 1;
    c.vj = d.vj;
    c.vdisc_min = d.vdisc_min;
    c.conductor_exponent = d.f;
    c.pg_override_used = d.pg_override_used;
    c.wild = d.ell == 2 || d.ell == 3;
    c.disc_min = d.disc_min;
    c.e = d.e;
    switch (d.reduction) {
        case Reduction::Good: {
            c.reduction = Reduction::Good;
            Int t = trace_power(*d.a_ell, d.ell, f_base);
            if (!t.fits_slong_p()) throw MathError("trace of Frobenius out of range");
            c.a_v = t.get_si();
            break;
        }
        case Reduction::SplitMult: c.reduction = Reduction::SplitMult; break;
        case Reduction::NonsplitMult:
            c.reduction = (f_base % 2 == 0) ? Reduction::SplitMult : Reduction::NonsplitMult;
            break;
        case Reduction::AdditivePMR:
            c.reduction = Reduction::AdditivePMR;
            c.theta = d.minus_c6_class;
            break;
        case Reduction::AdditivePGA:
        case Reduction::AdditivePGNA:
        case Reduction::AdditivePG:
            if (d.e == 0) {
                if (strict)
                    throw MathError("needs override: potentially good reduction at " + std::to_string(d.ell) +
                                    " has no reliable built-in inertia order");
                c.reduction = Reduction::AdditivePG;
                break;
            }
            if (d.pg_override_used)
                c.reduction = d.reduction;
            else
                c.reduction = (mod(c.q, d.e) == 1) ? Reduction::AdditivePGA : Reduction::AdditivePGNA;
            break;
    }
    return c;
}

ReductionClass classify_reduction(const WeierstrassCurve& E, long ell, long p, int f_base,
                                  const std::optional<PgOverride>& ov, bool strict) {
    return classify_local(tate_local(E, ell, ov), p, f_base, strict);
}

}  // namespace ecp
