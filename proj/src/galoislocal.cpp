#include "ecp/galoislocal.hpp"

#include <deque>
#include <algorithm>
#include <numeric>
#include <sstream>

namespace ecp {

namespace {

Rat frac(const Rat& x) {
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    Rat r = x - Rat(fl);
    r.canonicalize();
    return r;
}

Cyc root_of_unity(const Rat& t) {
    Rat f = frac(t);
    return Cyc::zeta(f.get_den().get_si(), f.get_num().get_si());
}

std::vector<char> membership(int n, const std::vector<int>& elems) {
    std::vector<char> in(n, 0);
    for (int e : elems) in[e] = 1;
    return in;
}

struct QuadNormal {
    Rat unr = 0;
    std::optional<SquareClass> ram;
};

// Splits a Q_ell square class, viewed over the unramified extension of degree f,
// into an unramified part and a ramified representative.
QuadNormal normalize_quad(const SquareClass& d, int f_base) {
    if (d.place.real) throw MathError("quadratic local character at a real place");
    QuadNormal out;
    const long ell = d.place.ell;
    if (ell == 2) {
        int x = d.two_adic;
        bool u5 = (x == 5 || x == -5 || x == 10 || x == -10);
        int base = u5 ? x / 5 : x;
        if (u5 && f_base % 2) out.unr = Rat(1, 2);
        if (base != 1) out.ram = square_class(Rat(base), d.place);
        return out;
    }
    if (!d.unit_square && f_base % 2) out.unr = Rat(1, 2);
    if (d.val_parity) out.ram = square_class(Rat(ell), d.place);
    return out;
}

bool same_ram(const std::optional<SquareClass>& a, const std::optional<SquareClass>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a || *a == *b;
}

bool trivial_on(const CharacterRep& chi, const std::vector<int>& elems) {
    const Cyc d = chi.at(0);
    for (int g : elems)
        if (chi.at(g) != d) return false;
    return true;
}

bool agree_on(const CharacterRep& a, const CharacterRep& b, const std::vector<int>& elems) {
    for (int g : elems)
        if (a.at(g) != b.at(g)) return false;
    return true;
}

CharacterRep unramified_character(const LocalGaloisDatum& d, const Rat& unr, const std::string& name) {
    std::vector<Cyc> v(d.D->size());
    for (int g = 0; g < d.D->size(); ++g) v[g] = root_of_unity(unr * d.frobenius_exponent(g));
    return character_from_elements(d.D, v, name);
}

// value of a linear character of D at Frobenius, as an element of Q/Z
std::optional<Rat> unr_exponent(const CharacterRep& chi, int frob) {
    Cyc x = chi.at(frob);
    const int n = 48;
    for (int k = 0; k < n; ++k)
        if (Cyc::zeta(n, k) == x) return frac(Rat(k, n));
    return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------

bool LocalGaloisDatum::mu_p_in_Fv(long p) const { return mod(q, p) == 1; }

int LocalGaloisDatum::frobenius_exponent(int g) const {
    auto in = membership(D->size(), inertia);
    int x = 0;  // Frob^k
    for (int k = 0; k < f_v; ++k) {
        if (in[D->mul(D->inv(x), g)]) return k;
        x = D->mul(x, frobenius);
    }
    throw MathError("element outside every Frobenius coset");
}

std::string LocalGaloisDatum::str() const {
    std::ostringstream os;
    os << (label.empty() ? std::to_string(ell) : label) << ": |D|=" << D->size() << " e=" << e_v << " f=" << f_v
       << " q=" << q.get_str();
    if (partial) os << " (partial)";
    return os.str();
}

LocalGaloisDatum make_local_datum(const GroupPtr& delta, long ell, int f_base, const std::vector<int>& D_gens,
                                  const std::vector<int>& I_gens, int frobenius_in_delta) {
    if (!is_prime(ell)) throw MathError("local datum: residue characteristic must be prime");
    if (f_base < 1) throw MathError("local datum: residue degree must be positive");
    LocalGaloisDatum d;
    d.ell = ell;
    d.f_base = f_base;
    mpz_ui_pow_ui(d.q.get_mpz_t(), ell, f_base);
    d.delta = delta;
    d.D = FiniteGroup::subgroup(delta, D_gens);
    std::vector<int> ig;
    for (int g : I_gens) {
        if (g < 0 || g >= delta->size()) throw MathError("local datum: inertia generator out of range");
        int l = d.D->local_index(g);
        if (l < 0) throw MathError("local datum: inertia is not contained in D");
        ig.push_back(l);
    }
    d.inertia = d.D->closure(ig);
    if (!d.D->is_normal_subset(d.inertia)) throw MathError("local datum: inertia is not normal in D");
    if (frobenius_in_delta < 0 || frobenius_in_delta >= delta->size())
        throw MathError("local datum: Frobenius out of range");
    d.frobenius = d.D->local_index(frobenius_in_delta);
    if (d.frobenius < 0) throw MathError("local datum: Frobenius is not in D");
    d.e_v = static_cast<int>(d.inertia.size());
    d.f_v = d.D->size() / d.e_v;
    // D/I must be cyclic, generated by the Frobenius coset
    auto in = membership(d.D->size(), d.inertia);
    std::vector<char> seen(d.D->size(), 0);
    int x = 0;
    for (int k = 0; k < d.f_v; ++k) {
        for (int i : d.inertia) seen[d.D->mul(x, i)] = 1;
        x = d.D->mul(x, d.frobenius);
    }
    if (!in[x] || std::count(seen.begin(), seen.end(), 1) != d.D->size())
        throw MathError("local datum: D/I is not generated by the Frobenius coset");
    return d;
}

void validate_annotations(LocalGaloisDatum& d) {
    const auto& I = d.inertia;
    std::vector<QuadNormal> norms;
    for (auto& a : d.quad) {
        if (a.chi.group != d.D || a.chi.dim() != 1) throw MathError("annotation '" + a.label + "': not a linear character of D");
        for (int g = 0; g < d.D->size(); ++g) {
            Cyc v = a.chi.at(g);
            if (v != Cyc(1) && v != Cyc(-1)) throw MathError("annotation '" + a.label + "': not of order 2");
        }
        if (a.cls.place.real || a.cls.place.ell != d.ell)
            throw MathError("annotation '" + a.label + "': square class at the wrong place");
        QuadNormal n = normalize_quad(a.cls, d.f_base);
        bool unram = trivial_on(a.chi, I);
        if (unram == n.ram.has_value())
            throw MathError("annotation '" + a.label + "': ramification disagrees with the square class");
        if (unram) {
            auto t = unr_exponent(a.chi, d.frobenius);
            if (!t || *t != n.unr) throw MathError("annotation '" + a.label + "': Frobenius value disagrees with the square class");
        }
        norms.push_back(n);
    }
    for (size_t i = 0; i < d.quad.size(); ++i)
        for (size_t j = i + 1; j < d.quad.size(); ++j) {
            CharacterRep ratio = d.quad[i].chi * d.quad[j].chi;
            bool unram = trivial_on(ratio, I);
            if (same_ram(norms[i].ram, norms[j].ram)) {
                if (!unram) throw MathError("ambiguous annotations: '" + d.quad[i].label + "' and '" + d.quad[j].label + "'");
                auto t = unr_exponent(ratio, d.frobenius);
                if (!t || *t != frac(norms[i].unr - norms[j].unr))
                    throw MathError("ambiguous annotations: '" + d.quad[i].label + "' and '" + d.quad[j].label + "'");
            } else if (unram) {
                throw MathError("inconsistent annotations: '" + d.quad[i].label + "' and '" + d.quad[j].label + "'");
            }
        }
    if (d.cubic) {
        if (d.cubic->chi.group != d.D || d.cubic->chi.dim() != 2 || inner_product(d.cubic->chi, d.cubic->chi) != 1)
            throw MathError("cubic annotation: not a 2-dimensional irreducible of D");
        if (d.cubic->cls.ell != d.ell) throw MathError("cubic annotation: class at the wrong place");
    }
    for (auto& lam : linear_characters(d.D)) {
        bool quadratic = true;
        for (int g = 0; g < d.D->size(); ++g)
            if (lam.at(g) != Cyc(1) && lam.at(g) != Cyc(-1)) quadratic = false;
        if (!quadratic || trivial_on(lam, I)) continue;
        bool covered = std::any_of(d.quad.begin(), d.quad.end(), [&](const QuadAnnotation& a) { return agree_on(a.chi, lam, I); });
        if (!covered) {
            d.partial = true;
            if (d.partial_reason.empty()) d.partial_reason = "ramified quadratic character of D without annotation";
        }
    }
}

// ---------------------------------------------------------------------------

LocalCharSpec LocalCharSpec::one(long ell, int f_base) {
    LocalCharSpec c;
    c.ell = ell;
    c.f_base = f_base;
    return c;
}

LocalCharSpec LocalCharSpec::kappa(long ell, int f_base) {
    LocalCharSpec c = one(ell, f_base);
    c.unr = Rat(1, 2);
    c.label = "kappa";
    return c;
}

LocalCharSpec LocalCharSpec::omega_pow(long ell, int f_base, long p, long j) {
    if (p < 3 || !is_prime(p)) throw MathError("omega: p must be an odd prime");
    if (ell == p) throw MathError("omega: ramified at v | p");
    LocalCharSpec c = one(ell, f_base);
    long qp = powmod(mod(ell, p), f_base, p);
    long jj = mod(j, p - 1);
    long val = powmod(qp, jj, p);
    long g = 2;
    while (multiplicative_order(g, p) != p - 1) ++g;
    long t = 0, x = 1;
    while (x != val) {
        x = x * g % p;
        ++t;
    }
    c.unr = frac(Rat(t, p - 1));
    c.label = jj == 1 ? "omega" : "omega^" + std::to_string(jj);
    return c;
}

LocalCharSpec LocalCharSpec::theta_quad(const SquareClass& d, int f_base) {
    LocalCharSpec c = one(d.place.ell, f_base);
    QuadNormal n = normalize_quad(d, f_base);
    c.unr = n.unr;
    c.ram = n.ram;
    c.label = "theta(" + d.str() + ")";
    return c;
}

LocalCharSpec LocalCharSpec::theta3_of(const CubeClassMu3& cls, int f_base) {
    if (cls.trivial()) throw MathError("theta3: trivial cube class");
    LocalCharSpec c = one(cls.ell, f_base);
    c.theta3 = cls;
    c.label = "theta3";
    return c;
}

LocalCharSpec LocalCharSpec::operator*(const LocalCharSpec& o) const {
    if (ell != o.ell || f_base != o.f_base) throw MathError("local characters at different places");
    if (theta3 && o.theta3) throw MathError("product of two theta3 factors is not modeled");
    LocalCharSpec c = *this;
    c.unr = frac(unr + o.unr);
    if (!ram) {
        c.ram = o.ram;
    } else if (o.ram) {
        QuadNormal n = normalize_quad((*ram) * (*o.ram), f_base);
        c.unr = frac(c.unr + n.unr);
        c.ram = n.ram;
    }
    if (o.theta3) c.theta3 = o.theta3;
    c.label = (label == "1") ? o.label : (o.label == "1" ? label : label + "*" + o.label);
    return c;
}

LocalCharSpec LocalCharSpec::inverse() const {
    LocalCharSpec c = *this;
    c.unr = frac(-unr);
    c.label = label + "^-1";
    return c;
}

long LocalCharSpec::unr_order() const { return frac(unr).get_den().get_si(); }

bool LocalCharSpec::operator==(const LocalCharSpec& o) const {
    return ell == o.ell && f_base == o.f_base && unr == o.unr && same_ram(ram, o.ram) && theta3 == o.theta3;
}

// ---------------------------------------------------------------------------

SigmaSpec make_sigma(const GroupPtr& delta, const CharacterRep& sigma) {
    if (sigma.group != delta) throw MathError("sigma: character of a different group");
    if (inner_product(sigma, sigma) != 1) throw MathError("sigma: not irreducible");
    int fs = frobenius_schur(sigma);
    if (fs == 0) throw MathError("sigma: not self-dual");
    if (fs == -1) throw MathError("sigma: symplectic representations are not supported");
    return SigmaSpec{delta, sigma, true, true};
}

SigmaSpec make_sigma(const GroupPtr& delta, const std::string& name) {
    return make_sigma(delta, character_by_name(delta, name));
}

std::optional<CharacterRep> match_character(const LocalGaloisDatum& d, const LocalCharSpec& chi) {
    if (d.structure_partial) throw MathError("partial datum at " + d.str() + ": " + d.partial_reason);
    if (chi.ell != d.ell) throw MathError("character and datum at different places");
    if (chi.f_base != d.f_base) throw MathError("character and datum over different residue degrees");
    const auto& I = d.inertia;
    auto find_quad = [&](const SquareClass& ram) -> const QuadAnnotation* {
        for (auto& a : d.quad) {
            QuadNormal n = normalize_quad(a.cls, d.f_base);
            if (n.ram && *n.ram == ram) return &a;
        }
        return nullptr;
    };
    auto inertia_has_order = [&](int k) {
        return std::any_of(I.begin(), I.end(), [&](int g) { return d.D->order_of(g) % k == 0; });
    };
    if (chi.theta3) {
        Rat u2 = frac(chi.unr * 2);
        if (u2 != 0) throw MathError("theta3 twisted by a non-quadratic unramified character is not modeled");
        if (!d.cubic) {
            if (d.partial) throw MathError("partial datum at " + d.str() + ": " + d.partial_reason);
            if (inertia_has_order(3)) throw MathError("datum at " + d.str() + " lacks a cubic annotation");
            return std::nullopt;
        }
        const CubeClassMu3& a = d.cubic->cls;
        const CubeClassMu3& c = *chi.theta3;
        if (!(a + c).trivial() && !(a + c.scaled(2)).trivial()) return std::nullopt;
        CharacterRep out = d.cubic->chi;
        if (chi.ram) {
            const QuadAnnotation* q = find_quad(*chi.ram);
            if (!q) {
                if (d.partial) throw MathError("partial datum at " + d.str() + ": " + d.partial_reason);
                return std::nullopt;
            }
            out = out * q->chi;
        }
        out.name = chi.label;
        return out;
    }
    Rat lam = chi.unr;
    std::optional<CharacterRep> base;
    if (chi.ram) {
        const QuadAnnotation* q = find_quad(*chi.ram);
        if (!q) {
            if (d.partial) throw MathError("partial datum at " + d.str() + ": " + d.partial_reason);
            return std::nullopt;
        }
        lam = frac(lam - normalize_quad(q->cls, d.f_base).unr);
        base = q->chi;
    }
    if (frac(lam * d.f_v) != 0) return std::nullopt;
    CharacterRep out = unramified_character(d, lam, chi.label);
    if (base) out = out * *base;
    out.name = chi.label;
    return out;
}

namespace {

struct RestrictEntry {
    GroupPtr delta, D;
    std::vector<Cyc> values;
    CharacterRep res;
    std::optional<CharacterRep> det;

    const CharacterRep& determinant() const {
        if (!det) throw MathError("determinant of a restriction of dimension > 3");
        return *det;
    }
};

// per-thread memo; entries keep their groups alive so pointer keys stay valid
const RestrictEntry& restricted(const CharacterRep& sigma, const GroupPtr& D) {
    thread_local std::deque<RestrictEntry> memo;
    for (auto& e : memo)
        if (e.D == D && e.delta == sigma.group && e.values == sigma.values) return e;
    if (memo.size() > 256) memo.clear();
    CharacterRep r = restrict(sigma, D);
    std::optional<CharacterRep> det;
    if (r.dim() <= 3) det = det_character(r);
    memo.push_back(RestrictEntry{sigma.group, D, sigma.values, r, det});
    return memo.back();
}

}  // namespace

long multiplicity(const CharacterRep& sigma, const LocalGaloisDatum& d, const LocalCharSpec& chi) {
    auto m = match_character(d, chi);
    if (!m) return 0;
    Cyc ip = inner_product_raw(restricted(sigma, d.D).res, *m);
    Rat r = ip.rational();
    if (r.get_den() != 1 || r < 0) throw MathError("multiplicity: non-integral inner product");
    return r.get_num().get_si();
}

long multiplicity(const SigmaSpec& sigma, const LocalGaloisDatum& d, const LocalCharSpec& chi) {
    if (sigma.delta != d.delta) throw MathError("sigma and datum over different groups");
    return multiplicity(sigma.sigma, d, chi);
}

int det_sigma_minus_one(const CharacterRep& sigma, const LocalGaloisDatum& d) {
    if (d.structure_partial) throw MathError("partial datum at " + d.str() + ": " + d.partial_reason);
    const CharacterRep& lam = restricted(sigma, d.D).determinant();
    if (trivial_on(lam, d.inertia)) return 1;
    for (auto& a : d.quad)
        if (agree_on(a.chi, lam, d.inertia))
            return hilbert_symbol(Rat(-1), a.cls.representative(), Place::finite(d.ell), d.f_base);
    throw MathError("det sigma_v is ramified without annotation support at " + d.str());
}

int det_sigma_minus_one(const SigmaSpec& sigma, const LocalGaloisDatum& d) { return det_sigma_minus_one(sigma.sigma, d); }

int det_sigma_frobenius(const SigmaSpec& sigma, const LocalGaloisDatum& d) {
    const CharacterRep& lam = restricted(sigma.sigma, d.D).determinant();
    Cyc v = lam.at(d.frobenius);
    if (v == Cyc(1)) return 1;
    if (v == Cyc(-1)) return -1;
    throw MathError("det sigma at Frobenius is not +-1");
}

bool sigma_unramified(const SigmaSpec& sigma, const LocalGaloisDatum& d) {
    if (d.structure_partial) throw MathError("partial datum at " + d.str() + ": " + d.partial_reason);
    return trivial_on(restricted(sigma.sigma, d.D).res, d.inertia);
}

// ---------------------------------------------------------------------------

bool cube_free(long m) {
    if (m == 0) return false;
    long a = m < 0 ? -m : m;
    for (long q = 2; q * q * q <= a; ++q)
        if (a % (q * q * q) == 0) return false;
    return true;
}

LocalGaloisDatum s3_kummer_local_datum(long m, long ell, long p, int f_base) {
    if (!cube_free(m) || m == 1 || m == -1) throw MathError("Kummer datum: m must be cube-free with |m| > 1");
    if (!is_prime(ell)) throw MathError("Kummer datum: ell must be prime");
    GroupPtr S3 = FiniteGroup::dihedral(6);
    // 0 = e, 1 = r, 2 = r^2, 3 = s
    Int q;
    mpz_ui_pow_ui(q.get_mpz_t(), ell, f_base);
    const bool mu3 = mod(q, 3) == 1;
    LocalGaloisDatum d;
    if (ell == 3) {
        d = make_local_datum(S3, ell, f_base, {1, 3}, {1, 3}, 0);
        d.partial = d.structure_partial = true;
        d.partial_reason = "wild prime 3 needs a supplied record";
    } else if (m % ell != 0) {
        if (mu3) {
            // m is a cube in F_q iff m^((q-1)/3) = 1; m lies in F_ell
            Int ex = (q - 1) / 3;
            long e = mod(ex, ell - 1);
            bool cube = powmod(mod(m, ell), e, ell) == 1;
            d = cube ? make_local_datum(S3, ell, f_base, {}, {}, 0) : make_local_datum(S3, ell, f_base, {1}, {}, 1);
        } else {
            d = make_local_datum(S3, ell, f_base, {3}, {}, 3);
        }
    } else {
        if (mu3) {
            d = make_local_datum(S3, ell, f_base, {1}, {1}, 0);
        } else {
            d = make_local_datum(S3, ell, f_base, {1, 3}, {1}, 3);
            d.cubic = CubicAnnotation{"2dim", restrict(character_by_name(S3, "2dim"), d.D), cube_class_mu3(Rat(m), ell)};
        }
    }
    if (d.D->local_index(3) >= 0)
        d.quad.push_back(QuadAnnotation{"sign", restrict(character_by_name(S3, "sign"), d.D),
                                        square_class(Rat(-3), Place::finite(ell))});
    d.label = std::to_string(ell);
    const bool partial = d.partial;
    validate_annotations(d);
    d.partial = d.partial || partial;
    (void)p;
    return d;
}

// ---------------------------------------------------------------------------

namespace {

Rat json_rat(const nlohmann::json& j) {
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    if (j.is_string()) {
        Rat r(j.get<std::string>());
        r.canonicalize();
        return r;
    }
    throw MathError("expected an integer or rational string");
}

SquareClass parse_square_class(const nlohmann::json& j, long ell) {
    if (j.contains("rep")) return square_class(json_rat(j.at("rep")), Place::finite(ell));
    if (j.contains("v")) {
        const auto& v = j.at("v");
        if (v.is_string() && v.get<std::string>() == "real") throw MathError("real square class in a finite-place record");
        if (!v.is_number_integer() || v.get<long>() != ell) throw MathError("square class at the wrong place");
    }
    if (ell == 2) throw MathError("square classes at 2 need a \"rep\"");
    int vp = j.value("val_parity", 0);
    std::string unit = j.value("unit", std::string("sq"));
    if (unit != "sq" && unit != "nsq") throw MathError("square class unit must be sq or nsq");
    Int r = unit == "sq" ? Int(1) : Int(nonresidue(ell));
    if (vp & 1) r *= ell;
    return square_class(Rat(r), Place::finite(ell));
}

std::vector<int> json_ints(const nlohmann::json& j) {
    std::vector<int> out;
    if (!j.is_array()) throw MathError("expected an array of element indices");
    for (auto& x : j) out.push_back(x.get<int>());
    return out;
}

}  // namespace

CharacterRep character_of_D(const LocalGaloisDatum& d, const std::string& spec) {
    if (spec.rfind("ker:", 0) == 0) {
        std::vector<int> gens;
        std::stringstream ss(spec.substr(4));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            int g = std::stoi(tok);
            int l = d.D->local_index(g);
            if (l < 0) throw MathError("kernel generator not in D: " + tok);
            gens.push_back(l);
        }
        auto K = d.D->closure(gens);
        if (static_cast<int>(K.size()) * 2 != d.D->size() || !d.D->is_normal_subset(K))
            throw MathError("'" + spec + "' is not an index-2 kernel in D");
        auto in = membership(d.D->size(), K);
        std::vector<Cyc> v(d.D->size());
        for (int g = 0; g < d.D->size(); ++g) v[g] = in[g] ? Cyc(1) : Cyc(-1);
        return character_from_elements(d.D, v, spec);
    }
    if (spec.rfind("irr:", 0) == 0) return character_by_name(d.D, spec);
    CharacterRep c = restrict(character_by_name(d.delta, spec), d.D);
    c.name = spec;
    return c;
}

CurveOverride parse_curve_override(const nlohmann::json& j) {
    CurveOverride o;
    if (j.contains("reduction")) o.reduction = j.at("reduction").get<std::string>();
    if (j.contains("e")) o.e = j.at("e").get<int>();
    if (j.contains("pg_kind")) o.pg_kind = j.at("pg_kind").get<std::string>();
    if (j.contains("minus_c6")) o.minus_c6 = json_rat(j.at("minus_c6"));
    if (j.contains("disc_min")) o.disc_min = json_rat(j.at("disc_min"));
    if (j.contains("vj")) o.vj = j.at("vj").get<int>();
    if (j.contains("a_v")) o.a_v = j.at("a_v").get<long>();
    if (j.contains("conductor_exponent")) o.conductor_exponent = j.at("conductor_exponent").get<int>();
    if (o.pg_kind && *o.pg_kind != "PGA" && *o.pg_kind != "PGNA") throw MathError("pg_kind must be PGA or PGNA");
    return o;
}

LocalGaloisDatum parse_local_datum(const nlohmann::json& rec, const GroupPtr& delta) {
    try {
        if (!rec.is_object()) throw MathError("local datum record must be an object");
        long ell = rec.contains("ell") ? rec.at("ell").get<long>() : rec.at("p").get<long>();
        if (!is_prime(ell)) throw MathError("residue characteristic must be prime");
        int f_base = 1;
        if (rec.contains("q")) {
            Int q(rec.at("q").is_string() ? rec.at("q").get<std::string>() : std::to_string(rec.at("q").get<long long>()));
            Int x = 1;
            f_base = 0;
            while (x < q) {
                x *= ell;
                ++f_base;
            }
            if (x != q || f_base == 0) throw MathError("q is not a positive power of the residue characteristic");
        }
        if (rec.contains("f_base") && rec.at("f_base").get<int>() != f_base) throw MathError("f_base disagrees with q");
        std::vector<int> Dg = rec.contains("D") ? json_ints(rec.at("D")) : std::vector<int>{};
        std::vector<int> Ig = rec.contains("I") ? json_ints(rec.at("I")) : std::vector<int>{};
        int frob = rec.value("frobenius", 0);
        LocalGaloisDatum d = make_local_datum(delta, ell, f_base, Dg, Ig, frob);
        d.label = rec.value("label", std::to_string(ell));
        if (rec.contains("quad_annotations"))
            for (auto& a : rec.at("quad_annotations")) {
                std::string spec = a.at("char").get<std::string>();
                SquareClass c = parse_square_class(a.at("square_class"), ell);
                d.quad.push_back(QuadAnnotation{spec, character_of_D(d, spec), c});
            }
        if (rec.contains("cubic_annotation")) {
            const auto& c = rec.at("cubic_annotation");
            std::string spec = c.value("char", std::string("2dim"));
            CubeClassMu3 cls;
            if (c.contains("generator")) {
                cls = cube_class_mu3(json_rat(c.at("generator")), ell);
            } else {
                cls.ell = ell;
                cls.val_mod3 = c.at("val_mod3").get<int>();
                cls.unit_class = c.value("unit_class", 0);
            }
            d.cubic = CubicAnnotation{spec, character_of_D(d, spec), cls};
        }
        if (rec.value("partial", false)) {
            d.partial = true;
            d.structure_partial = rec.value("structure_partial", false);
            d.partial_reason = rec.value("partial_reason", std::string("marked partial in record"));
        }
        if (rec.contains("overrides")) {
            const auto& o = rec.at("overrides");
            if (o.contains("E1") || o.contains("E2")) {
                if (o.contains("E1")) d.overrides[1] = parse_curve_override(o.at("E1"));
                if (o.contains("E2")) d.overrides[2] = parse_curve_override(o.at("E2"));
            } else {
                d.overrides[1] = d.overrides[2] = parse_curve_override(o);
            }
        }
        validate_annotations(d);
        return d;
    } catch (const nlohmann::json::exception& e) {
        throw MathError(std::string("local datum schema violation: ") + e.what());
    }
}

}  // namespace ecp
