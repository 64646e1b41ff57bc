#include "ecp/reptheory.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace ecp {

long CharacterRep::dim() const {
    Rat d = values[group->class_of(0)].rational();
    if (d.get_den() != 1) throw MathError("character: non-integral degree");
    return d.get_num().get_si();
}

namespace {

void same_group(const CharacterRep& a, const CharacterRep& b) {
    if (a.group != b.group) throw MathError("characters of different groups");
}

}  // namespace

CharacterRep CharacterRep::operator+(const CharacterRep& o) const {
    same_group(*this, o);
    CharacterRep r{group, values, name + "+" + o.name};
    for (size_t i = 0; i < values.size(); ++i) r.values[i] += o.values[i];
    return r;
}

CharacterRep CharacterRep::operator-(const CharacterRep& o) const {
    same_group(*this, o);
    CharacterRep r{group, values, name + "-" + o.name};
    for (size_t i = 0; i < values.size(); ++i) r.values[i] = r.values[i] - o.values[i];
    return r;
}

CharacterRep CharacterRep::operator*(const CharacterRep& o) const {
    same_group(*this, o);
    CharacterRep r{group, values, name + "*" + o.name};
    for (size_t i = 0; i < values.size(); ++i) r.values[i] *= o.values[i];
    return r;
}

CharacterRep CharacterRep::scaled(long k) const {
    CharacterRep r = *this;
    for (auto& v : r.values) v *= Cyc(k);
    return r;
}

CharacterRep CharacterRep::dual() const {
    CharacterRep r = *this;
    for (auto& v : r.values) v = v.conj();
    r.name = name + "^*";
    return r;
}

bool CharacterRep::operator==(const CharacterRep& o) const { return group == o.group && values == o.values; }

CharacterRep character_from_elements(const GroupPtr& G, const std::vector<Cyc>& vals, std::string name) {
    if (static_cast<int>(vals.size()) != G->size()) throw MathError("character: wrong number of values");
    CharacterRep chi{G, {}, std::move(name)};
    chi.values.resize(G->num_classes());
    for (int c = 0; c < G->num_classes(); ++c) {
        const auto& mem = G->class_members(c);
        chi.values[c] = vals[mem[0]];
        for (int g : mem)
            if (vals[g] != chi.values[c]) throw MathError("character: not a class function");
    }
    return chi;
}

CharacterRep trivial_character(const GroupPtr& G) {
    return CharacterRep{G, std::vector<Cyc>(G->num_classes(), Cyc(1)), "triv"};
}

CharacterRep regular_character(const GroupPtr& G) {
    std::vector<Cyc> v(G->num_classes(), Cyc(0));
    v[G->class_of(0)] = Cyc(G->size());
    return CharacterRep{G, v, "reg"};
}

Cyc inner_product_raw(const CharacterRep& a, const CharacterRep& b) {
    same_group(a, b);
    Cyc s(0);
    for (int c = 0; c < a.group->num_classes(); ++c)
        s += Cyc(a.group->class_size(c)) * a.values[c] * b.values[c].conj();
    return s / Rat(a.group->size());
}

long inner_product(const CharacterRep& a, const CharacterRep& b) {
    Cyc s = inner_product_raw(a, b);
    if (!s.is_rational()) throw MathError("inner product is not rational (non-character input)");
    Rat r = s.rational();
    if (r.get_den() != 1 || r < 0) throw MathError("inner product is not a nonnegative integer: " + r.get_str());
    return r.get_num().get_si();
}

std::vector<CharacterRep> linear_characters(const GroupPtr& G) {
    const int n = G->size(), e = G->exponent();
    std::vector<int> gens = G->generators();
    std::vector<CharacterRep> out;
    std::vector<int> k(gens.size(), 0);
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i < gens.size()) {
            for (int v = 0; v < e; ++v) {
                k[i] = v;
                rec(i + 1);
            }
            return;
        }
        std::vector<int> val(n, -1);
        val[0] = 0;
        std::vector<int> queue{0};
        for (size_t q = 0; q < queue.size(); ++q) {
            int x = queue[q];
            for (size_t j = 0; j < gens.size(); ++j) {
                int y = G->mul(x, gens[j]);
                int w = (val[x] + k[j]) % e;
                if (val[y] < 0) {
                    val[y] = w;
                    queue.push_back(y);
                } else if (val[y] != w) {
                    return;
                }
            }
        }
        std::vector<Cyc> vals(n);
        for (int g = 0; g < n; ++g) vals[g] = Cyc::zeta(e, val[g]);
        out.push_back(character_from_elements(G, vals, out.empty() ? "triv" : "lin" + std::to_string(out.size())));
    };
    rec(0);
    // trivial first
    auto triv = std::find_if(out.begin(), out.end(), [&](const CharacterRep& c) {
        return c == trivial_character(G);
    });
    if (triv != out.begin() && triv != out.end()) std::iter_swap(out.begin(), triv);
    for (size_t i = 0; i < out.size(); ++i) out[i].name = i == 0 ? "triv" : "lin" + std::to_string(i);
    return out;
}

namespace {

std::vector<CharacterRep> table_cyclic(const GroupPtr& G) {
    const int n = G->size();
    std::vector<CharacterRep> out;
    for (int j = 0; j < n; ++j) {
        std::vector<Cyc> v(n);
        for (int k = 0; k < n; ++k) v[k] = Cyc::zeta(n, static_cast<long>(j) * k);
        out.push_back(character_from_elements(G, v, j == 0 ? "triv" : "chi" + std::to_string(j)));
    }
    return out;
}

std::vector<CharacterRep> table_dihedral(const GroupPtr& G) {
    const int m = G->family_param(), n = G->size();
    std::vector<CharacterRep> out;
    auto lin = [&](int rot_sign, int refl_sign, const std::string& name) {
        std::vector<Cyc> v(n);
        for (int x = 0; x < n; ++x) {
            int e = x / m, k = x % m;
            long s = (rot_sign < 0 && k % 2) ? -1 : 1;
            if (e) s *= refl_sign;
            v[x] = Cyc(s);
        }
        out.push_back(character_from_elements(G, v, name));
    };
    lin(1, 1, "triv");
    lin(1, -1, "sign");
    if (m % 2 == 0) {
        lin(-1, 1, "alt");
        lin(-1, -1, "altsign");
    }
    for (int j = 1; 2 * j < m; ++j) {
        std::vector<Cyc> v(n);
        for (int x = 0; x < n; ++x) {
            int e = x / m, k = x % m;
            v[x] = e ? Cyc(0) : Cyc::zeta(m, static_cast<long>(j) * k) + Cyc::zeta(m, -static_cast<long>(j) * k);
        }
        out.push_back(character_from_elements(G, v, std::string("2dim-") + static_cast<char>('a' + j - 1)));
    }
    return out;
}

std::vector<CharacterRep> table_sl2f3(const GroupPtr& G) {
    const int n = G->size();
    int t = -1;
    for (int g = 0; g < n; ++g)
        if (G->order_of(g) == 3) {
            t = g;
            break;
        }
    auto in_q8 = [&](int g) {
        int o = G->order_of(g);
        return o == 1 || o == 2 || o == 4;
    };
    std::vector<int> k(n);
    for (int g = 0; g < n; ++g) {
        k[g] = -1;
        for (int j = 0; j < 3; ++j)
            if (in_q8(G->mul(g, G->pow(t, -j)))) k[g] = j;
        if (k[g] < 0) throw MathError("SL2F3: quotient map failed");
    }
    std::vector<Cyc> triv(n), l1(n), l2(n), r2(n), r3(n);
    for (int g = 0; g < n; ++g) {
        triv[g] = Cyc(1);
        l1[g] = Cyc::zeta(3, k[g]);
        l2[g] = Cyc::zeta(3, 2 * k[g]);
        switch (G->order_of(g)) {
            case 1: r2[g] = Cyc(2); r3[g] = Cyc(3); break;
            case 2: r2[g] = Cyc(-2); r3[g] = Cyc(3); break;
            case 4: r2[g] = Cyc(0); r3[g] = Cyc(-1); break;
            case 3: r2[g] = Cyc(-1); r3[g] = Cyc(0); break;
            case 6: r2[g] = Cyc(1); r3[g] = Cyc(0); break;
            default: throw MathError("SL2F3: unexpected element order");
        }
    }
    std::vector<Cyc> r2l1(n), r2l2(n);
    for (int g = 0; g < n; ++g) {
        r2l1[g] = r2[g] * l1[g];
        r2l2[g] = r2[g] * l2[g];
    }
    return {character_from_elements(G, triv, "triv"),    character_from_elements(G, l1, "lambda"),
            character_from_elements(G, l2, "lambda2"),   character_from_elements(G, r2, "2dim"),
            character_from_elements(G, r2l1, "2dim-lambda"), character_from_elements(G, r2l2, "2dim-lambda2"),
            character_from_elements(G, r3, "3dim")};
}

std::vector<CharacterRep> table_gl2f3(const GroupPtr& G) {
    const int n = G->size();
    const Cyc isqrt2 = Cyc::zeta(8, 1) + Cyc::zeta(8, 3);
    std::vector<std::vector<Cyc>> v(8, std::vector<Cyc>(n));
    for (int g = 0; g < n; ++g) {
        auto m = G->matrix(g);
        int det = ((m[0] * m[3] - m[1] * m[2]) % 3 + 3) % 3;
        int tr = (m[0] + m[3]) % 3;
        int o = G->order_of(g);
        // columns: 1, -1, involution(det -1), order 3, order 4, order 6, order 8 (tr 1), order 8 (tr 2)
        int col;
        if (o == 1) col = 0;
        else if (o == 2) col = (det == 1) ? 1 : 2;
        else if (o == 3) col = 3;
        else if (o == 4) col = 4;
        else if (o == 6) col = 5;
        else if (o == 8) col = (tr == 1) ? 6 : 7;
        else throw MathError("GL2F3: unexpected element order");
        static const long t_det[8] = {1, 1, -1, 1, 1, 1, -1, -1};
        static const long t_s3[8] = {2, 2, 0, -1, 2, -1, 0, 0};
        static const long t_3[8] = {3, 3, 1, 0, -1, 0, -1, -1};
        static const long t_4[8] = {4, -4, 0, 1, 0, -1, 0, 0};
        static const long t_2f[6] = {2, -2, 0, -1, 0, 1};
        v[0][g] = Cyc(1);
        v[1][g] = Cyc(t_det[col]);
        v[2][g] = Cyc(t_s3[col]);
        if (col < 6) {
            v[3][g] = Cyc(t_2f[col]);
            v[4][g] = Cyc(t_2f[col]);
        } else {
            v[3][g] = col == 6 ? isqrt2 : -isqrt2;
            v[4][g] = col == 6 ? -isqrt2 : isqrt2;
        }
        v[5][g] = Cyc(t_3[col]);
        v[6][g] = Cyc(t_3[col] * t_det[col]);
        v[7][g] = Cyc(t_4[col]);
    }
    const char* names[8] = {"triv", "det", "2dim-s3", "2dim-a", "2dim-b", "3dim", "3dim-det", "4dim"};
    std::vector<CharacterRep> out;
    for (int i = 0; i < 8; ++i) out.push_back(character_from_elements(G, v[i], names[i]));
    return out;
}

long norm2(const CharacterRep& c) {
    Rat r = inner_product_raw(c, c).rational();
    if (r.get_den() != 1) throw MathError("character table: non-integral norm");
    return r.get_num().get_si();
}

std::vector<CharacterRep> table_by_restriction(const GroupPtr& G) {
    std::vector<CharacterRep> irr = linear_characters(G);
    auto covered = [&]() {
        long s = 0;
        for (auto& c : irr) s += c.dim() * c.dim();
        return s;
    };
    if (covered() == G->size()) return irr;
    std::vector<CharacterRep> cands;
    for (auto& chi : character_table(G->parent())) cands.push_back(restrict(chi, G));
    for (size_t round = 0; round < 4 && covered() < G->size(); ++round) {
        std::vector<CharacterRep> next;
        for (auto& psi : cands) {
            CharacterRep r = psi;
            for (auto& chi : irr) {
                long m = inner_product(psi, chi);
                if (m) r = r - chi.scaled(m);
            }
            if (r.values[G->class_of(0)].is_zero()) continue;
            if (norm2(r) == 1) {
                r.name = "irr" + std::to_string(irr.size());
                irr.push_back(r);
            } else {
                for (auto& chi : irr) next.push_back(r * chi);
            }
        }
        cands = std::move(next);
    }
    if (covered() != G->size()) throw MathError("character table unsupported for " + G->name());
    return irr;
}

}  // namespace

std::vector<CharacterRep> character_table(const GroupPtr& G) {
    if (G->size() > 48) throw MathError("character_table: unsupported group order");
    switch (G->family()) {
        case GroupFamily::Cyclic: return table_cyclic(G);
        case GroupFamily::Dihedral: return table_dihedral(G);
        case GroupFamily::SL2F3: return table_sl2f3(G);
        case GroupFamily::GL2F3: return table_gl2f3(G);
        case GroupFamily::Subgroup: return table_by_restriction(G);
    }
    throw MathError("character_table: unsupported group");
}

CharacterRep restrict(const CharacterRep& chi, const GroupPtr& H) {
    if (H == chi.group) return chi;
    if (H->parent() != chi.group) throw MathError("restrict: not a subgroup of the character's group");
    std::vector<Cyc> v(H->size());
    for (int h = 0; h < H->size(); ++h) v[h] = chi.at(H->embed(h));
    return character_from_elements(H, v, chi.name + "|");
}

int frobenius_schur(const CharacterRep& chi) {
    const auto& G = chi.group;
    Cyc s(0);
    for (int g = 0; g < G->size(); ++g) s += chi.at(G->mul(g, g));
    Rat r = (s / Rat(G->size())).rational();
    if (r != 0 && r != 1 && r != -1) throw MathError("frobenius_schur: input is not irreducible");
    return static_cast<int>(r.get_num().get_si());
}

CharacterRep det_character(const CharacterRep& chi) {
    const auto& G = chi.group;
    const long d = chi.dim();
    std::vector<Cyc> v(G->size());
    for (int g = 0; g < G->size(); ++g) {
        Cyc x = chi.at(g);
        if (d == 1) {
            v[g] = x;
        } else if (d == 2) {
            v[g] = (x * x - chi.at(G->mul(g, g))) / Rat(2);
        } else if (d == 3) {
            Cyc x2 = chi.at(G->pow(g, 2)), x3 = chi.at(G->pow(g, 3));
            v[g] = (x * x * x - Cyc(3) * x2 * x + Cyc(2) * x3) / Rat(6);
        } else {
            throw MathError("det_character: dimension > 3 unsupported");
        }
    }
    for (int a = 0; a < G->size(); ++a)
        for (int b = 0; b < G->size(); ++b)
            if (v[G->mul(a, b)] != v[a] * v[b]) throw MathError("det_character: result is not multiplicative");
    return character_from_elements(G, v, "det(" + chi.name + ")");
}

CharacterRep character_by_name(const GroupPtr& G, const std::string& name) {
    auto tab = character_table(G);
    if (name.rfind("irr:", 0) == 0) {
        size_t k = std::stoul(name.substr(4));
        if (k >= tab.size()) throw MathError("character index out of range: " + name);
        return tab[k];
    }
    for (auto& c : tab)
        if (c.name == name) return c;
    if (name == "2dim") {
        std::vector<CharacterRep> two;
        for (auto& c : tab)
            if (c.dim() == 2) two.push_back(c);
        if (two.size() == 1) return two[0];
        throw MathError("character name '2dim' is ambiguous for " + G->name());
    }
    throw MathError("unknown character '" + name + "' for " + G->name());
}

}  // namespace ecp
