#pragma once

#include "ecp/numtheory.hpp"

#include <array>
#include <memory>
#include <string>
#include <vector>

namespace ecp {

// Element of Q(zeta_n), stored as the remainder modulo Phi_n in the power basis.
class Cyc {
public:
    Cyc() : n_(1), c_{Rat(0)} {}
    Cyc(long v) : n_(1), c_{Rat(v)} {}
    Cyc(const Rat& v) : n_(1), c_{v} {}
    static Cyc zeta(long n, long k = 1);

    long order() const { return n_; }
    const std::vector<Rat>& coeffs() const { return c_; }
    Cyc lifted(long N) const;  // same number written in Q(zeta_N), n | N

    Cyc operator+(const Cyc& o) const;
    Cyc operator-(const Cyc& o) const;
    Cyc operator-() const;
    Cyc operator*(const Cyc& o) const;
    Cyc operator/(const Rat& r) const;
    Cyc& operator+=(const Cyc& o) { return *this = *this + o; }
    Cyc& operator*=(const Cyc& o) { return *this = *this * o; }
    bool operator==(const Cyc& o) const;
    bool operator!=(const Cyc& o) const { return !(*this == o); }

    Cyc conj() const;
    Cyc galois(long k) const;  // zeta -> zeta^k, gcd(k, n) = 1
    bool is_rational() const;
    Rat rational() const;  // throws unless rational
    bool is_zero() const;
    Rat norm() const;  // field norm down to Q
    std::string str() const;

private:
    Cyc(long n, std::vector<Rat> c) : n_(n), c_(std::move(c)) {}
    static Cyc from_exponents(long n, const std::vector<Rat>& full);
    long n_;
    std::vector<Rat> c_;
};

const std::vector<long>& cyclotomic_poly(long n);

enum class GroupFamily { Cyclic, Dihedral, SL2F3, GL2F3, Subgroup };

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

class FiniteGroup {
public:
    static GroupPtr cyclic(int n);
    static GroupPtr dihedral(int order);  // order 2n, n >= 2
    static GroupPtr sl2f3();
    static GroupPtr gl2f3();
    static GroupPtr by_name(const std::string& name);  // "S3", "D10", "C5", "SL2F3", "GL2F3"

    // subgroup generated by elements of this group; elements renumbered with identity at 0
    static GroupPtr subgroup(const GroupPtr& parent, const std::vector<int>& gens);

    int size() const { return n_; }
    int mul(int a, int b) const { return table_[a * n_ + b]; }
    int inv(int a) const { return inv_[a]; }
    int pow(int a, long k) const;
    int order_of(int a) const { return ord_[a]; }
    int exponent() const { return exponent_; }
    int identity() const { return 0; }
    bool abelian() const;

    int num_classes() const { return static_cast<int>(classes_.size()); }
    int class_of(int g) const { return class_of_[g]; }
    const std::vector<int>& class_members(int c) const { return classes_[c]; }
    int class_size(int c) const { return static_cast<int>(classes_[c].size()); }

    GroupFamily family() const { return family_; }
    int family_param() const { return param_; }
    const std::string& name() const { return name_; }

    // subgroup bookkeeping: parent group and index of each element in it
    const GroupPtr& parent() const { return parent_; }
    int embed(int g) const { return embed_.empty() ? g : embed_[g]; }
    int local_index(int parent_elem) const;  // -1 if not in this subgroup
    // generated subgroup as element set of this group
    std::vector<int> closure(const std::vector<int>& gens) const;
    bool is_normal_subset(const std::vector<int>& elems) const;
    // small generating set
    std::vector<int> generators() const;

    // for matrix families: entries (a,b,c,d) over F_3
    std::array<int, 4> matrix(int g) const { return mats_.at(g); }

private:
    FiniteGroup() = default;
    void finalize();
    int n_ = 0;
    std::vector<int> table_, inv_, ord_, class_of_;
    std::vector<std::vector<int>> classes_;
    int exponent_ = 1;
    GroupFamily family_ = GroupFamily::Cyclic;
    int param_ = 0;
    std::string name_;
    GroupPtr parent_;
    std::vector<int> embed_, local_;
    std::vector<std::array<int, 4>> mats_;
};

struct CharacterRep {
    GroupPtr group;
    std::vector<Cyc> values;  // per conjugacy class
    std::string name;

    Cyc at(int g) const { return values[group->class_of(g)]; }
    long dim() const;
    CharacterRep operator+(const CharacterRep& o) const;
    CharacterRep operator-(const CharacterRep& o) const;
    CharacterRep operator*(const CharacterRep& o) const;
    CharacterRep scaled(long k) const;
    CharacterRep dual() const;
    bool operator==(const CharacterRep& o) const;
};

CharacterRep trivial_character(const GroupPtr& G);
CharacterRep regular_character(const GroupPtr& G);
// character from element-indexed values (must be a class function)
CharacterRep character_from_elements(const GroupPtr& G, const std::vector<Cyc>& vals, std::string name = "");

std::vector<CharacterRep> character_table(const GroupPtr& G);
std::vector<CharacterRep> linear_characters(const GroupPtr& G);

Cyc inner_product_raw(const CharacterRep& a, const CharacterRep& b);
long inner_product(const CharacterRep& a, const CharacterRep& b);
CharacterRep restrict(const CharacterRep& chi, const GroupPtr& H);
int frobenius_schur(const CharacterRep& chi);
CharacterRep det_character(const CharacterRep& chi);
// lookup by name ("2dim", "2dim-a", "sign", ...) or "irr:<k>"
CharacterRep character_by_name(const GroupPtr& G, const std::string& name);

}  // namespace ecp
