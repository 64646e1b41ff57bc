#include "ecp/reptheory.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>

namespace ecp {

namespace {

// one shared instance per named group, so characters built in different places can be compared
GroupPtr interned(const std::string& key, const std::function<GroupPtr()>& make) {
    static std::mutex mu;
    static std::map<std::string, GroupPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache[key] = make();
}

std::vector<std::array<int, 4>> f3_matrices(bool special) {
    std::vector<std::array<int, 4>> out;
    out.push_back({1, 0, 0, 1});
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int d = 0; d < 3; ++d) {
                    std::array<int, 4> m{a, b, c, d};
                    if (m == out[0]) continue;
                    int det = ((a * d - b * c) % 3 + 3) % 3;
                    if (det == 0 || (special && det != 1)) continue;
                    out.push_back(m);
                }
    return out;
}

std::array<int, 4> f3_mul(const std::array<int, 4>& x, const std::array<int, 4>& y) {
    return {(x[0] * y[0] + x[1] * y[2]) % 3, (x[0] * y[1] + x[1] * y[3]) % 3, (x[2] * y[0] + x[3] * y[2]) % 3,
            (x[2] * y[1] + x[3] * y[3]) % 3};
}

}  // namespace

void FiniteGroup::finalize() {
    const int n = n_;
    for (int g = 0; g < n; ++g)
        if (mul(0, g) != g || mul(g, 0) != g) throw MathError("group: element 0 is not the identity");
    inv_.assign(n, -1);
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            if (mul(g, h) == 0) {
                inv_[g] = h;
                break;
            }
    for (int g = 0; g < n; ++g)
        if (inv_[g] < 0 || mul(inv_[g], g) != 0) throw MathError("group: missing inverse");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw MathError("group: not associative");
    ord_.assign(n, 0);
    exponent_ = 1;
    for (int g = 0; g < n; ++g) {
        int k = 1, x = g;
        while (x != 0) {
            x = mul(x, g);
            ++k;
        }
        ord_[g] = k;
        exponent_ = std::lcm(exponent_, k);
    }
    class_of_.assign(n, -1);
    classes_.clear();
    for (int g = 0; g < n; ++g) {
        if (class_of_[g] >= 0) continue;
        std::vector<int> cls;
        for (int h = 0; h < n; ++h) {
            int c = mul(mul(h, g), inv_[h]);
            if (class_of_[c] < 0) {
                class_of_[c] = static_cast<int>(classes_.size());
                cls.push_back(c);
            }
        }
        std::sort(cls.begin(), cls.end());
        classes_.push_back(cls);
    }
    size_t total = 0;
    for (auto& c : classes_) total += c.size();
    if (total != static_cast<size_t>(n)) throw MathError("group: class equation fails");
}

GroupPtr FiniteGroup::cyclic(int n) {
    if (n < 1) throw MathError("Cyclic(n): n >= 1");
    return interned("C" + std::to_string(n), [n] {
        auto G = std::shared_ptr<FiniteGroup>(new FiniteGroup());
        G->n_ = n;
        G->table_.resize(n * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) G->table_[a * n + b] = (a + b) % n;
        G->family_ = GroupFamily::Cyclic;
        G->param_ = n;
        G->name_ = "C" + std::to_string(n);
        G->finalize();
        return G;
    });
}

GroupPtr FiniteGroup::dihedral(int order) {
    if (order < 4 || order % 2) throw MathError("Dihedral(2n): need even order >= 4");
    return interned("D" + std::to_string(order), [order] {
        const int m = order / 2;
        auto G = std::shared_ptr<FiniteGroup>(new FiniteGroup());
        G->n_ = order;
        G->table_.resize(order * order);
        // index e*m + k  <->  s^e r^k
        for (int x = 0; x < order; ++x)
            for (int y = 0; y < order; ++y) {
                int a = x / m, b = x % m, c = y / m, d = y % m;
                int rot = ((c ? -b : b) + d) % m;
                if (rot < 0) rot += m;
                G->table_[x * order + y] = ((a + c) % 2) * m + rot;
            }
        G->family_ = GroupFamily::Dihedral;
        G->param_ = m;
        G->name_ = (order == 6) ? "S3" : "D" + std::to_string(order);
        G->finalize();
        return G;
    });
}

GroupPtr FiniteGroup::sl2f3() {
    return interned("SL2F3", [] {
        auto G = std::shared_ptr<FiniteGroup>(new FiniteGroup());
        G->mats_ = f3_matrices(true);
        G->family_ = GroupFamily::SL2F3;
        G->name_ = "SL2F3";
        const int n = static_cast<int>(G->mats_.size());
        G->n_ = n;
        std::map<std::array<int, 4>, int> idx;
        for (int i = 0; i < n; ++i) idx[G->mats_[i]] = i;
        G->table_.resize(n * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) G->table_[a * n + b] = idx.at(f3_mul(G->mats_[a], G->mats_[b]));
        G->finalize();
        return G;
    });
}

GroupPtr FiniteGroup::gl2f3() {
    return interned("GL2F3", [] {
        auto G = std::shared_ptr<FiniteGroup>(new FiniteGroup());
        G->mats_ = f3_matrices(false);
        G->family_ = GroupFamily::GL2F3;
        G->name_ = "GL2F3";
        const int n = static_cast<int>(G->mats_.size());
        G->n_ = n;
        std::map<std::array<int, 4>, int> idx;
        for (int i = 0; i < n; ++i) idx[G->mats_[i]] = i;
        G->table_.resize(n * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) G->table_[a * n + b] = idx.at(f3_mul(G->mats_[a], G->mats_[b]));
        G->finalize();
        return G;
    });
}

GroupPtr FiniteGroup::by_name(const std::string& name) {
    if (name == "S3") return dihedral(6);
    if (name == "SL2F3") return sl2f3();
    if (name == "GL2F3") return gl2f3();
    try {
        if (name.size() > 1 && name[0] == 'C') return cyclic(std::stoi(name.substr(1)));
        if (name.size() > 1 && name[0] == 'D') return dihedral(std::stoi(name.substr(1)));
    } catch (const std::invalid_argument&) {
    }
    throw MathError("unknown group name: " + name);
}

std::vector<int> FiniteGroup::closure(const std::vector<int>& gens) const {
    std::vector<char> in(n_, 0);
    std::vector<int> out{0};
    in[0] = 1;
    for (size_t i = 0; i < out.size(); ++i)
        for (int g : gens) {
            if (g < 0 || g >= n_) throw MathError("subgroup generator out of range");
            int x = mul(out[i], g);
            if (!in[x]) {
                in[x] = 1;
                out.push_back(x);
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

GroupPtr FiniteGroup::subgroup(const GroupPtr& parent, const std::vector<int>& gens) {
    std::vector<int> elems = parent->closure(gens);  // sorted, 0 first
    auto H = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    const int n = static_cast<int>(elems.size());
    H->n_ = n;
    H->parent_ = parent;
    H->embed_ = elems;
    H->local_.assign(parent->size(), -1);
    for (int i = 0; i < n; ++i) H->local_[elems[i]] = i;
    H->table_.resize(n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) H->table_[a * n + b] = H->local_[parent->mul(elems[a], elems[b])];
    H->family_ = GroupFamily::Subgroup;
    H->name_ = "sub" + std::to_string(n) + "(" + parent->name() + ")";
    H->finalize();
    return H;
}

int FiniteGroup::local_index(int parent_elem) const {
    if (local_.empty()) return parent_elem;
    return local_[parent_elem];
}

int FiniteGroup::pow(int a, long k) const {
    k %= ord_[a];
    if (k < 0) k += ord_[a];
    int r = 0;
    for (long i = 0; i < k; ++i) r = mul(r, a);
    return r;
}

bool FiniteGroup::abelian() const {
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

bool FiniteGroup::is_normal_subset(const std::vector<int>& elems) const {
    std::vector<char> in(n_, 0);
    for (int e : elems) in[e] = 1;
    for (int g = 0; g < n_; ++g)
        for (int h : elems)
            if (!in[mul(mul(g, h), inv_[g])]) return false;
    return true;
}

std::vector<int> FiniteGroup::generators() const {
    std::vector<int> order(n_);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return ord_[a] > ord_[b]; });
    std::vector<int> gens;
    std::vector<int> span{0};
    for (int g : order) {
        if (static_cast<int>(span.size()) == n_) break;
        if (std::binary_search(span.begin(), span.end(), g)) continue;
        gens.push_back(g);
        span = closure(gens);
    }
    return gens;
}

}  // namespace ecp
