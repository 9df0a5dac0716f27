#include "qtwist/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace qtw {

void FiniteGroup::finish() {
    if (m_ < 1) throw Error("group order must be positive");
    if (m_ > order_cap)
        throw Error("group order " + std::to_string(m_) + " exceeds cap " +
                    std::to_string(order_cap));
    // identity: the spec for tables pins index 0; the generated constructors
    // also place it there.  Verify rather than search.
    e_ = 0;
    for (int a = 0; a < m_; ++a)
        if (op(e_, a) != a || op(a, e_) != a)
            throw Error("element 0 is not an identity (fails at element " + std::to_string(a) + ")");
    inv_.assign(m_, -1);
    for (int a = 0; a < m_; ++a) {
        for (int b = 0; b < m_; ++b) {
            if (op(a, b) == e_ && op(b, a) == e_) {
                inv_[a] = b;
                break;
            }
        }
        if (inv_[a] < 0) throw Error("element " + std::to_string(a) + " has no inverse");
    }
    validate();
}

void FiniteGroup::validate() const {
    for (int a = 0; a < m_; ++a) {
        std::vector<char> seen_row(m_, 0), seen_col(m_, 0);
        for (int b = 0; b < m_; ++b) {
            int r = op(a, b), c = op(b, a);
            if (r < 0 || r >= m_ || c < 0 || c >= m_)
                throw Error("table entry out of range at (" + std::to_string(a) + "," +
                            std::to_string(b) + ")");
            if (seen_row[r]++)
                throw Error("row " + std::to_string(a) + " repeats element " + std::to_string(r));
            if (seen_col[c]++)
                throw Error("column " + std::to_string(a) + " repeats element " + std::to_string(c));
        }
    }
    for (int a = 0; a < m_; ++a)
        for (int b = 0; b < m_; ++b) {
            int ab = op(a, b);
            for (int c = 0; c < m_; ++c)
                if (op(ab, c) != op(a, op(b, c)))
                    throw Error("associativity fails at (" + std::to_string(a) + "," +
                                std::to_string(b) + "," + std::to_string(c) + ")");
        }
}

FiniteGroup FiniteGroup::cyclic(int n) {
    if (n < 1) throw Error("cyclic group order must be positive");
    FiniteGroup G;
    G.m_ = n;
    G.table_.resize(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) G.table_[static_cast<size_t>(a) * n + b] = (a + b) % n;
    G.finish();
    return G;
}

FiniteGroup FiniteGroup::direct_product(const std::vector<int>& orders) {
    if (orders.empty()) throw Error("direct product needs at least one factor");
    long m = 1;
    for (int n : orders) {
        if (n < 1) throw Error("cyclic factor order must be positive");
        m *= n;
        if (m > order_cap)
            throw Error("group order " + std::to_string(m) + " exceeds cap " +
                        std::to_string(order_cap));
    }
    // mixed-radix encoding, first factor most significant
    auto encode = [&](const std::vector<int>& digits) {
        int idx = 0;
        for (size_t i = 0; i < orders.size(); ++i) idx = idx * orders[i] + digits[i];
        return idx;
    };
    auto decode = [&](int idx) {
        std::vector<int> digits(orders.size());
        for (size_t i = orders.size(); i-- > 0;) {
            digits[i] = idx % orders[i];
            idx /= orders[i];
        }
        return digits;
    };
    FiniteGroup G;
    G.m_ = static_cast<int>(m);
    G.table_.resize(static_cast<size_t>(m) * m);
    for (int a = 0; a < m; ++a) {
        std::vector<int> da = decode(a);
        for (int b = 0; b < m; ++b) {
            std::vector<int> db = decode(b);
            std::vector<int> dc(orders.size());
            for (size_t i = 0; i < orders.size(); ++i) dc[i] = (da[i] + db[i]) % orders[i];
            G.table_[static_cast<size_t>(a) * m + b] = encode(dc);
        }
    }
    G.finish();
    return G;
}

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<int>>& table) {
    FiniteGroup G;
    G.m_ = static_cast<int>(table.size());
    if (G.m_ < 1) throw Error("group table is empty");
    G.table_.clear();
    G.table_.reserve(static_cast<size_t>(G.m_) * G.m_);
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != G.m_)
            throw Error("group table is not square");
        G.table_.insert(G.table_.end(), row.begin(), row.end());
    }
    G.finish();
    return G;
}

int FiniteGroup::power(int g, long k) const {
    if (k < 0) return power(inverse(g), -k);
    int acc = e_;
    int base = g;
    unsigned long e = static_cast<unsigned long>(k);
    while (e > 0) {
        if (e & 1UL) acc = op(acc, base);
        e >>= 1;
        if (e > 0) base = op(base, base);
    }
    return acc;
}

int FiniteGroup::element_order(int g) const {
    int x = g;
    for (int k = 1; k <= m_; ++k) {
        if (x == e_) return k;
        x = op(x, g);
    }
    throw Error("internal: element order not found");
}

int FiniteGroup::exponent() const {
    long l = 1;
    for (int g = 0; g < m_; ++g) l = std::lcm(l, static_cast<long>(element_order(g)));
    return static_cast<int>(l);
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < m_; ++a)
        for (int b = a + 1; b < m_; ++b)
            if (op(a, b) != op(b, a)) return false;
    return true;
}

bool FiniteGroup::is_central(int g) const {
    for (int a = 0; a < m_; ++a)
        if (op(g, a) != op(a, g)) return false;
    return true;
}

bool Subgroup::contains(int g) const {
    return std::binary_search(members.begin(), members.end(), g);
}

int Subgroup::index_of(int g) const {
    auto it = std::lower_bound(members.begin(), members.end(), g);
    if (it == members.end() || *it != g) return -1;
    return static_cast<int>(it - members.begin());
}

Subgroup subgroup_generated(const FiniteGroup& G, const std::vector<int>& generators) {
    for (int g : generators)
        if (g < 0 || g >= G.order())
            throw Error("generator index " + std::to_string(g) + " out of range");
    std::set<int> closure{G.identity()};
    std::vector<int> frontier{G.identity()};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int h : frontier) {
            for (int g : generators) {
                int v = G.op(h, g);
                if (closure.insert(v).second) next.push_back(v);
                int w = G.op(h, G.inverse(g));
                if (closure.insert(w).second) next.push_back(w);
            }
        }
        frontier = std::move(next);
    }
    Subgroup H;
    H.members.assign(closure.begin(), closure.end());
    H.abelian = true;
    for (size_t i = 0; i < H.members.size() && H.abelian; ++i)
        for (size_t j = i + 1; j < H.members.size(); ++j)
            if (G.op(H.members[i], H.members[j]) != G.op(H.members[j], H.members[i])) {
                H.abelian = false;
                break;
            }
    H.central = true;
    for (int h : H.members)
        if (!G.is_central(h)) {
            H.central = false;
            break;
        }
    return H;
}

std::vector<int> coset_representatives(const FiniteGroup& G, const Subgroup& H) {
    if (H.members.empty() || !H.contains(G.identity()))
        throw Error("coset decomposition: member list is not a subgroup");
    std::vector<char> covered(G.order(), 0);
    std::vector<int> reps;
    for (int g = 0; g < G.order(); ++g) {
        if (covered[g]) continue;
        reps.push_back(g);
        for (int h : H.members) {
            int v = G.op(g, h);
            if (covered[v])
                throw Error("coset decomposition: cosets overlap, member list is not a subgroup");
            covered[v] = 1;
        }
    }
    return reps; // g = identity is hit first, so the identity coset leads
}

int LocalGroup::local_index(int parent_index) const {
    for (size_t i = 0; i < to_parent.size(); ++i)
        if (to_parent[i] == parent_index) return static_cast<int>(i);
    return -1;
}

LocalGroup subgroup_as_group(const FiniteGroup& G, const Subgroup& H) {
    // local index 0 must be the identity; remaining members keep parent order
    std::vector<int> to_parent;
    to_parent.push_back(G.identity());
    for (int h : H.members)
        if (h != G.identity()) to_parent.push_back(h);
    std::vector<std::vector<int>> table(to_parent.size(), std::vector<int>(to_parent.size()));
    for (size_t i = 0; i < to_parent.size(); ++i)
        for (size_t j = 0; j < to_parent.size(); ++j) {
            int p = G.op(to_parent[i], to_parent[j]);
            int local = -1;
            for (size_t k = 0; k < to_parent.size(); ++k)
                if (to_parent[k] == p) {
                    local = static_cast<int>(k);
                    break;
                }
            if (local < 0) throw Error("member list is not closed under the product");
            table[i][j] = local;
        }
    LocalGroup out{FiniteGroup::from_table(table), to_parent};
    return out;
}

Character operator*(const Character& a, const Character& b) {
    if (a.size() != b.size()) throw Error("character product: size mismatch");
    std::vector<Cyclotomic> v(a.values());
    for (int i = 0; i < b.size(); ++i) v[i] *= b.value(i);
    return Character(std::move(v));
}

Character Character::pow(long k) const {
    std::vector<Cyclotomic> v;
    v.reserve(v_.size());
    for (const auto& x : v_) v.push_back(x.pow(k));
    return Character(std::move(v));
}

bool Character::operator==(const Character& o) const {
    if (size() != o.size()) return false;
    for (int i = 0; i < size(); ++i)
        if (v_[i] != o.v_[i]) return false;
    return true;
}

bool character_validate(const FiniteGroup& G, const Character& chi, std::string* witness) {
    if (chi.size() != G.order()) {
        if (witness) *witness = "value vector length != group order";
        return false;
    }
    if (!chi.value(G.identity()).is_one()) {
        if (witness) *witness = "chi(identity) != 1";
        return false;
    }
    for (int a = 0; a < G.order(); ++a)
        for (int b = 0; b < G.order(); ++b)
            if (chi.value(G.op(a, b)) != chi.value(a) * chi.value(b)) {
                if (witness)
                    *witness = "chi(" + std::to_string(a) + "*" + std::to_string(b) +
                               ") != chi(" + std::to_string(a) + ")*chi(" + std::to_string(b) + ")";
                return false;
            }
    return true;
}

std::vector<Character> character_group_of(const FiniteGroup& G) {
    if (!G.is_abelian()) throw Error("character group: group is not abelian");
    const int m = G.order();
    const int E = G.exponent();

    // characters as additive maps G -> Z_E; extend subgroup by subgroup
    std::vector<int> in_sub(m, 0);
    in_sub[G.identity()] = 1;
    std::vector<int> sub{G.identity()};
    std::vector<std::vector<int>> chars{std::vector<int>(m, 0)}; // values defined on `sub`

    for (int t = 0; t < m; ++t) {
        if (in_sub[t]) continue;
        // r = least positive power of t landing in the current subgroup
        int r = 1;
        int x = t;
        while (!in_sub[x]) {
            x = G.op(x, t);
            ++r;
        }
        // each existing character extends in exactly r ways
        std::vector<std::vector<int>> extended;
        extended.reserve(chars.size() * static_cast<size_t>(r));
        for (const auto& chi : chars) {
            int v = chi[x]; // chi(t^r)
            if (E % r != 0 || v % r != 0)
                throw Error("internal: character extension arithmetic failed");
            for (int l = 0; l < r; ++l) {
                int xt = v / r + (E / r) * l; // solves r*xt = v (mod E)
                std::vector<int> ext = chi;
                for (int h : sub) {
                    int cur = h;
                    int val = ext[h];
                    for (int j = 1; j < r; ++j) {
                        cur = G.op(cur, t);
                        val = (val + xt) % E;
                        ext[cur] = val;
                    }
                }
                extended.push_back(std::move(ext));
            }
        }
        chars = std::move(extended);
        std::vector<int> newsub;
        for (int h : sub) {
            int cur = h;
            newsub.push_back(cur);
            for (int j = 1; j < r; ++j) {
                cur = G.op(cur, t);
                newsub.push_back(cur);
                in_sub[cur] = 1;
            }
        }
        std::sort(newsub.begin(), newsub.end());
        sub = std::move(newsub);
    }

    std::sort(chars.begin(), chars.end());
    std::vector<Character> out;
    out.reserve(chars.size());
    for (const auto& chi : chars) {
        std::vector<Cyclotomic> vals;
        vals.reserve(m);
        for (int g = 0; g < m; ++g) vals.push_back(Cyclotomic::zeta(E, chi[g]));
        out.push_back(Character(std::move(vals)));
    }
    return out;
}

} // namespace qtw
