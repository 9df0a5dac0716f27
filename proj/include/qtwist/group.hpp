#ifndef QTWIST_GROUP_HPP
#define QTWIST_GROUP_HPP

#include <string>
#include <vector>

#include "qtwist/cyclotomic.hpp"

namespace qtw {

// A finite group presented by its Cayley table.  Elements are indices
// 0..order-1; construction validates the full group axioms (latin square,
// identity, inverses, associativity) so everything downstream may assume a
// genuine group.  Order is capped to keep exhaustive checks cheap.
class FiniteGroup {
  public:
    static constexpr int order_cap = 512;

    FiniteGroup() : table_{0}, inv_{0} {} // the trivial group

    static FiniteGroup cyclic(int n);
    static FiniteGroup direct_product(const std::vector<int>& cyclic_orders);
    // table[i][j] = index of the product; index 0 must be the identity.
    static FiniteGroup from_table(const std::vector<std::vector<int>>& table);

    int order() const { return m_; }
    int identity() const { return e_; }
    int op(int a, int b) const { return table_[static_cast<size_t>(a) * m_ + b]; }
    int inverse(int a) const { return inv_[a]; }
    int power(int g, long k) const;
    int element_order(int g) const;
    int exponent() const; // lcm of element orders
    bool is_abelian() const;
    bool is_central(int g) const;

    bool operator==(const FiniteGroup& o) const = default;

  private:
    int m_ = 1;
    int e_ = 0;
    std::vector<int> table_; // row-major m x m
    std::vector<int> inv_;

    void validate() const; // throws Error with a witness on any broken axiom
    void finish();         // locate identity/inverses, then validate
};

// Subgroup of a fixed parent group, stored as a sorted member list together
// with the two facts the rest of the code keeps asking for.
struct Subgroup {
    std::vector<int> members; // sorted, includes the identity
    bool abelian = false;
    bool central = false; // commutes with all of the parent

    int order() const { return static_cast<int>(members.size()); }
    bool contains(int g) const;
    int index_of(int g) const; // position in members, -1 when absent
};

Subgroup subgroup_generated(const FiniteGroup& G, const std::vector<int>& generators);

// Left-coset representatives of H in G: the identity's coset is listed
// first and each class is represented by its lowest-index member, so the
// output is deterministic.
std::vector<int> coset_representatives(const FiniteGroup& G, const Subgroup& H);

// The subgroup re-indexed as a standalone group; to_parent maps local
// element indices back to parent indices (to_parent[0] = identity).
struct LocalGroup {
    FiniteGroup group;
    std::vector<int> to_parent;
    int local_index(int parent_index) const; // -1 when absent
};
LocalGroup subgroup_as_group(const FiniteGroup& G, const Subgroup& H);

// A character is a plain vector of values over element indices of some
// group; validation against a concrete group is separate so the value type
// stays copyable and context free.
class Character {
  public:
    Character() = default;
    explicit Character(std::vector<Cyclotomic> values) : v_(std::move(values)) {}
    int size() const { return static_cast<int>(v_.size()); }
    const Cyclotomic& value(int g) const { return v_.at(g); }
    const std::vector<Cyclotomic>& values() const { return v_; }

    friend Character operator*(const Character& a, const Character& b);
    Character pow(long k) const;
    bool operator==(const Character& o) const;

  private:
    std::vector<Cyclotomic> v_;
};

// chi(e) = 1 and chi(ab) = chi(a)chi(b) for all pairs; on failure the
// witness (if given) receives the offending pair.
bool character_validate(const FiniteGroup& G, const Character& chi, std::string* witness = nullptr);

// All |G| characters of an abelian group, exact values in Q(zeta_exponent),
// sorted by value vector so the enumeration is deterministic.  Throws for
// nonabelian input.
std::vector<Character> character_group_of(const FiniteGroup& G);

} // namespace qtw

#endif
