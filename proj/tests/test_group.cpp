#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>

#include "qtwist/group.hpp"

using qtw::Character;
using qtw::Cyclotomic;
using qtw::FiniteGroup;
using qtw::Subgroup;

namespace {

// symmetric group on three points, built from permutation composition so the
// table is correct by construction; identity sits at index 0
FiniteGroup make_s3() {
    using Perm = std::array<int, 3>;
    auto compose = [](const Perm& p, const Perm& q) {
        return Perm{p[q[0]], p[q[1]], p[q[2]]};
    };
    std::vector<Perm> perms = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                               {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
    auto index_of = [&](const Perm& p) {
        for (size_t i = 0; i < perms.size(); ++i)
            if (perms[i] == p) return static_cast<int>(i);
        return -1;
    };
    std::vector<std::vector<int>> table(6, std::vector<int>(6));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            int k = index_of(compose(perms[i], perms[j]));
            REQUIRE(k >= 0);
            table[i][j] = k;
        }
    return FiniteGroup::from_table(table);
}

} // namespace

TEST_CASE("cyclic group basics") {
    FiniteGroup G = FiniteGroup::cyclic(6);
    CHECK(G.order() == 6);
    CHECK(G.identity() == 0);
    CHECK(G.op(2, 5) == 1);
    CHECK(G.inverse(1) == 5);
    CHECK(G.power(1, 4) == 4);
    CHECK(G.power(1, -1) == 5);
    CHECK(G.power(5, 0) == 0);
    CHECK(G.element_order(1) == 6);
    CHECK(G.element_order(2) == 3);
    CHECK(G.element_order(3) == 2);
    CHECK(G.exponent() == 6);
    CHECK(G.is_abelian());
    CHECK(G.is_central(4));
}

TEST_CASE("direct product layout and orders") {
    FiniteGroup G = FiniteGroup::direct_product({4, 2});
    CHECK(G.order() == 8);
    // first factor is the most significant digit: (a, b) -> 2a + b
    CHECK(G.op(2, 1) == 3);  // (1,0)(0,1) = (1,1)
    CHECK(G.op(6, 2) == 0);  // (3,0)(1,0) = (0,0)
    CHECK(G.element_order(2) == 4);
    CHECK(G.element_order(1) == 2);
    CHECK(G.exponent() == 4);
    CHECK(G.is_abelian());

    FiniteGroup V = FiniteGroup::direct_product({2, 2});
    CHECK(V.order() == 4);
    CHECK(V.exponent() == 2);
}

TEST_CASE("rejected group tables carry a witness") {
    CHECK_THROWS_AS(FiniteGroup::cyclic(0), qtw::Error);
    CHECK_THROWS_AS(FiniteGroup::from_table({}), qtw::Error);
    // identity must be element 0
    CHECK_THROWS_WITH_AS(FiniteGroup::from_table({{1, 0}, {0, 1}}),
                         doctest::Contains("not an identity"), qtw::Error);
    // duplicate in a row
    CHECK_THROWS_WITH_AS(
        FiniteGroup::from_table({{0, 1, 2}, {1, 1, 0}, {2, 0, 1}}),
        doctest::Contains("repeats"), qtw::Error);
    // latin square but not associative: 5-element quasigroup
    CHECK_THROWS_WITH_AS(FiniteGroup::from_table({{0, 1, 2, 3, 4},
                                                  {1, 0, 3, 4, 2},
                                                  {2, 4, 0, 1, 3},
                                                  {3, 2, 4, 0, 1},
                                                  {4, 3, 1, 2, 0}}),
                         doctest::Contains("associativity"), qtw::Error);
    // ragged table
    CHECK_THROWS_WITH_AS(FiniteGroup::from_table({{0, 1}, {1}}),
                         doctest::Contains("square"), qtw::Error);
    CHECK_THROWS_WITH_AS(FiniteGroup::direct_product({32, 32}),
                         doctest::Contains("cap"), qtw::Error);
}

TEST_CASE("subgroup generation") {
    FiniteGroup Z6 = FiniteGroup::cyclic(6);
    Subgroup H = subgroup_generated(Z6, {2});
    CHECK(H.members == std::vector<int>{0, 2, 4});
    CHECK(H.order() == 3);
    CHECK(H.abelian);
    CHECK(H.central);
    CHECK(H.contains(4));
    CHECK_FALSE(H.contains(3));
    CHECK(H.index_of(4) == 2);
    CHECK(H.index_of(1) == -1);

    Subgroup trivial = subgroup_generated(Z6, {});
    CHECK(trivial.members == std::vector<int>{0});

    FiniteGroup S3 = make_s3();
    CHECK_FALSE(S3.is_abelian());
    Subgroup A3 = subgroup_generated(S3, {1});
    CHECK(A3.members == std::vector<int>{0, 1, 2});
    CHECK(A3.abelian);
    CHECK_FALSE(A3.central);
    Subgroup whole = subgroup_generated(S3, {1, 3});
    CHECK(whole.order() == 6);
    CHECK_FALSE(whole.abelian);

    CHECK_THROWS_AS(subgroup_generated(Z6, {6}), qtw::Error);
}

TEST_CASE("coset representatives partition the group") {
    FiniteGroup G = FiniteGroup::direct_product({4, 2});
    Subgroup H = subgroup_generated(G, {2}); // (1,0), order 4
    std::vector<int> reps = qtw::coset_representatives(G, H);
    CHECK(reps.size() == 2);
    CHECK(reps[0] == 0); // identity coset leads
    // cosets cover G without overlap
    std::vector<int> seen;
    for (int r : reps)
        for (int h : H.members) seen.push_back(G.op(r, h));
    std::sort(seen.begin(), seen.end());
    std::vector<int> all(G.order());
    for (int i = 0; i < G.order(); ++i) all[i] = i;
    CHECK(seen == all);

    // a member list that is not a subgroup is rejected
    Subgroup bogus;
    bogus.members = {0, 1, 2}; // not closed in Z_4 x Z_2
    CHECK_THROWS_AS(qtw::coset_representatives(G, bogus), qtw::Error);
}

TEST_CASE("subgroup re-indexed as a standalone group") {
    FiniteGroup Z6 = FiniteGroup::cyclic(6);
    Subgroup H = subgroup_generated(Z6, {2});
    qtw::LocalGroup L = qtw::subgroup_as_group(Z6, H);
    CHECK(L.group.order() == 3);
    CHECK(L.to_parent[0] == 0);
    CHECK(L.group.element_order(1) == 3);
    CHECK(L.local_index(4) >= 0);
    CHECK(L.local_index(3) == -1);
    // the re-indexing is a homomorphism
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(L.to_parent[L.group.op(i, j)] == Z6.op(L.to_parent[i], L.to_parent[j]));
}

TEST_CASE("character validation") {
    FiniteGroup Z4 = FiniteGroup::cyclic(4);
    std::vector<Cyclotomic> v;
    for (int k = 0; k < 4; ++k) v.push_back(Cyclotomic::zeta(4, k));
    Character chi(v);
    CHECK(character_validate(Z4, chi));

    std::string witness;
    std::vector<Cyclotomic> bad = v;
    bad[0] = Cyclotomic::integer(-1);
    CHECK_FALSE(character_validate(Z4, Character(bad), &witness));
    CHECK(witness == "chi(identity) != 1");

    bad = v;
    bad[2] = Cyclotomic::integer(7);
    CHECK_FALSE(character_validate(Z4, Character(bad), &witness));
    CHECK(witness.find("!=") != std::string::npos);

    CHECK_FALSE(character_validate(Z4, Character({Cyclotomic::integer(1)}), &witness));

    // products and powers stay characters
    CHECK(character_validate(Z4, chi * chi));
    CHECK(character_validate(Z4, chi.pow(3)));
    CHECK(character_validate(Z4, chi.pow(-1)));
    CHECK(chi.pow(2).value(1) == Cyclotomic::integer(-1));
}

TEST_CASE("character group of cyclic and product groups") {
    FiniteGroup Z3 = FiniteGroup::cyclic(3);
    std::vector<Character> chars3 = qtw::character_group_of(Z3);
    REQUIRE(chars3.size() == 3);
    for (const auto& c : chars3) CHECK(character_validate(Z3, c));
    // distinct, closed under product, and separating
    for (size_t i = 0; i < chars3.size(); ++i)
        for (size_t j = i + 1; j < chars3.size(); ++j) CHECK_FALSE(chars3[i] == chars3[j]);
    for (const auto& a : chars3)
        for (const auto& b : chars3) {
            Character p = a * b;
            CHECK(std::count(chars3.begin(), chars3.end(), p) == 1);
        }
    for (int g = 1; g < 3; ++g) {
        bool separated = false;
        for (const auto& c : chars3) separated = separated || !c.value(g).is_one();
        CHECK(separated);
    }

    FiniteGroup V = FiniteGroup::direct_product({2, 2});
    std::vector<Character> chars4 = qtw::character_group_of(V);
    REQUIRE(chars4.size() == 4);
    for (const auto& c : chars4) {
        CHECK(character_validate(V, c));
        for (int g = 0; g < 4; ++g) {
            CHECK(c.value(g).is_rational());
            CHECK((c.value(g) == Cyclotomic::integer(1) || c.value(g) == Cyclotomic::integer(-1)));
        }
    }
    for (size_t i = 0; i < chars4.size(); ++i)
        for (size_t j = i + 1; j < chars4.size(); ++j) CHECK_FALSE(chars4[i] == chars4[j]);

    // enumeration order is deterministic
    std::vector<Character> again = qtw::character_group_of(V);
    REQUIRE(again.size() == chars4.size());
    for (size_t i = 0; i < again.size(); ++i) CHECK(again[i] == chars4[i]);

    FiniteGroup Z1 = FiniteGroup::cyclic(1);
    CHECK(qtw::character_group_of(Z1).size() == 1);

    CHECK_THROWS_WITH_AS(qtw::character_group_of(make_s3()),
                         doctest::Contains("abelian"), qtw::Error);
}

TEST_CASE("character group of a larger cyclic group hits full conductor") {
    FiniteGroup Z12 = FiniteGroup::cyclic(12);
    std::vector<Character> chars = qtw::character_group_of(Z12);
    REQUIRE(chars.size() == 12);
    bool found_faithful = false;
    for (const auto& c : chars) {
        CHECK(character_validate(Z12, c));
        auto ord = c.value(1).multiplicative_order(24);
        REQUIRE(ord.has_value());
        if (*ord == 12) found_faithful = true;
    }
    CHECK(found_faithful);
}
