#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "walklab/group.hpp"
#include "walklab/json_io.hpp"

using namespace walklab;

TEST_CASE("trivial group") {
    auto g = FiniteGroup::cyclic(1);
    CHECK(g.order() == 1);
    CHECK(g.identity() == 0);
    CHECK(verify_group_axioms(g).valid);
}

TEST_CASE("symmetric(3) structure") {
    auto g = FiniteGroup::symmetric(3);
    CHECK(g.order() == 6);
    auto part = conjugacy_classes(g);
    REQUIRE(part.classes.size() == 3);
    // ordered by (size, min element): sizes 1, 2, 3
    CHECK(part.classes[0].size() == 1);
    CHECK(part.classes[1].size() == 2);
    CHECK(part.classes[2].size() == 3);
    CHECK(verify_group_axioms(g).valid);
}

TEST_CASE("klein four-group: every element self-inverse") {
    auto g = FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
    CHECK(g.order() == 4);
    for (int e = 0; e < 4; ++e) CHECK(g.inv(e) == e);
}

TEST_CASE("cyclic groups have singleton classes") {
    for (int n : {2, 5, 12}) {
        auto g = FiniteGroup::cyclic(n);
        auto part = conjugacy_classes(g);
        CHECK(static_cast<int>(part.classes.size()) == n);
        for (const auto& c : part.classes) CHECK(c.size() == 1);
    }
}

TEST_CASE("dihedral(4) has 5 conjugacy classes") {
    auto g = FiniteGroup::dihedral(4);
    CHECK(g.order() == 8);
    CHECK(conjugacy_classes(g).classes.size() == 5);
    CHECK(verify_group_axioms(g).valid);
}

TEST_CASE("product order and class structure") {
    auto a = FiniteGroup::symmetric(3);
    auto b = FiniteGroup::cyclic(4);
    auto g = FiniteGroup::product(a, b);
    CHECK(g.order() == 24);
    CHECK(verify_group_axioms(g).valid);
    // classes of a product are products of classes
    auto pa = conjugacy_classes(a), pb = conjugacy_classes(b), pg = conjugacy_classes(g);
    CHECK(pg.classes.size() == pa.classes.size() * pb.classes.size());
    for (int e1 = 0; e1 < a.order(); ++e1)
        for (int e2 = 0; e2 < b.order(); ++e2) {
            int e = e1 * b.order() + e2;
            for (int f1 = 0; f1 < a.order(); ++f1)
                for (int f2 = 0; f2 < b.order(); ++f2) {
                    int f = f1 * b.order() + f2;
                    bool same_comp = pa.class_of[e1] == pa.class_of[f1] &&
                                     pb.class_of[e2] == pb.class_of[f2];
                    CHECK((pg.class_of[e] == pg.class_of[f]) == same_comp);
                }
        }
}

TEST_CASE("inverse anti-homomorphism and class-size sum") {
    for (auto g : {FiniteGroup::symmetric(4), FiniteGroup::dihedral(5)}) {
        for (int x = 0; x < g.order(); ++x)
            for (int y = 0; y < g.order(); ++y)
                CHECK(g.inv(g.mul(x, y)) == g.mul(g.inv(y), g.inv(x)));
        std::size_t total = 0;
        for (const auto& c : conjugacy_classes(g).classes) total += c.size();
        CHECK(static_cast<int>(total) == g.order());
    }
}

TEST_CASE("corrupted table is diagnosed") {
    auto g = FiniteGroup::symmetric(3);
    auto j = group_to_json(g);
    auto mul = j.at("mul").get<std::vector<int>>();
    std::swap(mul[7], mul[8]);  // break one row
    j["mul"] = mul;
    j["family_tag"] = "corrupted";  // avoid the family fast path
    auto bad = [&] {
        try {
            auto h = group_from_json(j);
            return verify_group_axioms(h);
        } catch (const std::invalid_argument&) {
            AxiomReport rep;  // inverse/identity failures surface at build
            rep.valid = false;
            rep.violation = "rejected at construction";
            return rep;
        }
    }();
    CHECK_FALSE(bad.valid);
    CHECK_FALSE(bad.violation.empty());
}

TEST_CASE("cyclic(12) axioms exhaustive") {
    auto rep = verify_group_axioms(FiniteGroup::cyclic(12));
    CHECK(rep.valid);
    CHECK(rep.exhaustive);
}

TEST_CASE("large groups fall back to sampled associativity") {
    auto g = FiniteGroup::product(FiniteGroup::symmetric(4), FiniteGroup::cyclic(9));  // 216
    auto rep = verify_group_axioms(g, 3);
    CHECK(rep.valid);
    CHECK_FALSE(rep.exhaustive);
}

TEST_CASE("json round-trip is bit-exact on tables") {
    auto g = FiniteGroup::product(FiniteGroup::dihedral(3), FiniteGroup::cyclic(2));
    auto j = group_to_json(g);
    auto h = group_from_json(j);
    CHECK(group_to_json(h) == j);
    CHECK(h.family_tag() == g.family_tag());
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b) CHECK(g.mul(a, b) == h.mul(a, b));
}

TEST_CASE("construct_group from descriptors") {
    CHECK(construct_group({{"family", "cyclic"}, {"n", 7}}).order() == 7);
    CHECK(construct_group({{"family", "symmetric"}, {"n", 4}}).order() == 24);
    nlohmann::json prod = {{"family", "product"},
                           {"a", {{"family", "cyclic"}, {"n", 2}}},
                           {"b", {{"family", "cyclic"}, {"n", 3}}}};
    CHECK(construct_group(prod).order() == 6);
    CHECK_THROWS_AS(construct_group({{"family", "simple"}, {"n", 1}}), std::invalid_argument);
    CHECK_THROWS_AS(construct_group({{"family", "symmetric"}, {"n", 7}}), std::invalid_argument);
}
