#include <gtest/gtest.h>

#include "finscheme/spectrum.hpp"

using namespace finscheme;

namespace {

PointSet ps(std::size_t n, std::initializer_list<Elem> m) { return PointSet(n, m); }

// Per-open reduction x -> x mod m between constant presheaves on t.
PresheafMorphism reduction(const PresheafOfRings& from, const PresheafOfRings& to, Elem m) {
    PresheafMorphism f{from, to, {}};
    for (std::size_t u = 0; u < from.open_count(); ++u) {
        std::vector<Elem> map(from.section_ring(u).size());
        for (Elem x = 0; x < map.size(); ++x) map[x] = to.section_ring(u).size() == 1 ? 0 : x % m;
        f.per_open.push_back(map);
    }
    return f;
}

}  // namespace

TEST(Presheaf, StructureSheafPassesAxioms) {
    const auto s = structure_sheaf(zmod(6));
    const auto rep = check_presheaf_axioms(s.presheaf);
    EXPECT_TRUE(rep.passed());
    for (const char* name : {"ring_of_empty", "section_rings_are_rings", "is_ring_morphism", "identity_map", "assoc_comp"})
        EXPECT_EQ(rep.count(name), 1u) << name;
}

TEST(Presheaf, CorruptedIdentityRestriction) {
    const auto p = structure_sheaf(zmod(6)).presheaf;
    const std::size_t u = p.topology().carrier_index();
    auto m = p.restriction(u, u);
    std::swap(m[0], m[1]);
    const auto rep = check_presheaf_axioms(p.with_restriction(u, u, m));
    const auto* f = rep.failure("identity_map");
    ASSERT_NE(f, nullptr);
    EXPECT_NE(f->witness.find("{0,1}"), std::string::npos) << f->witness;
}

TEST(Presheaf, ZeroPresheafPasses) {
    const auto z = zero_presheaf(discrete_topology(2));
    EXPECT_TRUE(check_presheaf_axioms(z).passed());
    EXPECT_TRUE(check_sheaf_axioms(z).passed());
}

TEST(Presheaf, ShapeValidation) {
    const auto t = discrete_topology(1);
    EXPECT_THROW(PresheafOfRings(t, {zmod(1)}, {}), Error);
    const auto p = constant_presheaf(t, zmod(2));
    try {
        p.restriction(0, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotNested);
    }
}

TEST(Sheaf, GlueingOverSingletonsZmod6) {
    const auto s = structure_sheaf(zmod(6));
    const auto& t = s.presheaf.topology();
    const auto out = glue_over_cover(s.presheaf, t.carrier_index(), {t.require_open(ps(2, {0})), t.require_open(ps(2, {1}))});
    EXPECT_EQ(out.compatible_families, 6u);
    EXPECT_EQ(out.glued, 6u);
    EXPECT_EQ(out.unique_glued, 6u);
    EXPECT_FALSE(out.failure);
    EXPECT_TRUE(check_sheaf_axioms(s.presheaf).passed());
}

TEST(Sheaf, ConstantPresheafFailsGlueing) {
    const auto p = constant_presheaf(discrete_topology(2), zmod(2));
    EXPECT_TRUE(check_presheaf_axioms(p).passed());
    const auto rep = check_sheaf_axioms(p);
    const auto* f = rep.failure("glueing");
    ASSERT_NE(f, nullptr);
    EXPECT_NE(f->witness.find("[{0},{1}]"), std::string::npos) << f->witness;
    EXPECT_EQ(rep.failure("locality"), nullptr);
    const auto& t = p.topology();
    const auto g = glue_over_cover(p, t.carrier_index(), {t.require_open(ps(2, {0})), t.require_open(ps(2, {1}))});
    ASSERT_TRUE(g.failure);
    EXPECT_NE((*g.failure)[0], (*g.failure)[1]);
}

TEST(Sheaf, CoverEnumerationKeepsSmallCoversUnderCap) {
    const auto t = discrete_topology(3);
    Guards g;
    g.max_covers = 4;
    const auto all = enumerate_covers(t, t.carrier_index());
    const auto capped = enumerate_covers(t, t.carrier_index(), g);
    EXPECT_FALSE(all.truncated);
    EXPECT_TRUE(capped.truncated);
    std::size_t small = 0;
    for (const auto& c : all.covers) small += c.size() <= 2 ? 1 : 0;
    std::size_t kept = 0;
    for (const auto& c : capped.covers) kept += c.size() <= 2 ? 1 : 0;
    EXPECT_EQ(kept, small);
    for (const auto& c : all.covers) {
        PointSet u(3);
        for (auto i : c) u = u | t.open(i);
        EXPECT_EQ(u, t.carrier());
    }
}

TEST(Morphism, IdentityAndReduction) {
    const auto t = discrete_topology(2);
    const auto p4 = constant_presheaf(t, zmod(4));
    const auto p2 = constant_presheaf(t, zmod(2));
    EXPECT_TRUE(check_presheaf_morphism(identity_morphism(p4)).passed());
    auto red = reduction(p4, p2, 2);
    EXPECT_TRUE(check_presheaf_morphism(red).passed());

    const std::size_t u = t.carrier_index();
    red.per_open[u][1] = 0;
    EXPECT_FALSE(check_presheaf_morphism(red).passed());
}

TEST(Morphism, PerturbedSquare) {
    // Swapping the factors of Z/2 x Z/2 is a ring automorphism on each open,
    // but applied only over the whole space it breaks the restriction squares.
    const auto r = product_ring(zmod(2), zmod(2));
    const std::vector<Elem> swap{0, 2, 1, 3};
    ASSERT_TRUE(check_ring_hom(swap, r, r));

    const auto one = discrete_topology(1);
    auto m = identity_morphism(constant_presheaf(one, r));
    m.per_open[one.carrier_index()] = swap;
    EXPECT_TRUE(check_presheaf_morphism(m).passed());

    const auto two = discrete_topology(2);
    auto m2 = identity_morphism(constant_presheaf(two, r));
    m2.per_open[two.carrier_index()] = swap;
    const auto rep = check_presheaf_morphism(m2);
    EXPECT_EQ(rep.failure("is_ring_morphism"), nullptr);
    EXPECT_NE(rep.failure("comm_diagrams"), nullptr);
}

TEST(Morphism, Composition) {
    const auto t = discrete_topology(2);
    const auto p8 = constant_presheaf(t, zmod(8));
    const auto p4 = constant_presheaf(t, zmod(4));
    const auto p2 = constant_presheaf(t, zmod(2));
    const auto f = reduction(p8, p4, 4), g = reduction(p4, p2, 2);
    const auto gf = compose_morphisms(g, f);
    const auto direct = reduction(p8, p2, 2);
    EXPECT_EQ(gf.per_open, direct.per_open);
    EXPECT_TRUE(check_presheaf_morphism(gf).passed());
    EXPECT_EQ(compose_morphisms(identity_morphism(p4), f).per_open, f.per_open);
    EXPECT_EQ(compose_morphisms(f, identity_morphism(p8)).per_open, f.per_open);
    try {
        compose_morphisms(f, g);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Mismatch);
    }
}

TEST(Morphism, Isomorphisms) {
    const auto t = discrete_topology(2);
    const auto p = constant_presheaf(t, zmod(6));
    auto inv = check_iso_presheaves(identity_morphism(p));
    ASSERT_TRUE(inv);
    EXPECT_EQ(inv->per_open, identity_morphism(p).per_open);

    EXPECT_FALSE(check_iso_presheaves(reduction(constant_presheaf(t, zmod(4)), constant_presheaf(t, zmod(2)), 2)));

    const auto q = constant_presheaf(t, product_ring(zmod(2), zmod(3)));
    const auto h = ring_iso_search(zmod(6), product_ring(zmod(2), zmod(3)));
    ASSERT_TRUE(h);
    PresheafMorphism relabel{p, q, {}};
    for (std::size_t u = 0; u < t.open_count(); ++u)
        relabel.per_open.push_back(t.open(u).empty() ? std::vector<Elem>{0} : h->map);
    EXPECT_TRUE(check_iso_presheaves(relabel));
}

TEST(Induced, WholeSpaceEmptyAndPoint) {
    const auto s = structure_sheaf(zmod(6));
    const auto& p = s.presheaf;
    const auto whole = induced_sheaf(p, p.topology().carrier());
    PresheafMorphism ident{p, whole, identity_morphism(p).per_open};
    EXPECT_TRUE(check_iso_presheaves(ident));

    const auto empty = induced_sheaf(p, PointSet(2));
    EXPECT_EQ(empty.open_count(), 1u);
    EXPECT_EQ(empty.section_ring(0).size(), 1u);

    const auto at2 = induced_sheaf(p, ps(2, {1}));
    ASSERT_EQ(at2.open_count(), 2u);
    EXPECT_EQ(at2.section_ring(0).size(), 1u);
    EXPECT_EQ(at2.section_ring(1).size(), 2u);
    EXPECT_TRUE(check_presheaf_axioms(at2).passed());
    EXPECT_TRUE(check_sheaf_axioms(at2).passed());

    const auto t = indiscrete_topology(2);
    EXPECT_THROW(induced_sheaf(constant_presheaf(t, zmod(2)), ps(2, {0})), Error);
}

TEST(DirectImage, Examples) {
    const auto s = structure_sheaf(zmod(6));
    const auto& p = s.presheaf;
    const auto& t = p.topology();
    EXPECT_EQ(direct_image(p, identity_map(t)), p);

    const auto pt = discrete_topology(1);
    const auto c = direct_image(p, {t, pt, {0, 0}});
    EXPECT_TRUE(c.section_ring(pt.carrier_index()).same_tables(p.section_ring(t.carrier_index())));
    EXPECT_TRUE(check_sheaf_axioms(c).passed());

    const ContinuousMap swap{t, t, {1, 0}};
    const auto q = direct_image(p, swap);
    EXPECT_TRUE(check_presheaf_axioms(q).passed());
    EXPECT_TRUE(check_sheaf_axioms(q).passed());
    // q(V) = p(swap V); relabel each open through the swap and search per-open isos.
    PresheafMorphism iso{p, q, {}};
    bool all_found = true;
    for (std::size_t u = 0; u < t.open_count(); ++u) {
        auto h = ring_iso_search(p.section_ring(u), q.section_ring(u));
        all_found = all_found && h.has_value();
        iso.per_open.push_back(h ? h->map : std::vector<Elem>{});
    }
    EXPECT_FALSE(all_found);  // {0} and {1} carry stalks of different sizes

    const auto sier = Topology(PointSet::full(2), {PointSet(2), ps(2, {0}), PointSet::full(2)});
    try {
        direct_image(constant_presheaf(indiscrete_topology(2), zmod(2)), {indiscrete_topology(2), sier, {1, 0}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotContinuous);
    }
}

TEST(DirectImage, HomeomorphicRelabelingIsIsomorphic) {
    // Two copies of the same space related by a swap, with a symmetric sheaf.
    const auto t = discrete_topology(2);
    const auto p = constant_presheaf(t, zmod(3));
    const ContinuousMap swap{t, t, {1, 0}};
    const auto q = direct_image(p, swap);
    PresheafMorphism m{q, p, {}};
    for (std::size_t u = 0; u < t.open_count(); ++u) m.per_open.push_back(identity_hom(p.section_ring(u)).map);
    EXPECT_TRUE(check_iso_presheaves(m));
}
