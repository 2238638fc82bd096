#include <gtest/gtest.h>

#include "finscheme/geometry.hpp"
#include "oracles.hpp"

using namespace finscheme;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(RingedSpace, RequiresSheaf) {
    EXPECT_EQ(code_of([] { make_ringed_space(constant_presheaf(discrete_topology(2), zmod(2))); }), ErrorCode::InvalidArgument);
    EXPECT_NO_THROW(make_ringed_space(structure_sheaf(zmod(6)).presheaf));
}

TEST(LocallyRinged, ConstantSheafOnPointIsNotLocal) {
    const auto rs = make_ringed_space(constant_presheaf(discrete_topology(1), zmod(6)));
    const auto rep = check_locally_ringed_space(rs);
    const auto* f = rep.failure("stalks_are_local");
    ASSERT_NE(f, nullptr);
    EXPECT_NE(f->witness.find("2 maximal ideals"), std::string::npos) << f->witness;
}

TEST(LocallyRinged, SpectraAreLocallyRinged) {
    for (std::size_t n = 1; n <= 12; ++n) {
        const auto sh = structure_sheaf(zmod(n));
        const auto rep = spec_locally_ringed(sh);
        EXPECT_TRUE(rep.passed()) << n;
        EXPECT_EQ(rep.count("stalk_iso_local_ring"), sh.space.point_count());
        EXPECT_EQ(rep.count("stalks_are_local"), std::max<std::size_t>(sh.space.point_count(), 1));
    }
    EXPECT_TRUE(spec_locally_ringed(product_ring(zmod(2), zmod(2))).passed());
}

TEST(LocallyRinged, EmptySpace) {
    const auto rep = check_locally_ringed_space(empty_scheme());
    EXPECT_TRUE(rep.passed());
    EXPECT_EQ(rep.count("stalks_are_local"), 1u);
}

TEST(StalkIso, EvaluationPath) {
    const auto sh = structure_sheaf(zmod(6));
    const auto whole = sh.space.topology.carrier_index();
    for (Elem p = 0; p < 2; ++p) {
        const auto iso = stalk_to_localization(sh, p, whole);
        EXPECT_TRUE(iso.canonical);
        EXPECT_EQ(iso.path, "evaluation");
        EXPECT_TRUE(check_ring_hom(iso.hom));
        EXPECT_TRUE(is_bijective(iso.hom.map, iso.local.size()));
    }
    EXPECT_EQ(stalk_to_localization(zmod(6), 1, whole).stalk.size(), 2u);
    EXPECT_EQ(code_of([&] { stalk_to_localization(sh, 2, whole); }), ErrorCode::NotMember);
    EXPECT_EQ(code_of([&] { stalk_to_localization(sh, 1, sh.space.topology.require_open(PointSet(2, {0}))); }),
              ErrorCode::NotMember);
}

TEST(StalkIso, TransportLocality) {
    const auto z4 = zmod(4);
    EXPECT_TRUE(iso_transport_local(z4, z4, identity_hom(z4)));
    EXPECT_EQ(code_of([&] { iso_transport_local(z4, z4, RingHom{z4, z4, {0, 1, 1, 1}}); }), ErrorCode::InvalidArgument);
    const auto z6 = zmod(6);
    EXPECT_EQ(code_of([&] { iso_transport_local(z6, z6, identity_hom(z6)); }), ErrorCode::NotLocalRing);
}

TEST(Morphisms, IdentityIsIsoOfLocallyRingedSpaces) {
    const auto rs = spec_ringed_space(structure_sheaf(zmod(12)));
    const auto id = identity_ringed_morphism(rs);
    EXPECT_TRUE(check_ringed_space_morphism(id).passed());
    const auto rep = check_iso_locally_ringed(id);
    EXPECT_TRUE(rep.passed());
    EXPECT_EQ(rep.count("are_local_morphisms"), 2u);
    EXPECT_EQ(rep.count("is_homeomorphism"), 1u);
    EXPECT_EQ(rep.count("is_iso_of_sheaves"), 1u);
    for (Elem x = 0; x < 2; ++x) {
        const auto ind = induced_stalk_morphism(id, x);
        EXPECT_TRUE(is_bijective(ind.hom.map, ind.source_stalk.size()));
        EXPECT_TRUE(is_local_hom(ind.hom));
    }
}

TEST(Morphisms, CorruptedPhi) {
    // Spec(Z/2 x Z/2): swapping the two coordinates of global sections is a
    // ring automorphism that does not commute with restriction.
    const auto sh = structure_sheaf(product_ring(zmod(2), zmod(2)));
    auto m = identity_ringed_morphism(spec_ringed_space(sh));
    const auto whole = sh.space.topology.carrier_index();
    const auto& sec = sh.sections[whole];
    std::vector<Elem> swap(sec.values.size());
    for (Elem s = 0; s < swap.size(); ++s) swap[s] = *sec.index_of({sec.values[s][1], sec.values[s][0]});
    m.phi.per_open[whole] = swap;
    const auto rep = check_ringed_space_morphism(m);
    EXPECT_EQ(rep.failure("is_ring_morphism"), nullptr);
    EXPECT_NE(rep.failure("comm_diagrams"), nullptr);

    auto wrong_target = identity_ringed_morphism(spec_ringed_space(sh));
    wrong_target.phi.target = constant_presheaf(sh.space.topology, zmod(2));
    EXPECT_NE(check_ringed_space_morphism(wrong_target).failure("phi_shape"), nullptr);
}

TEST(Morphisms, NonBijectiveMapIsNotIso) {
    // Spec(Z/6) onto a point carrying the constant sheaf Z/6.
    const auto sh = structure_sheaf(zmod(6));
    const auto src = spec_ringed_space(sh);
    const auto dst = make_ringed_space(constant_presheaf(discrete_topology(1), zmod(6)));
    ContinuousMap f{src.space(), dst.space(), {0, 0}};
    ASSERT_TRUE(check_continuous(f));
    const auto pushed = direct_image(src.sheaf, f);
    PresheafMorphism phi{dst.sheaf, pushed, {}};
    const auto whole = sh.space.topology.carrier_index();
    for (std::size_t v = 0; v < dst.space().open_count(); ++v) {
        if (dst.space().open(v).empty()) {
            phi.per_open.push_back({0});
            continue;
        }
        std::vector<Elem> map;
        for (Elem x = 0; x < 6; ++x)
            map.push_back(*sh.sections[whole].index_of({sh.stalk_rings()[0].frac(x, 1), sh.stalk_rings()[1].frac(x, 1)}));
        phi.per_open.push_back(map);
    }
    const RingedSpaceMorphism m{src, dst, f, phi};
    EXPECT_TRUE(check_ringed_space_morphism(m).passed());
    EXPECT_FALSE(check_homeomorphism(f));
    EXPECT_FALSE(check_iso_locally_ringed(m).passed());
}

TEST(Affine, SpectrumIsAffine) {
    for (std::size_t n : {1u, 2u, 4u, 6u, 12u}) {
        const auto sh = structure_sheaf(zmod(n));
        const auto rs = spec_ringed_space(sh);
        EXPECT_TRUE(check_affine_scheme(rs, zmod(n), spec_identity_witness(sh)).passed()) << n;
    }
}

TEST(Affine, WrongRingRejected) {
    const auto sh = structure_sheaf(zmod(6));
    const auto rs = spec_ringed_space(sh);
    const auto rep = check_affine_scheme(rs, zmod(3), spec_identity_witness(sh));
    EXPECT_NE(rep.failure("targets_spectrum"), nullptr);
    EXPECT_EQ(code_of([&] { affine_to_scheme(rs, zmod(3), spec_identity_witness(sh)); }), ErrorCode::InvalidArgument);
}

TEST(Scheme, AffineSchemesAreSchemes) {
    for (std::size_t n = 1; n <= 12; ++n) {
        const auto sh = structure_sheaf(zmod(n));
        const auto rs = spec_ringed_space(sh);
        const auto w = affine_to_scheme(rs, zmod(n), spec_identity_witness(sh));
        EXPECT_EQ(w.entries.size(), sh.space.point_count());
        const auto rep = check_scheme(rs, w);
        EXPECT_TRUE(rep.passed()) << n;
        EXPECT_EQ(rep.count("covered"), 1u);
        EXPECT_EQ(rep.count("scheme_entry"), sh.space.point_count());
    }
}

TEST(Scheme, UncoveredAndBadEntries) {
    const auto sh = structure_sheaf(zmod(6));
    const auto rs = spec_ringed_space(sh);
    EXPECT_EQ(code_of([&] { check_scheme(rs, SchemeWitness{}); }), ErrorCode::UncoveredPoint);

    auto w = affine_to_scheme(rs, zmod(6), spec_identity_witness(sh));
    w.entries[0].induced = make_ringed_space(constant_presheaf(sh.space.topology, zmod(1)));
    const auto rep = check_scheme(rs, w);
    const auto* f = rep.failure("scheme_entry");
    ASSERT_NE(f, nullptr);
    EXPECT_NE(f->witness.find("induced"), std::string::npos);
}

TEST(Scheme, EmptyScheme) {
    const auto rep = check_scheme(empty_scheme(), SchemeWitness{});
    EXPECT_TRUE(rep.passed());
    EXPECT_EQ(rep.count("covered"), 1u);
}

TEST(Scheme, WholeSpaceIdentificationIsIso) {
    const auto p = structure_sheaf(zmod(12)).presheaf;
    const auto m = whole_space_identification(p);
    EXPECT_TRUE(check_iso_presheaves(m));
    EXPECT_EQ(m.target, induced_sheaf(p, p.topology().carrier()));
}
