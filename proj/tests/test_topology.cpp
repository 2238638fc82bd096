#include <gtest/gtest.h>

#include "finscheme/topology.hpp"
#include "oracles.hpp"

using namespace finscheme;

namespace {
PointSet ps(std::size_t n, std::initializer_list<Elem> m) { return PointSet(n, m); }
}  // namespace

TEST(Topology, CheckExamples) {
    EXPECT_TRUE(check_topological_space(PointSet::full(2), discrete_topology(2).opens()));
    EXPECT_TRUE(check_topological_space(PointSet::full(3), {PointSet(3), PointSet::full(3)}));
    auto v = check_topological_space(PointSet::full(3), {PointSet(3), ps(3, {0}), PointSet::full(3), ps(3, {1})});
    EXPECT_FALSE(v);
    EXPECT_NE(v.witness.find("{0} | {1}"), std::string::npos) << v.witness;
    EXPECT_NE(check_topological_space(PointSet::full(2), discrete_topology(2).opens()).witness.find("exhaustive"),
              std::string::npos);
}

TEST(Topology, SampledUnionsModeIsReported) {
    const auto t = discrete_topology(5);  // 32 opens
    auto v = check_topological_space(t.carrier(), t.opens());
    EXPECT_TRUE(v);
    EXPECT_NE(v.witness.find("sampled"), std::string::npos);
}

TEST(Topology, ConstructorRejectsNonTopology) {
    EXPECT_THROW(Topology(PointSet::full(2), {PointSet(2), ps(2, {0})}), Error);
}

TEST(Topology, GeneratedExamples) {
    EXPECT_EQ(generated_topology(PointSet::full(3), {}).opens(), (std::vector<PointSet>{PointSet(3), PointSet::full(3)}));
    const auto t = generated_topology(PointSet::full(3), {ps(3, {0}), ps(3, {1})});
    EXPECT_EQ(t.opens(), (std::vector<PointSet>{PointSet(3), ps(3, {0}), ps(3, {1}), ps(3, {0, 1}), PointSet::full(3)}));
    std::vector<PointSet> power;
    for (std::uint64_t m = 0; m < 8; ++m) power.push_back(PointSet::from_mask(3, m));
    EXPECT_EQ(generated_topology(PointSet::full(3), power), discrete_topology(3));
}

TEST(Topology, GeneratedFiltersBasisOutsideCarrier) {
    const auto t = generated_topology(ps(4, {0, 1}), {ps(4, {0}), ps(4, {2})});
    EXPECT_EQ(t.open_count(), 3u);
}

TEST(Topology, Induced) {
    const auto t = Topology(PointSet::full(3), {PointSet(3), ps(3, {0}), PointSet::full(3)});
    EXPECT_EQ(induced_topology(t, t.carrier()), t);
    const auto e = induced_topology(t, PointSet(3));
    EXPECT_EQ(e.open_count(), 1u);
    const auto s = induced_topology(t, ps(3, {1, 2}));
    EXPECT_EQ(s.opens(), (std::vector<PointSet>{PointSet(3), ps(3, {1, 2})}));
    EXPECT_THROW(induced_topology(Topology(ps(3, {0, 1}), {PointSet(3), ps(3, {0, 1})}), ps(3, {2})), Error);
}

TEST(Topology, Covers) {
    const auto t = discrete_topology(2);
    EXPECT_TRUE(check_cover({t, t.carrier(), {t.carrier()}}, true, true));
    EXPECT_TRUE(check_cover({t, t.carrier(), {ps(2, {0}), ps(2, {1})}}, true, true));
    EXPECT_FALSE(check_cover({t, t.carrier(), {ps(2, {0})}}, false, false));
    const auto ind = indiscrete_topology(2);
    EXPECT_TRUE(check_cover({ind, ind.carrier(), {ps(2, {0}), ps(2, {1})}}, false, true));
    EXPECT_FALSE(check_cover({ind, ind.carrier(), {ps(2, {0}), ps(2, {1})}}, true, true));
}

TEST(Topology, Continuity) {
    const auto t = generated_topology(PointSet::full(3), {ps(3, {0})});
    EXPECT_TRUE(check_continuous(identity_map(t)));
    EXPECT_TRUE(check_continuous({discrete_topology(2), t, {2, 2}}));
    // Sierpinski {empty, {a}, {a,b}} as destination, indiscrete source, swapped points.
    const auto sier = Topology(PointSet::full(2), {PointSet(2), ps(2, {0}), PointSet::full(2)});
    auto v = check_continuous({indiscrete_topology(2), sier, {1, 0}});
    EXPECT_FALSE(v);
    EXPECT_NE(v.witness.find("{1}"), std::string::npos) << v.witness;
}

TEST(Topology, Homeomorphisms) {
    EXPECT_TRUE(check_homeomorphism(identity_map(discrete_topology(2))));
    EXPECT_FALSE(check_homeomorphism({discrete_topology(2), indiscrete_topology(2), {0, 1}}));
    const auto sier = Topology(PointSet::full(2), {PointSet(2), ps(2, {0}), PointSet::full(2)});
    const auto sier2 = Topology(PointSet::full(2), {PointSet(2), ps(2, {1}), PointSet::full(2)});
    EXPECT_TRUE(check_homeomorphism({sier, sier2, {1, 0}}));
}

TEST(Topology, OpenLookup) {
    const auto t = discrete_topology(2);
    EXPECT_EQ(t.empty_index(), 0u);
    EXPECT_EQ(t.open(t.carrier_index()), t.carrier());
    try {
        indiscrete_topology(2).require_open(ps(2, {0}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotOpen);
    }
}

TEST(Topology, GeneratedMatchesBruteForceLeastTopology) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + rng() % 3;
        const oracle::Mask carrier = (oracle::Mask{1} << n) - 1;
        std::vector<PointSet> basis;
        std::vector<oracle::Mask> raw;
        const int k = static_cast<int>(rng() % 4);
        for (int i = 0; i < k; ++i) {
            const oracle::Mask m = rng() % (carrier + 1);
            raw.push_back(m);
            basis.push_back(PointSet::from_mask(n, m));
        }
        const auto t = generated_topology(PointSet::full(n), basis);
        std::set<oracle::Mask> got;
        for (const auto& o : t.opens()) got.insert(o.mask());
        EXPECT_EQ(got, oracle::least_topology(carrier, raw));
        EXPECT_EQ(got, oracle::generated_topology(carrier, raw));
    }
}
