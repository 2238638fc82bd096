#pragma once

// Verification suites over one ring and the JSON report they produce, plus the
// payloads of the inspection subcommands.

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "finscheme/cli/ring_spec.hpp"
#include "finscheme/finscheme.hpp"

namespace finscheme::cli {

inline const std::vector<std::string>& suite_order() {
    static const std::vector<std::string> order{"ring", "topology", "sheaf", "lrs", "scheme"};
    return order;
}

// Index into suite_order of the last suite to run; "all" runs every suite.
inline std::size_t parse_suite(const std::string& name) {
    if (name == "all") return suite_order().size() - 1;
    const auto& o = suite_order();
    for (std::size_t i = 0; i < o.size(); ++i)
        if (o[i] == name) return i;
    throw Error(ErrorCode::InvalidArgument, "unknown suite `" + name + "` (ring|topology|sheaf|lrs|scheme|all)");
}

struct SuiteOutcome {
    std::string name;
    CheckReport report;
    double ms = 0;
};

struct VerifyReport {
    json input;
    std::vector<SuiteOutcome> suites;
    Guards guards;
    bool with_timings = false;

    bool failed() const {
        for (const auto& s : suites)
            if (!s.report.passed()) return true;
        return false;
    }
};

inline json to_json(const CheckEntry& e) {
    return {{"name", e.name}, {"status", to_string(e.status)}, {"witness", e.witness}, {"paper_anchor", e.anchor}};
}

inline json to_json(const Guards& g) {
    return {{"max_subsets", g.max_subsets}, {"max_sections", g.max_sections}, {"max_covers", g.max_covers},
            {"max_ring_size", g.max_ring_size}};
}

inline json to_json(const VerifyReport& r) {
    json suites = json::array();
    json timings = json::object();
    for (const auto& s : r.suites) {
        json checks = json::array();
        for (const auto& e : s.report.entries) checks.push_back(to_json(e));
        suites.push_back({{"suite", s.name}, {"checks", checks}});
        if (r.with_timings) timings[s.name] = s.ms;
    }
    return {{"input", r.input}, {"suites", suites}, {"timings_ms", timings}, {"guards", to_json(r.guards)}};
}

inline json set_json(const ElementSet& s) { return s.members(); }

namespace detail {

// Check names each suite emits, used for skip entries when a suite cannot run.
inline const std::vector<std::pair<std::string, std::string>>& suite_checks(const std::string& suite) {
    static const std::map<std::string, std::vector<std::pair<std::string, std::string>>> names{
        {"ring",
         {{"check_ring_axioms", "cring"},
          {"commutative", "cring.m_comm"},
          {"enumerate_prime_ideals", "pr_ideal"},
          {"max_ideal_is_prime", "max_ideal_is_pr_ideal"},
          {"local_ring_at", "local_ring carrier_local_ring_at"}}},
        {"topology",
         {{"zariski_topology", "topological_space Spec is_zariski_open"}, {"closed_subsets", "closed_subsets"}}},
        {"sheaf",
         {{"check_presheaf_axioms", "presheaf_of_rings"},
          {"check_sheaf_axioms", "sheaf_of_rings Spec is_zariski_open sheaf_spec"},
          {"global_sections_iso", "sheaf_spec"}}},
        {"lrs",
         {{"direct_limit", "direct_lim_is_ring"},
          {"spec_locally_ringed", "locally_ringed_space Spec is_zariski_open"},
          {"universal_property", "universal_property"},
          {"iso_transport_local", "isomorphic_to_local_is_local"}}},
        {"scheme",
         {{"check_affine_scheme", "spec_is_affine_scheme"}, {"affine_scheme_is_scheme", "affine_scheme_is_scheme"}}},
    };
    return names.at(suite);
}

inline void skip_all(CheckReport& rep, const std::string& suite, const std::string& why) {
    for (const auto& [name, anchor] : suite_checks(suite)) rep.skip(name, why, anchor);
}

inline std::string prefix_with(const std::string& prefix, const std::string& w) {
    return w.empty() ? prefix : prefix + ": " + w;
}

inline Verdict prefixed_verdict(Verdict v, const std::string& prefix) {
    v.witness = prefix_with(prefix, v.witness);
    return v;
}

inline CheckReport prefixed(CheckReport r, const std::string& prefix) {
    for (auto& e : r.entries) e.witness = prefix_with(prefix, e.witness);
    return r;
}

inline std::string join(const std::vector<AxiomViolation>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : "; ") + x.describe();
    return s;
}

}  // namespace detail

// Pipeline state shared by the suites of one run.
struct Pipeline {
    RingSpec spec;
    Guards guards;
    std::optional<FiniteRing> ring;
    std::optional<StructureSheaf> sheaf;
    std::string blocked;  // reason downstream suites cannot run

    const SpectrumSpace& space() const { return sheaf->space; }
};

inline CheckReport ring_suite(Pipeline& p) {
    CheckReport rep;
    RawRing raw = raw_tables(p.spec, p.guards);
    std::vector<AxiomViolation> v;
    try {
        v = check_ring_axioms(raw);
    } catch (const Error& e) {
        v.push_back({AxiomKind::NotClosed, e.what(), {}});
    }
    rep.add("check_ring_axioms",
            v.empty() ? Verdict::pass(std::to_string(raw.size) + " elements") : Verdict::fail(detail::join(v)), "cring");
    if (!v.empty()) {
        p.blocked = "ring axioms failed";
        return rep;
    }
    const FiniteRing r = validate_ring(raw);
    if (!r.commutative()) {
        const auto c = check_ring_axioms(r, true);
        rep.add("commutative", Verdict::fail(detail::join(c)), "cring.m_comm");
        p.blocked = "ring is not commutative";
        return rep;
    }
    rep.add("commutative", Verdict::pass(), "cring.m_comm");
    p.ring = r;

    const auto primes = enumerate_prime_ideals(r, p.guards);
    std::string list;
    for (const auto& q : primes) list += (list.empty() ? "" : " ") + q.to_string();
    rep.add("enumerate_prime_ideals", Verdict::pass(std::to_string(primes.size()) + " primes " + list), "pr_ideal");
    for (const auto& m : enumerate_maximal_ideals(r, p.guards))
        rep.add("max_ideal_is_prime", detail::prefixed_verdict(max_ideal_is_prime(r, m), m.to_string()), "max_ideal_is_pr_ideal");
    for (const auto& q : primes) {
        const auto lr = local_ring_at(r, q, p.guards);
        Verdict wd = lr.check_well_defined();
        Verdict loc = wd ? is_local_ring(lr.ring(), p.guards) : Verdict::fail("class operations not well defined: " + wd.witness);
        rep.add("local_ring_at", detail::prefixed_verdict(loc, q.to_string() + ", " + std::to_string(lr.size()) + " classes"),
                "local_ring carrier_local_ring_at");
    }
    return rep;
}

inline CheckReport topology_suite(Pipeline& p) {
    CheckReport rep;
    const SpectrumSpace sp = zariski_topology(*p.ring, p.guards);
    const auto& t = sp.topology;
    rep.add("zariski_topology",
            detail::prefixed_verdict(check_topological_space(t.carrier(), t.opens()),
                                     std::to_string(sp.point_count()) + " points, " + std::to_string(t.open_count()) + " opens"),
            "topological_space Spec is_zariski_open");
    Verdict closed = Verdict::pass(std::to_string(sp.ideals.size()) + " ideals");
    for (const auto& a : sp.ideals)
        if (!t.is_open(sp.all_points() - closed_subsets(sp, a))) {
            closed = Verdict::fail("complement of V(" + a.to_string() + ") is not open");
            break;
        }
    rep.add("closed_subsets", closed, "closed_subsets");
    return rep;
}

inline CheckReport sheaf_suite(Pipeline& p) {
    CheckReport rep;
    p.sheaf = structure_sheaf(*p.ring, p.guards);
    const auto& sh = *p.sheaf;
    const auto pre = check_presheaf_axioms(sh.presheaf);
    rep.append(pre);
    rep.add("check_presheaf_axioms", pre.passed() ? Verdict::pass(std::to_string(sh.presheaf.open_count()) + " opens")
                                                  : Verdict::fail(pre.first_failure()->name),
            "presheaf_of_rings");
    const auto sha = check_sheaf_axioms(sh.presheaf, p.guards);
    rep.append(sha);
    rep.add("check_sheaf_axioms", sha.passed() ? Verdict::pass() : Verdict::fail(sha.first_failure()->name),
            "sheaf_of_rings Spec is_zariski_open sheaf_spec");
    const auto& global = sh.sections[sh.space.topology.carrier_index()].ring;
    const auto iso = ring_iso_search(global, *p.ring);
    rep.add("global_sections_iso",
            iso ? Verdict::pass(std::to_string(global.size()) + " global sections")
                : Verdict::fail(std::to_string(global.size()) + " global sections, no isomorphism to the ring"),
            "sheaf_spec");
    if (!rep.passed()) p.blocked = "structure sheaf checks failed";
    return rep;
}

// psi_U = evaluation at p, into R_p.
inline UniversalityWitness evaluation_witness(const StructureSheaf& sh, const Stalk& st, Elem p) {
    UniversalityWitness w{sh.space.local_rings[p].ring(), {}};
    for (auto u : st.family().members()) {
        RingHom h{sh.presheaf.section_ring(u), w.target_ring, std::vector<Elem>(sh.sections[u].values.size())};
        for (Elem s = 0; s < h.map.size(); ++s) h.map[s] = sh.value(u, s, p);
        w.hom_family.emplace(u, std::move(h));
    }
    return w;
}

inline CheckReport lrs_suite(Pipeline& p) {
    CheckReport rep;
    const auto& sh = *p.sheaf;
    for (Elem x = 0; x < sh.space.point_count(); ++x) {
        const std::string at = "point " + std::to_string(x) + " " + sh.space.points[x].to_string();
        const Stalk st = stalk_at(sh.presheaf, x, p.guards);
        const auto lim = check_limit_ring(st, p.guards);
        rep.append(detail::prefixed(lim, at));
        rep.add("direct_limit",
                detail::prefixed_verdict(lim.passed() ? Verdict::pass(std::to_string(st.size()) + " classes")
                                                      : Verdict::fail(lim.first_failure()->name),
                                         at),
                "direct_lim_is_ring");
        const auto um = universal_map(st, evaluation_witness(sh, st, x));
        rep.append(detail::prefixed(um.report, at));
        rep.add("universal_property", detail::prefixed_verdict(um.unique ? Verdict::pass() : Verdict::fail("not unique"), at),
                "universal_property");
    }
    const auto slr = spec_locally_ringed(sh, p.guards);
    rep.append(slr);
    rep.add("spec_locally_ringed",
            slr.passed() ? Verdict::pass(std::to_string(sh.space.point_count()) + " stalks")
                         : Verdict::fail(slr.first_failure()->witness),
            "locally_ringed_space Spec is_zariski_open");
    const std::size_t whole = sh.space.topology.carrier_index();
    for (Elem x = 0; x < sh.space.point_count(); ++x) {
        const auto iso = stalk_to_localization(sh, x, whole, p.guards);
        const bool ok = iso_transport_local(iso.stalk.ring(), iso.local.ring(), iso.hom, p.guards);
        rep.add("iso_transport_local", detail::prefixed_verdict(ok ? Verdict::pass() : Verdict::fail("stalk is not local"),
                                                                "point " + std::to_string(x)),
                "isomorphic_to_local_is_local");
    }
    if (!rep.passed()) p.blocked = "locally ringed space checks failed";
    return rep;
}

inline CheckReport scheme_suite(Pipeline& p) {
    CheckReport rep;
    const auto& sh = *p.sheaf;
    const RingedSpace rs = spec_ringed_space(sh);
    const auto m = spec_identity_witness(sh);
    const auto affine = check_affine_scheme(rs, *p.ring, m, p.guards);
    rep.append(affine);
    rep.add("check_affine_scheme", affine.passed() ? Verdict::pass("identity witness") : Verdict::fail("identity witness rejected"),
            "spec_is_affine_scheme");
    if (!affine.passed()) return rep;
    const auto w = affine_to_scheme(rs, *p.ring, m, p.guards);
    CheckReport sch;
    try {
        sch = check_scheme(rs, w, p.guards);
    } catch (const GuardError&) {
        throw;
    } catch (const Error& e) {
        sch.add("covered", Verdict::fail(e.what()), "scheme.are_affine_schemes");
    }
    rep.append(sch);
    rep.add("affine_scheme_is_scheme",
            detail::prefixed_verdict(sch.passed() ? Verdict::pass() : Verdict::fail("scheme check failed"),
                                     std::to_string(w.entries.size()) + " witness entries"),
            "affine_scheme_is_scheme");
    if (sh.space.point_count() == 0) {
        const RingedSpace e = empty_scheme();
        Verdict v = check_scheme(e, {}, p.guards).passed() ? Verdict::pass() : Verdict::fail("empty scheme rejected");
        if (v && !(e.sheaf == sh.presheaf)) v = Verdict::fail("structure sheaf differs from the empty scheme");
        rep.add("empty_scheme_is_scheme", detail::prefixed_verdict(v, "0 witness entries"), "empty_scheme_is_scheme");
    }
    return rep;
}

// Runs every suite up to and including `last`, in dependency order.
inline VerifyReport run_suite(const RingSpec& spec, std::size_t last, const Guards& g = {}, bool with_timings = false) {
    VerifyReport out{to_json(spec), {}, g, with_timings};
    Pipeline p{spec, g, std::nullopt, std::nullopt, {}};
    using Runner = CheckReport (*)(Pipeline&);
    const Runner runners[] = {ring_suite, topology_suite, sheaf_suite, lrs_suite, scheme_suite};
    for (std::size_t i = 0; i <= last; ++i) {
        const auto& name = suite_order()[i];
        SuiteOutcome s{name, {}, 0};
        const auto start = std::chrono::steady_clock::now();
        if (!p.blocked.empty()) {
            detail::skip_all(s.report, name, "skipped: " + p.blocked);
        } else {
            try {
                s.report = runners[i](p);
            } catch (const GuardError& e) {
                detail::skip_all(s.report, name, std::string("skipped(guard): ") + e.what());
                p.blocked = "guard tripped in " + name;
            }
        }
        s.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        out.suites.push_back(std::move(s));
    }
    return out;
}

inline VerifyReport run_suite(const RingSpec& spec, const std::string& suite, const Guards& g = {}, bool with_timings = false) {
    return run_suite(spec, parse_suite(suite), g, with_timings);
}

inline std::string summary_line(const SuiteOutcome& s) {
    std::size_t pass = 0, fail = 0, skip = 0;
    for (const auto& e : s.report.entries) {
        pass += e.status == Status::Pass;
        fail += e.status == Status::Fail;
        skip += e.status == Status::Skipped;
    }
    return s.name + ": " + std::to_string(pass) + " pass, " + std::to_string(fail) + " fail, " + std::to_string(skip) + " skipped";
}

// Subcommand payloads.

inline json command_spec(const RingSpec& spec, const Guards& g = {}) {
    const FiniteRing r = build_ring(spec, g);
    json ideals = json::array(), primes = json::array(), maximal = json::array();
    for (const auto& i : enumerate_ideals(r, g)) ideals.push_back(set_json(i.members()));
    for (const auto& q : enumerate_prime_ideals(r, g)) primes.push_back(set_json(q.members()));
    for (const auto& m : enumerate_maximal_ideals(r, g)) maximal.push_back(set_json(m.members()));
    return {{"input", to_json(spec)}, {"size", r.size()}, {"commutative", r.commutative()},
            {"ideals", ideals}, {"primes", primes}, {"maximal_ideals", maximal}};
}

inline json command_topology(const RingSpec& spec, const Guards& g = {}) {
    const FiniteRing r = build_ring(spec, g);
    const SpectrumSpace sp = zariski_topology(r, g);
    json points = json::array(), opens = json::array();
    for (const auto& q : sp.points) points.push_back(set_json(q.members()));
    for (const auto& u : sp.topology.opens()) opens.push_back(set_json(u));
    const Verdict v = check_topological_space(sp.topology.carrier(), sp.topology.opens());
    return {{"input", to_json(spec)}, {"points", points}, {"opens", opens},
            {"topological_space", v ? "pass" : "fail"}, {"witness", v.witness}};
}

inline json command_sections(const RingSpec& spec, const std::vector<Elem>& open, const Guards& g = {}) {
    const FiniteRing r = build_ring(spec, g);
    const SpectrumSpace sp = zariski_topology(r, g);
    PointSet u(sp.point_count());
    for (Elem x : open) {
        if (x >= sp.point_count()) throw Error(ErrorCode::NotMember, "no point " + std::to_string(x));
        u.insert(x);
    }
    const SectionRing sec = sheaf_spec_sections(sp, u, g);
    json list = json::array();
    for (Elem s = 0; s < sec.values.size(); ++s) {
        json values = json::array(), cert = json::array();
        for (std::size_t k = 0; k < sec.points.size(); ++k) {
            const Elem x = sec.points[k];
            values.push_back(sp.local_rings[x].describe(sec.values[s][k]));
            const auto& c = sec.certificates[s][k];
            cert.push_back({{"point", x}, {"neighborhood", set_json(sp.topology.open(c.neighborhood))},
                            {"fraction", std::to_string(c.num) + "/" + std::to_string(c.den)}});
        }
        list.push_back({{"values", values}, {"certificate", cert}});
    }
    return {{"input", to_json(spec)}, {"open", set_json(u)}, {"count", sec.values.size()}, {"sections", list}};
}

inline json command_stalk(const RingSpec& spec, Elem point, const Guards& g = {}) {
    const FiniteRing r = build_ring(spec, g);
    const StructureSheaf sh = structure_sheaf(r, g);
    if (point >= sh.space.point_count()) throw Error(ErrorCode::NotMember, "no point " + std::to_string(point));
    const auto iso = stalk_to_localization(sh, point, sh.space.topology.carrier_index(), g);
    json classes = json::array();
    for (Elem c = 0; c < iso.stalk.size(); ++c) {
        const auto& rep = iso.stalk.canonical()[c];
        json values = json::array();
        for (std::size_t k = 0; k < sh.sections[rep.open].points.size(); ++k) {
            const Elem x = sh.sections[rep.open].points[k];
            values.push_back(sh.space.local_rings[x].describe(sh.sections[rep.open].values[rep.section][k]));
        }
        classes.push_back({{"open", set_json(sh.space.topology.open(rep.open))}, {"section", values},
                           {"localization", iso.local.describe(iso.hom(c))}});
    }
    const auto loc = check_local_ring(iso.stalk.ring(), g);
    return {{"input", to_json(spec)}, {"point", point}, {"prime", set_json(sh.space.points[point].members())},
            {"size", iso.stalk.size()}, {"classes", classes}, {"local", loc.local},
            {"maximal_ideal", loc.maximal ? set_json(loc.maximal->members()) : json()},
            {"localization_size", iso.local.size()}, {"iso_path", iso.path}};
}

}  // namespace finscheme::cli
