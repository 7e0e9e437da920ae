#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "constructions.hpp"
#include "morphisms.hpp"
#include "random.hpp"
#include "reflection.hpp"
#include "space.hpp"
#include "topology.hpp"

// Randomized checks of the structural invariants of finite pseudometric
// spaces. Every case draws its inputs from a seed derived from the base
// seed, the suite and the case number, so a report is a pure function of
// the options.

namespace pmetric {

struct Counterexample {
    std::string suite;
    std::string property;
    std::uint64_t case_seed = 0;
    std::vector<std::pair<std::string, Space>> spaces;
    std::string detail;
};

struct SuiteSummary {
    std::string name;
    std::uint64_t cases = 0;
    std::uint64_t checks = 0;
    std::uint64_t failures = 0;
};

struct FuzzReport {
    std::uint64_t seed = 0;
    std::uint64_t count = 0;
    std::size_t max_n = 0;
    std::vector<SuiteSummary> suites;
    std::optional<Counterexample> first_failure;

    bool ok() const
    {
        for (const auto& s : suites)
            if (s.failures)
                return false;
        return true;
    }
};

struct FuzzOptions {
    std::uint64_t seed = 0;
    std::uint64_t count = 100;
    std::size_t max_n = 6;
    /// Any of "core", "topology", "morphisms", "constructions"; empty = all.
    std::set<std::string> suites;
};

inline const std::vector<std::string>& fuzz_suite_names()
{
    static const std::vector<std::string> names{"core", "topology", "morphisms", "constructions"};
    return names;
}

namespace detail {

class CaseContext {
public:
    CaseContext(SuiteSummary& summary, std::optional<Counterexample>& first, std::uint64_t seed)
        : summary_(summary), first_(first), seed_(seed)
    {
    }

    void name(std::string label, const Space& s) { spaces_.emplace_back(std::move(label), s); }

    void check(bool holds, const char* property, const std::string& detail = {})
    {
        ++summary_.checks;
        if (holds)
            return;
        ++summary_.failures;
        if (!first_)
            first_ = Counterexample{summary_.name, property, seed_, spaces_, detail};
    }

private:
    SuiteSummary& summary_;
    std::optional<Counterexample>& first_;
    std::uint64_t seed_;
    std::vector<std::pair<std::string, Space>> spaces_;
};

/// Random space with 1..max_n points and a random zero-merge rate.
inline Space fuzz_space(Rng& rng, std::size_t max_n)
{
    GenParams p;
    p.seed = rng.next();
    p.n = 1 + rng.below(max_n);
    p.zero_merge_prob = Rational(rng.below(4), 4);
    p.max_entry = Dist(1 + rng.below(4));
    p.max_denominator = 1 + rng.below(3);
    return random_space(p);
}

/// Subsets to exercise: all of them up to 8 points, else 64 random ones.
inline std::vector<Subset> fuzz_subsets(Rng& rng, std::size_t n)
{
    std::vector<Subset> out;
    if (n <= 8) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
            out.push_back(Subset::from_mask(n, mask));
        return out;
    }
    for (int k = 0; k < 64; ++k) {
        std::vector<std::size_t> m;
        for (std::size_t i = 0; i < n; ++i)
            if (rng.below(2))
                m.push_back(i);
        out.emplace_back(n, std::move(m));
    }
    return out;
}

inline void fuzz_core_case(CaseContext& ctx, Rng& rng, std::size_t max_n)
{
    Space const s = fuzz_space(rng, max_n);
    ctx.name("X", s);
    std::size_t const n = s.size();
    ctx.check(validate_pseudometric(s.to_raw()).ok(), "generated space validates");

    bool equivalence = true;
    for (std::size_t a = 0; a < n; ++a) {
        equivalence = equivalence && s(a, a).is_zero();
        for (std::size_t b = 0; b < n; ++b) {
            equivalence = equivalence && (s(a, b).is_zero() == s(b, a).is_zero());
            for (std::size_t c = 0; c < n; ++c)
                if (s(a, b).is_zero() && s(b, c).is_zero())
                    equivalence = equivalence && s(a, c).is_zero();
        }
    }
    ctx.check(equivalence, "zero relation is an equivalence");

    Partition const classes = zero_classes(s);
    bool classes_ok = true;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            Subset const ca = class_of(s, a), cb = class_of(s, b);
            classes_ok = classes_ok && (ca == cb || (ca & cb).empty());
            classes_ok = classes_ok && (classes.same_block(a, b) == s(a, b).is_zero());
        }
    ctx.check(classes_ok, "zero classes partition the space");

    bool closure_op = true;
    auto const subsets = fuzz_subsets(rng, n);
    for (const auto& a : subsets) {
        Subset const sa = saturate(s, a);
        closure_op = closure_op && a.is_subset_of(sa) && saturate(s, sa) == sa;
    }
    for (std::size_t k = 0; k + 1 < subsets.size() && k < 32; ++k) {
        Subset const& a = subsets[k];
        Subset const b = a | subsets[k + 1];
        closure_op = closure_op && saturate(s, a).is_subset_of(saturate(s, b));
    }
    ctx.check(closure_op, "saturation is a closure operator");

    Reflection const r = metric_reflection(s);
    ctx.check(is_metric(r.quotient), "reflection is metric");
    bool preserved = true;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            preserved = preserved && r.quotient(r.projection(x), r.projection(y)) == s(x, y);
    ctx.check(preserved, "quotient distance equals original distance");
    bool section_ok = true;
    for (std::size_t a = 0; a < r.quotient.size(); ++a)
        section_ok = section_ok && r.projection(r.section(a)) == a;
    for (std::size_t x = 0; x < n; ++x)
        section_ok = section_ok && s(r.section(r.projection(x)), x).is_zero();
    ctx.check(section_ok, "section is a right inverse of the projection");
    ctx.check(check_well_defined(s).ok(), "quotient distance is well defined");
    ctx.check(is_pseudoisometry(r.projection).ok(), "projection is a pseudoisometry");
    ctx.check(metric_reflection(r.quotient).quotient == r.quotient, "reflection is idempotent");
}

inline void fuzz_topology_case(CaseContext& ctx, Rng& rng, std::size_t max_n)
{
    Space const s = fuzz_space(rng, max_n);
    ctx.name("X", s);
    std::size_t const n = s.size();
    bool every_closed = true;
    for (const auto& a : fuzz_subsets(rng, n)) {
        bool const saturated = is_saturated(s, a);
        bool const open = is_open(s, a);
        bool const closed = is_closed(s, a);
        every_closed = every_closed && closed;
        ctx.check(open == closed && closed == saturated, "open <=> closed <=> saturated");
        ctx.check(closure(s, a) == saturate(s, a), "closure equals saturation");
        ctx.check(boundary(s, a) == (closure(s, a) - interior(s, a)), "boundary formulas agree");
        ctx.check(complete_via_boundary(s, a), "boundary completeness criterion holds");
        if (!a.empty())
            ctx.check(closed_via_completeness(s, a) == closed, "completeness closedness criterion");
        if (closed && !a.empty()) {
            EPSequence seq;
            for (std::size_t k = rng.below(3); k > 0; --k)
                seq.prefix.push_back(a.members()[rng.below(a.size())]);
            std::size_t const c = a.members()[rng.below(a.size())];
            for (std::size_t x : class_of(s, c).members())
                if (a.contains(x) && rng.below(2))
                    seq.cycle.push_back(x);
            seq.cycle.push_back(c);
            ctx.check(is_cauchy(s, seq), "zero-class cycle is Cauchy");
            ctx.check(!(limit_points(s, seq) & a).empty(), "closed sets contain Cauchy limits");
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        every_closed = every_closed && is_closed(s, Subset(n, {i}));
    ctx.check(is_metric(s) == every_closed, "metric <=> every subset closed");
}

inline void check_morphism_laws(CaseContext& ctx, const PointMap& phi)
{
    ctx.check(is_pseudoisometry(phi).ok(), "witness is a pseudoisometry");
    bool const dm = is_metric(phi.domain());
    bool const cm = is_metric(phi.codomain());
    if (dm && cm)
        ctx.check(phi.is_bijective() && is_distance_preserving(phi), "metric pseudoisometry is an isometry");
    if (cm)
        ctx.check(phi.is_surjective(), "metric codomain forces surjectivity");
    if (dm)
        ctx.check(phi.is_injective(), "metric domain forces injectivity");
    PointMap const f = induced_reflection_map(phi);
    ctx.check(is_isometry(f), "induced reflection map is an isometry");
    ctx.check(commutes(f, phi), "induced reflection map commutes with projections");
}

inline void fuzz_morphisms_case(CaseContext& ctx, Rng& rng, std::size_t max_n)
{
    std::size_t const cap_n = std::min<std::size_t>(max_n, 6);
    Space const x = fuzz_space(rng, cap_n);
    std::size_t const classes = zero_classes(x).block_count();
    Space const y = rng.below(2)
                        ? random_pseudoisometric_copy(x, rng.below(cap_n - classes + 1), rng.next())
                        : fuzz_space(rng, cap_n);
    ctx.name("X", x);
    ctx.name("Y", y);

    auto const fast = are_pseudoisometric(x, y);
    auto const slow = brute_force_pseudoisometry(x, y);
    ctx.check(fast.has_value() == slow.has_value(), "reflection route agrees with brute force");
    if (fast)
        check_morphism_laws(ctx, *fast);
    if (slow)
        check_morphism_laws(ctx, *slow);

    ctx.check(is_pseudoisometry(PointMap::identity(x)).ok(), "identity is a pseudoisometry");
    auto const back = are_pseudoisometric(y, x);
    ctx.check(back.has_value() == fast.has_value(), "pseudoisometric relation is symmetric");
    if (fast) {
        Space const z = random_pseudoisometric_copy(y, rng.below(3), rng.next());
        ctx.name("Z", z);
        auto const second = are_pseudoisometric(y, z);
        ctx.check(second.has_value(), "copy is pseudoisometric to its source");
        if (second)
            ctx.check(is_pseudoisometry(compose(*fast, *second)).ok(), "witnesses compose");
    }

    Reflection const rx = metric_reflection(x);
    Reflection const ry = metric_reflection(y);
    if (rx.quotient.size() == ry.quotient.size()) {
        IsometrySearch const found = find_isometry(rx.quotient, ry.quotient);
        auto const oracle = brute_force_pseudoisometry(rx.quotient, ry.quotient);
        ctx.check(found.map.has_value() == oracle.has_value(), "isometry search is complete");
        if (found.map)
            ctx.check(is_isometry(*found.map), "isometry search returns isometries");
    }
}

inline void fuzz_constructions_case(CaseContext& ctx, Rng& rng, std::size_t max_n)
{
    Space const y = fuzz_space(rng, max_n);
    ctx.name("Y", y);

    Embedding const glued = glue_zero_point(y, rng.below(y.size()), "y0");
    ctx.check(validate_pseudometric(glued.super().to_raw()).ok(), "zero gluing validates");
    ctx.check(!is_closed(glued.super(), glued.image()), "zero gluing leaves the space non-closed");
    ctx.check(!in_cec(glued), "zero gluing is not CEC");

    GenParams p;
    p.seed = rng.next();
    p.n = rng.below(4);
    p.max_entry = Dist(1 + rng.below(4));
    p.max_denominator = 1 + rng.below(3);
    p.zero_merge_prob = Rational(rng.below(3), 4);

    Reflection const r = metric_reflection(y);
    Embedding const star = random_superspace(r.quotient, p, true);
    ctx.name("Y*", star.super());
    Embedding const x = completion_glue(y, star.super(), star.inclusion);
    ctx.check(validate_pseudometric(x.super().to_raw()).ok(), "completion gluing validates");
    ctx.check(in_cec(x), "completion gluing is CEC");
    ctx.check(is_closed(x.super(), x.image()), "Y is closed in the completion gluing");

    Embedding const cec = random_superspace(y, p, true);
    ctx.check(in_cec(cec), "forced superspace is CEC");
    ctx.check(is_closed(cec.super(), cec.image()), "Y is closed in every CEC superspace");

    p.seed = rng.next();
    Embedding const any = random_superspace(y, p, false);
    ctx.check(is_superspace(any), "generated superspace restricts correctly");
    ctx.check(check_cec_minimality(any), "closed superspaces are CEC");
}

} // namespace detail

inline FuzzReport run_fuzz(const FuzzOptions& opt)
{
    if (opt.max_n == 0)
        throw InputError("max-n must be at least 1");
    for (const auto& s : opt.suites)
        if (std::find(fuzz_suite_names().begin(), fuzz_suite_names().end(), s) ==
            fuzz_suite_names().end())
            throw InputError("unknown fuzz suite '" + s + "'");

    using CaseFn = void (*)(detail::CaseContext&, Rng&, std::size_t);
    static const CaseFn cases[] = {detail::fuzz_core_case, detail::fuzz_topology_case,
                                   detail::fuzz_morphisms_case, detail::fuzz_constructions_case};

    FuzzReport report{opt.seed, opt.count, opt.max_n, {}, std::nullopt};
    const auto& names = fuzz_suite_names();
    for (std::size_t k = 0; k < names.size(); ++k) {
        if (!opt.suites.empty() && !opt.suites.count(names[k]))
            continue;
        SuiteSummary summary{names[k]};
        for (std::uint64_t i = 0; i < opt.count; ++i) {
            std::uint64_t const case_seed = mix_seed(opt.seed, (std::uint64_t{k} << 40) + i);
            Rng rng(case_seed);
            detail::CaseContext ctx(summary, report.first_failure, case_seed);
            ++summary.cases;
            try {
                cases[k](ctx, rng, opt.max_n);
            } catch (const std::exception& e) {
                ctx.check(false, "no exception", e.what());
            }
        }
        report.suites.push_back(std::move(summary));
    }
    return report;
}

} // namespace pmetric
