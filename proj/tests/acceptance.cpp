// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <pmetric/cli.hpp>
#include <pmetric/pmetric.hpp>

#include "oracles.hpp"

using namespace pmetric;

namespace {

struct Outcome {
    std::size_t cases = 0;
    std::size_t violations = 0;
    std::string note;
};

struct Criterion {
    const char* name;
    double budget_seconds; // 0 = no time bound
    std::function<Outcome()> body;
};

void expect(Outcome& o, bool holds, const std::string& what)
{
    if (holds)
        return;
    if (o.violations++ == 0)
        o.note = what;
}

GenParams params(std::uint64_t seed, std::size_t n, Rational zero, std::uint64_t max_entry = 4,
                 std::uint64_t max_den = 1)
{
    GenParams p;
    p.seed = seed;
    p.n = n;
    p.zero_merge_prob = zero;
    p.max_entry = Dist(max_entry);
    p.max_denominator = max_den;
    return p;
}

/// Saturation straight from the matrix: every zero-distance neighbour of a
/// member is a member.
bool saturated_by_scan(const Space& s, std::uint64_t mask)
{
    for (std::size_t a = 0; a < s.size(); ++a)
        if (mask >> a & 1U)
            for (std::size_t x = 0; x < s.size(); ++x)
                if (s(a, x).is_zero() && !(mask >> x & 1U))
                    return false;
    return true;
}

std::uint64_t saturate_by_scan(const Space& s, std::uint64_t mask)
{
    std::uint64_t out = mask;
    for (std::size_t a = 0; a < s.size(); ++a)
        if (mask >> a & 1U)
            for (std::size_t x = 0; x < s.size(); ++x)
                if (s(a, x).is_zero())
                    out |= std::uint64_t{1} << x;
    return out;
}

std::uint64_t mask_of(const Subset& a)
{
    std::uint64_t m = 0;
    for (std::size_t i : a.members())
        m |= std::uint64_t{1} << i;
    return m;
}

bool distances_preserved(const PointMap& m)
{
    for (std::size_t i = 0; i < m.domain().size(); ++i)
        for (std::size_t j = 0; j < m.domain().size(); ++j)
            if (m.domain()(i, j) != m.codomain()(m(i), m(j)))
                return false;
    return true;
}

// ---------------------------------------------------------------------------

Outcome quotient_correctness()
{
    Outcome o;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        Space const s = random_space(params(seed, 1 + seed % 8, Rational(seed % 5, 5), 1 + seed % 4, 1 + seed % 3));
        Reflection const r = metric_reflection(s);
        ++o.cases;
        bool metric = true;
        for (std::size_t a = 0; a < r.quotient.size(); ++a)
            for (std::size_t b = 0; b < r.quotient.size(); ++b)
                metric = metric && (a == b || !r.quotient(a, b).is_zero());
        expect(o, metric && is_metric(r.quotient), "quotient not metric, seed " + std::to_string(seed));
        for (std::size_t x = 0; x < s.size(); ++x)
            for (std::size_t y = 0; y < s.size(); ++y)
                expect(o, r.quotient(r.projection(x), r.projection(y)) == s(x, y),
                       "quotient distance differs, seed " + std::to_string(seed));
    }
    return o;
}

std::vector<Space> exhaustive_family()
{
    std::vector<Space> out;
    for (std::size_t n = 1; n <= 4; ++n)
        for (Space& s : oracle::all_spaces(n, {0, 1, 2}))
            out.push_back(std::move(s));
    return out;
}

Outcome topology_equivalences()
{
    Outcome o;
    for (const Space& s : exhaustive_family()) {
        std::size_t const n = s.size();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            ++o.cases;
            Subset const a = Subset::from_mask(n, mask);
            bool const sat = saturated_by_scan(s, mask);
            bool const open = is_open(s, a);
            bool const closed = is_closed(s, a);
            expect(o, open == sat && closed == sat, "open/closed/saturated disagree");
            expect(o, mask_of(closure(s, a)) == saturate_by_scan(s, mask), "closure is not saturation");
            expect(o, complete_via_boundary(s, a), "boundary criterion false");
            if (mask != 0)
                expect(o, closed_via_completeness(s, a) == closed, "completeness criterion differs from closedness");
        }
    }
    return o;
}

Outcome metric_iff_all_closed()
{
    Outcome o;
    for (const Space& s : exhaustive_family()) {
        ++o.cases;
        std::size_t const n = s.size();
        bool every_closed = true;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
            every_closed = every_closed && is_closed(s, Subset::from_mask(n, mask));
        bool distinct_apart = true;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                distinct_apart = distinct_apart && !s(i, j).is_zero();
        expect(o, is_metric(s) == distinct_apart, "is_metric wrong");
        expect(o, distinct_apart == every_closed, "metric <=> every subset closed fails");
    }
    return o;
}

Outcome zero_point_gluing()
{
    Outcome o;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        ++o.cases;
        Space const x = random_space(params(seed, 1 + seed % 8, Rational(seed % 4, 4), 5, 1 + seed % 2));
        Embedding const e = glue_zero_point(x, seed % x.size(), "glued");
        expect(o, oracle::is_pseudometric(e.super().to_raw().rows), "glued space invalid");
        expect(o, !is_closed(e.super(), e.image()), "original points closed after gluing");
    }
    return o;
}

Outcome completion_gluing()
{
    Outcome o;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        ++o.cases;
        Space const y = random_space(params(seed, 1 + seed % 7, Rational(seed % 4, 4), 4, 1 + seed % 3));
        Reflection const r = metric_reflection(y);
        Embedding const star = random_superspace(r.quotient, params(seed + 7777, 1 + seed % 4, 0, 3, 2), true);
        expect(o, is_metric(star.super()), "Y* not metric");
        Embedding const x = completion_glue(y, star.super(), star.inclusion);
        std::string const tag = " (seed " + std::to_string(seed) + ")";
        expect(o, oracle::is_pseudometric(x.super().to_raw().rows), "glued space invalid" + tag);
        expect(o, in_cec(x), "not CEC" + tag);
        // Y closed: every point outside Y at positive distance from Y.
        bool apart = true;
        for (std::size_t p = y.size(); p < x.super().size(); ++p)
            for (std::size_t q = 0; q < y.size(); ++q)
                apart = apart && !x.super()(p, q).is_zero();
        expect(o, apart && is_closed(x.super(), x.image()), "Y not closed" + tag);
    }
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        ++o.cases;
        Space const y = random_space(params(seed * 31 + 5, 1 + seed % 6, Rational(seed % 3, 3)));
        Embedding const e =
            random_superspace(y, params(seed, 1 + seed % 4, Rational(seed % 4, 4), 4, 1 + seed % 2), seed % 5 == 0);
        expect(o, check_cec_minimality(e), "minimality fails, seed " + std::to_string(seed));
    }
    return o;
}

Outcome pseudoisometry_oracles()
{
    Outcome o;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        ++o.cases;
        std::size_t const nx = 1 + seed % 5;
        Space const x = oracle::random_small(seed, nx, static_cast<int>(seed % 4), 2);
        std::size_t const classes = zero_classes(x).block_count();
        Space const y = seed % 3 == 0 ? oracle::random_small(seed + 4242, 1 + (seed / 3) % 5, static_cast<int>(seed % 3), 2)
                                      : random_pseudoisometric_copy(x, seed % (6 - classes), seed);
        auto const fast = are_pseudoisometric(x, y);
        auto const slow = brute_force_pseudoisometry(x, y);
        std::string const tag = " (seed " + std::to_string(seed) + ")";
        expect(o, fast.has_value() == slow.has_value(), "oracles disagree" + tag);
        for (const auto* w : {&fast, &slow}) {
            if (!*w)
                continue;
            expect(o, is_pseudoisometry(**w).ok(), "witness is not a pseudoisometry" + tag);
            PointMap const f = induced_reflection_map(**w);
            expect(o, f.is_bijective() && distances_preserved(f), "induced map not an isometry" + tag);
            Reflection const rx = metric_reflection(x), ry = metric_reflection(y);
            bool square = true;
            for (std::size_t p = 0; p < x.size(); ++p)
                square = square && f(rx.projection(p)) == ry.projection((**w)(p));
            expect(o, square && commutes(f, **w), "induced map does not commute" + tag);
        }
    }
    return o;
}

Outcome isometry_search()
{
    Outcome o;
    std::vector<Space> pool;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        if (seed % 3 == 2)
            pool.push_back(oracle::permuted(pool.back(), seed));
        else
            pool.push_back(random_space(params(seed, 1 + seed % 6, 0, 2)));
    }
    std::size_t positives = 0;
    for (std::size_t i = 0; i < pool.size(); ++i)
        for (std::size_t j = 0; j < pool.size(); ++j) {
            ++o.cases;
            IsometrySearch const r = find_isometry(pool[i], pool[j]);
            bool const truth = oracle::isometric_by_permutations(pool[i], pool[j]);
            expect(o, r.map.has_value() == truth,
                   "disagreement on pair " + std::to_string(i) + "," + std::to_string(j));
            if (r.map) {
                ++positives;
                expect(o, r.map->is_bijective() && distances_preserved(*r.map), "returned map not an isometry");
            }
        }
    o.note = o.violations ? o.note : std::to_string(positives) + " isometric pairs";
    return o;
}

Outcome metric_morphism_laws()
{
    Outcome o;
    std::mt19937_64 rng(2024);
    std::uint64_t seed = 0;
    std::size_t both = 0, codomain_only = 0;
    while (o.cases < 1000) {
        ++seed;
        Space const x = oracle::random_small(seed, 1 + seed % 5, static_cast<int>(seed % 3), 3);
        Space const y = random_pseudoisometric_copy(x, seed % 2 ? 0 : seed % 3, seed ^ 0xabc);
        auto const base = are_pseudoisometric(x, y);
        if (!base)
            continue;
        // Re-pick each image inside its zero class of Y, then validate.
        std::vector<std::size_t> img(x.size());
        for (std::size_t p = 0; p < x.size(); ++p) {
            auto const& cls = class_of(y, (*base)(p)).members();
            img[p] = cls[rng() % cls.size()];
        }
        PointMap const phi(x, y, img);
        if (!is_pseudoisometry(phi).ok())
            continue;
        ++o.cases;
        bool const dm = is_metric(x), cm = is_metric(y);
        both += dm && cm;
        codomain_only += cm && !dm;
        if (dm && cm)
            expect(o, phi.is_bijective() && distances_preserved(phi), "metric pseudoisometry not a bijective isometry");
        if (cm)
            expect(o, phi.is_surjective(), "metric codomain but not surjective");
        if (dm)
            expect(o, phi.is_injective(), "metric domain but not injective");
    }
    if (!o.violations)
        o.note = std::to_string(both) + " metric-to-metric, " + std::to_string(codomain_only) +
                 " onto a metric codomain";
    return o;
}

Outcome equivalence_relation()
{
    Outcome o;
    std::vector<Space> pool;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        if (seed % 3 == 2)
            pool.push_back(random_pseudoisometric_copy(pool[seed - 2], seed % 3, seed));
        else
            pool.push_back(oracle::random_small(seed, 1 + seed % 5, static_cast<int>(seed % 4), 2));
    }
    std::size_t const n = pool.size();
    std::vector<std::vector<std::optional<PointMap>>> w(n, std::vector<std::optional<PointMap>>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            w[i][j] = are_pseudoisometric(pool[i], pool[j]);
    std::size_t related = 0;
    for (std::size_t i = 0; i < n; ++i) {
        ++o.cases;
        expect(o, w[i][i].has_value(), "not reflexive at " + std::to_string(i));
        for (std::size_t j = 0; j < n; ++j) {
            related += w[i][j].has_value();
            expect(o, w[i][j].has_value() == w[j][i].has_value(), "not symmetric");
            if (w[i][j])
                expect(o, is_pseudoisometry(*w[i][j]).ok(), "invalid witness");
            for (std::size_t k = 0; k < n; ++k) {
                if (!w[i][j] || !w[j][k])
                    continue;
                ++o.cases;
                expect(o, w[i][k].has_value(), "not transitive");
                expect(o, is_pseudoisometry(compose(*w[i][j], *w[j][k])).ok(), "composite not a pseudoisometry");
            }
        }
    }
    if (!o.violations)
        o.note = std::to_string(related) + " related ordered pairs";
    return o;
}

Outcome determinism_and_format()
{
    Outcome o;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        ++o.cases;
        Space const s = random_space(params(seed, 1 + seed % 9, Rational(seed % 3, 3), 1 + seed % 6, 1 + seed % 5));
        std::string const text = emit_document(s);
        // Also a non-canonical spelling of the same document.
        std::ostringstream loose;
        loose << "{\"d\":[";
        for (std::size_t i = 0; i < s.size(); ++i) {
            loose << (i ? "," : "") << '[';
            for (std::size_t j = 0; j < s.size(); ++j)
                loose << (j ? "," : "") << "\"" << s(i, j).numerator() * 3 << '/' << s(i, j).denominator() * 3
                      << "\"";
            loose << ']';
        }
        loose << "],\"points\":" << json(s.labels()).dump() << '}';
        expect(o, canonicalize(text) == text, "canonical text not a fixed point");
        expect(o, canonicalize(loose.str()) == text, "loose spelling canonicalizes differently");
        expect(o, parse_space(text) == s, "round trip changed the space");
    }
    std::vector<std::string> const args{"fuzz", "--seed", "7", "--count", "150", "--max-n", "6"};
    std::ostringstream out1, out2, err;
    int const c1 = cli::cli_main(args, out1, err);
    int const c2 = cli::cli_main(args, out2, err);
    ++o.cases;
    expect(o, c1 == 0 && c2 == 0, "fuzz reported failures");
    expect(o, out1.str() == out2.str(), "fuzz output differs between runs");
    return o;
}

} // namespace

int main()
{
    std::vector<Criterion> const criteria{
        {"quotient correctness", 5, quotient_correctness},
        {"finite topology equivalences", 60, topology_equivalences},
        {"metric iff every subset closed", 60, metric_iff_all_closed},
        {"zero-point gluing leaves the space non-closed", 5, zero_point_gluing},
        {"completion gluing and CEC minimality", 10, completion_gluing},
        {"reflection route agrees with brute force", 30, pseudoisometry_oracles},
        {"isometry search completeness", 30, isometry_search},
        {"metric pseudoisometry laws", 0, metric_morphism_laws},
        {"pseudoisometric relation is an equivalence", 0, equivalence_relation},
        {"determinism and canonical format", 0, determinism_and_format},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const Criterion& c = criteria[k];
        auto const start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o.violations = 1;
            o.note = std::string("exception: ") + e.what();
        }
        double const secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool const in_time = c.budget_seconds == 0 || secs < c.budget_seconds;
        bool const pass = o.violations == 0 && in_time && o.cases > 0;
        failed += !pass;
        std::printf("[%s] %2zu %s: cases=%zu violations=%zu time=%.2fs", pass ? "PASS" : "FAIL", k + 1, c.name,
                    o.cases, o.violations, secs);
        if (c.budget_seconds > 0)
            std::printf(" (limit %.0fs)", c.budget_seconds);
        if (!o.note.empty())
            std::printf(" %s", o.note.c_str());
        std::printf("\n");
    }
    std::printf("%s: %zu/%zu criteria passed\n", failed ? "FAILED" : "OK", criteria.size() - failed, criteria.size());
    return failed ? 1 : 0;
}
