#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "point_map.hpp"
#include "reflection.hpp"
#include "space.hpp"

namespace pmetric {

namespace detail {

/// Distances of two spaces replaced by order-preserving integer ids drawn
/// from one shared dictionary, so equal distances get equal ids across both
/// spaces. Id 0 is distance zero whenever either space is nonempty.
struct InternedPair {
    std::size_t na = 0, nb = 0;
    std::vector<std::uint32_t> a, b;

    std::uint32_t da(std::size_t i, std::size_t j) const { return a[i * na + j]; }
    std::uint32_t db(std::size_t i, std::size_t j) const { return b[i * nb + j]; }
};

inline InternedPair intern(const Space& x, const Space& y)
{
    std::vector<Dist> values;
    values.reserve(x.size() * x.size() + y.size() * y.size());
    for (const Space* s : {&x, &y})
        for (std::size_t i = 0; i < s->size(); ++i)
            for (std::size_t j = 0; j < s->size(); ++j)
                values.push_back((*s)(i, j));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    auto id = [&](const Dist& v) {
        return static_cast<std::uint32_t>(std::lower_bound(values.begin(), values.end(), v) -
                                          values.begin());
    };
    InternedPair out;
    out.na = x.size();
    out.nb = y.size();
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            out.a.push_back(id(x(i, j)));
    for (std::size_t i = 0; i < y.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j)
            out.b.push_back(id(y(i, j)));
    return out;
}

/// Both conditions of a pseudoisometry, evaluated on interned distances.
inline bool satisfies_pseudoisometry(const InternedPair& t, const std::vector<std::size_t>& img)
{
    for (std::size_t x = 0; x < t.na; ++x)
        for (std::size_t y = x + 1; y < t.na; ++y)
            if (t.db(img[x], img[y]) != t.da(x, y))
                return false;
    for (std::size_t u = 0; u < t.nb; ++u) {
        bool reached = false;
        for (std::size_t v = 0; v < t.na && !reached; ++v)
            reached = t.db(img[v], u) == 0;
        if (!reached)
            return false;
    }
    return true;
}

} // namespace detail

/// First pair (x, y) with rho(m(x), m(y)) != d(x, y), if any.
inline std::optional<std::pair<std::size_t, std::size_t>> find_distortion(const PointMap& m)
{
    const Space& x = m.domain();
    const Space& y = m.codomain();
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j)
            if (y(m(i), m(j)) != x(i, j))
                return std::pair{i, j};
    return std::nullopt;
}

inline bool is_distance_preserving(const PointMap& m) { return !find_distortion(m).has_value(); }

/// Checks both pseudoisometry conditions and reports every failure:
/// "distance-preservation" with witness (x, y) and values (d(x,y), rho(..)),
/// and "zero-class-coverage" with the codomain point u whose zero class the
/// image misses.
inline Report is_pseudoisometry(const PointMap& m)
{
    const Space& x = m.domain();
    const Space& y = m.codomain();
    Report report;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j)
            if (y(m(i), m(j)) != x(i, j))
                report.violations.push_back({"distance-preservation",
                                             {i, j},
                                             {x(i, j).value(), y(m(i), m(j)).value()}});
    for (std::size_t u = 0; u < y.size(); ++u) {
        bool reached = false;
        for (std::size_t v = 0; v < x.size() && !reached; ++v)
            reached = y(m(v), u).is_zero();
        if (!reached)
            report.violations.push_back({"zero-class-coverage", {u}, {}});
    }
    return report;
}

/// Metric-space isometry: a distance-preserving bijection.
inline bool is_isometry(const PointMap& m) { return m.is_bijective() && is_distance_preserving(m); }

/// g after f. Throws InputError unless f's codomain is g's domain.
inline PointMap compose(const PointMap& f, const PointMap& g)
{
    if (!(f.codomain() == g.domain()))
        throw InputError("cannot compose: codomain of the first map is not the domain of the second");
    std::vector<std::size_t> img(f.domain().size());
    for (std::size_t x = 0; x < img.size(); ++x)
        img[x] = g(f(x));
    return PointMap(f.domain(), g.codomain(), std::move(img));
}

/// Checks F ∘ π_X = π_Y ∘ Φ for a map F between the reflections of Φ's
/// domain and codomain.
inline bool commutes(const PointMap& induced, const PointMap& phi)
{
    Reflection const rx = metric_reflection(phi.domain());
    Reflection const ry = metric_reflection(phi.codomain());
    if (!(induced.domain() == rx.quotient) || !(induced.codomain() == ry.quotient))
        return false;
    for (std::size_t x = 0; x < phi.domain().size(); ++x)
        if (induced(rx.projection(x)) != ry.projection(phi(x)))
            return false;
    return true;
}

/// The map F between metric reflections with F ∘ π_X = π_Y ∘ Φ.
///
/// F is read off the section (F(α) = π_Y(Φ(Ψ_X(α)))) and then checked on
/// every point, which is exactly the requirement that Φ sends
/// zero-distance pairs to zero-distance pairs. Throws PreconditionError if
/// phi is not a pseudoisometry.
inline PointMap induced_reflection_map(const PointMap& phi)
{
    if (!is_pseudoisometry(phi).ok())
        throw PreconditionError("induced reflection map requires a pseudoisometry");
    Reflection const rx = metric_reflection(phi.domain());
    Reflection const ry = metric_reflection(phi.codomain());
    std::vector<std::size_t> img(rx.quotient.size());
    for (std::size_t alpha = 0; alpha < img.size(); ++alpha)
        img[alpha] = ry.projection(phi(rx.section(alpha)));
    for (std::size_t x = 0; x < phi.domain().size(); ++x)
        detail::ensure(img[rx.projection(x)] == ry.projection(phi(x)), "induced map is well defined");
    return PointMap(rx.quotient, ry.quotient, std::move(img));
}

// ---------------------------------------------------------------------------
// Isometry search
// ---------------------------------------------------------------------------

struct IsoSearchStats {
    std::uint64_t nodes_expanded = 0;   ///< partial assignments extended
    std::uint64_t signature_prunes = 0; ///< candidate targets skipped by color
    std::uint64_t distance_checks = 0;  ///< pairwise consistency comparisons
};

struct IsometrySearch {
    std::optional<PointMap> map;
    IsoSearchStats stats;
};

namespace detail {

/// Joint color refinement of the points of two spaces. Start from the
/// sorted distance row; each round a point's new color is its old color
/// plus the sorted multiset of (distance, neighbour color). Colors are
/// drawn from one dictionary, so any isometry preserves them.
inline std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>
refine_colors(const InternedPair& t)
{
    using Signature = std::vector<std::uint64_t>;
    std::vector<std::uint32_t> ca(t.na), cb(t.nb);

    auto assign = [](std::map<Signature, std::uint32_t>& dict, Signature&& s) {
        auto [it, inserted] = dict.emplace(std::move(s), static_cast<std::uint32_t>(dict.size()));
        return it->second;
    };

    {
        std::map<Signature, std::uint32_t> dict;
        auto initial = [&](std::size_t n, auto dist, std::vector<std::uint32_t>& out) {
            for (std::size_t v = 0; v < n; ++v) {
                Signature s;
                for (std::size_t u = 0; u < n; ++u)
                    s.push_back(dist(v, u));
                std::sort(s.begin(), s.end());
                out[v] = assign(dict, std::move(s));
            }
        };
        initial(t.na, [&](auto i, auto j) { return t.da(i, j); }, ca);
        initial(t.nb, [&](auto i, auto j) { return t.db(i, j); }, cb);
    }

    auto count_colors = [&] {
        std::vector<std::uint32_t> all(ca);
        all.insert(all.end(), cb.begin(), cb.end());
        std::sort(all.begin(), all.end());
        return static_cast<std::size_t>(std::unique(all.begin(), all.end()) - all.begin());
    };

    std::size_t colors = count_colors();
    for (;;) {
        std::map<Signature, std::uint32_t> dict;
        std::vector<std::uint32_t> na(t.na), nb(t.nb);
        auto round = [&](std::size_t n, auto dist, const std::vector<std::uint32_t>& old,
                         std::vector<std::uint32_t>& out) {
            for (std::size_t v = 0; v < n; ++v) {
                Signature s;
                for (std::size_t u = 0; u < n; ++u)
                    if (u != v)
                        s.push_back(static_cast<std::uint64_t>(dist(v, u)) << 32 | old[u]);
                std::sort(s.begin(), s.end());
                s.insert(s.begin(), old[v]);
                out[v] = assign(dict, std::move(s));
            }
        };
        round(t.na, [&](auto i, auto j) { return t.da(i, j); }, ca, na);
        round(t.nb, [&](auto i, auto j) { return t.db(i, j); }, cb, nb);
        ca = std::move(na);
        cb = std::move(nb);
        std::size_t const next = count_colors();
        if (next == colors)
            break;
        colors = next;
    }
    return {std::move(ca), std::move(cb)};
}

} // namespace detail

/// Searches for a distance-preserving bijection between two metric spaces.
///
/// Backtracking over partial assignments; domain points are visited in
/// order of increasing color-class size (ties by index) and each is tried
/// against same-colored, unused targets in increasing index order that are
/// consistent with every earlier assignment. The search is complete.
/// Throws PreconditionError if either space is not metric.
inline IsometrySearch find_isometry(const Space& a, const Space& b)
{
    if (!is_metric(a) || !is_metric(b))
        throw PreconditionError("isometry search requires metric spaces");
    IsometrySearch result;
    if (a.size() != b.size())
        return result;
    std::size_t const n = a.size();
    if (n == 0) {
        result.map = PointMap(a, b, {});
        return result;
    }

    detail::InternedPair const t = detail::intern(a, b);
    auto const [ca, cb] = detail::refine_colors(t);

    {
        std::vector<std::uint32_t> ha(ca), hb(cb);
        std::sort(ha.begin(), ha.end());
        std::sort(hb.begin(), hb.end());
        if (ha != hb) {
            ++result.stats.signature_prunes;
            return result;
        }
    }

    std::map<std::uint32_t, std::size_t> freq;
    for (auto c : ca)
        ++freq[c];
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return freq[ca[x]] < freq[ca[y]]; });

    std::vector<std::size_t> image(n, n);
    std::vector<bool> used(n, false);
    IsoSearchStats& stats = result.stats;

    auto extend = [&](auto& self, std::size_t depth) -> bool {
        if (depth == n)
            return true;
        std::size_t const v = order[depth];
        for (std::size_t target = 0; target < n; ++target) {
            if (used[target])
                continue;
            if (cb[target] != ca[v]) {
                ++stats.signature_prunes;
                continue;
            }
            bool consistent = true;
            for (std::size_t k = 0; k < depth && consistent; ++k) {
                std::size_t const u = order[k];
                ++stats.distance_checks;
                consistent = t.db(target, image[u]) == t.da(v, u);
            }
            if (!consistent)
                continue;
            ++stats.nodes_expanded;
            image[v] = target;
            used[target] = true;
            if (self(self, depth + 1))
                return true;
            used[target] = false;
            image[v] = n;
        }
        return false;
    };

    if (extend(extend, 0))
        result.map = PointMap(a, b, image);
    return result;
}

/// A pseudoisometry X -> Y built as Ψ_Y ∘ F ∘ π_X from an isometry F of
/// the metric reflections, or nothing if the reflections are not isometric.
/// Throws InputError on empty input.
inline std::optional<PointMap> are_pseudoisometric(const Space& x, const Space& y)
{
    if (x.empty() || y.empty())
        throw InputError("pseudoisometry search requires nonempty spaces");
    Reflection const rx = metric_reflection(x);
    Reflection const ry = metric_reflection(y);
    IsometrySearch const found = find_isometry(rx.quotient, ry.quotient);
    if (!found.map)
        return std::nullopt;
    return compose(compose(rx.projection, *found.map), ry.section);
}

inline constexpr std::uint64_t default_brute_force_cap = 1'000'000;

/// Oracle: enumerates all |Y|^|X| total maps in lexicographic image order
/// (first point most significant) and returns the first pseudoisometry.
/// Throws ResourceError if the number of maps exceeds `cap`.
inline std::optional<PointMap> brute_force_pseudoisometry(const Space& x, const Space& y,
                                                          std::uint64_t cap = default_brute_force_cap)
{
    std::size_t const nx = x.size();
    std::size_t const ny = y.size();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < nx; ++i) {
        if (ny == 0) {
            total = 0;
            break;
        }
        if (total > cap / ny) {
            throw ResourceError("brute force would enumerate more than " + std::to_string(cap) +
                                " maps");
        }
        total *= ny;
    }
    if (total > cap)
        throw ResourceError("brute force would enumerate more than " + std::to_string(cap) + " maps");
    if (total == 0)
        return std::nullopt;

    detail::InternedPair const t = detail::intern(x, y);
    std::vector<std::size_t> img(nx, 0);
    for (;;) {
        if (detail::satisfies_pseudoisometry(t, img))
            return PointMap(x, y, img);
        std::size_t pos = nx;
        while (pos > 0) {
            --pos;
            if (++img[pos] < ny)
                break;
            img[pos] = 0;
            if (pos == 0)
                return std::nullopt;
        }
        if (nx == 0)
            return std::nullopt;
    }
}

} // namespace pmetric
