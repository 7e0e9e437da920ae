#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "errors.hpp"
#include "point_map.hpp"
#include "random.hpp"
#include "reflection.hpp"
#include "space.hpp"
#include "topology.hpp"

namespace pmetric {

/// A subspace together with its inclusion into a superspace.
struct Embedding {
    PointMap inclusion;

    const Space& sub() const noexcept { return inclusion.domain(); }
    const Space& super() const noexcept { return inclusion.codomain(); }
    Subset image() const { return inclusion.image(); }

    /// Embedding of a space into a larger one that lists the same points
    /// first, in the same order.
    static Embedding prefix(const Space& sub, const Space& super)
    {
        std::vector<std::size_t> img(sub.size());
        for (std::size_t i = 0; i < img.size(); ++i)
            img[i] = i;
        return {PointMap(sub, super, std::move(img))};
    }
};

/// Injectivity and distance preservation of the inclusion, with witnesses.
inline Report check_superspace(const Embedding& e)
{
    Report report;
    const PointMap& m = e.inclusion;
    for (std::size_t i = 0; i < e.sub().size(); ++i)
        for (std::size_t j = i + 1; j < e.sub().size(); ++j) {
            if (m(i) == m(j))
                report.violations.push_back({"injectivity", {i, j}, {}});
            if (e.super()(m(i), m(j)) != e.sub()(i, j))
                report.violations.push_back({"distance-preservation",
                                             {i, j},
                                             {e.sub()(i, j).value(), e.super()(m(i), m(j)).value()}});
        }
    return report;
}

inline bool is_superspace(const Embedding& e) { return check_superspace(e).ok(); }

/// Every point outside the image is at positive distance from every image
/// point. Throws PreconditionError if `e` is not a superspace embedding.
inline bool in_cec(const Embedding& e)
{
    if (!is_superspace(e))
        throw PreconditionError("CEC membership requires a superspace embedding");
    Subset const inside = e.image();
    Subset const outside = inside.complement();
    for (std::size_t x : outside.members())
        for (std::size_t y : inside.members())
            if (e.super()(x, y).is_zero())
                return false;
    return true;
}

namespace detail {

/// `wanted` if unused, else the first of wanted~1, wanted~2, ... that is.
inline std::string fresh_label(const std::string& wanted, const std::unordered_set<std::string>& taken)
{
    if (!taken.count(wanted))
        return wanted;
    for (std::size_t k = 1;; ++k) {
        std::string candidate = wanted + "~" + std::to_string(k);
        if (!taken.count(candidate))
            return candidate;
    }
}

inline std::unordered_set<std::string> label_set(const Space& s)
{
    return {s.labels().begin(), s.labels().end()};
}

} // namespace detail

/// Adds one point y0 that duplicates x0: rho(y0, x) = d(x0, x) for x in X and
/// rho(y0, y0) = 0. X is then not closed in the result, and the result is
/// not a CEC superspace. Throws InputError on empty X or a used label.
inline Embedding glue_zero_point(const Space& x, std::size_t x0, const std::string& label)
{
    if (x.empty())
        throw InputError("gluing a zero point requires a nonempty space");
    if (x0 >= x.size())
        throw InputError("glue center out of range");
    if (x.find(label))
        throw InputError("label '" + label + "' is already used");
    std::size_t const n = x.size();
    std::vector<std::vector<Dist>> rows = x.rows();
    for (std::size_t i = 0; i < n; ++i)
        rows[i].push_back(x(x0, i));
    std::vector<Dist> last;
    for (std::size_t i = 0; i < n; ++i)
        last.push_back(x(x0, i));
    last.push_back(Dist(0));
    rows.push_back(std::move(last));
    std::vector<std::string> labels = x.labels();
    labels.push_back(label);
    return Embedding::prefix(x, Space(std::move(labels), rows));
}

/// Glues a metric superspace Y* of the reflection of Y onto Y.
///
/// The result X consists of the points of Y followed by the points of Y*
/// outside the image of Y/≡0. A point whose label is already used in Y is
/// renamed to the first free label~k, avoiding every label of Y and Y*.
/// Distances follow the four-case rule: a point of Y is measured through
/// its class's image in Y*, a new point directly in Y*. The returned
/// embedding of Y into X is a CEC superspace and Y is closed in X.
///
/// Throws PreconditionError if Y* is not metric, or if `refl_embedding` is
/// not a distance-preserving map from the reflection quotient of Y into Y*.
inline Embedding completion_glue(const Space& y, const Space& ystar, const PointMap& refl_embedding)
{
    Reflection const r = metric_reflection(y);
    if (!is_metric(ystar))
        throw PreconditionError("completion target must be a metric space");
    if (!(refl_embedding.domain() == r.quotient) || !(refl_embedding.codomain() == ystar))
        throw PreconditionError("embedding must map the reflection of Y into Y*");
    if (!is_superspace(Embedding{refl_embedding}))
        throw PreconditionError("embedding of the reflection into Y* must preserve distances");

    Subset const covered = refl_embedding.image();
    std::vector<std::size_t> added; // indices into Y*
    for (std::size_t p = 0; p < ystar.size(); ++p)
        if (!covered.contains(p))
            added.push_back(p);

    std::vector<std::string> labels = y.labels();
    std::unordered_set<std::string> const in_y = detail::label_set(y);
    std::unordered_set<std::string> taken = in_y;
    for (std::size_t p : added)
        taken.insert(ystar.label(p));
    for (std::size_t p : added) {
        const std::string& wanted = ystar.label(p);
        if (!in_y.count(wanted)) {
            labels.push_back(wanted);
            continue;
        }
        std::string l = detail::fresh_label(wanted, taken);
        taken.insert(l);
        labels.push_back(std::move(l));
    }

    std::size_t const ny = y.size();
    std::size_t const n = ny + added.size();
    // pi_star(x) = image in Y* of the class of x, for x in Y.
    auto pi_star = [&](std::size_t x) { return refl_embedding(r.projection(x)); };
    std::vector<std::vector<Dist>> rows(n, std::vector<Dist>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            bool const a_in_y = a < ny;
            bool const b_in_y = b < ny;
            if (a_in_y && b_in_y)
                rows[a][b] = ystar(pi_star(a), pi_star(b));
            else if (a_in_y)
                rows[a][b] = ystar(pi_star(a), added[b - ny]);
            else if (b_in_y)
                rows[a][b] = ystar(added[a - ny], pi_star(b));
            else
                rows[a][b] = ystar(added[a - ny], added[b - ny]);
        }
    return Embedding::prefix(y, Space(std::move(labels), rows));
}

/// The implication "Y closed in the superspace => the superspace is CEC",
/// evaluated on one instance. Throws PreconditionError unless `e` is a
/// superspace embedding.
inline bool check_cec_minimality(const Embedding& e)
{
    if (!is_superspace(e))
        throw PreconditionError("minimality check requires a superspace embedding");
    return !is_closed(e.super(), e.image()) || in_cec(e);
}

// ---------------------------------------------------------------------------
// Seeded generators
// ---------------------------------------------------------------------------

struct GenParams {
    std::uint64_t seed = 0;
    std::size_t n = 1;
    Rational zero_merge_prob{0};
    Dist max_entry{4};
    /// Random distances are p/q with 1 <= q <= max_denominator.
    std::uint64_t max_denominator = 1;

    void check() const
    {
        if (zero_merge_prob < 0 || zero_merge_prob > 1)
            throw InputError("zero_merge_prob must lie in [0, 1]");
        if (max_entry.is_zero())
            throw InputError("max_entry must be positive");
        if (max_denominator == 0)
            throw InputError("max_denominator must be positive");
    }
};

namespace detail {

/// Uniform draw among the rationals p/q in (0, max] with q drawn first.
inline Dist random_positive(Rng& rng, const GenParams& p)
{
    std::uint64_t const q = 1 + rng.below(p.max_denominator);
    Rational const scaled = p.max_entry.value() * q;
    BigInt const top = boost::multiprecision::numerator(scaled) / boost::multiprecision::denominator(scaled);
    if (top == 0)
        return p.max_entry;
    std::uint64_t const cap = top > BigInt(UINT64_MAX - 1) ? UINT64_MAX - 1 : top.convert_to<std::uint64_t>();
    return Dist(1 + rng.below(cap), q);
}

/// Floyd-Warshall closure over (min, +): the largest pseudometric below the
/// input entries. Strictly positive off-diagonal inputs stay positive.
inline void shortest_path_repair(std::vector<std::vector<Dist>>& m)
{
    std::size_t const n = m.size();
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Dist via = m[i][k] + m[k][j];
                if (via < m[i][j])
                    m[i][j] = std::move(via);
            }
}

inline Dist diameter(const Space& s)
{
    Dist best(0);
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j)
            if (s(i, j) > best)
                best = s(i, j);
    return best;
}

inline Space append_point(const Space& s, const std::vector<Dist>& f, std::string label)
{
    std::vector<std::vector<Dist>> rows = s.rows();
    for (std::size_t i = 0; i < s.size(); ++i)
        rows[i].push_back(f[i]);
    std::vector<Dist> last = f;
    last.push_back(Dist(0));
    rows.push_back(std::move(last));
    std::vector<std::string> labels = s.labels();
    labels.push_back(std::move(label));
    return Space(std::move(labels), rows);
}

} // namespace detail

/// Random pseudometric space, deterministic in the seed.
///
/// ceil(n * (1 - zero_merge_prob)) base points get random positive pairwise
/// distances, repaired into a metric by shortest paths; the remaining
/// points are zero-distance clones of earlier points. The point order is
/// then shuffled and points are labelled p0, p1, ...
inline Space random_space(const GenParams& p)
{
    p.check();
    if (p.n == 0)
        throw InputError("random_space needs n >= 1");
    Rng rng(p.seed);
    Rational const base_exact = Rational(p.n) * (1 - p.zero_merge_prob);
    BigInt base_count = boost::multiprecision::numerator(base_exact) /
                        boost::multiprecision::denominator(base_exact);
    if (Rational(base_count) < base_exact)
        ++base_count;
    std::size_t const m = std::clamp<std::size_t>(base_count.convert_to<std::size_t>(), 1, p.n);

    std::vector<std::vector<Dist>> base(m, std::vector<Dist>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            base[i][j] = base[j][i] = detail::random_positive(rng, p);
    detail::shortest_path_repair(base);

    std::vector<std::size_t> origin(p.n);
    for (std::size_t i = 0; i < p.n; ++i)
        origin[i] = i < m ? i : origin[rng.below(i)];
    rng.shuffle(origin);

    std::vector<std::string> labels(p.n);
    std::vector<std::vector<Dist>> rows(p.n, std::vector<Dist>(p.n));
    for (std::size_t i = 0; i < p.n; ++i) {
        labels[i] = "p" + std::to_string(i);
        for (std::size_t j = 0; j < p.n; ++j)
            rows[i][j] = base[origin[i]][origin[j]];
    }
    return Space(std::move(labels), rows);
}

/// Adds p.n fresh points (labelled q0, q1, ...) to y one at a time.
///
/// Each new point's distance row f must satisfy
/// |f(a) - f(b)| <= d(a, b) <= f(a) + f(b). It is either a zero-distance
/// clone of an existing point (probability zero_merge_prob, only when
/// force_cec is false) or f(x) = min_i (r_i + d(s_i, x)) over 1-3 random
/// anchors s_i with radii r_i > 0, lifted to at least half the current
/// diameter when more than one anchor is used. Without clones every new
/// point is at positive distance from y, so the result is CEC.
inline Embedding random_superspace(const Space& y, const GenParams& p, bool force_cec)
{
    p.check();
    Rng rng(p.seed);
    Space cur = y;
    std::unordered_set<std::string> taken = detail::label_set(y);
    for (std::size_t k = 0; k < p.n; ++k) {
        std::size_t const s = cur.size();
        std::vector<Dist> f(s);
        if (s > 0 && !force_cec && rng.chance(p.zero_merge_prob)) {
            std::size_t const src = rng.below(s);
            for (std::size_t x = 0; x < s; ++x)
                f[x] = cur(src, x);
        } else if (s > 0) {
            std::size_t const anchors = 1 + rng.below(std::min<std::size_t>(s, 3));
            std::vector<std::size_t> pool(s);
            for (std::size_t i = 0; i < s; ++i)
                pool[i] = i;
            rng.shuffle(pool);
            std::vector<Dist> radius(anchors);
            for (auto& r : radius)
                r = detail::random_positive(rng, p);
            Dist const floor = anchors > 1 ? detail::diameter(cur) / Dist(2) : Dist(0);
            for (std::size_t x = 0; x < s; ++x) {
                std::optional<Dist> best;
                for (std::size_t a = 0; a < anchors; ++a) {
                    Dist v = radius[a] + cur(pool[a], x);
                    if (!best || v < *best)
                        best = std::move(v);
                }
                f[x] = std::max(*best, floor);
            }
        }
        std::string label = detail::fresh_label("q" + std::to_string(k), taken);
        taken.insert(label);
        cur = detail::append_point(cur, f, std::move(label));
    }
    Embedding e = Embedding::prefix(y, cur);
    detail::ensure(is_superspace(e), "generated superspace restricts to the subspace");
    if (force_cec)
        detail::ensure(in_cec(e), "forced CEC superspace is CEC");
    return e;
}

/// A random space pseudoisometric to `space`: its reflection, with points
/// shuffled, and `extra` zero-distance clones added.
inline Space random_pseudoisometric_copy(const Space& space, std::size_t extra, std::uint64_t seed)
{
    Rng rng(seed);
    Reflection const r = metric_reflection(space);
    std::size_t const m = r.quotient.size();
    std::vector<std::size_t> origin(m + extra);
    for (std::size_t i = 0; i < origin.size(); ++i)
        origin[i] = i < m ? i : origin[rng.below(i)];
    rng.shuffle(origin);
    std::vector<std::string> labels(origin.size());
    std::vector<std::vector<Dist>> rows(origin.size(), std::vector<Dist>(origin.size()));
    for (std::size_t i = 0; i < origin.size(); ++i) {
        labels[i] = "c" + std::to_string(i);
        for (std::size_t j = 0; j < origin.size(); ++j)
            rows[i][j] = r.quotient(origin[i], origin[j]);
    }
    return Space(std::move(labels), rows);
}

} // namespace pmetric
