#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"
#include "point_map.hpp"
#include "space.hpp"
#include "union_find.hpp"

namespace pmetric {

/// The metric reflection of a pseudometric space: the quotient by the
/// zero-distance relation, with its projection and a section.
///
/// Quotient point k corresponds to block k of `classes` and carries the
/// label of that block's least index. The section picks that least index.
struct Reflection {
    Space quotient;
    Partition classes;
    PointMap projection; ///< space -> quotient
    PointMap section;    ///< quotient -> space
};

/// Builds the metric reflection. Throws InputError on the empty space.
inline Reflection metric_reflection(const Space& space)
{
    if (space.empty())
        throw InputError("metric reflection requires a nonempty space");
    Partition classes = zero_classes(space);
    std::size_t const m = classes.block_count();

    std::vector<std::string> labels;
    std::vector<std::size_t> reps;
    for (const auto& b : classes.blocks()) {
        reps.push_back(b.front());
        labels.push_back(space.label(b.front()));
    }
    std::vector<std::vector<Dist>> rows(m, std::vector<Dist>(m));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            rows[a][b] = space(reps[a], reps[b]);
    Space quotient(std::move(labels), rows);

    std::vector<std::size_t> proj(space.size());
    for (std::size_t x = 0; x < space.size(); ++x)
        proj[x] = classes.block_of(x);

    // The quotient distance must not depend on the representatives.
    for (std::size_t x = 0; x < space.size(); ++x)
        for (std::size_t y = 0; y < space.size(); ++y)
            detail::ensure(quotient(proj[x], proj[y]) == space(x, y),
                           "quotient distance is representative independent");

    PointMap projection(space, quotient, std::move(proj));
    PointMap section(quotient, space, std::move(reps));
    return {std::move(quotient), std::move(classes), std::move(projection), std::move(section)};
}

/// Representative independence of the quotient distance on an arbitrary
/// (possibly invalid) matrix. Classes are the transitive closure of the
/// zero relation. For x, x' in one class and any y, both d(x,y) = d(x',y)
/// and d(y,x) = d(y,x') must hold; violations carry the triple (x, x', y).
/// Chaining these equalities covers every quadruple (x, x', y, y').
inline Report check_well_defined(const RawMatrix& m)
{
    std::size_t const n = m.size();
    if (m.rows.size() != n)
        throw InputError("matrix dimension does not match labels");
    DisjointSet sets(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (m(i, j) == 0)
                sets.unite(i, j);
    Report report;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t xp = x + 1; xp < n; ++xp) {
            if (!sets.same(x, xp))
                continue;
            for (std::size_t y = 0; y < n; ++y) {
                if (m(x, y) != m(xp, y))
                    report.violations.push_back({"well-defined", {x, xp, y}, {m(x, y), m(xp, y)}});
                else if (m(y, x) != m(y, xp))
                    report.violations.push_back({"well-defined", {x, xp, y}, {m(y, x), m(y, xp)}});
            }
        }
    return report;
}

inline Report check_well_defined(const Space& space) { return check_well_defined(space.to_raw()); }

/// The canonical projection onto the metric reflection, as a map.
inline PointMap projection_as_pseudoisometry(const Space& space)
{
    return metric_reflection(space).projection;
}

} // namespace pmetric
