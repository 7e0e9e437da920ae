#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "space.hpp"

// The ball topology of a finite pseudometric space.
//
// On a finite space every point has a least positive distance to the rest,
// so the ball of that radius around a is exactly [a]_0. Hence the open sets,
// the closed sets and the saturated sets all coincide, and closure reduces
// to saturation. Several operations compute an answer two independent ways
// and fail loudly (std::logic_error) if they disagree.

namespace pmetric {

namespace detail {

inline void check_subset(const Space& space, const Subset& a)
{
    if (a.universe() != space.size())
        throw InputError("subset universe (" + std::to_string(a.universe()) +
                         ") does not match space size (" + std::to_string(space.size()) + ")");
}

/// Least positive distance from a, if any.
inline std::optional<Dist> least_positive_distance(const Space& space, std::size_t a)
{
    std::optional<Dist> best;
    for (std::size_t x = 0; x < space.size(); ++x) {
        const Dist& v = space(a, x);
        if (!v.is_zero() && (!best || v < *best))
            best = v;
    }
    return best;
}

} // namespace detail

/// B_r(c) = {x : d(c, x) < r}. Throws InputError unless r > 0.
inline Subset open_ball(const Space& space, std::size_t c, const Dist& r)
{
    if (c >= space.size())
        throw InputError("ball center out of range");
    if (r.is_zero())
        throw InputError("ball radius must be positive");
    std::vector<std::size_t> m;
    for (std::size_t x = 0; x < space.size(); ++x)
        if (space(c, x) < r)
            m.push_back(x);
    return Subset(space.size(), std::move(m));
}

namespace detail {

// Open via the base of balls: every point of A has a ball inside A.
inline bool is_open_by_balls(const Space& space, const Subset& a)
{
    for (std::size_t p : a.members()) {
        Dist const r = least_positive_distance(space, p).value_or(Dist(1));
        if (!open_ball(space, p, r).is_subset_of(a))
            return false;
    }
    return true;
}

// Closure as {x : min over a in A of d(x, a) = 0}.
inline Subset closure_by_min_distance(const Space& space, const Subset& a)
{
    std::vector<std::size_t> m;
    for (std::size_t x = 0; x < space.size(); ++x) {
        std::optional<Dist> best;
        for (std::size_t p : a.members())
            if (!best || space(x, p) < *best)
                best = space(x, p);
        if (best && best->is_zero())
            m.push_back(x);
    }
    return Subset(space.size(), std::move(m));
}

} // namespace detail

inline bool is_open(const Space& space, const Subset& a)
{
    detail::check_subset(space, a);
    bool const by_balls = detail::is_open_by_balls(space, a);
    detail::ensure(by_balls == is_saturated(space, a), "open <=> saturated");
    return by_balls;
}

/// Finite-space closure; agrees with saturate().
inline Subset closure(const Space& space, const Subset& a)
{
    detail::check_subset(space, a);
    Subset c = detail::closure_by_min_distance(space, a);
    detail::ensure(c == saturate(space, a), "closure == saturation");
    return c;
}

inline Subset interior(const Space& space, const Subset& a)
{
    return closure(space, a.complement()).complement();
}

/// Fr(A) = cl(A) ∩ cl(X \ A), cross-checked against cl(A) \ int(A).
inline Subset boundary(const Space& space, const Subset& a)
{
    Subset const cl = closure(space, a);
    Subset fr = cl & closure(space, a.complement());
    detail::ensure(fr == (cl - interior(space, a)), "boundary formulas agree");
    return fr;
}

inline bool is_closed(const Space& space, const Subset& a)
{
    detail::check_subset(space, a);
    bool const by_complement = detail::is_open_by_balls(space, a.complement());
    detail::ensure(by_complement == is_saturated(space, a), "closed <=> saturated");
    return by_complement;
}

// ---------------------------------------------------------------------------
// Sequences
// ---------------------------------------------------------------------------

/// An eventually periodic sequence: `prefix` followed by `cycle` repeated
/// forever. Every convergence phenomenon of a finite space shows up in this
/// model.
struct EPSequence {
    std::vector<std::size_t> prefix;
    std::vector<std::size_t> cycle;

    std::size_t at(std::size_t n) const
    {
        if (n < prefix.size())
            return prefix[n];
        return cycle[(n - prefix.size()) % cycle.size()];
    }
};

namespace detail {

inline void check_sequence(const Space& space, const EPSequence& seq)
{
    if (seq.cycle.empty())
        throw InputError("sequence cycle must be nonempty");
    for (auto const* part : {&seq.prefix, &seq.cycle})
        for (std::size_t i : *part)
            if (i >= space.size())
                throw InputError("sequence term out of range");
}

} // namespace detail

/// Cauchy iff the cycle points are pairwise at distance zero: the tail
/// visits each cycle point infinitely often, so any positive gap between
/// two of them refutes the condition for r at most half that gap.
inline bool is_cauchy(const Space& space, const EPSequence& seq)
{
    detail::check_sequence(space, seq);
    for (std::size_t a : seq.cycle)
        for (std::size_t b : seq.cycle)
            if (!space(a, b).is_zero())
                return false;
    return true;
}

/// All points the sequence converges to: [c]_0 for a cycle point c when
/// the sequence is Cauchy, otherwise none.
inline Subset limit_points(const Space& space, const EPSequence& seq)
{
    if (!is_cauchy(space, seq))
        return Subset::none(space.size());
    return class_of(space, seq.cycle.front());
}

inline bool converges_to(const Space& space, const EPSequence& seq, std::size_t a)
{
    return limit_points(space, seq).contains(a);
}

/// A subset is complete when every Cauchy sequence inside it has a limit in
/// it. For eventually periodic sequences in A the cycle point itself is a
/// limit, so this holds for every subset of a finite space.
inline bool is_complete_subset(const Space& space, const Subset& a)
{
    detail::check_subset(space, a);
    for (std::size_t c : a.members())
        if (!limit_points(space, EPSequence{{}, {c}}).contains(c))
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// Completeness criteria
// ---------------------------------------------------------------------------

/// Boundary criterion for completeness in a complete ambient space: every
/// boundary point x has [x]_0 meeting A. Always true on finite spaces.
inline bool complete_via_boundary(const Space& space, const Subset& a)
{
    for (std::size_t x : boundary(space, a).members())
        if ((class_of(space, x) & a).empty())
            return false;
    return true;
}

/// Dual criterion: a nonempty A is closed iff it is complete and equals the
/// union of the classes of its members. Throws InputError on empty A.
inline bool closed_via_completeness(const Space& space, const Subset& a)
{
    detail::check_subset(space, a);
    if (a.empty())
        throw InputError("closedness criterion requires a nonempty subset");
    return complete_via_boundary(space, a) && is_saturated(space, a);
}

} // namespace pmetric
