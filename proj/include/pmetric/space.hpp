#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dist.hpp"
#include "errors.hpp"
#include "union_find.hpp"

namespace pmetric {

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

/// One violated axiom or property, with the point indices that witness it
/// and the offending values (in the order the axiom name suggests).
struct Violation {
    std::string axiom;
    std::vector<std::size_t> witness;
    std::vector<Rational> values;

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct Report {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }

    bool has(std::string_view axiom) const
    {
        return std::any_of(violations.begin(), violations.end(),
                           [&](const Violation& v) { return v.axiom == axiom; });
    }

    bool has(std::string_view axiom, const std::vector<std::size_t>& witness) const
    {
        return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) {
            return v.axiom == axiom && v.witness == witness;
        });
    }
};

/// Thrown when a matrix that must be a pseudometric is not one.
class InvalidSpace : public InputError {
public:
    explicit InvalidSpace(Report report)
        : InputError(summarize(report)), report_(std::move(report))
    {
    }

    const Report& report() const noexcept { return report_; }

private:
    static std::string summarize(const Report& r)
    {
        std::ostringstream os;
        os << "not a pseudometric: " << r.violations.size() << " violation(s)";
        if (!r.violations.empty())
            os << ", first: " << r.violations.front().axiom;
        return os.str();
    }

    Report report_;
};

// ---------------------------------------------------------------------------
// Raw (unvalidated) matrices and validation
// ---------------------------------------------------------------------------

/// A labeled square table of signed rationals, as read from input, before
/// any axiom has been checked.
struct RawMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<Rational>> rows;

    std::size_t size() const noexcept { return labels.size(); }
    const Rational& operator()(std::size_t i, std::size_t j) const { return rows[i][j]; }
};

namespace detail {

inline void check_shape(const std::vector<std::string>& labels, std::size_t rows,
                        const auto& row_size)
{
    if (rows != labels.size())
        throw InputError("matrix has " + std::to_string(rows) + " rows but " +
                         std::to_string(labels.size()) + " labels");
    for (std::size_t i = 0; i < rows; ++i)
        if (row_size(i) != labels.size())
            throw InputError("matrix row " + std::to_string(i) + " has " +
                             std::to_string(row_size(i)) + " entries, expected " +
                             std::to_string(labels.size()));
    std::unordered_set<std::string_view> seen;
    for (const auto& l : labels)
        if (!seen.insert(l).second)
            throw InputError("duplicate point label '" + l + "'");
}

} // namespace detail

/// Checks every pseudometric axiom and reports all violations.
///
/// Triangle witnesses are ordered triples (i, k, j) meaning
/// d(i,j) > d(i,k) + d(k,j); all n^3 ordered triples are scanned.
/// Symmetry witnesses are pairs (i, j) with i < j.
///
/// Throws InputError for a non-square matrix, a label/dimension mismatch,
/// or duplicate labels.
inline Report validate_pseudometric(const std::vector<std::string>& labels,
                                    const std::vector<std::vector<Rational>>& rows)
{
    detail::check_shape(labels, rows.size(), [&](std::size_t i) { return rows[i].size(); });
    std::size_t const n = labels.size();
    Report report;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (rows[i][j] < 0)
                report.violations.push_back({"non-negativity", {i, j}, {rows[i][j]}});
    for (std::size_t i = 0; i < n; ++i)
        if (rows[i][i] != 0)
            report.violations.push_back({"zero-diagonal", {i}, {rows[i][i]}});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rows[i][j] != rows[j][i])
                report.violations.push_back({"symmetry", {i, j}, {rows[i][j], rows[j][i]}});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j)
                if (rows[i][j] > rows[i][k] + rows[k][j])
                    report.violations.push_back(
                        {"triangle", {i, k, j}, {rows[i][j], rows[i][k], rows[k][j]}});
    return report;
}

inline Report validate_pseudometric(const RawMatrix& m)
{
    return validate_pseudometric(m.labels, m.rows);
}

// ---------------------------------------------------------------------------
// Space
// ---------------------------------------------------------------------------

/// A finite pseudometric space: distinct labels plus a distance matrix that
/// satisfies zero diagonal, symmetry and the triangle inequality.
///
/// Immutable; copies share the underlying storage.
class Space {
public:
    /// The empty space.
    Space() : data_(std::make_shared<Data>()) {}

    /// Validating constructor. Throws InputError on shape problems and
    /// InvalidSpace when an axiom fails.
    Space(std::vector<std::string> labels, const std::vector<std::vector<Dist>>& rows)
    {
        detail::check_shape(labels, rows.size(), [&](std::size_t i) { return rows[i].size(); });
        auto data = std::make_shared<Data>();
        data->labels = std::move(labels);
        std::size_t const n = data->labels.size();
        data->dist.reserve(n * n);
        for (const auto& row : rows)
            data->dist.insert(data->dist.end(), row.begin(), row.end());
        data->index_labels();
        data_ = std::move(data);
        Report r = validate_pseudometric(data_->labels, to_raw().rows);
        if (!r.ok())
            throw InvalidSpace(std::move(r));
    }

    static Space from_raw(const RawMatrix& raw)
    {
        Report r = validate_pseudometric(raw);
        if (!r.ok())
            throw InvalidSpace(std::move(r));
        auto data = std::make_shared<Data>();
        data->labels = raw.labels;
        data->dist.reserve(raw.size() * raw.size());
        for (const auto& row : raw.rows)
            for (const auto& v : row)
                data->dist.push_back(Dist::from_rational(v));
        data->index_labels();
        Space s;
        s.data_ = std::move(data);
        return s;
    }

    std::size_t size() const noexcept { return data_->labels.size(); }
    bool empty() const noexcept { return size() == 0; }

    const Dist& operator()(std::size_t i, std::size_t j) const { return data_->dist[i * size() + j]; }
    const Dist& d(std::size_t i, std::size_t j) const { return (*this)(i, j); }

    const std::vector<std::string>& labels() const noexcept { return data_->labels; }
    const std::string& label(std::size_t i) const { return data_->labels.at(i); }

    std::optional<std::size_t> find(std::string_view label) const
    {
        auto it = data_->by_label.find(std::string(label));
        if (it == data_->by_label.end())
            return std::nullopt;
        return it->second;
    }

    std::size_t index(std::string_view label) const
    {
        if (auto i = find(label))
            return *i;
        throw InputError("unknown point label '" + std::string(label) + "'");
    }

    std::vector<std::vector<Dist>> rows() const
    {
        std::vector<std::vector<Dist>> out(size());
        for (std::size_t i = 0; i < size(); ++i)
            out[i].assign(data_->dist.begin() + static_cast<std::ptrdiff_t>(i * size()),
                          data_->dist.begin() + static_cast<std::ptrdiff_t>((i + 1) * size()));
        return out;
    }

    RawMatrix to_raw() const
    {
        RawMatrix raw{labels(), std::vector<std::vector<Rational>>(size())};
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j)
                raw.rows[i].push_back(d(i, j).value());
        return raw;
    }

    friend bool operator==(const Space& a, const Space& b)
    {
        return a.data_ == b.data_ ||
               (a.data_->labels == b.data_->labels && a.data_->dist == b.data_->dist);
    }

private:
    struct Data {
        std::vector<std::string> labels;
        std::vector<Dist> dist;
        std::unordered_map<std::string, std::size_t> by_label;

        void index_labels()
        {
            for (std::size_t i = 0; i < labels.size(); ++i)
                by_label.emplace(labels[i], i);
        }
    };

    std::shared_ptr<const Data> data_;
};

// ---------------------------------------------------------------------------
// Subsets and partitions
// ---------------------------------------------------------------------------

/// A set of point indices drawn from {0, ..., universe-1}; members are kept
/// sorted and unique.
class Subset {
public:
    Subset() = default;

    Subset(std::size_t universe, std::vector<std::size_t> members)
        : universe_(universe), members_(std::move(members))
    {
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
        if (!members_.empty() && members_.back() >= universe_)
            throw InputError("subset index " + std::to_string(members_.back()) +
                             " out of range for a space of " + std::to_string(universe_) +
                             " points");
    }

    static Subset none(std::size_t universe) { return Subset(universe, {}); }

    static Subset all(std::size_t universe)
    {
        std::vector<std::size_t> m(universe);
        for (std::size_t i = 0; i < universe; ++i)
            m[i] = i;
        return Subset(universe, std::move(m));
    }

    /// Bit i of mask selects point i.
    static Subset from_mask(std::size_t universe, std::uint64_t mask)
    {
        std::vector<std::size_t> m;
        for (std::size_t i = 0; i < universe && i < 64; ++i)
            if (mask >> i & 1U)
                m.push_back(i);
        return Subset(universe, std::move(m));
    }

    static Subset of_labels(const Space& space, const std::vector<std::string>& labels)
    {
        std::vector<std::size_t> m;
        for (const auto& l : labels)
            m.push_back(space.index(l));
        return Subset(space.size(), std::move(m));
    }

    std::size_t universe() const noexcept { return universe_; }
    const std::vector<std::size_t>& members() const& noexcept { return members_; }
    std::vector<std::size_t> members() && noexcept { return std::move(members_); }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }

    bool contains(std::size_t i) const
    {
        return std::binary_search(members_.begin(), members_.end(), i);
    }

    bool is_subset_of(const Subset& other) const
    {
        return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                             members_.end());
    }

    Subset complement() const
    {
        std::vector<std::size_t> m;
        for (std::size_t i = 0; i < universe_; ++i)
            if (!contains(i))
                m.push_back(i);
        return Subset(universe_, std::move(m));
    }

    friend Subset operator|(const Subset& a, const Subset& b)
    {
        std::vector<std::size_t> m;
        std::set_union(a.members_.begin(), a.members_.end(), b.members_.begin(), b.members_.end(),
                       std::back_inserter(m));
        return Subset(std::max(a.universe_, b.universe_), std::move(m));
    }

    friend Subset operator&(const Subset& a, const Subset& b)
    {
        std::vector<std::size_t> m;
        std::set_intersection(a.members_.begin(), a.members_.end(), b.members_.begin(),
                              b.members_.end(), std::back_inserter(m));
        return Subset(std::max(a.universe_, b.universe_), std::move(m));
    }

    friend Subset operator-(const Subset& a, const Subset& b)
    {
        std::vector<std::size_t> m;
        std::set_difference(a.members_.begin(), a.members_.end(), b.members_.begin(),
                            b.members_.end(), std::back_inserter(m));
        return Subset(a.universe_, std::move(m));
    }

    friend bool operator==(const Subset&, const Subset&) = default;

private:
    std::size_t universe_ = 0;
    std::vector<std::size_t> members_;
};

/// A partition of {0, ..., n-1} into disjoint nonempty blocks, canonically
/// ordered by least member.
class Partition {
public:
    Partition() = default;

    Partition(std::size_t n, std::vector<std::vector<std::size_t>> blocks)
        : blocks_(std::move(blocks)), block_of_(n, n)
    {
        for (auto& b : blocks_) {
            if (b.empty())
                throw InputError("partition block is empty");
            std::sort(b.begin(), b.end());
        }
        std::sort(blocks_.begin(), blocks_.end(),
                  [](const auto& x, const auto& y) { return x.front() < y.front(); });
        for (std::size_t k = 0; k < blocks_.size(); ++k)
            for (std::size_t i : blocks_[k]) {
                if (i >= n)
                    throw InputError("partition index out of range");
                if (block_of_[i] != n)
                    throw InputError("partition blocks overlap at index " + std::to_string(i));
                block_of_[i] = k;
            }
        for (std::size_t i = 0; i < n; ++i)
            if (block_of_[i] == n)
                throw InputError("partition does not cover index " + std::to_string(i));
    }

    std::size_t universe() const noexcept { return block_of_.size(); }
    const std::vector<std::vector<std::size_t>>& blocks() const noexcept { return blocks_; }
    std::size_t block_count() const noexcept { return blocks_.size(); }
    std::size_t block_of(std::size_t i) const { return block_of_.at(i); }

    Subset block(std::size_t k) const { return Subset(universe(), blocks_.at(k)); }

    bool same_block(std::size_t i, std::size_t j) const { return block_of(i) == block_of(j); }

    friend bool operator==(const Partition& a, const Partition& b) { return a.blocks_ == b.blocks_; }

private:
    std::vector<std::vector<std::size_t>> blocks_;
    std::vector<std::size_t> block_of_;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// True iff distinct points are at positive distance.
inline bool is_metric(const Space& space)
{
    for (std::size_t i = 0; i < space.size(); ++i)
        for (std::size_t j = i + 1; j < space.size(); ++j)
            if (space(i, j).is_zero())
                return false;
    return true;
}

/// Partition into zero-distance classes. The triangle inequality makes the
/// zero relation transitive; that is re-checked on the result.
inline Partition zero_classes(const Space& space)
{
    std::size_t const n = space.size();
    DisjointSet sets(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (space(i, j).is_zero())
                sets.unite(i, j);
    Partition p(n, sets.blocks());
    for (const auto& b : p.blocks())
        for (std::size_t x : b)
            for (std::size_t y : b)
                detail::ensure(space(x, y).is_zero(), "zero relation is transitive");
    return p;
}

/// The class [a]_0 = {x : d(a, x) = 0}, read directly off row a.
inline Subset class_of(const Space& space, std::size_t a)
{
    if (a >= space.size())
        throw InputError("point index " + std::to_string(a) + " out of range");
    std::vector<std::size_t> m;
    for (std::size_t x = 0; x < space.size(); ++x)
        if (space(a, x).is_zero())
            m.push_back(x);
    return Subset(space.size(), std::move(m));
}

/// Union of the zero classes of the members of A.
inline Subset saturate(const Space& space, const Subset& a)
{
    if (a.universe() != space.size())
        throw InputError("subset does not belong to this space");
    Subset out = Subset::none(space.size());
    for (std::size_t i : a.members())
        out = out | class_of(space, i);
    return out;
}

inline bool is_saturated(const Space& space, const Subset& a) { return saturate(space, a) == a; }

} // namespace pmetric
