#pragma once

// Test-only brute-force oracles. Nothing here calls into the library's
// algorithms beyond plain data access, so agreement with the library is
// evidence rather than tautology.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <pmetric/pmetric.hpp>

namespace oracle {

using pmetric::Dist;
using pmetric::Rational;
using pmetric::Space;

inline std::vector<std::string> default_labels(std::size_t n)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(std::string(1, static_cast<char>('a' + i)));
    return out;
}

/// Space from small integer rows; labels a, b, c, ...
inline Space ints(std::initializer_list<std::initializer_list<int>> rows)
{
    std::vector<std::vector<Dist>> m;
    for (const auto& r : rows) {
        std::vector<Dist> row;
        for (int v : r)
            row.emplace_back(static_cast<std::uint64_t>(v));
        m.push_back(std::move(row));
    }
    return Space(default_labels(m.size()), m);
}

inline pmetric::RawMatrix raw_ints(std::initializer_list<std::initializer_list<int>> rows)
{
    pmetric::RawMatrix raw;
    raw.labels = default_labels(rows.size());
    for (const auto& r : rows) {
        std::vector<Rational> row;
        for (int v : r)
            row.emplace_back(v);
        raw.rows.push_back(std::move(row));
    }
    return raw;
}

/// Independent pseudometric test: every condition over every index tuple.
inline bool is_pseudometric(const std::vector<std::vector<Rational>>& d)
{
    std::size_t const n = d.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (d[i][i] != 0)
            return false;
        for (std::size_t j = 0; j < n; ++j) {
            if (d[i][j] < 0 || d[i][j] != d[j][i])
                return false;
            for (std::size_t k = 0; k < n; ++k)
                if (d[i][k] + d[k][j] < d[i][j])
                    return false;
        }
    }
    return true;
}

/// Integer variant used to filter exhaustive families quickly.
inline bool is_pseudometric(const std::vector<std::vector<int>>& d)
{
    std::size_t const n = d.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (d[i][k] + d[k][j] < d[i][j])
                    return false;
    return true;
}

/// Every pseudometric on n points whose off-diagonal entries are drawn from
/// `values` (symmetric, zero diagonal). All zero patterns are covered.
inline std::vector<Space> all_spaces(std::size_t n, const std::vector<int>& values = {0, 1, 2})
{
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            pairs.emplace_back(i, j);
    std::vector<Space> out;
    std::vector<std::size_t> digit(pairs.size(), 0);
    for (;;) {
        std::vector<std::vector<int>> d(n, std::vector<int>(n, 0));
        for (std::size_t p = 0; p < pairs.size(); ++p)
            d[pairs[p].first][pairs[p].second] = d[pairs[p].second][pairs[p].first] = values[digit[p]];
        if (is_pseudometric(d)) {
            std::vector<std::vector<Dist>> rows(n);
            for (std::size_t i = 0; i < n; ++i)
                for (int v : d[i])
                    rows[i].emplace_back(static_cast<std::uint64_t>(v));
            out.emplace_back(default_labels(n), rows);
        }
        std::size_t p = 0;
        while (p < digit.size() && ++digit[p] == values.size())
            digit[p++] = 0;
        if (p == digit.size())
            break;
    }
    return out;
}

/// Whether some bijection preserves every distance: all n! permutations.
inline bool isometric_by_permutations(const Space& a, const Space& b)
{
    if (a.size() != b.size())
        return false;
    std::vector<std::size_t> perm(a.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
        bool ok = true;
        for (std::size_t i = 0; i < a.size() && ok; ++i)
            for (std::size_t j = 0; j < a.size() && ok; ++j)
                ok = a(i, j) == b(perm[i], perm[j]);
        if (ok)
            return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

/// Random space from the library generator with small integer distances,
/// so coincidences (and hence isometries) are common.
inline Space random_small(std::uint64_t seed, std::size_t n, int zero_quarters, int max_entry = 3)
{
    pmetric::GenParams p;
    p.seed = seed;
    p.n = n;
    p.zero_merge_prob = Rational(zero_quarters, 4);
    p.max_entry = Dist(static_cast<std::uint64_t>(max_entry));
    p.max_denominator = 1;
    return pmetric::random_space(p);
}

/// The same space with its points listed in a shuffled order.
inline Space permuted(const Space& s, std::uint64_t seed)
{
    std::vector<std::size_t> perm(s.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::string> labels;
    std::vector<std::vector<Dist>> rows(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        labels.push_back("r" + s.label(perm[i]));
        for (std::size_t j = 0; j < s.size(); ++j)
            rows[i].push_back(s(perm[i], perm[j]));
    }
    return Space(std::move(labels), rows);
}

} // namespace oracle
