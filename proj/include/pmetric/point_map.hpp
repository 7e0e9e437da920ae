#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"
#include "space.hpp"

namespace pmetric {

/// A total map between the point sets of two spaces.
class PointMap {
public:
    PointMap() = default;

    PointMap(Space domain, Space codomain, std::vector<std::size_t> images)
        : domain_(std::move(domain)), codomain_(std::move(codomain)), images_(std::move(images))
    {
        if (images_.size() != domain_.size())
            throw InputError("map has " + std::to_string(images_.size()) + " images for a domain of " +
                             std::to_string(domain_.size()) + " points");
        for (std::size_t i = 0; i < images_.size(); ++i)
            if (images_[i] >= codomain_.size())
                throw InputError("image of point " + std::to_string(i) + " is out of range");
    }

    static PointMap identity(const Space& s)
    {
        std::vector<std::size_t> img(s.size());
        for (std::size_t i = 0; i < s.size(); ++i)
            img[i] = i;
        return PointMap(s, s, std::move(img));
    }

    const Space& domain() const noexcept { return domain_; }
    const Space& codomain() const noexcept { return codomain_; }
    const std::vector<std::size_t>& images() const noexcept { return images_; }
    std::size_t operator()(std::size_t x) const { return images_.at(x); }

    Subset image() const { return Subset(codomain_.size(), images_); }

    bool is_injective() const { return image().size() == images_.size(); }
    bool is_surjective() const { return image().size() == codomain_.size(); }
    bool is_bijective() const { return is_injective() && is_surjective(); }

    friend bool operator==(const PointMap&, const PointMap&) = default;

private:
    Space domain_;
    Space codomain_;
    std::vector<std::size_t> images_;
};

} // namespace pmetric
