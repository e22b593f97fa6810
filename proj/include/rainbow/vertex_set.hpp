#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <span>
#include <vector>

namespace rainbow {

using Element = std::int32_t;
using Colour = std::int32_t;

/// Strictly increasing list of element ids.
class VertexSet {
  public:
    VertexSet() = default;
    VertexSet(std::initializer_list<Element> elems) : elems_(elems) { normalise(); }
    explicit VertexSet(std::vector<Element> elems) : elems_(std::move(elems)) { normalise(); }

    template <typename It>
    VertexSet(It first, It last) : elems_(first, last) {
        normalise();
    }

    [[nodiscard]] bool contains(Element e) const { return std::binary_search(elems_.begin(), elems_.end(), e); }
    [[nodiscard]] std::size_t size() const { return elems_.size(); }
    [[nodiscard]] bool empty() const { return elems_.empty(); }
    [[nodiscard]] auto begin() const { return elems_.begin(); }
    [[nodiscard]] auto end() const { return elems_.end(); }
    [[nodiscard]] std::span<const Element> elements() const { return elems_; }
    [[nodiscard]] Element operator[](std::size_t i) const { return elems_[i]; }

    void insert(Element e) {
        auto it = std::lower_bound(elems_.begin(), elems_.end(), e);
        if (it == elems_.end() || *it != e) elems_.insert(it, e);
    }

    [[nodiscard]] VertexSet union_with(const VertexSet& other) const {
        VertexSet out;
        std::set_union(begin(), end(), other.begin(), other.end(), std::back_inserter(out.elems_));
        return out;
    }
    [[nodiscard]] VertexSet intersection_with(const VertexSet& other) const {
        VertexSet out;
        std::set_intersection(begin(), end(), other.begin(), other.end(), std::back_inserter(out.elems_));
        return out;
    }
    [[nodiscard]] VertexSet difference(const VertexSet& other) const {
        VertexSet out;
        std::set_difference(begin(), end(), other.begin(), other.end(), std::back_inserter(out.elems_));
        return out;
    }
    [[nodiscard]] bool intersects(const VertexSet& other) const {
        auto a = begin();
        auto b = other.begin();
        while (a != end() && b != other.end()) {
            if (*a == *b) return true;
            if (*a < *b) ++a;
            else ++b;
        }
        return false;
    }
    [[nodiscard]] bool is_subset_of(const VertexSet& other) const {
        return std::includes(other.begin(), other.end(), begin(), end());
    }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;
    friend auto operator<=>(const VertexSet&, const VertexSet&) = default;

  private:
    void normalise() {
        std::sort(elems_.begin(), elems_.end());
        elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    }

    std::vector<Element> elems_;
};

} // namespace rainbow
