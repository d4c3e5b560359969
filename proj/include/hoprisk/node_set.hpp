#pragma once

#include <bit>
#include <cstdint>
#include <functional>

#include "hoprisk/network.hpp"

namespace hoprisk {

// Subset of node ids 0..63 as a bitmask.
class NodeSet {
public:
    static constexpr std::size_t capacity = 64;

    constexpr NodeSet() = default;
    constexpr explicit NodeSet(std::uint64_t bits) : bits_(bits) {}

    static constexpr NodeSet first(std::size_t n) {
        return NodeSet(n >= capacity ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    }
    static constexpr NodeSet single(NodeId i) { return NodeSet(std::uint64_t{1} << i); }

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int size() const { return std::popcount(bits_); }
    constexpr bool contains(NodeId i) const { return (bits_ >> i) & 1U; }
    constexpr bool subset_of(NodeSet other) const { return (bits_ & ~other.bits_) == 0; }

    constexpr NodeSet operator|(NodeSet o) const { return NodeSet(bits_ | o.bits_); }
    constexpr NodeSet operator&(NodeSet o) const { return NodeSet(bits_ & o.bits_); }
    // set difference
    constexpr NodeSet operator-(NodeSet o) const { return NodeSet(bits_ & ~o.bits_); }
    constexpr NodeSet& operator|=(NodeSet o) { bits_ |= o.bits_; return *this; }

    constexpr bool operator==(const NodeSet&) const = default;

    // Calls f(i) for each member in ascending order.
    template <class F>
    void for_each(F&& f) const {
        for (std::uint64_t b = bits_; b != 0; b &= b - 1) f(static_cast<NodeId>(std::countr_zero(b)));
    }

    // Calls f(sub) for every subset, in ascending order of the mask value.
    template <class F>
    void for_each_subset(F&& f) const {
        std::uint64_t sub = 0;
        do {
            f(NodeSet(sub));
            sub = (sub - bits_) & bits_;
        } while (sub != 0);
    }

private:
    std::uint64_t bits_ = 0;
};

}  // namespace hoprisk

template <>
struct std::hash<hoprisk::NodeSet> {
    std::size_t operator()(hoprisk::NodeSet s) const noexcept { return std::hash<std::uint64_t>{}(s.bits()); }
};
