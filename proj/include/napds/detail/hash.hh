#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace napds::detail {

inline void hash_combine(std::size_t& seed, std::size_t value) {
    seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

struct VectorHash {
    template <typename T>
    std::size_t operator()(const std::vector<T>& v) const noexcept {
        std::size_t seed = v.size();
        for (const auto& x : v)
            hash_combine(seed, std::hash<T>{}(x));
        return seed;
    }
};

struct PairHash {
    template <typename A, typename B>
    std::size_t operator()(const std::pair<A, B>& p) const noexcept {
        std::size_t seed = std::hash<A>{}(p.first);
        hash_combine(seed, std::hash<B>{}(p.second));
        return seed;
    }
};

}  // namespace napds::detail
