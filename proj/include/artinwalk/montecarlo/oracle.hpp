#pragma once

/**
 * @file oracle.hpp
 * @brief Exact word lengths on a Cayley ball by breadth-first search over S.
 */

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "artinwalk/core/artin.hpp"
#include "artinwalk/core/normal_form.hpp"

namespace artinwalk {

class OracleCapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using LengthTable = std::unordered_map<ArtinElement, int, ArtinElementHash>;

/// Distance from the identity for every element of the radius ball over {a, b, a^-1, b^-1}.
inline LengthTable bfs_oracle(ArtinIndex k, int radius, std::size_t max_elements = 20'000'000)
{
    if (radius < 0) throw std::invalid_argument("radius must be non-negative");
    constexpr ArtinLetter gens[] = {ArtinLetter::a, ArtinLetter::b, ArtinLetter::a_inv, ArtinLetter::b_inv};
    LengthTable dist;
    std::vector<ArtinElement> frontier{ArtinElement{}};
    dist.emplace(ArtinElement{}, 0);
    for (int d = 1; d <= radius; ++d) {
        std::vector<ArtinElement> next;
        for (const ArtinElement& g : frontier) {
            for (ArtinLetter x : gens) {
                ArtinElement h = g;
                multiply_right(k, h, x);
                if (dist.emplace(h, d).second) next.push_back(std::move(h));
            }
        }
        if (dist.size() > max_elements) throw OracleCapacityError("Cayley ball exceeds element cap");
        frontier = std::move(next);
    }
    return dist;
}

} // namespace artinwalk
