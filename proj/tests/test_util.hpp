#pragma once

#include <numeric>
#include <random>
#include <vector>

#include "ov/origami.hpp"

namespace ov::test {

inline origami::Perm random_perm(std::mt19937& rng, int d) {
    std::vector<int> img(static_cast<std::size_t>(d));
    std::iota(img.begin(), img.end(), 0);
    std::shuffle(img.begin(), img.end(), rng);
    return origami::Perm(std::move(img));
}

/// Rejection-samples a transitive pair on d squares.
inline origami::Origami random_origami(std::mt19937& rng, int d) {
    for (;;) {
        try {
            return origami::new_origami(d, random_perm(rng, d), random_perm(rng, d));
        } catch (const std::invalid_argument&) {
            continue;
        }
    }
}

}  // namespace ov::test
