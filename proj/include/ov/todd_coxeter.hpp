#pragma once

#include <cstddef>
#include <vector>

#include "ov/sl2.hpp"

namespace ov::tc {

/// Index of the subgroup generated by the given S/T-words in
/// SL2(Z) = <S,T | S^4, (ST)^6, S^2(ST)^-3>, by bounded coset enumeration
/// (relator cycles planted at every coset, folded to a deterministic graph,
/// missing transitions filled with fresh cosets). Throws sl2::cap_exceeded
/// when more than `max_cosets` live cosets appear.
long long sl2z_subgroup_index(const std::vector<sl2::STWord>& subgroup_gens,
                              std::size_t max_cosets = 100000);

}  // namespace ov::tc
