#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ov/sl2.hpp"
#include "ov/veech.hpp"

namespace ov::congruence {

struct CongruenceReport {
    long long general_level{1};      // N, the Wohlfahrt level candidate
    long long index_sl2z{1};         // [SL2(Z) : Gamma]
    std::uint64_t sl2_mod_order{1};  // |SL2(Z/N)|
    std::uint64_t image_order{1};    // |pi_N(Gamma)|
    long long index_mod{1};          // [SL2(Z/N) : pi_N(Gamma)]
    bool congruence{false};
    long long level{1};              // minimal congruence level when positive,
                                     // otherwise the general level
    std::size_t closure_cap{0};
};

/// Wohlfahrt decision: Gamma is a congruence group iff its SL2(Z)-index
/// equals the index of its image modulo the general level.
CongruenceReport is_congruence(const veech::VeechGroup& g, std::size_t closure_cap = 10'000'000);

struct WitnessFactor {
    int gen;        // index into the generator pool used by the search
    long long exp;  // exponent
};

struct Witness {
    sl2::MatZ2 g;  // element of Gamma
    std::vector<WitnessFactor> factorization;
    std::vector<sl2::MatZ2> pool;  // generator matrices the factorization refers to
    sl2::MatZ2 h;                  // congruent to g mod N, outside Gamma
    sl2::STWord h_word;
    long long modulus{1};
};

/// Searches for g in Gamma and h outside Gamma with g == h (mod N).
/// First pass: length-2 products of generator powers (exponents bounded by
/// the mod-N element orders), in the style of the A6^20 * A1^7 construction.
/// Fallback: breadth-first factorization over the mod-N closure, which
/// always succeeds when the group is non-congruence at N.
/// Throws std::invalid_argument when index equality holds at N (no witness
/// exists). All three witness invariants are re-verified before returning.
std::optional<Witness> find_witness(const veech::VeechGroup& g, long long N,
                                    const std::vector<sl2::MatZ2>* pool = nullptr,
                                    std::size_t closure_cap = 10'000'000);

struct ProofStep {
    std::string description;
    bool ok{false};
};

struct ProofTrace {
    std::vector<ProofStep> steps;
};

/// Recomputes and checks every displayed matrix triple and order in the
/// mod-60 non-congruence proof for Gamma(D); throws std::logic_error on the
/// first mismatch.
ProofTrace replay_paper_proof();

}  // namespace ov::congruence
