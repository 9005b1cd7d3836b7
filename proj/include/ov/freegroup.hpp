#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ov/origami.hpp"

namespace ov::freegroup {

// ---------------------------------------------------------------------------
// F2 = F2(x, y). Letters: x=0, X=1 (x^-1), y=2, Y=3 (y^-1); inverse = code^1.
// ---------------------------------------------------------------------------

enum F2Letter : std::uint8_t { Lx = 0, LX = 1, Ly = 2, LY = 3 };

using F2Word = std::vector<F2Letter>;

inline F2Letter letter_inverse(F2Letter l) { return static_cast<F2Letter>(l ^ 1); }

F2Word free_reduce(const F2Word& w);
F2Word f2_concat(const F2Word& u, const F2Word& v);  // freely reduced
F2Word f2_inverse(const F2Word& w);

/// Strings over {x, X, y, Y}; capitals are inverses.
F2Word parse_f2(const std::string& text);
std::string f2_to_string(const F2Word& w);

// ---------------------------------------------------------------------------
// CosetAutomaton: finite-index subgroup of F2 as a complete folded graph.
// Both transition maps are bijections on {0..m-1}; base state 0.
// ---------------------------------------------------------------------------

struct CosetAutomaton {
    std::vector<int> x, xi, y, yi;  // transitions and their inverses

    int size() const { return static_cast<int>(x.size()); }
    int step(int s, F2Letter l) const {
        switch (l) {
            case Lx: return x[static_cast<std::size_t>(s)];
            case LX: return xi[static_cast<std::size_t>(s)];
            case Ly: return y[static_cast<std::size_t>(s)];
            default: return yi[static_cast<std::size_t>(s)];
        }
    }
    int trace(int s, const F2Word& w) const {
        for (F2Letter l : w) s = step(s, l);
        return s;
    }

    static CosetAutomaton from_perms(const origami::Perm& a, const origami::Perm& b);
    origami::Origami to_origami() const;  // (sigma_a, sigma_b) = (x, y)
};

/// True iff w stabilizes the base state (w in U).
bool contains(const CosetAutomaton& aut, const F2Word& w);

/// DOT export, x-edges solid, y-edges dashed.
std::string automaton_to_dot(const CosetAutomaton& aut);

// ---------------------------------------------------------------------------
// Schreier basis from a breadth-first spanning tree.
// ---------------------------------------------------------------------------

/// Word over basis generators: entries are +-(index+1).
using BasisWord = std::vector<int>;

struct SubgroupBasis {
    std::vector<F2Word> gens;                  // free generators, loops at base
    std::vector<F2Word> reps;                  // coset representative words, reps[0] = id
    std::vector<std::array<int, 2>> edge_gen;  // per state: generator index on the
                                               // outgoing x / y edge, -1 for tree edges
};

struct Subgroup {
    CosetAutomaton aut;
    SubgroupBasis basis;

    int index() const { return aut.size(); }
    int rank() const { return static_cast<int>(basis.gens.size()); }
};

/// Schreier generators from a breadth-first spanning tree (x explored
/// before y, states in discovery order).
Subgroup subgroup_from_automaton(CosetAutomaton aut);

/// States = squares, x-transition = sigma_a, y-transition = sigma_b.
Subgroup origami_to_subgroup(const origami::Origami& o);

/// Moves the basis generator equal to g (as a word) to the front, so that
/// alpha counts it. Throws if g is not literally one of the basis words.
void designate_leading(Subgroup& u, const F2Word& g);

/// Thrown by subgroup_to_origami when the folded graph is not complete
/// (the subgroup has infinite index).
struct incomplete_automaton : std::runtime_error {
    std::vector<std::pair<int, char>> missing;  // (state, 'x' or 'y')
    explicit incomplete_automaton(std::vector<std::pair<int, char>> miss);
};

/// Stallings folding of the generator loops, then completion check.
origami::Origami subgroup_to_origami(const std::vector<F2Word>& gens);

/// Schreier rewriting of w (must lie in U) over the basis generators;
/// re-expanding the output reproduces w after free reduction.
BasisWord rewrite_in_basis(const Subgroup& u, const F2Word& w);

F2Word expand_basis_word(const SubgroupBasis& basis, const BasisWord& bw);

/// Exponent sum of the leading generator in the basis expression of w;
/// a homomorphism U -> Z.
long long alpha(const Subgroup& u, const F2Word& w);

/// H_n = kernel of (reduction mod n) o alpha, as a subgroup of index
/// n * index(U). States of the result are BFS-renumbered pairs
/// (state of U, alpha residue).
Subgroup power_kernel(const Subgroup& u, int n);

// ---------------------------------------------------------------------------
// Property B
// ---------------------------------------------------------------------------

struct PropertyBWitness {
    int rep_state;        // j
    BasisWord h0_basis;   // element of H0 = ker alpha, as a basis word
    F2Word h0;            // expanded
    F2Word conjugated;    // w_j h0 w_j^-1, freely reduced; not in U
};

struct PropertyBResult {
    bool verified{false};
    int bound{0};
    std::vector<PropertyBWitness> witnesses;
    std::vector<int> unresolved;  // states without a witness within the bound
};

/// Searches, for every coset representative w_j (j != base), an h0 in
/// ker(alpha) with w_j h0 w_j^-1 outside U. Candidates are enumerated by
/// basis-length up to `length_bound`, conjugated generators
/// g1^i g_j g1^-i first.
PropertyBResult property_b_check(const Subgroup& u, int length_bound);

// ---------------------------------------------------------------------------
// The five automorphism lifts. beta_hat(gamma_S) = S, beta_hat(gamma_T) = T:
// gamma_T: x -> x, y -> xy; gamma_S: x -> y, y -> x^-1.
// ---------------------------------------------------------------------------

enum class Aut { S, Sinv, T, Tinv, MinusI };

/// Automaton of gamma(U), realized on the transition permutations.
CosetAutomaton apply_aut(Aut gamma, const CosetAutomaton& aut);

}  // namespace ov::freegroup
