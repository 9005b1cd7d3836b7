#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ov::origami {

// ---------------------------------------------------------------------------
// Perm: bijection of {1..d}, stored 0-based. Composition is left-to-right:
// (p * q)(i) = q(p(i)).
// ---------------------------------------------------------------------------

class Perm {
  public:
    Perm() = default;
    explicit Perm(int d);                       // identity
    explicit Perm(std::vector<int> images0);    // 0-based images; validated

    int degree() const { return static_cast<int>(img_.size()); }
    int apply(int i) const { return img_[static_cast<std::size_t>(i)]; }

    Perm inverse() const;
    Perm compose(const Perm& then) const;  // this first, `then` second

    std::vector<std::vector<int>> cycles() const;            // all cycles, 0-based
    std::string cycle_string() const;                        // "(1 2 3)(4 5)", 1-based
    const std::vector<int>& images() const { return img_; }

    bool operator==(const Perm&) const = default;

    /// Parses disjoint-cycle notation "(2 3 4)(5 6)" or "()", 1-based points.
    static Perm from_cycles(const std::string& text, int d);
    /// Parses one-line image notation "[2,3,4,1]", 1-based.
    static Perm from_images(const std::string& text);

  private:
    std::vector<int> img_;
};

// ---------------------------------------------------------------------------
// Origami: transitive pair (sigma_a, sigma_b) on d squares.
// ---------------------------------------------------------------------------

struct Origami {
    int d{1};
    Perm sigma_a;
    Perm sigma_b;
};

/// Validates and builds an origami; throws std::invalid_argument on a
/// malformed permutation or a non-transitive pair (the message carries the
/// orbit partition as a diagnostic).
Origami new_origami(int d, Perm sigma_a, Perm sigma_b);

/// Canonical representative of the simultaneous-conjugation class, plus the
/// relabeling that produced it.
struct CanonicalForm {
    Origami form;
    Perm relabeling;             // old point i maps to new point relabeling[i]
    std::vector<int> key;        // concat of the relabeled image arrays

    bool operator==(const CanonicalForm& o) const { return key == o.key; }
    bool operator<(const CanonicalForm& o) const { return key < o.key; }
};

CanonicalForm canonical_form(const Origami& o);

/// Vertex permutation: the commutator sigma_a sigma_b sigma_a^-1 sigma_b^-1
/// under left-to-right composition. Its cycles are the vertex classes of X.
Perm vertex_permutation(const Origami& o);

/// Cycle lengths of the vertex permutation, ascending.
std::vector<int> vertex_structure(const Origami& o);

/// g = 1 + (d - c)/2 where c = number of vertex classes.
int surface_genus(const Origami& o);

/// Number of branch points over infinity = vertex cycles of length > 1.
int ramification_points(const Origami& o);

// --- text / export ----------------------------------------------------------

/// Parses "d; sigma_a; sigma_b" with cycles "(2 3 4)" or images "[2,3,4,1]".
Origami parse_origami(const std::string& text);
std::string origami_to_text(const Origami& o);

/// DOT export of the square-gluing graph: x-edges solid, y-edges dashed.
std::string origami_to_dot(const Origami& o);

}  // namespace ov::origami
