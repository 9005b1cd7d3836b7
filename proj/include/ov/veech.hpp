#pragma once

#include <cstdint>
#include <vector>

#include "ov/origami.hpp"
#include "ov/sl2.hpp"

namespace ov::veech {

struct SchreierGen {
    sl2::MatZ2 mat;
    sl2::STWord word;
};

/// Coset permutation representation of SL2(Z) on Gamma(O)-cosets, computed
/// as the orbit of the canonical form of O under the lifted S/T moves.
/// State i corresponds to the right coset Gamma * eval(reps[i]); the action
/// is right multiplication, read left to right.
struct VeechGroup {
    origami::Origami base;
    std::vector<origami::CanonicalForm> orbit;  // orbit[0] = canonical_form(base)
    std::vector<int> act_s, act_t;              // coset action of S and T
    std::vector<sl2::STWord> reps;              // reps[0] is the empty word
    std::vector<SchreierGen> schreier;

    // T-cycle bookkeeping for run-level word tracing
    std::vector<std::vector<int>> t_cycles;
    std::vector<int> t_cycle_id, t_cycle_pos;

    int index() const { return static_cast<int>(orbit.size()); }
};

VeechGroup compute_veech(const origami::Origami& o, std::size_t max_orbit = 1'000'000);

/// Follows a word through the coset action (whole runs at a time, so huge
/// T-exponents are fine).
int trace_coset(const VeechGroup& g, const sl2::STWord& w, int start = 0);

/// Exact membership in Gamma(O), including the sign (-I is S^2).
bool member(const VeechGroup& g, const sl2::MatZ2& m);

struct Cusp {
    int state;        // smallest orbit state on the T-cycle
    long long width;  // amplitude = cycle length
};

struct CuspData {
    std::vector<Cusp> cusps;  // ordered by state
};

/// T-cycles of the coset action; each width is post-verified via member():
/// rep * T^width * rep^-1 in Gamma, and no smaller positive power is.
CuspData cusps(const VeechGroup& g);

/// lcm of the cusp widths.
long long general_level(const VeechGroup& g);
long long general_level(const CuspData& c);

struct CurveInvariants {
    int index{1};              // [SL2(Z) : Gamma]
    bool minus_i{true};        // -I in Gamma
    int cusp_count{0};
    std::vector<long long> cusp_widths;  // ascending (curve side)
    int e2{0}, e3{0};
    int genus{0};
    long long level{1};        // general level (SL2 amplitudes)
};

/// Genus / elliptic data of H/Gamma. When -I is not in Gamma the counts are
/// taken on the quotient of the coset action by S^2 (the image in PSL2(Z)).
CurveInvariants curve_invariants(const VeechGroup& g);

std::vector<sl2::STWord> coset_representatives(const VeechGroup& g);

/// True iff the given matrices generate exactly Gamma(O): every one is a
/// member and the Todd-Coxeter index of the generated subgroup equals the
/// orbit index.
bool generators_match_paper(const VeechGroup& g, const std::vector<sl2::MatZ2>& paper_gens,
                            std::size_t max_cosets = 100000);

/// DOT export of the coset graph (S-edges solid, T-edges dashed).
std::string coset_graph_to_dot(const VeechGroup& g);

}  // namespace ov::veech
