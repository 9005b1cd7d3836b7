#include "ov/veech.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "ov/todd_coxeter.hpp"

namespace ov::veech {

using origami::CanonicalForm;
using origami::Origami;
using origami::Perm;
using sl2::Int;
using sl2::MatZ2;
using sl2::STWord;

namespace {

// Right action of a letter on a pair: the monodromy is composed with the
// lift of the letter (gamma_T: x -> x, y -> xy; gamma_S: x -> y, y -> x^-1).
Origami pair_move(const Origami& o, char letter, int dir) {
    const Perm& sa = o.sigma_a;
    const Perm& sb = o.sigma_b;
    if (letter == 'T') {
        if (dir > 0) return Origami{o.d, sa, sa.compose(sb)};            // y -> xy
        return Origami{o.d, sa, sa.inverse().compose(sb)};               // y -> x^-1 y
    }
    if (dir > 0) return Origami{o.d, sb, sa.inverse()};                  // x -> y, y -> x^-1
    return Origami{o.d, sb.inverse(), sa};                               // x -> y^-1, y -> x
}

struct Move {
    char letter;
    int dir;
};

constexpr Move kMoves[4] = {{'S', 1}, {'T', 1}, {'S', -1}, {'T', -1}};

}  // namespace

VeechGroup compute_veech(const Origami& o, std::size_t max_orbit) {
    VeechGroup g;
    g.base = o;

    std::map<std::vector<int>, int> seen;
    g.orbit.push_back(origami::canonical_form(o));
    g.reps.push_back(STWord{});
    seen.emplace(g.orbit[0].key, 0);

    // BFS over the four moves; tree edges recorded for Schreier generators
    std::vector<std::array<int, 4>> nbr;
    std::vector<std::pair<int, int>> tree_edge;  // (source state, move id), -1 for root
    tree_edge.emplace_back(-1, -1);
    for (std::size_t head = 0; head < g.orbit.size(); ++head) {
        nbr.push_back({-1, -1, -1, -1});
        for (int mv = 0; mv < 4; ++mv) {
            Origami moved = pair_move(g.orbit[head].form, kMoves[mv].letter, kMoves[mv].dir);
            CanonicalForm cf = origami::canonical_form(moved);
            auto [it, inserted] = seen.emplace(cf.key, static_cast<int>(g.orbit.size()));
            if (inserted) {
                if (g.orbit.size() >= max_orbit)
                    throw sl2::cap_exceeded("compute_veech: orbit cap exceeded");
                g.orbit.push_back(std::move(cf));
                STWord w = g.reps[head];
                sl2::append_run(w, kMoves[mv].letter, kMoves[mv].dir);
                g.reps.push_back(std::move(w));
                tree_edge.emplace_back(static_cast<int>(head), mv);
            }
            nbr[head][static_cast<std::size_t>(mv)] = it->second;
        }
    }

    const int n = g.index();
    g.act_s.resize(static_cast<std::size_t>(n));
    g.act_t.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        g.act_s[static_cast<std::size_t>(i)] = nbr[static_cast<std::size_t>(i)][0];
        g.act_t[static_cast<std::size_t>(i)] = nbr[static_cast<std::size_t>(i)][1];
    }

    // Schreier generators over the S- and T-edges, deduplicated by matrix
    std::map<std::string, int> seen_mats;
    for (int i = 0; i < n; ++i) {
        for (int mv = 0; mv < 2; ++mv) {  // 'S' and 'T' forward edges
            int j = nbr[static_cast<std::size_t>(i)][static_cast<std::size_t>(mv)];
            if (tree_edge[static_cast<std::size_t>(j)] == std::make_pair(i, mv)) continue;
            STWord w = g.reps[static_cast<std::size_t>(i)];
            sl2::append_run(w, kMoves[mv].letter, 1);
            w = sl2::concat(w, sl2::word_inverse(g.reps[static_cast<std::size_t>(j)]));
            if (w.empty()) continue;  // inverse-direction tree edge
            MatZ2 m = sl2::eval_word(w);
            if (m == sl2::mat_identity()) continue;
            if (seen_mats.emplace(sl2::mat_to_string(m), 1).second)
                g.schreier.push_back(SchreierGen{std::move(m), std::move(w)});
        }
    }

    // T-cycles for run tracing
    g.t_cycle_id.assign(static_cast<std::size_t>(n), -1);
    g.t_cycle_pos.assign(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        if (g.t_cycle_id[static_cast<std::size_t>(i)] >= 0) continue;
        std::vector<int> cyc;
        int j = i;
        while (g.t_cycle_id[static_cast<std::size_t>(j)] < 0) {
            g.t_cycle_id[static_cast<std::size_t>(j)] = static_cast<int>(g.t_cycles.size());
            g.t_cycle_pos[static_cast<std::size_t>(j)] = static_cast<int>(cyc.size());
            cyc.push_back(j);
            j = g.act_t[static_cast<std::size_t>(j)];
        }
        g.t_cycles.push_back(std::move(cyc));
    }
    return g;
}

int trace_coset(const VeechGroup& g, const STWord& w, int start) {
    int s = start;
    for (const auto& r : w.runs) {
        if (r.letter == 'T') {
            const auto& cyc = g.t_cycles[static_cast<std::size_t>(g.t_cycle_id[static_cast<std::size_t>(s)])];
            const long long len = static_cast<long long>(cyc.size());
            long long off = static_cast<long long>(((r.exp % len) + len) % len);
            s = cyc[static_cast<std::size_t>((g.t_cycle_pos[static_cast<std::size_t>(s)] + off) % len)];
        } else {
            long long k = static_cast<long long>(((r.exp % 4) + 4) % 4);
            for (long long i = 0; i < k; ++i) s = g.act_s[static_cast<std::size_t>(s)];
        }
    }
    return s;
}

bool member(const VeechGroup& g, const MatZ2& m) {
    return trace_coset(g, sl2::decompose_st(m), 0) == 0;
}

CuspData cusps(const VeechGroup& g) {
    CuspData data;
    for (const auto& cyc : g.t_cycles) {
        Cusp c;
        c.state = *std::min_element(cyc.begin(), cyc.end());
        c.width = static_cast<long long>(cyc.size());
        data.cusps.push_back(c);
    }
    std::sort(data.cusps.begin(), data.cusps.end(),
              [](const Cusp& a, const Cusp& b) { return a.state < b.state; });

    long long total = 0;
    for (const Cusp& c : data.cusps) {
        total += c.width;
        // post-verification against the amplitude definition
        MatZ2 rep = sl2::eval_word(g.reps[static_cast<std::size_t>(c.state)]);
        MatZ2 rep_inv = sl2::inverse(rep);
        for (long long w = 1; w <= c.width; ++w) {
            bool in = member(g, sl2::mul(sl2::mul(rep, sl2::mat_T_pow(w)), rep_inv));
            if (in != (w == c.width))
                throw std::logic_error("cusps: amplitude verification failed");
        }
    }
    if (total != g.index()) throw std::logic_error("cusps: widths do not sum to the index");
    return data;
}

long long general_level(const CuspData& c) {
    long long l = 1;
    for (const Cusp& cusp : c.cusps) l = std::lcm(l, cusp.width);
    return l;
}

long long general_level(const VeechGroup& g) { return general_level(cusps(g)); }

CurveInvariants curve_invariants(const VeechGroup& g) {
    CurveInvariants ci;
    ci.index = g.index();
    ci.minus_i = member(g, sl2::mat_minus_identity());
    ci.level = general_level(g);

    // coset action to measure on: the full action, or its quotient by S^2
    std::vector<int> as, at;
    if (ci.minus_i) {
        as = g.act_s;
        at = g.act_t;
    } else {
        const int n = g.index();
        std::vector<int> cls(static_cast<std::size_t>(n), -1);
        int m = 0;
        for (int i = 0; i < n; ++i) {
            if (cls[static_cast<std::size_t>(i)] >= 0) continue;
            int j = g.act_s[static_cast<std::size_t>(g.act_s[static_cast<std::size_t>(i)])];
            cls[static_cast<std::size_t>(i)] = m;
            cls[static_cast<std::size_t>(j)] = m;
            ++m;
        }
        as.assign(static_cast<std::size_t>(m), -1);
        at.assign(static_cast<std::size_t>(m), -1);
        for (int i = 0; i < n; ++i) {
            as[static_cast<std::size_t>(cls[static_cast<std::size_t>(i)])] =
                cls[static_cast<std::size_t>(g.act_s[static_cast<std::size_t>(i)])];
            at[static_cast<std::size_t>(cls[static_cast<std::size_t>(i)])] =
                cls[static_cast<std::size_t>(g.act_t[static_cast<std::size_t>(i)])];
        }
    }

    const int mu = static_cast<int>(as.size());
    for (int i = 0; i < mu; ++i) {
        if (as[static_cast<std::size_t>(i)] == i) ++ci.e2;
        if (at[static_cast<std::size_t>(as[static_cast<std::size_t>(i)])] == i) ++ci.e3;  // fixed by S*T
    }
    std::vector<char> seen(static_cast<std::size_t>(mu), 0);
    for (int i = 0; i < mu; ++i) {
        if (seen[static_cast<std::size_t>(i)]) continue;
        long long len = 0;
        int j = i;
        while (!seen[static_cast<std::size_t>(j)]) {
            seen[static_cast<std::size_t>(j)] = 1;
            ++len;
            j = at[static_cast<std::size_t>(j)];
        }
        ci.cusp_widths.push_back(len);
    }
    std::sort(ci.cusp_widths.begin(), ci.cusp_widths.end());
    ci.cusp_count = static_cast<int>(ci.cusp_widths.size());

    const int twelve_g = 12 + mu - 3 * ci.e2 - 4 * ci.e3 - 6 * ci.cusp_count;
    if (twelve_g % 12 != 0 || twelve_g < 0)
        throw std::logic_error("curve_invariants: genus formula gave a non-integer");
    ci.genus = twelve_g / 12;
    return ci;
}

std::vector<STWord> coset_representatives(const VeechGroup& g) { return g.reps; }

bool generators_match_paper(const VeechGroup& g, const std::vector<MatZ2>& paper_gens,
                            std::size_t max_cosets) {
    for (const MatZ2& m : paper_gens)
        if (!member(g, m)) return false;
    std::vector<STWord> words;
    words.reserve(paper_gens.size());
    for (const MatZ2& m : paper_gens) words.push_back(sl2::decompose_st(m));
    // <paper_gens> is contained in Gamma, so its index is a multiple of the
    // orbit index (or infinite); enumeration past the margin means "larger".
    std::size_t cap = std::min<std::size_t>(max_cosets, 1000 + 50 * static_cast<std::size_t>(g.index()));
    try {
        return tc::sl2z_subgroup_index(words, cap) == g.index();
    } catch (const sl2::cap_exceeded&) {
        return false;
    }
}

std::string coset_graph_to_dot(const VeechGroup& g) {
    std::ostringstream os;
    os << "digraph coset_graph {\n";
    os << "  c1 [shape=doublecircle];\n";
    for (int i = 0; i < g.index(); ++i)
        os << "  c" << i + 1 << " -> c" << g.act_s[static_cast<std::size_t>(i)] + 1 << " [label=\"S\"];\n";
    for (int i = 0; i < g.index(); ++i)
        os << "  c" << i + 1 << " -> c" << g.act_t[static_cast<std::size_t>(i)] + 1
           << " [label=\"T\", style=dashed];\n";
    os << "}\n";
    return os.str();
}

}  // namespace ov::veech
