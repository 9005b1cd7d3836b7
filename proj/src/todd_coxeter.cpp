#include "ov/todd_coxeter.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace ov::tc {

namespace {

// Letters 0 = S, 1 = T; signed steps: +1 forward, -1 backward.
struct Step {
    int letter;
    int dir;
};

std::vector<Step> to_steps(const sl2::STWord& w) {
    static constexpr long long kMaxExpand = 1'000'000;
    std::vector<Step> out;
    for (const auto& r : w.runs) {
        if (abs(r.exp) > kMaxExpand)
            throw std::invalid_argument("todd_coxeter: generator word run too long");
        int letter = r.letter == 'S' ? 0 : 1;
        long long e = static_cast<long long>(r.exp);
        int dir = e > 0 ? 1 : -1;
        for (long long i = 0; i < (e > 0 ? e : -e); ++i) out.push_back(Step{letter, dir});
    }
    return out;
}

const std::vector<std::vector<Step>>& relators() {
    static const std::vector<std::vector<Step>> rels = {
        to_steps(sl2::parse_st("SSSS")),
        to_steps(sl2::parse_st("STSTSTSTSTST")),
        to_steps(sl2::parse_st("SStststs")),  // S^2 (ST)^-3
    };
    return rels;
}

// Coset enumeration by rounds: fold the edge set to a deterministic,
// co-deterministic graph, plant the relator cycles at every not yet
// planted live class, and fill missing transitions with fresh cosets.
// On termination every live class carries closed relator cycles and a
// complete S/T table, so the graph is the coset action of <gens>.
struct Enumerator {
    std::vector<std::array<int, 3>> edges;  // (u, letter, v)
    std::vector<int> parent;
    std::vector<char> planted;
    std::size_t cap;

    explicit Enumerator(std::size_t max_cosets) : cap(max_cosets) {}

    int fresh() {
        parent.push_back(static_cast<int>(parent.size()));
        planted.push_back(0);
        if (parent.size() > 64 * (cap + 8))
            throw sl2::cap_exceeded("todd_coxeter: workspace cap exceeded");
        return parent.back();
    }
    int find(int v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            parent[static_cast<std::size_t>(v)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            v = parent[static_cast<std::size_t>(v)];
        }
        return v;
    }
    void unite(int a, int b) {
        int ra = find(a), rb = find(b);
        if (ra == rb) return;
        parent[static_cast<std::size_t>(ra)] = rb;
        planted[static_cast<std::size_t>(rb)] =
            static_cast<char>(planted[static_cast<std::size_t>(rb)] | planted[static_cast<std::size_t>(ra)]);
    }

    void plant_cycle(int s, const std::vector<Step>& steps) {
        if (steps.empty()) return;
        int cur = s;
        for (std::size_t i = 0; i < steps.size(); ++i) {
            int next = (i + 1 == steps.size()) ? s : fresh();
            if (steps[i].dir > 0)
                edges.push_back({cur, steps[i].letter, next});
            else
                edges.push_back({next, steps[i].letter, cur});
            cur = next;
        }
    }

    // determinize in both directions until stable; returns forward maps
    std::vector<std::array<int, 2>> fold() {
        for (;;) {
            bool changed = false;
            std::vector<std::array<int, 2>> fwd(parent.size(), {-1, -1});
            std::vector<std::array<int, 2>> bwd(parent.size(), {-1, -1});
            for (auto& [u, l, v] : edges) {
                int ur = find(u), vr = find(v);
                int& slot = fwd[static_cast<std::size_t>(ur)][static_cast<std::size_t>(l)];
                if (slot == -1)
                    slot = vr;
                else if (slot != vr) {
                    unite(slot, vr);
                    changed = true;
                }
                int& islot = bwd[static_cast<std::size_t>(vr)][static_cast<std::size_t>(l)];
                if (islot == -1)
                    islot = ur;
                else if (islot != ur) {
                    unite(islot, ur);
                    changed = true;
                }
            }
            if (!changed) return fwd;
        }
    }

    long long run(const std::vector<sl2::STWord>& subgroup_gens) {
        fresh();  // base coset
        for (const auto& g : subgroup_gens) plant_cycle(0, to_steps(g));
        for (;;) {
            auto fwd = fold();

            std::vector<int> live;
            for (std::size_t s = 0; s < parent.size(); ++s)
                if (find(static_cast<int>(s)) == static_cast<int>(s)) live.push_back(static_cast<int>(s));
            if (live.size() > cap) throw sl2::cap_exceeded("todd_coxeter: coset cap exceeded");

            bool progressed = false;
            for (int s : live) {
                if (!planted[static_cast<std::size_t>(s)]) {
                    planted[static_cast<std::size_t>(s)] = 1;
                    for (const auto& rel : relators()) plant_cycle(s, rel);
                    progressed = true;
                }
            }
            if (!progressed) {
                for (int s : live)
                    for (int l = 0; l < 2; ++l)
                        if (fwd[static_cast<std::size_t>(s)][static_cast<std::size_t>(l)] == -1) {
                            edges.push_back({s, l, fresh()});
                            progressed = true;
                        }
            }
            if (!progressed) return static_cast<long long>(live.size());
        }
    }
};

}  // namespace

long long sl2z_subgroup_index(const std::vector<sl2::STWord>& subgroup_gens, std::size_t max_cosets) {
    Enumerator e(max_cosets);
    return e.run(subgroup_gens);
}

}  // namespace ov::tc
