#include "ov/freegroup.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <queue>
#include <sstream>

namespace ov::freegroup {

F2Word free_reduce(const F2Word& w) {
    F2Word out;
    for (F2Letter l : w) {
        if (!out.empty() && out.back() == letter_inverse(l))
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

F2Word f2_concat(const F2Word& u, const F2Word& v) {
    F2Word out = u;
    for (F2Letter l : v) {
        if (!out.empty() && out.back() == letter_inverse(l))
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

F2Word f2_inverse(const F2Word& w) {
    F2Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(letter_inverse(*it));
    return out;
}

F2Word parse_f2(const std::string& text) {
    F2Word w;
    for (char ch : text) {
        F2Letter l;
        switch (ch) {
            case 'x': l = Lx; break;
            case 'X': l = LX; break;
            case 'y': l = Ly; break;
            case 'Y': l = LY; break;
            case ' ': continue;
            default: throw std::invalid_argument(std::string("parse_f2: bad character '") + ch + "'");
        }
        if (!w.empty() && w.back() == letter_inverse(l))
            w.pop_back();
        else
            w.push_back(l);
    }
    return w;
}

std::string f2_to_string(const F2Word& w) {
    static const char* chars = "xXyY";
    std::string s;
    s.reserve(w.size());
    for (F2Letter l : w) s.push_back(chars[l]);
    return s;
}

// --- automata ---------------------------------------------------------------

CosetAutomaton CosetAutomaton::from_perms(const origami::Perm& a, const origami::Perm& b) {
    CosetAutomaton aut;
    aut.x = a.images();
    aut.xi = a.inverse().images();
    aut.y = b.images();
    aut.yi = b.inverse().images();
    return aut;
}

origami::Origami CosetAutomaton::to_origami() const {
    return origami::new_origami(size(), origami::Perm(x), origami::Perm(y));
}

bool contains(const CosetAutomaton& aut, const F2Word& w) { return aut.trace(0, w) == 0; }

std::string automaton_to_dot(const CosetAutomaton& aut) {
    std::ostringstream os;
    os << "digraph coset_automaton {\n";
    os << "  q1 [shape=doublecircle];\n";
    for (int s = 0; s < aut.size(); ++s)
        os << "  q" << s + 1 << " -> q" << aut.x[static_cast<std::size_t>(s)] + 1 << " [label=\"x\"];\n";
    for (int s = 0; s < aut.size(); ++s)
        os << "  q" << s + 1 << " -> q" << aut.y[static_cast<std::size_t>(s)] + 1
           << " [label=\"y\", style=dashed];\n";
    os << "}\n";
    return os.str();
}

// --- Schreier basis ---------------------------------------------------------

Subgroup subgroup_from_automaton(CosetAutomaton aut) {
    const int m = aut.size();
    SubgroupBasis basis;
    basis.reps.assign(static_cast<std::size_t>(m), F2Word{});
    basis.edge_gen.assign(static_cast<std::size_t>(m), {-1, -1});

    std::vector<char> visited(static_cast<std::size_t>(m), 0);
    std::vector<std::array<char, 2>> is_tree(static_cast<std::size_t>(m), {0, 0});
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(m));
    visited[0] = 1;
    order.push_back(0);
    for (std::size_t head = 0; head < order.size(); ++head) {
        int u = order[head];
        const F2Letter fwd[2] = {Lx, Ly};
        for (int k = 0; k < 2; ++k) {
            int v = aut.step(u, fwd[k]);
            if (!visited[static_cast<std::size_t>(v)]) {
                visited[static_cast<std::size_t>(v)] = 1;
                is_tree[static_cast<std::size_t>(u)][k] = 1;
                basis.reps[static_cast<std::size_t>(v)] =
                    f2_concat(basis.reps[static_cast<std::size_t>(u)], F2Word{fwd[k]});
                order.push_back(v);
            }
        }
    }
    if (static_cast<int>(order.size()) != m)
        throw std::invalid_argument("subgroup_from_automaton: automaton not connected from base");

    for (int u : order) {
        const F2Letter fwd[2] = {Lx, Ly};
        for (int k = 0; k < 2; ++k) {
            if (is_tree[static_cast<std::size_t>(u)][k]) continue;
            int v = aut.step(u, fwd[k]);
            F2Word gen = f2_concat(f2_concat(basis.reps[static_cast<std::size_t>(u)], F2Word{fwd[k]}),
                                   f2_inverse(basis.reps[static_cast<std::size_t>(v)]));
            basis.edge_gen[static_cast<std::size_t>(u)][k] = static_cast<int>(basis.gens.size());
            basis.gens.push_back(std::move(gen));
        }
    }
    return Subgroup{std::move(aut), std::move(basis)};
}

Subgroup origami_to_subgroup(const origami::Origami& o) {
    return subgroup_from_automaton(CosetAutomaton::from_perms(o.sigma_a, o.sigma_b));
}

void designate_leading(Subgroup& u, const F2Word& g) {
    const F2Word target = free_reduce(g);
    auto it = std::find(u.basis.gens.begin(), u.basis.gens.end(), target);
    if (it == u.basis.gens.end())
        throw std::invalid_argument("designate_leading: word is not a basis generator");
    int idx = static_cast<int>(it - u.basis.gens.begin());
    if (idx == 0) return;
    std::swap(u.basis.gens[0], u.basis.gens[static_cast<std::size_t>(idx)]);
    for (auto& eg : u.basis.edge_gen)
        for (int k = 0; k < 2; ++k) {
            if (eg[k] == 0)
                eg[k] = idx;
            else if (eg[k] == idx)
                eg[k] = 0;
        }
}

// --- Stallings folding --------------------------------------------------------

incomplete_automaton::incomplete_automaton(std::vector<std::pair<int, char>> miss)
    : std::runtime_error([&miss] {
          std::ostringstream os;
          os << "subgroup has infinite index; missing transitions:";
          for (auto& [s, l] : miss) os << " (state " << s + 1 << ", " << l << ")";
          return os.str();
      }()),
      missing(std::move(miss)) {}

namespace {

struct Folder {
    // raw forward edges (u, letter in {0=x,1=y}, v); folding by fixpoint rounds
    std::vector<std::array<int, 3>> edges;
    std::vector<int> parent;

    int fresh() {
        parent.push_back(static_cast<int>(parent.size()));
        return parent.back();
    }
    int find(int v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            v = parent[static_cast<std::size_t>(v)];
        }
        return v;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }

    void fold() {
        bool changed = true;
        while (changed) {
            changed = false;
            std::vector<std::array<int, 2>> out(parent.size(), {-1, -1});
            std::vector<std::array<int, 2>> in(parent.size(), {-1, -1});
            for (auto& [u, l, v] : edges) {
                int ur = find(u), vr = find(v);
                int& slot = out[static_cast<std::size_t>(ur)][static_cast<std::size_t>(l)];
                if (slot == -1)
                    slot = vr;
                else if (slot != vr) {
                    unite(slot, vr);
                    changed = true;
                }
                int& islot = in[static_cast<std::size_t>(vr)][static_cast<std::size_t>(l)];
                if (islot == -1)
                    islot = ur;
                else if (islot != ur) {
                    unite(islot, ur);
                    changed = true;
                }
            }
        }
    }
};

}  // namespace

origami::Origami subgroup_to_origami(const std::vector<F2Word>& gens) {
    Folder f;
    int base = f.fresh();
    for (const F2Word& raw : gens) {
        F2Word w = free_reduce(raw);
        if (w.empty()) continue;
        int cur = base;
        for (std::size_t i = 0; i < w.size(); ++i) {
            int next = (i + 1 == w.size()) ? base : f.fresh();
            F2Letter l = w[i];
            if (l == Lx || l == Ly)
                f.edges.push_back({cur, l == Lx ? 0 : 1, next});
            else
                f.edges.push_back({next, l == LX ? 0 : 1, cur});
            cur = next;
        }
    }
    f.fold();

    // collect folded out-maps, keeping only states reachable from base
    std::vector<std::array<int, 2>> out(f.parent.size(), {-1, -1});
    for (auto& [u, l, v] : f.edges)
        out[static_cast<std::size_t>(f.find(u))][static_cast<std::size_t>(l)] = f.find(v);

    std::vector<int> number(f.parent.size(), -1);
    std::vector<int> order;
    int broot = f.find(base);
    number[static_cast<std::size_t>(broot)] = 0;
    order.push_back(broot);
    // discovery order over x, y and their inverses (the core graph is
    // connected, but an unfolded direction may only be reachable backwards)
    std::vector<std::array<int, 2>> inmap(f.parent.size(), {-1, -1});
    for (std::size_t s = 0; s < out.size(); ++s)
        for (int l = 0; l < 2; ++l)
            if (out[s][static_cast<std::size_t>(l)] >= 0 && f.find(static_cast<int>(s)) == static_cast<int>(s))
                inmap[static_cast<std::size_t>(out[s][static_cast<std::size_t>(l)])][static_cast<std::size_t>(l)] =
                    static_cast<int>(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
        int u = order[head];
        for (int l = 0; l < 2; ++l) {
            for (int v : {out[static_cast<std::size_t>(u)][static_cast<std::size_t>(l)],
                          inmap[static_cast<std::size_t>(u)][static_cast<std::size_t>(l)]}) {
                if (v >= 0 && number[static_cast<std::size_t>(v)] < 0) {
                    number[static_cast<std::size_t>(v)] = static_cast<int>(order.size());
                    order.push_back(v);
                }
            }
        }
    }

    const int m = static_cast<int>(order.size());
    std::vector<std::pair<int, char>> missing;
    std::vector<int> sx(static_cast<std::size_t>(m), -1), sy(static_cast<std::size_t>(m), -1);
    for (int i = 0; i < m; ++i) {
        int s = order[static_cast<std::size_t>(i)];
        for (int l = 0; l < 2; ++l) {
            int t = out[static_cast<std::size_t>(s)][static_cast<std::size_t>(l)];
            if (t < 0) {
                missing.emplace_back(i, l == 0 ? 'x' : 'y');
            } else {
                (l == 0 ? sx : sy)[static_cast<std::size_t>(i)] = number[static_cast<std::size_t>(t)];
            }
        }
    }
    // a complete deterministic folded graph on finitely many states is a
    // permutation pair iff every state also has both in-edges
    if (missing.empty()) {
        std::vector<char> hasx(static_cast<std::size_t>(m), 0), hasy(static_cast<std::size_t>(m), 0);
        for (int i = 0; i < m; ++i) {
            hasx[static_cast<std::size_t>(sx[static_cast<std::size_t>(i)])] = 1;
            hasy[static_cast<std::size_t>(sy[static_cast<std::size_t>(i)])] = 1;
        }
        for (int i = 0; i < m; ++i) {
            if (!hasx[static_cast<std::size_t>(i)]) missing.emplace_back(i, 'x');
            if (!hasy[static_cast<std::size_t>(i)]) missing.emplace_back(i, 'y');
        }
    }
    if (!missing.empty()) throw incomplete_automaton(std::move(missing));

    return origami::new_origami(m, origami::Perm(std::move(sx)), origami::Perm(std::move(sy)));
}

// --- rewriting / alpha --------------------------------------------------------

BasisWord rewrite_in_basis(const Subgroup& u, const F2Word& w) {
    BasisWord out;
    int s = 0;
    for (F2Letter l : w) {
        if (l == Lx || l == Ly) {
            int idx = u.basis.edge_gen[static_cast<std::size_t>(s)][l == Lx ? 0 : 1];
            if (idx >= 0) out.push_back(idx + 1);
            s = u.aut.step(s, l);
        } else {
            int t = u.aut.step(s, l);  // crossing edge (t, base letter) backwards
            int idx = u.basis.edge_gen[static_cast<std::size_t>(t)][l == LX ? 0 : 1];
            if (idx >= 0) out.push_back(-(idx + 1));
            s = t;
        }
    }
    if (s != 0) throw std::invalid_argument("rewrite_in_basis: word is not in the subgroup");
    // free reduction over basis letters
    BasisWord red;
    for (int v : out) {
        if (!red.empty() && red.back() == -v)
            red.pop_back();
        else
            red.push_back(v);
    }
    return red;
}

F2Word expand_basis_word(const SubgroupBasis& basis, const BasisWord& bw) {
    F2Word out;
    for (int v : bw) {
        const F2Word& g = basis.gens[static_cast<std::size_t>(std::abs(v) - 1)];
        out = f2_concat(out, v > 0 ? g : f2_inverse(g));
    }
    return out;
}

long long alpha(const Subgroup& u, const F2Word& w) {
    long long sum = 0;
    for (int v : rewrite_in_basis(u, w)) {
        if (v == 1) ++sum;
        if (v == -1) --sum;
    }
    return sum;
}

// --- power kernels --------------------------------------------------------------

Subgroup power_kernel(const Subgroup& u, int n) {
    if (n < 1) throw std::invalid_argument("power_kernel: n >= 1 required");
    const int m = u.aut.size();
    // alpha-weight of the outgoing x/y edge at each state: 1 on the edge
    // carrying the leading generator, 0 elsewhere
    auto weight = [&](int s, int k) {
        return u.basis.edge_gen[static_cast<std::size_t>(s)][static_cast<std::size_t>(k)] == 0 ? 1 : 0;
    };
    auto id_of = [n](int s, int r) { return s * n + r; };
    std::vector<int> px(static_cast<std::size_t>(m) * static_cast<std::size_t>(n));
    std::vector<int> py(px.size());
    for (int s = 0; s < m; ++s)
        for (int r = 0; r < n; ++r) {
            px[static_cast<std::size_t>(id_of(s, r))] = id_of(u.aut.x[static_cast<std::size_t>(s)], (r + weight(s, 0)) % n);
            py[static_cast<std::size_t>(id_of(s, r))] = id_of(u.aut.y[static_cast<std::size_t>(s)], (r + weight(s, 1)) % n);
        }
    // BFS renumber from (base, 0) for a deterministic, connected numbering
    const int total = m * n;
    std::vector<int> number(static_cast<std::size_t>(total), -1);
    std::vector<int> order;
    number[0] = 0;
    order.push_back(0);
    for (std::size_t head = 0; head < order.size(); ++head) {
        int s = order[head];
        for (const std::vector<int>* map : {&px, &py}) {
            int v = (*map)[static_cast<std::size_t>(s)];
            if (number[static_cast<std::size_t>(v)] < 0) {
                number[static_cast<std::size_t>(v)] = static_cast<int>(order.size());
                order.push_back(v);
            }
        }
    }
    if (static_cast<int>(order.size()) != total)
        throw std::logic_error("power_kernel: product automaton not connected");
    std::vector<int> nx(static_cast<std::size_t>(total)), ny(static_cast<std::size_t>(total));
    for (int i = 0; i < total; ++i) {
        int s = order[static_cast<std::size_t>(i)];
        nx[static_cast<std::size_t>(i)] = number[static_cast<std::size_t>(px[static_cast<std::size_t>(s)])];
        ny[static_cast<std::size_t>(i)] = number[static_cast<std::size_t>(py[static_cast<std::size_t>(s)])];
    }
    return subgroup_from_automaton(CosetAutomaton::from_perms(origami::Perm(std::move(nx)), origami::Perm(std::move(ny))));
}

// --- Property B ------------------------------------------------------------------

namespace {

// Enumerates freely-reduced basis words of the given length with alpha == 0,
// skipping the g1^i g_j g1^-i shapes handled separately.
void general_candidates(int k, int len, BasisWord& cur, long long asum,
                        const std::function<bool(const BasisWord&)>& visit, bool& done) {
    if (done) return;
    if (len == 0) {
        if (asum == 0 && !cur.empty()) done = visit(cur);
        return;
    }
    for (int idx = 1; idx <= k && !done; ++idx)
        for (int sign : {1, -1}) {
            int v = sign * idx;
            if (!cur.empty() && cur.back() == -v) continue;
            cur.push_back(v);
            general_candidates(k, len - 1, cur, asum + (idx == 1 ? sign : 0), visit, done);
            cur.pop_back();
            if (done) return;
        }
}

}  // namespace

PropertyBResult property_b_check(const Subgroup& u, int length_bound) {
    PropertyBResult res;
    res.bound = length_bound;
    const int k = u.rank();
    const int m = u.index();
    if (m < 2) {
        res.verified = true;  // vacuous: no representative other than id
        return res;
    }
    for (int j = 1; j < m; ++j) {
        // w_j h0 w_j^-1 in U  <=>  j . h0 == j
        bool found = false;
        auto try_candidate = [&](const BasisWord& bw) {
            F2Word h0 = expand_basis_word(u.basis, bw);
            if (u.aut.trace(j, h0) == j) return false;
            F2Word conj = f2_concat(f2_concat(u.basis.reps[static_cast<std::size_t>(j)], h0),
                                    f2_inverse(u.basis.reps[static_cast<std::size_t>(j)]));
            res.witnesses.push_back(PropertyBWitness{j, bw, std::move(h0), std::move(conj)});
            found = true;
            return true;
        };
        // conjugated generators first: g1^i g_j^+-1 g1^-i, basis-length 2i+1
        for (int i = 0; 2 * i + 1 <= length_bound && !found; ++i)
            for (int idx = 2; idx <= k && !found; ++idx)
                for (int sign : {1, -1}) {
                    BasisWord bw;
                    bw.insert(bw.end(), static_cast<std::size_t>(i), 1);
                    bw.push_back(sign * idx);
                    bw.insert(bw.end(), static_cast<std::size_t>(i), -1);
                    if (try_candidate(bw)) break;
                }
        // general search over alpha-0 basis words
        for (int len = 1; len <= length_bound && !found; ++len) {
            BasisWord cur;
            bool done = false;
            general_candidates(k, len, cur, 0, try_candidate, done);
            found = done;
        }
        if (!found) res.unresolved.push_back(j);
    }
    res.verified = res.unresolved.empty();
    return res;
}

// --- automorphisms ------------------------------------------------------------------

CosetAutomaton apply_aut(Aut gamma, const CosetAutomaton& aut) {
    // automaton of gamma(U) has monodromy m o gamma^-1
    origami::Perm sx(aut.x), sy(aut.y);
    origami::Perm nx, ny;
    switch (gamma) {
        case Aut::T:  // gamma_T^-1: x -> x, y -> x^-1 y
            nx = sx;
            ny = sx.inverse().compose(sy);
            break;
        case Aut::Tinv:  // gamma_T: x -> x, y -> xy
            nx = sx;
            ny = sx.compose(sy);
            break;
        case Aut::S:  // gamma_S^-1: x -> y^-1, y -> x
            nx = sy.inverse();
            ny = sx;
            break;
        case Aut::Sinv:  // gamma_S: x -> y, y -> x^-1
            nx = sy;
            ny = sx.inverse();
            break;
        case Aut::MinusI:
            nx = sx.inverse();
            ny = sy.inverse();
            break;
    }
    return CosetAutomaton::from_perms(nx, ny);
}

}  // namespace ov::freegroup
