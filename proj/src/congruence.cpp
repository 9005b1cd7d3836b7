#include "ov/congruence.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace ov::congruence {

using sl2::MatModN;
using sl2::MatZ2;
using sl2::STWord;
using veech::VeechGroup;

namespace {

std::vector<MatZ2> dedup_schreier(const VeechGroup& g) {
    std::vector<MatZ2> out;
    std::map<std::string, int> seen;
    for (const auto& s : g.schreier)
        if (seen.emplace(sl2::mat_to_string(s.mat), 1).second) out.push_back(s.mat);
    return out;
}

std::uint64_t image_order(const std::vector<MatZ2>& gens, long long n, std::size_t cap) {
    std::vector<MatModN> mod;
    mod.reserve(gens.size());
    for (const auto& m : gens) mod.push_back(sl2::reduce_mod(m, n));
    return sl2::subgroup_closure_mod(mod, n, cap).size();
}

std::vector<long long> divisors(long long n) {
    std::vector<long long> out;
    for (long long d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            if (d != n / d) out.push_back(n / d);
        }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

CongruenceReport is_congruence(const VeechGroup& g, std::size_t closure_cap) {
    CongruenceReport rep;
    rep.closure_cap = closure_cap;
    rep.general_level = veech::general_level(g);
    rep.index_sl2z = g.index();

    const std::vector<MatZ2> gens = dedup_schreier(g);
    rep.sl2_mod_order = sl2::sl2_group_order(rep.general_level);
    rep.image_order = image_order(gens, rep.general_level, closure_cap);
    if (rep.sl2_mod_order % rep.image_order != 0)
        throw std::logic_error("is_congruence: image order does not divide the group order");
    rep.index_mod = static_cast<long long>(rep.sl2_mod_order / rep.image_order);
    if (rep.index_sl2z % rep.index_mod != 0)
        throw std::logic_error("is_congruence: mod-N index does not divide the exact index");

    rep.congruence = rep.index_mod == rep.index_sl2z;
    rep.level = rep.general_level;
    if (rep.congruence) {
        for (long long d : divisors(rep.general_level)) {
            std::uint64_t ord = sl2::sl2_group_order(d);
            std::uint64_t img = image_order(gens, d, closure_cap);
            if (static_cast<long long>(ord / img) == rep.index_sl2z) {
                rep.level = d;
                break;
            }
        }
    }
    return rep;
}

namespace {

struct TargetSet {
    // mod-key -> index into targets
    std::unordered_map<std::uint64_t, std::size_t> by_key;
    std::vector<std::pair<MatZ2, STWord>> targets;  // h and a word for it
};

// Candidate h's: products V * W^-1 of coset representatives that are not
// members (these exhaust the failures of injectivity mod N). Ordered by
// total representative length, so T-like targets come first.
TargetSet build_targets(const VeechGroup& g, long long n) {
    struct Cand {
        std::size_t cost;
        MatZ2 h;
        STWord word;
    };
    std::vector<Cand> cands;
    std::vector<MatZ2> rep_mats;
    rep_mats.reserve(g.reps.size());
    for (const auto& w : g.reps) rep_mats.push_back(sl2::eval_word(w));
    for (std::size_t i = 0; i < g.reps.size(); ++i)
        for (std::size_t j = 0; j < g.reps.size(); ++j) {
            if (i == j) continue;
            MatZ2 h = sl2::mul(rep_mats[i], sl2::inverse(rep_mats[j]));
            STWord w = sl2::concat(g.reps[i], sl2::word_inverse(g.reps[j]));
            cands.push_back(Cand{g.reps[i].runs.size() + g.reps[j].runs.size(), std::move(h), std::move(w)});
        }
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Cand& a, const Cand& b) { return a.cost < b.cost; });
    TargetSet ts;
    for (auto& c : cands) {
        if (member(g, c.h)) continue;  // h must lie outside Gamma
        std::uint64_t key = sl2::mod_key(sl2::reduce_mod(c.h, n));
        if (ts.by_key.emplace(key, ts.targets.size()).second)
            ts.targets.emplace_back(std::move(c.h), std::move(c.word));
    }
    return ts;
}

std::optional<Witness> verify_witness(const VeechGroup& g, long long n, MatZ2 gmat,
                                      std::vector<WitnessFactor> fact, std::vector<MatZ2> pool,
                                      const MatZ2& h, const STWord& h_word) {
    if (!member(g, gmat)) return std::nullopt;
    if (member(g, h)) return std::nullopt;
    if (!(sl2::reduce_mod(gmat, n) == sl2::reduce_mod(h, n))) return std::nullopt;
    Witness w;
    w.g = std::move(gmat);
    w.factorization = std::move(fact);
    w.pool = std::move(pool);
    w.h = h;
    w.h_word = h_word;
    w.modulus = n;
    return w;
}

}  // namespace

std::optional<Witness> find_witness(const VeechGroup& g, long long N,
                                    const std::vector<MatZ2>* pool_in, std::size_t closure_cap) {
    const std::vector<MatZ2> pool = pool_in ? *pool_in : dedup_schreier(g);
    if (pool.empty()) throw std::invalid_argument("find_witness: empty generator pool");

    {  // precondition: the verdict at N must be NonCongruence
        std::uint64_t img = image_order(dedup_schreier(g), N, closure_cap);
        if (static_cast<long long>(sl2::sl2_group_order(N) / img) == g.index())
            throw std::invalid_argument("find_witness: index equality holds at N, no witness exists");
    }

    TargetSet targets = build_targets(g, N);

    // pass 1: products of two generator powers, exponents below the mod-N orders
    std::vector<MatModN> pool_mod;
    std::vector<long long> ord;
    for (const auto& m : pool) {
        pool_mod.push_back(sl2::reduce_mod(m, N));
        ord.push_back(sl2::element_order_mod(pool_mod.back()));
    }
    for (std::size_t a = 0; a < pool.size(); ++a) {
        for (std::size_t b = 0; b < pool.size(); ++b) {
            if (a == b) continue;
            MatModN pa = sl2::mod_identity(N);
            for (long long i = 0; i < ord[a]; ++i) {
                MatModN pab = pa;
                for (long long j = 0; j < ord[b]; ++j) {
                    if (i != 0 || j != 0) {
                        auto it = targets.by_key.find(sl2::mod_key(pab));
                        if (it != targets.by_key.end()) {
                            const auto& [h, h_word] = targets.targets[it->second];
                            MatZ2 gm = sl2::mul(sl2::mat_pow(pool[a], i), sl2::mat_pow(pool[b], j));
                            std::vector<WitnessFactor> fact;
                            if (i != 0) fact.push_back({static_cast<int>(a), i});
                            if (j != 0) fact.push_back({static_cast<int>(b), j});
                            auto w = verify_witness(g, N, std::move(gm), std::move(fact), pool, h, h_word);
                            if (w) return w;
                        }
                    }
                    pab = sl2::mul_mod(pab, pool_mod[b]);
                }
                pa = sl2::mul_mod(pa, pool_mod[a]);
            }
        }
    }

    // pass 2: breadth-first factorization over the mod-N closure
    struct Node {
        std::uint64_t parent;
        int gen;
    };
    std::unordered_map<std::uint64_t, Node> tree;
    std::vector<MatModN> frontier{sl2::mod_identity(N)};
    tree.emplace(sl2::mod_key(frontier[0]), Node{0, -1});
    auto emit = [&](std::uint64_t key) -> std::optional<Witness> {
        std::vector<int> path;
        std::uint64_t at = key;
        while (tree.at(at).gen >= 0) {
            path.push_back(tree.at(at).gen);
            at = tree.at(at).parent;
        }
        std::reverse(path.begin(), path.end());
        MatZ2 gm = sl2::mat_identity();
        std::vector<WitnessFactor> fact;
        for (int gi : path) {
            gm = sl2::mul(gm, pool[static_cast<std::size_t>(gi)]);
            if (!fact.empty() && fact.back().gen == gi)
                ++fact.back().exp;
            else
                fact.push_back({gi, 1});
        }
        const auto& [h, h_word] = targets.targets[targets.by_key.at(key)];
        return verify_witness(g, N, std::move(gm), std::move(fact), pool, h, h_word);
    };
    {
        auto it = targets.by_key.find(sl2::mod_key(frontier[0]));
        if (it != targets.by_key.end()) {
            auto w = emit(sl2::mod_key(frontier[0]));
            if (w) return w;
        }
    }
    while (!frontier.empty()) {
        std::vector<MatModN> next;
        for (const auto& m : frontier) {
            std::uint64_t mk = sl2::mod_key(m);
            for (std::size_t gi = 0; gi < pool_mod.size(); ++gi) {
                MatModN p = sl2::mul_mod(m, pool_mod[gi]);
                std::uint64_t key = sl2::mod_key(p);
                if (tree.emplace(key, Node{mk, static_cast<int>(gi)}).second) {
                    if (tree.size() > closure_cap)
                        throw sl2::cap_exceeded("find_witness: closure cap exceeded");
                    if (targets.by_key.count(key)) {
                        auto w = emit(key);
                        if (w) return w;
                    }
                    next.push_back(p);
                }
            }
        }
        frontier.swap(next);
    }
    return std::nullopt;
}

// --- the mod-60 proof --------------------------------------------------------

namespace {

std::string triple_to_string(const std::vector<MatModN>& t) {
    std::ostringstream os;
    for (std::size_t i = 0; i < t.size(); ++i) os << (i ? ", " : "(") << sl2::mod_to_string(t[i]);
    os << ")";
    return os.str();
}

void check_step(ProofTrace& trace, const std::string& what, bool ok) {
    trace.steps.push_back(ProofStep{what, ok});
    if (!ok) throw std::logic_error("replay_paper_proof: mismatch at step: " + what);
}

}  // namespace

ProofTrace replay_paper_proof() {
    ProofTrace trace;
    const std::vector<long long> f{4, 3, 5};
    const MatZ2 a1 = sl2::eval_word(sl2::parse_st("TTT"));
    const MatZ2 a6 = sl2::eval_word(sl2::parse_st("sTTstsTsttts"));

    check_step(trace, "A1 = T^3 = [[1,3],[0,1]]", a1 == MatZ2{1, 3, 0, 1});
    check_step(trace, "A6 = S^-1 T^2 S^-1 T^-1 S^-1 T S^-1 T^-3 S^-1 = [[7,2],[-18,-5]]",
               a6 == MatZ2{7, 2, -18, -5});

    auto p60 = [&f](const MatZ2& m) { return sl2::crt_split(m, f); };
    auto triple = [](long long n, long long a, long long b, long long c, long long d) {
        return MatModN{n, {a, b, c, d}};
    };

    auto pa1 = p60(a1);
    check_step(trace, "p60(A1) = " + triple_to_string(pa1),
               pa1 == std::vector<MatModN>{triple(4, 1, 3, 0, 1), sl2::mod_identity(3),
                                           triple(5, 1, 3, 0, 1)});
    check_step(trace, "order of p60(A1) is (4,1,5)",
               sl2::element_order_mod(a1, 4) == 4 && sl2::element_order_mod(a1, 3) == 1 &&
                   sl2::element_order_mod(a1, 5) == 5);

    auto pa17 = p60(sl2::mat_pow(a1, 7));
    check_step(trace, "p60(A1^7) = ([[1,1],[0,1]], I, [[1,1],[0,1]])",
               pa17 == std::vector<MatModN>{triple(4, 1, 1, 0, 1), sl2::mod_identity(3),
                                            triple(5, 1, 1, 0, 1)});

    auto pa6 = p60(a6);
    check_step(trace, "p60(A6) = " + triple_to_string(pa6),
               pa6 == std::vector<MatModN>{triple(4, 3, 2, 2, 3), triple(3, 1, 2, 0, 1),
                                           triple(5, 2, 2, 2, 0)});

    const MatZ2 a6sq = sl2::mul(a6, a6);
    auto pa62 = p60(a6sq);
    check_step(trace, "p60(A6^2) = (I, [[1,1],[0,1]], [[3,4],[4,4]])",
               pa62 == std::vector<MatModN>{sl2::mod_identity(4), triple(3, 1, 1, 0, 1),
                                            triple(5, 3, 4, 4, 4)});
    check_step(trace, "order of p60(A6^2) is (1,3,5)",
               sl2::element_order_mod(a6sq, 4) == 1 && sl2::element_order_mod(a6sq, 3) == 3 &&
                   sl2::element_order_mod(a6sq, 5) == 5);

    auto pa620 = p60(sl2::mat_pow(a6, 20));
    check_step(trace, "p60(A6^20) = (I, [[1,1],[0,1]], I)",
               pa620 == std::vector<MatModN>{sl2::mod_identity(4), triple(3, 1, 1, 0, 1),
                                             sl2::mod_identity(5)});

    const MatZ2 prod = sl2::mul(sl2::mat_pow(a6, 20), sl2::mat_pow(a1, 7));
    check_step(trace, "p60(A6^20 * A1^7) = p60(T)",
               sl2::reduce_mod(prod, 60) == sl2::reduce_mod(sl2::mat_T(), 60));
    return trace;
}

}  // namespace ov::congruence
