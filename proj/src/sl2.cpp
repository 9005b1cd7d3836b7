#include "ov/sl2.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ov::sl2 {

MatZ2 mat_identity() { return MatZ2{1, 0, 0, 1}; }
MatZ2 mat_minus_identity() { return MatZ2{-1, 0, 0, -1}; }
MatZ2 mat_S() { return MatZ2{0, -1, 1, 0}; }
MatZ2 mat_T() { return MatZ2{1, 1, 0, 1}; }
MatZ2 mat_T_pow(const Int& k) { return MatZ2{1, k, 0, 1}; }

MatZ2 mul(const MatZ2& A, const MatZ2& B) {
    return MatZ2{A.a * B.a + A.b * B.c, A.a * B.b + A.b * B.d,
                 A.c * B.a + A.d * B.c, A.c * B.b + A.d * B.d};
}

MatZ2 inverse(const MatZ2& A) {
    if (A.det() != 1) throw std::invalid_argument("inverse: det != 1");
    return MatZ2{A.d, -A.b, -A.c, A.a};
}

MatZ2 mat_pow(const MatZ2& A, const Int& k) {
    if (k < 0) return mat_pow(inverse(A), -k);
    MatZ2 acc = mat_identity();
    MatZ2 base = A;
    Int e = k;
    while (e > 0) {
        if ((e & 1) != 0) acc = mul(acc, base);
        e >>= 1;
        if (e > 0) base = mul(base, base);
    }
    return acc;
}

std::string mat_to_string(const MatZ2& A) {
    std::ostringstream os;
    os << "[[" << A.a << "," << A.b << "],[" << A.c << "," << A.d << "]]";
    return os.str();
}

// --- STWord ---------------------------------------------------------------

void append_run(STWord& w, char letter, const Int& exp) {
    if (letter != 'S' && letter != 'T') throw std::invalid_argument("append_run: bad letter");
    if (exp == 0) return;
    if (!w.runs.empty() && w.runs.back().letter == letter) {
        w.runs.back().exp += exp;
        if (w.runs.back().exp == 0) w.runs.pop_back();
        return;
    }
    w.runs.push_back(STRun{letter, exp});
}

STWord concat(const STWord& u, const STWord& v) {
    STWord w = u;
    for (const auto& r : v.runs) append_run(w, r.letter, r.exp);
    return w;
}

STWord word_inverse(const STWord& w) {
    STWord inv;
    for (auto it = w.runs.rbegin(); it != w.runs.rend(); ++it)
        append_run(inv, it->letter, -it->exp);
    return inv;
}

MatZ2 eval_word(const STWord& w) {
    MatZ2 M = mat_identity();
    for (const auto& r : w.runs) {
        if (r.letter == 'T') {
            // M * T^e = add e * col1 to col2
            M.b += M.a * r.exp;
            M.d += M.c * r.exp;
        } else {
            // S has order 4: S^1, S^2 = -I, S^3 = S^-1
            long long k = static_cast<long long>(((r.exp % 4) + 4) % 4);
            for (long long i = 0; i < k; ++i) {
                MatZ2 N{M.b, -M.a, M.d, -M.c};  // M * S
                M = N;
            }
        }
    }
    return M;
}

STWord decompose_st(const MatZ2& M) {
    if (M.det() != 1) throw std::invalid_argument("decompose_st: det != 1");
    // Reduce to [[+-1, *], [0, +-1]] by left-multiplying with T^-q and S,
    // then rebuild the word from the inverses.
    Int a = M.a, b = M.b, c = M.c, d = M.d;
    std::vector<Int> quotients;
    while (c != 0) {
        Int q = a / c;
        Int r = a - q * c;
        // round to nearest: keep |r| <= |c| / 2
        if (2 * abs(r) > abs(c)) {
            if ((r < 0) == (c < 0)) q += 1; else q -= 1;
            r = a - q * c;
        }
        quotients.push_back(q);
        // T^-q * M: row1 -= q * row2
        a = r;
        b -= q * d;
        // S * M: (row1, row2) -> (-row2, row1)
        std::swap(a, c);
        std::swap(b, d);
        a = -a;
        b = -b;
    }
    STWord w;
    for (const Int& q : quotients) {
        append_run(w, 'T', q);
        append_run(w, 'S', -1);
    }
    if (a == 1) {
        append_run(w, 'T', b);
    } else {
        // a == d == -1: remainder is -T^{-b} = S^2 T^{-b}
        append_run(w, 'S', 2);
        append_run(w, 'T', -b);
    }
    return w;
}

std::string st_to_string(const STWord& w) {
    static constexpr long long kMaxExpand = 1'000'000;
    std::string out;
    for (const auto& r : w.runs) {
        if (abs(r.exp) > kMaxExpand)
            throw std::length_error("st_to_string: run too long to expand");
        char ch = r.exp > 0 ? r.letter : static_cast<char>(r.letter + 32);
        long long k = static_cast<long long>(abs(r.exp));
        out.append(static_cast<std::size_t>(k), ch);
    }
    return out;
}

STWord parse_st(const std::string& text) {
    STWord w;
    for (char ch : text) {
        switch (ch) {
            case 'S': append_run(w, 'S', 1); break;
            case 's': append_run(w, 'S', -1); break;
            case 'T': append_run(w, 'T', 1); break;
            case 't': append_run(w, 'T', -1); break;
            case ' ': break;
            default: throw std::invalid_argument(std::string("parse_st: bad character '") + ch + "'");
        }
    }
    return w;
}

// --- MatModN ----------------------------------------------------------------

namespace {
long long to_residue(const Int& x, long long n) {
    Int r = x % n;
    if (r < 0) r += n;
    return static_cast<long long>(r);
}
}  // namespace

MatModN reduce_mod(const MatZ2& A, long long n) {
    if (n < 1) throw std::invalid_argument("reduce_mod: n must be >= 1");
    return MatModN{n, {to_residue(A.a, n), to_residue(A.b, n), to_residue(A.c, n), to_residue(A.d, n)}};
}

MatModN mod_identity(long long n) {
    return MatModN{n, {1 % n, 0, 0, 1 % n}};
}

MatModN mul_mod(const MatModN& A, const MatModN& B) {
    if (A.n != B.n) throw std::invalid_argument("mul_mod: modulus mismatch");
    const long long n = A.n;
    auto m = [n](long long x, long long y) {
        return static_cast<long long>((static_cast<__int128>(x) * y) % n);
    };
    return MatModN{n,
                   {(m(A.e[0], B.e[0]) + m(A.e[1], B.e[2])) % n,
                    (m(A.e[0], B.e[1]) + m(A.e[1], B.e[3])) % n,
                    (m(A.e[2], B.e[0]) + m(A.e[3], B.e[2])) % n,
                    (m(A.e[2], B.e[1]) + m(A.e[3], B.e[3])) % n}};
}

MatModN inverse_mod(const MatModN& A) {
    const long long n = A.n;
    auto neg = [n](long long x) { return (n - x % n) % n; };
    return MatModN{n, {A.e[3], neg(A.e[1]), neg(A.e[2]), A.e[0]}};
}

MatModN pow_mod(const MatModN& A, long long k) {
    MatModN base = k < 0 ? inverse_mod(A) : A;
    unsigned long long e = k < 0 ? static_cast<unsigned long long>(-(k + 1)) + 1 : static_cast<unsigned long long>(k);
    MatModN acc = mod_identity(A.n);
    while (e > 0) {
        if (e & 1) acc = mul_mod(acc, base);
        e >>= 1;
        if (e > 0) base = mul_mod(base, base);
    }
    return acc;
}

std::string mod_to_string(const MatModN& A) {
    std::ostringstream os;
    os << "[[" << A.e[0] << "," << A.e[1] << "],[" << A.e[2] << "," << A.e[3] << "]] mod " << A.n;
    return os.str();
}

namespace {
void check_pairwise_coprime(const std::vector<long long>& factors) {
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i] < 1) throw std::invalid_argument("crt: factors must be >= 1");
        for (std::size_t j = i + 1; j < factors.size(); ++j)
            if (std::gcd(factors[i], factors[j]) != 1)
                throw std::invalid_argument("crt: factors are not pairwise coprime");
    }
}
}  // namespace

std::vector<MatModN> crt_split(const MatZ2& A, const std::vector<long long>& factors) {
    check_pairwise_coprime(factors);
    std::vector<MatModN> parts;
    parts.reserve(factors.size());
    for (long long f : factors) parts.push_back(reduce_mod(A, f));
    return parts;
}

std::vector<MatModN> crt_split(const MatModN& A, const std::vector<long long>& factors) {
    check_pairwise_coprime(factors);
    long long prod = 1;
    for (long long f : factors) prod *= f;
    if (prod != A.n) throw std::invalid_argument("crt_split: factors do not multiply to n");
    std::vector<MatModN> parts;
    for (long long f : factors) {
        MatModN p{f, {A.e[0] % f, A.e[1] % f, A.e[2] % f, A.e[3] % f}};
        parts.push_back(p);
    }
    return parts;
}

MatModN crt_combine(const std::vector<MatModN>& parts) {
    if (parts.empty()) throw std::invalid_argument("crt_combine: empty input");
    std::vector<long long> factors;
    for (const auto& p : parts) factors.push_back(p.n);
    check_pairwise_coprime(factors);
    long long n = 1;
    for (long long f : factors) n *= f;
    MatModN out{n, {0, 0, 0, 0}};
    for (std::size_t k = 0; k < parts.size(); ++k) {
        const long long f = factors[k];
        const long long m = n / f;
        // m * (m^-1 mod f) == 1 (mod f), == 0 (mod n/f)
        long long mi = 1;
        if (f > 1) {
            long long mm = m % f;
            long long t = 1;
            while ((static_cast<__int128>(mm) * t) % f != 1) ++t;  // f is tiny (prime power)
            mi = t;
        }
        const __int128 coeff = static_cast<__int128>(m) * mi;
        for (int i = 0; i < 4; ++i) {
            __int128 v = out.e[i] + coeff % n * parts[k].e[i] % n;
            out.e[i] = static_cast<long long>(v % n);
        }
    }
    return out;
}

long long element_order_mod(const MatModN& A) {
    const MatModN id = mod_identity(A.n);
    MatModN acc = A;
    long long k = 1;
    while (!(acc == id)) {
        acc = mul_mod(acc, A);
        ++k;
        if (k > 4LL * A.n * A.n * A.n + 4) throw std::logic_error("element_order_mod: runaway");
    }
    return k;
}

long long element_order_mod(const MatZ2& A, long long n) {
    return element_order_mod(reduce_mod(A, n));
}

// --- closure ----------------------------------------------------------------

std::uint64_t mod_key(const MatModN& A) {
    if (A.n > 50'000) throw std::invalid_argument("mod_key: modulus too large to pack");
    const std::uint64_t n = static_cast<std::uint64_t>(A.n);
    std::uint64_t k = 0;
    for (int i = 0; i < 4; ++i) k = k * n + static_cast<std::uint64_t>(A.e[i]);
    return k;
}

ModClosure subgroup_closure_mod(const std::vector<MatModN>& gens, long long n, std::size_t cap) {
    for (const auto& g : gens)
        if (g.n != n) throw std::invalid_argument("subgroup_closure_mod: modulus mismatch");
    std::unordered_set<std::uint64_t> seen;
    std::vector<MatModN> frontier;
    const MatModN id = mod_identity(n);
    seen.insert(mod_key(id));
    frontier.push_back(id);
    std::vector<MatModN> next;
    while (!frontier.empty()) {
        next.clear();
        for (const auto& m : frontier) {
            for (const auto& g : gens) {
                MatModN p = mul_mod(m, g);
                if (seen.insert(mod_key(p)).second) {
                    if (seen.size() > cap) throw cap_exceeded("subgroup_closure_mod: cap exceeded");
                    next.push_back(p);
                }
            }
        }
        frontier.swap(next);
    }
    return ModClosure(n, std::move(seen));
}

std::vector<long long> prime_power_factors(long long n) {
    if (n < 1) throw std::invalid_argument("prime_power_factors: n >= 1 required");
    std::vector<long long> out;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            long long q = 1;
            while (n % p == 0) {
                q *= p;
                n /= p;
            }
            out.push_back(q);
        }
    }
    if (n > 1) out.push_back(n);
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t sl2_group_order(long long n) {
    if (n < 1) throw std::invalid_argument("sl2_group_order: n >= 1 required");
    Int order = 1;
    for (long long q : prime_power_factors(n)) {
        long long p = 2;
        while (q % p != 0) ++p;
        // p^(3k) * (1 - p^-2) = p^(3k-2) * (p^2 - 1)
        Int contrib = Int(q) * q * q / (Int(p) * p) * (Int(p) * p - 1);
        order *= contrib;
    }
    return static_cast<std::uint64_t>(order);
}

}  // namespace ov::sl2
