#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace ov::sl2 {

using Int = boost::multiprecision::cpp_int;

/// Thrown when a breadth-first closure outgrows its element cap.
struct cap_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// MatZ2: exact element of SL2(Z), entries row-major [[a,b],[c,d]], det = 1.
// ---------------------------------------------------------------------------

struct MatZ2 {
    Int a{1}, b{0}, c{0}, d{1};

    Int det() const { return a * d - b * c; }
    bool operator==(const MatZ2& o) const = default;
};

MatZ2 mat_identity();
MatZ2 mat_minus_identity();
MatZ2 mat_S();   // [[0,-1],[1,0]]
MatZ2 mat_T();   // [[1,1],[0,1]]
MatZ2 mat_T_pow(const Int& k);  // [[1,k],[0,1]]

MatZ2 mul(const MatZ2& A, const MatZ2& B);
MatZ2 inverse(const MatZ2& A);
MatZ2 mat_pow(const MatZ2& A, const Int& k);  // k may be negative

std::string mat_to_string(const MatZ2& A);

// ---------------------------------------------------------------------------
// STWord: word over {S, S^-1, T, T^-1}, stored as run-length pairs.
// Freely reduced: adjacent runs use different letters, no zero exponents.
// Exponents are arbitrary-precision (Euclidean quotients of big entries).
// ---------------------------------------------------------------------------

struct STRun {
    char letter;  // 'S' or 'T'
    Int exp;      // nonzero

    bool operator==(const STRun&) const = default;
};

struct STWord {
    std::vector<STRun> runs;

    bool empty() const { return runs.empty(); }
    bool operator==(const STWord&) const = default;
};

/// Appends letter^exp, merging with the trailing run (free reduction).
void append_run(STWord& w, char letter, const Int& exp);
STWord concat(const STWord& u, const STWord& v);
STWord word_inverse(const STWord& w);

MatZ2 eval_word(const STWord& w);

/// Euclidean S/T decomposition; eval_word(decompose_st(A)) == A exactly
/// (a trailing -I factor is absorbed as S^2).
STWord decompose_st(const MatZ2& A);

/// String form over {S,s,T,t}, lowercase = inverse ("TSTTs").
std::string st_to_string(const STWord& w);
STWord parse_st(const std::string& text);

// ---------------------------------------------------------------------------
// MatModN: reduction of SL2(Z) modulo n >= 1; det == 1 (mod n).
// ---------------------------------------------------------------------------

struct MatModN {
    long long n{1};
    std::array<long long, 4> e{0, 0, 0, 0};  // a,b,c,d reduced to [0,n)

    bool operator==(const MatModN&) const = default;
};

MatModN reduce_mod(const MatZ2& A, long long n);
MatModN mod_identity(long long n);
MatModN mul_mod(const MatModN& A, const MatModN& B);
MatModN inverse_mod(const MatModN& A);  // adjugate (det = 1 mod n)
MatModN pow_mod(const MatModN& A, long long k);

std::string mod_to_string(const MatModN& A);

/// Splits A into residues modulo the given pairwise-coprime factors.
std::vector<MatModN> crt_split(const MatZ2& A, const std::vector<long long>& factors);
std::vector<MatModN> crt_split(const MatModN& A, const std::vector<long long>& factors);

/// Inverse of crt_split: recombines componentwise residues mod prod(factors).
MatModN crt_combine(const std::vector<MatModN>& parts);

/// Least k >= 1 with A^k == I (mod n).
long long element_order_mod(const MatZ2& A, long long n);
long long element_order_mod(const MatModN& A);

// ---------------------------------------------------------------------------
// Finite subgroup closure in SL2(Z/nZ).
// ---------------------------------------------------------------------------

/// Packs a reduced matrix into one machine word; requires n <= 50000.
std::uint64_t mod_key(const MatModN& A);

class ModClosure {
  public:
    ModClosure(long long n, std::unordered_set<std::uint64_t> elems)
        : n_(n), elems_(std::move(elems)) {}

    long long modulus() const { return n_; }
    std::size_t size() const { return elems_.size(); }
    bool contains(const MatModN& A) const { return elems_.count(mod_key(A)) > 0; }

  private:
    long long n_;
    std::unordered_set<std::uint64_t> elems_;
};

/// Breadth-first closure of the subgroup generated by gens in SL2(Z/nZ).
/// Throws cap_exceeded when the closure grows past `cap` elements.
ModClosure subgroup_closure_mod(const std::vector<MatModN>& gens, long long n,
                                std::size_t cap = 10'000'000);

/// |SL2(Z/nZ)| = n^3 * prod_{p | n} (1 - p^-2), exact.
/// Validated against brute force / closure in tests.
std::uint64_t sl2_group_order(long long n);

/// Ascending prime-power factorization of n (n >= 1).
std::vector<long long> prime_power_factors(long long n);

}  // namespace ov::sl2
