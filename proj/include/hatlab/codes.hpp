#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "hatlab/game.hpp"

namespace hatlab {

/// A set of length-n words over a q-ary alphabet. Words are stored as
/// configuration ranks (player 1 most significant), sorted ascending.
/// `radius` is only ever set by an actual covering verification.
struct Code {
    int n = 0;
    int q = 2;
    std::vector<std::uint64_t> words;
    std::optional<int> radius;
    std::optional<int> hamming_m;  // set when built by hamming_code

    bool contains(std::uint64_t word) const;
    std::uint64_t space_size() const { return pow_u64(static_cast<std::uint64_t>(q), n); }
};

/// Hamming distance between two rank-encoded words of length n over q symbols.
int hamming_distance(std::uint64_t a, std::uint64_t b, int n, int q);

/// Binary Hamming code of length n = 2^m - 1: a word is a codeword iff for
/// every syndrome bit j, the XOR of its entries at 1-based positions with
/// bit j set is zero. Covering radius 1 is verified, not assumed.
/// Supported m: 2..4 (n = 3, 7, 15).
Code hamming_code(int m);

/// 0 when `word` is a codeword, otherwise the unique 1-based position whose
/// flip lands in the code. Requires a code built by hamming_code.
int syndrome_decode(const Code& code, const Configuration& word);

struct CoveringCheck {
    bool covered = false;
    std::optional<std::uint64_t> witness;  // an uncovered word when !covered
};

/// Exhaustive check that every word lies within distance r of a codeword.
CoveringCheck covering_check(const Code& code, int r);

/// covering_check, recording the radius on success.
bool verify_covering(Code& code, int r);

struct MinCoveringResult {
    int size = 0;
    Code witness;
    std::uint64_t nodes_explored = 0;
};

/// Smallest binary covering code of length n and radius r, by iterative
/// deepening from the ball-size lower bound with lexicographic branching on
/// the lowest-ranked uncovered word. Deterministic. Requires n <= 6, r = 1.
MinCoveringResult min_covering_code(int n, int r = 1);

// Code file format: header "n q", then one word per line as base-q digits.
void save_code(const Code& code, std::ostream& out);
Code load_code(std::istream& in);
Code load_code_file(const std::string& path);

}  // namespace hatlab
