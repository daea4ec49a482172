#include "hatlab/codes.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

namespace hatlab {

bool Code::contains(std::uint64_t word) const {
    return std::binary_search(words.begin(), words.end(), word);
}

int hamming_distance(std::uint64_t a, std::uint64_t b, int n, int q) {
    if (q == 2) return __builtin_popcountll(a ^ b);
    int d = 0;
    for (int i = 0; i < n; ++i) {
        if (a % static_cast<std::uint64_t>(q) != b % static_cast<std::uint64_t>(q)) ++d;
        a /= static_cast<std::uint64_t>(q);
        b /= static_cast<std::uint64_t>(q);
    }
    return d;
}

namespace {

// Syndrome of a binary word under the parity-check matrix whose column for
// 1-based position i is the binary representation of i. Equals the XOR of
// the positions of the set entries.
int hamming_syndrome(std::uint64_t word, int n) {
    int s = 0;
    for (int pos = 1; pos <= n; ++pos) {
        // Position pos (player pos) sits at bit n - pos of the rank.
        if ((word >> (n - pos)) & 1u) s ^= pos;
    }
    return s;
}

}  // namespace

Code hamming_code(int m) {
    if (m < 2 || m > 4) throw DomainError("hamming_code supports m in 2..4");
    const int n = (1 << m) - 1;

    Code code;
    code.n = n;
    code.q = 2;
    code.hamming_m = m;
    const std::uint64_t space = code.space_size();
    for (std::uint64_t w = 0; w < space; ++w)
        if (hamming_syndrome(w, n) == 0) code.words.push_back(w);

    if (code.words.size() != (std::uint64_t{1} << (n - m)))
        throw Error("hamming construction produced a wrong codeword count");
    if (!verify_covering(code, 1)) throw Error("hamming code failed covering verification");
    return code;
}

int syndrome_decode(const Code& code, const Configuration& word) {
    if (!code.hamming_m) throw DomainError("syndrome decoding requires a Hamming code");
    if (static_cast<int>(word.size()) != code.n) throw DomainError("word length != n");
    return hamming_syndrome(rank_configuration(word, 2), code.n);
}

CoveringCheck covering_check(const Code& code, int r) {
    const std::uint64_t space = code.space_size();
    for (std::uint64_t w = 0; w < space; ++w) {
        bool near = false;
        for (std::uint64_t c : code.words) {
            if (hamming_distance(w, c, code.n, code.q) <= r) {
                near = true;
                break;
            }
        }
        if (!near) return CoveringCheck{false, w};
    }
    return CoveringCheck{true, std::nullopt};
}

bool verify_covering(Code& code, int r) {
    CoveringCheck check = covering_check(code, r);
    if (check.covered) code.radius = r;
    return check.covered;
}

// ---------------------------------------------------------------------------
// Minimal covering search (binary, radius 1, n <= 6)
// ---------------------------------------------------------------------------

namespace {

struct CoverSearch {
    int n = 0;
    std::uint64_t full = 0;               // all 2^n words as a bitmask
    std::vector<std::uint64_t> ball;      // ball[w] = w and its n neighbours
    std::uint64_t nodes = 0;

    std::vector<int> chosen;
    std::vector<int> best;

    // Covers word `u` by branching over candidates in ball(u, 1) in
    // increasing rank; each branch excludes the candidates already tried so
    // every code is visited exactly once. Returns true on first solution.
    bool extend(std::uint64_t covered, std::uint64_t excluded, int limit) {
        ++nodes;
        if (covered == full) {
            best = chosen;
            return true;
        }
        int remaining = limit - static_cast<int>(chosen.size());
        if (remaining <= 0) return false;
        std::uint64_t uncovered = full & ~covered;
        // Ceiling bound: each new word covers at most n+1 words.
        if (static_cast<std::uint64_t>(remaining) * static_cast<std::uint64_t>(n + 1) <
            static_cast<std::uint64_t>(__builtin_popcountll(uncovered)))
            return false;

        const int u = __builtin_ctzll(uncovered);  // lowest-ranked uncovered word
        std::uint64_t candidates = ball[static_cast<std::size_t>(u)] & ~excluded;
        while (candidates != 0) {
            const int w = __builtin_ctzll(candidates);
            candidates &= candidates - 1;
            excluded |= std::uint64_t{1} << w;
            chosen.push_back(w);
            if (extend(covered | ball[static_cast<std::size_t>(w)], excluded, limit)) return true;
            chosen.pop_back();
        }
        return false;
    }
};

}  // namespace

MinCoveringResult min_covering_code(int n, int r) {
    if (r != 1) throw DomainError("min_covering_code supports radius 1 only");
    if (n < 1) throw DomainError("length must be >= 1");
    if (n > 6) throw CapacityError("min_covering_code supports n <= 6");

    CoverSearch search;
    search.n = n;
    const int space = 1 << n;
    search.full = space == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << space) - 1;
    search.ball.resize(static_cast<std::size_t>(space));
    for (int w = 0; w < space; ++w) {
        std::uint64_t mask = std::uint64_t{1} << w;
        for (int bit = 0; bit < n; ++bit) mask |= std::uint64_t{1} << (w ^ (1 << bit));
        search.ball[static_cast<std::size_t>(w)] = mask;
    }

    const int lower = (space + n) / (n + 1);  // ceil(2^n / (n+1))
    for (int k = lower; k <= space; ++k) {
        search.chosen.clear();
        if (search.extend(0, 0, k)) {
            MinCoveringResult result;
            result.size = k;
            result.nodes_explored = search.nodes;
            result.witness.n = n;
            result.witness.q = 2;
            for (int w : search.best) result.witness.words.push_back(static_cast<std::uint64_t>(w));
            std::sort(result.witness.words.begin(), result.witness.words.end());
            if (!verify_covering(result.witness, 1))
                throw Error("covering search returned an invalid witness");
            return result;
        }
    }
    throw Error("covering search exhausted without a cover");  // unreachable: full space covers
}

// ---------------------------------------------------------------------------
// Code files
// ---------------------------------------------------------------------------

void save_code(const Code& code, std::ostream& out) {
    out << code.n << ' ' << code.q << '\n';
    for (std::uint64_t w : code.words)
        out << format_configuration(unrank_configuration(w, code.n, code.q), code.q) << '\n';
}

Code load_code(std::istream& in) {
    std::string line;
    int line_no = 0;
    Code code;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (!have_header) {
            std::istringstream fields(line);
            if (!(fields >> code.n >> code.q) || code.n < 1 || code.q < 2 || code.q > 10)
                throw FormatError("line " + std::to_string(line_no) + ": expected header \"n q\"");
            have_header = true;
            continue;
        }
        Configuration word;
        try {
            word = parse_configuration(line, code.n, code.q);
        } catch (const FormatError& e) {
            throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
        }
        code.words.push_back(rank_configuration(word, code.q));
    }
    if (!have_header) throw FormatError("empty code file");
    std::sort(code.words.begin(), code.words.end());
    if (std::adjacent_find(code.words.begin(), code.words.end()) != code.words.end())
        throw FormatError("duplicate codeword");
    return code;
}

Code load_code_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open code file: " + path);
    return load_code(in);
}

}  // namespace hatlab
