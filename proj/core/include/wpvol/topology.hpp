#pragma once

// Combinatorics of separating multi-curves: boundary splits I_m, the
// pants-pairing families and their multiplicities.

#include <string>
#include <utility>
#include <vector>

#include "wpvol/exact_arith.hpp"

namespace wpvol {

/// Split of S_{g,n} along k curves into S_{g1,n1} and S_{g2,n2}, where the
/// smaller piece has Euler size m = 2 g1 - 2 + n1.
struct SplitPair {
    int g1 = 0, n1 = 0, g2 = 0, n2 = 0;

    /// k = (n1 + n2 - n) / 2 for the ambient puncture count n.
    int k(int n) const noexcept { return (n1 + n2 - n) / 2; }
    int m() const noexcept { return 2 * g1 - 2 + n1; }

    /// "(g1,n1|g2,n2|k)".
    std::string str(int n) const;

    friend auto operator<=>(const SplitPair&, const SplitPair&) = default;
};

/// k disjoint unordered pairs {i, j} of punctures, 1-based.
struct PantsPairing {
    std::vector<std::pair<int, int>> pairs;

    /// All 2k indices distinct and inside [1, n].
    bool valid(int n) const;
};

/// True when `split` satisfies the membership conditions of I_m for (g, n).
bool in_split_set(const SplitPair& split, int m, int g, int n);

/// All elements of I_m for (g, n), ordered by (g1, n1, g2, n2). Requires
/// chi = 2g - 2 + n >= 2 and 1 <= m <= chi / 2; throws std::out_of_range.
std::vector<SplitPair> enumerate_splits(int m, int g, int n);

/// n! / (2^k (n - 2k)!): ways to choose k ordered disjoint unordered pairs.
BigInt pairing_multiplicity(int n, int k);

/// C(n, n1 - k): puncture assignments for a split.
BigInt split_type_count(int n, int n1, int k);

/// max_{0 <= i <= m + 1} C(n, i).
BigInt split_weight(int m, int n);

}  // namespace wpvol
