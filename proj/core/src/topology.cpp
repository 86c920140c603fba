#include "wpvol/topology.hpp"

#include <algorithm>
#include <stdexcept>

namespace wpvol {

std::string SplitPair::str(int n) const {
    return "(" + std::to_string(g1) + "," + std::to_string(n1) + "|" + std::to_string(g2) + "," +
           std::to_string(n2) + "|" + std::to_string(k(n)) + ")";
}

bool PantsPairing::valid(int n) const {
    std::vector<int> seen;
    for (auto [i, j] : pairs) {
        if (i < 1 || j < 1 || i > n || j > n) return false;
        seen.push_back(i);
        seen.push_back(j);
    }
    std::sort(seen.begin(), seen.end());
    return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

bool in_split_set(const SplitPair& s, int m, int g, int n) {
    const int chi = 2 * g - 2 + n;
    if (s.g1 < 0 || s.g2 < 0 || s.n1 < 1 || s.n2 < 1) return false;
    if (s.m() != m || m < 1) return false;
    const int m2 = 2 * s.g2 - 2 + s.n2;
    if (m + m2 != chi || m > m2) return false;
    if (s.n2 < n - s.n1 || s.n2 > n + s.n1) return false;
    if ((s.n1 + s.n2 - n) % 2 != 0 || s.k(n) < 1) return false;
    return s.g1 + s.g2 + s.k(n) - 1 == g;
}

std::vector<SplitPair> enumerate_splits(int m, int g, int n) {
    const int chi = 2 * g - 2 + n;
    if (g < 0 || n < 0 || chi < 2) throw std::out_of_range("enumerate_splits: need 2g - 2 + n >= 2");
    if (m < 1 || m > chi / 2)
        throw std::out_of_range("enumerate_splits: m=" + std::to_string(m) + " outside [1, " + std::to_string(chi / 2) +
                                "]");
    std::vector<SplitPair> out;
    for (int n1 = 1; n1 <= m + 2; ++n1) {
        if ((m + 2 - n1) % 2 != 0) continue;
        const int g1 = (m + 2 - n1) / 2;
        const int m2 = chi - m;
        for (int n2 = std::max(1, n - n1); n2 <= n + n1; ++n2) {
            if ((m2 + 2 - n2) % 2 != 0 || n2 > m2 + 2) continue;
            SplitPair s{g1, n1, (m2 + 2 - n2) / 2, n2};
            if (in_split_set(s, m, g, n)) out.push_back(s);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

BigInt pairing_multiplicity(int n, int k) {
    if (k < 1 || n < 2 * k)
        throw std::invalid_argument("pairing_multiplicity: need n >= 2k >= 2 (n=" + std::to_string(n) +
                                    ", k=" + std::to_string(k) + ")");
    return factorial(static_cast<unsigned>(n)) /
           (factorial(static_cast<unsigned>(n - 2 * k)) * (BigInt(1) << k));
}

BigInt split_type_count(int n, int n1, int k) {
    const int i = n1 - k;
    if (n < 0 || i < 0 || i > n)
        throw std::out_of_range("split_type_count: need 0 <= n1 - k <= n");
    return binomial(n, i);
}

BigInt split_weight(int m, int n) {
    if (m < 0 || n < 0) throw std::out_of_range("split_weight: negative argument");
    BigInt best = 0;
    for (int i = 0; i <= std::min(m + 1, n); ++i) best = std::max(best, binomial(n, i));
    return best;
}

}  // namespace wpvol
