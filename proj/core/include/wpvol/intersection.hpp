#pragma once

// Memoized exact evaluation of the intersection brackets
// [tau_{d_1} ... tau_{d_n}]_{g,n} through Mirzakhani's recursion, with a
// persistent text cache.

#include <cstddef>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wpvol/errors.hpp"
#include "wpvol/exact_arith.hpp"

namespace wpvol {

/// A surface type (g, n): genus g with n boundary components or cusps.
struct Signature {
    int g = 0;
    int n = 0;

    constexpr int euler() const noexcept { return 2 * g - 2 + n; }
    /// Complex dimension 3g - 3 + n of the moduli space.
    constexpr int dim() const noexcept { return 3 * g - 3 + n; }
    constexpr bool stable() const noexcept { return g >= 0 && n >= 0 && euler() > 0; }

    friend constexpr auto operator<=>(const Signature&, const Signature&) = default;
};

/// Canonical identifier of a bracket: genus plus the multiset of tau indices,
/// stored sorted in descending order.
class BracketKey {
public:
    BracketKey() = default;
    /// Throws std::invalid_argument on negative indices.
    BracketKey(int g, std::span<const int> d);

    int g() const noexcept { return g_; }
    int n() const noexcept { return static_cast<int>(d_.size()); }
    Signature signature() const noexcept { return {g_, n()}; }
    const std::vector<int>& indices() const noexcept { return d_; }
    int degree() const noexcept { return degree_; }
    /// d_0 = 3g - 3 + n - |d|; the bracket has pi-degree 2 d_0.
    int codegree() const noexcept { return signature().dim() - degree_; }

    /// "v1:c1,v2:c2,..." with values descending; empty string for n = 0.
    std::string multiset_str() const;
    static BracketKey parse(int g, std::string_view multiset);

    friend bool operator==(const BracketKey& a, const BracketKey& b) noexcept {
        return a.g_ == b.g_ && a.d_ == b.d_;
    }
    /// Orders by (g, n, indices).
    friend bool operator<(const BracketKey& a, const BracketKey& b) noexcept;

    std::size_t hash() const noexcept;

private:
    int g_ = 0;
    std::vector<int> d_;
    int degree_ = 0;
};

struct BracketKeyHash {
    std::size_t operator()(const BracketKey& k) const noexcept { return k.hash(); }
};

/// Thread-safe memo table for brackets. Insertion is insert-if-absent; every
/// stored value is checked for homogeneity (pi-degree 2 d_0).
class BracketCache {
public:
    static constexpr const char* kHeader = "wpbracket v1";

    std::optional<PiScalar> find(const BracketKey& key) const;
    /// Returns false when the key was already present (value left unchanged).
    bool insert(const BracketKey& key, const PiScalar& value);
    std::size_t size() const;
    void clear();

    /// All entries ordered by key.
    std::vector<std::pair<BracketKey, PiScalar>> entries() const;

    /// Writes the cache file; returns the number of entries written.
    std::size_t save(const std::filesystem::path& path) const;
    /// Merges a cache file into this cache; returns the number of entries read.
    /// Throws ParseError on version mismatch or malformed lines.
    std::size_t load(const std::filesystem::path& path);

private:
    static constexpr std::size_t kShards = 64;
    struct Shard {
        mutable std::shared_mutex mutex;
        std::unordered_map<BracketKey, PiScalar, BracketKeyHash> map;
    };
    Shard& shard_for(const BracketKey& key) const { return shards_[key.hash() % kShards]; }
    mutable Shard shards_[kShards];
};

/// Evaluates brackets and owns the memo cache. bracket() is pure; concurrent
/// calls are safe and may duplicate work on the same key.
class BracketEngine {
public:
    /// `max_dim` bounds 3g - 3 + n of any signature the engine will evaluate.
    explicit BracketEngine(std::optional<int> max_dim = std::nullopt) : max_dim_(max_dim) {}

    BracketEngine(const BracketEngine&) = delete;
    BracketEngine& operator=(const BracketEngine&) = delete;

    /// [prod tau_{d_i}]_{g,n}. Zero when |d| > 3g - 3 + n.
    /// Throws UnstableSignature, BudgetExceeded, or std::invalid_argument.
    PiScalar bracket(int g, std::span<const int> d);
    PiScalar bracket(int g, std::initializer_list<int> d) {
        return bracket(g, std::span<const int>(d.begin(), d.size()));
    }
    PiScalar bracket(const BracketKey& key);

    /// One step of the recursion with an arbitrary distinguished index,
    /// using the memoized values for every sub-bracket. Agrees with bracket()
    /// for every choice of pivot.
    PiScalar expand_with_pivot(int g, std::span<const int> d, std::size_t pivot);

    /// c_m(g, n) = [tau_m tau_0^n]_{g,n+1} / V_{g,n+1}; requires 0 <= m <= 3g - 2 + n.
    PiScalar c_m(int g, int n, int m);

    /// Computes every bracket on every stable signature with 3g - 3 + n <= budget,
    /// processing Euler-characteristic levels in order and distributing the
    /// signatures of a level over `threads` workers.
    void warm(int budget, unsigned threads = 1);

    std::optional<int> max_dim() const noexcept { return max_dim_; }
    void set_max_dim(std::optional<int> d) noexcept { max_dim_ = d; }

    BracketCache& cache() noexcept { return cache_; }
    const BracketCache& cache() const noexcept { return cache_; }

private:
    PiScalar compute(const BracketKey& key);
    PiScalar recurse(int g, const std::vector<int>& d, std::size_t pivot);
    PiScalar dilaton_closed(int g);
    void check_budget(Signature s) const;

    std::optional<int> max_dim_;
    BracketCache cache_;
};

/// Every multiset of `n` non-negative integers with sum <= `max_sum`, each sorted
/// descending. Order: by sum, then lexicographically descending.
std::vector<std::vector<int>> multisets_up_to(int n, int max_sum);

}  // namespace wpvol
