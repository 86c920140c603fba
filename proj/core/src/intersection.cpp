#include "wpvol/intersection.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <thread>

namespace wpvol {

// ---------------------------------------------------------------- BracketKey

BracketKey::BracketKey(int g, std::span<const int> d) : g_(g), d_(d.begin(), d.end()) {
    if (g < 0) throw std::invalid_argument("negative genus");
    for (int v : d_)
        if (v < 0) throw std::invalid_argument("negative tau index " + std::to_string(v));
    std::sort(d_.begin(), d_.end(), std::greater<>());
    degree_ = std::accumulate(d_.begin(), d_.end(), 0);
}

std::string BracketKey::multiset_str() const {
    std::string out;
    for (std::size_t i = 0; i < d_.size();) {
        std::size_t j = i;
        while (j < d_.size() && d_[j] == d_[i]) ++j;
        if (!out.empty()) out += ',';
        out += std::to_string(d_[i]) + ":" + std::to_string(j - i);
        i = j;
    }
    return out;
}

BracketKey BracketKey::parse(int g, std::string_view text) {
    std::vector<int> d;
    int previous = -1;
    std::size_t start = 0;
    while (start < text.size()) {
        auto comma = text.find(',', start);
        if (comma == std::string_view::npos) comma = text.size();
        const auto pair = text.substr(start, comma - start);
        const auto colon = pair.find(':');
        if (colon == std::string_view::npos) throw std::invalid_argument("expected value:count, got '" + std::string(pair) + "'");
        int value = 0, count = 0;
        const auto vs = pair.substr(0, colon), cs = pair.substr(colon + 1);
        auto r1 = std::from_chars(vs.data(), vs.data() + vs.size(), value);
        auto r2 = std::from_chars(cs.data(), cs.data() + cs.size(), count);
        if (vs.empty() || cs.empty() || r1.ec != std::errc{} || r1.ptr != vs.data() + vs.size() ||
            r2.ec != std::errc{} || r2.ptr != cs.data() + cs.size())
            throw std::invalid_argument("malformed value:count '" + std::string(pair) + "'");
        if (value < 0 || count <= 0) throw std::invalid_argument("invalid value:count '" + std::string(pair) + "'");
        if (previous >= 0 && value >= previous) throw std::invalid_argument("multiset values must be strictly descending");
        previous = value;
        d.insert(d.end(), static_cast<std::size_t>(count), value);
        start = comma + 1;
    }
    return BracketKey(g, d);
}

bool operator<(const BracketKey& a, const BracketKey& b) noexcept {
    if (a.g_ != b.g_) return a.g_ < b.g_;
    if (a.d_.size() != b.d_.size()) return a.d_.size() < b.d_.size();
    return a.d_ < b.d_;
}

std::size_t BracketKey::hash() const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ULL;
    };
    mix(static_cast<std::uint64_t>(g_));
    mix(d_.size());
    for (int v : d_) mix(static_cast<std::uint64_t>(v));
    return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------- BracketCache

std::optional<PiScalar> BracketCache::find(const BracketKey& key) const {
    auto& s = shard_for(key);
    std::shared_lock lock(s.mutex);
    auto it = s.map.find(key);
    if (it == s.map.end()) return std::nullopt;
    return it->second;
}

bool BracketCache::insert(const BracketKey& key, const PiScalar& value) {
    if (!value.is_zero() && value.pideg() != 2 * key.codegree())
        throw std::logic_error("inhomogeneous bracket g=" + std::to_string(key.g()) + " d=" + key.multiset_str() +
                               ": pi^" + std::to_string(value.pideg()) + ", expected pi^" +
                               std::to_string(2 * key.codegree()));
    auto& s = shard_for(key);
    std::unique_lock lock(s.mutex);
    return s.map.try_emplace(key, value).second;
}

std::size_t BracketCache::size() const {
    std::size_t total = 0;
    for (auto& s : shards_) {
        std::shared_lock lock(s.mutex);
        total += s.map.size();
    }
    return total;
}

void BracketCache::clear() {
    for (auto& s : shards_) {
        std::unique_lock lock(s.mutex);
        s.map.clear();
    }
}

std::vector<std::pair<BracketKey, PiScalar>> BracketCache::entries() const {
    std::vector<std::pair<BracketKey, PiScalar>> out;
    for (auto& s : shards_) {
        std::shared_lock lock(s.mutex);
        out.insert(out.end(), s.map.begin(), s.map.end());
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

std::size_t BracketCache::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << kHeader << '\n';
    const auto all = entries();
    for (const auto& [key, value] : all) out << key.g() << '|' << key.multiset_str() << '|' << value.str() << '\n';
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
    return all.size();
}

std::size_t BracketCache::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
    std::string line;
    if (!std::getline(in, line)) throw ParseError(1, "missing header");
    if (line != kHeader) throw ParseError(1, "version mismatch: expected '" + std::string(kHeader) + "', got '" + line + "'");
    std::size_t lineno = 1, count = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto p1 = line.find('|');
        const auto p2 = p1 == std::string::npos ? std::string::npos : line.find('|', p1 + 1);
        if (p2 == std::string::npos || line.find('|', p2 + 1) != std::string::npos)
            throw ParseError(lineno, "expected 'g|multiset|value'");
        try {
            const std::string_view view(line);
            const auto gs = view.substr(0, p1);
            int g = -1;
            auto r = std::from_chars(gs.data(), gs.data() + gs.size(), g);
            if (gs.empty() || r.ec != std::errc{} || r.ptr != gs.data() + gs.size() || g < 0)
                throw std::invalid_argument("malformed genus '" + std::string(gs) + "'");
            const BracketKey key = BracketKey::parse(g, view.substr(p1 + 1, p2 - p1 - 1));
            const PiScalar value = PiScalar::parse(view.substr(p2 + 1));
            if (!key.signature().stable()) throw std::invalid_argument("unstable signature");
            insert(key, value);
        } catch (const std::exception& e) {
            throw ParseError(lineno, e.what());
        }
        ++count;
    }
    return count;
}

// ---------------------------------------------------------------- BracketEngine

namespace {

std::vector<int> with_index(std::vector<int> base, int extra) {
    base.push_back(extra);
    return base;
}

std::vector<int> with_indices(std::vector<int> base, int a, int b) {
    base.push_back(a);
    base.push_back(b);
    return base;
}

}  // namespace

void BracketEngine::check_budget(Signature s) const {
    if (max_dim_ && s.dim() > *max_dim_) throw BudgetExceeded(s.g, s.n, *max_dim_);
}

PiScalar BracketEngine::bracket(int g, std::span<const int> d) { return bracket(BracketKey(g, d)); }

PiScalar BracketEngine::bracket(const BracketKey& key) {
    const Signature s = key.signature();
    if (!s.stable()) throw UnstableSignature(s.g, s.n);
    check_budget(s);
    return compute(key);
}

PiScalar BracketEngine::compute(const BracketKey& key) {
    const Signature s = key.signature();
    if (key.degree() > s.dim()) return {};
    if (auto hit = cache_.find(key)) return *hit;

    PiScalar value;
    const auto& d = key.indices();
    if (s.g == 0 && s.n == 3) {
        value = PiScalar(Rat(1));  // only d = (0,0,0) survives the degree filter
    } else if (s.g == 1 && s.n == 1) {
        value = d[0] == 0 ? PiScalar(Rat(1, 12), 2) : PiScalar(Rat(1, 2));
    } else if (s.n == 0) {
        value = dilaton_closed(s.g);
    } else {
        value = recurse(s.g, d, 0);  // d is sorted, so index 0 holds max(d)
    }
    cache_.insert(key, value);
    return value;
}

PiScalar BracketEngine::dilaton_closed(int g) {
    // (2g - 2) V_{g,0} = 1/2 sum_{m>=1} (-1)^{m-1} b_m [tau_m]_{g,1}
    PiScalar sum;
    for (int m = 1; m <= 3 * g - 2; ++m) {
        const int one[] = {m};
        PiScalar term = coeff_b(static_cast<unsigned>(m)) * compute(BracketKey(g, one));
        sum += (m % 2 == 1) ? term : -term;
    }
    return sum * PiScalar(Rat(1, 2 * (2 * g - 2)));
}

PiScalar BracketEngine::expand_with_pivot(int g, std::span<const int> d, std::size_t pivot) {
    if (pivot >= d.size()) throw std::out_of_range("pivot index out of range");
    const BracketKey key(g, d);
    const Signature s = key.signature();
    if (!s.stable()) throw UnstableSignature(s.g, s.n);
    check_budget(s);
    if ((s.g == 0 && s.n == 3) || (s.g == 1 && s.n == 1) || key.degree() > s.dim()) return compute(key);
    return recurse(g, std::vector<int>(d.begin(), d.end()), pivot);
}

PiScalar BracketEngine::recurse(int g, const std::vector<int>& d, std::size_t pivot) {
    const int n = static_cast<int>(d.size());
    const int total_degree = std::accumulate(d.begin(), d.end(), 0);
    const int d0 = Signature{g, n}.dim() - total_degree;
    const int d1 = d[pivot];

    std::vector<int> rest;
    rest.reserve(d.size() - 1);
    for (std::size_t i = 0; i < d.size(); ++i)
        if (i != pivot) rest.push_back(d[i]);
    std::sort(rest.begin(), rest.end(), std::greater<>());

    std::vector<int> values, counts;
    for (int v : rest) {
        if (!values.empty() && values.back() == v) {
            ++counts.back();
        } else {
            values.push_back(v);
            counts.push_back(1);
        }
    }

    PiScalar total;

    // A-term: merge tau_{d_1} with each other tau_{d_j}; equal d_j collapse to a multiplicity.
    if (Signature{g, n - 1}.stable()) {
        for (std::size_t t = 0; t < values.size(); ++t) {
            const int v = values[t];
            std::vector<int> sub = rest;
            sub.erase(std::find(sub.begin(), sub.end(), v));
            PiScalar inner;
            for (int L = 0; L <= d0; ++L) {
                const int idx = d1 + v + L - 1;
                if (idx < 0) continue;
                const PiScalar b = compute(BracketKey(g, with_index(sub, idx)));
                if (!b.is_zero()) inner += coeff_a(static_cast<unsigned>(L)) * b;
            }
            total += inner * PiScalar(Rat(8L * (2 * v + 1) * counts[t]));
        }
    }

    // B-term: cut along a non-separating curve, landing on (g-1, n+1).
    if (g >= 1 && Signature{g - 1, n + 1}.stable()) {
        for (int L = 0; L <= d0; ++L) {
            const int s = L + d1 - 2;
            if (s < 0) continue;
            PiScalar inner;
            for (int k1 = 0; 2 * k1 <= s; ++k1) {
                const int k2 = s - k1;
                const PiScalar b = compute(BracketKey(g - 1, with_indices(rest, k1, k2)));
                if (b.is_zero()) continue;
                inner += (k1 == k2) ? b : b * PiScalar(Rat(2));
            }
            if (!inner.is_zero()) total += PiScalar(Rat(16)) * coeff_a(static_cast<unsigned>(L)) * inner;
        }
    }

    // C-term: separating cut. Sub-multisets I of `rest` are enumerated by how many
    // copies of each distinct value go to I, weighted by prod C(count, taken).
    if (d0 + d1 >= 2) {
        std::vector<PiScalar> per_L(static_cast<std::size_t>(d0 + 1));
        std::vector<int> take(values.size(), 0);
        while (true) {
            std::vector<int> I, J;
            BigInt weight = 1;
            for (std::size_t t = 0; t < values.size(); ++t) {
                I.insert(I.end(), static_cast<std::size_t>(take[t]), values[t]);
                J.insert(J.end(), static_cast<std::size_t>(counts[t] - take[t]), values[t]);
                weight *= binomial(counts[t], take[t]);
            }
            const int deg_I = std::accumulate(I.begin(), I.end(), 0);
            const int deg_J = std::accumulate(J.begin(), J.end(), 0);
            const PiScalar w{Rat(weight, BigInt(1))};
            for (int gp = 0; gp <= g; ++gp) {
                const Signature s1{gp, static_cast<int>(I.size()) + 1};
                const Signature s2{g - gp, static_cast<int>(J.size()) + 1};
                if (!s1.stable() || !s2.stable()) continue;
                const int room1 = s1.dim() - deg_I, room2 = s2.dim() - deg_J;
                if (room1 < 0 || room2 < 0) continue;
                for (int L = 0; L <= d0; ++L) {
                    const int s = L + d1 - 2;
                    if (s < 0) continue;
                    PiScalar inner;
                    for (int k1 = std::max(0, s - room2); k1 <= std::min(s, room1); ++k1) {
                        const PiScalar b1 = compute(BracketKey(gp, with_index(I, k1)));
                        if (b1.is_zero()) continue;
                        const PiScalar b2 = compute(BracketKey(g - gp, with_index(J, s - k1)));
                        if (b2.is_zero()) continue;
                        inner += b1 * b2;
                    }
                    if (!inner.is_zero()) per_L[static_cast<std::size_t>(L)] += w * inner;
                }
            }
            std::size_t t = 0;
            while (t < take.size() && take[t] == counts[t]) take[t++] = 0;
            if (t == take.size()) break;
            ++take[t];
        }
        for (int L = 0; L <= d0; ++L)
            if (!per_L[static_cast<std::size_t>(L)].is_zero())
                total += PiScalar(Rat(16)) * coeff_a(static_cast<unsigned>(L)) * per_L[static_cast<std::size_t>(L)];
    }

    if (!total.is_zero() && total.pideg() != 2 * d0)
        throw std::logic_error("recursion produced pi^" + std::to_string(total.pideg()) + ", expected pi^" +
                               std::to_string(2 * d0));
    return total;
}

PiScalar BracketEngine::c_m(int g, int n, int m) {
    const Signature s{g, n + 1};
    if (!s.stable()) throw UnstableSignature(g, n + 1);
    if (m < 0 || m > 3 * g - 2 + n) throw std::out_of_range("c_m: m=" + std::to_string(m) + " outside [0, " +
                                                            std::to_string(3 * g - 2 + n) + "]");
    std::vector<int> d(static_cast<std::size_t>(n + 1), 0);
    const PiScalar volume = bracket(g, d);
    d[0] = m;
    return bracket(g, d) / volume;
}

void BracketEngine::warm(int budget, unsigned threads) {
    std::map<int, std::vector<Signature>> levels;
    for (int g = 0; 3 * g - 3 <= budget; ++g)
        for (int n = 0; 3 * g - 3 + n <= budget; ++n)
            if (Signature s{g, n}; s.stable()) levels[s.n == 0 ? 1 << 20 : s.euler()].push_back(s);

    for (const auto& [level, sigs] : levels) {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next++; i < sigs.size(); i = next++) {
                const Signature s = sigs[i];
                for (const auto& d : multisets_up_to(s.n, s.dim())) compute(BracketKey(s.g, d));
            }
        };
        const unsigned k = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(sigs.size())));
        if (k == 1) {
            worker();
        } else {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < k; ++t) pool.emplace_back(worker);
        }
    }
}

std::vector<std::vector<int>> multisets_up_to(int n, int max_sum) {
    std::vector<std::vector<int>> out;
    if (n < 0 || max_sum < 0) return out;
    std::vector<int> cur;
    // Non-increasing sequences of length n with sum exactly `target`.
    std::function<void(int, int, int)> rec = [&](int remaining, int slots, int cap) {
        if (slots == 0) {
            if (remaining == 0) out.push_back(cur);
            return;
        }
        for (int v = std::min(cap, remaining); v >= 0; --v) {
            if (static_cast<long>(v) * slots < remaining) break;
            cur.push_back(v);
            rec(remaining - v, slots - 1, v);
            cur.pop_back();
        }
    };
    for (int target = 0; target <= max_sum; ++target) rec(target, n, target);
    return out;
}

}  // namespace wpvol
