#include <algorithm>
#include <cstring>
#include <limits>
#include <string>
#include <unordered_map>

#include "lecf/errors.hpp"
#include "lecf/poset.hpp"

namespace lecf {

namespace {

// An order ideal meets every chain of the cover in a prefix, so it is the
// vector of prefix lengths. Element v (at chain c, position i) may be added
// to ideal I iff I[c] == i and I[k] >= need[v][k] for every chain k.
struct IdealLayout {
    std::vector<std::vector<Element>> chains;
    std::vector<std::uint32_t> need; // n x w, row-major
    std::size_t width = 0;

    explicit IdealLayout(const Poset& p) : chains(chain_decomposition(p)), width(chains.size()) {
        const std::size_t n = p.size();
        std::vector<std::uint32_t> chain_of(n);
        std::vector<std::uint32_t> pos_of(n);
        for (std::uint32_t c = 0; c < width; ++c) {
            for (std::uint32_t i = 0; i < chains[c].size(); ++i) {
                chain_of[chains[c][i]] = c;
                pos_of[chains[c][i]] = i;
            }
        }
        need.assign(n * width, 0);
        for (Element v = 0; v < n; ++v) {
            const auto& below = p.below(v);
            for (auto u = below.find_first(); u != ElementSet::npos; u = below.find_next(u)) {
                auto& slot = need[v * width + chain_of[u]];
                slot = std::max(slot, pos_of[u] + 1);
            }
        }
    }

    bool addable(Element v, const std::vector<std::uint32_t>& digits) const {
        const std::uint32_t* row = &need[v * width];
        for (std::size_t k = 0; k < width; ++k) {
            if (digits[k] < row[k]) {
                return false;
            }
        }
        return true;
    }
};

// Ideals packed into one integer with mixed radix (|chain_k| + 1).
struct PackedCodec {
    std::vector<std::uint64_t> stride;
    std::vector<std::uint64_t> radix;

    using Key = std::uint64_t;

    Key empty() const { return 0; }
    void decode(Key key, std::vector<std::uint32_t>& digits) const {
        for (std::size_t k = 0; k < radix.size(); ++k) {
            digits[k] = static_cast<std::uint32_t>(key / stride[k] % radix[k]);
        }
    }
    Key advance(Key key, std::size_t k) const { return key + stride[k]; }
};

// Fallback when the packed space overflows 64 bits: digits as raw bytes.
struct StringCodec {
    std::size_t width;

    using Key = std::string;

    Key empty() const { return Key(width * sizeof(std::uint32_t), '\0'); }
    void decode(const Key& key, std::vector<std::uint32_t>& digits) const {
        for (std::size_t k = 0; k < width; ++k) {
            std::memcpy(&digits[k], key.data() + k * sizeof(std::uint32_t), sizeof(std::uint32_t));
        }
    }
    Key advance(const Key& key, std::size_t k) const {
        Key out = key;
        std::uint32_t d;
        std::memcpy(&d, out.data() + k * sizeof(std::uint32_t), sizeof(d));
        ++d;
        std::memcpy(out.data() + k * sizeof(std::uint32_t), &d, sizeof(d));
        return out;
    }
};

template <typename Codec>
CountResult run_levels(const Poset& p, const IdealLayout& layout, const Codec& codec, const CountOptions& options) {
    using Key = typename Codec::Key;
    const std::size_t n = p.size();
    const std::size_t w = layout.width;

    std::vector<Key> keys{codec.empty()};
    std::vector<BigCount> counts{BigCount(1)};
    std::uint64_t visited = 1;
    std::vector<std::uint32_t> digits(w);

    for (std::size_t level = 0; level < n; ++level) {
        std::unordered_map<Key, std::size_t> index;
        std::vector<Key> next_keys;
        std::vector<BigCount> next_counts;
        for (std::size_t i = 0; i < keys.size(); ++i) {
            codec.decode(keys[i], digits);
            for (std::size_t k = 0; k < w; ++k) {
                if (digits[k] == layout.chains[k].size()) {
                    continue;
                }
                Element v = layout.chains[k][digits[k]];
                if (!layout.addable(v, digits)) {
                    continue;
                }
                Key next = codec.advance(keys[i], k);
                auto [it, inserted] = index.try_emplace(next, next_keys.size());
                if (inserted) {
                    next_keys.push_back(std::move(next));
                    next_counts.push_back(counts[i]);
                    if (++visited > options.ideal_cap) {
                        throw ResourceError("order-ideal count exceeded the cap of " +
                                            std::to_string(options.ideal_cap));
                    }
                } else {
                    next_counts[it->second] += counts[i];
                }
            }
        }
        keys = std::move(next_keys);
        counts = std::move(next_counts);
    }
    return {counts.front(), visited};
}

} // namespace

CountResult count_le_detailed(const Poset& p, const CountOptions& options) {
    if (p.empty()) {
        return {BigCount(1), 1};
    }
    IdealLayout layout(p);
    PackedCodec packed;
    std::uint64_t total = 1;
    bool fits = true;
    for (const auto& c : layout.chains) {
        std::uint64_t r = c.size() + 1;
        packed.stride.push_back(total);
        packed.radix.push_back(r);
        if (total > std::numeric_limits<std::uint64_t>::max() / r) {
            fits = false;
            break;
        }
        total *= r;
    }
    if (fits) {
        return run_levels(p, layout, packed, options);
    }
    return run_levels(p, layout, StringCodec{layout.width}, options);
}

BigCount count_le(const Poset& p, const CountOptions& options) {
    return count_le_detailed(p, options).extensions;
}

BigCount count_le_bruteforce(const Poset& p) {
    const std::size_t n = p.size();
    if (n > kBruteforceLimit) {
        throw DomainError("brute-force counting is limited to " + std::to_string(kBruteforceLimit) +
                          " elements, got " + std::to_string(n));
    }
    std::vector<std::vector<Element>> out(n);
    std::vector<int> indegree(n, 0);
    for (const auto& [u, v] : p.covers()) {
        out[u].push_back(v);
        ++indegree[v];
    }
    std::vector<char> placed(n, 0);
    std::uint64_t total = 0;
    auto place = [&](auto&& self, std::size_t depth) -> void {
        if (depth == n) {
            ++total;
            return;
        }
        for (Element v = 0; v < n; ++v) {
            if (placed[v] || indegree[v] != 0) {
                continue;
            }
            placed[v] = 1;
            for (Element w : out[v]) {
                --indegree[w];
            }
            self(self, depth + 1);
            for (Element w : out[v]) {
                ++indegree[w];
            }
            placed[v] = 0;
        }
    };
    place(place, 0);
    return BigCount(static_cast<unsigned long>(total));
}

Rational rho(const Poset& p, Element x, const CountOptions& options) {
    BigCount whole = count_le(p, options);
    BigCount rest = count_le(remove(p, x).poset, options);
    return make_rational(whole, rest);
}

} // namespace lecf
