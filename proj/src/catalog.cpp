#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>
#include <string>
#include <tuple>

#include "lecf/errors.hpp"
#include "lecf/search.hpp"
#include "parallel.hpp"

namespace lecf {

namespace {

// Small posets as closure bitmasks: up[u] has bit v iff u < v.
struct Small {
    std::size_t n = 0;
    std::array<std::uint8_t, kMaxCatalogSize> up{};
};

Small to_small(const Poset& p) {
    if (p.size() > kMaxCatalogSize) {
        throw DomainError("canonical forms are limited to " + std::to_string(kMaxCatalogSize) + " elements");
    }
    Small s;
    s.n = p.size();
    for (const auto& [u, v] : p.relations()) {
        s.up[u] |= static_cast<std::uint8_t>(1u << v);
    }
    return s;
}

Poset from_key(std::size_t n, CanonicalKey key) {
    std::vector<Relation> rel;
    for (Element u = 0; u < n; ++u) {
        for (Element v = 0; v < n; ++v) {
            if (key >> (u * n + v) & 1u) {
                rel.emplace_back(u, v);
            }
        }
    }
    return Poset::from_relations(n, rel);
}

// Refined cells, each a list of elements, in invariant order.
std::vector<std::vector<Element>> refine(const Small& s) {
    const std::size_t n = s.n;
    std::array<std::uint8_t, kMaxCatalogSize> down{};
    for (Element u = 0; u < n; ++u) {
        for (Element v = 0; v < n; ++v) {
            if (s.up[u] >> v & 1u) {
                down[v] |= static_cast<std::uint8_t>(1u << u);
            }
        }
    }
    // Level: longest chain ending at v. Elements sorted by |down| are a
    // linear extension, so one pass suffices.
    std::vector<Element> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](Element a, Element b) { return __builtin_popcount(down[a]) < __builtin_popcount(down[b]); });
    std::vector<int> level(n, 0);
    for (Element v : order) {
        for (Element u = 0; u < n; ++u) {
            if (down[v] >> u & 1u) {
                level[v] = std::max(level[v], level[u] + 1);
            }
        }
    }

    using Signature = std::tuple<int, std::vector<int>, std::vector<int>>;
    std::vector<int> color(n);
    std::vector<Signature> sig(n);
    for (Element v = 0; v < n; ++v) {
        sig[v] = {level[v], {__builtin_popcount(down[v])}, {__builtin_popcount(s.up[v])}};
    }
    std::size_t classes = 0;
    for (;;) {
        std::vector<Signature> distinct = sig;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (Element v = 0; v < n; ++v) {
            color[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), sig[v]) - distinct.begin());
        }
        if (distinct.size() == classes) {
            break;
        }
        classes = distinct.size();
        for (Element v = 0; v < n; ++v) {
            std::vector<int> below, above;
            for (Element u = 0; u < n; ++u) {
                if (down[v] >> u & 1u) {
                    below.push_back(color[u]);
                }
                if (s.up[v] >> u & 1u) {
                    above.push_back(color[u]);
                }
            }
            std::sort(below.begin(), below.end());
            std::sort(above.begin(), above.end());
            sig[v] = {color[v], std::move(below), std::move(above)};
        }
    }
    std::vector<std::vector<Element>> cells(classes);
    for (Element v = 0; v < n; ++v) {
        cells[color[v]].push_back(v);
    }
    return cells;
}

struct Canonical {
    CanonicalKey key = 0;
    std::vector<Element> order; // order[i] = old id placed at position i
};

Canonical canonicalize(const Small& s) {
    const std::size_t n = s.n;
    auto cells = refine(s);
    Canonical best;
    bool have = false;
    std::vector<Element> order;
    for (auto& cell : cells) {
        order.insert(order.end(), cell.begin(), cell.end());
    }
    // Odometer over the permutations of every cell.
    for (auto& cell : cells) {
        std::sort(cell.begin(), cell.end());
    }
    for (;;) {
        std::size_t p = 0;
        for (const auto& cell : cells) {
            for (Element v : cell) {
                order[p++] = v;
            }
        }
        CanonicalKey key = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (s.up[order[i]] >> order[j] & 1u) {
                    key |= CanonicalKey{1} << (i * n + j);
                }
            }
        }
        if (!have || key < best.key) {
            best.key = key;
            best.order = order;
            have = true;
        }
        std::size_t c = 0;
        while (c < cells.size() && !std::next_permutation(cells[c].begin(), cells[c].end())) {
            ++c;
        }
        if (c == cells.size()) {
            break;
        }
    }
    return best;
}

} // namespace

CanonicalKey canonical_key(const Poset& p) {
    return canonicalize(to_small(p)).key;
}

Poset canonical_form(const Poset& p) {
    return from_key(p.size(), canonical_key(p));
}

bool isomorphic(const Poset& p, const Poset& q) {
    return p.size() == q.size() && canonical_key(p) == canonical_key(q);
}

PosetCatalog extend_catalog(const PosetCatalog& prev, unsigned threads) {
    const std::size_t n = prev.n;
    if (n + 1 > kMaxCatalogSize) {
        throw ResourceError("poset enumeration is limited to " + std::to_string(kMaxCatalogSize) + " elements");
    }
    std::vector<std::vector<CanonicalKey>> found(prev.posets.size());
    detail::parallel_for(prev.posets.size(), threads, [&](std::size_t i) {
        Small base = to_small(prev.posets[i]);
        std::array<std::uint8_t, kMaxCatalogSize> down{};
        for (Element u = 0; u < n; ++u) {
            for (Element v = 0; v < n; ++v) {
                if (base.up[u] >> v & 1u) {
                    down[v] |= static_cast<std::uint8_t>(1u << u);
                }
            }
        }
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            bool closed = true;
            for (Element v = 0; v < n && closed; ++v) {
                if ((mask >> v & 1u) && (down[v] & ~mask)) {
                    closed = false;
                }
            }
            if (!closed) {
                continue;
            }
            Small next = base;
            next.n = n + 1;
            for (Element v = 0; v < n; ++v) {
                if (mask >> v & 1u) {
                    next.up[v] |= static_cast<std::uint8_t>(1u << n);
                }
            }
            found[i].push_back(canonicalize(next).key);
        }
    });
    std::vector<CanonicalKey> keys;
    for (const auto& f : found) {
        keys.insert(keys.end(), f.begin(), f.end());
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    PosetCatalog out;
    out.n = n + 1;
    out.posets.reserve(keys.size());
    for (CanonicalKey k : keys) {
        out.posets.push_back(from_key(n + 1, k));
    }
    return out;
}

std::vector<PosetCatalog> enumerate_catalogs(std::size_t n, unsigned threads) {
    if (n > kMaxCatalogSize) {
        throw ResourceError("poset enumeration is limited to " + std::to_string(kMaxCatalogSize) + " elements");
    }
    std::vector<PosetCatalog> levels;
    levels.push_back({0, {Poset()}});
    for (std::size_t k = 1; k <= n; ++k) {
        levels.push_back(extend_catalog(levels.back(), threads));
    }
    return levels;
}

PosetCatalog enumerate_posets(std::size_t n, unsigned threads) {
    return std::move(enumerate_catalogs(n, threads).back());
}

void save_catalog(std::ostream& out, const PosetCatalog& catalog) {
    for (const auto& p : catalog.posets) {
        out << p.size();
        for (const auto& [u, v] : p.covers()) {
            out << ' ' << u << ',' << v;
        }
        out << '\n';
    }
}

std::vector<PosetCatalog> load_catalogs(std::istream& in) {
    std::map<std::size_t, PosetCatalog> by_size;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::istringstream fields(line);
        std::size_t n = 0;
        if (!(fields >> n) || n > kMaxCatalogSize) {
            throw DomainError("catalog line " + std::to_string(line_no) + ": bad element count");
        }
        std::vector<Relation> rel;
        std::string pair;
        while (fields >> pair) {
            auto comma = pair.find(',');
            if (comma == std::string::npos) {
                throw DomainError("catalog line " + std::to_string(line_no) + ": expected u,v but got '" + pair + "'");
            }
            try {
                rel.emplace_back(static_cast<Element>(std::stoul(pair.substr(0, comma))),
                                 static_cast<Element>(std::stoul(pair.substr(comma + 1))));
            } catch (const std::logic_error&) {
                throw DomainError("catalog line " + std::to_string(line_no) + ": bad pair '" + pair + "'");
            }
        }
        auto& cat = by_size[n];
        cat.n = n;
        cat.posets.push_back(Poset::from_relations(n, rel));
    }
    std::vector<PosetCatalog> out;
    for (auto& [n, cat] : by_size) {
        out.push_back(std::move(cat));
    }
    return out;
}

CountTable count_table(const std::vector<PosetCatalog>& catalogs, unsigned threads) {
    CountTable table;
    for (const auto& cat : catalogs) {
        if (table.level.size() <= cat.n) {
            table.level.resize(cat.n + 1);
        }
        std::vector<std::uint64_t> counts(cat.posets.size());
        detail::parallel_for(counts.size(), threads,
                             [&](std::size_t i) { counts[i] = to_u64(count_le(cat.posets[i])); });
        table.level[cat.n].insert(counts.begin(), counts.end());
    }
    return table;
}

std::set<std::uint64_t> t_set(const CountTable& table, std::size_t k) {
    if (k >= table.level.size()) {
        throw DomainError("T(" + std::to_string(k) + ") needs catalogs up to " + std::to_string(k) + " elements");
    }
    std::set<std::uint64_t> out;
    for (std::size_t i = 0; i <= k; ++i) {
        out.insert(table.level[i].begin(), table.level[i].end());
    }
    return out;
}

MuTable mu_table(const CountTable& table, std::uint64_t max_n, std::size_t k_max) {
    if (k_max >= table.level.size()) {
        throw DomainError("mu table needs catalogs up to " + std::to_string(k_max) + " elements");
    }
    MuTable mu{max_n, k_max, std::vector<std::optional<std::size_t>>(max_n + 1)};
    for (std::size_t k = 0; k <= k_max; ++k) {
        for (std::uint64_t e : table.level[k]) {
            if (e > max_n) {
                break;
            }
            if (!mu.mu[e]) {
                mu.mu[e] = k;
            }
        }
    }
    return mu;
}

MuTable mu_table_direct(const CountTable& table, std::uint64_t max_n, std::size_t k_max) {
    MuTable mu{max_n, k_max, std::vector<std::optional<std::size_t>>(max_n + 1)};
    std::vector<std::set<std::uint64_t>> cumulative;
    for (std::size_t k = 0; k <= k_max; ++k) {
        cumulative.push_back(t_set(table, k));
    }
    for (std::uint64_t n = 1; n <= max_n; ++n) {
        for (std::size_t k = 0; k <= k_max; ++k) {
            if (cumulative[k].count(n)) {
                mu.mu[n] = k;
                break;
            }
        }
    }
    return mu;
}

Density density_check(const CountTable& table, std::size_t k, std::uint64_t limit) {
    auto t = t_set(table, k);
    Density out;
    out.k = k;
    out.limit = limit;
    out.t_size = t.size();
    for (std::uint64_t e : t) {
        if (e <= limit) {
            ++out.hits;
        }
    }
    out.fraction = limit == 0 ? 0.0 : static_cast<double>(out.hits) / static_cast<double>(limit);
    return out;
}

} // namespace lecf
