#include "lecf/poset.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <string>

#include "lecf/errors.hpp"

namespace lecf {

namespace detail {

struct ClosureCache {
    std::once_flag once;
    std::vector<ElementSet> up;
    std::vector<ElementSet> down;
};

} // namespace detail

namespace {

// Topological order of the digraph given by `out`; throws on a cycle.
std::vector<Element> topological_order(std::size_t n, const std::vector<std::vector<Element>>& out) {
    std::vector<std::size_t> indegree(n, 0);
    for (const auto& targets : out) {
        for (Element v : targets) {
            ++indegree[v];
        }
    }
    std::vector<Element> order;
    order.reserve(n);
    for (Element v = 0; v < n; ++v) {
        if (indegree[v] == 0) {
            order.push_back(v);
        }
    }
    for (std::size_t head = 0; head < order.size(); ++head) {
        for (Element v : out[order[head]]) {
            if (--indegree[v] == 0) {
                order.push_back(v);
            }
        }
    }
    if (order.size() != n) {
        throw DomainError("relations contain a cycle");
    }
    return order;
}

void fill_closure(std::size_t n, const std::vector<std::vector<Element>>& out, detail::ClosureCache& cache) {
    auto order = topological_order(n, out);
    cache.up.assign(n, ElementSet(n));
    cache.down.assign(n, ElementSet(n));
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        Element u = *it;
        for (Element v : out[u]) {
            cache.up[u].set(v);
            cache.up[u] |= cache.up[v];
        }
    }
    for (Element u = 0; u < n; ++u) {
        for (auto v = cache.up[u].find_first(); v != ElementSet::npos; v = cache.up[u].find_next(v)) {
            cache.down[v].set(u);
        }
    }
}

} // namespace

Poset::Poset() : cache_(std::make_shared<detail::ClosureCache>()) {}

Poset Poset::from_relations(std::size_t n, std::span<const Relation> relations,
                            std::vector<std::string> labels) {
    if (!labels.empty() && labels.size() != n) {
        throw DomainError("expected " + std::to_string(n) + " labels, got " + std::to_string(labels.size()));
    }
    std::vector<std::vector<Element>> out(n);
    for (const auto& [u, v] : relations) {
        if (u >= n || v >= n) {
            throw DomainError("relation (" + std::to_string(u) + "," + std::to_string(v) +
                              ") refers to an element outside 0.." + std::to_string(n) + "-1");
        }
        if (u == v) {
            throw DomainError("relation (" + std::to_string(u) + "," + std::to_string(v) + ") is reflexive");
        }
        out[u].push_back(v);
    }
    Poset p;
    p.n_ = n;
    p.labels_ = std::move(labels);
    auto& cache = *p.cache_;
    std::call_once(cache.once, [&] { fill_closure(n, out, cache); });
    for (Element u = 0; u < n; ++u) {
        const auto& up = cache.up[u];
        for (auto v = up.find_first(); v != ElementSet::npos; v = up.find_next(v)) {
            if (!up.intersects(cache.down[v])) {
                p.covers_.emplace_back(u, static_cast<Element>(v));
            }
        }
    }
    return p;
}

const detail::ClosureCache& Poset::closure() const {
    std::call_once(cache_->once, [this] {
        std::vector<std::vector<Element>> out(n_);
        for (const auto& [u, v] : covers_) {
            out[u].push_back(v);
        }
        fill_closure(n_, out, *cache_);
    });
    return *cache_;
}

void Poset::check_element(Element v) const {
    if (v >= n_) {
        throw DomainError("element " + std::to_string(v) + " is not in a poset of size " + std::to_string(n_));
    }
}

bool Poset::less(Element u, Element v) const {
    check_element(u);
    check_element(v);
    return closure().up[u].test(v);
}

bool Poset::comparable(Element u, Element v) const {
    return less(u, v) || less(v, u);
}

const ElementSet& Poset::above(Element v) const {
    check_element(v);
    return closure().up[v];
}

const ElementSet& Poset::below(Element v) const {
    check_element(v);
    return closure().down[v];
}

bool Poset::is_minimal(Element v) const {
    return below(v).none();
}

bool Poset::is_maximal(Element v) const {
    return above(v).none();
}

std::vector<Relation> Poset::relations() const {
    std::vector<Relation> out;
    const auto& c = closure();
    for (Element u = 0; u < n_; ++u) {
        for (auto v = c.up[u].find_first(); v != ElementSet::npos; v = c.up[u].find_next(v)) {
            out.emplace_back(u, static_cast<Element>(v));
        }
    }
    return out;
}

Poset Poset::with_labels(std::vector<std::string> labels) const {
    if (!labels.empty() && labels.size() != n_) {
        throw DomainError("expected " + std::to_string(n_) + " labels, got " + std::to_string(labels.size()));
    }
    Poset p = *this;
    p.labels_ = std::move(labels);
    return p;
}

PointedPoset::PointedPoset(Poset poset, Element x) : poset_(std::move(poset)), x_(x) {
    if (x_ >= poset_.size()) {
        throw DomainError("distinguished element " + std::to_string(x_) + " is out of range");
    }
    if (!poset_.is_minimal(x_)) {
        throw DomainError("distinguished element " + std::to_string(x_) + " is not minimal");
    }
}

Poset chain(std::size_t n) {
    std::vector<Relation> rel;
    for (Element i = 0; i + 1 < n; ++i) {
        rel.emplace_back(i, i + 1);
    }
    return Poset::from_relations(n, rel);
}

Poset antichain(std::size_t n) {
    return Poset::from_relations(n, {});
}

Poset zigzag4() {
    const Relation rel[] = {{0, 1}, {2, 1}, {2, 3}};
    return Poset::from_relations(4, rel);
}

Poset dual(const Poset& p) {
    std::vector<Relation> rel;
    rel.reserve(p.covers().size());
    for (const auto& [u, v] : p.covers()) {
        rel.emplace_back(v, u);
    }
    return Poset::from_relations(p.size(), rel, p.labels());
}

namespace {

std::vector<std::string> concat_labels(const Poset& p, const Poset& q) {
    if (p.labels().empty() && q.labels().empty()) {
        return {};
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        out.push_back(p.labels().empty() ? std::to_string(i) : p.labels()[i]);
    }
    for (std::size_t i = 0; i < q.size(); ++i) {
        out.push_back(q.labels().empty() ? std::to_string(p.size() + i) : q.labels()[i]);
    }
    return out;
}

std::vector<Relation> shifted_union(const Poset& p, const Poset& q) {
    std::vector<Relation> rel(p.covers().begin(), p.covers().end());
    const auto shift = static_cast<Element>(p.size());
    for (const auto& [u, v] : q.covers()) {
        rel.emplace_back(u + shift, v + shift);
    }
    return rel;
}

} // namespace

Poset linear_sum(const Poset& p, const Poset& q) {
    auto rel = shifted_union(p, q);
    const auto shift = static_cast<Element>(p.size());
    for (Element u : maximal_elements(p)) {
        for (Element v : minimal_elements(q)) {
            rel.emplace_back(u, v + shift);
        }
    }
    return Poset::from_relations(p.size() + q.size(), rel, concat_labels(p, q));
}

Poset parallel_sum(const Poset& p, const Poset& q) {
    return Poset::from_relations(p.size() + q.size(), shifted_union(p, q), concat_labels(p, q));
}

Poset induced(const Poset& p, const ElementSet& keep) {
    std::vector<std::optional<Element>> id(p.size());
    Element next = 0;
    std::vector<std::string> labels;
    for (Element v = 0; v < p.size(); ++v) {
        if (keep.test(v)) {
            id[v] = next++;
            if (!p.labels().empty()) {
                labels.push_back(p.labels()[v]);
            }
        }
    }
    std::vector<Relation> rel;
    for (const auto& [u, v] : p.relations()) {
        if (id[u] && id[v]) {
            rel.emplace_back(*id[u], *id[v]);
        }
    }
    return Poset::from_relations(next, rel, std::move(labels));
}

Removal remove(const Poset& p, Element v) {
    if (v >= p.size()) {
        throw DomainError("cannot remove element " + std::to_string(v) + " from a poset of size " +
                          std::to_string(p.size()));
    }
    ElementSet keep(p.size());
    keep.set();
    keep.reset(v);
    Removal r{induced(p, keep), std::vector<std::optional<Element>>(p.size())};
    for (Element u = 0; u < p.size(); ++u) {
        if (u != v) {
            r.new_id[u] = u < v ? u : u - 1;
        }
    }
    return r;
}

std::vector<Element> minimal_elements(const Poset& p) {
    std::vector<Element> out;
    for (Element v = 0; v < p.size(); ++v) {
        if (p.is_minimal(v)) {
            out.push_back(v);
        }
    }
    return out;
}

std::vector<Element> maximal_elements(const Poset& p) {
    std::vector<Element> out;
    for (Element v = 0; v < p.size(); ++v) {
        if (p.is_maximal(v)) {
            out.push_back(v);
        }
    }
    return out;
}

std::vector<std::vector<Element>> chain_decomposition(const Poset& p) {
    const std::size_t n = p.size();
    constexpr Element kNone = static_cast<Element>(-1);
    // Bipartite matching u -> v over comparable pairs u < v; every matched
    // edge links consecutive elements of one chain.
    std::vector<Element> match_right(n, kNone);
    std::vector<Element> next(n, kNone);
    std::vector<char> seen(n);

    std::function<bool(Element)> augment = [&](Element u) -> bool {
        const auto& up = p.above(u);
        for (auto v = up.find_first(); v != ElementSet::npos; v = up.find_next(v)) {
            if (seen[v]) {
                continue;
            }
            seen[v] = 1;
            if (match_right[v] == kNone || augment(match_right[v])) {
                match_right[v] = u;
                return true;
            }
        }
        return false;
    };
    for (Element u = 0; u < n; ++u) {
        std::fill(seen.begin(), seen.end(), 0);
        augment(u);
    }
    for (Element v = 0; v < n; ++v) {
        if (match_right[v] != kNone) {
            next[match_right[v]] = v;
        }
    }
    std::vector<std::vector<Element>> chains;
    for (Element v = 0; v < n; ++v) {
        if (match_right[v] != kNone) {
            continue;
        }
        auto& c = chains.emplace_back();
        for (Element u = v; u != kNone; u = next[u]) {
            c.push_back(u);
        }
    }
    return chains;
}

std::size_t width(const Poset& p) {
    return chain_decomposition(p).size();
}

std::size_t width_bruteforce(const Poset& p) {
    const std::size_t n = p.size();
    if (n > 20) {
        throw DomainError("brute-force width is limited to 20 elements");
    }
    std::vector<std::uint32_t> comparable(n, 0);
    for (const auto& [u, v] : p.relations()) {
        comparable[u] |= 1u << v;
        comparable[v] |= 1u << u;
    }
    std::size_t best = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        bool antichain = true;
        for (std::size_t v = 0; v < n && antichain; ++v) {
            if ((mask >> v & 1u) && (comparable[v] & mask)) {
                antichain = false;
            }
        }
        if (antichain) {
            best = std::max<std::size_t>(best, static_cast<std::size_t>(__builtin_popcount(mask)));
        }
    }
    return best;
}

} // namespace lecf
