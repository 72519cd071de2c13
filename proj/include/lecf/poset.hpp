#pragma once

// Finite posets stored as Hasse diagrams (cover relations) on elements
// 0..n-1, plus exact linear-extension counting.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "lecf/rational.hpp"

namespace lecf {

using Element = std::uint32_t;
using Relation = std::pair<Element, Element>; // first < second in the order
using ElementSet = boost::dynamic_bitset<>;

namespace detail {
struct ClosureCache;
}

// Immutable after construction. The transitive closure is computed lazily on
// first query and shared between copies.
class Poset {
public:
    Poset();

    // Builds the poset generated by `relations` (any generating set; the
    // stored covers are its transitive reduction). Throws DomainError on
    // out-of-range ids or cycles.
    static Poset from_relations(std::size_t n, std::span<const Relation> relations,
                                std::vector<std::string> labels = {});

    std::size_t size() const { return n_; }
    bool empty() const { return n_ == 0; }

    // Sorted lexicographically.
    const std::vector<Relation>& covers() const { return covers_; }
    // Empty, or one label per element.
    const std::vector<std::string>& labels() const { return labels_; }

    bool less(Element u, Element v) const;
    bool comparable(Element u, Element v) const;
    // Strict up-set / down-set of v.
    const ElementSet& above(Element v) const;
    const ElementSet& below(Element v) const;

    bool is_minimal(Element v) const;
    bool is_maximal(Element v) const;

    // Every comparable pair u < v.
    std::vector<Relation> relations() const;

    Poset with_labels(std::vector<std::string> labels) const;

    friend bool operator==(const Poset& p, const Poset& q) {
        return p.n_ == q.n_ && p.covers_ == q.covers_ && p.labels_ == q.labels_;
    }

private:
    const detail::ClosureCache& closure() const;
    void check_element(Element v) const;

    std::size_t n_ = 0;
    std::vector<Relation> covers_;
    std::vector<std::string> labels_;
    std::shared_ptr<detail::ClosureCache> cache_;
};

// A poset together with a distinguished minimal element.
class PointedPoset {
public:
    // Throws DomainError unless x is a minimal element of `poset`.
    PointedPoset(Poset poset, Element x);

    const Poset& poset() const { return poset_; }
    Element point() const { return x_; }
    std::size_t size() const { return poset_.size(); }

private:
    Poset poset_;
    Element x_;
};

Poset chain(std::size_t n);
Poset antichain(std::size_t n);
// The 4-element fence: 0 < 1 > 2 < 3.
Poset zigzag4();

Poset dual(const Poset& p);

// Ids: p keeps 0..|p|-1, q is shifted by |p|.
Poset linear_sum(const Poset& p, const Poset& q);
Poset parallel_sum(const Poset& p, const Poset& q);

// Induced subposet after deleting an element.
struct Removal {
    Poset poset;
    // old id -> new id; nullopt for the removed element.
    std::vector<std::optional<Element>> new_id;
};
Removal remove(const Poset& p, Element v);

// Induced subposet on `keep`, elements renumbered in increasing old-id order.
Poset induced(const Poset& p, const ElementSet& keep);

std::vector<Element> minimal_elements(const Poset& p);
std::vector<Element> maximal_elements(const Poset& p);

// Minimum chain cover (Dilworth); every chain is listed bottom to top.
std::vector<std::vector<Element>> chain_decomposition(const Poset& p);
std::size_t width(const Poset& p);
// Exhaustive maximum antichain; n <= 20.
std::size_t width_bruteforce(const Poset& p);

struct CountOptions {
    std::uint64_t ideal_cap = 10'000'000;
};

struct CountResult {
    BigCount extensions;
    std::uint64_t ideals = 0; // order ideals visited, including empty and full
};

// Linear extensions as maximal chains of the order-ideal lattice, with
// ideals encoded as prefix lengths along a minimum chain cover. Throws
// ResourceError once more than `ideal_cap` ideals are visited.
CountResult count_le_detailed(const Poset& p, const CountOptions& options = {});
BigCount count_le(const Poset& p, const CountOptions& options = {});

// Enumerates topological orders one by one; n <= 9.
BigCount count_le_bruteforce(const Poset& p);
inline constexpr std::size_t kBruteforceLimit = 9;

// e(P) / e(P - x), reduced.
Rational rho(const Poset& p, Element x, const CountOptions& options = {});

} // namespace lecf
