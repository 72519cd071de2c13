#pragma once

// Small-instance experiments: numerator scans, weight statistics, poset
// catalogs up to isomorphism, T(k), mu(n), and s/g/r comparison tables.
//
// Asymptotic references reported here are empirical yardsticks only.

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <vector>

#include "lecf/confrac.hpp"
#include "lecf/poset.hpp"

namespace lecf {

// ---------------------------------------------------------------------------
// Numerator scans

std::uint64_t euler_phi(std::uint64_t d);

// (12 / pi^2) ln d ln ln d; 0 when ln ln d is undefined or negative.
double ruka_center(std::uint64_t d);
// (6 / pi^2) (ln d)^2
double yk_mean(std::uint64_t d);

struct ScanRecord {
    std::uint64_t d = 0;
    std::uint64_t best_c = 0; // smallest c attaining the minimum
    std::uint64_t min_weight = 0;
    std::uint64_t phi = 0;
    double bound_value = 0;   // slack * ruka_center(d)
    bool within_bound = false;
};

// Exact minimum of s(c/d) over 1 <= c < d with gcd(c, d) = 1; d >= 2.
ScanRecord best_numerator(std::uint64_t d, double slack = 2.0);

// One record per d in [lo, hi], in increasing d whatever the thread count.
std::vector<ScanRecord> zaremba_scan(std::uint64_t lo, std::uint64_t hi, double slack = 2.0,
                                     unsigned threads = 1);

struct WeightHistogram {
    std::uint64_t d = 0;
    std::map<std::uint64_t, std::uint64_t> counts; // weight -> #numerators
    std::uint64_t total = 0;
    double mean = 0;
    double yk_reference = 0;
    double ruka_reference = 0;
};

WeightHistogram weight_histogram(std::uint64_t d, unsigned threads = 1);

// ---------------------------------------------------------------------------
// Catalogs

inline constexpr std::size_t kMaxCatalogSize = 8;

// Closure matrix bit (u * n + v) set iff u < v; n <= 8 fits one word.
using CanonicalKey = std::uint64_t;

// Isomorphism-invariant key: refine elements by (level, in-degree,
// out-degree) signatures, then minimize the closure matrix over all
// orderings that respect the refined cells.
CanonicalKey canonical_key(const Poset& p);
// The poset relabeled so that its closure matrix is the canonical key.
Poset canonical_form(const Poset& p);
bool isomorphic(const Poset& p, const Poset& q);

struct PosetCatalog {
    std::size_t n = 0;
    std::vector<Poset> posets; // canonical forms, sorted by key
};

// Classes on n + 1 elements: every class on n elements, extended by a new
// maximal element over every down-closed subset.
PosetCatalog extend_catalog(const PosetCatalog& prev, unsigned threads = 1);
// Levels 0..n.
std::vector<PosetCatalog> enumerate_catalogs(std::size_t n, unsigned threads = 1);
PosetCatalog enumerate_posets(std::size_t n, unsigned threads = 1);

// One poset per line: "n u,v u,v ...". Lines for any mix of sizes; load
// groups them by n.
void save_catalog(std::ostream& out, const PosetCatalog& catalog);
std::vector<PosetCatalog> load_catalogs(std::istream& in);

// ---------------------------------------------------------------------------
// T(k) and mu(n)

// Linear-extension counts per level, computed once per catalog.
struct CountTable {
    // level[n] = { e(P) : |P| = n }
    std::vector<std::set<std::uint64_t>> level;
};

CountTable count_table(const std::vector<PosetCatalog>& catalogs, unsigned threads = 1);

// T(k) = { e(P) : |P| <= k }
std::set<std::uint64_t> t_set(const CountTable& table, std::size_t k);

struct MuTable {
    std::uint64_t max_n = 0;
    std::size_t k_max = 0;
    // mu[n] for n = 1..max_n; nullopt means "> k_max".
    std::vector<std::optional<std::size_t>> mu;
};

// Walks k upward, recording the first level that reaches each n.
MuTable mu_table(const CountTable& table, std::uint64_t max_n, std::size_t k_max);
// min{ k : n in T(k) } evaluated per n from the cumulative sets.
MuTable mu_table_direct(const CountTable& table, std::uint64_t max_n, std::size_t k_max);

struct Density {
    std::size_t k = 0;
    std::uint64_t limit = 0;
    std::size_t t_size = 0;       // |T(k)|
    std::uint64_t hits = 0;       // |T(k) & {1..limit}|
    double fraction = 0;
};

Density density_check(const CountTable& table, std::size_t k, std::uint64_t limit);

// ---------------------------------------------------------------------------
// s vs. bounded g and r

struct GrRow {
    std::uint64_t d = 0;
    std::uint64_t c = 0;      // numerator of the row's best r witness
    std::uint64_t s = 0;      // min over c of s(c/d)
    std::uint64_t g = 0;      // min over candidates of bounded g(d/c)
    std::uint64_t r = 0;      // min over candidates of bounded r(d/c)
    GCF g_witness;
    RGCF r_witness;
    std::uint64_t candidates = 0;
};

struct GrOptions {
    SearchBounds bounds;
    // Numerators tried per d: those with the smallest s(c/d), ties to small c.
    std::size_t candidates = 3;
    unsigned threads = 1;
};

GrRow gr_row(std::uint64_t d, const GrOptions& options = {});
// Rows for an explicit numerator: candidates = {c}.
GrRow gr_row(std::uint64_t d, std::uint64_t c, const SearchBounds& bounds = {});
std::vector<GrRow> gr_scan(std::uint64_t lo, std::uint64_t hi, const GrOptions& options = {});

} // namespace lecf
