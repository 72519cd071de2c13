#include "lecf/search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <thread>

#include "lecf/errors.hpp"
#include "parallel.hpp"

namespace lecf {

std::uint64_t euler_phi(std::uint64_t d) {
    std::uint64_t result = d;
    for (std::uint64_t p = 2; p * p <= d; ++p) {
        if (d % p == 0) {
            while (d % p == 0) {
                d /= p;
            }
            result -= result / p;
        }
    }
    if (d > 1) {
        result -= result / d;
    }
    return result;
}

double ruka_center(std::uint64_t d) {
    if (d < 3) {
        return 0;
    }
    const double l = std::log(static_cast<double>(d));
    const double ll = std::log(l);
    return ll > 0 ? 12.0 / (std::numbers::pi * std::numbers::pi) * l * ll : 0;
}

double yk_mean(std::uint64_t d) {
    const double l = d > 0 ? std::log(static_cast<double>(d)) : 0;
    return 6.0 / (std::numbers::pi * std::numbers::pi) * l * l;
}

ScanRecord best_numerator(std::uint64_t d, double slack) {
    if (d < 2) {
        throw DomainError("best numerator needs d >= 2, got " + std::to_string(d));
    }
    ScanRecord rec;
    rec.d = d;
    rec.min_weight = std::numeric_limits<std::uint64_t>::max();
    for (std::uint64_t c = 1; c < d; ++c) {
        if (std::gcd(c, d) != 1) {
            continue;
        }
        std::uint64_t w = weight_s(c, d);
        if (w < rec.min_weight) {
            rec.min_weight = w;
            rec.best_c = c;
        }
    }
    rec.phi = euler_phi(d);
    rec.bound_value = slack * ruka_center(d);
    rec.within_bound = static_cast<double>(rec.min_weight) <= rec.bound_value;
    return rec;
}

std::vector<ScanRecord> zaremba_scan(std::uint64_t lo, std::uint64_t hi, double slack, unsigned threads) {
    if (lo < 2 || hi < lo) {
        throw DomainError("scan range must satisfy 2 <= lo <= hi");
    }
    std::vector<ScanRecord> out(hi - lo + 1);
    detail::parallel_for(out.size(), threads, [&](std::size_t i) { out[i] = best_numerator(lo + i, slack); });
    return out;
}

WeightHistogram weight_histogram(std::uint64_t d, unsigned threads) {
    if (d < 2) {
        throw DomainError("histogram needs d >= 2, got " + std::to_string(d));
    }
    std::vector<std::uint64_t> weights(d - 1, 0);
    detail::parallel_for(weights.size(), threads, [&](std::size_t i) {
        std::uint64_t c = i + 1;
        if (std::gcd(c, d) == 1) {
            weights[i] = weight_s(c, d);
        }
    });
    WeightHistogram h;
    h.d = d;
    long double sum = 0;
    for (std::uint64_t w : weights) {
        if (w == 0) {
            continue;
        }
        ++h.counts[w];
        ++h.total;
        sum += w;
    }
    h.mean = static_cast<double>(sum / h.total);
    h.yk_reference = yk_mean(d);
    h.ruka_reference = ruka_center(d);
    return h;
}

// ---------------------------------------------------------------------------

namespace {

GrRow row_for(std::uint64_t d, const std::vector<std::uint64_t>& numerators, std::uint64_t s,
              const SearchBounds& bounds) {
    GrRow row;
    row.d = d;
    row.s = s;
    row.candidates = numerators.size();
    bool first = true;
    for (std::uint64_t c : numerators) {
        Rational value = make_rational(BigInt(static_cast<unsigned long>(d)), BigInt(static_cast<unsigned long>(c)));
        GcfMinimum g = minimize_g(value, bounds);
        RgcfMinimum r = minimize_r(value, bounds);
        std::uint64_t gw = to_u64(g.weight);
        std::uint64_t rw = to_u64(r.weight);
        if (first || gw < row.g) {
            row.g = gw;
            row.g_witness = g.witness;
        }
        if (first || rw < row.r) {
            row.r = rw;
            row.r_witness = r.witness;
            row.c = c;
        }
        first = false;
    }
    return row;
}

} // namespace

GrRow gr_row(std::uint64_t d, const GrOptions& options) {
    if (d < 2) {
        throw DomainError("g/r scan needs d >= 2, got " + std::to_string(d));
    }
    std::vector<std::pair<std::uint64_t, std::uint64_t>> by_weight;
    for (std::uint64_t c = 1; c < d; ++c) {
        if (std::gcd(c, d) == 1) {
            by_weight.emplace_back(weight_s(c, d), c);
        }
    }
    std::sort(by_weight.begin(), by_weight.end());
    std::vector<std::uint64_t> numerators;
    for (std::size_t i = 0; i < by_weight.size() && i < std::max<std::size_t>(options.candidates, 1); ++i) {
        numerators.push_back(by_weight[i].second);
    }
    return row_for(d, numerators, by_weight.front().first, options.bounds);
}

GrRow gr_row(std::uint64_t d, std::uint64_t c, const SearchBounds& bounds) {
    if (c < 1 || c >= d || std::gcd(c, d) != 1) {
        throw DomainError("need 1 <= c < d with gcd(c, d) = 1");
    }
    return row_for(d, {c}, weight_s(c, d), bounds);
}

std::vector<GrRow> gr_scan(std::uint64_t lo, std::uint64_t hi, const GrOptions& options) {
    if (lo < 2 || hi < lo) {
        throw DomainError("scan range must satisfy 2 <= lo <= hi");
    }
    std::vector<GrRow> out(hi - lo + 1);
    detail::parallel_for(out.size(), options.threads, [&](std::size_t i) { out[i] = gr_row(lo + i, options); });
    return out;
}

} // namespace lecf
