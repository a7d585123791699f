#include "ivsk/matgen.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace ivsk {

namespace {

// How many distinct nonzero values the kind can represent (capped for floats
// to the integer range [-2^24, 2^24] the pool draws from).
std::uint64_t pool_capacity(ValueKind kind) {
    if (kind.numeric_class == NumericClass::Float) return std::uint64_t{1} << 25;
    const std::uint64_t cells = kind.width_bytes >= 8
                                    ? ~std::uint64_t{0}
                                    : (std::uint64_t{1} << (8 * kind.width_bytes)) - 1;
    return cells;  // every bit pattern except zero
}

Value draw_nonzero(std::mt19937_64& rng, ValueKind kind) {
    switch (kind.numeric_class) {
        case NumericClass::UnsignedInt: {
            const std::uint64_t max = kind.width_bytes >= 8
                                          ? ~std::uint64_t{0}
                                          : (std::uint64_t{1} << (8 * kind.width_bytes)) - 1;
            std::uniform_int_distribution<std::uint64_t> dist(1, max);
            return value_from_uint(dist(rng), kind);
        }
        case NumericClass::SignedInt: {
            const std::int64_t max =
                kind.width_bytes >= 8 ? INT64_MAX
                                      : (std::int64_t{1} << (8 * kind.width_bytes - 1)) - 1;
            std::uniform_int_distribution<std::int64_t> dist(-max - 1, max);
            const std::int64_t v = dist(rng);
            return v == 0 ? Value{1} : value_from_int(v, kind);
        }
        case NumericClass::Float: {
            std::uniform_int_distribution<std::int64_t> dist(-(std::int64_t{1} << 24),
                                                             std::int64_t{1} << 24);
            const std::int64_t v = dist(rng);
            return value_from_int(v == 0 ? 1 : v, kind);
        }
    }
    return {};
}

std::vector<Value> make_pool(std::uint64_t n_unique, ValueKind kind, std::mt19937_64& rng) {
    if (n_unique == 0) throw std::invalid_argument("value pool must hold at least one value");
    if (n_unique > pool_capacity(kind))
        throw std::invalid_argument("value pool exceeds representable nonzero values of " +
                                    value_kind_name(kind));
    std::vector<Value> pool;
    pool.reserve(n_unique);
    std::unordered_set<std::uint64_t> seen;
    while (pool.size() < n_unique) {
        const Value v = draw_nonzero(rng, kind);
        if (seen.insert(v.bits).second) pool.push_back(v);
    }
    return pool;
}

}  // namespace

CooMatrix generate(const GenSpec& spec) {
    validate_value_kind(spec.value_kind);
    if (spec.dims.nrows == 0 || spec.dims.ncols == 0)
        throw std::invalid_argument("matrix dimensions must be at least 1x1");
    if (spec.sparsity < 0.0 || spec.sparsity > 1.0)
        throw std::invalid_argument("sparsity must be in [0, 1]");

    // Guard the floor against representation error, e.g. (1 - 0.9) * 1000
    // evaluating to 99.999... instead of 100.
    const double exact = (1.0 - spec.sparsity) * static_cast<double>(spec.dims.nrows);
    const std::uint64_t per_col =
        static_cast<std::uint64_t>(std::floor(exact + 64 * exact * DBL_EPSILON));

    std::mt19937_64 value_rng(spec.seed);
    const std::vector<Value> pool = make_pool(spec.n_unique, spec.value_kind, value_rng);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);

    std::mt19937_64 pos_rng(spec.position_seed);
    std::vector<std::uint64_t> slots(spec.dims.nrows);
    std::vector<std::uint64_t> rows(per_col);

    CooMatrix out{spec.dims, spec.value_kind, {}};
    out.triplets.reserve(per_col * spec.dims.ncols);
    for (std::uint64_t c = 0; c < spec.dims.ncols; ++c) {
        std::iota(slots.begin(), slots.end(), std::uint64_t{0});
        for (std::uint64_t j = 0; j < per_col; ++j) {
            std::uniform_int_distribution<std::uint64_t> dist(j, spec.dims.nrows - 1);
            std::swap(slots[j], slots[dist(pos_rng)]);
            rows[j] = slots[j];
        }
        std::sort(rows.begin(), rows.end());
        for (std::uint64_t j = 0; j < per_col; ++j)
            out.triplets.push_back({rows[j], c, pool[pick(value_rng)]});
    }
    // Sorted by (col, row) with distinct positions and nonzero values by
    // construction, so the result is already canonical.
    return out;
}

CooMatrix reassign_values(const CooMatrix& m, std::uint64_t n_unique, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::vector<Value> pool = make_pool(n_unique, m.value_kind, rng);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    CooMatrix out = m;
    for (auto& t : out.triplets) t.value = pool[pick(rng)];
    return out;
}

}  // namespace ivsk
