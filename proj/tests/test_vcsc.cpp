#include <doctest.h>

#include <stdexcept>
#include <random>
#include <set>
#include <tuple>

#include "helpers.hpp"
#include "ivsk/analytics.hpp"
#include "ivsk/vcsc.hpp"

using namespace ivsk;
using ivsk::testing::random_coo;
using ivsk::testing::values_close;

namespace {

const ValueKind kI32{4, NumericClass::SignedInt};

CooMatrix column(std::vector<std::pair<std::uint64_t, std::int64_t>> entries,
                 std::uint64_t nrows, ValueKind kind = kI32) {
    std::vector<Triplet> triplets;
    for (auto [r, v] : entries) triplets.push_back({r, 0, value_from_int(v, kind)});
    return canonicalize_coo(std::move(triplets), {nrows, 1}, kind);
}

CooMatrix identity(std::uint64_t n) {
    std::vector<Triplet> triplets;
    for (std::uint64_t i = 0; i < n; ++i) triplets.push_back({i, i, value_from_int(1, kI32)});
    return canonicalize_coo(std::move(triplets), {n, n}, kI32);
}

}  // namespace

TEST_CASE("vcsc_from_coo groups by value") {
    const auto m = vcsc_from_coo(column({{0, 3}, {2, 3}, {5, 7}, {7, 3}}, 8));
    const VcscColumn& col = m.columns[0];
    CHECK(col.uniq_values == std::vector<Value>{value_from_int(3, kI32), value_from_int(7, kI32)});
    CHECK(col.counts == std::vector<std::uint64_t>{3, 1});
    CHECK(col.indices == std::vector<std::uint64_t>{0, 2, 7, 5});
}

TEST_CASE("vcsc degenerate columns") {
    const auto distinct = vcsc_from_coo(column({{0, 1}, {1, 2}, {2, 3}}, 3));
    CHECK(distinct.columns[0].uniq_values.size() == 3);
    CHECK(distinct.columns[0].counts == std::vector<std::uint64_t>{1, 1, 1});
    CHECK(distinct.columns[0].indices == std::vector<std::uint64_t>{0, 1, 2});

    const auto constant = vcsc_from_coo(column({{0, 9}, {1, 9}, {2, 9}, {3, 9}, {4, 9}}, 5));
    CHECK(constant.columns[0].uniq_values == std::vector<Value>{value_from_int(9, kI32)});
    CHECK(constant.columns[0].counts == std::vector<std::uint64_t>{5});
    CHECK(constant.columns[0].indices == std::vector<std::uint64_t>{0, 1, 2, 3, 4});
}

TEST_CASE("vcsc_from_csc matches the coo path") {
    const auto eye = vcsc_from_csc(csc_from_coo(identity(4)));
    for (const auto& col : eye.columns) {
        CHECK(col.uniq_values == std::vector<Value>{value_from_int(1, kI32)});
        CHECK(col.counts == std::vector<std::uint64_t>{1});
    }

    std::mt19937 rng(31);
    const auto m = random_coo(rng, {40, 15}, 0.8, kI32);
    CHECK(vcsc_from_csc(csc_from_coo(m)) == vcsc_from_coo(m));

    const auto empty = vcsc_from_coo(CooMatrix{{4, 3}, kI32, {}});
    for (const auto& col : empty.columns) CHECK(col.nnz() == 0);
}

TEST_CASE("vcsc round trip") {
    for (const auto& m : {column({{0, 3}, {2, 3}, {5, 7}, {7, 3}}, 8),
                          column({{0, 1}, {1, 2}, {2, 3}}, 3),
                          column({{0, 9}, {1, 9}, {2, 9}, {3, 9}, {4, 9}}, 5)})
        CHECK(coo_equal(m, vcsc_to_coo(vcsc_from_coo(m))));

    std::mt19937 rng(37);
    for (ValueKind kind : ivsk::testing::all_value_kinds()) {
        const auto m = random_coo(rng, {30, 10}, 0.7, kind);
        CHECK(coo_equal(m, vcsc_to_coo(vcsc_from_coo(m))));
    }
}

TEST_CASE("vcsc iteration order is value-grouped") {
    const auto m = vcsc_from_coo(column({{0, 3}, {2, 3}, {5, 7}, {7, 3}}, 8));
    std::vector<std::pair<std::uint64_t, std::int64_t>> seen;
    m.for_each([&](std::uint64_t, std::uint64_t r, Value v) {
        seen.emplace_back(r, static_cast<std::int64_t>(value_to_double(v, kI32)));
    });
    CHECK(seen == std::vector<std::pair<std::uint64_t, std::int64_t>>{
                      {0, 3}, {2, 3}, {7, 3}, {5, 7}});
}

TEST_CASE("vcsc iteration emits the coo multiset") {
    std::mt19937 rng(41);
    const auto m = random_coo(rng, {25, 12}, 0.6, kI32);
    std::multiset<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> from_coo, from_vcsc;
    for (const auto& t : m.triplets) from_coo.insert({t.col, t.row, t.value.bits});
    vcsc_from_coo(m).for_each([&](std::uint64_t c, std::uint64_t r, Value v) {
        from_vcsc.insert({c, r, v.bits});
    });
    CHECK(from_coo == from_vcsc);

    std::uint64_t count = 0;
    vcsc_from_coo(CooMatrix{{5, 5}, kI32, {}}).for_each([&](auto, auto, auto) { ++count; });
    CHECK(count == 0);
}

TEST_CASE("vcsc scalar multiply touches only unique values") {
    const auto m = vcsc_from_coo(column({{0, 3}, {2, 3}, {5, 7}, {7, 3}}, 8));
    std::uint64_t muls = 0;
    const auto doubled = vcsc_scalar_mul(m, value_from_int(2, kI32), &muls);
    CHECK(muls == 2);
    CHECK(doubled.columns[0].uniq_values ==
          std::vector<Value>{value_from_int(6, kI32), value_from_int(14, kI32)});
    CHECK(doubled.columns[0].counts == m.columns[0].counts);
    CHECK(doubled.columns[0].indices == m.columns[0].indices);

    CHECK_THROWS_AS(vcsc_scalar_mul(m, Value{}), std::invalid_argument);

    std::mt19937 rng(43);
    const auto r = random_coo(rng, {30, 10}, 0.7, kI32);
    const auto got = vcsc_scalar_mul(vcsc_from_coo(r), value_from_int(5, kI32));
    CHECK(coo_to_dense(vcsc_to_coo(got)) ==
          dense_scalar_mul(coo_to_dense(r), value_from_int(5, kI32)));
}

TEST_CASE("vcsc scalar multiply op count matches total unique values") {
    // 10 columns, 4 unique values each.
    std::vector<Triplet> triplets;
    for (std::uint64_t c = 0; c < 10; ++c)
        for (std::uint64_t k = 0; k < 4; ++k)
            for (std::uint64_t n = 0; n < 3; ++n)
                triplets.push_back({k * 3 + n, c, value_from_int(static_cast<std::int64_t>(k) + 1, kI32)});
    const auto m = vcsc_from_coo(canonicalize_coo(std::move(triplets), {12, 10}, kI32));
    std::uint64_t muls = 0;
    vcsc_scalar_mul(m, value_from_int(2, kI32), &muls);
    CHECK(muls == 40);
}

TEST_CASE("vcsc scalar multiply merges collapsed values") {
    // In u8 arithmetic, 3 * 86 == 2 == 130 * 2 (mod 256): two groups collapse.
    const ValueKind u8{1, NumericClass::UnsignedInt};
    const auto m = vcsc_from_coo(column({{0, 86}, {3, 130}, {5, 86}}, 8, u8));
    REQUIRE(m.columns[0].uniq_values.size() == 2);
    const auto tripled = vcsc_scalar_mul(m, value_from_int(3, u8));  // 86*3=2, 130*3=134
    CHECK(tripled.columns[0].uniq_values ==
          std::vector<Value>{value_from_int(2, u8), value_from_int(134, u8)});

    const auto doubled = vcsc_scalar_mul(vcsc_from_coo(column({{0, 1}, {3, 129}, {5, 1}}, 8, u8)),
                                         value_from_int(2, u8));
    // 1*2 == 129*2 == 2 (mod 256): single merged group, rows re-sorted.
    REQUIRE(doubled.columns[0].uniq_values.size() == 1);
    CHECK(doubled.columns[0].uniq_values[0] == value_from_int(2, u8));
    CHECK(doubled.columns[0].counts == std::vector<std::uint64_t>{3});
    CHECK(doubled.columns[0].indices == std::vector<std::uint64_t>{0, 3, 5});
}

TEST_CASE("vcsc kernels match csc and the dense oracle") {
    std::mt19937 rng(47);
    const auto ks = {kI32, ValueKind{4, NumericClass::Float}};
    for (ValueKind kind : ks) {
        const auto m = random_coo(rng, {40, 16}, 0.8, kind);
        const auto x = ivsk::testing::random_vector(rng, 16, kind);
        const auto vcsc_y = vcsc_spmv(vcsc_from_coo(m), x);
        const auto csc_y = csc_spmv(csc_from_coo(m), x);
        const auto dense_y = dense_matvec(coo_to_dense(m), x);
        for (std::size_t i = 0; i < vcsc_y.size(); ++i) {
            if (kind.numeric_class != NumericClass::Float) CHECK(vcsc_y[i] == csc_y[i]);
            CHECK(values_close(vcsc_y[i], dense_y[i], kind));
        }

        DenseMatrix b{{16, 5}, kind, ivsk::testing::random_vector(rng, 80, kind)};
        const auto vcsc_c = vcsc_spmm(vcsc_from_coo(m), b);
        const auto dense_c = dense_matmul(coo_to_dense(m), b);
        for (std::size_t i = 0; i < vcsc_c.values.size(); ++i)
            CHECK(values_close(vcsc_c.values[i], dense_c.values[i], kind));
    }

    const auto eye = vcsc_from_coo(identity(3));
    const std::vector<Value> x{value_from_int(4, kI32), value_from_int(5, kI32),
                               value_from_int(6, kI32)};
    CHECK(vcsc_spmv(eye, x) == x);
}

TEST_CASE("vcsc byte size") {
    const auto m = vcsc_from_coo(column({{0, 3}, {2, 3}, {5, 7}, {7, 3}}, 8));
    CHECK(vcsc_byte_size(m) == 36);  // 4*2 + 4*2 + 4*4 + 4

    const auto empty = vcsc_from_coo(CooMatrix{{4, 3}, kI32, {}});
    CHECK(vcsc_byte_size(empty) == 12);  // one length slot per column

    std::mt19937 rng(53);
    const auto r = random_coo(rng, {60, 20}, 0.85, kI32);
    const auto vcsc = vcsc_from_coo(r);
    CHECK(vcsc_byte_size(vcsc) == vcsc_size_model(column_stats(r), 4, 4));
}

TEST_CASE("vcsc fully redundant asymptote") {
    // One unique value per column: size collapses to val + 2*idx + idx*nnz_i.
    std::vector<Triplet> triplets;
    for (std::uint64_t c = 0; c < 6; ++c)
        for (std::uint64_t r = 0; r < 10; ++r)
            triplets.push_back({r, c, value_from_int(4, kI32)});
    const auto m = vcsc_from_coo(canonicalize_coo(std::move(triplets), {10, 6}, kI32));
    CHECK(vcsc_byte_size(m) == 6 * (4 + 2 * 4 + 4 * 10));
}
