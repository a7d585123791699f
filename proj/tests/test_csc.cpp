#include <doctest.h>

#include <stdexcept>
#include <random>
#include <tuple>

#include "helpers.hpp"
#include "ivsk/analytics.hpp"
#include "ivsk/csc.hpp"

using namespace ivsk;
using ivsk::testing::all_value_kinds;
using ivsk::testing::random_coo;
using ivsk::testing::values_close;

namespace {

const ValueKind kI32{4, NumericClass::SignedInt};

CooMatrix coo(std::vector<std::tuple<std::uint64_t, std::uint64_t, std::int64_t>> entries,
              Dims dims, ValueKind kind = kI32) {
    std::vector<Triplet> triplets;
    for (auto [r, c, v] : entries) triplets.push_back({r, c, value_from_int(v, kind)});
    return canonicalize_coo(std::move(triplets), dims, kind);
}

CooMatrix identity(std::uint64_t n, ValueKind kind = kI32) {
    std::vector<Triplet> triplets;
    for (std::uint64_t i = 0; i < n; ++i) triplets.push_back({i, i, value_from_int(1, kind)});
    return canonicalize_coo(std::move(triplets), {n, n}, kind);
}

}  // namespace

TEST_CASE("csc_from_coo layout") {
    const auto m = csc_from_coo(coo({{1, 0, 7}, {3, 0, 2}}, {4, 1}));
    CHECK(m.col_ptrs == std::vector<std::uint64_t>{0, 2});
    CHECK(m.row_indices == std::vector<std::uint64_t>{1, 3});
    CHECK(m.values == std::vector<Value>{value_from_int(7, kI32), value_from_int(2, kI32)});

    const auto empty = csc_from_coo(CooMatrix{{3, 2}, kI32, {}});
    CHECK(empty.col_ptrs == std::vector<std::uint64_t>{0, 0, 0});

    const auto two = csc_from_coo(coo({{0, 1, 5}, {2, 0, 4}}, {3, 2}));
    CHECK(two.col_ptrs == std::vector<std::uint64_t>{0, 1, 2});
    CHECK(two.row_indices == std::vector<std::uint64_t>{2, 0});
    CHECK(two.values == std::vector<Value>{value_from_int(4, kI32), value_from_int(5, kI32)});
}

TEST_CASE("csc round trip") {
    CHECK(coo_equal(identity(2), csc_to_coo(csc_from_coo(identity(2)))));
    CHECK(coo_equal(CooMatrix{{3, 2}, kI32, {}}, csc_to_coo(csc_from_coo(CooMatrix{{3, 2}, kI32, {}}))));
    std::mt19937 rng(42);
    const auto m = random_coo(rng, {50, 50}, 0.9, kI32);
    CHECK(coo_equal(m, csc_to_coo(csc_from_coo(m))));
}

TEST_CASE("csc iteration order and count") {
    std::vector<std::tuple<std::uint64_t, std::uint64_t, Value>> seen;
    csc_from_coo(identity(2)).for_each([&](std::uint64_t c, std::uint64_t r, Value v) {
        seen.emplace_back(c, r, v);
    });
    REQUIRE(seen.size() == 2);
    CHECK(seen[0] == std::tuple{std::uint64_t{0}, std::uint64_t{0}, value_from_int(1, kI32)});
    CHECK(seen[1] == std::tuple{std::uint64_t{1}, std::uint64_t{1}, value_from_int(1, kI32)});

    std::mt19937 rng(5);
    const auto m = random_coo(rng, {40, 12}, 0.8, kI32);
    std::uint64_t count = 0;
    csc_from_coo(m).for_each([&](auto, auto, auto) { ++count; });
    CHECK(count == m.nnz());
}

TEST_CASE("csc scalar multiply") {
    const auto eye = csc_from_coo(identity(3));
    const auto tripled = csc_scalar_mul(eye, value_from_int(3, kI32));
    for (Value v : tripled.values) CHECK(v == value_from_int(3, kI32));

    std::mt19937 rng(9);
    const auto m = csc_from_coo(random_coo(rng, {20, 10}, 0.7, kI32));
    CHECK(csc_scalar_mul(m, value_from_int(1, kI32)) == m);
    CHECK_THROWS_AS(csc_scalar_mul(m, Value{}), std::invalid_argument);

    const auto doubled = csc_scalar_mul(m, value_from_int(2, kI32));
    const auto oracle = dense_scalar_mul(coo_to_dense(csc_to_coo(m)), value_from_int(2, kI32));
    CHECK(coo_to_dense(csc_to_coo(doubled)) == oracle);
}

TEST_CASE("csc spmv") {
    const auto eye = csc_from_coo(identity(2));
    const std::vector<Value> x{value_from_int(4, kI32), value_from_int(5, kI32)};
    CHECK(csc_spmv(eye, x) == x);

    const CscMatrix zero = csc_from_coo(CooMatrix{{3, 2}, kI32, {}});
    const auto y = csc_spmv(zero, std::vector<Value>(2, value_from_int(7, kI32)));
    CHECK(y == std::vector<Value>(3));

    CHECK_THROWS_AS(csc_spmv(eye, std::vector<Value>(3)), std::invalid_argument);

    std::mt19937 rng(13);
    for (ValueKind kind : all_value_kinds()) {
        const auto coo_m = random_coo(rng, {100, 20}, 0.9, kind);
        const auto xs = ivsk::testing::random_vector(rng, 20, kind);
        const auto got = csc_spmv(csc_from_coo(coo_m), xs);
        const auto want = dense_matvec(coo_to_dense(coo_m), xs);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) CHECK(values_close(got[i], want[i], kind));
    }
}

TEST_CASE("csc spmm") {
    std::mt19937 rng(17);
    const auto a = random_coo(rng, {12, 9}, 0.6, kI32);
    const auto csc = csc_from_coo(a);

    const auto eye_b = coo_to_dense(identity(9));
    CHECK(csc_spmm(csc, eye_b) == coo_to_dense(a));

    DenseMatrix zero_b{{9, 4}, kI32, std::vector<Value>(36)};
    const auto zero_c = csc_spmm(csc, zero_b);
    CHECK(zero_c.values == std::vector<Value>(12 * 4));

    CHECK_THROWS_AS(csc_spmm(csc, DenseMatrix{{5, 2}, kI32, std::vector<Value>(10)}),
                    std::invalid_argument);

    for (ValueKind kind : {kI32, ValueKind{4, NumericClass::Float}}) {
        const auto m = random_coo(rng, {15, 10}, 0.7, kind);
        DenseMatrix b{{10, 6}, kind, {}};
        b.values = ivsk::testing::random_vector(rng, 60, kind);
        const auto got = csc_spmm(csc_from_coo(m), b);
        const auto want = dense_matmul(coo_to_dense(m), b);
        REQUIRE(got.dims == want.dims);
        for (std::size_t i = 0; i < got.values.size(); ++i)
            CHECK(values_close(got.values[i], want.values[i], kind));
    }
}

TEST_CASE("csc byte size") {
    // Header-level arithmetic for two reference dataset shapes.
    CHECK(csc_size_model(1'300'000'000, 897'733, 2, 4) == 7'803'590'936ULL);
    CHECK(csc_size_model(25'000'000, 59'047, 4, 4) == 200'236'192ULL);

    const auto empty = csc_from_coo(CooMatrix{{3, 2}, kI32, {}});
    CHECK(csc_byte_size(empty) == 12);  // column pointers only

    std::mt19937 rng(23);
    const auto m = csc_from_coo(random_coo(rng, {30, 8}, 0.8, kI32));
    CHECK(csc_byte_size(m) == csc_size_model(m.nnz(), 8, 4, 4));
}

TEST_CASE("csc spmv against unit vectors reproduces dense columns") {
    std::mt19937 rng(29);
    const auto m = random_coo(rng, {9, 7}, 0.5, kI32);
    const auto csc = csc_from_coo(m);
    const auto dense = coo_to_dense(m);
    for (std::uint64_t j = 0; j < 7; ++j) {
        std::vector<Value> e(7);
        e[j] = value_from_int(1, kI32);
        const auto col = csc_spmv(csc, e);
        for (std::uint64_t r = 0; r < 9; ++r) CHECK(col[r] == dense.at(r, j));
    }
}
