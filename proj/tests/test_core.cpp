#include <doctest.h>

#include <stdexcept>
#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "ivsk/core.hpp"

using namespace ivsk;
using ivsk::testing::all_value_kinds;
using ivsk::testing::random_coo;

namespace {

const ValueKind kI32{4, NumericClass::SignedInt};

Triplet t(std::uint64_t r, std::uint64_t c, std::int64_t v, ValueKind kind = kI32) {
    return {r, c, value_from_int(v, kind)};
}

}  // namespace

TEST_CASE("value kind validation") {
    CHECK_NOTHROW(validate_value_kind({4, NumericClass::Float}));
    CHECK_THROWS_AS(validate_value_kind({2, NumericClass::Float}), std::invalid_argument);
    CHECK_THROWS_AS(validate_value_kind({3, NumericClass::SignedInt}), std::invalid_argument);
    for (ValueKind kind : all_value_kinds())
        CHECK(parse_value_kind(value_kind_name(kind)) == kind);
    CHECK_THROWS_AS(parse_value_kind("q7"), std::invalid_argument);
}

TEST_CASE("value ordering and representability") {
    const ValueKind i8{1, NumericClass::SignedInt};
    CHECK(value_less(value_from_int(-3, i8), value_from_int(2, i8), i8));
    CHECK_FALSE(value_less(value_from_int(2, i8), value_from_int(-3, i8), i8));
    CHECK_THROWS_AS(value_from_int(200, i8), std::out_of_range);
    CHECK_THROWS_AS(value_from_int(-1, {1, NumericClass::UnsignedInt}), std::out_of_range);

    const ValueKind f32{4, NumericClass::Float};
    CHECK(value_less(value_from_double(-0.5, f32), value_from_double(0.25, f32), f32));
    CHECK(value_is_zero(value_from_double(-0.0, f32), f32));  // negative zero is zero
    CHECK_THROWS_AS(value_from_double(2.5, kI32), std::out_of_range);
}

TEST_CASE("integer arithmetic wraps, floats follow IEEE") {
    const ValueKind u8{1, NumericClass::UnsignedInt};
    CHECK(value_add(value_from_int(200, u8), value_from_int(100, u8), u8) ==
          value_from_int(44, u8));
    CHECK(value_mul(value_from_int(16, u8), value_from_int(16, u8), u8) == Value{0});
    const ValueKind f64{8, NumericClass::Float};
    CHECK(value_to_double(value_mul(value_from_double(0.5, f64), value_from_double(3.0, f64), f64),
                          f64) == doctest::Approx(1.5));
}

TEST_CASE("canonicalize_coo sums duplicates") {
    const auto m = canonicalize_coo({t(0, 0, 5), t(0, 0, 3)}, {1, 1}, kI32);
    REQUIRE(m.triplets.size() == 1);
    CHECK(m.triplets[0] == t(0, 0, 8));
}

TEST_CASE("canonicalize_coo drops explicit zeros") {
    CHECK(canonicalize_coo({t(2, 1, 0)}, {3, 2}, kI32).triplets.empty());
    // Entries that cancel under summation vanish too.
    CHECK(canonicalize_coo({t(1, 1, 4), t(1, 1, -4)}, {2, 2}, kI32).triplets.empty());
}

TEST_CASE("canonicalize_coo sorts by (col, row)") {
    const auto m = canonicalize_coo({t(3, 0, 2), t(1, 0, 7)}, {4, 1}, kI32);
    REQUIRE(m.triplets.size() == 2);
    CHECK(m.triplets[0] == t(1, 0, 7));
    CHECK(m.triplets[1] == t(3, 0, 2));
}

TEST_CASE("canonicalize_coo error paths") {
    CHECK_THROWS_AS(canonicalize_coo({t(5, 0, 1)}, {2, 2}, kI32), std::out_of_range);
    CHECK_THROWS_AS(canonicalize_coo({t(0, 0, 1), t(0, 0, 2)}, {2, 2}, kI32,
                                     DuplicatePolicy::Reject),
                    std::invalid_argument);
    CHECK_THROWS_AS(canonicalize_coo({}, {0, 3}, kI32), std::invalid_argument);
}

TEST_CASE("canonicalize_coo is idempotent and permutation invariant") {
    std::mt19937 rng(7);
    auto coo = random_coo(rng, {20, 10}, 0.7, kI32);
    const auto again = canonicalize_coo(coo.triplets, coo.dims, coo.value_kind);
    CHECK(coo_equal(coo, again));

    auto shuffled = coo.triplets;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(coo_equal(coo, canonicalize_coo(shuffled, coo.dims, coo.value_kind)));
}

TEST_CASE("coo_to_dense") {
    CHECK(coo_to_dense({{2, 2}, kI32, {}}).values == std::vector<Value>(4));

    const auto m = canonicalize_coo({t(1, 0, 9)}, {2, 1}, kI32);
    const auto d = coo_to_dense(m);
    CHECK(d.at(0, 0) == Value{});
    CHECK(d.at(1, 0) == value_from_int(9, kI32));

    const auto eye = canonicalize_coo({t(0, 0, 1), t(1, 1, 1)}, {2, 2}, kI32);
    const auto de = coo_to_dense(eye);
    CHECK(de.at(0, 0) == value_from_int(1, kI32));
    CHECK(de.at(1, 1) == value_from_int(1, kI32));
    CHECK(de.at(0, 1) == Value{});
}

TEST_CASE("dense_to_coo inverts coo_to_dense") {
    std::mt19937 rng(11);
    for (ValueKind kind : all_value_kinds()) {
        const auto coo = random_coo(rng, {15, 8}, 0.6, kind);
        CHECK(coo_equal(coo, dense_to_coo(coo_to_dense(coo))));
    }
}

TEST_CASE("coo_equal") {
    std::mt19937 rng(3);
    const auto m = random_coo(rng, {10, 10}, 0.8, kI32);
    CHECK(coo_equal(m, m));
    const auto zero = CooMatrix{{2, 2}, kI32, {}};
    const auto eye = canonicalize_coo({t(0, 0, 1), t(1, 1, 1)}, {2, 2}, kI32);
    CHECK_FALSE(coo_equal(eye, zero));
    CHECK_THROWS_AS(coo_equal(eye, CooMatrix{{2, 2}, {8, NumericClass::Float}, {}}),
                    std::invalid_argument);
}
