// Copyright (c) tbacert contributors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tbacert/dbm.hpp"
#include "test_support.hpp"

using namespace tbacert;
namespace ts = tbacert::test;

namespace {

constexpr std::int64_t kMaxConst = 4;

LuBounds uniform_lu(std::size_t clocks, std::optional<std::int64_t> l,
                    std::optional<std::int64_t> u) {
  LuBounds lu;
  lu.lower.assign(clocks, l);
  lu.upper.assign(clocks, u);
  return lu;
}

Dbm random_raw_dbm(std::mt19937& rng, std::size_t clocks) {
  Dbm z(clocks);
  for (std::size_t i = 0; i < z.dim(); ++i) {
    for (std::size_t j = 0; j < z.dim(); ++j) {
      if (i == j) continue;
      switch (ts::rand_int(rng, 0, 2)) {
        case 0: z.at(i, j) = Bound::inf(); break;
        case 1: z.at(i, j) = Bound::le(ts::rand_int(rng, -kMaxConst, kMaxConst)); break;
        default: z.at(i, j) = Bound::lt(ts::rand_int(rng, -kMaxConst, kMaxConst)); break;
      }
    }
  }
  return z;
}

}  // namespace

TEST_CASE("bound ordering and addition") {
  CHECK(Bound::lt(3) < Bound::le(3));
  CHECK(Bound::le(3) < Bound::le(4));
  CHECK(Bound::le(4) < Bound::inf());
  CHECK(Bound::inf() + Bound::le(-7) == Bound::inf());
  CHECK(Bound::le(2) + Bound::lt(3) == Bound::lt(5));
  CHECK(Bound::le(2) + Bound::le(3) == Bound::le(5));
}

TEST_CASE("zero zone") {
  const Dbm z1 = zero_zone(1);
  CHECK(z1.dim() == 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(z1.at(i, j) == Bound::le(0));
  CHECK(zero_zone(0).dim() == 1);
  CHECK(ts::zone_contains(z1, {0}));
  CHECK_FALSE(ts::zone_contains(z1, {2}));  // x = 0.5
  CHECK(is_canonical(z1));
  CHECK_FALSE(is_empty(z1));
}

TEST_CASE("canonicalize derives transitive bounds") {
  // x <= 3 and y - x <= 2 imply y <= 5.
  Dbm z = ts::universal(2);
  z.at(1, 0) = Bound::le(3);
  z.at(2, 1) = Bound::le(2);
  z.at(0, 1) = Bound::le(0);
  z.at(0, 2) = Bound::le(0);
  const Dbm closed = canonicalize(z);
  CHECK(closed.at(2, 0) == Bound::le(5));
  CHECK(canonicalize(closed) == closed);
}

TEST_CASE("canonicalize flags contradictions with a negative diagonal") {
  // x >= 1 and x < 1
  Dbm z = ts::universal(1);
  z.at(0, 1) = Bound::le(-1);
  z.at(1, 0) = Bound::lt(1);
  const Dbm closed = canonicalize(z);
  bool negative = false;
  for (std::size_t i = 0; i < closed.dim(); ++i) negative |= closed.at(i, i) < Bound::le(0);
  CHECK(negative);
  CHECK(is_empty(closed));
  CHECK(is_empty(z));  // emptiness also decided pre-closure
}

TEST_CASE("is_empty on a point zone") {
  const Dbm z = constrain(up(zero_zone(1)), {Atom{0, AtomOp::Eq, 2}});
  CHECK_FALSE(is_empty(z));
  CHECK(ts::zone_contains(z, {8}));
}

TEST_CASE("is_canonical spots missing derived bounds") {
  Dbm z = ts::universal(2);
  z.at(1, 0) = Bound::le(3);
  z.at(2, 1) = Bound::le(2);
  z.at(0, 1) = Bound::le(0);
  z.at(0, 2) = Bound::le(0);
  CHECK_FALSE(is_canonical(z));  // y <= 5 is implied but absent
  CHECK(is_canonical(canonicalize(z)));
}

TEST_CASE("includes on one-clock zones") {
  const Dbm ge1 = ts::lower_bound_zone(1);
  const Dbm ge0 = ts::lower_bound_zone(0);
  const Dbm ge2 = ts::lower_bound_zone(2);
  CHECK(includes(ge1, ge0));
  CHECK(includes(ge1, ge1));
  CHECK_FALSE(includes(ge0, ge2));
  CHECK_THROWS_AS(includes(ge0, zero_zone(2)), std::invalid_argument);
}

TEST_CASE("up examples") {
  const Dbm from_origin = up(zero_zone(1));
  CHECK(from_origin == ts::lower_bound_zone(0));
  const Dbm point = constrain(up(zero_zone(1)), {Atom{0, AtomOp::Eq, 2}});
  CHECK(up(point) == ts::lower_bound_zone(2));
  CHECK(up(ts::lower_bound_zone(1)) == ts::lower_bound_zone(1));
}

TEST_CASE("reset examples") {
  const Dbm ge5 = ts::lower_bound_zone(5);
  CHECK(reset(ge5, {0}) == zero_zone(1));
  CHECK(reset(ge5, {}) == ge5);
  // x >= 1 and y - x <= 0 (so 0 <= y <= x); resetting x frees y entirely.
  Dbm z = ts::universal(2);
  z.at(0, 1) = Bound::le(0);
  z.at(0, 2) = Bound::le(0);
  z.at(2, 1) = Bound::le(0);
  z = constrain(std::move(z), {Atom{0, AtomOp::Ge, 1}});
  const Dbm r = reset(z, {0});
  CHECK(r.at(1, 0) == Bound::le(0));   // x = 0
  CHECK(r.at(0, 1) == Bound::le(0));
  CHECK(r.at(2, 0) == Bound::inf());   // y unbounded above
  CHECK(r.at(0, 2) == Bound::le(0));   // y >= 0
  CHECK_THROWS_AS(reset(ge5, {3}), std::invalid_argument);
}

TEST_CASE("constrain examples") {
  const Dbm ge0 = ts::lower_bound_zone(0);
  CHECK(constrain(ge0, {Atom{0, AtomOp::Ge, 1}}) == ts::lower_bound_zone(1));
  CHECK(constrain(ge0, {}) == ge0);
  CHECK(is_empty(constrain(ts::lower_bound_zone(2), {Atom{0, AtomOp::Lt, 2}})));
  CHECK_THROWS_AS(constrain(ge0, {Atom{5, AtomOp::Le, 1}}), std::invalid_argument);
}

TEST_CASE("extra_lu_plus frozen examples") {
  const LuBounds lu = uniform_lu(1, 2, 2);
  CHECK(extra_lu_plus(ts::lower_bound_zone(5), lu) == ts::lower_bound_zone(2, true));
  CHECK(extra_lu_plus(ts::lower_bound_zone(1), lu) == ts::lower_bound_zone(1));
  CHECK(extra_lu_plus(zero_zone(1), lu) == zero_zone(1));
  LuBounds missing;
  CHECK_THROWS_AS(extra_lu_plus(zero_zone(1), missing), std::invalid_argument);
}

TEST_CASE("subsumes_alpha_lu frozen examples") {
  const LuBounds lu = uniform_lu(1, 2, 2);
  const Dbm ge3 = ts::lower_bound_zone(3);
  const Dbm eq5 = constrain(up(zero_zone(1)), {Atom{0, AtomOp::Eq, 5}});
  CHECK(subsumes_alpha_lu(ge3, eq5, lu));
  CHECK_FALSE(subsumes_alpha_lu(ts::lower_bound_zone(0), ts::lower_bound_zone(2), lu));
  CHECK(subsumes_alpha_lu(ts::lower_bound_zone(1), ts::lower_bound_zone(0), lu));
  CHECK_THROWS_AS(subsumes_alpha_lu(ge3, zero_zone(2), lu), std::invalid_argument);
}

TEST_CASE("canonicalize: idempotent, preserves the valuation grid") {
  std::mt19937 rng(20240811);
  for (int round = 0; round < 400; ++round) {
    const std::size_t clocks = static_cast<std::size_t>(ts::rand_int(rng, 1, 3));
    const Dbm raw = random_raw_dbm(rng, clocks);
    const Dbm closed = canonicalize(raw);
    if (!is_empty(closed)) {
      REQUIRE(canonicalize(closed) == closed);
      REQUIRE(is_canonical(closed));
    }
    ts::for_each_grid(clocks, 4 * (kMaxConst + 1), 2, [&](const std::vector<TimeQ>& v) {
      REQUIRE(ts::zone_contains(raw, v) == ts::zone_contains(closed, v));
    });
  }
}

TEST_CASE("includes is a partial order on canonical non-empty zones") {
  std::mt19937 rng(7);
  for (int round = 0; round < 400; ++round) {
    const std::size_t clocks = static_cast<std::size_t>(ts::rand_int(rng, 1, 3));
    const Dbm a = ts::random_zone(rng, clocks, kMaxConst);
    const Dbm b = ts::random_zone(rng, clocks, kMaxConst);
    const Dbm c = ts::random_zone(rng, clocks, kMaxConst);
    REQUIRE(includes(a, a));
    if (includes(a, b) && includes(b, c)) REQUIRE(includes(a, c));
    if (includes(a, b) && includes(b, a)) REQUIRE(a == b);
  }
}

TEST_CASE("up/reset/constrain agree with the valuation semantics on the grid") {
  std::mt19937 rng(99);
  for (int round = 0; round < 350; ++round) {
    const std::size_t clocks = static_cast<std::size_t>(ts::rand_int(rng, 1, 2));
    const Dbm z = ts::random_zone(rng, clocks, kMaxConst);
    const Dbm delayed = up(z);
    REQUIRE(is_canonical(delayed));

    std::vector<std::uint32_t> resets;
    for (std::uint32_t c = 0; c < clocks; ++c)
      if (ts::rand_int(rng, 0, 1) == 0) resets.push_back(c);
    const Dbm after_reset = reset(z, resets);
    REQUIRE(is_canonical(after_reset));

    std::vector<Atom> atoms;
    for (int k = 0; k < 2; ++k) {
      atoms.push_back(Atom{static_cast<std::uint32_t>(ts::rand_int(rng, 0, clocks - 1)),
                           static_cast<AtomOp>(ts::rand_int(rng, 0, 4)),
                           ts::rand_int(rng, 0, kMaxConst)});
    }
    const Dbm constrained = constrain(z, atoms);

    ts::for_each_grid(clocks, 4 * (kMaxConst + 1), 1, [&](const std::vector<TimeQ>& v) {
      REQUIRE(ts::zone_contains(delayed, v) == ts::up_member_oracle(z, v));
      REQUIRE(ts::zone_contains(after_reset, v) == ts::reset_member_oracle(z, resets, v));
      REQUIRE(ts::zone_contains(constrained, v) ==
              (ts::zone_contains(z, v) && ts::atoms_hold(atoms, v)));
      // Delay soundness: every grid delay of a member stays in up(z).
      if (ts::zone_contains(z, v)) {
        std::vector<TimeQ> shifted = v;
        for (TimeQ& q : shifted) q += 3;
        REQUIRE(ts::zone_contains(delayed, shifted));
      }
    });
  }
}

TEST_CASE("extra_lu_plus grows the zone and is idempotent") {
  std::mt19937 rng(1234);
  for (int round = 0; round < 1000; ++round) {
    const std::size_t clocks = static_cast<std::size_t>(ts::rand_int(rng, 1, 3));
    const Dbm z = ts::random_zone(rng, clocks, kMaxConst);
    const LuBounds lu = ts::random_lu(rng, clocks, kMaxConst);
    const Dbm wide = extra_lu_plus(z, lu);
    REQUIRE(is_canonical(wide));
    REQUIRE(includes(z, wide));
    REQUIRE(extra_lu_plus(wide, lu) == wide);
  }
}

TEST_CASE("subsumes_alpha_lu matches the grid oracle") {
  std::mt19937 rng(4242);
  int positives = 0;
  for (int round = 0; round < 400; ++round) {
    const std::size_t clocks = static_cast<std::size_t>(ts::rand_int(rng, 1, 2));
    const Dbm z = ts::random_zone(rng, clocks, kMaxConst);
    const Dbm big = ts::random_zone(rng, clocks, kMaxConst);
    const LuBounds lu = ts::random_lu(rng, clocks, kMaxConst);
    const bool direct = subsumes_alpha_lu(z, big, lu);
    if (direct) ++positives;
    REQUIRE(direct == ts::alpha_lu_subsumption_oracle(z, big, lu, kMaxConst));
    if (includes(z, big)) REQUIRE(direct);
  }
  CHECK(positives > 10);  // the sample must exercise both outcomes
}

TEST_CASE("alpha-lu subsumption is preserved by shared transitions") {
  std::mt19937 rng(31337);
  int checked = 0;
  while (checked < 220) {
    const std::size_t clocks = static_cast<std::size_t>(ts::rand_int(rng, 1, 2));
    const LuBounds lu = ts::random_lu(rng, clocks, kMaxConst);
    Dbm big = ts::random_zone(rng, clocks, kMaxConst);
    Dbm small = ts::rand_int(rng, 0, 1) == 0
                    ? constrain(big, {Atom{static_cast<std::uint32_t>(
                                               ts::rand_int(rng, 0, clocks - 1)),
                                           static_cast<AtomOp>(ts::rand_int(rng, 0, 4)),
                                           ts::rand_int(rng, 0, kMaxConst)}})
                    : ts::random_zone(rng, clocks, kMaxConst);
    if (is_empty(small)) continue;
    if (!subsumes_alpha_lu(small, big, lu)) continue;

    // Shared transition: guard, resets, trailing delay.
    std::vector<Atom> guard;
    if (ts::rand_int(rng, 0, 1) == 0) {
      guard.push_back(Atom{static_cast<std::uint32_t>(ts::rand_int(rng, 0, clocks - 1)),
                           static_cast<AtomOp>(ts::rand_int(rng, 0, 4)),
                           ts::rand_int(rng, 0, kMaxConst)});
    }
    std::vector<std::uint32_t> resets;
    for (std::uint32_t c = 0; c < clocks; ++c)
      if (ts::rand_int(rng, 0, 2) == 0) resets.push_back(c);

    // Transition = delay, then guard, then resets.
    const Dbm post_small_guard = constrain(up(small), guard);
    if (is_empty(post_small_guard)) continue;
    const Dbm post_small = reset(post_small_guard, resets);
    const Dbm post_big_guard = constrain(up(big), guard);
    REQUIRE_FALSE(is_empty(post_big_guard));  // simulation keeps the step enabled
    const Dbm post_big = reset(post_big_guard, resets);
    REQUIRE(subsumes_alpha_lu(post_small, post_big, lu));
    REQUIRE(subsumes_alpha_lu(up(post_small), up(post_big), lu));
    ++checked;
  }
}
