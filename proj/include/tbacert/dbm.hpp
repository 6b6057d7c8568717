// Copyright (c) tbacert contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace tbacert {

/// One entry of a difference bound matrix: unbounded, or a constraint
/// "difference < value" (strict) / "difference <= value" (weak).
///
/// Total order: INF is maximal; (rel,c) < (rel',c') iff c < c', or c = c'
/// with rel strict and rel' weak. Addition: INF absorbs; finite bounds add
/// their values and the sum is strict iff either operand is.
struct Bound {
  std::int64_t value = 0;
  bool strict = false;
  bool infinite = false;

  static constexpr Bound inf() { return Bound{0, false, true}; }
  static constexpr Bound le(std::int64_t v) { return Bound{v, false, false}; }
  static constexpr Bound lt(std::int64_t v) { return Bound{v, true, false}; }

  friend constexpr bool operator==(const Bound& a, const Bound& b) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite;
    return a.value == b.value && a.strict == b.strict;
  }
  friend constexpr bool operator!=(const Bound& a, const Bound& b) { return !(a == b); }
  friend constexpr bool operator<(const Bound& a, const Bound& b) {
    if (a.infinite) return false;
    if (b.infinite) return true;
    return a.value < b.value || (a.value == b.value && a.strict && !b.strict);
  }
  friend constexpr bool operator<=(const Bound& a, const Bound& b) { return !(b < a); }
  friend constexpr bool operator>(const Bound& a, const Bound& b) { return b < a; }
  friend constexpr bool operator>=(const Bound& a, const Bound& b) { return !(a < b); }

  friend constexpr Bound operator+(const Bound& a, const Bound& b) {
    if (a.infinite || b.infinite) return inf();
    return Bound{a.value + b.value, a.strict || b.strict, false};
  }
};

/// Difference bound matrix over clocks x_1..x_n plus the reference x_0 = 0.
/// Entry (i,j) bounds x_i - x_j. Value semantics; operations below return
/// fresh matrices and never mutate their inputs.
class Dbm {
 public:
  /// All entries (<=,0): the zone {v | v(x) = 0 for all x}.
  explicit Dbm(std::size_t clock_count)
      : dim_(clock_count + 1), entries_(dim_ * dim_, Bound::le(0)) {}

  std::size_t clock_count() const { return dim_ - 1; }
  std::size_t dim() const { return dim_; }

  Bound& at(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
  const Bound& at(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }

  friend bool operator==(const Dbm& a, const Dbm& b) {
    return a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }
  friend bool operator!=(const Dbm& a, const Dbm& b) { return !(a == b); }

 private:
  std::size_t dim_;
  std::vector<Bound> entries_;
};

std::size_t hash_value(const Dbm& z);

/// Atomic clock constraint x # c with a non-diagonal operator.
enum class AtomOp { Lt, Le, Eq, Ge, Gt };

struct Atom {
  std::uint32_t clock = 0;  // 0-based clock index
  AtomOp op = AtomOp::Le;
  std::int64_t constant = 0;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Per-clock maxima of lower-bound (>,>=,=) and upper-bound (<,<=,=)
/// comparison constants; nullopt encodes -infinity (clock never compared).
struct LuBounds {
  std::vector<std::optional<std::int64_t>> lower;
  std::vector<std::optional<std::int64_t>> upper;
};

/// Canonical DBM of the zone {v | v(x) = 0 for all x}.
Dbm zero_zone(std::size_t clock_count);

/// All-pairs shortest-path closure. Preserves the valuation set and is
/// idempotent on non-empty inputs; an inconsistent input closes to a matrix
/// with a negative diagonal entry.
Dbm canonicalize(Dbm z);

/// True iff the valuation set is empty. Correct on arbitrary (also
/// non-canonical) input; closes a copy when the diagonal is inconclusive.
bool is_empty(const Dbm& z);

/// True iff every diagonal entry is exactly (<=,0) and the triangle
/// inequality holds for every (i,k,j).
bool is_canonical(const Dbm& z);

/// Zone inclusion, entrywise on canonical DBMs. Throws on dimension mismatch.
bool includes(const Dbm& z, const Dbm& bigger);

/// Delay closure {v + d | v in Z, d >= 0}: upper bounds (i,0) dropped.
/// Preserves canonical form.
Dbm up(Dbm z);

/// {v[R := 0] | v in Z}. Throws on an out-of-range clock.
Dbm reset(Dbm z, const std::vector<std::uint32_t>& clocks);

/// Intersection with a conjunction of atoms, re-canonicalized. May be empty.
Dbm constrain(Dbm z, const std::vector<Atom>& atoms);

/// Extra_LU+ extrapolation, re-canonicalized. Grows the zone and is
/// idempotent. Throws if lu does not cover every clock.
Dbm extra_lu_plus(Dbm z, const LuBounds& lu);

/// Direct check of Z ⊆ α_≺LU(Z') on the two DBMs, without computing the
/// abstraction. Both inputs canonical and non-empty.
bool subsumes_alpha_lu(const Dbm& z, const Dbm& bigger, const LuBounds& lu);

}  // namespace tbacert
