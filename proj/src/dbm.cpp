// Copyright (c) tbacert contributors.
// SPDX-License-Identifier: Apache-2.0
#include "tbacert/dbm.hpp"

#include <stdexcept>

namespace tbacert {

std::size_t hash_value(const Dbm& z) {
  // FNV-1a over the entry stream.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(z.dim());
  for (std::size_t i = 0; i < z.dim(); ++i) {
    for (std::size_t j = 0; j < z.dim(); ++j) {
      const Bound& b = z.at(i, j);
      if (b.infinite) {
        mix(0x7fffffffffffffffull);
      } else {
        mix(static_cast<std::uint64_t>(b.value) * 2 + (b.strict ? 1 : 0));
      }
    }
  }
  return static_cast<std::size_t>(h);
}

Dbm zero_zone(std::size_t clock_count) { return Dbm(clock_count); }

Dbm canonicalize(Dbm z) {
  const std::size_t d = z.dim();
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t i = 0; i < d; ++i) {
      const Bound& ik = z.at(i, k);
      if (ik.infinite) continue;
      for (std::size_t j = 0; j < d; ++j) {
        const Bound& kj = z.at(k, j);
        if (kj.infinite) continue;
        Bound via = ik + kj;
        if (via < z.at(i, j)) z.at(i, j) = via;
      }
    }
  }
  return z;
}

namespace {

bool has_negative_diagonal(const Dbm& z) {
  for (std::size_t i = 0; i < z.dim(); ++i) {
    if (z.at(i, i) < Bound::le(0)) return true;
  }
  return false;
}

}  // namespace

bool is_empty(const Dbm& z) {
  if (has_negative_diagonal(z)) return true;
  if (is_canonical(z)) return false;
  return has_negative_diagonal(canonicalize(z));
}

bool is_canonical(const Dbm& z) {
  const std::size_t d = z.dim();
  for (std::size_t i = 0; i < d; ++i) {
    if (z.at(i, i) != Bound::le(0)) return false;
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      const Bound& ik = z.at(i, k);
      if (ik.infinite) continue;
      for (std::size_t j = 0; j < d; ++j) {
        const Bound& kj = z.at(k, j);
        if (kj.infinite) continue;
        if (ik + kj < z.at(i, j)) return false;
      }
    }
  }
  return true;
}

bool includes(const Dbm& z, const Dbm& bigger) {
  if (z.dim() != bigger.dim()) throw std::invalid_argument("includes: dimension mismatch");
  for (std::size_t i = 0; i < z.dim(); ++i) {
    for (std::size_t j = 0; j < z.dim(); ++j) {
      if (!(z.at(i, j) <= bigger.at(i, j))) return false;
    }
  }
  return true;
}

Dbm up(Dbm z) {
  for (std::size_t i = 1; i < z.dim(); ++i) z.at(i, 0) = Bound::inf();
  return z;
}

Dbm reset(Dbm z, const std::vector<std::uint32_t>& clocks) {
  const std::size_t d = z.dim();
  for (std::uint32_t c : clocks) {
    if (c + 1 >= d) throw std::invalid_argument("reset: clock index out of range");
  }
  for (std::uint32_t c : clocks) {
    const std::size_t x = c + 1;
    for (std::size_t j = 0; j < d; ++j) {
      z.at(x, j) = z.at(0, j);
      z.at(j, x) = z.at(j, 0);
    }
    z.at(x, x) = Bound::le(0);
    z.at(x, 0) = Bound::le(0);
    z.at(0, x) = Bound::le(0);
  }
  return canonicalize(std::move(z));
}

Dbm constrain(Dbm z, const std::vector<Atom>& atoms) {
  const std::size_t d = z.dim();
  auto tighten = [&z](std::size_t i, std::size_t j, Bound b) {
    if (b < z.at(i, j)) z.at(i, j) = b;
  };
  for (const Atom& a : atoms) {
    if (a.clock + 1 >= d) throw std::invalid_argument("constrain: clock index out of range");
    const std::size_t x = a.clock + 1;
    switch (a.op) {
      case AtomOp::Lt:
        tighten(x, 0, Bound::lt(a.constant));
        break;
      case AtomOp::Le:
        tighten(x, 0, Bound::le(a.constant));
        break;
      case AtomOp::Eq:
        tighten(x, 0, Bound::le(a.constant));
        tighten(0, x, Bound::le(-a.constant));
        break;
      case AtomOp::Ge:
        tighten(0, x, Bound::le(-a.constant));
        break;
      case AtomOp::Gt:
        tighten(0, x, Bound::lt(-a.constant));
        break;
    }
  }
  return canonicalize(std::move(z));
}

namespace {

void require_lu_dim(const Dbm& z, const LuBounds& lu) {
  if (lu.lower.size() < z.clock_count() || lu.upper.size() < z.clock_count())
    throw std::invalid_argument("LU bounds do not cover every clock");
}

// value > bound, where nullopt encodes -infinity.
bool exceeds(std::int64_t value, const std::optional<std::int64_t>& bound) {
  return !bound.has_value() || value > *bound;
}

// Lower bound of x_i recorded in row 0, as "lb > threshold". An infinite
// (0,i) entry means the lower bound is -infinity and never exceeds anything.
bool lower_bound_exceeds(const Bound& row0, const std::optional<std::int64_t>& threshold) {
  if (row0.infinite) return false;
  return exceeds(-row0.value, threshold);
}

}  // namespace

Dbm extra_lu_plus(Dbm z, const LuBounds& lu) {
  require_lu_dim(z, lu);
  const Dbm src = z;  // rules read the untouched input
  const std::size_t d = z.dim();
  auto lower_of = [&lu](std::size_t i) -> std::optional<std::int64_t> {
    return i == 0 ? std::optional<std::int64_t>(0) : lu.lower[i - 1];
  };
  auto upper_of = [&lu](std::size_t j) -> std::optional<std::int64_t> {
    return j == 0 ? std::optional<std::int64_t>(0) : lu.upper[j - 1];
  };
  for (std::size_t i = 0; i < d; ++i) {
    const std::optional<std::int64_t> li = lower_of(i);
    for (std::size_t j = 0; j < d; ++j) {
      if (i == j) continue;
      const Bound& b = src.at(i, j);
      if (b.infinite) continue;
      const std::optional<std::int64_t> uj = upper_of(j);
      if (exceeds(b.value, li)) {
        z.at(i, j) = Bound::inf();
      } else if (lower_bound_exceeds(src.at(0, i), li)) {
        z.at(i, j) = Bound::inf();
      } else if (i != 0 && lower_bound_exceeds(src.at(0, j), uj)) {
        z.at(i, j) = Bound::inf();
      } else if (i == 0 && lower_bound_exceeds(src.at(0, j), uj)) {
        z.at(0, j) = uj.has_value() ? Bound::lt(-*uj) : Bound::inf();
      }
    }
  }
  return canonicalize(std::move(z));
}

bool subsumes_alpha_lu(const Dbm& z, const Dbm& bigger, const LuBounds& lu) {
  if (z.dim() != bigger.dim())
    throw std::invalid_argument("subsumes_alpha_lu: dimension mismatch");
  require_lu_dim(z, lu);
  const std::size_t d = z.dim();
  // Z not included in aLU(Z') iff there are x, y in 0..n, y != x, with
  //   (1) Z(0,x) >= (<=, -U(x))   (U(0) = 0, so trivial for x = 0)
  //   (2) Z'(y,x) < Z(y,x)
  //   (3) y != 0  implies  Z'(y,x) + (<, -L(y)) < Z(0,x)
  for (std::size_t x = 0; x < d; ++x) {
    if (x != 0) {
      const std::optional<std::int64_t> ux = lu.upper[x - 1];
      if (!ux.has_value()) continue;  // (<=, -U) infinite, condition (1) unsatisfiable
      if (z.at(0, x) < Bound::le(-*ux)) continue;
    }
    for (std::size_t y = 0; y < d; ++y) {
      if (y == x) continue;
      if (!(bigger.at(y, x) < z.at(y, x))) continue;
      if (y != 0) {
        const std::optional<std::int64_t> ly = lu.lower[y - 1];
        if (!ly.has_value()) continue;  // (<, -L) infinite, condition (3) unsatisfiable
        if (bigger.at(y, x).infinite) continue;
        if (!(bigger.at(y, x) + Bound::lt(-*ly) < z.at(0, x))) continue;
      }
      return false;
    }
  }
  return true;
}

}  // namespace tbacert
