// Copyright (c) tbacert contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tbacert/dbm.hpp"
#include "tbacert/model.hpp"
#include "tbacert/zone_graph.hpp"

namespace tbacert {

/// How a state covers another: plain zone inclusion, or inclusion in the
/// LU-simulation abstraction of the bigger zone.
enum class CoverMode { Inclusion, AlphaLu };

const char* mode_name(CoverMode mode);
std::optional<CoverMode> parse_mode(std::string_view name);

struct CertificateEntry {
  std::string location;
  Dbm zone{0};
  std::uint64_t numbering = 0;

  friend bool operator==(const CertificateEntry&, const CertificateEntry&) = default;
};

/// Finite set of (location, zone, numbering) triplets plus the cover mode.
/// Nothing is pre-validated; validation is check_certificate.
struct Certificate {
  CoverMode mode = CoverMode::Inclusion;
  std::vector<std::string> clock_names;
  std::vector<CertificateEntry> entries;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

enum class RejectionReason {
  EmptyZone,
  NotCanonical,
  InitialUncovered,
  SuccessorUncovered,
  NumberingViolation,
};

const char* reason_name(RejectionReason reason);

struct Rejection {
  std::optional<std::size_t> entry;  // nullopt: the initial-coverage check
  RejectionReason reason = RejectionReason::EmptyZone;
  std::optional<SymbolicState> witness;  // offending successor, if any
};

struct Verdict {
  bool accepted = false;
  std::vector<Rejection> rejections;  // accepted iff empty
};

/// Location-indexed view of a certificate: all entry indices per location in
/// input order, plus an exact-zone lookup used as a cover-search shortcut.
class CertificateIndex {
 public:
  explicit CertificateIndex(const Certificate& c);

  const std::vector<std::size_t>& entries_at(const std::string& location) const;
  /// Entry with the minimal numbering among entries equal to (location, zone).
  std::optional<std::size_t> exact_match(const std::string& location, const Dbm& zone) const;

 private:
  const Certificate* cert_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_location_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_state_;
  std::vector<std::size_t> empty_;
};

CertificateIndex index_certificate(const Certificate& c);

/// Per-entry part of the certificate check: every symbolic successor of the
/// entry must be covered by a same-location entry whose numbering is no
/// larger (strictly smaller when the entry's location is accepting).
std::vector<Rejection> check_entry(const TimedAutomaton& a, const LuBounds& lu,
                                   const Certificate& c, const CertificateIndex& index,
                                   std::size_t entry, CoverMode mode);

struct CheckOptions {
  std::optional<CoverMode> mode;  // defaults to the certificate's mode
  unsigned jobs = 0;              // 0: hardware concurrency
  bool fail_fast = false;
};

/// Full certificate check: screens every zone (non-empty, canonical), checks
/// that the initial state is covered, and runs check_entry over all entries
/// (in parallel, with a deterministic merged rejection list). Accepting the
/// certificate proves the automaton has no Büchi run.
/// Throws std::invalid_argument on clock-list mismatch or unknown locations.
Verdict check_certificate(const TimedAutomaton& a, const Certificate& c,
                          const CheckOptions& options = {});

}  // namespace tbacert
