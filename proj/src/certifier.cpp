// Copyright (c) tbacert contributors.
// SPDX-License-Identifier: Apache-2.0
#include "tbacert/certifier.hpp"

#include <atomic>
#include <stdexcept>
#include <thread>

namespace tbacert {

const char* mode_name(CoverMode mode) {
  return mode == CoverMode::Inclusion ? "inclusion" : "alpha-lu";
}

std::optional<CoverMode> parse_mode(std::string_view name) {
  if (name == "inclusion") return CoverMode::Inclusion;
  if (name == "alpha-lu") return CoverMode::AlphaLu;
  return std::nullopt;
}

const char* reason_name(RejectionReason reason) {
  switch (reason) {
    case RejectionReason::EmptyZone: return "empty-zone";
    case RejectionReason::NotCanonical: return "not-canonical";
    case RejectionReason::InitialUncovered: return "initial-uncovered";
    case RejectionReason::SuccessorUncovered: return "successor-uncovered";
    case RejectionReason::NumberingViolation: return "numbering-violation";
  }
  return "?";
}

namespace {

std::uint64_t state_key(const std::string& location, const Dbm& zone) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : location) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  h ^= hash_value(zone);
  h *= 1099511628211ull;
  return h;
}

bool covers(CoverMode mode, const Dbm& small, const Dbm& big, const LuBounds& lu) {
  return mode == CoverMode::Inclusion ? includes(small, big) : subsumes_alpha_lu(small, big, lu);
}

}  // namespace

CertificateIndex::CertificateIndex(const Certificate& c) : cert_(&c) {
  for (std::size_t i = 0; i < c.entries.size(); ++i) {
    const CertificateEntry& e = c.entries[i];
    by_location_[e.location].push_back(i);
    auto& exact = by_state_[state_key(e.location, e.zone)];
    // Keep only the minimal-numbering representative per exact state.
    bool replaced = false;
    for (std::size_t& candidate : exact) {
      const CertificateEntry& other = c.entries[candidate];
      if (other.location == e.location && other.zone == e.zone) {
        if (e.numbering < other.numbering) candidate = i;
        replaced = true;
        break;
      }
    }
    if (!replaced) exact.push_back(i);
  }
}

const std::vector<std::size_t>& CertificateIndex::entries_at(const std::string& location) const {
  auto it = by_location_.find(location);
  return it == by_location_.end() ? empty_ : it->second;
}

std::optional<std::size_t> CertificateIndex::exact_match(const std::string& location,
                                                         const Dbm& zone) const {
  auto it = by_state_.find(state_key(location, zone));
  if (it == by_state_.end()) return std::nullopt;
  for (std::size_t candidate : it->second) {
    const CertificateEntry& e = cert_->entries[candidate];
    if (e.location == location && e.zone == zone) return candidate;
  }
  return std::nullopt;
}

CertificateIndex index_certificate(const Certificate& c) { return CertificateIndex(c); }

std::vector<Rejection> check_entry(const TimedAutomaton& a, const LuBounds& lu,
                                   const Certificate& c, const CertificateIndex& index,
                                   std::size_t entry, CoverMode mode) {
  std::vector<Rejection> rejections;
  const CertificateEntry& e = c.entries[entry];
  const auto location = a.location_index(e.location);
  if (!location) throw std::invalid_argument("certificate names unknown location " + e.location);
  const bool accepting = a.accepting(*location);
  const std::uint64_t i = e.numbering;

  auto satisfies = [&](std::uint64_t j) { return accepting ? i > j : i >= j; };

  for (const Successor& succ : successors(a, SymbolicState{*location, e.zone})) {
    const std::string& target = a.locations[succ.state.location].name;
    if (const auto exact = index.exact_match(target, succ.state.zone);
        exact && satisfies(c.entries[*exact].numbering)) {
      continue;
    }
    bool covered = false;
    bool cover_exists = false;
    for (std::size_t candidate : index.entries_at(target)) {
      const CertificateEntry& cover = c.entries[candidate];
      if (cover.zone.dim() != succ.state.zone.dim()) continue;
      if (!covers(mode, succ.state.zone, cover.zone, lu)) continue;
      cover_exists = true;
      if (satisfies(cover.numbering)) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      rejections.push_back({entry,
                            cover_exists ? RejectionReason::NumberingViolation
                                         : RejectionReason::SuccessorUncovered,
                            succ.state});
    }
  }
  return rejections;
}

Verdict check_certificate(const TimedAutomaton& a, const Certificate& c,
                          const CheckOptions& options) {
  if (c.clock_names != a.clocks)
    throw std::invalid_argument("certificate clock list does not match the model");
  for (const CertificateEntry& e : c.entries) {
    if (e.zone.clock_count() != a.clocks.size())
      throw std::invalid_argument("certificate zone dimension does not match the model");
    if (!a.location_index(e.location))
      throw std::invalid_argument("certificate names unknown location " + e.location);
  }

  const CoverMode mode = options.mode.value_or(c.mode);
  const LuBounds lu = compute_lu(a);
  const CertificateIndex index(c);

  unsigned jobs = options.jobs != 0 ? options.jobs : std::thread::hardware_concurrency();
  if (jobs == 0) jobs = 1;
  if (c.entries.size() < jobs) jobs = static_cast<unsigned>(std::max<std::size_t>(c.entries.size(), 1));

  std::atomic<bool> stop{false};
  // Screening and per-entry rejections, slot per entry for a deterministic merge.
  std::vector<std::vector<Rejection>> per_entry(c.entries.size());
  std::vector<char> screened_ok(c.entries.size(), 0);

  auto screen_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end && !stop.load(std::memory_order_relaxed); ++idx) {
      const CertificateEntry& e = c.entries[idx];
      if (is_empty(e.zone)) {
        per_entry[idx].push_back({idx, RejectionReason::EmptyZone, std::nullopt});
        if (options.fail_fast) stop.store(true, std::memory_order_relaxed);
      } else if (!is_canonical(e.zone)) {
        per_entry[idx].push_back({idx, RejectionReason::NotCanonical, std::nullopt});
        if (options.fail_fast) stop.store(true, std::memory_order_relaxed);
      } else {
        screened_ok[idx] = 1;
      }
    }
  };
  auto check_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end && !stop.load(std::memory_order_relaxed); ++idx) {
      if (!screened_ok[idx]) continue;
      auto rejections = check_entry(a, lu, c, index, idx, mode);
      if (!rejections.empty() && options.fail_fast) stop.store(true, std::memory_order_relaxed);
      per_entry[idx] = std::move(rejections);
    }
  };

  auto run_parallel = [&](auto&& body) {
    if (jobs == 1 || c.entries.size() <= 1) {
      body(0, c.entries.size());
      return;
    }
    std::vector<std::thread> workers;
    const std::size_t chunk = (c.entries.size() + jobs - 1) / jobs;
    for (unsigned t = 0; t < jobs; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(c.entries.size(), begin + chunk);
      if (begin >= end) break;
      workers.emplace_back([&body, begin, end] { body(begin, end); });
    }
    for (std::thread& w : workers) w.join();
  };

  Verdict verdict;
  run_parallel(screen_range);

  // Initial coverage: some entry at the initial location must cover the
  // delay-closed initial state.
  const SymbolicState init = initial_state(a);
  const std::string& init_name = a.locations[init.location].name;
  bool init_covered = false;
  for (std::size_t candidate : index.entries_at(init_name)) {
    if (covers(mode, init.zone, c.entries[candidate].zone, lu)) {
      init_covered = true;
      break;
    }
  }
  if (!init_covered)
    verdict.rejections.push_back({std::nullopt, RejectionReason::InitialUncovered, init});

  if (!(options.fail_fast && (!verdict.rejections.empty() || stop.load()))) {
    run_parallel(check_range);
  }

  for (auto& slot : per_entry) {
    for (Rejection& r : slot) verdict.rejections.push_back(std::move(r));
  }
  verdict.accepted = verdict.rejections.empty();
  return verdict;
}

}  // namespace tbacert
