#pragma once

// Enumeration of the positive discriminants d with fundamental unit
// eps_d = (t + u sqrt d)/2 <= x, through the pairs (t, u) with
// t^2 - d u^2 = 4. Each trace t <= x is visited once; t^2 - 4 is factored
// as (t - 2)(t + 2) and every square divisor u^2 yields a candidate d.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pellclass/arith.hpp"

namespace pellclass {

enum class HMode { absent, exact, formula };

struct DiscriminantRecord {
  u64 d = 0;
  u64 t = 0;
  u64 u = 0;
  double log_eps = 0.0;
  std::optional<u64> h;
  HMode h_mode = HMode::absent;

  friend bool operator==(const DiscriminantRecord&, const DiscriminantRecord&) = default;
};

struct EnumerationRun {
  u64 x = 0;
  std::vector<DiscriminantRecord> records;  // sorted by d, distinct
  u64 pair_count = 0;                       // all admissible (t, u), fundamental or not

  friend bool operator==(const EnumerationRun&, const EnumerationRun&) = default;
};

struct EnumerateOptions {
  u64 max_x = 10'000'000;
  unsigned threads = 1;
  u64 spf_guard = SpfTable::kDefaultGuard;
};

/// (t + sqrt(t^2 - 4))/2 <= x, decided exactly as t*x <= x^2 + 1.
bool within_bound(u64 t, u64 x);

/// d(t, u) = (t^2 - 4)/u^2 when it is an integer discriminant (0 or 1 mod 4, non-square).
std::optional<u64> discriminant_of_pair(u64 t, u64 u);

/// log((t + u sqrt d)/2) computed as log((t + sqrt(t^2 - 4))/2).
double log_unit(u64 t);

/// Number of n >= 1 whose unit power eps^n has trace within the bound x
/// (traces follow t_{n+1} = t t_n - t_{n-1}, t_0 = 2, t_1 = t).
u64 count_unit_powers(u64 t, u64 x);

/// Throws DomainError for x outside [3, options.max_x] and GuardError when the sieve would exceed its guard.
EnumerationRun enumerate(u64 x, const EnumerateOptions& options = {});

/// Same, reusing an existing table whose limit must cover x + 2.
EnumerationRun enumerate(u64 x, const SpfTable& table, const EnumerateOptions& options = {});

/// |records| / x.
double density_report(const EnumerationRun& run);

// Cache file:
//   pell-cache v1 x=<x> count=<n> sha=<sha256 hex of body>
//   d,t,u            (one line per record, sorted by d)
std::string cache_serialize(const EnumerationRun& run);
EnumerationRun cache_parse(std::string_view text);
void cache_write(const EnumerationRun& run, const std::filesystem::path& path);
EnumerationRun cache_read(const std::filesystem::path& path);

std::string sha256_hex(std::string_view data);

}  // namespace pellclass
