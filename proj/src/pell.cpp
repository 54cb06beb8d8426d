#include "pellclass/pell.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>

#include "pellclass/errors.hpp"
#include "pellclass/numeric.hpp"

namespace pellclass {

namespace {

struct PairHit {
  u64 d;
  u32 t;
  u32 u;
};

void square_divisors(const Factorization& f, std::vector<u64>& out) {
  out.assign(1, 1);
  for (const auto& pp : f.factors) {
    const unsigned half = pp.exponent / 2;
    if (half == 0) continue;
    const std::size_t base = out.size();
    u64 power = 1;
    for (unsigned j = 1; j <= half; ++j) {
      power *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * power);
    }
  }
}

void collect_pairs(u64 t_begin, u64 t_end, const SpfTable& table, std::vector<PairHit>& out) {
  std::vector<u64> us;
  for (u64 t = t_begin; t < t_end; ++t) {
    Factorization f = t - 2 >= 2 ? multiply(table.factor(t - 2), table.factor(t + 2)) : table.factor(t + 2);
    square_divisors(f, us);
    const u128 t2m4 = static_cast<u128>(t) * t - 4;
    for (const u64 u : us) {
      const u128 d = t2m4 / (static_cast<u128>(u) * u);
      const unsigned r = static_cast<unsigned>(d & 3);
      if (r != 0 && r != 1) continue;
      if (is_square(d)) continue;
      out.push_back({static_cast<u64>(d), static_cast<u32>(t), static_cast<u32>(u)});
    }
  }
}

}  // namespace

bool within_bound(u64 t, u64 x) {
  return static_cast<u128>(t) * x <= static_cast<u128>(x) * x + 1;
}

std::optional<u64> discriminant_of_pair(u64 t, u64 u) {
  if (t <= 2 || u == 0) return std::nullopt;
  const u128 t2m4 = static_cast<u128>(t) * t - 4;
  const u128 u2 = static_cast<u128>(u) * u;
  if (t2m4 % u2 != 0) return std::nullopt;
  const u128 d = t2m4 / u2;
  const unsigned r = static_cast<unsigned>(d & 3);
  if (r != 0 && r != 1) return std::nullopt;
  if (is_square(d)) return std::nullopt;
  return static_cast<u64>(d);
}

double log_unit(u64 t) { return std::acosh(static_cast<double>(t) / 2.0); }

u64 count_unit_powers(u64 t, u64 x) {
  u64 count = 0;
  u128 prev = 2;
  u128 cur = t;
  const u128 cap = static_cast<u128>(x) + 2;
  while (cur <= cap && within_bound(static_cast<u64>(cur), x)) {
    ++count;
    const u128 next = static_cast<u128>(t) * cur - prev;
    prev = cur;
    cur = next;
  }
  return count;
}

EnumerationRun enumerate(u64 x, const EnumerateOptions& options) {
  if (x < 3 || x > options.max_x) {
    throw DomainError("enumerate: x = " + std::to_string(x) + " outside [3, " + std::to_string(options.max_x) +
                      "]");
  }
  const SpfTable table(x + 2, options.spf_guard);
  return enumerate(x, table, options);
}

EnumerationRun enumerate(u64 x, const SpfTable& table, const EnumerateOptions& options) {
  if (x < 3 || x > options.max_x) {
    throw DomainError("enumerate: x = " + std::to_string(x) + " outside [3, " + std::to_string(options.max_x) +
                      "]");
  }
  if (table.limit() < x + 2) throw ContractError("enumerate: sieve limit below x + 2");

  // Integer traces t >= 3 pass the bound exactly when t <= x.
  u64 t_max = x;
  while (t_max >= 3 && !within_bound(t_max, x)) --t_max;

  std::vector<PairHit> hits;
  std::mutex merge;
  const std::size_t span = t_max >= 3 ? t_max - 2 : 0;
  parallel_chunks(span, options.threads, [&](std::size_t begin, std::size_t end) {
    std::vector<PairHit> local;
    local.reserve((end - begin) * 9 / 4);
    collect_pairs(3 + begin, 3 + end, table, local);
    const std::lock_guard lock(merge);
    hits.insert(hits.end(), local.begin(), local.end());
  });
  // (d, t) determines u, so this order is total and the result is schedule-independent.
  std::sort(hits.begin(), hits.end(), [](const PairHit& a, const PairHit& b) {
    return a.d != b.d ? a.d < b.d : a.t < b.t;
  });

  EnumerationRun run;
  run.x = x;
  run.pair_count = hits.size();
  for (std::size_t i = 0; i < hits.size(); ++i) {
    if (i > 0 && hits[i].d == hits[i - 1].d) continue;
    DiscriminantRecord rec;
    rec.d = hits[i].d;
    rec.t = hits[i].t;
    rec.u = hits[i].u;
    rec.log_eps = log_unit(rec.t);
    run.records.push_back(rec);
  }
  return run;
}

double density_report(const EnumerationRun& run) {
  if (run.records.empty()) throw ContractError("density_report: empty run");
  return static_cast<double>(run.records.size()) / static_cast<double>(run.x);
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256: digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 15]);
  }
  return out;
}

std::string cache_serialize(const EnumerationRun& run) {
  std::string body;
  body.reserve(run.records.size() * 24);
  char buf[24];
  const auto put = [&](u64 v, char sep) {
    body.append(buf, std::to_chars(buf, buf + sizeof buf, v).ptr);
    body.push_back(sep);
  };
  for (const auto& r : run.records) {
    put(r.d, ',');
    put(r.t, ',');
    put(r.u, '\n');
  }
  std::string out = "pell-cache v1 x=" + std::to_string(run.x) + " count=" + std::to_string(run.records.size()) +
                    " sha=" + sha256_hex(body) + "\n";
  out += body;
  return out;
}

namespace {

bool parse_u64(std::string_view s, u64& v) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

bool take_field(std::string_view& rest, std::string_view prefix, std::string_view& value) {
  if (rest.substr(0, prefix.size()) != prefix) return false;
  rest.remove_prefix(prefix.size());
  const std::size_t sp = rest.find(' ');
  value = rest.substr(0, sp);
  rest = sp == std::string_view::npos ? std::string_view{} : rest.substr(sp + 1);
  return true;
}

}  // namespace

EnumerationRun cache_parse(std::string_view text) {
  if (text.empty()) throw ParseError(1, "empty cache file");
  const std::size_t nl = text.find('\n');
  if (nl == std::string_view::npos) throw ParseError(1, "header is not newline-terminated");
  std::string_view header = text.substr(0, nl);
  const std::string_view body = text.substr(nl + 1);

  std::string_view xs, counts, sha;
  if (header.substr(0, 14) != "pell-cache v1 ") throw ParseError(1, "bad magic, expected 'pell-cache v1'");
  header.remove_prefix(14);
  if (!take_field(header, "x=", xs) || !take_field(header, "count=", counts) || !take_field(header, "sha=", sha) ||
      !header.empty()) {
    throw ParseError(1, "malformed header");
  }
  EnumerationRun run;
  u64 count = 0;
  if (!parse_u64(xs, run.x) || !parse_u64(counts, count)) throw ParseError(1, "malformed header numbers");
  if (sha.size() != 64) throw ParseError(1, "malformed sha field");

  run.records.reserve(count);
  std::size_t line = 1;
  std::size_t pos = 0;
  while (pos < body.size()) {
    ++line;
    const std::size_t end = body.find('\n', pos);
    if (end == std::string_view::npos) throw ParseError(line, "record is not newline-terminated");
    const std::string_view rec = body.substr(pos, end - pos);
    pos = end + 1;
    const std::size_t c1 = rec.find(',');
    const std::size_t c2 = c1 == std::string_view::npos ? c1 : rec.find(',', c1 + 1);
    DiscriminantRecord r;
    if (c2 == std::string_view::npos || !parse_u64(rec.substr(0, c1), r.d) ||
        !parse_u64(rec.substr(c1 + 1, c2 - c1 - 1), r.t) || !parse_u64(rec.substr(c2 + 1), r.u)) {
      throw ParseError(line, "expected 'd,t,u'");
    }
    run.records.push_back(r);
  }
  if (sha256_hex(body) != sha) throw IntegrityError("cache checksum mismatch");
  if (run.records.size() != count) {
    throw IntegrityError("cache header count=" + std::to_string(count) + " but " +
                         std::to_string(run.records.size()) + " records");
  }
  if (run.x < 3) throw IntegrityError("cache header x below 3");

  line = 1;
  for (std::size_t i = 0; i < run.records.size(); ++i) {
    ++line;
    auto& r = run.records[i];
    const auto ctx = [&](const std::string& what) { return "line " + std::to_string(line) + ": " + what; };
    if (r.t < 3 || r.u == 0) throw IntegrityError(ctx("t must be >= 3 and u >= 1"));
    if (discriminant_of_pair(r.t, r.u) != std::optional<u64>(r.d)) {
      throw IntegrityError(ctx("t^2 - d u^2 != 4 or d is not a discriminant"));
    }
    if (!within_bound(r.t, run.x)) throw IntegrityError(ctx("unit exceeds bound x"));
    if (i > 0 && run.records[i - 1].d >= r.d) throw IntegrityError(ctx("records not strictly sorted by d"));
    r.log_eps = log_unit(r.t);
    run.pair_count += count_unit_powers(r.t, run.x);
  }
  return run;
}

void cache_write(const EnumerationRun& run, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cache_write: cannot open " + path.string());
  const std::string text = cache_serialize(run);
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!os) throw std::runtime_error("cache_write: write failed for " + path.string());
}

EnumerationRun cache_read(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cache_read: cannot open " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return cache_parse(ss.str());
}

}  // namespace pellclass
