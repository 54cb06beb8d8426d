#include "pellclass/report.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace pellclass {

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("Table::add: row width does not match columns");
  rows.push_back(std::move(row));
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::string csv_cell(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(const std::string& s) const {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string out = "\"";
      for (const char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
      }
      return out + "\"";
    }
    std::string operator()(i64 v) const { return std::to_string(v); }
    std::string operator()(u64 v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(bool v) const { return v ? "1" : "0"; }
  };
  return std::visit(Visitor{}, c);
}

nlohmann::ordered_json json_cell(const Cell& c) {
  struct Visitor {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
    nlohmann::ordered_json operator()(i64 v) const { return v; }
    nlohmann::ordered_json operator()(u64 v) const { return v; }
    nlohmann::ordered_json operator()(double v) const {
      if (!std::isfinite(v)) return format_double(v);
      return v;
    }
    nlohmann::ordered_json operator()(bool v) const { return v; }
  };
  return std::visit(Visitor{}, c);
}

}  // namespace

std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_cell(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const Table& t) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = json_cell(row[i]);
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

std::string render(const Table& t, OutputFormat f) { return f == OutputFormat::csv ? to_csv(t) : to_json(t); }

Table moments_table(const std::vector<MomentReport>& rows, bool timing) {
  Table t{{"x", "k", "m", "empirical", "predicted", "ratio", "exact_h_count", "formula_h_count", "seconds"}, {}};
  for (const auto& r : rows) {
    t.add({r.x, r.k, r.m, r.empirical, r.predicted, r.ratio, r.exact_h_count, r.formula_h_count,
           timing ? Cell{r.runtime_s} : Cell{}});
  }
  return t;
}

Table constants_table(const std::vector<double>& ks, const std::vector<ConstantEval>& C,
                      const std::vector<ConstantEval>& H) {
  Table t{{"k", "C", "H", "logH", "logH_asymp", "tail_bound", "P"}, {}};
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const double k = ks[i];
    t.add({k, C[i].value, H[i].value, H[i].log_value, k >= 10.0 ? Cell{logH_asymp(k)} : Cell{}, H[i].tail_bound,
           H[i].P});
  }
  return t;
}

Table tail_table(const std::vector<TailReport>& rows) {
  Table t{{"tau", "threshold", "count_above", "total", "empirical", "predicted"}, {}};
  for (const auto& r : rows) {
    t.add({r.tau, r.threshold, r.count_above, r.total, r.empirical_proportion, r.predicted});
  }
  return t;
}

Table extremes_table(const ExtremeScan& scan) {
  Table t{{"rank", "d", "t", "u", "h", "ratio"}, {}};
  u64 rank = 0;
  for (const auto& r : scan.top) t.add({++rank, r.d, r.t, r.u, r.h, r.ratio});
  return t;
}

Table density_table(const EnumerationRun& run) {
  Table t{{"x", "records", "pairs", "density", "predicted"}, {}};
  t.add({run.x, static_cast<u64>(run.records.size()), run.pair_count, density_report(run), 35.0 / 16.0});
  return t;
}

Table charsum_table(const CharsumVerification& v) {
  Table t{{"m", "a", "u", "closed_num", "closed_den", "brute", "match"}, {}};
  for (const auto& r : v.rows) t.add({r.m, r.a, r.u, r.closed.num(), r.closed.den(), r.brute, r.match});
  return t;
}

}  // namespace pellclass
