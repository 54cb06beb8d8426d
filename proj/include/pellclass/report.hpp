#pragma once

// Tabular reports rendered as CSV (primary) or JSON (same columns, same order).

#include <string>
#include <variant>
#include <vector>

#include "pellclass/arith.hpp"
#include "pellclass/charsums.hpp"
#include "pellclass/constants.hpp"
#include "pellclass/moments.hpp"
#include "pellclass/tail.hpp"

namespace pellclass {

using Cell = std::variant<std::monostate, std::string, i64, u64, double, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

/// Shortest round-trip decimal form; locale independent.
std::string format_double(double v);

std::string to_csv(const Table& t);
/// Array of objects, keys in column order.
std::string to_json(const Table& t);

enum class OutputFormat { csv, json };
std::string render(const Table& t, OutputFormat f);

Table moments_table(const std::vector<MomentReport>& rows, bool timing);
Table constants_table(const std::vector<double>& ks, const std::vector<ConstantEval>& C,
                      const std::vector<ConstantEval>& H);
Table tail_table(const std::vector<TailReport>& rows);
Table extremes_table(const ExtremeScan& scan);
Table density_table(const EnumerationRun& run);
Table charsum_table(const CharsumVerification& v);

}  // namespace pellclass
