#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fcmono/groupkit.hpp"
#include "fcmono/monodromy.hpp"

namespace fcmono {

enum class TableId { f4_check_1, f4_check_2 };
const char* table_name(TableId t);
std::optional<TableId> parse_table_name(const std::string& name);

// One printed row: a label and the (first, second) exponents of every expanded instance.
// Table f4-check-1 keys rows by (gamma_1, beta/alpha), f4-check-2 by (gamma_1, gamma_2).
struct TableRowSpec {
  std::string label;
  std::vector<std::pair<Rational, Rational>> instances;
  std::uint64_t mon, ref, ratio, cyclic;
};
const std::vector<TableRowSpec>& table_rows(TableId t);

// Parameters for an instance; sign picks one of the two square roots for alpha.
// f4-check-1: gamma_2 = delta_0 = -1, so alpha beta = -gamma_1 and beta = (beta/alpha) alpha.
// f4-check-2: beta/alpha = delta_0 = -1, so alpha beta = gamma_1 gamma_2 and beta = -alpha.
ParamSet table_params(TableId t, const Rational& first, const Rational& second, int sign);

struct TableResult {
  std::string row;
  std::string instance;
  int sign = 0;
  std::string params;
  bool ok = false;  // enumeration finished
  std::string error;
  std::uint64_t mon = 0, ref = 0, ratio = 0, cyclic = 0;
  std::uint64_t expected_mon = 0, expected_ref = 0, expected_ratio = 0, expected_cyclic = 0;
  bool match() const;
};

// Rows in table order, instances in expansion order, sign 0 before sign 1.
std::vector<TableResult> run_table(TableId t, bool both_signs = true, std::size_t cap = kDefaultCap,
                                   unsigned threads = 1);

}  // namespace fcmono
