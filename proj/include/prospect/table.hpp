#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace prospect {

// Shortest decimal representation that round-trips the double.
std::string format_double(double value);

struct TableRow {
  std::string config_id;
  std::uint64_t seed = 0;
  std::string metric;
  double value = 0.0;
};

/// Append-only experiment record; one row per (config, seed, metric).
class ExperimentTable {
 public:
  void add(std::string config_id, std::uint64_t seed, std::string metric, double value);
  void append(const ExperimentTable& other);

  const std::vector<TableRow>& rows() const { return rows_; }

  void write_csv(std::ostream& os) const;  // header config_id,seed,metric,value
  nlohmann::json to_json() const;          // nested by config_id, then seed

 private:
  std::vector<TableRow> rows_;
};

}  // namespace prospect
