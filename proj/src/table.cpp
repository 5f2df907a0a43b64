#include "prospect/table.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace prospect {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

void ExperimentTable::add(std::string config_id, std::uint64_t seed, std::string metric,
                          double value) {
  rows_.push_back({std::move(config_id), seed, std::move(metric), value});
}

void ExperimentTable::append(const ExperimentTable& other) {
  rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
}

void ExperimentTable::write_csv(std::ostream& os) const {
  os << "config_id,seed,metric,value\n";
  for (const TableRow& r : rows_)
    os << r.config_id << ',' << r.seed << ',' << r.metric << ',' << format_double(r.value)
       << '\n';
}

nlohmann::json ExperimentTable::to_json() const {
  nlohmann::json out = nlohmann::json::object();
  for (const TableRow& r : rows_) out[r.config_id][std::to_string(r.seed)][r.metric] = r.value;
  return out;
}

}  // namespace prospect
