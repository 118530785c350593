#include "scanlib/table.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "scanlib/format.hpp"

namespace scanlib {

scan_table::scan_table(std::vector<std::string> columns)
    : columns_(std::move(columns)) {
  if (columns_.empty()) throw std::invalid_argument("table needs columns");
}

void scan_table::resize_rows(size_t n) {
  rows_.assign(n, std::vector<double>(
                      columns_.size(), std::numeric_limits<double>::quiet_NaN()));
  errors_.assign(n, {});
}

void scan_table::set_row(size_t index, const std::vector<double>& values,
                         std::string error) {
  if (index >= rows_.size()) throw std::out_of_range("row index");
  if (values.size() != columns_.size())
    throw std::invalid_argument("row width mismatch");
  rows_[index] = values;
  errors_[index] = std::move(error);
}

void scan_table::add_row(const std::vector<double>& values,
                         std::string error) {
  if (values.size() != columns_.size())
    throw std::invalid_argument("row width mismatch");
  rows_.push_back(values);
  errors_.push_back(std::move(error));
}

void scan_table::add_metadata(std::string key, std::string value) {
  metadata_.emplace_back(std::move(key), std::move(value));
}

size_t scan_table::column_index(const std::string& column) const {
  for (size_t i = 0; i < columns_.size(); ++i)
    if (columns_[i] == column) return i;
  throw std::invalid_argument("unknown column: " + column);
}

std::optional<size_t> scan_table::argmax(const std::string& column) const {
  const size_t c = column_index(column);
  std::optional<size_t> best;
  double best_value = -std::numeric_limits<double>::infinity();
  for (size_t r = 0; r < rows_.size(); ++r) {
    if (!errors_[r].empty()) continue;
    const double v = rows_[r][c];
    if (std::isfinite(v) && v > best_value) {
      best_value = v;
      best = r;
    }
  }
  return best;
}

void scan_table::write_csv(std::ostream& os) const {
  for (const auto& [key, value] : metadata_)
    os << "# " << key << " = " << value << "\n";
  for (size_t c = 0; c < columns_.size(); ++c) {
    if (c) os << ",";
    os << columns_[c];
  }
  os << ",error\n";
  for (size_t r = 0; r < rows_.size(); ++r) {
    for (size_t c = 0; c < columns_.size(); ++c) {
      if (c) os << ",";
      os << format_double(rows_[r][c]);
    }
    os << "," << errors_[r] << "\n";
  }
}

void scan_table::write_json(std::ostream& os,
                            const std::string& timestamp) const {
  nlohmann::ordered_json j;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [key, value] : metadata_) meta[key] = value;
  if (!timestamp.empty()) meta["timestamp"] = timestamp;
  j["meta"] = std::move(meta);
  j["columns"] = columns_;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : rows_) {
    nlohmann::ordered_json jr = nlohmann::ordered_json::array();
    for (double v : row) {
      if (std::isfinite(v))
        jr.push_back(v);
      else
        jr.push_back(format_double(v)); // JSON has no nan/inf literals
    }
    rows.push_back(std::move(jr));
  }
  j["rows"] = std::move(rows);
  nlohmann::ordered_json errs = nlohmann::ordered_json::object();
  for (size_t r = 0; r < errors_.size(); ++r)
    if (!errors_[r].empty()) errs[format_long(static_cast<long>(r))] = errors_[r];
  j["errors"] = std::move(errs);
  os << j.dump(2) << "\n";
}

} // namespace scanlib
