#ifndef SCANLIB_TABLE_HPP
#define SCANLIB_TABLE_HPP

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace scanlib {

// Rectangular scan result: named numeric columns plus a per-row error flag.
// NaN cells are permitted only in rows whose error flag is set; rows are
// stored (and emitted) in deterministic order regardless of how they were
// computed.
class scan_table {
public:
  explicit scan_table(std::vector<std::string> columns);

  size_t column_count() const { return columns_.size(); }
  size_t row_count() const { return rows_.size(); }
  const std::vector<std::string>& columns() const { return columns_; }

  // Preallocate `n` all-NaN rows so parallel workers can fill disjoint slots.
  void resize_rows(size_t n);
  void set_row(size_t index, const std::vector<double>& values,
               std::string error = {});
  void add_row(const std::vector<double>& values, std::string error = {});

  const std::vector<double>& row(size_t index) const { return rows_[index]; }
  const std::string& row_error(size_t index) const { return errors_[index]; }

  // Stable metadata (model, delta, g, version, ...), emitted in insertion
  // order.  Values must already be formatted deterministically.
  void add_metadata(std::string key, std::string value);
  const std::vector<std::pair<std::string, std::string>>& metadata() const {
    return metadata_;
  }

  // Index of the largest finite value in `column` over rows without an error
  // flag; ties keep the first row found.  nullopt when no row qualifies.
  std::optional<size_t> argmax(const std::string& column) const;
  size_t column_index(const std::string& column) const;

  // CSV: '#'-prefixed metadata lines, a header row, then data rows; floats as
  // 17-significant-digit shortest-round-trip text, LF endings, trailing
  // `error` column.  Byte-identical for identical contents.
  void write_csv(std::ostream& os) const;

  // JSON envelope {meta, columns, rows, errors}; `timestamp` (when nonempty)
  // is added to the metadata object.
  void write_json(std::ostream& os, const std::string& timestamp = {}) const;

private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
  std::vector<std::string> errors_;
  std::vector<std::pair<std::string, std::string>> metadata_;
};

} // namespace scanlib

#endif
