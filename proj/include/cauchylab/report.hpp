#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace cauchylab {

/// A single measured inequality: lhs <= rhs.
struct EstimateCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = true;
};

struct BoundRow {
  std::vector<double> inputs;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = true;
};

/// Measured LHS/RHS pairs for one inequality, plus named scalar summaries.
///
/// `inequality` is a plain-ASCII rendering of the estimate being checked and
/// becomes the header comment of every exported file.
class BoundReport {
 public:
  BoundReport() = default;
  BoundReport(std::string name, std::string inequality, std::vector<std::string> input_columns);

  void add(std::vector<double> inputs, double lhs, double rhs, bool pass);
  void add(std::vector<double> inputs, const EstimateCheck& check) {
    add(std::move(inputs), check.lhs, check.rhs, check.pass);
  }

  /// Summary values keep insertion order so exported files are stable.
  void set_summary(const std::string& key, double value);
  double summary(const std::string& key) const;
  bool has_summary(const std::string& key) const;
  void add_note(std::string note) { notes_.push_back(std::move(note)); }

  /// Marks the report failed independently of the rows (e.g. a fitted slope
  /// outside its tolerance).
  void fail(std::string reason);

  bool passed() const;
  std::size_t violations() const;
  /// Largest lhs/rhs over rows with rhs > 0; 0 when there are none.
  double max_ratio() const;

  const std::string& name() const { return name_; }
  const std::string& inequality() const { return inequality_; }
  const std::vector<std::string>& input_columns() const { return columns_; }
  const std::vector<BoundRow>& rows() const { return rows_; }
  const std::vector<std::pair<std::string, double>>& summaries() const { return summary_; }
  const std::vector<std::string>& notes() const { return notes_; }
  const std::vector<std::string>& failures() const { return failures_; }

  void write_csv(std::ostream& out) const;
  nlohmann::json to_json(bool include_rows = true) const;

 private:
  std::string name_;
  std::string inequality_;
  std::vector<std::string> columns_;
  std::vector<BoundRow> rows_;
  std::vector<std::pair<std::string, double>> summary_;
  std::vector<std::string> notes_;
  std::vector<std::string> failures_;
};

/// Formats a double with round-trip precision.
std::string format_double(double v);

/// Least-squares slope of log(y) against log(x). Requires positive data.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace cauchylab
