#include "cauchylab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "cauchylab/error.hpp"

namespace cauchylab {

BoundReport::BoundReport(std::string name, std::string inequality,
                         std::vector<std::string> input_columns)
    : name_(std::move(name)), inequality_(std::move(inequality)), columns_(std::move(input_columns)) {}

void BoundReport::add(std::vector<double> inputs, double lhs, double rhs, bool pass) {
  rows_.push_back(BoundRow{std::move(inputs), lhs, rhs, pass});
}

void BoundReport::set_summary(const std::string& key, double value) {
  for (auto& [k, v] : summary_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  summary_.emplace_back(key, value);
}

double BoundReport::summary(const std::string& key) const {
  for (const auto& [k, v] : summary_)
    if (k == key) return v;
  throw InputError("report '" + name_ + "' has no summary '" + key + "'");
}

bool BoundReport::has_summary(const std::string& key) const {
  return std::any_of(summary_.begin(), summary_.end(), [&](const auto& kv) { return kv.first == key; });
}

void BoundReport::fail(std::string reason) { failures_.push_back(std::move(reason)); }

bool BoundReport::passed() const { return failures_.empty() && violations() == 0; }

std::size_t BoundReport::violations() const {
  return static_cast<std::size_t>(
      std::count_if(rows_.begin(), rows_.end(), [](const BoundRow& r) { return !r.pass; }));
}

double BoundReport::max_ratio() const {
  double m = 0.0;
  for (const auto& r : rows_)
    if (r.rhs > 0.0) m = std::max(m, r.lhs / r.rhs);
  return m;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void BoundReport::write_csv(std::ostream& out) const {
  out << "# " << name_ << ": " << inequality_ << '\n';
  for (const auto& [k, v] : summary_) out << "# " << k << " = " << format_double(v) << '\n';
  for (const auto& n : notes_) out << "# note: " << n << '\n';
  for (const auto& c : columns_) out << c << ',';
  out << "lhs,rhs,pass\n";
  for (const auto& r : rows_) {
    for (double v : r.inputs) out << format_double(v) << ',';
    out << format_double(r.lhs) << ',' << format_double(r.rhs) << ',' << (r.pass ? 1 : 0) << '\n';
  }
}

nlohmann::json BoundReport::to_json(bool include_rows) const {
  nlohmann::json j;
  j["name"] = name_;
  j["inequality"] = inequality_;
  j["passed"] = passed();
  j["violations"] = violations();
  j["row_count"] = rows_.size();
  j["max_ratio"] = max_ratio();
  nlohmann::json summary = nlohmann::json::array();
  for (const auto& [k, v] : summary_) summary.push_back({{"key", k}, {"value", v}});
  j["summary"] = summary;
  j["notes"] = notes_;
  j["failures"] = failures_;
  if (include_rows) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : rows_)
      rows.push_back({{"inputs", r.inputs}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"pass", r.pass}});
    j["columns"] = columns_;
    j["rows"] = rows;
  }
  return j;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InputError("slope fit needs at least two paired points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw InputError("slope fit needs positive data");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw InputError("slope fit needs distinct abscissae");
  return (n * sxy - sx * sy) / denom;
}

}  // namespace cauchylab
