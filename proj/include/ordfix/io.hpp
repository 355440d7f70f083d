#ifndef ORDFIX_IO_HPP
#define ORDFIX_IO_HPP

#include "ordfix/integral.hpp"
#include "ordfix/setvalued.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ordfix::io {

using json = nlohmann::json;

/// Shortest text that reads back to the same double.
inline std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::optional<double> parse_double(std::string_view s) {
  std::string t = trim(s);
  if (t.empty()) return std::nullopt;
  double v = 0.0;
  auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc{} || res.ptr != t.data() + t.size()) return std::nullopt;
  return v;
}

/// Rows of comma-separated fields. Blank lines and lines starting with '#'
/// are skipped; `line` keeps the 1-based source line for diagnostics.
struct CsvRow {
  std::size_t line;
  std::vector<std::string> fields;
};

inline std::vector<CsvRow> read_csv_rows(std::istream &in) {
  std::vector<CsvRow> rows;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    std::string t = trim(text);
    if (t.empty() || t.front() == '#') continue;
    CsvRow row{line, {}};
    std::stringstream ss(t);
    std::string field;
    while (std::getline(ss, field, ',')) row.fields.push_back(trim(field));
    if (t.back() == ',') row.fields.emplace_back();
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::ifstream open_input(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse_error, "cannot open '" + path + "'");
  return in;
}

inline std::ofstream open_output(const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::invalid_argument, "cannot write '" + path + "'");
  return out;
}

[[noreturn]] inline void parse_fail(const std::string &source, std::size_t line,
                                    std::size_t column, const std::string &what) {
  throw Error(ErrorCode::parse_error, source + ": row " + std::to_string(line) + ", column " +
                                          std::to_string(column) + ": " + what);
}

/// One point per row, one coordinate per column. A first row that is not
/// numeric is taken as a header.
inline PointSet read_point_set(std::istream &in, Norm norm_kind = Norm::sup,
                               const std::string &source = "<csv>") {
  auto rows = read_csv_rows(in);
  std::vector<Vector> pts;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto &row = rows[r];
    Vector p;
    for (std::size_t c = 0; c < row.fields.size(); ++c) {
      auto v = parse_double(row.fields[c]);
      if (!v) {
        if (r == 0 && pts.empty() && p.empty()) break;  // header
        parse_fail(source, row.line, c + 1, "'" + row.fields[c] + "' is not a number");
      }
      if (!std::isfinite(*v)) parse_fail(source, row.line, c + 1, "value is not finite");
      p.push_back(*v);
    }
    if (p.empty()) {
      if (r == 0) continue;
      parse_fail(source, row.line, 1, "empty row");
    }
    if (!pts.empty() && p.size() != pts.front().size())
      parse_fail(source, row.line, std::min(p.size(), pts.front().size()) + 1,
                 "expected " + std::to_string(pts.front().size()) + " columns, found " +
                     std::to_string(p.size()));
    pts.push_back(std::move(p));
  }
  if (pts.empty()) throw Error(ErrorCode::parse_error, source + ": no points");
  return PointSet(std::move(pts), norm_kind);
}

inline PointSet read_point_set_file(const std::string &path, Norm norm_kind = Norm::sup) {
  auto in = open_input(path);
  return read_point_set(in, norm_kind, path);
}

inline void write_point_set(std::ostream &out, const PointSet &s) {
  for (const auto &p : s) {
    for (std::size_t i = 0; i < p.size(); ++i) out << (i ? "," : "") << format_double(p[i]);
    out << '\n';
  }
}

/// Columns: iteration, x0..x{d-1}, residual, order_certified, sandwich_width.
/// Row k describes iterate k; residual and width belong to the step that
/// produced it and are empty on row 0.
inline void write_trace_csv(std::ostream &out, const IterationTrace &tr) {
  std::size_t d = tr.iterates.empty() ? 0 : tr.iterates.front().size();
  out << "iteration";
  for (std::size_t i = 0; i < d; ++i) out << ",x" << i;
  out << ",residual,order_certified,sandwich_width\n";
  for (std::size_t k = 0; k < tr.iterates.size(); ++k) {
    out << k;
    for (double v : tr.iterates[k]) out << ',' << format_double(v);
    out << ',';
    if (k > 0 && k - 1 < tr.residuals.size()) out << format_double(tr.residuals[k - 1]);
    out << ',' << (k < tr.order_certified.size() && tr.order_certified[k] ? 1 : 0) << ',';
    if (k > 0 && k - 1 < tr.sandwich_widths.size())
      out << format_double(tr.sandwich_widths[k - 1]);
    out << '\n';
  }
}

inline json to_json(const FixedPointResult &r) {
  json j;
  j["point"] = r.point;
  j["residual"] = r.residual;
  j["termination"] = std::string(to_string(r.trace.terminated_by));
  j["iterations"] = r.trace.steps();
  j["above_start"] = r.above_start;
  j["all_steps_certified"] = r.trace.all_certified();
  if (r.trace.violation_index) j["violation_index"] = *r.trace.violation_index;
  return j;
}

inline json to_json(const DecreasingResult &r) {
  json j;
  j["point"] = r.point;
  j["even_limit"] = r.even_limit;
  j["odd_limit"] = r.odd_limit;
  j["h1_gap"] = r.h1_gap;
  j["residual"] = r.trace.residuals.empty() ? 0.0 : r.trace.residuals.back();
  j["termination"] = std::string(to_string(r.trace.terminated_by));
  j["iterations"] = r.trace.steps();
  j["all_steps_certified"] = r.trace.all_certified();
  if (r.trace.violation_index) j["violation_index"] = *r.trace.violation_index;
  return j;
}

/// Columns x, psi, Psi, g.
inline void write_solution_csv(std::ostream &out, const IntegralSolution &s) {
  out << "x,psi,Psi,g\n";
  for (std::size_t i = 0; i < s.psi.size(); ++i)
    out << format_double(s.psi.node(i)) << ',' << format_double(s.psi[i]) << ','
        << format_double(s.Psi[i]) << ',' << format_double(s.g[i]) << '\n';
}

inline json summary_json(const IntegralSolution &s, bool oracle_applies) {
  json j;
  j["residual"] = s.residual;
  if (oracle_applies) j["analytic_gap"] = s.analytic_gap;
  j["iterations"] = s.engine.trace.steps();
  j["h1_gap"] = s.engine.h1_gap;
  j["termination"] = std::string(to_string(s.engine.trace.terminated_by));
  j["grid_size"] = s.psi.size();
  j["kernel_sign_violations"] = s.kernel_report.sign_violations.size();
  j["kernel_growth_violations"] = s.kernel_report.growth_violations.size();
  return j;
}

/// Tabulated kernel: the header row holds the y nodes after one leading
/// cell; each further row is an x node followed by R(x, y_j).
inline TabulatedKernel read_kernel_csv(std::istream &in, const std::string &source = "<csv>") {
  auto rows = read_csv_rows(in);
  if (rows.size() < 3) throw Error(ErrorCode::parse_error, source + ": kernel table too small");
  auto num = [&](const CsvRow &row, std::size_t c) {
    auto v = parse_double(row.fields[c]);
    if (!v || !std::isfinite(*v))
      parse_fail(source, row.line, c + 1, "'" + row.fields[c] + "' is not a finite number");
    return *v;
  };
  Vector ys, xs;
  for (std::size_t c = 1; c < rows[0].fields.size(); ++c) ys.push_back(num(rows[0], c));
  std::vector<Vector> table;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto &row = rows[r];
    if (row.fields.size() != ys.size() + 1)
      parse_fail(source, row.line, std::min(row.fields.size(), ys.size() + 1),
                 "expected " + std::to_string(ys.size() + 1) + " columns");
    xs.push_back(num(row, 0));
    Vector vals;
    for (std::size_t c = 1; c < row.fields.size(); ++c) vals.push_back(num(row, c));
    table.push_back(std::move(vals));
  }
  return TabulatedKernel(std::move(xs), std::move(ys), std::move(table));
}

/// {"domain": [[...], ...], "values": [[[...], ...], ...]} with values[i]
/// the point set T(domain[i]).
inline FiniteSetValuedMap read_setvalued_json(const json &j, Norm norm_kind = Norm::sup) {
  try {
    auto domain = j.at("domain").get<std::vector<Vector>>();
    auto raw = j.at("values").get<std::vector<std::vector<Vector>>>();
    std::vector<PointSet> values;
    for (auto &v : raw) values.emplace_back(std::move(v), norm_kind);
    return FiniteSetValuedMap(std::move(domain), std::move(values));
  } catch (const json::exception &e) {
    throw Error(ErrorCode::parse_error, std::string("set-valued map: ") + e.what());
  }
}

inline json to_json(const FiniteSetValuedMap &m) {
  json j;
  j["domain"] = m.domain();
  json vals = json::array();
  for (const auto &v : m.values()) vals.push_back(v.points());
  j["values"] = vals;
  return j;
}

/// Two columns, from and to; a first row reading "from,to" is a header.
inline std::vector<std::pair<std::string, std::string>>
read_labelled_map(std::istream &in, const std::string &source = "<csv>") {
  auto rows = read_csv_rows(in);
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto &row = rows[r];
    if (row.fields.size() != 2)
      parse_fail(source, row.line, std::min<std::size_t>(row.fields.size(), 2) + 1,
                 "expected two columns");
    if (r == 0 && row.fields[0] == "from" && row.fields[1] == "to") continue;
    out.emplace_back(row.fields[0], row.fields[1]);
  }
  if (out.empty()) throw Error(ErrorCode::parse_error, source + ": empty map");
  return out;
}

} // namespace ordfix::io

#endif // ORDFIX_IO_HPP
