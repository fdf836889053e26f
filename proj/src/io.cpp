#include "canonphase/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "canonphase/error.hpp"
#include "canonphase/format.hpp"

namespace canonphase {

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string> lines_of(std::string_view text) {
  if (text.empty() || text.back() != '\n')
    throw Error(ErrorKind::InvalidFormat, "output must end with a newline");
  auto lines = split(text.substr(0, text.size() - 1), '\n');
  for (const auto& l : lines)
    if (l.empty()) throw Error(ErrorKind::InvalidFormat, "unexpected empty line");
  return lines;
}

double parse_real(const std::string& field) {
  if (field.empty()) throw Error(ErrorKind::InvalidFormat, "empty numeric field");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(field.c_str(), &end);
  if (end != field.c_str() + field.size() || errno == ERANGE || !std::isfinite(v))
    throw Error(ErrorKind::InvalidFormat, "not a finite real: '" + field + "'");
  return v;
}

std::uint64_t parse_count(const std::string& field) {
  if (field.empty() || field.find_first_not_of("0123456789") != std::string::npos)
    throw Error(ErrorKind::InvalidFormat, "not a non-negative integer: '" + field + "'");
  return std::stoull(field);
}

std::vector<std::string> fields(const std::string& line, std::size_t expected) {
  auto f = split(line, ',');
  if (f.size() != expected)
    throw Error(ErrorKind::InvalidFormat, "expected " + std::to_string(expected) +
                                              " fields in line '" + line + "'");
  return f;
}

void expect_footer(const std::string& line, const std::string& key) {
  auto f = fields(line, 2);
  if (f[0] != key) throw Error(ErrorKind::InvalidFormat, "expected footer row '" + key + "'");
}

}  // namespace

std::string matrix_csv(const UnitaryMatrix& u) {
  std::string s;
  for (int i = 0; i < u.dim(); ++i) {
    for (int j = 0; j < u.dim(); ++j) {
      if (j) s += ",";
      s += format_shortest(u(i, j).real()) + "," + format_shortest(u(i, j).imag());
    }
    s += "\n";
  }
  return s;
}

std::string distribution_csv(const RetainedDistribution& dist, std::optional<double> max_abs_diff) {
  std::string s = "m,theta_m,probability\n";
  for (std::size_t m = 0; m < dist.probabilities.size(); ++m)
    s += std::to_string(m) + "," + format_real(dist.grid.theta(static_cast<int>(m))) + "," +
         format_real(dist.probabilities[m]) + "\n";
  s += "success_probability," + format_real(dist.success_probability) + "\n";
  if (max_abs_diff) s += "max_abs_diff," + format_real(*max_abs_diff) + "\n";
  return s;
}

std::string histogram_csv(const Histogram& hist) {
  const PhaseGrid grid = hist.grid();
  const double retained = static_cast<double>(hist.retained());
  std::string s = "m,theta_m,count,frequency\n";
  for (std::size_t m = 0; m < hist.counts.size(); ++m) {
    const double freq = retained > 0 ? static_cast<double>(hist.counts[m]) / retained : 0.0;
    s += std::to_string(m) + "," + format_real(grid.theta(static_cast<int>(m))) + "," +
         std::to_string(hist.counts[m]) + "," + format_real(freq) + "\n";
  }
  s += "discarded," + std::to_string(hist.discarded_count) + "\n";
  s += "seed," + std::to_string(hist.seed) + "\n";
  return s;
}

std::string convergence_csv(std::span<const ConvergenceRow> rows) {
  std::string s = "N,sup_distance\n";
  for (const auto& r : rows) s += std::to_string(r.n) + "," + format_real(r.sup_distance) + "\n";
  return s;
}

void validate_matrix_csv(std::string_view text) {
  const auto lines = lines_of(text);
  const std::size_t dim = lines.size();
  if (dim < 2) throw Error(ErrorKind::InvalidFormat, "matrix needs at least two rows");
  ComplexMatrix m(static_cast<int>(dim), static_cast<int>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    const auto f = fields(lines[i], 2 * dim);
    for (std::size_t j = 0; j < dim; ++j)
      m(static_cast<int>(i), static_cast<int>(j)) = Complex(parse_real(f[2 * j]), parse_real(f[2 * j + 1]));
  }
  // Shortest round-trip printing keeps the matrix unitary to rounding.
  if (!(unitarity_deviation(m) < UnitaryMatrix::kTolerance))
    throw Error(ErrorKind::InvalidFormat, "matrix is not unitary");
}

void validate_distribution_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines[0] != "m,theta_m,probability")
    throw Error(ErrorKind::InvalidFormat, "missing header 'm,theta_m,probability'");
  std::size_t k = 1;
  double total = 0.0;
  for (; k < lines.size() && lines[k].rfind("success_probability", 0) != 0; ++k) {
    const auto f = fields(lines[k], 3);
    if (parse_count(f[0]) != k - 1) throw Error(ErrorKind::InvalidFormat, "rows out of order");
    parse_real(f[1]);
    const double p = parse_real(f[2]);
    if (p < 0.0) throw Error(ErrorKind::InvalidFormat, "negative probability");
    total += p;
  }
  if (k < 3) throw Error(ErrorKind::InvalidFormat, "distribution needs at least two rows");
  if (std::abs(total - 1.0) > 1e-10)
    throw Error(ErrorKind::InvalidFormat, "probabilities do not sum to 1");
  if (k >= lines.size()) throw Error(ErrorKind::InvalidFormat, "missing success_probability row");
  expect_footer(lines[k], "success_probability");
  parse_real(fields(lines[k], 2)[1]);
  ++k;
  if (k < lines.size()) {
    expect_footer(lines[k], "max_abs_diff");
    parse_real(fields(lines[k], 2)[1]);
    ++k;
  }
  if (k != lines.size()) throw Error(ErrorKind::InvalidFormat, "unexpected trailing rows");
}

void validate_histogram_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines[0] != "m,theta_m,count,frequency")
    throw Error(ErrorKind::InvalidFormat, "missing header 'm,theta_m,count,frequency'");
  if (lines.size() < 5) throw Error(ErrorKind::InvalidFormat, "histogram is too short");
  const std::size_t rows = lines.size() - 3;
  for (std::size_t k = 1; k <= rows; ++k) {
    const auto f = fields(lines[k], 4);
    if (parse_count(f[0]) != k - 1) throw Error(ErrorKind::InvalidFormat, "rows out of order");
    parse_real(f[1]);
    parse_count(f[2]);
    const double freq = parse_real(f[3]);
    if (freq < 0.0 || freq > 1.0) throw Error(ErrorKind::InvalidFormat, "frequency outside [0, 1]");
  }
  expect_footer(lines[rows + 1], "discarded");
  parse_count(fields(lines[rows + 1], 2)[1]);
  expect_footer(lines[rows + 2], "seed");
  parse_count(fields(lines[rows + 2], 2)[1]);
}

void validate_convergence_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines[0] != "N,sup_distance")
    throw Error(ErrorKind::InvalidFormat, "missing header 'N,sup_distance'");
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto f = fields(lines[k], 2);
    parse_count(f[0]);
    if (parse_real(f[1]) < 0.0) throw Error(ErrorKind::InvalidFormat, "negative distance");
  }
}

void validate_netlist_text(std::string_view text) {
  try {
    parse_netlist(text);
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidFormat, e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::Io, "failed reading '" + path + "'");
  return ss.str();
}

void write_file_atomic(const std::string& path, std::string_view content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot open '" + tmp + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorKind::Io, "failed writing '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorKind::Io, "cannot move output into '" + path + "'");
  }
}

}  // namespace canonphase
