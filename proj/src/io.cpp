#include "apdlr/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "apdlr/errors.hpp"
#include "format.hpp"

namespace apdlr {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void finish_write(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write to " + path.string() + " failed");
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(line);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

Eigen::VectorXd CsvTable::column(const std::string& name) const {
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] != name) continue;
    Eigen::VectorXd out(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) out(static_cast<Eigen::Index>(r)) = rows[r][c];
    return out;
  }
  throw IoError("CSV has no column '" + name + "'");
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw IoError(path.string() + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  table.header = split(line, ',');
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != table.header.size()) {
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                    std::to_string(table.header.size()) + " fields, got " +
                    std::to_string(cells.size()));
    }
    std::vector<double> row(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const std::string& cell = cells[c];
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), row[c]);
      if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw IoError(path.string() + ":" + std::to_string(line_no) + ": bad number '" + cell + "'");
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_profile_csv(const std::filesystem::path& path, const Eigen::VectorXd& x,
                       const Eigen::VectorXd& rho) {
  if (x.size() != rho.size()) throw IoError(path.string() + ": x and rho lengths differ");
  auto out = open_for_write(path);
  out << "x,rho\n";
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    out << format_sig17(x(j)) << ',' << format_sig17(rho(j)) << '\n';
  }
  finish_write(out, path);
}

void write_energy_csv(const std::filesystem::path& path, const std::vector<EnergySample>& trace) {
  auto out = open_for_write(path);
  out << "step,t,e,delta_e\n";
  for (const auto& s : trace) {
    out << s.step << ',' << format_sig17(s.t) << ',' << format_sig17(s.e) << ','
        << format_sig17(s.delta_e) << '\n';
  }
  finish_write(out, path);
}

void write_moment_csv(const std::filesystem::path& path, const Eigen::VectorXd& x,
                      const Eigen::MatrixXd& g) {
  if (x.size() != g.rows()) throw IoError(path.string() + ": x and g row counts differ");
  auto out = open_for_write(path);
  out << 'x';
  for (Eigen::Index k = 0; k < g.cols(); ++k) out << ",g" << (k + 1);
  out << '\n';
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    out << format_sig17(x(i));
    for (Eigen::Index k = 0; k < g.cols(); ++k) out << ',' << format_sig17(g(i, k));
    out << '\n';
  }
  finish_write(out, path);
}

Profile read_profile_csv(const std::filesystem::path& path) {
  const CsvTable table = read_csv(path);
  try {
    return {table.column("x"), table.column("rho")};
  } catch (const IoError& err) {
    throw IoError(path.string() + ": " + err.what());
  }
}

std::vector<EnergySample> read_energy_csv(const std::filesystem::path& path) {
  const CsvTable table = read_csv(path);
  if (table.header != std::vector<std::string>{"step", "t", "e", "delta_e"}) {
    throw IoError(path.string() + ": expected header step,t,e,delta_e");
  }
  std::vector<EnergySample> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    out.push_back({static_cast<std::size_t>(row[0]), row[1], row[2], row[3]});
  }
  return out;
}

void write_metadata(const std::filesystem::path& path, const Metadata& entries) {
  auto out = open_for_write(path);
  for (const auto& [key, value] : entries) out << key << " = " << value << '\n';
  finish_write(out, path);
}

Metadata read_metadata(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  Metadata out;
  for (std::string line; std::getline(in, line);) {
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) continue;
    out.emplace_back(line.substr(0, eq), line.substr(eq + 3));
  }
  return out;
}

}  // namespace apdlr
