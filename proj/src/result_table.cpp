#include "qpac/result_table.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qpac {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void ResultTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::invalid_argument("row has " + std::to_string(row.size()) + " cells, table has " +
                                std::to_string(columns.size()) + " columns");
  }
  rows.push_back(std::move(row));
}

std::string ResultTable::to_csv() const {
  std::ostringstream os;
  os << "# " << header.dump() << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      std::visit(
          [&os](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
              os << v;
            } else if constexpr (std::is_same_v<T, double>) {
              os << format_number(v);
            } else {
              os << v;
            }
          },
          row[i]);
    }
    os << '\n';
  }
  return os.str();
}

ResultTable ResultTable::from_csv(const std::string& text) {
  ResultTable t;
  std::istringstream in(text);
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
      if (c == ',') {
        out.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    out.push_back(cur);
    return out;
  };
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
    throw std::invalid_argument("CSV lacks the '# {json}' header line");
  }
  t.header = nlohmann::json::parse(line.substr(2));
  if (!std::getline(in, line)) throw std::invalid_argument("CSV lacks the column line");
  t.columns = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<Cell> row;
    for (auto& field : split(line)) {
      if (field.empty()) {
        row.emplace_back(std::monostate{});
        continue;
      }
      double v = 0.0;
      const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
      if (res.ec == std::errc() && res.ptr == field.data() + field.size()) {
        row.emplace_back(v);
      } else {
        row.emplace_back(field);
      }
    }
    t.add_row(std::move(row));
  }
  return t;
}

std::size_t ResultTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw std::invalid_argument("no column named '" + name + "'");
}

void write_file_atomically(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

}  // namespace qpac
