#pragma once

// Text formats.  "pgt 1" carries an explicit multiplication table:
//
//   pgt 1
//   order N
//   name free text          (optional)
//   table
//   N rows of N indices
//
// "fpc 1" carries a free p-central scheme descriptor:
//
//   fpc 1
//   p P
//   r R
//   n N
//
// Writers emit exactly one canonical byte sequence per value; readers accept
// exactly that shape and throw std::invalid_argument otherwise.  Tables are
// re-validated on read through the CayleyGroup constructor.

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pgroups/cayley.hpp"
#include "pgroups/freepcentral.hpp"

namespace pgroups {

namespace detail {

inline std::string io_line(std::istream& is, const char* what) {
  std::string line;
  if (!std::getline(is, line))
    throw std::invalid_argument(std::string(what) + ": unexpected end of input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

inline long long io_value(const std::string& line, const std::string& key, const char* what) {
  if (line.size() <= key.size() + 1 || line.compare(0, key.size(), key) != 0 ||
      line[key.size()] != ' ')
    throw std::invalid_argument(std::string(what) + ": expected '" + key + " <value>' line");
  std::istringstream ss(line.substr(key.size() + 1));
  long long v = 0;
  if (!(ss >> v) || !(ss >> std::ws).eof())
    throw std::invalid_argument(std::string(what) + ": malformed '" + key + "' value");
  return v;
}

}  // namespace detail

inline void write_group(std::ostream& os, const CayleyGroup& g) {
  os << "pgt 1\norder " << g.order() << "\n";
  if (!g.name().empty()) os << "name " << g.name() << "\n";
  os << "table\n";
  for (int i = 0; i < g.order(); ++i) {
    for (int j = 0; j < g.order(); ++j) os << g.mul(i, j) << (j + 1 < g.order() ? ' ' : '\n');
  }
}

inline CayleyGroup read_group(std::istream& is) {
  if (detail::io_line(is, "pgt") != "pgt 1")
    throw std::invalid_argument("pgt: missing 'pgt 1' header");
  long long order = detail::io_value(detail::io_line(is, "pgt"), "order", "pgt");
  if (order < 1 || order > CayleyGroup::kMaxOrder)
    throw std::invalid_argument("pgt: order out of range");
  std::string line = detail::io_line(is, "pgt");
  std::string name;
  if (line.compare(0, 5, "name ") == 0) {
    name = line.substr(5);
    line = detail::io_line(is, "pgt");
  }
  if (line != "table") throw std::invalid_argument("pgt: expected 'table' line");
  int n = static_cast<int>(order);
  std::vector<int> table;
  table.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    std::istringstream row(detail::io_line(is, "pgt"));
    long long v = 0;
    for (int j = 0; j < n; ++j) {
      if (!(row >> v) || v < 0 || v >= order)
        throw std::invalid_argument("pgt: malformed table row");
      table.push_back(static_cast<int>(v));
    }
    if (!(row >> std::ws).eof()) throw std::invalid_argument("pgt: excess entries in table row");
  }
  return CayleyGroup(n, std::move(table), std::move(name));
}

inline void write_scheme(std::ostream& os, const FpcScheme& s) {
  os << "fpc 1\np " << s.p << "\nr " << s.r << "\nn " << s.n << "\n";
}

inline SchemePtr read_scheme(std::istream& is) {
  if (detail::io_line(is, "fpc") != "fpc 1")
    throw std::invalid_argument("fpc: missing 'fpc 1' header");
  long long p = detail::io_value(detail::io_line(is, "fpc"), "p", "fpc");
  long long r = detail::io_value(detail::io_line(is, "fpc"), "r", "fpc");
  long long n = detail::io_value(detail::io_line(is, "fpc"), "n", "fpc");
  if (r < 2 || r > 64 || n < 1 || n > 64) throw std::invalid_argument("fpc: parameter out of range");
  return construct_free_pcentral(p, static_cast<int>(r), static_cast<int>(n));
}

// Sniffs the format from the first line: "pgt" for tables, "fpc" for schemes.
enum class InputKind { group_table, scheme };

inline InputKind sniff_kind(std::istream& is) {
  int c = is.peek();
  if (c == 'p') return InputKind::group_table;
  if (c == 'f') return InputKind::scheme;
  throw std::invalid_argument("input: unrecognized format header");
}

inline std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace pgroups
