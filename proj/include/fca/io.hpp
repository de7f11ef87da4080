#pragma once

#include <cstddef>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fca/context.hpp"
#include "fca/error.hpp"
#include "fca/implications.hpp"
#include "fca/relation.hpp"

namespace fca::io {

namespace detail {

inline std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

inline std::size_t parse_count(const std::string& s, std::size_t lineno) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size() || s.front() == '-')
    throw Error(ErrorCode::kParse, "line " + std::to_string(lineno) + ": expected a count, got '" + s + "'");
  return static_cast<std::size_t>(v);
}

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream is{std::string(s)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Burmeister (.cxt)

/// "B", blank, |G|, |M|, blank, object names, attribute names, then one row
/// of exactly |M| cells per object: 'X' incident, '.' not.
inline Context read_burmeister(std::istream& in) {
  const auto lines = detail::read_lines(in);
  auto at = [&](std::size_t i) -> const std::string& {
    if (i >= lines.size()) throw Error(ErrorCode::kParse, "unexpected end of input at line " + std::to_string(i + 1));
    return lines[i];
  };
  if (at(0) != "B") throw Error(ErrorCode::kParse, "line 1: expected 'B'");
  if (!at(1).empty()) throw Error(ErrorCode::kParse, "line 2: expected a blank line");
  const auto g = detail::parse_count(at(2), 3);
  const auto m = detail::parse_count(at(3), 4);
  if (!at(4).empty()) throw Error(ErrorCode::kParse, "line 5: expected a blank line");
  std::size_t pos = 5;
  std::vector<std::string> objects, attributes;
  for (std::size_t i = 0; i < g; ++i) objects.push_back(at(pos++));
  for (std::size_t i = 0; i < m; ++i) attributes.push_back(at(pos++));
  Context k(std::move(objects), std::move(attributes));
  for (std::size_t i = 0; i < g; ++i, ++pos) {
    const auto& row = at(pos);
    if (row.size() != m)
      throw Error(ErrorCode::kParse, "line " + std::to_string(pos + 1) + ": expected " + std::to_string(m) +
                                         " cells, got " + std::to_string(row.size()));
    for (std::size_t j = 0; j < m; ++j) {
      if (row[j] == 'X' || row[j] == 'x') {
        k.set(i, j);
      } else if (row[j] != '.') {
        throw Error(ErrorCode::kParse, "line " + std::to_string(pos + 1) + ": invalid cell character '" +
                                           std::string(1, row[j]) + "'");
      }
    }
  }
  for (; pos < lines.size(); ++pos)
    if (!lines[pos].empty()) throw Error(ErrorCode::kParse, "line " + std::to_string(pos + 1) + ": trailing content");
  return k;
}

inline std::string write_burmeister(const Context& k) {
  std::ostringstream os;
  os << "B\n\n" << k.num_objects() << "\n" << k.num_attributes() << "\n\n";
  for (const auto& o : k.objects()) os << o << "\n";
  for (const auto& a : k.attributes()) os << a << "\n";
  for (std::size_t g = 0; g < k.num_objects(); ++g) {
    for (std::size_t m = 0; m < k.num_attributes(); ++m) os << (k.incident(g, m) ? 'X' : '.');
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// CSV

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line, std::size_t lineno) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw Error(ErrorCode::kParse, "line " + std::to_string(lineno) + ": unterminated quote");
  cells.push_back(trim(cur));
  return cells;
}

inline std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  ValueOrders orders;
};

// Lines starting with '#' are comments, except "# order attr=v1|v2|..."
// which declares a value order for interordinal scaling.
inline CsvTable read_csv_table(std::istream& in) {
  CsvTable t;
  const auto lines = read_lines(in);
  bool have_header = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (trim(line).empty()) continue;
    if (line.front() == '#') {
      const auto body = trim(std::string_view(line).substr(1));
      if (body.rfind("order ", 0) == 0) {
        const auto spec = trim(std::string_view(body).substr(6));
        const auto eq = spec.find('=');
        if (eq == std::string::npos)
          throw Error(ErrorCode::kParse, "line " + std::to_string(i + 1) + ": expected '# order attr=v1|v2'");
        std::vector<std::string> values;
        std::string v;
        std::istringstream vs(spec.substr(eq + 1));
        while (std::getline(vs, v, '|')) values.push_back(trim(v));
        t.orders[trim(std::string_view(spec).substr(0, eq))] = std::move(values);
      }
      continue;
    }
    auto cells = split_csv_line(line, i + 1);
    if (!have_header) {
      if (cells.empty()) throw Error(ErrorCode::kParse, "line " + std::to_string(i + 1) + ": empty header");
      t.header = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != t.header.size())
      throw Error(ErrorCode::kParse, "line " + std::to_string(i + 1) + ": expected " +
                                         std::to_string(t.header.size()) + " cells, got " + std::to_string(cells.size()));
    t.rows.push_back(std::move(cells));
  }
  if (!have_header) throw Error(ErrorCode::kParse, "missing header row");
  return t;
}

}  // namespace detail

/// Header row: corner cell then attribute names; each row: object name then
/// "1"/"0" cells.
inline Context read_csv(std::istream& in) {
  auto t = detail::read_csv_table(in);
  std::vector<std::string> attributes(t.header.begin() + 1, t.header.end());
  std::vector<std::string> objects;
  for (const auto& r : t.rows) objects.push_back(r[0]);
  Context k(std::move(objects), std::move(attributes));
  for (std::size_t g = 0; g < t.rows.size(); ++g)
    for (std::size_t m = 1; m < t.rows[g].size(); ++m) {
      const auto& c = t.rows[g][m];
      if (c == "1") {
        k.set(g, m - 1);
      } else if (c != "0") {
        throw Error(ErrorCode::kParse, "row '" + t.rows[g][0] + "': binary cell must be 0 or 1, got '" + c + "'");
      }
    }
  return k;
}

struct ManyValuedInput {
  ManyValuedContext context;
  ValueOrders orders;
};

inline ManyValuedInput read_many_valued_csv(std::istream& in) {
  auto t = detail::read_csv_table(in);
  std::vector<std::string> attributes(t.header.begin() + 1, t.header.end());
  std::vector<std::string> objects;
  std::vector<std::vector<std::string>> values;
  for (auto& r : t.rows) {
    objects.push_back(r[0]);
    values.emplace_back(r.begin() + 1, r.end());
  }
  return {ManyValuedContext(std::move(objects), std::move(attributes), std::move(values)), std::move(t.orders)};
}

inline std::string write_csv(const Context& k) {
  std::ostringstream os;
  for (const auto& a : k.attributes()) os << "," << detail::csv_cell(a);
  os << "\n";
  for (std::size_t g = 0; g < k.num_objects(); ++g) {
    os << detail::csv_cell(k.objects()[g]);
    for (std::size_t m = 0; m < k.num_attributes(); ++m) os << "," << (k.incident(g, m) ? "1" : "0");
    os << "\n";
  }
  return os.str();
}

inline std::string write_many_valued_csv(const ManyValuedContext& mv) {
  std::ostringstream os;
  for (const auto& a : mv.attributes()) os << "," << detail::csv_cell(a);
  os << "\n";
  for (std::size_t g = 0; g < mv.num_objects(); ++g) {
    os << detail::csv_cell(mv.objects()[g]);
    for (std::size_t m = 0; m < mv.num_attributes(); ++m) os << "," << detail::csv_cell(mv.value(g, m));
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Relation matrices

/// First line n, then n lines of n '0'/'1' characters.
inline Relation read_relation(std::istream& in) {
  auto lines = detail::read_lines(in);
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw Error(ErrorCode::kParse, "empty relation file");
  const auto n = detail::parse_count(detail::trim(lines[0]), 1);
  if (lines.size() != n + 1)
    throw Error(ErrorCode::kParse, "expected " + std::to_string(n) + " matrix rows, got " + std::to_string(lines.size() - 1));
  Relation r(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = lines[i + 1];
    if (row.size() != n)
      throw Error(ErrorCode::kParse, "line " + std::to_string(i + 2) + ": expected " + std::to_string(n) + " characters");
    for (std::size_t j = 0; j < n; ++j) {
      if (row[j] == '1') {
        r.add(i, j);
      } else if (row[j] != '0') {
        throw Error(ErrorCode::kParse, "line " + std::to_string(i + 2) + ": invalid character '" +
                                           std::string(1, row[j]) + "'");
      }
    }
  }
  return r;
}

inline std::string write_relation(const Relation& r) {
  std::ostringstream os;
  os << r.size() << "\n";
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = 0; j < r.size(); ++j) os << (r.has(i, j) ? '1' : '0');
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Implications: one per line, "a b -> c d"

inline ImplicationSet read_implications(std::istream& in, const std::vector<std::string>& universe) {
  std::unordered_map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < universe.size(); ++i) idx.emplace(universe[i], i);
  auto to_set = [&](std::string_view side, std::size_t lineno) {
    AttributeSet s(universe.size());
    for (const auto& name : detail::split_ws(side)) {
      auto it = idx.find(name);
      if (it == idx.end())
        throw Error(ErrorCode::kUnknownName, "line " + std::to_string(lineno) + ": unknown attribute '" + name + "'");
      s.set(it->second);
    }
    return s;
  };
  ImplicationSet l(universe.size());
  const auto lines = detail::read_lines(in);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = detail::trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    const auto arrow = line.find("->");
    if (arrow == std::string::npos) throw Error(ErrorCode::kParse, "line " + std::to_string(i + 1) + ": missing '->'");
    auto premise = to_set(std::string_view(line).substr(0, arrow), i + 1);
    auto conclusion = to_set(std::string_view(line).substr(arrow + 2), i + 1);
    l.add({premise, premise | conclusion});
  }
  return l;
}

/// Premise-disjoint display form "a b -> c".
inline std::string format_implication(const Implication& imp, const std::vector<std::string>& universe) {
  std::string out;
  auto append = [&](const AttributeSet& s) {
    bool first = true;
    s.for_each([&](std::size_t m) {
      if (!first) out += ' ';
      out += universe[m];
      first = false;
    });
  };
  append(imp.premise);
  out += out.empty() ? "->" : " ->";
  const auto added = imp.added();
  if (added.any()) {
    out += ' ';
    append(added);
  }
  return out;
}

inline std::string write_implications(const ImplicationSet& l, const std::vector<std::string>& universe) {
  std::string out;
  for (const auto& i : l) out += format_implication(i, universe) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Files

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot open '" + path + "'");
  return in;
}

inline bool has_suffix(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

/// Burmeister unless the path ends in ".csv".
inline Context load_context(const std::string& path) {
  auto in = open_input(path);
  return has_suffix(path, ".csv") ? read_csv(in) : read_burmeister(in);
}

}  // namespace fca::io
