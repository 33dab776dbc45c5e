// Copyright 2026 The milpret Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "milpret/core/mps.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "milpret/core/error.hpp"

namespace milpret {
namespace {

enum class Section { kNone, kName, kObjSense, kRows, kColumns, kRhs, kRanges, kBounds, kEnd };

std::optional<Section> section_from_keyword(std::string_view word) {
  if (word == "NAME") return Section::kName;
  if (word == "OBJSENSE") return Section::kObjSense;
  if (word == "ROWS") return Section::kRows;
  if (word == "COLUMNS") return Section::kColumns;
  if (word == "RHS") return Section::kRhs;
  if (word == "RANGES") return Section::kRanges;
  if (word == "BOUNDS") return Section::kBounds;
  if (word == "ENDATA") return Section::kEnd;
  return std::nullopt;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

struct LineError {
  int line_no;
  [[noreturn]] void malformed(const std::string& what) const {
    fail(ErrorKind::kMalformedSection, "line " + std::to_string(line_no) + ": " + what);
  }
  [[noreturn]] void unknown(const std::string& what) const {
    fail(ErrorKind::kUnknownRowOrColumn, "line " + std::to_string(line_no) + ": " + what);
  }
};

double parse_number(std::string_view tok, const LineError& err) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) err.malformed("bad number '" + std::string(tok) + "'");
  if (std::isnan(v)) err.malformed("NaN value");
  if (v >= 1e30) return kInf;
  if (v <= -1e30) return -kInf;
  return v;
}

struct RowDecl {
  RowSense sense;
  bool free;
};

struct ParseState {
  std::string name;
  ObjectiveSense objsense = ObjectiveSense::kMinimize;
  std::string objective_row;
  std::unordered_map<std::string, int> row_index;  // -1 objective, -2 free row
  std::vector<std::string> row_names;
  std::vector<RowSense> senses;
  std::unordered_map<std::string, int> col_index;
  std::vector<std::string> col_names;
  std::vector<VarType> types;
  std::vector<double> c;
  std::vector<std::map<int, double>> rows;  // per row: col -> value
  std::vector<double> rhs;
  std::vector<std::optional<double>> range;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<bool> binary;
  bool in_marker = false;
};

}  // namespace

MilpInstance parse_mps(std::string_view text, std::vector<std::string>* warnings) {
  const auto warn = [&](const std::string& msg) {
    if (warnings) warnings->push_back(msg);
  };
  ParseState st;
  Section section = Section::kNone;
  bool saw_rows = false;
  bool saw_columns = false;
  int line_no = 0;
  std::size_t pos = 0;
  bool ended = false;

  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const LineError err{line_no};
    const auto tokens = split_ws(line);
    if (tokens.empty() || line.front() == '*') {
      if (pos > text.size()) break;
      continue;
    }
    if (ended) err.malformed("content after ENDATA");

    const bool header = !std::isspace(static_cast<unsigned char>(line.front()));
    if (header) {
      const auto next = section_from_keyword(tokens[0]);
      if (!next) err.malformed("unknown section '" + std::string(tokens[0]) + "'");
      section = *next;
      switch (section) {
        case Section::kName: {
          const auto rest = line.substr(4);
          const auto first = rest.find_first_not_of(" \t");
          st.name = first == std::string_view::npos ? "" : std::string(rest.substr(first));
          while (!st.name.empty() && std::isspace(static_cast<unsigned char>(st.name.back()))) {
            st.name.pop_back();
          }
          break;
        }
        case Section::kObjSense:
          if (tokens.size() == 2) {
            if (tokens[1] == "MAX" || tokens[1] == "MAXIMIZE") {
              st.objsense = ObjectiveSense::kMaximize;
            } else if (tokens[1] != "MIN" && tokens[1] != "MINIMIZE") {
              err.malformed("bad OBJSENSE");
            }
          } else if (tokens.size() != 1) {
            err.malformed("bad OBJSENSE");
          }
          break;
        case Section::kRows:
          if (tokens.size() != 1) err.malformed("ROWS takes no arguments");
          saw_rows = true;
          break;
        case Section::kColumns:
          if (!saw_rows) err.malformed("COLUMNS before ROWS");
          saw_columns = true;
          [[fallthrough]];
        case Section::kRhs:
        case Section::kRanges:
        case Section::kBounds:
          if (tokens.size() != 1) err.malformed(std::string(tokens[0]) + " takes no arguments");
          break;
        case Section::kEnd:
          if (tokens.size() != 1) err.malformed("ENDATA takes no arguments");
          ended = true;
          break;
        case Section::kNone:
          break;
      }
      if (pos > text.size()) break;
      continue;
    }

    switch (section) {
      case Section::kNone:
      case Section::kName:
      case Section::kEnd:
        err.malformed("data line outside a section");
      case Section::kObjSense: {
        if (tokens.size() != 1) err.malformed("bad OBJSENSE entry");
        if (tokens[0] == "MAX" || tokens[0] == "MAXIMIZE") {
          st.objsense = ObjectiveSense::kMaximize;
        } else if (tokens[0] == "MIN" || tokens[0] == "MINIMIZE") {
          st.objsense = ObjectiveSense::kMinimize;
        } else {
          err.malformed("bad OBJSENSE entry");
        }
        break;
      }
      case Section::kRows: {
        if (tokens.size() != 2) err.malformed("ROWS entry needs 2 fields");
        const std::string rname(tokens[1]);
        if (st.row_index.count(rname)) err.malformed("duplicate row " + rname);
        const auto type = tokens[0];
        if (type == "N") {
          if (st.objective_row.empty()) {
            st.objective_row = rname;
            st.row_index[rname] = -1;
          } else {
            warn("free row " + rname + " ignored");
            st.row_index[rname] = -2;
          }
          break;
        }
        RowSense sense;
        if (type == "L") {
          sense = RowSense::kLessEqual;
        } else if (type == "G") {
          sense = RowSense::kGreaterEqual;
        } else if (type == "E") {
          sense = RowSense::kEqual;
        } else {
          err.malformed("unknown row type '" + std::string(type) + "'");
        }
        st.row_index[rname] = static_cast<int>(st.senses.size());
        st.row_names.push_back(rname);
        st.senses.push_back(sense);
        st.rows.emplace_back();
        st.rhs.push_back(0.0);
        st.range.emplace_back();
        break;
      }
      case Section::kColumns: {
        if (tokens.size() >= 3 && tokens[1] == "'MARKER'") {
          if (tokens.size() != 3) err.malformed("bad MARKER line");
          if (tokens[2] == "'INTORG'") {
            st.in_marker = true;
          } else if (tokens[2] == "'INTEND'") {
            st.in_marker = false;
          } else {
            err.malformed("unknown marker " + std::string(tokens[2]));
          }
          break;
        }
        if (tokens.size() != 3 && tokens.size() != 5) err.malformed("COLUMNS entry needs 3 or 5 fields");
        const std::string cname(tokens[0]);
        int j;
        auto it = st.col_index.find(cname);
        if (it == st.col_index.end()) {
          j = static_cast<int>(st.col_names.size());
          st.col_index.emplace(cname, j);
          st.col_names.push_back(cname);
          st.types.push_back(st.in_marker ? VarType::kInteger : VarType::kContinuous);
          st.c.push_back(0.0);
          st.lower.push_back(0.0);
          st.upper.push_back(kInf);
          st.binary.push_back(false);
        } else {
          j = it->second;
        }
        for (std::size_t k = 1; k + 1 < tokens.size(); k += 2) {
          const std::string rname(tokens[k]);
          const auto rit = st.row_index.find(rname);
          if (rit == st.row_index.end()) err.unknown("unknown row " + rname);
          const double v = parse_number(tokens[k + 1], err);
          if (!std::isfinite(v)) err.malformed("infinite coefficient");
          if (rit->second == -1) {
            st.c[j] += v;
          } else if (rit->second >= 0) {
            if (v == 0.0) continue;
            auto& row = st.rows[rit->second];
            if (row.count(j)) err.malformed("duplicate entry " + cname + "/" + rname);
            row.emplace(j, v);
          }
        }
        break;
      }
      case Section::kRhs:
      case Section::kRanges: {
        if (tokens.size() < 2 || tokens.size() > 5) err.malformed("RHS/RANGES entry has a bad field count");
        const std::size_t first = tokens.size() % 2 == 1 ? 1 : 0;
        for (std::size_t k = first; k + 1 < tokens.size(); k += 2) {
          const std::string rname(tokens[k]);
          const auto rit = st.row_index.find(rname);
          if (rit == st.row_index.end()) err.unknown("unknown row " + rname);
          const double v = parse_number(tokens[k + 1], err);
          if (!std::isfinite(v)) err.malformed("infinite rhs/range");
          if (rit->second < 0) {
            warn("rhs/range on objective or free row " + rname + " ignored");
            continue;
          }
          if (section == Section::kRhs) {
            st.rhs[rit->second] = v;
          } else {
            st.range[rit->second] = v;
          }
        }
        break;
      }
      case Section::kBounds: {
        if (tokens.size() != 3 && tokens.size() != 4) err.malformed("BOUNDS entry needs 3 or 4 fields");
        const auto type = tokens[0];
        const std::string cname(tokens[2]);
        const auto cit = st.col_index.find(cname);
        if (cit == st.col_index.end()) err.unknown("unknown column " + cname);
        const int j = cit->second;
        const bool valueless = type == "FR" || type == "MI" || type == "PL" || type == "BV";
        if (!valueless && tokens.size() != 4) err.malformed("bound " + std::string(type) + " needs a value");
        if (valueless && tokens.size() != 3 && type != "BV") {
          err.malformed("bound " + std::string(type) + " takes no value");
        }
        const double v = tokens.size() == 4 ? parse_number(tokens[3], err) : 0.0;
        if (type == "UP" || type == "UI") {
          st.upper[j] = v;
          if (v < 0.0 && st.lower[j] == 0.0) {
            st.lower[j] = -kInf;
            warn("negative UP bound on " + cname + " sets lower bound to -inf");
          }
          if (type == "UI") st.types[j] = VarType::kInteger;
        } else if (type == "LO" || type == "LI") {
          st.lower[j] = v;
          if (type == "LI") st.types[j] = VarType::kInteger;
        } else if (type == "FX") {
          st.lower[j] = v;
          st.upper[j] = v;
        } else if (type == "FR") {
          st.lower[j] = -kInf;
          st.upper[j] = kInf;
        } else if (type == "MI") {
          st.lower[j] = -kInf;
        } else if (type == "PL") {
          st.upper[j] = kInf;
        } else if (type == "BV") {
          st.types[j] = VarType::kInteger;
          st.lower[j] = 0.0;
          st.upper[j] = 1.0;
        } else {
          err.malformed("unsupported bound type '" + std::string(type) + "'");
        }
        break;
      }
    }
    if (pos > text.size()) break;
  }

  if (!ended) fail(ErrorKind::kMalformedSection, "missing ENDATA");
  if (!saw_columns || st.col_names.empty()) fail(ErrorKind::kEmptyProblem, "no columns");
  if (st.senses.empty()) fail(ErrorKind::kEmptyProblem, "no constraint rows");

  InstanceBuilder builder(st.name, st.objsense);
  const int n = static_cast<int>(st.col_names.size());
  for (int j = 0; j < n; ++j) {
    VarType t = st.types[j];
    if (t == VarType::kInteger && st.lower[j] == 0.0 && st.upper[j] == 1.0) t = VarType::kBinary;
    if (st.lower[j] > st.upper[j]) {
      fail(ErrorKind::kMalformedSection, "inconsistent bounds on column " + st.col_names[j]);
    }
    builder.add_var(st.c[j], st.lower[j], st.upper[j], t);
  }
  std::vector<std::string> row_names = st.row_names;
  struct Extra {
    int source;
    RowSense sense;
    double rhs;
  };
  std::vector<Extra> extras;
  const int m = static_cast<int>(st.senses.size());
  std::vector<RowSense> senses = st.senses;
  std::vector<double> rhs = st.rhs;
  for (int i = 0; i < m; ++i) {
    if (st.rows[i].empty()) {
      fail(ErrorKind::kMalformedSection, "row " + st.row_names[i] + " has no coefficients");
    }
    if (!st.range[i]) continue;
    const double r = *st.range[i];
    double lo, hi;
    switch (st.senses[i]) {
      case RowSense::kLessEqual:
        lo = st.rhs[i] - std::abs(r);
        hi = st.rhs[i];
        break;
      case RowSense::kGreaterEqual:
        lo = st.rhs[i];
        hi = st.rhs[i] + std::abs(r);
        break;
      case RowSense::kEqual:
      default:
        lo = r >= 0 ? st.rhs[i] : st.rhs[i] + r;
        hi = r >= 0 ? st.rhs[i] + r : st.rhs[i];
        break;
    }
    senses[i] = RowSense::kGreaterEqual;
    rhs[i] = lo;
    extras.push_back({i, RowSense::kLessEqual, hi});
  }
  for (int i = 0; i < m; ++i) {
    std::vector<std::pair<int, double>> terms(st.rows[i].begin(), st.rows[i].end());
    builder.add_row(std::move(terms), senses[i], rhs[i]);
  }
  for (const auto& e : extras) {
    std::vector<std::pair<int, double>> terms(st.rows[e.source].begin(), st.rows[e.source].end());
    builder.add_row(std::move(terms), e.sense, e.rhs);
    row_names.push_back(st.row_names[e.source] + "_rng");
  }
  MilpInstance inst = std::move(builder).build();
  inst.var_names = st.col_names;
  inst.row_names = std::move(row_names);
  return inst;
}

namespace {

void append_number(std::string& out, double v) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof(buf), "%.17g", v);
  out.append(buf, static_cast<std::size_t>(len));
}

}  // namespace

std::string write_mps(const MilpInstance& inst) {
  const int n = inst.num_vars();
  const int m = inst.num_rows();
  std::string obj_name = "obj";
  {
    std::vector<std::string> names;
    for (int i = 0; i < m; ++i) names.push_back(inst.row_name(i));
    std::sort(names.begin(), names.end());
    while (std::binary_search(names.begin(), names.end(), obj_name)) obj_name += "_";
  }
  const auto cv = column_view(inst);

  std::string out;
  out.reserve(64 * (static_cast<std::size_t>(inst.nnz()) + n + m));
  out += "NAME";
  if (!inst.name.empty()) {
    out += ' ';
    out += inst.name;
  }
  out += '\n';
  if (inst.objective_sense == ObjectiveSense::kMaximize) out += "OBJSENSE\n MAX\n";
  out += "ROWS\n N ";
  out += obj_name;
  out += '\n';
  for (int i = 0; i < m; ++i) {
    switch (inst.senses[i]) {
      case RowSense::kLessEqual: out += " L "; break;
      case RowSense::kGreaterEqual: out += " G "; break;
      case RowSense::kEqual: out += " E "; break;
    }
    out += inst.row_name(i);
    out += '\n';
  }
  out += "COLUMNS\n";
  bool in_marker = false;
  int marker_id = 0;
  for (int j = 0; j < n; ++j) {
    const bool integral = is_integral(inst.integrality[j]);
    if (integral && !in_marker) {
      out += " MARKER" + std::to_string(marker_id) + " 'MARKER' 'INTORG'\n";
      in_marker = true;
    } else if (!integral && in_marker) {
      out += " MARKER" + std::to_string(marker_id++) + " 'MARKER' 'INTEND'\n";
      in_marker = false;
    }
    const std::string name = inst.var_name(j);
    const bool has_entries = cv.col_start[j + 1] > cv.col_start[j];
    if (inst.c[j] != 0.0 || !has_entries) {
      out += ' ';
      out += name;
      out += ' ';
      out += obj_name;
      out += ' ';
      append_number(out, inst.c[j]);
      out += '\n';
    }
    for (auto k = cv.col_start[j]; k < cv.col_start[j + 1]; ++k) {
      out += ' ';
      out += name;
      out += ' ';
      out += inst.row_name(cv.row_index[k]);
      out += ' ';
      append_number(out, cv.value[k]);
      out += '\n';
    }
  }
  if (in_marker) out += " MARKER" + std::to_string(marker_id) + " 'MARKER' 'INTEND'\n";
  out += "RHS\n";
  for (int i = 0; i < m; ++i) {
    if (inst.b[i] == 0.0) continue;
    out += " RHS ";
    out += inst.row_name(i);
    out += ' ';
    append_number(out, inst.b[i]);
    out += '\n';
  }
  out += "BOUNDS\n";
  const auto bound = [&](const char* type, const std::string& name) {
    out += ' ';
    out += type;
    out += " BND ";
    out += name;
  };
  for (int j = 0; j < n; ++j) {
    const std::string name = inst.var_name(j);
    const double l = inst.lower[j];
    const double u = inst.upper[j];
    if (inst.integrality[j] == VarType::kBinary) {
      bound("BV", name);
      out += '\n';
    } else if (l == -kInf && u == kInf) {
      bound("FR", name);
      out += '\n';
    } else if (l == u) {
      bound("FX", name);
      out += ' ';
      append_number(out, l);
      out += '\n';
    } else {
      if (l == -kInf) {
        bound("MI", name);
        out += '\n';
      } else if (l != 0.0) {
        bound("LO", name);
        out += ' ';
        append_number(out, l);
        out += '\n';
      }
      if (u != kInf) {
        bound("UP", name);
        out += ' ';
        append_number(out, u);
        out += '\n';
      }
    }
  }
  out += "ENDATA\n";
  return out;
}

MilpInstance read_mps_file(const std::filesystem::path& path, std::vector<std::string>* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_mps(ss.str(), warnings);
}

void write_mps_file(const MilpInstance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot write " + path.string());
  out << write_mps(inst);
  if (!out) fail(ErrorKind::kIo, "write failed for " + path.string());
}

}  // namespace milpret
