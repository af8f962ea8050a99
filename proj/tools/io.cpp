#include "io.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <iterator>

namespace ringcore::io {

namespace {

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Field {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Field> SplitFields(const std::string& line, char sep) {
  std::vector<Field> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    const std::string raw = line.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
    out.push_back({Trim(raw), start + 1});
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

double ParseNumber(const Field& f, std::size_t line) {
  if (f.text.empty()) throw ParseError("empty numeric field", line, f.column);
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(f.text.c_str(), &end);
  if (end != f.text.c_str() + f.text.size() || errno == ERANGE) {
    throw ParseError("not a number: '" + f.text + "'", line, f.column);
  }
  if (!std::isfinite(v)) throw ParseError("non-finite number: '" + f.text + "'", line, f.column);
  return v;
}

std::uint32_t ParseVertex(const Field& f, std::size_t line) {
  const double v = ParseNumber(f, line);
  if (v < 0.0 || v != std::floor(v) || v > 4294967294.0) {
    throw ParseError("vertex ids must be nonnegative integers", line, f.column);
  }
  return static_cast<std::uint32_t>(v);
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

// Whitespace-separated fields of a line with `#` comments removed.
std::vector<Field> Tokens(const std::string& raw) {
  const std::string line = raw.substr(0, raw.find('#'));
  std::vector<Field> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

}  // namespace

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ConfigError("failed writing '" + path + "'");
}

PointsTable ParsePointsCsv(const std::string& text) {
  const std::vector<std::string> lines = Lines(text);
  if (lines.empty() || Trim(lines[0]).empty()) throw ParseError("empty input", 1, 1);

  PointsTable table;
  const std::vector<Field> header = SplitFields(lines[0], ',');
  std::size_t col = 0;
  while (col < header.size() && header[col].text == "x" + std::to_string(col + 1)) ++col;
  table.dim = col;
  if (table.dim == 0) throw ParseError("header must start with x1", 1, header[0].column);
  if (col < header.size() && header[col].text == "weight") {
    table.has_weights = true;
    ++col;
  }
  if (col < header.size() && header[col].text == "groups") {
    table.has_groups = true;
    ++col;
  }
  if (col != header.size()) {
    throw ParseError("unexpected column '" + header[col].text + "'", 1, header[col].column);
  }

  for (std::size_t l = 1; l < lines.size(); ++l) {
    const std::size_t line_no = l + 1;
    if (Trim(lines[l]).empty()) continue;
    const std::vector<Field> fields = SplitFields(lines[l], ',');
    if (fields.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " fields, found " +
                           std::to_string(fields.size()),
                       line_no, 1);
    }
    Vec p(table.dim);
    for (std::size_t d = 0; d < table.dim; ++d) p[d] = ParseNumber(fields[d], line_no);
    double w = 1.0;
    if (table.has_weights) {
      const Field& f = fields[table.dim];
      w = ParseNumber(f, line_no);
      if (w < 0.0) throw ParseError("negative weight", line_no, f.column);
    }
    if (table.has_groups) {
      GroupLabels g;
      for (const Field& label : SplitFields(fields.back().text, ';')) {
        if (!label.text.empty()) g.push_back(label.text);
      }
      table.labels.push_back(std::move(g));
    }
    table.points.push_back(std::move(p));
    table.weights.push_back(w);
  }
  if (table.points.empty()) throw ParseError("no data rows", 2, 1);
  return table;
}

std::string PointsCsv(const PointsTable& table) {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t d = 0; d < table.dim; ++d) out << (d ? "," : "") << 'x' << d + 1;
  if (table.has_weights) out << ",weight";
  if (table.has_groups) out << ",groups";
  out << '\n';
  for (std::size_t i = 0; i < table.points.size(); ++i) {
    for (std::size_t d = 0; d < table.dim; ++d) out << (d ? "," : "") << table.points[i][d];
    if (table.has_weights) out << ',' << table.weights[i];
    if (table.has_groups) {
      out << ',';
      for (std::size_t l = 0; l < table.labels[i].size(); ++l) out << (l ? ";" : "") << table.labels[i][l];
    }
    out << '\n';
  }
  return out.str();
}

EdgeList ParseEdgeList(const std::string& text) {
  EdgeList list;
  const std::vector<std::string> lines = Lines(text);
  for (std::size_t l = 0; l < lines.size(); ++l) {
    const std::vector<Field> tok = Tokens(lines[l]);
    if (tok.empty()) continue;
    if (tok.size() != 3) throw ParseError("expected 'u v w'", l + 1, tok.front().column);
    GraphSpace::Edge e{ParseVertex(tok[0], l + 1), ParseVertex(tok[1], l + 1), ParseNumber(tok[2], l + 1)};
    if (e.weight < 0.0) throw ParseError("negative edge weight", l + 1, tok[2].column);
    list.vertex_count = std::max<std::size_t>(list.vertex_count, std::max(e.u, e.v) + std::size_t{1});
    list.edges.push_back(e);
  }
  if (list.edges.empty()) throw ParseError("empty input", 1, 1);
  return list;
}

DataVertices ParseDataVertices(const std::string& text) {
  DataVertices dv;
  const std::vector<std::string> lines = Lines(text);
  for (std::size_t l = 0; l < lines.size(); ++l) {
    const std::vector<Field> tok = Tokens(lines[l]);
    if (tok.empty()) continue;
    if (tok.size() > 2) throw ParseError("expected 'id [weight]'", l + 1, tok[2].column);
    dv.ids.push_back(ParseVertex(tok[0], l + 1));
    double w = 1.0;
    if (tok.size() == 2) {
      w = ParseNumber(tok[1], l + 1);
      if (w < 0.0) throw ParseError("negative weight", l + 1, tok[1].column);
    }
    dv.weights.push_back(w);
  }
  if (dv.ids.empty()) throw ParseError("empty input", 1, 1);
  return dv;
}

Json ParseJson(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Translate the byte offset into a line and column.
    const std::size_t byte = std::min<std::size_t>(e.byte, text.size() + 1);
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < byte; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(text.find_first_not_of(" \t\r\n") == std::string::npos ? "empty input" : "malformed JSON",
                     line, column);
  }
}

std::vector<std::vector<Vec>> ParsePointLists(const std::string& text, bool equal_length,
                                              std::size_t expected_length) {
  const Json j = ParseJson(text);
  if (!j.is_array()) throw ParseError("expected a JSON array of point lists");
  if (j.empty()) throw ParseError("empty input", 1, 1);
  std::vector<std::vector<Vec>> lists;
  std::size_t dim = 0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& list = j[i];
    const std::string where = "entry " + std::to_string(i);
    if (!list.is_array() || list.empty()) throw ParseError(where + ": expected a nonempty array of points");
    if (equal_length) {
      const std::size_t want = expected_length ? expected_length : j[0].size();
      if (list.size() != want) {
        throw ParseError(where + ": tuple-length mismatch (" + std::to_string(list.size()) + " vs " +
                         std::to_string(want) + ")");
      }
    }
    std::vector<Vec> points;
    for (const Json& p : list) {
      if (!p.is_array() || p.empty()) throw ParseError(where + ": points must be nonempty arrays of numbers");
      Vec v;
      for (const Json& x : p) {
        if (!x.is_number()) throw ParseError(where + ": points must be nonempty arrays of numbers");
        v.push_back(x.get<double>());
      }
      if (dim == 0) dim = v.size();
      if (v.size() != dim) throw ParseError(where + ": point dimension mismatch");
      points.push_back(std::move(v));
    }
    lists.push_back(std::move(points));
  }
  return lists;
}

Json ParamsToJson(const ClusteringParams& p) {
  return Json{{"k", p.k}, {"z", p.z}, {"eps", p.eps}, {"delta", p.delta}, {"seed", p.seed}};
}

ClusteringParams ParamsFromJson(const Json& j) {
  ClusteringParams p;
  try {
    p.k = j.at("k").get<int>();
    p.z = j.at("z").get<double>();
    p.eps = j.at("eps").get<double>();
    p.delta = j.at("delta").get<double>();
    p.seed = j.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad params: ") + e.what());
  }
  return p;
}

CoresetFile ParseCoresetJson(const std::string& text) {
  const Json j = ParseJson(text);
  CoresetFile f;
  try {
    for (const Json& id : j.at("points")) f.ids.push_back(PointId{id.get<std::size_t>()});
    f.weights = j.at("weights").get<std::vector<double>>();
    if (j.contains("groups")) f.labels = j.at("groups").get<std::vector<GroupLabels>>();
    f.mode = j.at("mode").get<std::string>();
    f.reference_cost = j.value("reference_cost", 0.0);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad coreset file: ") + e.what());
  }
  f.params = ParamsFromJson(j.at("params"));
  if (f.ids.size() != f.weights.size()) throw ParseError("coreset points and weights differ in length");
  return f;
}

Json AccountingToJson(const SizeAccounting& a) {
  return Json{{"size", a.size},
              {"accounted_bound", a.accounted_bound},
              {"within_accounting", a.within_accounting()},
              {"size_bound", a.size_bound},
              {"ring_budget", a.ring_budget},
              {"ring_budget_total", a.ring_budget_total},
              {"clusters", a.clusters},
              {"k1_clusters", a.k1_clusters},
              {"center_mass_points", a.center_mass_points},
              {"groups", a.groups},
              {"two_point_points", a.two_point_points},
              {"k1_points", a.k1_points},
              {"rings_sampled", a.rings_sampled},
              {"ring_input_points", a.ring_input_points},
              {"ring_sample_points", a.ring_sample_points}};
}

Json BudgetToJson(const SampleBudget& b) {
  return Json{{"mode", ModeName(b.mode)},
              {"form", BudgetFormName(b.constants.form)},
              {"c0", b.constants.c0},
              {"c1", b.constants.c1},
              {"sdim", b.sdim},
              {"eps", b.eps},
              {"raw", b.raw},
              {"m", b.m}};
}

}  // namespace ringcore::io
