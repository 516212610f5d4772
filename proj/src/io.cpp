#include "patrol/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "patrol/error.hpp"

namespace patrol::io {

namespace {

bool looks_like_json(std::string_view text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string_view::npos && text[pos] == '{';
}

[[noreturn]] void parse_error(const std::string& what) {
  throw Error(ErrorKind::kParse, what);
}

int label_to_index(long long label, int n) {
  if (label < 1 || label > n) {
    parse_error("node label " + std::to_string(label) + " outside 1.." +
                std::to_string(n));
  }
  return static_cast<int>(label - 1);
}

}  // namespace

json graph_to_json(const DiGraph& g) {
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.from + 1, e.to + 1});
  return json{{"n", g.size()}, {"edges", std::move(edges)}};
}

DiGraph graph_from_json(const json& doc) {
  try {
    const int n = doc.at("n").get<int>();
    if (n < 1) parse_error("graph needs n >= 1");
    std::vector<Edge> edges;
    for (const auto& pair : doc.at("edges")) {
      if (!pair.is_array() || pair.size() != 2) parse_error("edge must be [i, j]");
      edges.push_back({label_to_index(pair[0].get<long long>(), n),
                       label_to_index(pair[1].get<long long>(), n)});
    }
    return DiGraph(n, std::move(edges));
  } catch (const json::exception& e) {
    parse_error(std::string("graph JSON: ") + e.what());
  }
}

DiGraph graph_from_edge_list(std::string_view text) {
  std::vector<std::pair<long long, long long>> raw;
  long long n = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    long long i = 0;
    long long j = 0;
    if (!(fields >> i)) continue;  // blank line
    std::string extra;
    if (!(fields >> j) || (fields >> extra)) {
      parse_error("edge list line " + std::to_string(line_no) + ": expected 'i j'");
    }
    if (i < 1 || j < 1) {
      parse_error("edge list line " + std::to_string(line_no) + ": labels start at 1");
    }
    raw.emplace_back(i, j);
    n = std::max({n, i, j});
  }
  if (raw.empty()) parse_error("edge list is empty");
  std::vector<Edge> edges;
  for (auto [i, j] : raw) {
    edges.push_back({static_cast<int>(i - 1), static_cast<int>(j - 1)});
  }
  return DiGraph(static_cast<int>(n), std::move(edges));
}

DiGraph parse_graph(std::string_view text) {
  if (looks_like_json(text)) {
    try {
      return graph_from_json(json::parse(text));
    } catch (const json::exception& e) {
      parse_error(std::string("graph JSON: ") + e.what());
    }
  }
  return graph_from_edge_list(text);
}

json matrix_to_json(const Matrix& p) {
  json rows = json::array();
  for (int i = 0; i < p.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < p.cols(); ++j) row.push_back(p(i, j));
    rows.push_back(std::move(row));
  }
  return json{{"n", p.rows()}, {"rows", std::move(rows)}};
}

Matrix matrix_from_json(const json& doc) {
  try {
    const auto& rows = doc.at("rows");
    const int n = doc.contains("n") ? doc.at("n").get<int>()
                                    : static_cast<int>(rows.size());
    if (n < 1 || static_cast<int>(rows.size()) != n) {
      parse_error("chain JSON: expected " + std::to_string(n) + " rows");
    }
    Matrix p(n, n);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows[i].size()) != n) {
        parse_error("chain JSON: row " + std::to_string(i + 1) + " has " +
                    std::to_string(rows[i].size()) + " entries");
      }
      for (int j = 0; j < n; ++j) p(i, j) = rows[i][j].get<double>();
    }
    return p;
  } catch (const json::exception& e) {
    parse_error(std::string("chain JSON: ") + e.what());
  }
}

std::string format_double(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

std::string matrix_to_csv(const Matrix& p) {
  std::string out;
  for (int i = 0; i < p.rows(); ++i) {
    for (int j = 0; j < p.cols(); ++j) {
      if (j > 0) out += ',';
      out += format_double(p(i, j));
    }
    out += '\n';
  }
  return out;
}

Matrix matrix_from_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t\r", used) != std::string::npos) {
          parse_error("chain CSV: bad number '" + cell + "'");
        }
      } catch (const std::logic_error&) {
        parse_error("chain CSV: bad number '" + cell + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  const int n = static_cast<int>(rows.size());
  if (n == 0) parse_error("chain CSV is empty");
  Matrix p(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) {
      parse_error("chain CSV: row " + std::to_string(i + 1) + " has " +
                  std::to_string(rows[i].size()) + " entries, expected " +
                  std::to_string(n));
    }
    for (int j = 0; j < n; ++j) p(i, j) = rows[i][j];
  }
  return p;
}

Matrix parse_matrix(std::string_view text) {
  if (looks_like_json(text)) {
    try {
      return matrix_from_json(json::parse(text));
    } catch (const json::exception& e) {
      parse_error(std::string("chain JSON: ") + e.what());
    }
  }
  return matrix_from_csv(text);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorKind::kIo, "write failed for " + path.string());
}

}  // namespace patrol::io
