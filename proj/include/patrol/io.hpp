#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "patrol/chain.hpp"
#include "patrol/graph.hpp"

// Serialization. Everything outside this header uses 0-based node indices;
// every format here is 1-based.
namespace patrol::io {

using nlohmann::json;

// {"n": 4, "edges": [[1,2],[2,1], ...]}
json graph_to_json(const DiGraph& g);
DiGraph graph_from_json(const json& doc);
// One "i j" pair per line; '#' starts a comment. n is the largest label.
DiGraph graph_from_edge_list(std::string_view text);
// JSON when the first non-blank character is '{', edge list otherwise.
DiGraph parse_graph(std::string_view text);

// {"n": 3, "rows": [[0,1,0], ...]}
json matrix_to_json(const Matrix& p);
Matrix matrix_from_json(const json& doc);
// One row per line, comma separated, 17 significant digits when written.
std::string matrix_to_csv(const Matrix& p);
Matrix matrix_from_csv(std::string_view text);
// JSON when the first non-blank character is '{', CSV otherwise.
Matrix parse_matrix(std::string_view text);

// %.17g
std::string format_double(double v);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace patrol::io
