#pragma once

#include <string>
#include <vector>

#include "cubecx/coloring.hpp"
#include "cubecx/complex.hpp"
#include "cubecx/gluing.hpp"
#include "cubecx/group.hpp"

namespace cubecx::io {

// All readers throw ParseError with the file name and position.
RawComplex parse_complex(const std::string& text, const std::string& origin = "<string>");
std::string dump_complex(const RawComplex& raw);
// Validates and builds; ParseError lists the validation issues.
CubeComplex load_complex(const std::string& path);

std::vector<std::vector<std::string>> parse_group(const std::string& text, const std::string& origin = "<string>");
GroupAction load_group(const CubeComplex& cx, const std::string& path);
std::string dump_group(const CubeComplex& cx, const GroupAction& g);

Coloring parse_coloring(const std::string& text, int nodes, const std::string& origin = "<string>");
std::string dump_coloring(const Coloring& c);

WallGraph parse_gamma(const std::string& text, const std::string& origin = "<string>");
std::string dump_gamma(const WallGraph& g);

IntMatrix parse_matrix(const std::string& text, const std::string& origin = "<string>");
std::vector<Rational> parse_vector(const std::string& text, const std::string& origin = "<string>");

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);
// `path` if it exists, else the same name under $CUBECX_FIXTURES when that is set.
std::string resolve(const std::string& path);

}  // namespace cubecx::io
