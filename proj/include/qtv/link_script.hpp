#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qtv/falcomb.hpp"

namespace qtv::falcomb {

// Error at a 1-based line and column of the script text.
struct ScriptError : std::runtime_error {
  ScriptError(int line, int column, const std::string& what);
  int line;
  int column;
};

struct SubdivideCmd {
  int triangle;
  std::optional<int> spoke;  // empty for red=keep / red=auto
  int line, column;
};

struct TwistCmd {
  int edge;
  int sign;
  int line, column;
};

struct LinkScript {
  std::array<int, 2> dimer{};
  int dimer_line = 0;
  std::vector<SubdivideCmd> subdivisions;
  std::vector<TwistCmd> twists;
};

// Line format:
//   dimer <edge> <edge>
//   subdivide <triangle> [red=keep|auto|0|1|2]
//   twist <red-edge> <+|->
// '#' starts a comment. The dimer line comes before any subdivision.
LinkScript parse_link_script(std::string_view text);
FALDescriptor build_fal(const LinkScript& script);
FALDescriptor fal_from_text(std::string_view text);

std::vector<std::string> builtin_names();
std::optional<std::string> builtin_script(const std::string& name);

}  // namespace qtv::falcomb
