#include "qtv/link_script.hpp"

#include <charconv>
#include <map>

namespace qtv::falcomb {

ScriptError::ScriptError(int line, int column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line(line),
      column(column) {}

namespace {

struct Token {
  std::string_view text;
  int column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r' && line[j] != '#') ++j;
    out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

int to_int(const Token& t, int line, const char* what) {
  int v = 0;
  auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc{} || p != t.text.data() + t.text.size() || v < 0)
    throw ScriptError(line, t.column, std::string("expected ") + what + ", got '" + std::string(t.text) + "'");
  return v;
}

}  // namespace

LinkScript parse_link_script(std::string_view text) {
  LinkScript s;
  bool have_dimer = false;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++lineno;
    auto tok = tokenize(line);
    if (tok.empty()) continue;
    const auto& cmd = tok[0];
    if (cmd.text == "dimer") {
      if (have_dimer) throw ScriptError(lineno, cmd.column, "dimer given twice");
      if (tok.size() != 3) throw ScriptError(lineno, cmd.column, "dimer takes two edge ids");
      s.dimer = {to_int(tok[1], lineno, "edge id"), to_int(tok[2], lineno, "edge id")};
      s.dimer_line = lineno;
      have_dimer = true;
    } else if (cmd.text == "subdivide") {
      if (!have_dimer) throw ScriptError(lineno, cmd.column, "subdivide before dimer");
      if (tok.size() < 2 || tok.size() > 3)
        throw ScriptError(lineno, cmd.column, "subdivide takes a triangle id and an optional red=");
      SubdivideCmd sc{to_int(tok[1], lineno, "triangle id"), std::nullopt, lineno, tok[1].column};
      if (tok.size() == 3) {
        auto opt = tok[2].text;
        if (opt.substr(0, 4) != "red=") throw ScriptError(lineno, tok[2].column, "expected red=<keep|auto|0|1|2>");
        auto val = opt.substr(4);
        if (val != "keep" && val != "auto") {
          if (val.size() != 1 || val[0] < '0' || val[0] > '2')
            throw ScriptError(lineno, tok[2].column + 4, "red= takes keep, auto, 0, 1 or 2");
          sc.spoke = val[0] - '0';
        }
      }
      s.subdivisions.push_back(sc);
    } else if (cmd.text == "twist") {
      if (tok.size() != 3) throw ScriptError(lineno, cmd.column, "twist takes an edge id and a sign");
      int e = to_int(tok[1], lineno, "edge id");
      int sign = 0;
      if (tok[2].text == "+")
        sign = 1;
      else if (tok[2].text == "-")
        sign = -1;
      else
        throw ScriptError(lineno, tok[2].column, "twist sign must be + or -");
      s.twists.push_back({e, sign, lineno, tok[1].column});
    } else {
      throw ScriptError(lineno, cmd.column, "unknown command '" + std::string(cmd.text) + "'");
    }
  }
  if (!have_dimer) throw ScriptError(lineno, 1, "missing dimer line");
  return s;
}

FALDescriptor build_fal(const LinkScript& script) {
  Nerve nerve = k4_nerve();
  Dimer dimer;
  try {
    dimer = k4_dimer(nerve, script.dimer[0], script.dimer[1]);
  } catch (const DimerError& e) {
    throw ScriptError(script.dimer_line, 1, e.what());
  }
  for (const auto& sc : script.subdivisions) {
    if (!nerve.has_triangle(sc.triangle))
      throw ScriptError(sc.line, sc.column, "triangle " + std::to_string(sc.triangle) + " is not present");
    nerve = central_subdivision(nerve, sc.triangle);
    try {
      dimer = extend_dimer(nerve, dimer, sc.spoke);
    } catch (const DimerError& e) {
      throw ScriptError(sc.line, sc.column, e.what());
    }
  }
  std::map<int, int> twists;
  for (const auto& tc : script.twists) {
    if (!dimer.is_red(tc.edge))
      throw ScriptError(tc.line, tc.column, "edge " + std::to_string(tc.edge) + " is not red");
    if (twists.count(tc.edge)) throw ScriptError(tc.line, tc.column, "edge twisted twice");
    twists[tc.edge] = tc.sign;
  }
  return make_descriptor(std::move(nerve), std::move(dimer), std::move(twists));
}

FALDescriptor fal_from_text(std::string_view text) { return build_fal(parse_link_script(text)); }

std::vector<std::string> builtin_names() { return {"borromean", "sister1", "sister2"}; }

std::optional<std::string> builtin_script(const std::string& name) {
  if (name == "borromean") return "dimer 0 5\n";
  if (name == "sister1") return "dimer 0 5\ntwist 0 +\n";
  if (name == "sister2") return "dimer 0 5\ntwist 0 +\ntwist 5 +\n";
  return std::nullopt;
}

}  // namespace qtv::falcomb
