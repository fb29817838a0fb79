#pragma once

// Line-oriented text form of a tangle.
//
//   # comment
//   disk 0 points 4 star 0      disk 0 is the output disk
//   disk 1 points 4 star 0
//   arc 0.0 1.0                 disk.point pairs
//   loops 1
//   join 0:0 L0:1               sides sharing a face: d:interval or L<loop>:<0|1>
//   loop 0:3                    shorthand: one more loop in the face of side 0:3

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "liftpa/error.hpp"
#include "liftpa/tangle.hpp"

namespace liftpa {

namespace detail {

struct DslToken {
  std::string text;
  std::size_t column = 0;
};

inline std::vector<DslToken> dsl_tokens(const std::string& line) {
  std::vector<DslToken> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

inline int dsl_int(const DslToken& t, std::size_t line, const std::string& text, std::size_t offset = 0) {
  if (text.empty()) throw ParseError("expected an integer", line, t.column + offset);
  for (std::size_t k = 0; k < text.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(text[k])))
      throw ParseError("expected an integer, found '" + text + "'", line, t.column + offset + k);
  if (text.size() > 6) throw ParseError("integer too large", line, t.column + offset);
  return std::stoi(text);
}

/// Splits "a<sep>b" into two integers, reporting the column of the bad part.
inline std::pair<int, int> dsl_pair(const DslToken& t, std::size_t line, char sep, std::size_t skip = 0) {
  const std::size_t p = t.text.find(sep, skip);
  if (p == std::string::npos)
    throw ParseError(std::string("expected '") + sep + "' in '" + t.text + "'", line, t.column);
  return {dsl_int(t, line, t.text.substr(skip, p - skip), skip), dsl_int(t, line, t.text.substr(p + 1), p + 1)};
}

inline SideRef dsl_side(const DslToken& t, std::size_t line) {
  if (!t.text.empty() && t.text[0] == 'L') {
    const auto [loop, side] = dsl_pair(t, line, ':', 1);
    if (side > 1) throw ParseError("loop side must be 0 or 1", line, t.column + t.text.find(':') + 1);
    return SideRef::loop_side(loop, side);
  }
  const auto [disk, interval] = dsl_pair(t, line, ':');
  return SideRef::corner(disk, interval);
}

inline std::string side_text(const SideRef& s) {
  if (s.kind == SideRef::Kind::Loop) return "L" + std::to_string(s.index) + ":" + std::to_string(s.slot);
  return std::to_string(s.index) + ":" + std::to_string(s.slot);
}

}  // namespace detail

/// Parses the text form into a TangleSpec (not yet validated).
inline TangleSpec tangle_spec_parse(const std::string& text) {
  TangleSpec spec;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  bool loops_seen = false;
  while (std::getline(in, raw)) {
    ++line;
    const auto toks = detail::dsl_tokens(raw);
    if (toks.empty()) continue;
    const std::string& kw = toks[0].text;
    auto need = [&](std::size_t n) {
      if (toks.size() < n) throw ParseError("'" + kw + "' needs " + std::to_string(n - 1) + " arguments", line, raw.size() + 1);
      if (toks.size() > n) throw ParseError("unexpected '" + toks[n].text + "'", line, toks[n].column);
    };
    if (kw == "disk") {
      need(6);
      if (toks[2].text != "points") throw ParseError("expected 'points'", line, toks[2].column);
      if (toks[4].text != "star") throw ParseError("expected 'star'", line, toks[4].column);
      const int id = detail::dsl_int(toks[1], line, toks[1].text);
      if (static_cast<std::size_t>(id) != spec.disks.size())
        throw ParseError("disks must be numbered 0, 1, 2, ... in order; expected " + std::to_string(spec.disks.size()),
                         line, toks[1].column);
      spec.disks.push_back({detail::dsl_int(toks[3], line, toks[3].text), detail::dsl_int(toks[5], line, toks[5].text)});
    } else if (kw == "arc") {
      need(3);
      const auto [d1, p1] = detail::dsl_pair(toks[1], line, '.');
      const auto [d2, p2] = detail::dsl_pair(toks[2], line, '.');
      spec.arcs.push_back({{d1, p1}, {d2, p2}});
    } else if (kw == "loops") {
      need(2);
      if (loops_seen) throw ParseError("'loops' given twice", line, toks[0].column);
      loops_seen = true;
      spec.loops += detail::dsl_int(toks[1], line, toks[1].text);
    } else if (kw == "loop") {
      need(2);
      const SideRef host = detail::dsl_side(toks[1], line);
      spec.joins.push_back({host, SideRef::loop_side(spec.loops, 0)});
      ++spec.loops;
    } else if (kw == "join") {
      need(3);
      spec.joins.push_back({detail::dsl_side(toks[1], line), detail::dsl_side(toks[2], line)});
    } else {
      throw ParseError("unknown keyword '" + kw + "'", line, toks[0].column);
    }
  }
  return spec;
}

/// Parses and validates; violations are reported as a DomainError.
inline Tangle tangle_parse(const std::string& text) { return Tangle::build(tangle_spec_parse(text)); }

inline std::string tangle_spec_serialize(const TangleSpec& spec) {
  std::ostringstream os;
  for (std::size_t d = 0; d < spec.disks.size(); ++d)
    os << "disk " << d << " points " << spec.disks[d].points << " star " << spec.disks[d].star << "\n";
  for (const auto& [a, b] : spec.arcs) os << "arc " << a.disk << "." << a.point << " " << b.disk << "." << b.point << "\n";
  if (spec.loops) os << "loops " << spec.loops << "\n";
  for (const auto& [a, b] : spec.joins) os << "join " << detail::side_text(a) << " " << detail::side_text(b) << "\n";
  return os.str();
}

inline std::string tangle_serialize(const Tangle& t) { return tangle_spec_serialize(t.spec()); }

}  // namespace liftpa
