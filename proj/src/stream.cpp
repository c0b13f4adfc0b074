#include "dynspan/stream.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "dynspan/error.hpp"

namespace dynspan {

UpdateStream parse_stream(std::istream& in) {
  UpdateStream out;
  bool have_header = false;
  std::string line;
  std::size_t lineno = 0;
  auto bad = [&](const std::string& why) {
    fail(Errc::StreamParse, "line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    std::string rest;
    if (tag == "N") {
      if (have_header) bad("second header");
      long long n;
      if (!(ls >> n) || n < 0 || n > (1LL << 31)) bad("expected a vertex count");
      if (ls >> rest) bad("trailing text");
      out.n = static_cast<std::size_t>(n);
      have_header = true;
      continue;
    }
    if (tag != "+" && tag != "-") bad("expected '+', '-' or 'N', got '" + tag + "'");
    if (!have_header) bad("update before the N header");
    long long u;
    long long v;
    if (!(ls >> u >> v)) bad("expected two vertex ids");
    if (ls >> rest) bad("trailing text");
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= out.n ||
        static_cast<std::size_t>(v) >= out.n) {
      bad("vertex out of range");
    }
    if (u == v) bad("self loop");
    out.events.push_back({out.events.size(), tag == "+" ? UpdateKind::Insert : UpdateKind::Delete,
                          EdgeKey::of(static_cast<VertexId>(u), static_cast<VertexId>(v))});
    out.lines.push_back(lineno);
  }
  if (!have_header) fail(Errc::StreamParse, "missing N header");
  return out;
}

void write_stream(std::ostream& out, std::size_t n, std::span<const UpdateEvent> events) {
  out << "N " << n << '\n';
  for (const UpdateEvent& ev : events) {
    out << (ev.kind == UpdateKind::Insert ? '+' : '-') << ' ' << ev.edge.lo << ' ' << ev.edge.hi
        << '\n';
  }
}

}  // namespace dynspan
