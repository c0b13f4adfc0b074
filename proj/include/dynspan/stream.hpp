#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "dynspan/graph.hpp"

namespace dynspan {

/// An update stream: header "N <n>", then "+ u v" / "- u v" per line.
struct UpdateStream {
  std::size_t n = 0;
  std::vector<UpdateEvent> events;
  std::vector<std::size_t> lines;  // source line of each event
};

/// Blank lines and '#' comments are skipped. Throws StreamParse naming the line.
UpdateStream parse_stream(std::istream& in);
void write_stream(std::ostream& out, std::size_t n, std::span<const UpdateEvent> events);

}  // namespace dynspan
