#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dynspan {

enum class Errc {
  DuplicateEdge,
  SelfLoop,
  VertexOutOfRange,
  EdgeExists,
  EdgeMissing,
  SpannerNotSubgraph,
  OrderNotPermutation,
  DisjointnessViolated,
  InvalidInstance,
  UnknownJob,
  MachineMissing,
  UnknownRoutine,
  HorizonExhausted,
  PhaseExhausted,
  Exhausted,
  StreamParse,
  IllegalUpdate,
  BadArgs,
  CheckFailed,
  CounterOverflow,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace dynspan
