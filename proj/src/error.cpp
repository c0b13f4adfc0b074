#include "dynspan/error.hpp"

namespace dynspan {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::VertexOutOfRange: return "VertexOutOfRange";
    case Errc::EdgeExists: return "EdgeExists";
    case Errc::EdgeMissing: return "EdgeMissing";
    case Errc::SpannerNotSubgraph: return "SpannerNotSubgraph";
    case Errc::OrderNotPermutation: return "OrderNotPermutation";
    case Errc::DisjointnessViolated: return "DisjointnessViolated";
    case Errc::InvalidInstance: return "InvalidInstance";
    case Errc::UnknownJob: return "UnknownJob";
    case Errc::MachineMissing: return "MachineMissing";
    case Errc::UnknownRoutine: return "UnknownRoutine";
    case Errc::HorizonExhausted: return "HorizonExhausted";
    case Errc::PhaseExhausted: return "PhaseExhausted";
    case Errc::Exhausted: return "Exhausted";
    case Errc::StreamParse: return "StreamParse";
    case Errc::IllegalUpdate: return "IllegalUpdate";
    case Errc::BadArgs: return "BadArgs";
    case Errc::CheckFailed: return "CheckFailed";
    case Errc::CounterOverflow: return "CounterOverflow";
  }
  return "Unknown";
}

}  // namespace dynspan
