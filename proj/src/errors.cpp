#include "razak/errors.hpp"

namespace razak {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotSelfAdjoint: return "NotSelfAdjoint";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotInCone: return "NotInCone";
    case ErrorKind::LayoutMismatch: return "LayoutMismatch";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::ChainMismatch: return "ChainMismatch";
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::StageOutOfRange: return "StageOutOfRange";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::NoUnitalEmbedding: return "NoUnitalEmbedding";
    case ErrorKind::FormatError: return "FormatError";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::InvariantFailure: return "InvariantFailure";
  }
  return "Error";
}

}  // namespace razak
