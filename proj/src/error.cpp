#include "coindex/error.hpp"

namespace coindex {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedKb: return "MalformedKb";
    case ErrorKind::InconsistentKb: return "InconsistentKb";
    case ErrorKind::UnknownTerm: return "UnknownTerm";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::MissingMetadata: return "MissingMetadata";
    case ErrorKind::UnreadableFile: return "UnreadableFile";
    case ErrorKind::UnimplementedLevel: return "UnimplementedLevel";
    case ErrorKind::EmptyVocabulary: return "EmptyVocabulary";
    case ErrorKind::EmptyMatrix: return "EmptyMatrix";
    case ErrorKind::ZeroDegree: return "ZeroDegree";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::PreconditionViolation: return "PreconditionViolation";
    case ErrorKind::EmptySide: return "EmptySide";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::UnknownNode: return "UnknownNode";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::NoOverlap: return "NoOverlap";
    case ErrorKind::MalformedInput: return "MalformedInput";
  }
  return "Error";
}

}  // namespace coindex
