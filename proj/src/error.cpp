#include "mdf/error.hpp"

namespace mdf {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnterminatedString: return "UnterminatedString";
    case ErrorCode::UnterminatedComment: return "UnterminatedComment";
    case ErrorCode::IllegalCharacter: return "IllegalCharacter";
    case ErrorCode::MissingViewpointDecl: return "MissingViewpointDecl";
    case ErrorCode::MismatchedTag: return "MismatchedTag";
    case ErrorCode::DuplicateViewpointName: return "DuplicateViewpointName";
    case ErrorCode::UnknownValueType: return "UnknownValueType";
    case ErrorCode::DuplicateDescriptor: return "DuplicateDescriptor";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::CatalogSyntaxError: return "CatalogSyntaxError";
    case ErrorCode::DanglingPath: return "DanglingPath";
    case ErrorCode::BadDsd: return "BadDsd";
    case ErrorCode::DanglingAlias: return "DanglingAlias";
    case ErrorCode::DuplicateScheme: return "DuplicateScheme";
    case ErrorCode::QualifiedIdCollision: return "QualifiedIdCollision";
    case ErrorCode::UnknownScheme: return "UnknownScheme";
    case ErrorCode::MissingParent: return "MissingParent";
    case ErrorCode::CyclicHierarchy: return "CyclicHierarchy";
    case ErrorCode::TimecodeSyntax: return "TimecodeSyntax";
    case ErrorCode::FieldRange: return "FieldRange";
    case ErrorCode::FrameFieldExceedsRate: return "FrameFieldExceedsRate";
    case ErrorCode::NegativeDuration: return "NegativeDuration";
    case ErrorCode::FormatVersionMismatch: return "FormatVersionMismatch";
    case ErrorCode::CorruptIndex: return "CorruptIndex";
    case ErrorCode::EmptyQuery: return "EmptyQuery";
    case ErrorCode::UnknownField: return "UnknownField";
    case ErrorCode::MalformedClause: return "MalformedClause";
    case ErrorCode::UnknownEntity: return "UnknownEntity";
  }
  return "Unknown";
}

}  // namespace mdf
