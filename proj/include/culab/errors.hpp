#pragma once

#include <stdexcept>
#include <string>

namespace culab {

// Error taxonomy shared by all modules. Each operation documents which of
// these it can raise; everything derives from CuError so callers can catch
// one type at the CLI boundary.
enum class ErrCode {
  MixedSemigroup,
  NotIncreasing,
  BadParam,
  BadConstraint,
  BadDescriptor,
  InvalidTable,
  NotAbsorbing,
  BadPairing,
  NotIdeal,
  NotAuxiliary,
  MorphismMismatch,
  NotUltrafilter,
  NotCancellative,
  UnknownFunctionalSpace,
  NotRealizable,
  NotMonotone,
  NotNormalized,
  NotSubequivalent,
  EmptyFragment,
  EmptyFunctionalFamily,
  ParseError,
  ValidationError,
  UnknownFixture,
  UnrecognizedClass,
  Overflow,
  Internal,
};

inline const char* err_name(ErrCode c) {
  switch (c) {
    case ErrCode::MixedSemigroup: return "MixedSemigroup";
    case ErrCode::NotIncreasing: return "NotIncreasing";
    case ErrCode::BadParam: return "BadParam";
    case ErrCode::BadConstraint: return "BadConstraint";
    case ErrCode::BadDescriptor: return "BadDescriptor";
    case ErrCode::InvalidTable: return "InvalidTable";
    case ErrCode::NotAbsorbing: return "NotAbsorbing";
    case ErrCode::BadPairing: return "BadPairing";
    case ErrCode::NotIdeal: return "NotIdeal";
    case ErrCode::NotAuxiliary: return "NotAuxiliary";
    case ErrCode::MorphismMismatch: return "MorphismMismatch";
    case ErrCode::NotUltrafilter: return "NotUltrafilter";
    case ErrCode::NotCancellative: return "NotCancellative";
    case ErrCode::UnknownFunctionalSpace: return "UnknownFunctionalSpace";
    case ErrCode::NotRealizable: return "NotRealizable";
    case ErrCode::NotMonotone: return "NotMonotone";
    case ErrCode::NotNormalized: return "NotNormalized";
    case ErrCode::NotSubequivalent: return "NotSubequivalent";
    case ErrCode::EmptyFragment: return "EmptyFragment";
    case ErrCode::EmptyFunctionalFamily: return "EmptyFunctionalFamily";
    case ErrCode::ParseError: return "ParseError";
    case ErrCode::ValidationError: return "ValidationError";
    case ErrCode::UnknownFixture: return "UnknownFixture";
    case ErrCode::UnrecognizedClass: return "UnrecognizedClass";
    case ErrCode::Overflow: return "Overflow";
    case ErrCode::Internal: return "Internal";
  }
  return "?";
}

class CuError : public std::runtime_error {
 public:
  CuError(ErrCode code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
  ErrCode code() const { return code_; }

 private:
  ErrCode code_;
};

[[noreturn]] inline void fail(ErrCode code, const std::string& what) { throw CuError(code, what); }

}  // namespace culab
