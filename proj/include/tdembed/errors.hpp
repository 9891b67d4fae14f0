#pragma once

#include <stdexcept>
#include <string>

namespace tdembed {

enum class Errc {
  DescriptorMismatch,
  DivisionByZero,
  SingularSystem,
  UnknownPreset,
  FormatError,
  SideMismatch,
  SideTooSmall,
  NotBlockSize3,
  NotOrthogonal,
  LineInHyperplane,
  DegenerateInput,
  CharZeroNoFiniteAdditiveSubgroup,
  NotFinite,
  SearchSpaceTooLarge,
  CharZeroConcurrentImpossible,
  GroupTooSmall,
  DimensionTooSmall,
  NonStandardFrame,
  WrongClassification,
  PointOnPartHyperplane,
  NotInCanonicalFrame,
  NothingToExtend,
  UnsupportedSize,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DescriptorMismatch: return "DescriptorMismatch";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::SingularSystem: return "SingularSystem";
    case Errc::UnknownPreset: return "UnknownPreset";
    case Errc::FormatError: return "FormatError";
    case Errc::SideMismatch: return "SideMismatch";
    case Errc::SideTooSmall: return "SideTooSmall";
    case Errc::NotBlockSize3: return "NotBlockSize3";
    case Errc::NotOrthogonal: return "NotOrthogonal";
    case Errc::LineInHyperplane: return "LineInHyperplane";
    case Errc::DegenerateInput: return "DegenerateInput";
    case Errc::CharZeroNoFiniteAdditiveSubgroup: return "CharZeroNoFiniteAdditiveSubgroup";
    case Errc::NotFinite: return "NotFinite";
    case Errc::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case Errc::CharZeroConcurrentImpossible: return "CharZeroConcurrentImpossible";
    case Errc::GroupTooSmall: return "GroupTooSmall";
    case Errc::DimensionTooSmall: return "DimensionTooSmall";
    case Errc::NonStandardFrame: return "NonStandardFrame";
    case Errc::WrongClassification: return "WrongClassification";
    case Errc::PointOnPartHyperplane: return "PointOnPartHyperplane";
    case Errc::NotInCanonicalFrame: return "NotInCanonicalFrame";
    case Errc::NothingToExtend: return "NothingToExtend";
    case Errc::UnsupportedSize: return "UnsupportedSize";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace tdembed
