#pragma once

#include <stdexcept>
#include <string>

namespace grntru {

// Every error carries a stable machine-readable kind so the CLI can emit it
// as JSON without string matching.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

#define GRNTRU_DEFINE_ERROR(Name, Kind)                                         \
  class Name : public Error {                                                   \
  public:                                                                       \
    explicit Name(const std::string& what) : Error(Kind, what) {}               \
  };

GRNTRU_DEFINE_ERROR(DimensionError, "DimensionError")
GRNTRU_DEFINE_ERROR(OverflowError, "OverflowError")
GRNTRU_DEFINE_ERROR(NotInvertible, "NotInvertible")
GRNTRU_DEFINE_ERROR(UnsupportedModulus, "UnsupportedModulus")
GRNTRU_DEFINE_ERROR(UnsupportedGroup, "UnsupportedGroup")
GRNTRU_DEFINE_ERROR(ParameterError, "ParameterError")
GRNTRU_DEFINE_ERROR(KeygenExhausted, "KeygenExhausted")
GRNTRU_DEFINE_ERROR(MessageRangeError, "MessageRangeError")
GRNTRU_DEFINE_ERROR(StructureError, "StructureError")
GRNTRU_DEFINE_ERROR(NotInLattice, "NotInLattice")
GRNTRU_DEFINE_ERROR(RankError, "RankError")
GRNTRU_DEFINE_ERROR(NotFound, "NotFound")
GRNTRU_DEFINE_ERROR(ReductionFailure, "ReductionFailure")
GRNTRU_DEFINE_ERROR(ConfigError, "ConfigError")
GRNTRU_DEFINE_ERROR(IoError, "IoError")

#undef GRNTRU_DEFINE_ERROR

} // namespace grntru
