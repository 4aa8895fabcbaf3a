#pragma once

#include <stdexcept>
#include <string>

namespace ddsense {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonHermitianInput : Error {
  using Error::Error;
};
struct DimensionTooLarge : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct NotUnitary : Error {
  using Error::Error;
};
struct InvalidDensityMatrix : Error {
  using Error::Error;
};
struct EmptySequence : Error {
  using Error::Error;
};
struct UnnormalizedChannel : Error {
  using Error::Error;
};
struct NotUnitaryTarget : Error {
  using Error::Error;
};
struct DegenerateOperation : Error {
  using Error::Error;
};
struct UnphysicalChannel : Error {
  using Error::Error;
};
struct IncompleteRecordSet : Error {
  using Error::Error;
};
struct DuplicateRecord : Error {
  using Error::Error;
};
struct ZeroTrace : Error {
  using Error::Error;
};
struct FitDidNotConverge : Error {
  using Error::Error;
};
struct SlopeTooSmall : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace ddsense
