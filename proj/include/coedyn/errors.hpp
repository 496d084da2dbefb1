#pragma once

#include <stdexcept>
#include <string>

namespace coedyn {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LevelMismatch : Error {
  using Error::Error;
};

struct NonAbelianTarget : Error {
  using Error::Error;
};

struct NotSingleCoset : Error {
  using Error::Error;
};

struct NoSuchElement : Error {
  using Error::Error;
};

struct AmbiguousOrientation : Error {
  using Error::Error;
};

struct BaseMismatch : Error {
  using Error::Error;
};

struct NotEquivariant : Error {
  using Error::Error;
};

struct UnclassifiablePoint : Error {
  using Error::Error;
};

struct DefectNotInExpectedCoset : Error {
  using Error::Error;
};

struct NonReflectionCoset : Error {
  using Error::Error;
};

struct NotConstant : Error {
  using Error::Error;
};

struct VerificationFailed : Error {
  using Error::Error;
};

struct NotIdentityWitness : Error {
  using Error::Error;
};

}  // namespace coedyn
