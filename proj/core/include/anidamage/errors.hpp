// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace anidamage {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Tensor inverse requested at |det| below the relative floor.
class SingularTensor : public Error {
public:
  using Error::Error;
};

// det(C) <= 0 (or below the log guard) where a deformation state is required.
class NonPositiveJacobian : public Error {
public:
  using Error::Error;
};

// The local return-mapping iteration did not converge.
class LocalNewtonDiverged : public Error {
public:
  using Error::Error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class MeshGenerationFailed : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

// A load step failed to converge after all cutbacks.
class StepFailed : public Error {
public:
  using Error::Error;
};

class SingularSystem : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

}  // namespace anidamage
