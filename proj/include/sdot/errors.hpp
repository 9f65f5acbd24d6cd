//
//  sdot: Knothe-to-Brenier continuation for semi-discrete optimal transport
//
//  Copyright 2026 The sdot Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.
//

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sdot {

/// Base class for every failure raised by the solver library.
class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Two atoms share (within the configured gap) the coordinate that orders them.
class DegenerateAtoms : public SolverError {
public:
  DegenerateAtoms(std::size_t first, std::size_t second, const std::string& what)
      : SolverError(what), first_(first), second_(second) {}

  std::size_t first() const noexcept { return first_; }
  std::size_t second() const noexcept { return second_; }

private:
  std::size_t first_;
  std::size_t second_;
};

/// The price/parameter pair left the area band where the price ODE is well posed.
class ExitedAdmissibleSet : public SolverError {
public:
  ExitedAdmissibleSet(std::size_t step, const std::string& what)
      : SolverError(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

private:
  std::size_t step_;
};

class LinearSolveFailure : public SolverError {
public:
  LinearSolveFailure(std::size_t step, const std::string& what)
      : SolverError(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

private:
  std::size_t step_;
};

class NoConvergence : public SolverError {
public:
  using SolverError::SolverError;
};

class SingularPartition : public SolverError {
public:
  using SolverError::SolverError;
};

}  // namespace sdot
