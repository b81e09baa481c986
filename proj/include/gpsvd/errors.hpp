/*
Copyright 2026 The gpsvd Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>

namespace gpsvd {

/// Failure categories; the CLI maps each one to a distinct exit code.
enum class ErrorCategory { kParameter = 2, kNumeric = 3, kGeneration = 4, kIo = 5 };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& what)
      : Error(ErrorCategory::kParameter, what) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what)
      : Error(ErrorCategory::kNumeric, what) {}
};

class GenerationError : public Error {
 public:
  explicit GenerationError(const std::string& what)
      : Error(ErrorCategory::kGeneration, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCategory::kIo, what) {}
};

}  // namespace gpsvd
