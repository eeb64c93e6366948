// Copyright 2026 The phontypo Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PHONTYPO_ERROR_H_
#define PHONTYPO_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace phontypo {

// Coarse error classes. The CLI maps kUsage to exit status 2 and every other
// kind to exit status 1.
enum class ErrorKind {
  kParse,
  kConflict,
  kNotFound,
  kDimension,
  kUsage,
  kEmptyDataset,
  kDegenerateData,
  kInfeasible,
  kIo,
};

std::string_view ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message)
      : Error(ErrorKind::kParse, message) {}
};

class ConflictError : public Error {
 public:
  explicit ConflictError(const std::string& message)
      : Error(ErrorKind::kConflict, message) {}
};

class NotFoundError : public Error {
 public:
  NotFoundError(const std::string& message, std::string key)
      : Error(ErrorKind::kNotFound, message), key_(std::move(key)) {}

  // The (normalized) key that was looked up.
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& message)
      : Error(ErrorKind::kDimension, message) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& message)
      : Error(ErrorKind::kUsage, message) {}
};

class EmptyDatasetError : public Error {
 public:
  explicit EmptyDatasetError(const std::string& message)
      : Error(ErrorKind::kEmptyDataset, message) {}
};

class DegenerateDataError : public Error {
 public:
  explicit DegenerateDataError(const std::string& message)
      : Error(ErrorKind::kDegenerateData, message) {}
};

class InfeasibleError : public Error {
 public:
  explicit InfeasibleError(const std::string& message)
      : Error(ErrorKind::kInfeasible, message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message)
      : Error(ErrorKind::kIo, message) {}
};

}  // namespace phontypo

#endif  // PHONTYPO_ERROR_H_
