// SPDX-License-Identifier: Apache-2.0
//
// sscm: 3-D statistical spatial channel simulator for 28 GHz NLOS links
// Copyright (C) 2026 The sscm authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace sscm {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Interval bounds given in the wrong order (lo > hi).
class InvalidRange : public Error {
public:
    using Error::Error;
};

/// A distribution or model parameter outside its admissible domain.
class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// Input outside the domain the fitted model was built for (e.g. d < 1 m).
class OutOfModelRange : public Error {
public:
    using Error::Error;
};

/// Configuration problem; carries the offending field name.
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Reading or writing a file failed.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace sscm
