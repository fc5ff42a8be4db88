/*
 * Copyright 2026 The mbci authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef MBCI_ERRORS_HPP
#define MBCI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mbci {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shape of an input does not match what the operation requires.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Request exceeds a hard cost guard (factorial/exponential kernels).
class SizeLimitError : public Error {
public:
    using Error::Error;
};

/// Input violates a domain invariant (negative rate, non-unitary matrix, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

} // namespace mbci

#endif
