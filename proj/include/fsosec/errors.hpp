/*
   Copyright 2026 The fsosec Authors

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
#include <vector>

namespace fsosec {

/// Invalid argument or parameter outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A series hit its term cap before meeting the requested tolerance.
class SeriesNotConverged : public std::runtime_error {
public:
    SeriesNotConverged(const std::string& what, int terms, double partial_sum)
        : std::runtime_error(what), terms_(terms), partial_sum_(partial_sum) {}

    int terms() const noexcept { return terms_; }
    double partial_sum() const noexcept { return partial_sum_; }

private:
    int terms_;
    double partial_sum_;
};

/// Adaptive quadrature could not reach its tolerance within the interval budget.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double value, double abs_error)
        : std::runtime_error(what), value_(value), abs_error_(abs_error) {}

    double value() const noexcept { return value_; }
    double abs_error() const noexcept { return abs_error_; }

private:
    double value_;
    double abs_error_;
};

/// Malformed document (scenario or sweep file).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line) : std::runtime_error(what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

struct FieldError {
    std::string field;
    std::string message;
};

/// One or more fields failed validation. All failures are collected, not just the first.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<FieldError> errors)
        : std::runtime_error(format(errors)), errors_(std::move(errors)) {}
    ValidationError(std::string field, std::string message)
        : ValidationError(std::vector<FieldError>{{std::move(field), std::move(message)}}) {}

    const std::vector<FieldError>& errors() const noexcept { return errors_; }

private:
    static std::string format(const std::vector<FieldError>& errors) {
        std::string out = "validation failed";
        for (const auto& e : errors) {
            out += "\n  ";
            out += e.field;
            out += ": ";
            out += e.message;
        }
        return out;
    }

    std::vector<FieldError> errors_;
};

/// Output could not be written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An input file does not exist or cannot be opened.
class MissingInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace fsosec
