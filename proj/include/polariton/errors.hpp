#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace polariton {

// Invalid user input. `pointer` is a JSON pointer into the offending document
// when the error came from a config file, otherwise empty.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& message, std::string pointer = {})
        : std::runtime_error(pointer.empty() ? message : pointer + ": " + message),
          message_(message),
          pointer_(std::move(pointer)) {}

    const std::string& message() const noexcept { return message_; }
    const std::string& pointer() const noexcept { return pointer_; }

private:
    std::string message_;
    std::string pointer_;
};

// Chain depth or expansion order outside the admissible range.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// Dense assembly refused because the basis is too large.
class SizingError : public std::length_error {
public:
    SizingError(const std::string& what, std::size_t dimension, std::size_t limit)
        : std::length_error(what), dimension_(dimension), limit_(limit) {}

    std::size_t dimension() const noexcept { return dimension_; }
    std::size_t limit() const noexcept { return limit_; }

private:
    std::size_t dimension_;
    std::size_t limit_;
};

class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace polariton
