#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace netvis {

/// Root of every error raised by the library. The CLI maps each subclass to
/// its own exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed NetworkStyle field (CSS length or color).
class StyleError : public Error {
public:
    using Error::Error;
};

/// add_nodes() broadcast sequence whose length differs from the id list.
class BroadcastError : public Error {
public:
    BroadcastError(std::string attribute, std::size_t expected, std::size_t got);

    const std::string& attribute() const noexcept { return attribute_; }
    std::size_t expected() const noexcept { return expected_; }
    std::size_t got() const noexcept { return got_; }

private:
    std::string attribute_;
    std::size_t expected_;
    std::size_t got_;
};

/// An edge or link references an id that is not in the network.
class NodeNotFound : public Error {
public:
    explicit NodeNotFound(std::string id_text);

    const std::string& id_text() const noexcept { return id_text_; }

private:
    std::string id_text_;
};

/// A value is well-formed but outside its allowed range or vocabulary.
/// `field` is a JSON pointer into the options document when known; the
/// options parser uses it to attach a source location.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what, std::string field = {});
    ValidationError(const std::string& what, std::size_t line, std::size_t column);

    const std::string& field() const noexcept { return field_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::string detail_;
    std::string field_;
    std::size_t line_ = 0;
    std::size_t column_ = 0;
};

/// Syntax or structural error in textual input. Line and column are 1-based;
/// column 0 means the whole line.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Non-finite coordinates or forces reaching the layout engine.
class NumericError : public Error {
public:
    using Error::Error;
};

class TemplateError : public Error {
public:
    using Error::Error;
};

/// Filesystem failure; the message always carries the path.
class IoError : public Error {
public:
    IoError(const std::string& what, std::string path);

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace netvis
