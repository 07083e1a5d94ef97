#include "netvis/errors.hpp"

namespace netvis {

BroadcastError::BroadcastError(std::string attribute, std::size_t expected, std::size_t got)
    : Error("broadcast \"" + attribute + "\": expected " + std::to_string(expected) + ", got " +
            std::to_string(got)),
      attribute_(std::move(attribute)),
      expected_(expected),
      got_(got) {}

NodeNotFound::NodeNotFound(std::string id_text)
    : Error("node not found: " + id_text), id_text_(std::move(id_text)) {}

ValidationError::ValidationError(const std::string& what, std::string field)
    : Error(what), detail_(what), field_(std::move(field)) {}

ValidationError::ValidationError(const std::string& what, std::size_t line, std::size_t column)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      detail_(what),
      line_(line),
      column_(column) {}

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : Error("line " + std::to_string(line) +
            (column > 0 ? ", column " + std::to_string(column) : std::string()) + ": " + what),
      line_(line),
      column_(column) {}

IoError::IoError(const std::string& what, std::string path)
    : Error(path + ": " + what), path_(std::move(path)) {}

}  // namespace netvis
