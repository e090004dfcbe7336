#pragma once

#include <stdexcept>
#include <string>

namespace bix {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct ParameterError : std::runtime_error {
  explicit ParameterError(const std::string& what) : std::runtime_error(what) {}
};

struct SigningError : std::runtime_error {
  explicit SigningError(const std::string& what) : std::runtime_error(what) {}
};

struct EncodingError : std::runtime_error {
  explicit EncodingError(const std::string& what) : std::runtime_error(what) {}
};

struct DecodeError : std::runtime_error {
  explicit DecodeError(const std::string& what) : std::runtime_error(what) {}
};

struct ScriptError : std::runtime_error {
  explicit ScriptError(const std::string& what) : std::runtime_error(what) {}
};

struct StoreError : std::runtime_error {
  explicit StoreError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bix
