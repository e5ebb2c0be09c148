#pragma once

#include <stdexcept>
#include <string>

namespace ckb {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class GraphMismatchError : public std::invalid_argument {
 public:
  GraphMismatchError() : std::invalid_argument("operands live over different graphs") {}
};

// Raised when the Cuntz-Krieger relation is needed at a vertex receiving no edges.
class SingularVertexError : public std::runtime_error {
 public:
  explicit SingularVertexError(const std::string& vertex)
      : std::runtime_error("singular vertex '" + vertex + "' blocks expansion"), vertex_(vertex) {}
  const std::string& vertex() const { return vertex_; }

 private:
  std::string vertex_;
};

class UndecidableError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class InadmissibleGraphError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class NotCoreError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class MixedDegreeError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A coefficient would exceed the caller-supplied truncation depth.
class DepthError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ckb
