#pragma once

#include <stdexcept>
#include <string>

namespace ugkms {

/// Base for domain errors reported by the library (CLI exit code 1).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  [[nodiscard]] int line() const { return line_; }

 private:
  int line_;
};

class SinkDetected : public Error {
 public:
  explicit SinkDetected(std::string vertex) : Error("vertex " + vertex + " is a sink"), vertex_(std::move(vertex)) {}
  [[nodiscard]] const std::string& vertex() const { return vertex_; }

 private:
  std::string vertex_;
};

class EmptyRange : public Error {
 public:
  explicit EmptyRange(std::string edge) : Error("edge " + edge + " has empty range"), edge_(std::move(edge)) {}
  [[nodiscard]] const std::string& edge() const { return edge_; }

 private:
  std::string edge_;
};

/// A range (or named set) refers to an infinite emitter that the presentation
/// does not declare, so it cannot be written in canonical form.
class RfumViolation : public Error {
 public:
  RfumViolation(std::string edge, const std::string& why)
      : Error("RFUM violation at " + edge + ": " + why), edge_(std::move(edge)) {}
  [[nodiscard]] const std::string& edge() const { return edge_; }

 private:
  std::string edge_;
};

class MissingAtom : public Error {
 public:
  explicit MissingAtom(std::string atom) : Error("no value assigned to atom " + atom), atom_(std::move(atom)) {}
  [[nodiscard]] const std::string& atom() const { return atom_; }

 private:
  std::string atom_;
};

class DomainViolation : public Error {
 public:
  using Error::Error;
};

class NotSubset : public Error {
 public:
  using Error::Error;
};

class NotDisjoint : public Error {
 public:
  using Error::Error;
};

class NoExhaustingSequence : public Error {
 public:
  NoExhaustingSequence() : Error("family has no maximal element and no declared exhausting sequence") {}
};

class EmptySetError : public Error {
 public:
  using Error::Error;
};

}  // namespace ugkms
