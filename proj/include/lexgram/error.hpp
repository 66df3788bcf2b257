#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lexgram {

// Base class of every failure the library reports. Callers that only need a
// message catch this; the CLI maps the concrete types to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A lexicon line that does not follow the DELAF line grammar. Columns are
// 1-based byte positions within the line; line is 0 when unknown.
class MalformedEntry : public Error {
 public:
  MalformedEntry(std::string reason, std::size_t column, std::size_t line = 0,
                 std::string source = {});

  const std::string& reason() const { return reason_; }
  std::size_t column() const { return column_; }
  std::size_t line() const { return line_; }

 private:
  std::string reason_;
  std::size_t column_;
  std::size_t line_;
};

class MalformedParadigm : public Error {
 public:
  MalformedParadigm(std::string reason, std::size_t line);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class UnknownParadigm : public Error {
 public:
  explicit UnknownParadigm(const std::string& name, const std::string& lemma);
};

class LemmaTooShort : public Error {
 public:
  LemmaTooShort(const std::string& lemma, const std::string& infl_code);
};

class InvalidEncoding : public Error {
 public:
  explicit InvalidEncoding(std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class MalformedGraph : public Error {
 public:
  MalformedGraph(std::string file, std::size_t line, const std::string& reason);
  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

class UnresolvedCall : public Error {
 public:
  UnresolvedCall(const std::string& caller, const std::string& callee);
  const std::string& callee() const { return callee_; }

 private:
  std::string callee_;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class EmptyGold : public Error {
 public:
  EmptyGold() : Error("recall undefined: no gold spans") {}
};

class EmptySystem : public Error {
 public:
  EmptySystem() : Error("precision undefined: no system lines") {}
};

class ZeroRecall : public Error {
 public:
  ZeroRecall() : Error("bias correction undefined for zero recall") {}
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace lexgram
