#include "lexgram/error.hpp"

#include <utility>

namespace lexgram {

namespace {

std::string entry_message(const std::string& reason, std::size_t column,
                          std::size_t line, const std::string& source) {
  std::string msg = "malformed lexicon entry";
  if (!source.empty()) msg += " in " + source;
  if (line != 0) msg += " at line " + std::to_string(line);
  msg += ", column " + std::to_string(column) + ": " + reason;
  return msg;
}

}  // namespace

MalformedEntry::MalformedEntry(std::string reason, std::size_t column,
                               std::size_t line, std::string source)
    : Error(entry_message(reason, column, line, source)),
      reason_(std::move(reason)),
      column_(column),
      line_(line) {}

MalformedParadigm::MalformedParadigm(std::string reason, std::size_t line)
    : Error("malformed paradigm at line " + std::to_string(line) + ": " +
            reason),
      line_(line) {}

UnknownParadigm::UnknownParadigm(const std::string& name,
                                 const std::string& lemma)
    : Error("lemma '" + lemma + "' refers to unknown paradigm '" + name + "'") {
}

LemmaTooShort::LemmaTooShort(const std::string& lemma,
                             const std::string& infl_code)
    : Error("lemma '" + lemma + "' too short for rule ':" + infl_code + "'") {}

InvalidEncoding::InvalidEncoding(std::size_t offset)
    : Error("invalid UTF-8 at byte " + std::to_string(offset)),
      offset_(offset) {}

MalformedGraph::MalformedGraph(std::string file, std::size_t line,
                               const std::string& reason)
    : Error("malformed graph " + file + ":" + std::to_string(line) + ": " +
            reason),
      file_(std::move(file)),
      line_(line) {}

UnresolvedCall::UnresolvedCall(const std::string& caller,
                               const std::string& callee)
    : Error("graph '" + caller + "' calls undefined graph '" + callee + "'"),
      callee_(callee) {}

}  // namespace lexgram
