#pragma once

#include <stdexcept>
#include <string>

namespace testrl {

// Base class for every recoverable pipeline error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FatalSyntax : public Error {
 public:
  FatalSyntax(const std::string& message, std::size_t offset)
      : Error(message + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class EmptyCorpus : public Error {
 public:
  EmptyCorpus() : Error("corpus is empty") {}
};

class FocalNotFound : public Error {
 public:
  explicit FocalNotFound(const std::string& name)
      : Error("focal method '" + name + "' not found") {}
};

class PromptTooLong : public Error {
 public:
  PromptTooLong(std::size_t tokens, std::size_t budget)
      : Error("prompt needs " + std::to_string(tokens) + " tokens at the most concise level, budget is " +
              std::to_string(budget)),
        tokens_(tokens) {}
  std::size_t tokens() const { return tokens_; }

 private:
  std::size_t tokens_;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class TooFewRepos : public Error {
 public:
  TooFewRepos(std::size_t have, std::size_t need)
      : Error("need at least " + std::to_string(need) + " repositories, got " + std::to_string(have)) {}
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace testrl
