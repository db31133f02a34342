#ifndef GOGSTAR_ERROR_HPP
#define GOGSTAR_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gogstar {

/// Base class for everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller passed data that violates an operation's precondition.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A coset space that has to be enumerated is infinite.
class IndexInfinite : public Error {
 public:
  using Error::Error;
};

/// The requested construction needs something the group backends cannot express.
class BackendUnsupported : public Error {
 public:
  using Error::Error;
};

/// The target graph of groups admits no unfold of the requested kind.
class NoUnfoldAvailable : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Verdict of a validation pass: empty means ok.
struct Report {
  std::vector<std::string> issues;

  bool ok() const { return issues.empty(); }
  void add(std::string issue) { issues.push_back(std::move(issue)); }
  void merge(const Report& other, const std::string& prefix = {}) {
    for (const auto& i : other.issues) issues.push_back(prefix + i);
  }
  std::string first() const { return issues.empty() ? std::string{} : issues.front(); }
};

}  // namespace gogstar

#endif
