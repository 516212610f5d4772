#pragma once

#include <stdexcept>
#include <string>

namespace patrol {

enum class ErrorKind {
  kInvalidDimension,
  kConnectivity,
  kDomain,
  kStochasticity,
  kConformance,
  kIrreducible,
  kDanglingNode,
  kSize,
  kApplicability,
  kTopology,
  kConfigRange,
  kParse,
  kIo,
};

const char* to_string(ErrorKind kind);

// Base for every error raised by the library. The CLI maps these to exit
// status 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Positive transition probability on a pair that is not an edge of the graph.
// Labels are 1-based.
class ConformanceError : public Error {
 public:
  ConformanceError(int from, int to)
      : Error(ErrorKind::kConformance,
              "positive probability on non-edge (" + std::to_string(from) +
                  "," + std::to_string(to) + ")"),
        from_(from),
        to_(to) {}

  int from() const noexcept { return from_; }
  int to() const noexcept { return to_; }

 private:
  int from_;
  int to_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidDimension: return "invalid dimension";
    case ErrorKind::kConnectivity: return "connectivity";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kStochasticity: return "stochasticity";
    case ErrorKind::kConformance: return "conformance";
    case ErrorKind::kIrreducible: return "irreducibility";
    case ErrorKind::kDanglingNode: return "dangling node";
    case ErrorKind::kSize: return "size";
    case ErrorKind::kApplicability: return "applicability";
    case ErrorKind::kTopology: return "topology";
    case ErrorKind::kConfigRange: return "configuration range";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kIo: return "io";
  }
  return "error";
}

}  // namespace patrol
