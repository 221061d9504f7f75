#pragma once

#include <stdexcept>
#include <string>

namespace nabla {

// Base class for every error raised by the library. CLI maps these to exit
// code 1 (computation) unless they derive from usage_error (exit code 2).
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside an operation's documented domain (pole of gamma,
// negative-integer binomial argument, t below base, bad order, ...).
struct domain_error : error {
    explicit domain_error(const std::string& msg) : error(msg) {}
};

// A series or adaptive routine failed to reach its target accuracy.
struct convergence_error : error {
    explicit convergence_error(const std::string& msg) : error(msg) {}
};

// Requested construction exists mathematically but has no evaluable
// representation (e.g. a confluent parameter lands on a pole in every
// admissible form). Message carries the diagnostic for the CLI.
struct unavailable_error : error {
    explicit unavailable_error(const std::string& msg) : error(msg) {}
};

// Malformed input the user handed us: bad CSV, bad JSON document, bad
// combination of CLI flags.
struct usage_error : error {
    explicit usage_error(const std::string& msg) : error(msg) {}
};

}  // namespace nabla
