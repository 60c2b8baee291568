#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracsys {

/// Grid or dimension mismatch between operands.
class ShapeError : public std::invalid_argument {
public:
    explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

/// A lemma/theorem hypothesis does not hold (e.g. q <= 1/rho).
class HypothesisError : public std::domain_error {
public:
    explicit HypothesisError(const std::string& what) : std::domain_error(what) {}
};

/// A user-supplied evaluable produced a non-finite value; carries the node index.
class EvalError : public std::runtime_error {
public:
    EvalError(const std::string& what, std::size_t node)
        : std::runtime_error(what + " at node " + std::to_string(node)), node_(node) {}
    std::size_t node() const { return node_; }

private:
    std::size_t node_;
};

/// Config-file problem, addressed by line and field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, std::size_t line, const std::string& field = {})
        : std::runtime_error("line " + std::to_string(line) +
                             (field.empty() ? std::string{} : " [" + field + "]") + ": " + what),
          line_(line),
          field_(field) {}
    std::size_t line() const { return line_; }
    const std::string& field() const { return field_; }

private:
    std::size_t line_;
    std::string field_;
};

}  // namespace fracsys
