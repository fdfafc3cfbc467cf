#ifndef SPPM_ERRORS_HPP
#define SPPM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sppm {

/// Two vectors that must share a dimension do not.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An objective component produced a non-finite value or its oracle failed.
/// Carries the (zero-based) index of the offending component, or -1 when the
/// failure is not attributable to a single component.
class EvaluationError : public std::runtime_error {
public:
    EvaluationError(const std::string& msg, int component = -1)
        : std::runtime_error(msg), component_(component) {}

    int component() const { return component_; }

private:
    int component_;
};

/// Invalid arguments to a problem or parameter constructor.
class ConstructionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A criticality test was requested on a problem it does not apply to.
class MethodMismatchError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// File input/output failure; the message names the path involved.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace sppm

#endif  // SPPM_ERRORS_HPP
