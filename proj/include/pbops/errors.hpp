#ifndef PBOPS_ERRORS_HPP
#define PBOPS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pbops {

// Bad user input: unsupported family, parameter out of range, malformed config.
class parameter_error : public std::invalid_argument {
public:
    explicit parameter_error(const std::string& what) : std::invalid_argument(what) {}
};

// An iteration failed to stabilize within its configured cap.
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

// A quadrature or scan ran out of its subdivision budget.  Carries the best
// value obtained so far.
class budget_error : public std::runtime_error {
public:
    budget_error(const std::string& what, double partial)
        : std::runtime_error(what), partial_value(partial) {}
    double partial_value;
};

// f' has no positive zero in the searched interval.
class not_admissible_error : public std::runtime_error {
public:
    explicit not_admissible_error(const std::string& what) : std::runtime_error(what) {}
};

// A series has an identically zero tail, so no root-test estimate exists.
class undefined_radius_error : public std::runtime_error {
public:
    explicit undefined_radius_error(const std::string& what) : std::runtime_error(what) {}
};

// A computed inverse series violated the nonnegativity hypothesis.
class hypothesis_violation : public std::runtime_error {
public:
    hypothesis_violation(const std::string& what, std::size_t index)
        : std::runtime_error(what), coefficient_index(index) {}
    std::size_t coefficient_index;
};

class overflow_error : public std::runtime_error {
public:
    explicit overflow_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace pbops

#endif
