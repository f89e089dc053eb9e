#ifndef GCH_ERRORS_HPP
#define GCH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gch {

// Base class for all library errors.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid argument or parameter outside the operation's domain.  Mapped to
// exit code 2 by the CLI.
class domain_error : public error {
public:
    using error::error;
};

// A Frobenius denominator (m + lambda)(m + lambda - 1 + nu) vanished; the
// power-series ansatz breaks down and a logarithmic solution would be needed.
class resonance_error : public domain_error {
public:
    resonance_error(int offending_index, const std::string& what)
        : domain_error(what), index(offending_index) {}
    int index;
};

// A series or iteration failed to converge within its budget.  Mapped to
// exit code 3 by the CLI.
class convergence_error : public error {
public:
    using error::error;
};

// A nested sum or lattice enumeration would exceed its size budget.
class budget_error : public error {
public:
    using error::error;
};

// Finiteness gate at public boundaries: no NaN/Inf escapes without an error.
double ensure_finite(double value, const char* what);

} // namespace gch

#endif
