#pragma once

#include <stdexcept>
#include <string>

namespace bubbles {

// Base class for all library errors. The CLI maps subclasses to exit codes.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Bad argument or violated precondition (CLI exit code 1 when raised by parsing,
// otherwise surfaces as a usage error).
class invalid_argument_error : public error {
public:
    explicit invalid_argument_error(const std::string& what) : error(what) {}
};

// Input exceeds a documented support bound (CLI exit code 3).
class capacity_error : public error {
public:
    explicit capacity_error(const std::string& what) : error(what) {}
};

// Modulus structurally excluded from the orbit-count identity: the ideal (2)
// in any field, or the ramified ideal above 3 for d = -3 (CLI exit code 1).
class excluded_modulus_error : public invalid_argument_error {
public:
    explicit excluded_modulus_error(const std::string& what) : invalid_argument_error(what) {}
};

// All points collinear: no triangulation exists; callers fall back.
class collinear_error : public error {
public:
    explicit collinear_error(const std::string& what) : error(what) {}
};

// A search or selection produced no result (CLI exit code 4).
class not_found_error : public error {
public:
    explicit not_found_error(const std::string& what) : error(what) {}
};

} // namespace bubbles
