#pragma once

#include <stdexcept>
#include <string>

namespace cohbounds {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// A matrix or distribution violates the constraints of a quantum state.
class invalid_state_error : public error {
public:
    explicit invalid_state_error(const std::string& what) : error(what) {}
};

/// An argument is out of range or dimensionally inconsistent.
class argument_error : public error {
public:
    explicit argument_error(const std::string& what) : error(what) {}
};

/// A file does not match the expected JSON schema.
class schema_error : public error {
public:
    explicit schema_error(const std::string& what) : error(what) {}
};

/// A design failed its frame-potential or completeness certification.
class validation_error : public error {
public:
    explicit validation_error(const std::string& what) : error(what) {}
};

/// A declared partition group does not resolve the identity.
class partition_error : public error {
public:
    explicit partition_error(const std::string& what) : error(what) {}
};

/// File could not be read or written.
class io_error : public error {
public:
    explicit io_error(const std::string& what) : error(what) {}
};

} // namespace cohbounds
