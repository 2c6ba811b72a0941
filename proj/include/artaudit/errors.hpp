#pragma once

#include <stdexcept>
#include <string>

namespace artaudit {

// Failure classes map one-to-one onto CLI exit codes.
enum class ErrorKind { usage = 2, validation = 3, numeric = 4 };

class AuditError : public std::runtime_error {
public:
    AuditError(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }
    int exit_code() const noexcept { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

class UsageError : public AuditError {
public:
    explicit UsageError(const std::string& what) : AuditError(ErrorKind::usage, what) {}
};

class ValidationError : public AuditError {
public:
    explicit ValidationError(const std::string& what)
        : AuditError(ErrorKind::validation, what) {}
};

/// Raised when a computation has no meaningful answer: zero-norm vectors,
/// zero-variance rank data.
class DegenerateError : public AuditError {
public:
    explicit DegenerateError(const std::string& what)
        : AuditError(ErrorKind::numeric, what) {}
};

}  // namespace artaudit
