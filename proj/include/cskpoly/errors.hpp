#pragma once

#include <stdexcept>
#include <string>

namespace cskpoly {

// Base for all library errors; `code` is the stable machine-readable name
// surfaced in CLI error documents.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

struct InvalidVariance : Error {
    explicit InvalidVariance(const std::string& w) : Error("InvalidVariance", w) {}
};

struct OutOfDomain : Error {
    explicit OutOfDomain(const std::string& w) : Error("OutOfDomain", w) {}
};

// Evaluation of the Cauchy transform hit a pole (an atom of the measure).
struct PoleHit : Error {
    PoleHit(double where, const std::string& w) : Error("PoleHit", w), location(where) {}
    double location;
};

struct ExcludedPoint : Error {
    explicit ExcludedPoint(const std::string& w) : Error("ExcludedPoint", w) {}
};

struct DegenerateDenominator : Error {
    explicit DegenerateDenominator(const std::string& w) : Error("DegenerateDenominator", w) {}
};

struct NotPositiveDefinite : Error {
    explicit NotPositiveDefinite(const std::string& w) : Error("NotPositiveDefinite", w) {}
};

struct TerminatedSequence : Error {
    explicit TerminatedSequence(const std::string& w) : Error("TerminatedSequence", w) {}
};

struct InsufficientMoments : Error {
    explicit InsufficientMoments(const std::string& w) : Error("InsufficientMoments", w) {}
};

struct OutOfGuard : Error {
    explicit OutOfGuard(const std::string& w) : Error("OutOfGuard", w) {}
};

} // namespace cskpoly
