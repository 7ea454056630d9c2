#pragma once

#include <stdexcept>
#include <string>

namespace klevel {

/// Base class for all contract violations raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two planes with identical gradients were asked for an intersection line.
class ParallelPlanesError : public Error {
public:
    ParallelPlanesError(int i, int j)
        : Error("parallel planes " + std::to_string(i) + "," + std::to_string(j)), i(i), j(j) {}
    int i, j;
};

/// Three planes whose projected intersection lines do not meet in a single point.
class DegenerateTripleError : public Error {
public:
    DegenerateTripleError(int i, int j, int k)
        : Error("degenerate triple " + std::to_string(i) + "," + std::to_string(j) + "," +
                std::to_string(k)),
          i(i), j(j), k(k) {}
    int i, j, k;
};

/// A sample point that was required to avoid all planes lies on one of them.
class NonGenericPointError : public Error {
public:
    explicit NonGenericPointError(int plane)
        : Error("point lies on plane " + std::to_string(plane)), plane(plane) {}
    int plane;
};

/// A wedge query point lies on one of the two boundary curves.
class OnBoundaryError : public Error {
public:
    explicit OnBoundaryError(int plane)
        : Error("point on curve of plane " + std::to_string(plane)), plane(plane) {}
    int plane;
};

/// A verified diamond admitted no containment direction. Carries a replayable
/// JSON artifact with the full arrangement so the instance can be studied.
class NoContainmentError : public Error {
public:
    explicit NoContainmentError(std::string artifact_json)
        : Error("diamond yields no corridor containment"), artifact(std::move(artifact_json)) {}
    std::string artifact;
};

/// Random generation exceeded its rejection budget.
class RejectionBudgetError : public Error {
public:
    using Error::Error;
};

/// The topological sweep found no applicable move. Must never happen for
/// valid inputs; the front dump is kept for investigation.
class SweepStuckError : public Error {
public:
    explicit SweepStuckError(std::string front_dump)
        : Error("sweep stuck: " + front_dump), front(std::move(front_dump)) {}
    std::string front;
};

} // namespace klevel
