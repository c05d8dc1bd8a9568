// Error types shared across the generators and the census tooling.
//
// Everything derives from std::runtime_error or std::invalid_argument so
// call sites can stay coarse; the concrete types exist for tests and for the
// CLI to map failures to exit codes and messages.

#pragma once

#include <stdexcept>

namespace knotcensus {

// A signed label passed to an operation is not an edge of the given code.
struct BadEdgeReference : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A brute-force enumeration would exceed the configured work bound.  Callers
// can override the guard explicitly.
struct CostGuardExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The composite-shadow builder was given no primes for a size it needs.
struct MissingPrimeSeeds : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// The expansion generator was given no seed graphs for a size it needs.
struct MissingSeeds : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A degree count came out odd where the move grammar guarantees even.
struct ParityViolation : std::logic_error {
    using std::logic_error::logic_error;
};

// planar_code input that does not start with ">>planar_code<<".
struct BadMagicHeader : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// planar_code input that ends or breaks inside a graph record.
struct TruncatedRecord : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Dualization to a shadow requires every face to be a quadrilateral.
struct NonQuadFace : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A diagram handed to the skein evaluator is malformed: its crossing states
// or orientation flags do not match the underlying shadow.
struct ComponentCountChanged : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A diagram count cannot be split evenly across the symmetry variants of a
// knot type.
struct IndivisibleCount : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A reference diagram failed its consistency checks while building the knot
// table (wrong crossing count, trivial polynomial, or a symmetry class that
// contradicts the computed polynomial).
struct ReferenceValidationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Table verification was asked about a crossing number that has no computed
// census record.
struct IncompleteCensus : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A leased work chunk missed its deadline.  The coordinator handles this by
// requeueing; it escapes only when a chunk exhausts its retry budget.
struct ChunkTimeout : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A chunk result file exists but cannot be parsed back into a partial census.
struct CorruptResultFile : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace knotcensus
