#ifndef CONDORCET_ERRORS_HPP
#define CONDORCET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace condorcet {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Adding a preference pair whose transitive closure would relate an object to itself.
struct CycleError : Error {
    using Error::Error;
};

struct UnknownObjectError : Error {
    using Error::Error;
};

// rank_weight requires a weak ranking (transitive indifference).
struct NotWeakRankingError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct ValidationError : Error {
    using Error::Error;
};

struct NotABasisError : Error {
    using Error::Error;
};

// bijective_exchange found no valid bijection; the oracle is not a matroid.
struct NoBijectionError : Error {
    using Error::Error;
};

struct NotACycleError : Error {
    using Error::Error;
};

struct NotBasesError : Error {
    using Error::Error;
};

struct NotStrictError : Error {
    using Error::Error;
};

struct NotWeakError : Error {
    using Error::Error;
};

// Brute-force operation asked to run beyond its configured cap.
struct TooLargeError : Error {
    using Error::Error;
};

// Arborescence instance with a node that cannot be reached from the root.
struct UnreachableError : Error {
    using Error::Error;
};

}  // namespace condorcet

#endif  // CONDORCET_ERRORS_HPP
