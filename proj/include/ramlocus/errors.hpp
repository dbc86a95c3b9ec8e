#pragma once

#include <stdexcept>
#include <string>

#include "ramlocus/bigint.hpp"

namespace ramlocus {

// Arithmetic between residues attached to different rings.
struct RingMismatch : std::invalid_argument {
    explicit RingMismatch(const std::string& what) : std::invalid_argument(what) {}
};

// Inversion of an element divisible by p.
struct NonUnit : std::domain_error {
    explicit NonUnit(const std::string& what) : std::domain_error(what) {}
};

// Matrix inversion when det is not a unit.
struct NonInvertible : std::domain_error {
    explicit NonInvertible(const std::string& what) : std::domain_error(what) {}
};

struct DimMismatch : std::invalid_argument {
    explicit DimMismatch(const std::string& what) : std::invalid_argument(what) {}
};

// Working precision n below the semistability threshold N(m, p).
struct PrecisionTooLow : std::domain_error {
    explicit PrecisionTooLow(const std::string& what) : std::domain_error(what) {}
};

struct BadParam : std::invalid_argument {
    explicit BadParam(const std::string& what) : std::invalid_argument(what) {}
};

// Enumeration refused: predicted element count exceeds the budget.
struct TooLarge : std::runtime_error {
    Nat predicted_size;
    TooLarge(const std::string& what, Nat predicted)
        : std::runtime_error(what), predicted_size(std::move(predicted)) {}
};

// Requested Frobenius slice contains no elements.
struct EmptySlice : std::domain_error {
    explicit EmptySlice(const std::string& what) : std::domain_error(what) {}
};

// Decay fit impossible: fewer than two levels with nonzero locus.
struct DegenerateFit : std::domain_error {
    explicit DegenerateFit(const std::string& what) : std::domain_error(what) {}
};

}  // namespace ramlocus
