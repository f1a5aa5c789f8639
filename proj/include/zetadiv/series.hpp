#pragma once

#include <algorithm>
#include <cstddef>
#include <string>

#include "zetadiv/errors.hpp"

namespace zetadiv {

/// Truncation / precision policy shared by every infinite-series evaluation.
struct SeriesPolicy {
    double target_rel_error = 1e-12;
    std::size_t max_terms = 1'000'000;
    std::size_t euler_maclaurin_cutoff = 20;  // direct terms before the tail expansion
    std::size_t euler_maclaurin_order = 10;   // correction pairs in the tail expansion

    void validate() const {
        if (!(target_rel_error > 0.0 && target_rel_error < 1.0))
            throw DomainError("SeriesPolicy: target_rel_error must lie in (0, 1)");
        if (max_terms == 0 || euler_maclaurin_cutoff == 0 || euler_maclaurin_order == 0)
            throw DomainError("SeriesPolicy: counts must be positive");
        if (max_terms < euler_maclaurin_cutoff)
            throw DomainError("SeriesPolicy: max_terms must be >= euler_maclaurin_cutoff");
    }

    /// Same policy with a tighter target; used internally so that composite
    /// expressions stay comfortably inside the caller's tolerance.
    SeriesPolicy tightened(double factor = 100.0) const {
        SeriesPolicy p = *this;
        p.target_rel_error = std::max(target_rel_error / factor, 5e-16);
        return p;
    }
};

enum class SeriesMethod { direct, euler_maclaurin, mangoldt, integral_tail };

std::string to_string(SeriesMethod m);

/// A computed series value with its truncation certificate: the true
/// mathematical value lies within +-truncation_bound of value (up to
/// floating-point rounding).
struct SeriesValue {
    double value = 0.0;
    double truncation_bound = 0.0;
    std::size_t terms_used = 0;
    SeriesMethod method = SeriesMethod::direct;
};

}  // namespace zetadiv
