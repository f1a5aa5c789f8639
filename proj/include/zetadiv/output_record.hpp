#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace zetadiv {

/// Formats a double with 15 significant digits (the project-wide printing
/// convention; matches the precision of every golden constant).
std::string format_double(double x);

/// Result of one CLI command: the command echo, its inputs, named numeric
/// values, optional string-valued notes, and the evaluation metadata.
/// Serializable as human-readable text and as a single machine line whose
/// re-parse reproduces all numeric fields.
struct OutputRecord {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<std::pair<std::string, double>> values;
    std::vector<std::pair<std::string, std::string>> notes;
    std::optional<double> certificate;
    std::string method;
    std::optional<std::size_t> terms_used;

    std::string to_text() const;
    std::string to_machine() const;
    static OutputRecord parse_machine(const std::string& line);
};

}  // namespace zetadiv
