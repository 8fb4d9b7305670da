#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fisgen {

/// Quotes a field when it contains a comma, quote, or newline (RFC-4180).
std::string csv_escape(const std::string& field);

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

/// Parses RFC-4180-style CSV (quoted fields, embedded commas/newlines, CRLF
/// or LF line endings). Returns one vector of fields per record.
std::vector<std::vector<std::string>> read_csv(std::istream& in);

/// Strict finite-double parse of a whole cell; returns false on any trailing
/// junk or non-finite value.
bool parse_double(const std::string& cell, double& value);

}  // namespace fisgen
