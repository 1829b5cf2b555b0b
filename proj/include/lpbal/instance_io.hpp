#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "lpbal/instance.hpp"

namespace lpbal {

// Instance documents are JSON:
//
//   {
//     "m": 3,
//     "jobs": [ [[a11, a12], [a21, a22], [a31, a32]], ... ],   // m x k, row-major
//     "analytic_opt": 1.0,          // optional
//     "analytic_opt_p": "inf",      // exponent the optimum refers to
//     "provenance": "example1"      // optional
//   }
//
// Numbers are written in shortest round-trip form, so read(write(x)) == x
// bit for bit.

void write_instance(std::ostream& os, const Instance& inst);
void write_instance(const std::filesystem::path& path, const Instance& inst);

/// Throws ParseError (with 1-based line and column when known) for malformed
/// documents and RangeError for entries outside [0, 1].
Instance read_instance(std::istream& is);
Instance read_instance(const std::filesystem::path& path);

std::string instance_to_string(const Instance& inst);
Instance instance_from_string(const std::string& text);

}  // namespace lpbal
