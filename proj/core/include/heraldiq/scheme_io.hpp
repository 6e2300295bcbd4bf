#pragma once

#include <iosfwd>
#include <string>

#include "heraldiq/schemes.hpp"

namespace heraldiq {

/// Scheme file format (JSON): {name, modes, elements[], input[],
/// herald{modes[], patterns|predicate}, detectors[], target{kind, params,
/// register}, expected_success}. See docs/scheme-files.md for the field
/// reference.
SchemeDefinition read_scheme_json(const std::string& text);
SchemeDefinition read_scheme_file(const std::string& path);
std::string write_scheme_json(const SchemeDefinition& scheme);
void write_scheme_file(const std::string& path, const SchemeDefinition& scheme);

}  // namespace heraldiq
