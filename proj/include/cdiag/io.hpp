#pragma once

#include <string>

#include "cdiag/diagram.hpp"

namespace cdiag {

/// Parses a JSON diagram document and validates it.  Levels, summands and
/// bundle endpoints are 1-based in the document.  Throws
/// std::invalid_argument naming the offending field on parse errors, and
/// listing all violations on validation failure.
Diagram parse_spec(const std::string& text);

/// Deterministic JSON serialization; parse_spec(serialize_spec(d)) == d for
/// valid diagrams.
std::string serialize_spec(const Diagram& d);

/// Parses a label given either as a JSON descriptor or as one of the short
/// names "id", "tent", "g", "h", "const:<fraction>".
PLMap parse_label_text(const std::string& text);

/// Parses an integer matrix "a b; c d" (rows separated by ';').
IntMatrix parse_int_matrix(const std::string& text);

}  // namespace cdiag
