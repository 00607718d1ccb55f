#pragma once

#include <string>

#include "stpor/system.hpp"

namespace stpor {

/// Parses a model document. Syntax problems throw ModelError carrying line and
/// column. The result is not validated; see load_system.
System parse_system(const std::string& text);

/// parse_system followed by require_valid.
System load_system(const std::string& text);

/// Reads a file and loads it. Throws ModelError on I/O failure as well.
System load_system_file(const std::string& path);

/// Canonical text form. parse_system(format_system(s)) reproduces s, and the
/// output always carries an explicit `order` line.
std::string format_system(const System& sys);

/// True if `name` matches the model-format identifier alphabet.
bool is_identifier(const std::string& name);

}  // namespace stpor
