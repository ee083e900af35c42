#pragma once

#include <stdexcept>
#include <string>

#include "ultra/functions.hpp"

namespace ultra {

/// Malformed or inconsistent function file.
class FileFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// JSON function file: p, degree, support_level (stores m), constancy_level
/// (k) and one record per coset with its digits a_j, j = -m..k-1, and the
/// rational real and imaginary parts. Records may come in any order.
TestFunction parse_function_json(const std::string& text);
TestFunction parse_function_file(const std::string& path);

/// Canonical coset order, two-space indentation. Throws if a value is not rational.
std::string write_function_json(const TestFunction& f);
void write_function_file(const TestFunction& f, const std::string& path);

}  // namespace ultra
