#pragma once

#include <string>
#include <vector>

#include "ttr/tensor3.hpp"

namespace ttr {

// T3B container: bytes "T3B1", then n1, n2, n3 as little-endian uint32,
// then n1*n2*n3 IEEE doubles (little endian) in frontal-slice-major,
// row-major-within-slice order.

void write_t3b(const std::string& path, const Tensor3& t);

// Throws BadMagic when the header does not match, Truncated when the file
// ends before the declared payload.
Tensor3 read_t3b(const std::string& path);

// Label files are plain text, one integer class id per line, 1-based.
// Blank lines are ignored.  Throws LabelMismatch on anything else.
std::vector<int> read_labels(const std::string& path);

void write_labels(const std::string& path, const std::vector<int>& labels);

}  // namespace ttr
