#pragma once

// Plain-text tensor files:
//
//   tensor <N>
//   dims <I_1> ... <I_N>
//   # key value          (optional comment lines, anywhere after line 1)
//   <prod(I_n) whitespace-separated scalars, first index fastest>

#include "tenrank/tensor.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>

namespace tenrank {

using Metadata = std::map<std::string, std::string>;

struct TensorFile {
    DenseTensor tensor;
    Metadata metadata;  ///< `# key value` comment lines, in key order
};

/// Throws FormatError (with line number) or LengthError.
TensorFile parse_tensor_file(std::istream& in);
DenseTensor parse_tensor(std::istream& in);
DenseTensor parse_tensor(std::string_view text);

/// Shortest decimal representation that reads back to the same double.
std::string format_scalar(double v);

void write_tensor(std::ostream& out, const DenseTensor& t, const Metadata& metadata = {});
std::string serialize_tensor(const DenseTensor& t, const Metadata& metadata = {});

TensorFile read_tensor_file(const std::string& path);
void write_tensor_file(const std::string& path, const DenseTensor& t, const Metadata& metadata = {});

}  // namespace tenrank
