#pragma once

#include <filesystem>
#include <iosfwd>

#include "brauer/tensor3.hpp"

namespace brauer {

enum class TensorFormat { text, binary };

/// Text layout: a header line "p q r" followed by p*q*r whitespace-separated
/// decimals, mode-1 index fastest.
Tensor3 read_tensor_text(std::istream& in);
void write_tensor_text(std::ostream& out, const Tensor3& t);

/// Binary layout: three little-endian uint64 extents, then p*q*r
/// little-endian IEEE-754 doubles in the same order as the text format.
Tensor3 read_tensor_binary(std::istream& in);
void write_tensor_binary(std::ostream& out, const Tensor3& t);

/// Files ending in ".bin" are binary, everything else is text.
TensorFormat format_for_path(const std::filesystem::path& path);
Tensor3 load_tensor(const std::filesystem::path& path);
void save_tensor(const std::filesystem::path& path, const Tensor3& t);

}  // namespace brauer
