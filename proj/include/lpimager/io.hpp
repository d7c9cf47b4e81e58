#pragma once

#include <span>
#include <string>

#include "lpimager/image.hpp"

namespace lpimager {

std::string sha256_hex(std::span<const unsigned char> bytes);
std::string sha256_hex(const std::string& text);
std::string sha256_file(const std::string& path);

// Image files. JSON carries the schema fields with misses encoded as the
// string "inf"; CSV is one value per line after a '#'-prefixed metadata
// header. Doubles are written with round-trip precision.
std::string image_to_json(const LpImage& img);
LpImage image_from_json(const std::string& text);
void write_image_json(const LpImage& img, const std::string& path);
LpImage read_image_json(const std::string& path);

std::string image_to_csv(const LpImage& img);
void write_image_csv(const LpImage& img, const std::string& path);

// Field dump: one lattice point per row, n columns.
std::string points_to_csv(const std::vector<Vec>& points);

// Serialization of the image payload without the build-info fields
// (mode, workers); equal payloads mean equal images regardless of how
// they were built.
std::string image_payload(const LpImage& img);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace lpimager
