#pragma once

#include <filesystem>
#include <string>

#include "bispec/glyph.hpp"

namespace bispec {

/// Malformed input. position() is "line L, column C" for syntax errors or a
/// field path such as "matrices[2][0][1]" for schema errors.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::string position)
      : Error(position.empty() ? what : what + " (at " + position + ")"), position_(std::move(position)) {}
  const std::string& position() const { return position_; }

 private:
  std::string position_;
};

class VersionError : public FormatError {
 public:
  using FormatError::FormatError;
};

inline constexpr int kFormatVersion = 1;

/// Top-level "kind" of a document.
std::string document_kind(const std::filesystem::path& path);

// JSON documents: {"format_version": 1, "kind": ..., "group": ..., ...} with
// matrices as arrays of rows of [re, im] pairs. Doubles are written in
// shortest round-trip decimal form, so loading reproduces them bit for bit.

std::string to_json_text(const CoefficientSet& F);
std::string to_json_text(const BispectrumDescriptor& d);
std::string to_json_text(const SphereFunction& s);
/// Samples are stored with the group and quadrature bandlimit; the node
/// order is that of QuadratureRule.
std::string to_json_text(const SampledFunction& f);
std::string to_json_text(const GlyphIndex& index);

CoefficientSet coefficients_from_json(const std::string& text);
BispectrumDescriptor descriptor_from_json(const std::string& text);
SphereFunction sphere_from_json(const std::string& text);
SampledFunction samples_from_json(const std::string& text);
GlyphIndex glyph_index_from_json(const std::string& text);

void save(const std::filesystem::path& path, const CoefficientSet& F);
void save(const std::filesystem::path& path, const BispectrumDescriptor& d);
void save(const std::filesystem::path& path, const SphereFunction& s);
void save(const std::filesystem::path& path, const SampledFunction& f);
void save(const std::filesystem::path& path, const GlyphIndex& index);

CoefficientSet load_coefficients(const std::filesystem::path& path);
BispectrumDescriptor load_descriptor(const std::filesystem::path& path);
SphereFunction load_sphere(const std::filesystem::path& path);
SampledFunction load_samples(const std::filesystem::path& path);
GlyphIndex load_glyph_index(const std::filesystem::path& path);

/// Binary PGM (P5, maxval 255). Intensities are scaled to [0, 1].
Image read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const Image& image);

/// Whole file as text; throws Error if it cannot be read.
std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace bispec
