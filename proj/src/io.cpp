#include "bispec/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace bispec {

using nlohmann::json;

namespace {

std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError("malformed JSON", line_column(text, e.byte));
  }
}

double finite(double v) {
  if (!std::isfinite(v)) throw DomainError("cannot serialize a non-finite value");
  return v;
}

json matrix_to_json(const CMatrix& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back({finite(M(i, j).real()), finite(M(i, j).imag())});
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

// Field access with a path for error messages.
const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw FormatError("expected an object", path);
  const auto it = obj.find(key);
  if (it == obj.end()) throw FormatError(std::string("missing field \"") + key + "\"", join(path, key));
  return *it;
}
std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw FormatError("expected a number", path);
  return v.get<double>();
}

int integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw FormatError("expected an integer", path);
  return v.get<int>();
}

const json& array(const json& v, const std::string& path, std::size_t expected_size = std::string::npos) {
  if (!v.is_array()) throw FormatError("expected an array", path);
  if (expected_size != std::string::npos && v.size() != expected_size)
    throw FormatError("expected " + std::to_string(expected_size) + " elements, found " + std::to_string(v.size()),
                      path);
  return v;
}

Complex complex_value(const json& v, const std::string& path) {
  const json& pair = array(v, path, 2);
  return {number(pair[0], index(path, 0)), number(pair[1], index(path, 1))};
}

CMatrix matrix_from_json(const json& v, int n, const std::string& path) {
  const json& rows = array(v, path, n);
  CMatrix M(n, n);
  for (int i = 0; i < n; ++i) {
    const json& row = array(rows[i], index(path, i), n);
    for (int j = 0; j < n; ++j) M(i, j) = complex_value(row[j], index(index(path, i), j));
  }
  return M;
}

json header(const char* kind, GroupTag tag) {
  return {{"format_version", kFormatVersion}, {"kind", kind}, {"group", std::string(to_string(tag))}};
}

GroupTag check_header(const json& doc, const char* kind) {
  const int version = integer(field(doc, "format_version", ""), "format_version");
  if (version != kFormatVersion)
    throw VersionError("unsupported format_version " + std::to_string(version) + " (expected " +
                           std::to_string(kFormatVersion) + ")",
                       "format_version");
  const json& k = field(doc, "kind", "");
  if (!k.is_string() || k.get<std::string>() != kind)
    throw FormatError(std::string("expected a document of kind \"") + kind + "\"", "kind");
  const json& g = field(doc, "group", "");
  if (!g.is_string()) throw FormatError("expected a group name", "group");
  try {
    return parse_group_tag(g.get<std::string>());
  } catch (const Error& e) {
    throw FormatError(e.what(), "group");
  }
}

int bandlimit_field(const json& doc) {
  const int L = integer(field(doc, "bandlimit", ""), "bandlimit");
  if (L < 0) throw FormatError("bandlimit must be nonnegative", "bandlimit");
  return L;
}

void descriptor_body(const BispectrumDescriptor& d, json& doc) {
  doc["side_info_det_f1"] = d.side_info_det_f1 ? json(finite(*d.side_info_det_f1)) : json(nullptr);
  json entries = json::array();
  for (int p = 0; p <= d.bandlimit; ++p)
    for (int q = 0; q <= d.bandlimit; ++q) entries.push_back({{"p", p}, {"q", q}, {"matrix", matrix_to_json(d.at(p, q))}});
  doc["entries"] = std::move(entries);
}

BispectrumDescriptor descriptor_from_body(const json& doc, const std::string& base, GroupTag tag, int L) {
  BispectrumDescriptor d;
  d.group = tag;
  d.bandlimit = L;
  const std::size_t n = static_cast<std::size_t>(L + 1);
  const json& entries = array(field(doc, "entries", base), join(base, "entries"), n * n);
  d.entries.resize(n * n);
  std::vector<bool> seen(n * n, false);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string path = index(join(base, "entries"), i);
    const int p = integer(field(entries[i], "p", path), join(path, "p"));
    const int q = integer(field(entries[i], "q", path), join(path, "q"));
    if (p < 0 || q < 0 || p > L || q > L) throw FormatError("index outside the bandlimit", path);
    const std::size_t slot = d.slot(p, q);
    if (seen[slot]) throw FormatError("duplicate entry", path);
    seen[slot] = true;
    d.entries[slot] =
        matrix_from_json(field(entries[i], "matrix", path), irrep_dim(tag, p) * irrep_dim(tag, q), join(path, "matrix"));
  }
  const auto side = doc.find("side_info_det_f1");
  if (side != doc.end() && !side->is_null()) d.side_info_det_f1 = number(*side, join(base, "side_info_det_f1"));
  return d;
}

}  // namespace

std::string to_json_text(const CoefficientSet& F) {
  F.validate();
  json doc = header("coefficients", F.group);
  doc["bandlimit"] = F.bandlimit;
  json mats = json::array();
  for (const CMatrix& M : F.matrices) mats.push_back(matrix_to_json(M));
  doc["matrices"] = std::move(mats);
  return doc.dump(1) + "\n";
}

std::string to_json_text(const BispectrumDescriptor& d) {
  d.validate();
  json doc = header("bispectrum", d.group);
  doc["bandlimit"] = d.bandlimit;
  descriptor_body(d, doc);
  return doc.dump(1) + "\n";
}

std::string to_json_text(const SphereFunction& s) {
  s.validate();
  json doc = header("sphere", GroupTag::SO3);
  doc["resolution"] = s.resolution;
  json values = json::array();
  for (double v : s.values) values.push_back(finite(v));
  doc["values"] = std::move(values);
  return doc.dump(1) + "\n";
}

std::string to_json_text(const SampledFunction& f) {
  if (!f.quadrature) throw DomainError("samples have no quadrature rule");
  if (f.values.size() != f.quadrature->size()) throw DomainError("sample count does not match quadrature nodes");
  json doc = header("samples", f.group());
  doc["bandlimit"] = f.quadrature->bandlimit();
  json values = json::array();
  for (const Complex& v : f.values) values.push_back({finite(v.real()), finite(v.imag())});
  doc["values"] = std::move(values);
  return doc.dump(1) + "\n";
}

CoefficientSet coefficients_from_json(const std::string& text) {
  const json doc = parse(text);
  const GroupTag tag = check_header(doc, "coefficients");
  const int L = bandlimit_field(doc);
  const json& mats = array(field(doc, "matrices", ""), "matrices", L + 1);
  CoefficientSet F(tag, L);
  for (int ell = 0; ell <= L; ++ell) F[ell] = matrix_from_json(mats[ell], irrep_dim(tag, ell), index("matrices", ell));
  return F;
}

BispectrumDescriptor descriptor_from_json(const std::string& text) {
  const json doc = parse(text);
  const GroupTag tag = check_header(doc, "bispectrum");
  return descriptor_from_body(doc, "", tag, bandlimit_field(doc));
}

SphereFunction sphere_from_json(const std::string& text) {
  const json doc = parse(text);
  check_header(doc, "sphere");
  const int B = integer(field(doc, "resolution", ""), "resolution");
  if (B < 1) throw FormatError("resolution must be positive", "resolution");
  SphereFunction s(B);
  const json& values = array(field(doc, "values", ""), "values", s.values.size());
  for (std::size_t i = 0; i < s.values.size(); ++i) s.values[i] = number(values[i], index("values", i));
  return s;
}

SampledFunction samples_from_json(const std::string& text) {
  const json doc = parse(text);
  const GroupTag tag = check_header(doc, "samples");
  const int L = bandlimit_field(doc);
  auto rule = std::make_shared<const QuadratureRule>(L, tag);
  SampledFunction f{rule, {}};
  const json& values = array(field(doc, "values", ""), "values", rule->size());
  for (std::size_t i = 0; i < values.size(); ++i) f.values.push_back(complex_value(values[i], index("values", i)));
  return f;
}

std::string to_json_text(const GlyphIndex& index) {
  index.validate();
  json doc = header("glyph_index", GroupTag::SO3);
  doc["resolution"] = index.resolution;
  doc["bandlimit"] = index.bandlimit;
  json records = json::array();
  for (const GlyphRecord& r : index.records) {
    json rec = {{"label", r.label}, {"source", r.source}, {"width", r.width}, {"height", r.height}};
    descriptor_body(r.descriptor, rec);
    records.push_back(std::move(rec));
  }
  doc["records"] = std::move(records);
  return doc.dump(1) + "\n";
}

GlyphIndex glyph_index_from_json(const std::string& text) {
  const json doc = parse(text);
  const GroupTag tag = check_header(doc, "glyph_index");
  if (tag != GroupTag::SO3) throw FormatError("glyph indices are SO3 documents", "group");
  GlyphIndex index;
  index.resolution = integer(field(doc, "resolution", ""), "resolution");
  if (index.resolution < 2) throw FormatError("resolution must be at least 2", "resolution");
  index.bandlimit = bandlimit_field(doc);
  const json& records = array(field(doc, "records", ""), "records");
  for (std::size_t i = 0; i < records.size(); ++i) {
    const std::string path = "records[" + std::to_string(i) + "]";
    const json& label = field(records[i], "label", path);
    if (!label.is_string()) throw FormatError("expected a string", join(path, "label"));
    GlyphRecord r;
    r.label = label.get<std::string>();
    if (records[i].contains("source") && records[i]["source"].is_string()) r.source = records[i]["source"].get<std::string>();
    if (records[i].contains("width")) r.width = integer(records[i]["width"], join(path, "width"));
    if (records[i].contains("height")) r.height = integer(records[i]["height"], join(path, "height"));
    r.descriptor = descriptor_from_body(records[i], path, tag, index.bandlimit);
    index.records.push_back(std::move(r));
  }
  return index;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

std::string document_kind(const std::filesystem::path& path) {
  const json doc = parse(read_text(path));
  const json& k = field(doc, "kind", "");
  if (!k.is_string()) throw FormatError("expected a string", "kind");
  return k.get<std::string>();
}

void save(const std::filesystem::path& path, const CoefficientSet& F) { write_text(path, to_json_text(F)); }
void save(const std::filesystem::path& path, const BispectrumDescriptor& d) { write_text(path, to_json_text(d)); }
void save(const std::filesystem::path& path, const SphereFunction& s) { write_text(path, to_json_text(s)); }
void save(const std::filesystem::path& path, const SampledFunction& f) { write_text(path, to_json_text(f)); }
void save(const std::filesystem::path& path, const GlyphIndex& index) { write_text(path, to_json_text(index)); }

CoefficientSet load_coefficients(const std::filesystem::path& path) { return coefficients_from_json(read_text(path)); }
BispectrumDescriptor load_descriptor(const std::filesystem::path& path) { return descriptor_from_json(read_text(path)); }
SphereFunction load_sphere(const std::filesystem::path& path) { return sphere_from_json(read_text(path)); }
SampledFunction load_samples(const std::filesystem::path& path) { return samples_from_json(read_text(path)); }
GlyphIndex load_glyph_index(const std::filesystem::path& path) { return glyph_index_from_json(read_text(path)); }

namespace {

// Next whitespace-delimited header token, skipping '#' comments.
std::string pgm_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  return tok;
}

int pgm_int(std::istream& in, const char* what) {
  const std::string tok = pgm_token(in);
  try {
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw FormatError("bad PGM header value \"" + tok + "\"", what);
  }
}

}  // namespace

Image read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  if (pgm_token(in) != "P5") throw FormatError("not a binary PGM (P5) file", "magic");
  Image img;
  img.width = pgm_int(in, "width");
  img.height = pgm_int(in, "height");
  const int maxval = pgm_int(in, "maxval");
  if (img.width <= 0 || img.height <= 0) throw FormatError("empty image", "width/height");
  if (maxval != 255) throw FormatError("only maxval 255 is supported", "maxval");
  std::vector<unsigned char> raw(static_cast<std::size_t>(img.width) * img.height);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (in.gcount() != static_cast<std::streamsize>(raw.size()))
    throw FormatError("truncated pixel data", "byte " + std::to_string(in.gcount()));
  img.pixels.resize(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) img.pixels[i] = raw[i] / 255.0;
  return img;
}

void write_pgm(const std::filesystem::path& path, const Image& image) {
  if (image.width <= 0 || image.height <= 0 ||
      image.pixels.size() != static_cast<std::size_t>(image.width) * image.height)
    throw DomainError("image has inconsistent dimensions");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << "P5\n" << image.width << " " << image.height << "\n255\n";
  for (double v : image.pixels) {
    const double c = std::clamp(v, 0.0, 1.0);
    out.put(static_cast<char>(static_cast<unsigned char>(std::lround(c * 255.0))));
  }
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace bispec
