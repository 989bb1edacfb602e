// bispec: command-line front end.
//
// Exit status: 0 success, 1 verification failure, 2 usage or input error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "bispec/io.hpp"
#include "bispec/reconstruct.hpp"
#include "bispec/verify.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace bispec;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kUsageError = 2;

// Writes to the file, or to stdout when no path is given.
void emit(const std::string& output, const std::string& text) {
  if (output.empty() || output == "-")
    std::cout << text;
  else
    write_text(output, text);
}

void warn(const std::string& message) { std::cerr << "warning: " << message << "\n"; }

bool has_pgm_extension(const fs::path& p) {
  std::string ext = p.extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext == ".pgm";
}

struct Common {
  std::string output;
  std::optional<double> tolerance;

  double tol(double fallback) const { return tolerance.value_or(fallback); }
};

void add_common(CLI::App* cmd, Common& c, const std::string& tolerance_help) {
  cmd->add_option("-o,--output", c.output, "Output file (default: stdout)");
  cmd->add_option("--tolerance", c.tolerance, tolerance_help)->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bispectra of bandlimited functions on SU(2), SO(3) and the sphere"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "bispec 0.1.0");

  // transform
  Common transform_opts;
  std::string transform_input;
  int transform_bandlimit = -1;
  auto* transform = app.add_subcommand("transform", "Samples on a quadrature grid -> Fourier coefficients");
  transform->add_option("input", transform_input, "Samples document")->required()->check(CLI::ExistingFile);
  transform->add_option("-L,--bandlimit", transform_bandlimit, "Coefficient bandlimit (default: the rule's)");
  add_common(transform, transform_opts, "Round-trip residual above which a warning is printed (default 1e-9)");

  // inverse
  Common inverse_opts;
  std::string inverse_input;
  int inverse_rule = -1;
  auto* inverse = app.add_subcommand("inverse", "Fourier coefficients -> samples on a quadrature grid");
  inverse->add_option("input", inverse_input, "Coefficients document")->required()->check(CLI::ExistingFile);
  inverse->add_option("--quadrature-bandlimit", inverse_rule, "Bandlimit of the sampling rule (default: L)");
  add_common(inverse, inverse_opts, "Round-trip residual above which a warning is printed (default 1e-9)");

  // bispectrum
  Common bispectrum_opts;
  std::string bispectrum_input;
  auto* bispectrum = app.add_subcommand("bispectrum", "Fourier coefficients -> bispectrum descriptor");
  bispectrum->add_option("input", bispectrum_input, "Coefficients document")->required()->check(CLI::ExistingFile);
  add_common(bispectrum, bispectrum_opts,
             "|A(0,0)| relative to the largest entry below which a zero-mean warning is printed (default 1e-14)");

  // reconstruct
  Common reconstruct_opts;
  std::string reconstruct_input, reconstruct_group, reconstruct_truth;
  std::optional<double> det_f1;
  auto* reconstruct_cmd = app.add_subcommand("reconstruct", "Bispectrum descriptor -> coefficients up to translation");
  reconstruct_cmd->add_option("input", reconstruct_input, "Descriptor document")->required()->check(CLI::ExistingFile);
  reconstruct_cmd->add_option("--group", reconstruct_group, "Expected group (SU2 or SO3)")
      ->check(CLI::IsMember({"SU2", "SO3"}));
  reconstruct_cmd->add_option("--det-f1", det_f1, "SO(3) side information det F(1), overriding the file");
  reconstruct_cmd->add_option("--truth", reconstruct_truth, "Original coefficients; reports the aligning element")
      ->check(CLI::ExistingFile);
  add_common(reconstruct_cmd, reconstruct_opts, "Allowed relative descriptor residual (default 1e-7)");

  // lift
  Common lift_opts;
  std::string lift_input, lift_coefficients;
  int lift_resolution = 16, lift_bandlimit = -1;
  auto* lift = app.add_subcommand("lift", "PGM image on the unit disk -> samples on the sphere");
  lift->add_option("input", lift_input, "Binary PGM (P5) image")->required()->check(CLI::ExistingFile);
  lift->add_option("-B,--resolution", lift_resolution, "Sphere grid resolution (2B x 2B samples)")
      ->check(CLI::Range(2, 1024));
  lift->add_option("-L,--bandlimit", lift_bandlimit, "Also write north-pole lift coefficients at this bandlimit");
  lift->add_option("--coefficients", lift_coefficients, "Where to write the coefficients");
  add_common(lift, lift_opts, "Peak intensity below which the image is reported blank (default 1e-12)");

  // match
  Common match_opts;
  std::string match_index, match_query;
  int match_top = 0;
  auto* match_cmd = app.add_subcommand("match", "Rank glyph-index labels by descriptor distance to a query");
  match_cmd->add_option("--index", match_index, "Glyph index document")->required()->check(CLI::ExistingFile);
  match_cmd->add_option("--query", match_query, "Query image (.pgm) or descriptor document")
      ->required()
      ->check(CLI::ExistingFile);
  match_cmd->add_option("--top", match_top, "Show only the best k labels");
  add_common(match_cmd, match_opts, "Distance at or below which a match is flagged exact (default 1e-12)");

  // verify
  Common verify_opts;
  std::vector<std::string> verify_suites;
  std::uint64_t verify_seed = 1;
  bool corrupt_cg = false;
  auto* verify = app.add_subcommand("verify", "Run the invariant suites and report residuals");
  verify->add_option("--suite", verify_suites, "Suite name, repeatable (default: all)")
      ->check(CLI::IsMember([] {
        std::vector<std::string> names = verify_suite_names();
        names.push_back("all");
        return names;
      }()));
  verify->add_option("--seed", verify_seed, "Random seed");
  verify->add_flag("--corrupt-cg", corrupt_cg)->group("");
  add_common(verify, verify_opts, "Factor applied to every pass threshold (default 1)");

  // index
  Common index_opts;
  std::vector<std::string> index_images;
  std::vector<std::string> index_builtin;
  int index_resolution = 16, index_bandlimit = 6, index_size = 64;
  auto* index_cmd = app.add_subcommand("index", "Build a glyph index from built-in glyphs or PGM images");
  index_cmd->add_option("--image", index_images, "label=path.pgm, repeatable");
  index_cmd->add_option("--glyph", index_builtin, "Built-in glyph label, repeatable (default: the demo set)");
  index_cmd->add_option("-B,--resolution", index_resolution, "Sphere grid resolution")->check(CLI::Range(2, 1024));
  index_cmd->add_option("-L,--bandlimit", index_bandlimit, "Descriptor bandlimit")->check(CLI::Range(0, 64));
  index_cmd->add_option("--size", index_size, "Pixel size of rendered built-in glyphs")->check(CLI::Range(8, 4096));
  add_common(index_cmd, index_opts, "Unused; accepted for uniformity");

  // random
  Common random_opts;
  std::string random_group = "SU2";
  int random_bandlimit = 4;
  std::uint64_t random_seed = 1;
  bool random_real = false, random_nonsingular = false;
  auto* random_cmd = app.add_subcommand("random", "Seeded random bandlimited coefficients");
  random_cmd->add_option("--group", random_group, "SU2 or SO3")->check(CLI::IsMember({"SU2", "SO3"}));
  random_cmd->add_option("-L,--bandlimit", random_bandlimit, "Bandlimit")->check(CLI::Range(0, 64));
  random_cmd->add_option("--seed", random_seed, "Random seed");
  random_cmd->add_flag("--real", random_real, "Coefficients of a real-valued function");
  random_cmd->add_flag("--nonsingular", random_nonsingular, "Redraw until every F(l) is well conditioned");
  add_common(random_cmd, random_opts, "Unused; accepted for uniformity");

  // glyphs
  std::string glyph_dir;
  std::vector<std::string> glyph_list;
  int glyph_size = 64;
  double alpha = 0.0, tx = 0.0, ty = 0.0;
  std::optional<double> glyph_tolerance;
  auto* glyphs = app.add_subcommand("glyphs", "Write built-in glyphs as PGM images, optionally moved");
  glyphs->add_option("-o,--output", glyph_dir, "Output directory")->required();
  glyphs->add_option("--glyph", glyph_list, "Label, repeatable (default: all)");
  glyphs->add_option("--size", glyph_size, "Pixel size")->check(CLI::Range(8, 4096));
  glyphs->add_option("--alpha", alpha, "In-plane rotation (radians)");
  glyphs->add_option("--tx", tx, "Translation x");
  glyphs->add_option("--ty", ty, "Translation y");
  glyphs->add_option("--tolerance", glyph_tolerance, "Unused; accepted for uniformity");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*transform) {
      const SampledFunction f = load_samples(transform_input);
      const int L = transform_bandlimit >= 0 ? transform_bandlimit : f.quadrature->bandlimit();
      const ForwardTransform r = fourier_forward_report(f, L);
      if (!r.warning.empty()) warn(r.warning);
      const SampledFunction back = fourier_inverse(r.coefficients, f.quadrature);
      double diff = 0.0, scale = 0.0;
      for (std::size_t i = 0; i < f.values.size(); ++i) {
        diff = std::max(diff, std::abs(f.values[i] - back.values[i]));
        scale = std::max(scale, std::abs(f.values[i]));
      }
      const double residual = diff / std::max(scale, 1e-300);
      if (residual > transform_opts.tol(1e-9))
        warn("samples are not bandlimited at L = " + std::to_string(L) + " (relative round-trip residual " +
             std::to_string(residual) + ")");
      emit(transform_opts.output, to_json_text(r.coefficients));
      return kOk;
    }

    if (*inverse) {
      const CoefficientSet F = load_coefficients(inverse_input);
      const int M = inverse_rule >= 0 ? inverse_rule : F.bandlimit;
      const SampledFunction f = fourier_inverse(F, std::make_shared<const QuadratureRule>(M, F.group));
      const ForwardTransform r = fourier_forward_report(f, F.bandlimit);
      const double residual = max_relative_difference(F, r.coefficients);
      if (residual > inverse_opts.tol(1e-9))
        warn("sampling rule too coarse for L = " + std::to_string(F.bandlimit) + " (relative residual " +
             std::to_string(residual) + ")");
      emit(inverse_opts.output, to_json_text(f));
      return kOk;
    }

    if (*bispectrum) {
      const CoefficientSet F = load_coefficients(bispectrum_input);
      const BispectrumDescriptor d = build_descriptor(F);
      double scale = 0.0;
      for (const CMatrix& A : d.entries) scale = std::max(scale, A.norm());
      if (!(std::abs(d.at(0, 0)(0, 0)) > bispectrum_opts.tol(1e-14) * scale))
        warn("A(0,0) vanishes; this descriptor cannot be inverted");
      emit(bispectrum_opts.output, to_json_text(d));
      return kOk;
    }

    if (*reconstruct_cmd) {
      BispectrumDescriptor d = load_descriptor(reconstruct_input);
      if (!reconstruct_group.empty() && parse_group_tag(reconstruct_group) != d.group)
        throw PreconditionError("descriptor is for " + std::string(to_string(d.group)) + ", not " + reconstruct_group);
      if (det_f1) {
        if (d.group != GroupTag::SO3) throw PreconditionError("--det-f1 applies to SO3 descriptors only");
        d.side_info_det_f1 = *det_f1;
      }
      std::optional<CoefficientSet> truth;
      if (!reconstruct_truth.empty()) truth = load_coefficients(reconstruct_truth);
      const ReconstructionReport r = reconstruct(d, truth ? &*truth : nullptr);
      emit(reconstruct_opts.output, to_json_text(r.recovered));
      std::cerr << "descriptor residual: " << r.descriptor_residual << "\n";
      if (r.witness) {
        const Eigen::Quaterniond q = r.witness->x.covering_quaternion();
        std::cerr << "aligning element (w, x, y, z): " << q.w() << " " << q.x() << " " << q.y() << " " << q.z()
                  << "\nalignment residual: " << r.witness->max_residual() << "\n";
      }
      const double tol = reconstruct_opts.tol(1e-7);
      if (!(r.descriptor_residual <= tol)) {
        std::cerr << "reconstruction does not reproduce the descriptor within " << tol << "\n";
        return kVerificationFailed;
      }
      return kOk;
    }

    if (*lift) {
      const Image img = read_pgm(lift_input);
      if (!(*std::max_element(img.pixels.begin(), img.pixels.end()) > lift_opts.tol(1e-12))) warn("image is blank");
      const SphereFunction s = lift_image(img, lift_resolution);
      emit(lift_opts.output, to_json_text(s));
      if (lift_bandlimit >= 0) {
        const CoefficientSet F = sphere_lift(s, lift_bandlimit);
        if (lift_coefficients.empty())
          throw PreconditionError("--bandlimit needs --coefficients for the coefficient file");
        save(lift_coefficients, F);
      }
      return kOk;
    }

    if (*match_cmd) {
      const GlyphIndex index = load_glyph_index(match_index);
      index.validate();
      const std::vector<MatchEntry> ranked = has_pgm_extension(match_query)
                                                 ? match(read_pgm(match_query), index)
                                                 : match(load_descriptor(match_query), index);
      const std::size_t n = match_top > 0 ? std::min<std::size_t>(match_top, ranked.size()) : ranked.size();
      const double exact = match_opts.tol(1e-12);
      nlohmann::json results = nlohmann::json::array();
      for (std::size_t i = 0; i < n; ++i)
        results.push_back({{"rank", i + 1},
                           {"label", ranked[i].label},
                           {"distance", ranked[i].distance},
                           {"exact", ranked[i].distance <= exact}});
      const nlohmann::json doc = {{"format_version", kFormatVersion}, {"kind", "match_result"},
                                  {"query", match_query}, {"results", results}};
      if (match_opts.output.empty()) {
        for (std::size_t i = 0; i < n; ++i)
          std::printf("%3zu  %-12s %.6e%s\n", i + 1, ranked[i].label.c_str(), ranked[i].distance,
                      ranked[i].distance <= exact ? "  exact" : "");
      } else {
        write_text(match_opts.output, doc.dump(1) + "\n");
      }
      return kOk;
    }

    if (*verify) {
      VerifyOptions o;
      if (!verify_suites.empty()) o.suites = verify_suites;
      o.seed = verify_seed;
      o.tolerance_scale = verify_opts.tol(1.0);
      o.corrupt_cg = corrupt_cg;
      const VerifyReport report = run_verify(o);
      for (const SuiteResult& s : report.suites) {
        std::fprintf(stderr, "%-16s %s  (%.2f s)\n", s.name.c_str(), s.passed() ? "pass" : "FAIL", s.seconds);
        for (const CheckResult& c : s.checks)
          if (!c.passed)
            std::fprintf(stderr, "    %s: %.3e (needs %s %.3e) %s\n", c.name.c_str(), c.measured,
                         c.expect_above ? ">" : "<=", c.threshold, c.detail.c_str());
      }
      emit(verify_opts.output, verify_report_json(report));
      return report.passed() ? kOk : kVerificationFailed;
    }

    if (*index_cmd) {
      GlyphIndex index{index_resolution, index_bandlimit, {}};
      for (const std::string& spec : index_images) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size())
          throw PreconditionError("--image expects label=path.pgm, got \"" + spec + "\"");
        const std::string label = spec.substr(0, eq), path = spec.substr(eq + 1);
        index.add(label, read_pgm(path), path);
      }
      if (index_builtin.empty() && index_images.empty()) index_builtin = demo_glyph_labels();
      for (const std::string& label : index_builtin)
        index.add(label, render_glyph(label, index_size), "synthetic:" + label);
      emit(index_opts.output, to_json_text(index));
      return kOk;
    }

    if (*random_cmd) {
      RandomCoefficientOptions o;
      o.require_real = random_real;
      o.require_nonsingular = random_nonsingular;
      emit(random_opts.output,
           to_json_text(random_bandlimited(random_bandlimit, parse_group_tag(random_group), o, random_seed)));
      return kOk;
    }

    if (*glyphs) {
      const PlanarMotion m{alpha, tx, ty};
      m.validate();
      fs::create_directories(glyph_dir);
      if (glyph_list.empty()) glyph_list = glyph_labels();
      for (const std::string& label : glyph_list) {
        const fs::path path = fs::path(glyph_dir) / (label + ".pgm");
        write_pgm(path, apply_planar_motion(render_glyph(label, glyph_size), m));
        std::cout << path.string() << "\n";
      }
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}
