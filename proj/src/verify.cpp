#include "bispec/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>

#include "bispec/clebsch_gordan.hpp"
#include "bispec/io.hpp"
#include "bispec/projection.hpp"
#include "bispec/quadrature.hpp"
#include "bispec/reconstruct.hpp"
#include "bispec/wigner.hpp"
#include "json.hpp"

namespace bispec {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr GroupTag kGroups[] = {GroupTag::SU2, GroupTag::SO3};

class Suite {
 public:
  Suite(SuiteResult& out, double scale) : out_(out), scale_(scale) {}

  void check(const std::string& name, double measured, double threshold, const std::string& detail = "") {
    add(name, measured, threshold * scale_, false, detail);
  }
  /// Negative control: passes when the measured value exceeds the threshold.
  void control(const std::string& name, double measured, double threshold, const std::string& detail = "") {
    add(name, measured, threshold, true, detail);
  }

 private:
  void add(const std::string& name, double measured, double threshold, bool above, const std::string& detail) {
    const bool ok = above ? measured > threshold : measured <= threshold;
    out_.checks.push_back({out_.name, name, measured, threshold, above, ok, detail});
  }

  SuiteResult& out_;
  double scale_;
};

std::string tag_name(GroupTag tag) { return std::string(to_string(tag)); }

double rel(const CMatrix& a, const CMatrix& b) {
  const double scale = std::max({a.norm(), b.norm(), 1e-300});
  return (a - b).norm() / scale;
}

RandomCoefficientOptions real_nonsingular() {
  RandomCoefficientOptions o;
  o.require_real = true;
  o.require_nonsingular = true;
  return o;
}

void group_suite(Suite& s, std::mt19937_64& rng) {
  for (GroupTag tag : kGroups) {
    const GroupElement e = GroupElement::identity(tag);
    double axioms = 0.0;
    for (int t = 0; t < 100; ++t) {
      const GroupElement a = random_element(tag, rng), b = random_element(tag, rng), c = random_element(tag, rng);
      axioms = std::max({axioms, group_distance((a * b) * c, a * (b * c)), group_distance(a * a.inverse(), e),
                         group_distance(e * a, a)});
    }
    s.check(tag_name(tag) + " associativity, identity, inverse", axioms, 1e-12);
  }
  double covering = 0.0;
  for (int t = 0; t < 100; ++t) {
    const GroupElement a = random_element(GroupTag::SU2, rng), b = random_element(GroupTag::SU2, rng);
    covering = std::max(covering, ((a * b).rotation_matrix() - a.rotation_matrix() * b.rotation_matrix()).norm());
  }
  s.check("SU2 -> SO3 covering is a homomorphism", covering, 1e-12);
}

std::vector<int> expected_indices(int p, int q, GroupTag tag) {
  std::vector<int> out;
  const int step = tag == GroupTag::SU2 ? 2 : 1;
  for (int a = p + q; a >= std::abs(p - q); a -= step) out.push_back(a);
  return out;
}

void cg_suite(Suite& s, std::mt19937_64& rng) {
  for (GroupTag tag : kGroups) {
    const int pmax = tag == GroupTag::SU2 ? 6 : 4;
    std::vector<GroupElement> elements;
    for (int t = 0; t < 100; ++t) elements.push_back(random_element(tag, rng));
    std::vector<std::vector<CMatrix>> D;
    for (const GroupElement& g : elements) D.push_back(wigner_all(2 * pmax, g));

    double residual = 0.0, unitarity = 0.0;
    int index_mismatches = 0;
    for (int p = 0; p <= pmax; ++p)
      for (int q = 0; q <= pmax; ++q) {
        const CGDecomposition& cg = clebsch_gordan({p, tag}, {q, tag});
        if (cg.indices != expected_indices(p, q, tag)) ++index_mismatches;
        const int n = static_cast<int>(cg.C.rows());
        unitarity = std::max(unitarity, (cg.C.adjoint() * cg.C - CMatrix::Identity(n, n)).norm());
        for (const auto& Dg : D) {
          std::vector<CMatrix> blocks;
          for (int a : cg.indices) blocks.push_back(Dg[a]);
          residual = std::max(residual, (kron(Dg[p], Dg[q]) - cg.C * direct_sum(blocks) * cg.C.adjoint()).norm());
        }
      }
    const std::string range = "p, q <= " + std::to_string(pmax);
    s.check(tag_name(tag) + " index lists", index_mismatches, 0.0, range);
    s.check(tag_name(tag) + " C unitary", unitarity, 1e-10, range);
    s.check(tag_name(tag) + " intertwiner residual", residual, 1e-10, range + ", 100 elements");
  }
}

void harmonic_suite(Suite& s) {
  for (GroupTag tag : kGroups) {
    double coeff = 0.0, samples = 0.0;
    for (int seed = 0; seed < 5; ++seed) {
      const CoefficientSet F = random_bandlimited(4, tag, {}, 1000 + seed);
      const SampledFunction f = fourier_inverse(F);
      const CoefficientSet G = fourier_forward(f, 4);
      coeff = std::max(coeff, max_relative_difference(F, G));
      const SampledFunction h = fourier_inverse(G, f.quadrature);
      double scale = 0.0, diff = 0.0;
      for (std::size_t i = 0; i < f.values.size(); ++i) {
        scale = std::max(scale, std::abs(f.values[i]));
        diff = std::max(diff, std::abs(f.values[i] - h.values[i]));
      }
      samples = std::max(samples, diff / scale);
    }
    s.check(tag_name(tag) + " forward(inverse(F)) = F", coeff, 1e-10, "L = 4, relative");
    s.check(tag_name(tag) + " inverse(forward(f)) = f", samples, 1e-9, "L = 4, relative to max |f|");
  }
}

void schur_suite(Suite& s) {
  const int L = 4;
  for (GroupTag tag : kGroups) {
    const QuadratureRule rule = haar_quadrature(L, tag);
    int n = 0;
    for (int ell = 0; ell <= L; ++ell) n += irrep_dim(tag, ell) * irrep_dim(tag, ell);
    CMatrix gram = CMatrix::Zero(n, n);
    CVector v(n);
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const std::vector<CMatrix> D = wigner_all(L, rule.nodes()[i]);
      int k = 0;
      for (const CMatrix& M : D)
        for (Eigen::Index a = 0; a < M.size(); ++a) v(k++) = M(a);
      gram.noalias() += rule.weights()[i] * v * v.adjoint();
    }
    CVector expected(n);
    int k = 0;
    for (int ell = 0; ell <= L; ++ell) {
      const int d = irrep_dim(tag, ell);
      for (int a = 0; a < d * d; ++a) expected(k++) = 1.0 / d;
    }
    const double err = (gram - CMatrix(expected.asDiagonal())).cwiseAbs().maxCoeff();
    s.check(tag_name(tag) + " integral of D_ij conj(D_kl) = delta / dim", err, 1e-10, "all indices <= 4");
  }
}

void projection_suite(Suite& s, std::mt19937_64& rng) {
  for (GroupTag tag : kGroups) {
    double algebra = 0.0;
    int rank_errors = 0;
    for (int ell = 0; ell <= 8; ++ell) {
      const SubgroupProjection p = subgroup_projection({ell, tag});
      algebra = std::max({algebra, (p.P * p.P - p.P).norm(), (p.P.adjoint() - p.P).norm()});
      const int expected = (tag == GroupTag::SO3 || ell % 2 == 0) ? 1 : 0;
      const Eigen::JacobiSVD<CMatrix> svd(p.P);
      int numeric_rank = 0;
      for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) numeric_rank += svd.singularValues()(i) > 0.5;
      if (p.rank != expected || numeric_rank != expected) ++rank_errors;
    }
    s.check(tag_name(tag) + " P idempotent and Hermitian", algebra, 1e-11, "ell <= 8");
    s.check(tag_name(tag) + " rank P", rank_errors, 0.0, tag == GroupTag::SO3 ? "rank 1 for all ell <= 8" : "1 for integer spin, 0 otherwise");

    double tensor = 0.0;
    for (int a = 0; a <= 4; ++a)
      for (int b = 0; b <= 4; ++b) tensor = std::max(tensor, projection_tensor_residual({a, tag}, {b, tag}));
    s.check(tag_name(tag) + " projection tensor identity", tensor, 1e-10, "sigma, delta <= 4");

    double invariance = 0.0;
    for (int t = 0; t < 20; ++t) {
      const GroupElement g = random_element(tag, rng);
      const GroupElement h = rotation_z(std::uniform_real_distribution<double>(0, 4 * kPi)(rng), tag);
      const std::vector<CMatrix> Dg = wigner_all(6, g), Dhg = wigner_all(6, h * g);
      for (int ell = 0; ell <= 6; ++ell) {
        const CMatrix& P = subgroup_projection({ell, tag}).P;
        invariance = std::max(invariance, (P * Dhg[ell] - P * Dg[ell]).norm());
      }
    }
    s.check(tag_name(tag) + " rows of P D are left H-invariant", invariance, 1e-10, "20 elements, ell <= 6");
  }
}

void coset_suite(Suite& s, std::mt19937_64& rng) {
  for (GroupTag tag : kGroups) {
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) worst = std::max(worst, verify_coset_homomorphism(random_element(tag, rng), 3).max_residual());
    s.check(tag_name(tag) + " coset homomorphism conditions", worst, 1e-10, "20 cosets, L = 3");

    auto omega = coset_evaluation(random_element(tag, rng), 6);
    for (CMatrix& w : omega) w *= 1.1;
    s.control(tag_name(tag) + " scaled functional is rejected", coset_homomorphism_residual(omega, tag).max_residual(),
              1e-3);
  }
}

void bispectrum_suite(Suite& s, std::mt19937_64& rng) {
  for (GroupTag tag : kGroups) {
    double entries = 0.0, side = 0.0;
    for (int t = 0; t < 20; ++t) {
      const CoefficientSet F = random_bandlimited(4, tag, {}, 2000 + t);
      const GroupElement x = random_element(tag, rng);
      const BispectrumDescriptor a = build_descriptor(F), b = build_descriptor(translate(F, x));
      for (std::size_t i = 0; i < a.entries.size(); ++i) entries = std::max(entries, rel(a.entries[i], b.entries[i]));
      if (tag == GroupTag::SO3) side = std::max(side, std::abs(*a.side_info_det_f1 - *b.side_info_det_f1));
    }
    s.check(tag_name(tag) + " descriptor translation invariance", entries, 1e-9, "20 pairs, L = 4, per entry relative");
    if (tag == GroupTag::SO3) s.check("SO3 det F(1) invariance", side, 1e-10, "20 pairs");
  }
}

void oracle_suite(Suite& s) {
  for (GroupTag tag : kGroups) {
    double worst = 0.0;
    for (int t = 0; t < 3; ++t) {
      const CoefficientSet F = random_bandlimited(2, tag, {}, 3000 + t);
      const TripleCorrelationGrid grid = triple_correlation_grid(F);
      for (int p = 0; p <= 2; ++p)
        for (int q = 0; q <= 2; ++q) worst = std::max(worst, rel(bispectrum_via_oracle(grid, p, q), bispectrum_matrix(F, p, q)));
    }
    s.check(tag_name(tag) + " matrix formula = triple-correlation transform", worst, 1e-6, "3 functions, L = 2");
  }
}

void reconstruct_suite(Suite& s, GroupTag tag) {
  double alignment = 0.0, descriptor = 0.0;
  int failures = 0, negative = 0;
  std::string first_error;
  for (int t = 0; t < 20; ++t) {
    CoefficientSet F = random_bandlimited(4, tag, real_nonsingular(), 4000 + 100 * static_cast<int>(tag) + t);
    // Negating F(1) keeps the function real and flips the sign of det F(1).
    if (tag == GroupTag::SO3 && t % 2 == 1) F[1] = -F[1];
    const BispectrumDescriptor d = build_descriptor(F);
    if (d.side_info_det_f1 && *d.side_info_det_f1 < 0) ++negative;
    try {
      const ReconstructionReport r = reconstruct(d, &F);
      alignment = std::max(alignment, r.witness->max_residual());
      descriptor = std::max(descriptor, r.descriptor_residual);
    } catch (const Error& e) {
      ++failures;
      if (first_error.empty()) first_error = e.what();
    }
  }
  s.check(tag_name(tag) + " reconstructions without error", failures, 0.0, first_error);
  s.check(tag_name(tag) + " alignment residual", alignment, 1e-7, "20 functions, L = 4");
  s.check(tag_name(tag) + " rebuilt descriptor", descriptor, 1e-7, "relative");
  if (tag == GroupTag::SO3) s.control("SO3 negative det F(1) cases", negative, 0.0, "signed square root branch");
}

void reality_suite(Suite& s) {
  RandomCoefficientOptions real;
  real.require_real = true;
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const CoefficientSet F = random_bandlimited(2, GroupTag::SU2, real, 5000 + t);
    worst = std::max(worst, -F[1].determinant().real());
  }
  s.check("SU2 -det F(1) for real functions", worst, 1e-12, "100 functions");
}

void closure_suite(Suite& s) {
  const SupportClosureResult even = support_closure_check({0, 2, 4}, GroupTag::SU2, 4);
  s.check("SU2 {0, 2, 4} closed", even.closed ? 0.0 : 1.0, 0.0);
  const SupportClosureResult odd = support_closure_check({0, 1}, GroupTag::SU2, 4);
  const bool witness = !odd.closed && odd.witness && odd.witness->p == 1 && odd.witness->q == 1;
  s.check("SU2 {0, 1} not closed with witness (1, 1)", witness ? 0.0 : 1.0, 0.0,
          odd.witness ? "missing " + std::to_string(odd.witness->missing) : "no witness");
}

void sphere_suite(Suite& s, std::mt19937_64& rng) {
  const int L = 4;
  const CoefficientSet S = random_sphere_coefficients(L, 6000);
  std::vector<GroupElement> rotations;
  for (int t = 0; t < 4; ++t) rotations.push_back(random_element(GroupTag::SO3, rng));
  rotations.push_back(rotation_z(0.7, GroupTag::SO3));
  rotations.push_back(rotation_x(kPi, GroupTag::SO3));
  double descriptor = 0.0, residual = 0.0;
  int disagreements = 0;
  for (const GroupElement& x0 : rotations) {
    const CoefficientSet rotated = sphere_lift(sample_sphere(S, L + 1, x0), L);
    descriptor = std::max(descriptor, descriptor_relative_difference(build_descriptor(S), build_descriptor(rotated)));
    const AlignmentWitness w = find_sphere_alignment(S, rotated);
    residual = std::max(residual, w.max_residual());
    const Eigen::Vector3d z = x0.rotation_matrix() * Eigen::Vector3d::UnitZ();
    const bool definition = std::abs(std::abs(z.z()) - 1.0) < 1e-12;
    if (check_sphere_witness(w.x).in_normalizer != definition) ++disagreements;
  }
  s.check("rotated sphere lifts share a descriptor", descriptor, 1e-8);
  s.check("sphere alignment residual", residual, 1e-8);
  s.check("normalizer membership of the witness", disagreements, 0.0, "against x e_z = +-e_z");
}

void matching_suite(Suite& s, std::mt19937_64& rng) {
  const int B = 16, L = 6;
  GlyphIndex index{B, L, {}};
  for (const std::string& l : demo_glyph_labels()) index.add(l, render_glyph(l, 64), "synthetic:" + l);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int wrong = 0, total = 0;
  double max_same = 0.0, min_cross = std::numeric_limits<double>::infinity();
  for (const std::string& l : demo_glyph_labels()) {
    for (int t = 0; t < 10; ++t) {
      const double alpha = 2 * kPi * u(rng), r = 0.15 * std::sqrt(u(rng)), dir = 2 * kPi * u(rng);
      const Image moved = apply_planar_motion(render_glyph(l, 64), {alpha, r * std::cos(dir), r * std::sin(dir)});
      const std::vector<MatchEntry> ranked = match(moved, index);
      ++total;
      if (ranked.front().label != l) ++wrong;
      for (const MatchEntry& e : ranked) {
        if (e.label == l)
          max_same = std::max(max_same, e.distance);
        else
          min_cross = std::min(min_cross, e.distance);
      }
    }
  }
  s.check("rank-1 errors", wrong, 0.0, std::to_string(total - wrong) + "/" + std::to_string(total) + " correct");
  s.check("max same-glyph / min cross-glyph distance", max_same / min_cross, 0.5,
          "B = 16, L = 6, |T| <= 0.15");
}

int count_differences(const CoefficientSet& a, const CoefficientSet& b) {
  int n = 0;
  for (int ell = 0; ell <= a.bandlimit; ++ell)
    for (Eigen::Index i = 0; i < a[ell].size(); ++i) n += a[ell](i) != b[ell](i);
  return n;
}

void io_suite(Suite& s) {
  int mismatches = 0;
  for (GroupTag tag : kGroups) {
    const CoefficientSet F = random_bandlimited(4, tag, {}, 7000 + static_cast<int>(tag));
    mismatches += count_differences(F, coefficients_from_json(to_json_text(F)));
    const BispectrumDescriptor d = build_descriptor(F);
    const BispectrumDescriptor e = descriptor_from_json(to_json_text(d));
    for (std::size_t i = 0; i < d.entries.size(); ++i)
      for (Eigen::Index k = 0; k < d.entries[i].size(); ++k) mismatches += d.entries[i](k) != e.entries[i](k);
    mismatches += d.side_info_det_f1 != e.side_info_det_f1;
    const SampledFunction f = fourier_inverse(F);
    mismatches += samples_from_json(to_json_text(f)).values != f.values;
  }
  const SphereFunction sp = sample_sphere(random_sphere_coefficients(3, 7100), 8);
  mismatches += sphere_from_json(to_json_text(sp)).values != sp.values;
  s.check("bit-exact round trips", mismatches, 0.0, "coefficients, descriptors, samples, sphere");

  int rejected = 0;
  std::string text = to_json_text(CoefficientSet(GroupTag::SU2, 1));
  text.replace(text.find("\"format_version\": 1"), 19, "\"format_version\": 9");
  try {
    coefficients_from_json(text);
  } catch (const VersionError&) {
    ++rejected;
  }
  try {
    coefficients_from_json("{\"format_version\": 1,");
  } catch (const FormatError& e) {
    rejected += e.position().rfind("line ", 0) == 0;
  }
  s.check("malformed and wrong-version files rejected", 2 - rejected, 0.0);
}

using SuiteFn = std::function<void(Suite&, std::mt19937_64&)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"group", group_suite},
      {"cg", cg_suite},
      {"harmonic", [](Suite& s, std::mt19937_64&) { harmonic_suite(s); }},
      {"schur", [](Suite& s, std::mt19937_64&) { schur_suite(s); }},
      {"projection", projection_suite},
      {"coset", coset_suite},
      {"bispectrum", bispectrum_suite},
      {"oracle", [](Suite& s, std::mt19937_64&) { oracle_suite(s); }},
      {"reconstruct-su2", [](Suite& s, std::mt19937_64&) { reconstruct_suite(s, GroupTag::SU2); }},
      {"reconstruct-so3", [](Suite& s, std::mt19937_64&) { reconstruct_suite(s, GroupTag::SO3); }},
      {"reality", [](Suite& s, std::mt19937_64&) { reality_suite(s); }},
      {"closure", [](Suite& s, std::mt19937_64&) { closure_suite(s); }},
      {"sphere", sphere_suite},
      {"matching", matching_suite},
      {"io", [](Suite& s, std::mt19937_64&) { io_suite(s); }},
  };
  return r;
}

struct CorruptionGuard {
  explicit CorruptionGuard(bool on) : on(on) {
    if (on) testing::set_cg_corruption(true);
  }
  ~CorruptionGuard() {
    if (on) testing::set_cg_corruption(false);
  }
  bool on;
};

}  // namespace

bool SuiteResult::passed() const {
  for (const CheckResult& c : checks)
    if (!c.passed) return false;
  return true;
}

bool VerifyReport::passed() const {
  for (const SuiteResult& s : suites)
    if (!s.passed()) return false;
  return true;
}

const SuiteResult* VerifyReport::find(const std::string& suite) const {
  for (const SuiteResult& s : suites)
    if (s.name == suite) return &s;
  return nullptr;
}

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : registry()) n.push_back(name);
    return n;
  }();
  return names;
}

VerifyReport run_verify(const VerifyOptions& options) {
  std::vector<std::string> selected;
  for (const std::string& name : options.suites) {
    if (name == "all") {
      selected = verify_suite_names();
      break;
    }
    if (std::find(verify_suite_names().begin(), verify_suite_names().end(), name) == verify_suite_names().end())
      throw PreconditionError("unknown verification suite \"" + name + "\"");
    if (std::find(selected.begin(), selected.end(), name) == selected.end()) selected.push_back(name);
  }
  if (!(options.tolerance_scale > 0.0)) throw DomainError("tolerance scale must be positive");

  VerifyReport report;
  report.seed = options.seed;
  report.corrupted_cg = options.corrupt_cg;
  const CorruptionGuard guard(options.corrupt_cg);
  for (const auto& [name, fn] : registry()) {
    if (std::find(selected.begin(), selected.end(), name) == selected.end()) continue;
    SuiteResult result;
    result.name = name;
    Suite suite(result, options.tolerance_scale);
    // Each suite draws from its own stream so that selecting suites does not
    // change the elements any one of them sees.
    std::uint32_t salt = 2166136261u;
    for (char c : name) salt = (salt ^ static_cast<unsigned char>(c)) * 16777619u;
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32), salt};
    std::mt19937_64 rng(seq);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fn(suite, rng);
    } catch (const std::exception& e) {
      result.checks.push_back({name, "suite ran to completion", 1.0, 0.0, false, false, e.what()});
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report.suites.push_back(std::move(result));
  }
  return report;
}

std::string verify_report_json(const VerifyReport& report) {
  using nlohmann::json;
  json suites = json::array();
  for (const SuiteResult& s : report.suites) {
    json checks = json::array();
    for (const CheckResult& c : s.checks) {
      json j = {{"name", c.name}, {"measured", c.measured}, {"threshold", c.threshold},
                {"comparison", c.expect_above ? ">" : "<="}, {"passed", c.passed}};
      if (!c.detail.empty()) j["detail"] = c.detail;
      checks.push_back(std::move(j));
    }
    suites.push_back({{"name", s.name}, {"passed", s.passed()}, {"seconds", s.seconds}, {"checks", std::move(checks)}});
  }
  json doc = {{"format_version", kFormatVersion}, {"kind", "verify_report"}, {"seed", report.seed},
              {"corrupted_cg", report.corrupted_cg}, {"passed", report.passed()}, {"suites", std::move(suites)}};
  return doc.dump(2) + "\n";
}

}  // namespace bispec
