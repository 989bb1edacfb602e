#include <memory>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "bispec/bispectrum.hpp"
#include "bispec/glyph.hpp"
#include "bispec/harmonic.hpp"
#include "bispec/io.hpp"
#include "bispec/reconstruct.hpp"
#include "bispec/sphere.hpp"
#include "bispec/verify.hpp"

namespace py = pybind11;
using namespace bispec;

namespace {

using RowImage = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Image image_from_array(const RowImage& a) {
  Image img(static_cast<int>(a.cols()), static_cast<int>(a.rows()));
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) img.at(r, c) = a(r, c);
  return img;
}

RowImage image_to_array(const Image& img) {
  RowImage a(img.height, img.width);
  for (int r = 0; r < img.height; ++r)
    for (int c = 0; c < img.width; ++c) a(r, c) = img.at(r, c);
  return a;
}

}  // namespace

PYBIND11_MODULE(_bispec, m) {
  m.doc() = "Bispectrum invariants on SU(2) and SO(3)";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<TagMismatchError>(m, "TagMismatchError", error);
  py::register_exception<DomainError>(m, "DomainError", error);
  py::register_exception<PreconditionError>(m, "PreconditionError", error);
  py::register_exception<NotPsdError>(m, "NotPsdError", error);
  py::register_exception<SingularMatrixError>(m, "SingularMatrixError", error);
  py::register_exception<ZeroMeanError>(m, "ZeroMeanError", error);
  py::register_exception<AlignmentError>(m, "AlignmentError", error);
  auto format_error = py::register_exception<FormatError>(m, "FormatError", error);
  py::register_exception<VersionError>(m, "VersionError", format_error);

  py::enum_<GroupTag>(m, "GroupTag").value("SU2", GroupTag::SU2).value("SO3", GroupTag::SO3);

  py::class_<GroupElement>(m, "GroupElement")
      .def_static("identity", &GroupElement::identity)
      .def_static("from_euler", [](double a, double b, double g, GroupTag t) { return euler_element(a, b, g, t); },
                  py::arg("alpha"), py::arg("beta"), py::arg("gamma"), py::arg("group"))
      .def_static("from_rotation", &GroupElement::from_rotation)
      .def_property_readonly("group", &GroupElement::group)
      .def("rotation_matrix", &GroupElement::rotation_matrix)
      .def("su2_matrix", &GroupElement::su2_matrix)
      .def("covering_quaternion",
           [](const GroupElement& g) {
             const Eigen::Quaterniond q = g.covering_quaternion();
             return py::make_tuple(q.w(), q.x(), q.y(), q.z());
           })
      .def("euler_angles",
           [](const GroupElement& g) {
             const EulerAngles e = to_euler(g);
             return py::make_tuple(e.alpha, e.beta, e.gamma);
           })
      .def("inverse", &GroupElement::inverse)
      .def("__mul__", [](const GroupElement& a, const GroupElement& b) { return a * b; });
  m.def("group_distance", &group_distance);
  m.def(
      "random_element",
      [](GroupTag tag, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        return random_element(tag, rng);
      },
      py::arg("group"), py::arg("seed"));

  py::class_<CoefficientSet>(m, "CoefficientSet")
      .def(py::init<GroupTag, int>(), py::arg("group"), py::arg("bandlimit"))
      .def_readonly("group", &CoefficientSet::group)
      .def_readonly("bandlimit", &CoefficientSet::bandlimit)
      .def_readwrite("matrices", &CoefficientSet::matrices)
      .def("__getitem__", [](const CoefficientSet& F, int ell) { return F.matrices.at(ell); })
      .def("validate", &CoefficientSet::validate);
  m.def("max_difference", py::overload_cast<const CoefficientSet&, const CoefficientSet&>(&max_difference));

  py::class_<SampledFunction>(m, "SampledFunction")
      .def_property_readonly("group", &SampledFunction::group)
      .def_property_readonly("quadrature_bandlimit", [](const SampledFunction& f) { return f.quadrature->bandlimit(); })
      .def_property_readonly("euler_angles",
                             [](const SampledFunction& f) {
                               RMatrix a(f.quadrature->size(), 3);
                               for (std::size_t i = 0; i < f.quadrature->size(); ++i) {
                                 const EulerAngles& e = f.quadrature->angles()[i];
                                 a.row(i) << e.alpha, e.beta, e.gamma;
                               }
                               return a;
                             })
      .def_property_readonly("weights",
                             [](const SampledFunction& f) {
                               const auto w = f.quadrature->weights();
                               return std::vector<double>(w.begin(), w.end());
                             })
      .def_readwrite("values", &SampledFunction::values);

  m.def(
      "random_bandlimited",
      [](int L, GroupTag tag, std::uint64_t seed, bool real, bool nonsingular) {
        RandomCoefficientOptions o;
        o.require_real = real;
        o.require_nonsingular = nonsingular;
        return random_bandlimited(L, tag, o, seed);
      },
      py::arg("bandlimit"), py::arg("group"), py::arg("seed"), py::arg("real") = false,
      py::arg("nonsingular") = false);
  m.def(
      "fourier_inverse",
      [](const CoefficientSet& F, int quadrature_bandlimit) {
        if (quadrature_bandlimit < 0) return fourier_inverse(F);
        return fourier_inverse(F, std::make_shared<QuadratureRule>(quadrature_bandlimit, F.group));
      },
      py::arg("coefficients"), py::arg("quadrature_bandlimit") = -1);
  m.def("fourier_forward", &fourier_forward, py::arg("samples"), py::arg("bandlimit"));
  m.def("evaluate", &evaluate);
  m.def("translate", &translate);

  py::class_<BispectrumDescriptor>(m, "BispectrumDescriptor")
      .def_readonly("group", &BispectrumDescriptor::group)
      .def_readonly("bandlimit", &BispectrumDescriptor::bandlimit)
      .def_readonly("side_info_det_f1", &BispectrumDescriptor::side_info_det_f1)
      .def("at", [](const BispectrumDescriptor& d, int p, int q) { return d.at(p, q); });
  m.def("bispectrum_matrix", &bispectrum_matrix);
  m.def("build_descriptor", &build_descriptor);
  m.def("descriptor_distance", &descriptor_distance);
  m.def("descriptor_relative_difference", &descriptor_relative_difference);
  m.def("triple_correlation",
        py::overload_cast<const CoefficientSet&, const GroupElement&, const GroupElement&>(&triple_correlation));

  py::class_<SupportClosureResult>(m, "SupportClosureResult")
      .def_readonly("closed", &SupportClosureResult::closed)
      .def_property_readonly("witness", [](const SupportClosureResult& r) -> py::object {
        if (!r.witness) return py::none();
        return py::make_tuple(r.witness->p, r.witness->q);
      });
  m.def("support_closure_check", &support_closure_check, py::arg("support"), py::arg("group"), py::arg("bandlimit"));

  py::class_<AlignmentWitness>(m, "AlignmentWitness")
      .def_readonly("x", &AlignmentWitness::x)
      .def_readonly("per_ell_residuals", &AlignmentWitness::per_ell_residuals)
      .def("max_residual", &AlignmentWitness::max_residual);
  py::class_<ReconstructionReport>(m, "ReconstructionReport")
      .def_readonly("recovered", &ReconstructionReport::recovered)
      .def_readonly("witness", &ReconstructionReport::witness)
      .def_readonly("condition_numbers", &ReconstructionReport::condition_numbers)
      .def_readonly("descriptor_residual", &ReconstructionReport::descriptor_residual);
  m.def(
      "reconstruct",
      [](const BispectrumDescriptor& d, const std::optional<CoefficientSet>& truth) {
        return reconstruct(d, truth ? &*truth : nullptr);
      },
      py::arg("descriptor"), py::arg("truth") = py::none());
  m.def("find_alignment", &find_alignment);

  py::class_<SphereFunction>(m, "SphereFunction")
      .def(py::init<int>(), py::arg("resolution"))
      .def_readonly("resolution", &SphereFunction::resolution)
      .def_readwrite("values", &SphereFunction::values);
  m.def("sphere_lift", &sphere_lift, py::arg("sphere"), py::arg("bandlimit"));
  m.def("rotate_sphere", &rotate_sphere);

  py::class_<PlanarMotion>(m, "PlanarMotion")
      .def(py::init([](double alpha, double tx, double ty) { return PlanarMotion{alpha, tx, ty}; }),
           py::arg("alpha") = 0.0, py::arg("tx") = 0.0, py::arg("ty") = 0.0)
      .def_readwrite("alpha", &PlanarMotion::alpha)
      .def_readwrite("tx", &PlanarMotion::tx)
      .def_readwrite("ty", &PlanarMotion::ty);
  m.def("planar_motion_to_rotation", &planar_motion_to_rotation);
  m.def("apply_planar_motion", [](const RowImage& img, const PlanarMotion& mo) {
    return image_to_array(apply_planar_motion(image_from_array(img), mo));
  });
  m.def(
      "lift_image", [](const RowImage& img, int B) { return lift_image(image_from_array(img), B); }, py::arg("image"),
      py::arg("resolution"));
  m.def(
      "glyph_descriptor",
      [](const RowImage& img, int B, int L) { return glyph_descriptor(image_from_array(img), B, L); },
      py::arg("image"), py::arg("resolution"), py::arg("bandlimit"));
  m.def("glyph_labels", &glyph_labels);
  m.def("demo_glyph_labels", &demo_glyph_labels);
  m.def(
      "render_glyph", [](const std::string& label, int size) { return image_to_array(render_glyph(label, size)); },
      py::arg("label"), py::arg("size") = 64);

  py::class_<GlyphIndex>(m, "GlyphIndex")
      .def(py::init([](int B, int L) { return GlyphIndex{B, L, {}}; }), py::arg("resolution"), py::arg("bandlimit"))
      .def_readonly("resolution", &GlyphIndex::resolution)
      .def_readonly("bandlimit", &GlyphIndex::bandlimit)
      .def_property_readonly("labels",
                             [](const GlyphIndex& g) {
                               std::vector<std::string> out;
                               for (const GlyphRecord& r : g.records) out.push_back(r.label);
                               return out;
                             })
      .def(
          "add",
          [](GlyphIndex& g, const std::string& label, const RowImage& img, const std::string& source) {
            g.add(label, image_from_array(img), source);
          },
          py::arg("label"), py::arg("image"), py::arg("source") = "")
      .def("__len__", [](const GlyphIndex& g) { return g.records.size(); });
  m.def("match", [](const RowImage& img, const GlyphIndex& index) {
    std::vector<std::pair<std::string, double>> out;
    for (const MatchEntry& e : match(image_from_array(img), index)) out.emplace_back(e.label, e.distance);
    return out;
  });

  m.def("save_coefficients", py::overload_cast<const std::filesystem::path&, const CoefficientSet&>(&save));
  m.def("save_descriptor", py::overload_cast<const std::filesystem::path&, const BispectrumDescriptor&>(&save));
  m.def("save_sphere", py::overload_cast<const std::filesystem::path&, const SphereFunction&>(&save));
  m.def("save_glyph_index", py::overload_cast<const std::filesystem::path&, const GlyphIndex&>(&save));
  m.def("load_coefficients", &load_coefficients);
  m.def("load_descriptor", &load_descriptor);
  m.def("load_sphere", &load_sphere);
  m.def("load_glyph_index", &load_glyph_index);
  m.def("read_pgm", [](const std::filesystem::path& p) { return image_to_array(read_pgm(p)); });
  m.def("write_pgm", [](const std::filesystem::path& p, const RowImage& img) { write_pgm(p, image_from_array(img)); });

  m.def(
      "verify",
      [](const std::vector<std::string>& suites, std::uint64_t seed) {
        VerifyOptions o;
        o.suites = suites;
        o.seed = seed;
        const VerifyReport r = run_verify(o);
        return py::make_tuple(r.passed(), verify_report_json(r));
      },
      py::arg("suites") = std::vector<std::string>{"all"}, py::arg("seed") = 1);
  m.def("verify_suite_names", &verify_suite_names);
}
