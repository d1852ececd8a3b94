#include "mmo/experiments.hpp"
#include "mmo/worked_example.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace pybind11::detail {

// Exact transfer of GMP integers through decimal strings.
template <>
struct type_caster<mmo::BigInt> {
public:
    PYBIND11_TYPE_CASTER(mmo::BigInt, const_name("int"));

    bool load(handle src, bool) {
        if (!PyLong_Check(src.ptr())) return false;
        value = mmo::BigInt(py::str(src).cast<std::string>(), 10);
        return true;
    }

    static handle cast(const mmo::BigInt& v, return_value_policy, handle) {
        return PyLong_FromString(v.get_str().c_str(), nullptr, 10);
    }
};

template <>
struct type_caster<mmo::BigRat> {
public:
    PYBIND11_TYPE_CASTER(mmo::BigRat, const_name("Fraction"));

    bool load(handle src, bool) {
        if (!py::hasattr(src, "numerator") || !py::hasattr(src, "denominator")) return false;
        mmo::BigInt num(py::str(py::getattr(src, "numerator")).cast<std::string>(), 10);
        mmo::BigInt den(py::str(py::getattr(src, "denominator")).cast<std::string>(), 10);
        if (den == 0) return false;
        value = mmo::make_rat(num, den);
        return true;
    }

    static handle cast(const mmo::BigRat& v, return_value_policy, handle) {
        py::object fraction = py::module_::import("fractions").attr("Fraction");
        py::object num = py::reinterpret_steal<py::object>(
            PyLong_FromString(v.get_num().get_str().c_str(), nullptr, 10));
        py::object den = py::reinterpret_steal<py::object>(
            PyLong_FromString(v.get_den().get_str().c_str(), nullptr, 10));
        return fraction(num, den).release();
    }
};

}  // namespace pybind11::detail

namespace {

using namespace mmo;

std::vector<IntVec> mat_to_rows(const IntMatrix& m) {
    std::vector<IntVec> rows;
    rows.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
    return rows;
}

IntMatrix rows_to_mat(const std::vector<IntVec>& rows) {
    if (rows.empty()) return IntMatrix();
    IntMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size())
            throw std::invalid_argument("rows must have equal length");
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

PolyBasis basis_from_string(const std::string& s) {
    if (s == "monomial") return PolyBasis::monomial;
    if (s == "binomial") return PolyBasis::binomial;
    throw std::invalid_argument("basis must be 'monomial' or 'binomial'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact lattice solver for sums of two reduced polynomial evaluations";

    // scalars
    m.def("mod_reduce", &mod_reduce, py::arg("x"), py::arg("m"));
    m.def("floor_div", &floor_div, py::arg("x"), py::arg("m"));
    m.def("centered", &centered, py::arg("x"), py::arg("m"));
    m.def(
        "ext_gcd",
        [](const BigInt& p, const BigInt& q) {
            Bezout b = ext_gcd(p, q);
            return py::make_tuple(b.g, b.u, b.v);
        },
        py::arg("p"), py::arg("q"), "Returns (g, u, v) with u*p + v*q = g");
    m.def("binomial", &binomial, py::arg("x"), py::arg("k"));

    // polynomials
    py::class_<Poly>(m, "Poly")
        .def(py::init([](IntVec coeffs, const std::string& basis) {
                 return Poly(std::move(coeffs), basis_from_string(basis));
             }),
             py::arg("coeffs"), py::arg("basis") = "monomial")
        .def_readonly("coeffs", &Poly::coeffs)
        .def_property_readonly(
            "basis",
            [](const Poly& p) { return p.basis == PolyBasis::monomial ? "monomial" : "binomial"; })
        .def("degree", &Poly::degree)
        .def("__repr__", [](const Poly& p) {
            std::string s = "Poly([";
            for (std::size_t i = 0; i < p.coeffs.size(); ++i)
                s += (i ? ", " : "") + p.coeffs[i].get_str();
            return s + "], " + (p.basis == PolyBasis::monomial ? "monomial" : "binomial") + ")";
        });
    m.def("eval_poly", &eval, py::arg("poly"), py::arg("x"));
    m.def("eval_reduced", &eval_reduced, py::arg("poly"), py::arg("x"), py::arg("m"));
    m.def("mmo_eval", &mmo_eval, py::arg("f"), py::arg("g"), py::arg("p"), py::arg("q"),
          py::arg("x"));
    m.def("binomial_to_monomial_mod", &binomial_to_monomial_mod, py::arg("poly"), py::arg("m"));
    m.def("centered_coeffs", &centered_coeffs, py::arg("poly"), py::arg("m"));

    // instances
    py::class_<MmoParams>(m, "MmoParams")
        .def(py::init<>())
        .def_readwrite("alpha", &MmoParams::alpha)
        .def_readwrite("bits", &MmoParams::bits)
        .def_readwrite("K", &MmoParams::K)
        .def_readwrite("c", &MmoParams::c)
        .def_readwrite("affine", &MmoParams::affine)
        .def_readwrite("composite_moduli", &MmoParams::composite_moduli)
        .def_readwrite("points_from_zero", &MmoParams::points_from_zero)
        .def_readwrite("seed", &MmoParams::seed);

    py::class_<MmoInstance>(m, "MmoInstance")
        .def(py::init<>())
        .def_readwrite("p", &MmoInstance::p)
        .def_readwrite("q", &MmoInstance::q)
        .def_readwrite("f", &MmoInstance::f)
        .def_readwrite("g", &MmoInstance::g)
        .def_readwrite("affine", &MmoInstance::affine)
        .def_property_readonly("alpha", &MmoInstance::alpha);

    py::class_<Observation>(m, "Observation")
        .def_readonly("x", &Observation::x)
        .def_readonly("h", &Observation::h);

    py::class_<ObservationSet>(m, "ObservationSet")
        .def(py::init<>())
        .def_readwrite("p", &ObservationSet::p)
        .def_readwrite("q", &ObservationSet::q)
        .def_readwrite("alpha", &ObservationSet::alpha)
        .def_readwrite("affine", &ObservationSet::affine)
        .def_readonly("points", &ObservationSet::points)
        .def("add_point",
             [](ObservationSet& o, const BigInt& x, const BigInt& h) {
                 o.points.push_back({x, h});
             })
        .def("__len__", &ObservationSet::c);

    m.def("generate", &generate, py::arg("params"));
    m.def("observe", &observe, py::arg("instance"), py::arg("points"));
    m.def("save_instance", &save_instance);
    m.def("load_instance", &load_instance);
    m.def("save_observations", &save_observations);
    m.def("load_observations", &load_observations);

    // lattice diagnostics
    m.def(
        "vandermonde",
        [](const std::vector<BigInt>& points, unsigned alpha, bool affine) {
            return mat_to_rows(vandermonde(points, alpha, affine));
        },
        py::arg("points"), py::arg("alpha"), py::arg("affine") = false);
    m.def("volume_closed_form", &volume_closed_form, py::arg("p"), py::arg("q"), py::arg("alpha"),
          py::arg("c"));
    m.def(
        "minkowski_bound",
        [](const BigRat& vol, unsigned d) {
            RootBracket b = minkowski_bound(vol, d);
            return py::make_tuple(b.lo, b.hi, b.approx);
        },
        py::arg("vol"), py::arg("d"), "Returns (floor, ceil, approx) of vol^(1/d)");
    m.def("gaussian_uniqueness_predicate", &gaussian_uniqueness_predicate, py::arg("p"),
          py::arg("q"), py::arg("alpha"), py::arg("c"));
    m.def(
        "projected_volume",
        [](const std::vector<BigInt>& points, unsigned alpha, const BigInt& q, unsigned K) {
            ProjectedVolume v = projected_volume(points, alpha, q, K);
            py::dict d;
            d["vol_sq"] = py::cast(v.vol_sq);
            d["approx_log2"] = v.approx_log2;
            d["heuristic_c_minus_alpha"] = v.heuristic_c_minus_alpha;
            d["heuristic_c_minus_alpha_1"] = v.heuristic_c_minus_alpha_1;
            return d;
        },
        py::arg("points"), py::arg("alpha"), py::arg("q"), py::arg("K"));

    py::class_<LatticeSystem>(m, "LatticeSystem")
        .def_readonly("p", &LatticeSystem::p)
        .def_readonly("q", &LatticeSystem::q)
        .def_readonly("mu1", &LatticeSystem::mu1)
        .def_readonly("mu2", &LatticeSystem::mu2)
        .def_readonly("scale", &LatticeSystem::scale)
        .def_property_readonly("dim", &LatticeSystem::dim)
        .def_property_readonly(
            "basis_scaled_full",
            [](const LatticeSystem& s) { return mat_to_rows(s.basis_scaled_full); })
        .def_readonly("target_scaled_full", &LatticeSystem::target_scaled_full)
        .def_property_readonly(
            "basis_scaled_square",
            [](const LatticeSystem& s) { return mat_to_rows(s.basis_scaled_square); })
        .def_readonly("target_scaled_square", &LatticeSystem::target_scaled_square)
        .def_property_readonly("deleted_block", [](const LatticeSystem& s) {
            return s.deleted == DeletedBlock::third ? "third" : "fourth";
        });
    m.def("build_system", &build_system, py::arg("observations"));
    m.def("dump_system", &dump_system, py::arg("system"), py::arg("path"));

    // reduction
    py::class_<ReducedBasis>(m, "ReducedBasis")
        .def_property_readonly("basis", [](const ReducedBasis& rb) { return mat_to_rows(rb.basis); })
        .def_property_readonly("transform",
                               [](const ReducedBasis& rb) { return mat_to_rows(rb.transform); })
        .def_readonly("gs_norm_sq", &ReducedBasis::gs_norm_sq)
        .def_property_readonly("dim", &ReducedBasis::dim);
    m.def(
        "lll",
        [](const std::vector<IntVec>& rows, const BigRat& eps) { return lll(rows_to_mat(rows), eps); },
        py::arg("basis"), py::arg("eps") = BigRat(3, 4));

    py::class_<CvpResult>(m, "CvpResult")
        .def_readonly("coeffs", &CvpResult::coeffs)
        .def_readonly("lattice_vec", &CvpResult::lattice_vec)
        .def_readonly("residual", &CvpResult::residual)
        .def_readonly("residual_inf", &CvpResult::residual_inf)
        .def_readonly("residual_l2_sq", &CvpResult::residual_l2_sq)
        .def_readonly("nodes", &CvpResult::nodes)
        .def_property_readonly("complete", [](const CvpResult& r) {
            return r.status == CvpStatus::proved_within_budget;
        });
    m.def("babai_nearest_plane", &babai_nearest_plane, py::arg("rb"), py::arg("target"));
    m.def(
        "cvp_infinity_refine",
        [](const ReducedBasis& rb, const RatVec& target, const CvpResult& start,
           std::uint64_t budget, const BigInt& cap) {
            RefineOptions opts;
            opts.node_budget = budget;
            opts.coord_cap = cap;
            return cvp_infinity_refine(rb, target, start, opts);
        },
        py::arg("rb"), py::arg("target"), py::arg("start"), py::arg("budget") = 1'000'000,
        py::arg("cap") = BigInt(0));
    m.def(
        "shortest_vector_probe",
        [](const ReducedBasis& rb, std::size_t limit) {
            SvProbe p = shortest_vector_probe(rb, limit);
            return py::make_tuple(p.length, p.exact, p.witness);
        },
        py::arg("rb"), py::arg("exact_dim_limit") = 14);

    // solver
    py::class_<SolverOutcome>(m, "SolverOutcome")
        .def_readonly("f", &SolverOutcome::f)
        .def_readonly("g", &SolverOutcome::g)
        .def_readonly("match_mask", &SolverOutcome::match_mask)
        .def_readonly("full_match", &SolverOutcome::full_match)
        .def_readonly("residual_within_threshold", &SolverOutcome::residual_within_threshold)
        .def_property_readonly("truth_match",
                               [](const SolverOutcome& o) -> py::object {
                                   if (!o.truth_match) return py::none();
                                   return py::bool_(*o.truth_match);
                               })
        .def_property_readonly("uniqueness",
                               [](const SolverOutcome& o) { return to_string(o.uniqueness); })
        .def_readonly("residual_inf_scaled", &SolverOutcome::residual_inf_scaled)
        .def_readonly("refine_nodes", &SolverOutcome::refine_nodes)
        .def("to_json", &outcome_to_json);
    m.def(
        "solve",
        [](const ObservationSet& obs, std::uint64_t budget, bool uniqueness,
           std::size_t svp_dim_limit, const MmoInstance* truth) {
            SolveOptions opts;
            opts.refine_budget = budget;
            opts.check_uniqueness = uniqueness;
            opts.svp_exact_dim_limit = svp_dim_limit;
            return solve(obs, opts, truth);
        },
        py::arg("observations"), py::arg("budget") = 1'000'000, py::arg("uniqueness") = false,
        py::arg("svp_dim_limit") = 14, py::arg("truth") = nullptr);
    m.def(
        "uniqueness_check",
        [](const LatticeSystem& sys, std::size_t svp_dim_limit) {
            SolveOptions opts;
            opts.svp_exact_dim_limit = svp_dim_limit;
            return std::string(to_string(uniqueness_check(sys, opts)));
        },
        py::arg("system"), py::arg("svp_dim_limit") = 14);
    m.def(
        "interpolation_error",
        [](const MmoInstance& inst, const Poly& f_hat, const Poly& g_hat, const BigInt& range_end,
           const BigInt& stride) {
            ErrorScanSummary s = interpolation_error(inst, f_hat, g_hat, range_end, stride);
            py::dict d;
            d["total"] = s.total;
            d["zero"] = s.zero;
            d["zero_fraction"] = s.zero_fraction();
            d["distinct_errors"] = py::cast(s.distinct_errors);
            d["distinct_overflow"] = s.distinct_overflow;
            return d;
        },
        py::arg("instance"), py::arg("f_hat"), py::arg("g_hat"), py::arg("range_end"),
        py::arg("stride") = BigInt(1));
    m.def("expected_collisions_bruteforce", &expected_collisions_bruteforce, py::arg("p"),
          py::arg("q"), py::arg("alpha"), py::arg("points"));

    // built-in worked example
    m.def("worked_example_instance", &worked_example_instance,
          py::return_value_policy::reference);
    m.def("worked_example_observations", &worked_example_observations,
          py::return_value_policy::reference);
    m.def("worked_example_reported_reconstruction", &worked_example_reported_reconstruction);
}
