#include "zenochain/oracle.hpp"
#include "zenochain/protocol.hpp"
#include "zenochain/report.hpp"
#include "zenochain/states.hpp"
#include "zenochain/transfer.hpp"

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace zenochain;

namespace {

ProtocolParams make_params(std::size_t m, std::size_t n, double kappa1, double kappa2, double kappa3, bool blocks)
{
    ProtocolParams p;
    p.outer_count = m;
    p.inner_count = n;
    p.kappa1 = kappa1;
    p.kappa2 = kappa2;
    p.kappa3 = kappa3;
    p.bob_blocks = blocks;
    p.validate();
    return p;
}

py::object reliability_value(const Reliability& r)
{
    if (r.is_undefined())
        return py::none();
    return py::float_(r.value());
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Nested Mach-Zehnder chain simulator with path dissipation";

    py::register_exception<SpecError>(m, "SpecError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);
    py::register_exception<UndefinedRatio>(m, "UndefinedRatio", PyExc_ArithmeticError);

    py::class_<TransferMatrix2>(m, "TransferMatrix2")
        .def(py::init<double, double, double, double>(), py::arg("a11"), py::arg("a12"), py::arg("a21"),
             py::arg("a22"))
        .def_readonly("a11", &TransferMatrix2::a11)
        .def_readonly("a12", &TransferMatrix2::a12)
        .def_readonly("a21", &TransferMatrix2::a21)
        .def_readonly("a22", &TransferMatrix2::a22)
        .def("apply",
             [](const TransferMatrix2& t, double left, double right) {
                 const auto v = t.apply({left, right});
                 return py::make_tuple(v.left, v.right);
             })
        .def("determinant", &TransferMatrix2::determinant)
        .def("to_list", [](const TransferMatrix2& t) {
            return std::vector<std::vector<double>>{{t.a11, t.a12}, {t.a21, t.a22}};
        })
        .def(py::self * py::self)
        .def("__repr__", [](const TransferMatrix2& t) {
            std::ostringstream os;
            os << "TransferMatrix2([[" << t.a11 << ", " << t.a12 << "], [" << t.a21 << ", " << t.a22 << "]])";
            return os.str();
        });

    m.def("bs_matrix", &bs_matrix, py::arg("theta"));
    m.def("loss_matrix", &loss_matrix, py::arg("kappa_left"), py::arg("kappa_right"));
    m.def("chain_matrix", &chain_matrix, py::arg("theta"), py::arg("kappa_left"), py::arg("kappa_right"),
          py::arg("n"));
    m.def("matrix_power", &matrix_power, py::arg("m"), py::arg("k"));

    py::class_<ProtocolParams>(m, "ProtocolParams")
        .def(py::init(&make_params), py::arg("m"), py::arg("n"), py::arg("kappa1") = 0.0, py::arg("kappa2") = 0.0,
             py::arg("kappa3") = 0.0, py::arg("blocks") = false)
        .def_readwrite("outer_count", &ProtocolParams::outer_count)
        .def_readwrite("inner_count", &ProtocolParams::inner_count)
        .def_readwrite("kappa1", &ProtocolParams::kappa1)
        .def_readwrite("kappa2", &ProtocolParams::kappa2)
        .def_readwrite("kappa3", &ProtocolParams::kappa3)
        .def_readwrite("bob_blocks", &ProtocolParams::bob_blocks)
        .def("effective_kappa3", &ProtocolParams::effective_kappa3)
        .def("__repr__", &ProtocolParams::describe);

    py::class_<InnerCoefficients>(m, "InnerCoefficients")
        .def_readonly("m11", &InnerCoefficients::m11)
        .def_readonly("m21", &InnerCoefficients::m21)
        .def_readonly("m_res", &InnerCoefficients::m_res);

    py::class_<TransferCoefficients>(m, "TransferCoefficients")
        .def(py::init([](double m1, double m2, std::vector<double> m3, double m_res) {
                 return TransferCoefficients{m1, m2, std::move(m3), m_res};
             }),
             py::arg("m1"), py::arg("m2"), py::arg("m3"), py::arg("m_res"))
        .def_readonly("m1", &TransferCoefficients::m1)
        .def_readonly("m2", &TransferCoefficients::m2)
        .def_readonly("m3", &TransferCoefficients::m3)
        .def_readonly("m_res", &TransferCoefficients::m_res);

    py::class_<OutcomeReport>(m, "OutcomeReport")
        .def_readonly("w1", &OutcomeReport::w1)
        .def_readonly("w2", &OutcomeReport::w2)
        .def_readonly("w3", &OutcomeReport::w3)
        .def_readonly("w_res", &OutcomeReport::w_res)
        .def_readonly("w_tr", &OutcomeReport::w_tr)
        .def_readonly("w_tr_absorbed", &OutcomeReport::w_tr_absorbed)
        .def_property_readonly("w3_total", &OutcomeReport::w3_total)
        .def_property_readonly("eta", [](const OutcomeReport& r) { return reliability_value(r.eta); })
        .def_property_readonly("eta_text", [](const OutcomeReport& r) { return r.eta.to_string(); })
        .def("total", &OutcomeReport::total);

    m.def("inner_coefficients", &inner_coefficients, py::arg("n"), py::arg("kappa2"), py::arg("kappa3"));
    m.def("equivalent_inner_dissipation", &equivalent_inner_dissipation, py::arg("n"), py::arg("kappa2"));
    m.def("balanced_kappa1", &balanced_kappa1, py::arg("n"), py::arg("kappa2"));
    m.def("outer_coefficients", &outer_coefficients, py::arg("params"));
    m.def("evaluate", &evaluate, py::arg("params"));
    m.def("eta_nb_closed_form", &eta_nb_closed_form, py::arg("m"));

    py::class_<PropagationTrace>(m, "PropagationTrace")
        .def_readonly("d1_amplitude", &PropagationTrace::d1_amplitude)
        .def_readonly("d2_amplitude", &PropagationTrace::d2_amplitude)
        .def_readonly("d3_amplitudes", &PropagationTrace::d3_amplitudes)
        .def_readonly("dissipation", &PropagationTrace::dissipation)
        .def_readonly("blocked", &PropagationTrace::blocked)
        .def_readonly("channel_entering", &PropagationTrace::channel_entering)
        .def_property_readonly("d1", &PropagationTrace::d1)
        .def_property_readonly("d2", &PropagationTrace::d2)
        .def_property_readonly("d3_total", &PropagationTrace::d3_total)
        .def("total", &PropagationTrace::total)
        .def("channel_exposure", [](const PropagationTrace& t, const std::string& convention) {
            if (convention == "entering_probability")
                return channel_exposure(t, ExposureConvention::entering_probability);
            if (convention == "absorbed_only")
                return channel_exposure(t, ExposureConvention::absorbed_only);
            throw py::value_error("convention must be 'entering_probability' or 'absorbed_only'");
        }, py::arg("convention") = "entering_probability");

    m.def(
        "propagate",
        [](const ProtocolParams& p, double input_amplitude) { return propagate(build_network(p), input_amplitude); },
        py::arg("params"), py::arg("input_amplitude") = 1.0,
        "Build the explicit path network for params and propagate the input through it.");
    m.def("splitter_count", [](const ProtocolParams& p) { return build_network(p).splitter_count(); },
          py::arg("params"));

    m.def(
        "output_state",
        [](const TransferCoefficients& c, const std::string& kind, double alpha) {
            InputState input;
            if (kind == "single_photon")
                input = InputState::single_photon();
            else if (kind == "coherent")
                input = InputState::coherent(alpha);
            else
                throw py::value_error("kind must be 'single_photon' or 'coherent'");
            const auto s = output_state(c, input);
            py::dict d;
            d["labels"] = s.labels;
            d["amplitudes"] = s.amplitudes;
            d["values"] = s.values;
            d["no_click_probability"] =
                s.no_click_probability ? py::object(py::float_(*s.no_click_probability)) : py::object(py::none());
            return d;
        },
        py::arg("coeffs"), py::arg("kind") = "single_photon", py::arg("alpha") = 1.0);
    m.def("ratio_invariance_check", &ratio_invariance_check, py::arg("coeffs"));

    m.def(
        "run_sweep_csv",
        [](const std::string& config_json) {
            const auto spec = parse_sweep_spec(config_json);
            std::vector<ReportRow> rows;
            {
                py::gil_scoped_release release;
                rows = run_sweep(spec);
            }
            std::ostringstream os;
            write_rows(os, rows, OutputFormat::csv);
            return os.str();
        },
        py::arg("config_json"), "Run a JSON sweep config and return the CSV report.");
    m.def("table1_csv", [] {
        std::ostringstream os;
        write_table1(os, run_table1(), OutputFormat::csv);
        return os.str();
    });
}
