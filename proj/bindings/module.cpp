#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>

#include "ccdm/analysis.hpp"
#include "ccdm/coder.hpp"
#include "ccdm/ranker.hpp"
#include "ccdm/selftest.hpp"

namespace py = pybind11;
using namespace ccdm;

namespace {

// Unbounded integers cross the boundary as python ints via decimal strings.
py::int_ to_py_int(const BigInt& z) {
    py::object builtins_int = py::module_::import("builtins").attr("int");
    return builtins_int(py::str(z.get_str()));
}

BigInt to_bigint(const py::int_& value) {
    return BigInt(py::str(value).cast<std::string>());
}

py::object to_fraction(const Rational& q) {
    py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(to_py_int(q.get_num()), to_py_int(q.get_den()));
}

// Bits live as '0'/'1' strings on the python side.
BitSeq bits_from_str(const std::string& text) {
    BitSeq bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1')
            throw py::value_error("bits must be a string of '0' and '1'");
        bits.push_back(c == '1');
    }
    return bits;
}

std::string bits_to_str(const BitSeq& bits) {
    std::string text(bits.size(), '0');
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) text[i] = '1';
    return text;
}

} // namespace

PYBIND11_MODULE(_ccdm, m) {
    m.doc() = "constant-composition distribution matching via arithmetic coding";

    py::register_exception<SupportViolation>(m, "SupportViolation");
    py::register_exception<ZeroProbability>(m, "ZeroProbability");
    py::register_exception<CompositionMismatch>(m, "CompositionMismatch");
    py::register_exception<IndexOutOfRange>(m, "IndexOutOfRange");
    py::register_exception<LengthMismatch>(m, "LengthMismatch");
    py::register_exception<NotACodeword>(m, "NotACodeword");
    py::register_exception<TooLarge>(m, "TooLarge");
    py::register_exception<Exhausted>(m, "Exhausted");
    py::register_exception<FormatError>(m, "FormatError");
    py::register_exception<IoFailure>(m, "IoFailure");

    py::class_<Distribution>(m, "Distribution")
        .def(py::init<std::vector<double>>(), py::arg("probs"))
        .def_property_readonly("probs", &Distribution::probs)
        .def("__len__", &Distribution::size)
        .def("__getitem__",
             [](const Distribution& d, std::size_t a) {
                 if (a >= d.size()) throw py::index_error();
                 return d[a];
             })
        .def("strictly_positive", &Distribution::strictly_positive)
        .def("__repr__", [](const Distribution& d) {
            std::ostringstream s;
            s << "Distribution([";
            for (std::size_t a = 0; a < d.size(); ++a) s << (a ? ", " : "") << d[a];
            s << "])";
            return s.str();
        });

    py::class_<Composition>(m, "Composition")
        .def(py::init<std::vector<std::uint32_t>>(), py::arg("counts"))
        .def_property_readonly("counts", &Composition::counts)
        .def_property_readonly("n", &Composition::n)
        .def("__len__", &Composition::size)
        .def("type", &Composition::type)
        .def("__eq__",
             [](const Composition& a, const Composition& b) {
                 return a.counts() == b.counts();
             })
        .def("__repr__", [](const Composition& c) {
            std::ostringstream s;
            s << "Composition([";
            for (std::size_t a = 0; a < c.size(); ++a)
                s << (a ? ", " : "") << c.count(a);
            s << "])";
            return s.str();
        });

    py::class_<CodeParams>(m, "CodeParams")
        .def_static("derive", &CodeParams::derive, py::arg("composition"))
        .def_readonly("composition", &CodeParams::composition)
        .def_property_readonly(
            "type_class_size",
            [](const CodeParams& p) { return to_py_int(p.type_class_size); })
        .def_readonly("m", &CodeParams::m)
        .def_property_readonly("n", &CodeParams::n)
        .def("__repr__", [](const CodeParams& p) {
            std::ostringstream s;
            s << "CodeParams(n=" << p.n() << ", m=" << p.m << ")";
            return s.str();
        });

    m.def("parse_distribution",
          [](const std::string& text) { return parse_distribution(text); },
          py::arg("text"));
    m.def("entropy", &entropy, py::arg("dist"));
    m.def("kl_divergence", &kl_divergence, py::arg("phat"), py::arg("p"));
    m.def("quantize_to_ntype", &quantize_to_ntype, py::arg("dist"), py::arg("n"));
    m.def("type_class_size",
          [](const Composition& comp) { return to_py_int(type_class_size(comp)); },
          py::arg("comp"));
    m.def("input_length", &input_length, py::arg("comp"));
    m.def("normalized_divergence", &normalized_divergence, py::arg("dist"),
          py::arg("comp"));
    m.def("quantization_gap_bound", &quantization_gap_bound, py::arg("dist"),
          py::arg("n"));
    m.def("rate_lower_bound", &rate_lower_bound, py::arg("entropy_value"),
          py::arg("n"), py::arg("k"));

    m.def("rank",
          [](const SymbolSeq& seq, const Composition& comp) {
              return to_py_int(rank(seq, comp));
          },
          py::arg("seq"), py::arg("comp"));
    m.def("unrank",
          [](const py::int_& i, const Composition& comp) {
              return unrank(to_bigint(i), comp);
          },
          py::arg("i"), py::arg("comp"));
    m.def("ref_encode",
          [](const std::string& bits, const CodeParams& params) {
              return ref_encode(bits_from_str(bits), params);
          },
          py::arg("bits"), py::arg("params"));
    m.def("ref_decode",
          [](const SymbolSeq& seq, const CodeParams& params, bool strict) {
              return bits_to_str(ref_decode(seq, params, strict));
          },
          py::arg("seq"), py::arg("params"), py::arg("strict") = true);
    m.def("codebook", &codebook, py::arg("params"), py::arg("max_m") = 20);

    py::class_<SourceModel>(m, "SourceModel")
        .def(py::init<Composition>(), py::arg("initial"))
        .def_property_readonly("remaining_counts", &SourceModel::remaining_counts)
        .def_property_readonly("remaining_total", &SourceModel::remaining_total)
        .def("next_symbol_distribution",
             [](const SourceModel& model) {
                 py::list out;
                 for (const auto& q : model.next_symbol_distribution())
                     out.append(to_fraction(q));
                 return out;
             })
        .def("draw", &SourceModel::draw, py::arg("symbol"));

    py::class_<IntervalState>(m, "IntervalState")
        .def_property_readonly(
            "low", [](const IntervalState& s) { return to_fraction(s.low); })
        .def_property_readonly(
            "width", [](const IntervalState& s) { return to_fraction(s.width); });

    py::class_<StreamEncoder>(m, "StreamEncoder")
        .def(py::init<CodeParams>(), py::arg("params"))
        .def("push_bit",
             [](StreamEncoder& enc, int b) {
                 if (b != 0 && b != 1) throw py::value_error("bit must be 0 or 1");
                 enc.push_bit(static_cast<Bit>(b));
             },
             py::arg("bit"))
        .def_property_readonly("bits_consumed", &StreamEncoder::bits_consumed)
        .def_property_readonly("emitted", &StreamEncoder::emitted)
        .def_property_readonly("state", &StreamEncoder::state)
        .def("finish", &StreamEncoder::finish);

    py::class_<StreamDecoder>(m, "StreamDecoder")
        .def(py::init<CodeParams, bool>(), py::arg("params"),
             py::arg("strict") = true)
        .def("push_symbol", &StreamDecoder::push_symbol, py::arg("symbol"))
        .def_property_readonly("symbols_consumed", &StreamDecoder::symbols_consumed)
        .def_property_readonly(
            "emitted",
            [](const StreamDecoder& dec) { return bits_to_str(dec.emitted()); })
        .def_property_readonly("state", &StreamDecoder::state)
        .def("finish",
             [](StreamDecoder& dec) { return bits_to_str(dec.finish()); });

    m.def("encode_stream",
          [](const std::string& bits, const CodeParams& params) {
              return encode_stream(bits_from_str(bits), params);
          },
          py::arg("bits"), py::arg("params"));
    m.def("decode_stream",
          [](const SymbolSeq& seq, const CodeParams& params, bool strict) {
              return bits_to_str(decode_stream(seq, params, strict));
          },
          py::arg("seq"), py::arg("params"), py::arg("strict") = true);

    py::class_<SweepRecord>(m, "SweepRecord")
        .def_readonly("n", &SweepRecord::n)
        .def_readonly("counts", &SweepRecord::counts)
        .def_readonly("m", &SweepRecord::m)
        .def_readonly("rate", &SweepRecord::rate)
        .def_readonly("h_bar", &SweepRecord::h_bar)
        .def_readonly("ndiv", &SweepRecord::ndiv)
        .def_readonly("kl_gap", &SweepRecord::kl_gap)
        .def_readonly("gap_bound", &SweepRecord::gap_bound)
        .def_readonly("rate_bound", &SweepRecord::rate_bound)
        .def("__repr__", [](const SweepRecord& r) {
            std::ostringstream s;
            s << "SweepRecord(n=" << r.n << ", rate=" << r.rate
              << ", ndiv=" << r.ndiv << ")";
            return s.str();
        });

    m.def("sweep", &sweep, py::arg("dist"), py::arg("n_values"));
    m.def("preset_grid", [] { return preset_grid(); });
    m.def("empirical_divergence", &empirical_divergence, py::arg("dist"),
          py::arg("params"), py::arg("max_m") = 20);
    m.def("report_csv",
          [](const std::vector<SweepRecord>& records) {
              std::ostringstream out;
              emit_report(records, ReportFormat::csv, out);
              return out.str();
          },
          py::arg("records"));
    m.def("report_json",
          [](const std::vector<SweepRecord>& records) {
              std::ostringstream out;
              emit_report(records, ReportFormat::json, out);
              return out.str();
          },
          py::arg("records"));
}
