#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "godelgen/adequacy.hpp"
#include "godelgen/codec.hpp"
#include "godelgen/natcollections.hpp"
#include "godelgen/signature.hpp"
#include "godelgen/stack.hpp"
#include "godelgen/term.hpp"

namespace py = pybind11;
using namespace godelgen;

// Python int <-> Nat through decimal text; values are unbounded.
namespace pybind11::detail {
template <>
struct type_caster<Nat> {
  PYBIND11_TYPE_CASTER(Nat, const_name("int"));

  bool load(handle src, bool) {
    if (!src || !PyLong_Check(src.ptr()) || PyBool_Check(src.ptr())) return false;
    if (PyObject_RichCompareBool(src.ptr(), py::int_(0).ptr(), Py_LT) == 1) {
      throw py::value_error("expected a non-negative integer");
    }
    value = Nat::parse(std::string(py::str(src)));
    return true;
  }

  static handle cast(const Nat& n, return_value_policy, handle) {
    if (n.fits_u64()) return PyLong_FromUnsignedLongLong(n.to_u64());
    return PyLong_FromString(n.str().c_str(), nullptr, 10);
  }
};
}  // namespace pybind11::detail

namespace {

// Runs `fn` on the large-stack thread without the GIL. `fn` must not touch
// Python objects.
template <typename F>
auto deep(F&& fn) {
  using R = decltype(fn());
  std::optional<R> out;
  {
    py::gil_scoped_release release;
    run_with_stack([&] { out.emplace(fn()); });
  }
  return std::move(*out);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw py::value_error("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Index argument: an int, or the name of a finite-index constructor.
std::string index_text(const py::object& index) {
  if (py::isinstance<py::str>(index)) return index.cast<std::string>();
  return index.cast<Nat>().str();
}

struct PySignature {
  SignaturePtr sig;
  std::string source;
};

class PyCodec {
 public:
  PyCodec(const PySignature& s, const std::optional<TagOverrides>& force_tags)
      : source_(s.source),
        plan_(std::make_shared<const CodecPlan>(force_tags ? make_plan(s.sig, *force_tags) : assign_tags(s.sig))) {}

  Nat encode(const std::string& type, const std::string& text, const py::object& index) const {
    const Nat idx = resolve(type, index);
    return deep([&] {
      const Term t = parse_term(plan_->signature(), type, idx, text);
      return encode_closed(*plan_, type, idx, t);
    });
  }

  std::string decode(const std::string& type, const Nat& code, const py::object& index,
                     std::optional<std::uint64_t> fuel) const {
    const Nat idx = resolve(type, index);
    const std::uint64_t f = fuel_of(fuel);
    return deep([&] {
      Fuel budget(f);
      const Term t = godelgen::decode(*plan_, type, idx, CountVector{}, code, budget);
      return print_term(plan_->signature(), type, idx, t);
    });
  }

  int compare(const std::string& type, const std::string& a, const std::string& b, const py::object& index) const {
    const Nat idx = resolve(type, index);
    return deep([&] {
      const Term ta = parse_term(plan_->signature(), type, idx, a);
      const Term tb = parse_term(plan_->signature(), type, idx, b);
      const auto c = godelgen::compare(*plan_, type, idx, ta, tb);
      return c < 0 ? -1 : c > 0 ? 1 : 0;
    });
  }

  std::vector<std::string> enumerate(const std::string& type, Nat count, const py::object& index,
                                     std::optional<std::uint64_t> fuel) const {
    const Nat idx = resolve(type, index);
    const std::uint64_t f = fuel_of(fuel);
    return deep([&] {
      if (auto space = code_space(*plan_, type, idx, CountVector{})) count = std::min(count, *space);
      std::vector<std::string> out;
      for (Nat n; n < count; n += Nat(1)) {
        Fuel budget(f);
        out.push_back(print_term(plan_->signature(), type, idx, godelgen::decode(*plan_, type, idx, {}, n, budget)));
      }
      return out;
    });
  }

  std::optional<Nat> space(const std::string& type, const py::object& index) const {
    return code_space(*plan_, type, resolve(type, index), CountVector{});
  }

  std::vector<std::string> tag_order(const std::string& type, std::size_t cls) const {
    return plan_->tag_order(type, cls);
  }

  std::string verify_json(std::size_t max_size, const Nat& max_code, std::size_t threads,
                          std::optional<std::uint64_t> fuel) const {
    EnumBudget budget;
    budget.max_size = max_size;
    budget.max_code = max_code;
    budget.threads = threads;
    budget.fuel = fuel_of(fuel);
    budget.check();
    return deep([&] { return report_json(verify_all(*plan_, budget), source_); });
  }

 private:
  Nat resolve(const std::string& type, const py::object& index) const {
    const ValidatedSignature& sig = plan_->signature();
    return sig.parse_index(sig.type_id(type), index_text(index));
  }

  static std::uint64_t fuel_of(std::optional<std::uint64_t> fuel) {
    if (fuel && *fuel == 0) throw py::value_error("fuel must be positive");
    return fuel ? *fuel : default_fuel();
  }

  std::string source_;
  std::shared_ptr<const CodecPlan> plan_;
};

py::tuple diagnostic_tuple(const Diagnostic& d) { return py::make_tuple(d.rule, d.message, d.pos.line, d.pos.column); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bijections between the closed terms of a signature and the natural numbers";

  // The module owns the exception types; the translator keeps borrowed handles.
  const py::handle error = py::exception<Error>(m, "Error");
  auto sub = [&](const char* name) -> py::handle {
    return py::exception<Error>(m, name, error);
  };
  static const py::handle parse_error = sub("ParseError");
  static const py::handle validation_error = sub("ValidationError");
  static const py::handle term_error = sub("TermError");
  static const py::handle fuel_exhausted = sub("FuelExhausted");
  static const py::handle code_out_of_range = sub("CodeOutOfRange");
  static const py::handle no_plan = sub("NoWellFoundedPlan");
  static const py::handle plan_error = sub("PlanError");
  static const py::handle base_error = error;

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::set_error(parse_error, e.what());
    } catch (const ValidationError& e) {
      py::list diags;
      for (const Diagnostic& d : e.diagnostics()) diags.append(diagnostic_tuple(d));
      py::object exc = validation_error(e.what());
      exc.attr("diagnostics") = diags;
      py::set_error(validation_error, exc);
    } catch (const TermError& e) {
      py::set_error(term_error, e.what());
    } catch (const FuelExhausted& e) {
      py::set_error(fuel_exhausted, e.what());
    } catch (const CodeOutOfRange& e) {
      py::set_error(code_out_of_range, e.what());
    } catch (const NoWellFoundedPlan& e) {
      py::set_error(no_plan, e.what());
    } catch (const PlanError& e) {
      py::set_error(plan_error, e.what());
    } catch (const Error& e) {
      py::set_error(base_error, e.what());
    }
  });

  m.def("mingle", &mingle, py::arg("a"), py::arg("b"), "Interleave bits: a on odd positions, b on even.");
  m.def("unmingle", &unmingle, py::arg("n"), "Inverse of mingle: (a, b).");
  m.def(
      "mingle_fold", [](const std::vector<Nat>& xs) { return mingle_fold(xs); }, py::arg("codes"),
      "Left fold of mingle over a non-empty sequence.");
  m.def("unmingle_fold", &unmingle_fold, py::arg("n"), py::arg("arity"), "Inverse of mingle_fold.");

  m.def(
      "set_to_gaps", [](const std::vector<Nat>& xs) { return GapSet::from_elements(xs).gaps(); },
      py::arg("elements"), "Gap form of a finite set of naturals; duplicates collapse.");
  m.def(
      "gaps_to_set", [](const std::vector<Nat>& gaps) { return GapSet(gaps).elements(); }, py::arg("gaps"),
      "Sorted elements of the set with the given gap form.");

  m.def(
      "diagnose",
      [](const std::string& text) {
        py::list out;
        for (const Diagnostic& d : diagnose(parse_signature(text))) out.append(diagnostic_tuple(d));
        return out;
      },
      py::arg("text"), "Violated acceptance rules as (rule, message, line, column) tuples.");

  py::class_<PySignature>(m, "Signature")
      .def(py::init([](const std::string& text) { return PySignature{load_signature(text), "<string>"}; }),
           py::arg("text"))
      .def_static(
          "from_file",
          [](const std::string& path) { return PySignature{load_signature(read_file(path)), path}; },
          py::arg("path"))
      .def_readonly("source", &PySignature::source)
      .def_property_readonly("types",
                             [](const PySignature& s) {
                               std::vector<std::string> out;
                               for (const TypeDecl& t : s.sig->signature().types) out.push_back(t.name);
                               return out;
                             })
      .def("cardinalities", [](const PySignature& s) {
        py::dict out;
        const ValidatedSignature& sig = *s.sig;
        for (std::size_t t = 0; t < sig.signature().types.size(); ++t) {
          const auto& info = sig.info(t);
          for (std::size_t k = 0; k < info.class_count; ++k) {
            std::string name = sig.type(t).name;
            if (info.index_kind != IndexKind::None) name += "/" + sig.class_label(t, k);
            out[py::str(name)] = info.classes[k].str();
          }
        }
        return out;
      });

  py::class_<PyCodec>(m, "Codec")
      .def(py::init<const PySignature&, const std::optional<TagOverrides>&>(), py::arg("signature"),
           py::arg("force_tags") = py::none())
      .def("encode", &PyCodec::encode, py::arg("type"), py::arg("term"), py::arg("index") = 0)
      .def("decode", &PyCodec::decode, py::arg("type"), py::arg("code"), py::arg("index") = 0,
           py::arg("fuel") = py::none())
      .def("compare", &PyCodec::compare, py::arg("type"), py::arg("a"), py::arg("b"), py::arg("index") = 0)
      .def("enumerate", &PyCodec::enumerate, py::arg("type"), py::arg("count"), py::arg("index") = 0,
           py::arg("fuel") = py::none())
      .def("code_space", &PyCodec::space, py::arg("type"), py::arg("index") = 0)
      .def("tag_order", &PyCodec::tag_order, py::arg("type"), py::arg("cls") = 0)
      .def("verify_json", &PyCodec::verify_json, py::arg("max_size") = 6, py::arg("max_code") = 10000,
           py::arg("threads") = 0, py::arg("fuel") = py::none());
}
