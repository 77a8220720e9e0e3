#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "pte/enumerate.hpp"
#include "pte/error.hpp"
#include "pte/latin.hpp"
#include "pte/pouring.hpp"
#include "pte/report.hpp"
#include "pte/word.hpp"
#include "pte/word_ops.hpp"

namespace py = pybind11;

namespace {

py::int_ to_py(const pte::BigInt& v) { return py::int_(py::str(v.str())); }

py::list to_py(const std::vector<pte::BigInt>& v) {
  py::list out;
  for (const auto& x : v) out.append(to_py(x));
  return out;
}

pte::Word word(const std::string& text, std::optional<int> alphabet_size) { return pte::parse_word(text, alphabet_size); }

pte::LatinSquare square(const std::vector<std::vector<int>>& rows) { return pte::latin_from_rows(rows); }

std::vector<std::string> strings(const std::vector<pte::Word>& words) {
  std::vector<std::string> out;
  for (const auto& w : words) out.push_back(w.str());
  return out;
}

pte::SearchSpec spec(int m, int b, int r, bool canonical, int jobs, pte::SearchMode mode) {
  pte::SearchSpec s{m, b, r, canonical, mode, jobs};
  return s;
}

}  // namespace

PYBIND11_MODULE(_pte, m) {
  m.doc() = "Prouhet-Tarry-Escott partitions, Latin square expansions and fair pouring";

  auto base = py::register_exception<pte::Error>(m, "Error", PyExc_ValueError);
  py::register_exception<pte::ParseError>(m, "ParseError", base.ptr());
  py::register_exception<pte::PreconditionError>(m, "PreconditionError", base.ptr());

  // Words
  m.def("max_regularity", [](const std::string& w, std::optional<int> b) { return pte::max_regularity(word(w, b)); },
        py::arg("word"), py::arg("alphabet_size") = py::none());
  m.def("canonicalize", [](const std::string& w, std::optional<int> b) { return pte::canonicalize(word(w, b)).str(); },
        py::arg("word"), py::arg("alphabet_size") = py::none());
  m.def("word_report_json", [](const std::string& w, std::optional<int> b) { return pte::word_report(word(w, b)).dump(); },
        py::arg("word"), py::arg("alphabet_size") = py::none());
  m.def(
      "power_sums",
      [](const std::string& w, int degree, std::optional<int> b) {
        const auto parsed = word(w, b);
        const auto table = pte::power_sums(parsed, degree);
        py::list out;
        for (int x = 1; x <= parsed.alphabet_size(); ++x) {
          py::list row;
          for (int j = 0; j <= degree; ++j) row.append(to_py(table.at(x, j)));
          out.append(row);
        }
        return out;
      },
      py::arg("word"), py::arg("degree"), py::arg("alphabet_size") = py::none());

  // Latin squares
  m.def("apply_latin", [](const std::vector<std::vector<int>>& rows, const std::string& w) {
    const auto s = square(rows);
    return pte::apply_latin(s, word(w, s.size())).str();
  });
  m.def("encoding_matrix", [](const std::vector<std::vector<int>>& rows) { return pte::encoding_matrix(square(rows)).rows(); });
  m.def("det", [](const std::vector<std::vector<std::int64_t>>& rows) {
    std::vector<std::int64_t> entries;
    for (const auto& row : rows) {
      if (row.size() != rows.size()) throw pte::PreconditionError("matrix must be square");
      entries.insert(entries.end(), row.begin(), row.end());
    }
    return to_py(pte::det_exact(pte::IntMatrix(rows.size(), entries)));
  });
  m.def("kernel_witness", [](const std::vector<std::vector<int>>& rows) -> py::object {
    const auto w = pte::kernel_witness(square(rows));
    if (!w) return py::none();
    py::dict out;
    out["coefficients"] = to_py(w->coefficients);
    out["translate"] = to_py(w->translate);
    out["multiplicities"] = to_py(w->multiplicities);
    out["word"] = pte::witness_word(*w).str();
    return out;
  });
  m.def("cyclic_square", [](int n) { return pte::cyclic_square(n).rows(); });
  m.def("product_group_square", [](int a, int b) { return pte::product_group_square(a, b).rows(); });
  m.def("klein_square", [] { return pte::klein_square().rows(); });
  m.def("seven_singular_square", [] { return pte::seven_singular_square().rows(); });

  // Word operations
  m.def("shuffle", [](const std::vector<std::string>& words, std::optional<int> b) {
    int size = b.value_or(1);
    if (!b) {
      for (const auto& w : words) size = std::max(size, pte::parse_word(w).alphabet_size());
    }
    std::vector<pte::Word> parsed;
    for (const auto& w : words) parsed.push_back(word(w, size));
    return pte::shuffle(parsed).str();
  }, py::arg("words"), py::arg("alphabet_size") = py::none());
  m.def("reduce_by_swaps", [](const std::string& w) {
    std::vector<std::tuple<std::size_t, std::size_t, std::string>> out;
    for (const auto& step : pte::reduce_by_swaps(word(w, 2))) out.emplace_back(step.ba_begin, step.ab_begin, step.result.str());
    return out;
  });
  m.def("thue_morse", [](std::size_t n) { return pte::thue_morse(n).str(); });
  m.def("prouhet_word", [](int b, int level) { return pte::prouhet_word(b, level).str(); });
  m.def("construct_two_letter", [](std::size_t n, int r) { return pte::construct_two_letter(n, r).str(); });
  m.def("construct_three_letter", [](std::size_t n, int r) { return pte::construct_three_letter(n, r).str(); });
  m.def("switch_count", [](const std::string& w) { return pte::switch_count(word(w, std::nullopt)); });

  // Enumeration
  m.def(
      "enumerate",
      [](int mm, int b, int r, bool canonical, int jobs) {
        std::vector<pte::Word> words;
        {
          py::gil_scoped_release release;
          words = pte::enumerate_pte(spec(mm, b, r, canonical, jobs, pte::SearchMode::list)).words;
        }
        return strings(words);
      },
      py::arg("m"), py::arg("b"), py::arg("r"), py::arg("canonical") = true, py::arg("jobs") = 1);
  m.def(
      "count",
      [](int mm, int b, int r, bool canonical, int jobs) {
        py::gil_scoped_release release;
        return pte::count_pte(spec(mm, b, r, canonical, jobs, pte::SearchMode::count));
      },
      py::arg("m"), py::arg("b"), py::arg("r"), py::arg("canonical") = true, py::arg("jobs") = 1);

  // Pouring
  m.def("cup_amounts", [](const std::string& density, const std::string& w) {
    return pte::cup_amounts(pte::parse_density(density), word(w, std::nullopt));
  });
  m.def(
      "verify_pouring_json",
      [](const std::string& density, const std::string& w, std::optional<double> bound) {
        return pte::pouring_json(pte::verify_pouring(pte::parse_density(density), word(w, std::nullopt), bound)).dump();
      },
      py::arg("density"), py::arg("word"), py::arg("derivative_bound") = py::none());

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = pte::cli::run(args, out, err);
    return std::make_tuple(code, out.str(), err.str());
  });
}
