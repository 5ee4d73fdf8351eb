#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "crystalwalk/config.hpp"
#include "crystalwalk/counting.hpp"
#include "crystalwalk/errors.hpp"
#include "crystalwalk/markov.hpp"
#include "crystalwalk/montecarlo.hpp"
#include "crystalwalk/verify.hpp"
#include "crystalwalk/version.hpp"

namespace py = pybind11;
using namespace crystalwalk;

namespace {

// Weights cross the boundary as tuples of ints, or Fractions for half-integers.
py::tuple to_py(const Weight& w) {
  const py::object fraction = py::module_::import("fractions").attr("Fraction");
  py::tuple out(w.dim());
  for (std::size_t k = 0; k < w.dim(); ++k) {
    if (w.doubled(k) % 2 == 0) {
      out[k] = py::int_(w.doubled(k) / 2);
    } else {
      out[k] = fraction(w.doubled(k), 2);
    }
  }
  return out;
}

Weight from_py(const py::sequence& seq) {
  std::string text;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    if (k) text += ",";
    text += py::str(seq[k]).cast<std::string>();
  }
  return Weight::parse(text);
}

py::int_ to_py(const BigInt& v) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(to_decimal(v).c_str(), nullptr, 10));
}

py::object json_to_py(const nlohmann::json& j) {
  const py::object loads = py::module_::import("json").attr("loads");
  return loads(j.dump());
}

std::vector<std::string> text_list(const std::optional<std::vector<py::object>>& items) {
  std::vector<std::string> out;
  if (!items) return out;
  for (const auto& o : *items) out.push_back(py::str(o).cast<std::string>());
  return out;
}

ExperimentConfig make_config(const std::string& type, int rank, const std::string& delta,
                             const std::optional<std::vector<py::object>>& t,
                             const std::optional<std::vector<py::object>>& drift, const std::string& gauge) {
  ExperimentConfig c;
  c.type = type;
  c.rank = rank;
  c.delta = delta;
  c.gauge = gauge;
  c.drift = text_list(drift);
  c.t = text_list(t);
  if (c.t.empty() && c.drift.empty()) c.t.assign(std::max(rank, 0), "1/2");
  c.validate();
  return c;
}

struct Model {
  ExperimentConfig cfg;
  RootSystemPtr rs;
  CrystalPtr delta;
  std::shared_ptr<WalkModel> walk;

  Model(const std::string& type, int rank, const std::string& delta_spec, const std::optional<std::vector<py::object>>& t,
        const std::optional<std::vector<py::object>>& drift, const std::string& gauge)
      : cfg(make_config(type, rank, delta_spec, t, drift, gauge)),
        rs(make_root_system(cfg)),
        delta(make_delta(rs, cfg.delta, true, cfg.budgets.vertex_budget)),
        walk(std::make_shared<WalkModel>(make_params(cfg, delta), cfg.budgets.vertex_budget)) {}
};

py::list weights_to_py(std::span<const Weight> ws) {
  py::list out;
  for (const auto& w : ws) out.append(to_py(w));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Crystal random walks in Weyl chambers (C++ core)";
  m.attr("__version__") = kVersion;
  m.attr("RNG") = kRngName;

  auto base = py::register_exception<Error>(m, "CrystalwalkError");
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<NotMinusculeError>(m, "NotMinusculeError", base.ptr());
  py::register_exception<UnsupportedTypeError>(m, "UnsupportedTypeError", base.ptr());
  py::register_exception<ResourceLimitError>(m, "ResourceLimitError", base.ptr());

  m.def(
      "roots",
      [](const std::string& type, int rank) {
        ExperimentConfig c;
        c.type = type;
        c.rank = rank;
        c.t.assign(std::max(rank, 0), "1/2");
        const auto rs = make_root_system(c);
        py::dict d;
        d["system"] = rs->name();
        d["rank"] = rs->rank();
        d["simple_roots"] = weights_to_py(rs->simple_roots());
        d["positive_roots"] = weights_to_py(rs->positive_roots());
        d["fundamental_weights"] = weights_to_py(rs->fundamental_weights());
        d["rho"] = to_py(rs->rho());
        d["weyl_group_order"] = weyl_group_order(rs->type(), rs->rank());
        d["minuscule"] = rs->minuscule_indices();
        return d;
      },
      py::arg("type"), py::arg("rank"));

  py::class_<Model>(m, "Model", "Letter crystal B(delta) with its spectral parameters")
      .def(py::init<const std::string&, int, const std::string&, const std::optional<std::vector<py::object>>&,
                    const std::optional<std::vector<py::object>>&, const std::string&>(),
           py::arg("type"), py::arg("rank"), py::arg("delta") = "w1", py::arg("t") = py::none(),
           py::arg("drift") = py::none(), py::arg("gauge") = "sum-one")
      .def_property_readonly("system", [](const Model& s) { return s.rs->name(); })
      .def_property_readonly("t", [](const Model& s) { return s.walk->params().t; })
      .def_property_readonly("x", [](const Model& s) { return s.walk->params().x; })
      .def_property_readonly("drift", [](const Model& s) { return s.walk->params().drift; })
      .def_property_readonly("s_delta", [](const Model& s) { return s.walk->params().s_delta; })
      .def_property_readonly("minuscule_type", [](const Model& s) { return s.walk->minuscule_type(); })
      .def_property_readonly("letters",
                             [](const Model& s) {
                               py::list out;
                               const auto& p = s.walk->params();
                               for (Vertex b = 0; b < s.delta->size(); ++b) {
                                 out.append(py::make_tuple(s.delta->label(b), to_py(s.delta->weight(b)), p.letter_probs[b]));
                               }
                               return out;
                             })
      .def("psi", [](const Model& s, const py::sequence& lam) { return s.walk->psi(from_py(lam)); }, py::arg("lam"))
      .def(
          "nabla", [](const Model& s) { return nabla(*s.rs, s.walk->params().t); })
      .def(
          "exit_probability",
          [](const Model& s, const py::sequence& lam) { return exit_probability(*s.walk, from_py(lam)); },
          py::arg("lam"))
      .def(
          "survival",
          [](const Model& s, const py::sequence& lam, int L) { return survival_dp(*s.walk, from_py(lam), L); },
          py::arg("lam"), py::arg("L"))
      .def(
          "exit_probability_mc",
          [](const Model& s, const py::sequence& lam, int horizon, std::uint64_t n, std::uint64_t seed, unsigned threads) {
            ExitEstimate e;
            const Weight start = from_py(lam);
            {
              py::gil_scoped_release release;
              e = exit_probability_mc(s.walk->params(), start, horizon, n, seed, threads);
            }
            py::dict d;
            d["estimate"] = e.estimate;
            d["sigma"] = e.sigma;
            d["horizon"] = e.horizon;
            d["n"] = e.n;
            return d;
          },
          py::arg("lam"), py::arg("horizon") = 10000, py::arg("n") = 100000, py::arg("seed") = 42,
          py::arg("threads") = 0)
      .def(
          "path_counts",
          [](const Model& s, const py::sequence& mu, int L) {
            const auto table = path_count_dp(*s.delta, from_py(mu), L);
            py::list rows;
            for (const auto& row : table.rows) {
              py::dict d;
              for (const auto& [w, v] : row) {
                if (sgn(v) != 0) d[to_py(w)] = to_py(v);
              }
              rows.append(d);
            }
            return rows;
          },
          py::arg("mu"), py::arg("L"))
      .def(
          "tensor_multiplicities",
          [](const Model& s, const py::sequence& mu) {
            py::dict d;
            for (const auto& [w, v] : tensor_multiplicities(from_py(mu), *s.delta)) d[to_py(w)] = to_py(v);
            return d;
          },
          py::arg("mu"))
      .def(
          "kernel",
          [](const Model& s, const std::string& which, int depth) {
            const Window w = dominant_window(*s.walk, s.rs->zero(), depth);
            TransitionKernel k;
            if (which == "W") {
              k = kernel_W(*s.walk, w);
            } else if (which == "WC") {
              k = restrict_to_chamber(kernel_W(*s.walk, w), *s.rs);
            } else if (which == "H") {
              k = kernel_H(*s.walk, w);
            } else if (which == "K") {
              k = intertwiner(*s.walk, w);
            } else {
              throw ConfigError("which", "expected W, WC, H or K, got '" + which + "'");
            }
            py::list out;
            for (const auto& row : k.rows()) {
              for (const auto& e : row.entries) out.append(py::make_tuple(to_py(row.from), to_py(e.to), e.p));
            }
            return out;
          },
          py::arg("which") = "H", py::arg("depth") = 6)
      .def(
          "simulate",
          [](const Model& s, int steps, std::uint64_t seed) {
            const Trajectory tr = sample_trajectory(s.walk->params(), steps, seed);
            py::dict d;
            d["W"] = weights_to_py(tr.W_path);
            d["H"] = weights_to_py(tr.H_path);
            d["letters"] = tr.letters;
            d["coupling_ok"] = tr.coupling_ok;
            return d;
          },
          py::arg("steps"), py::arg("seed") = 42);

  m.def("trajectory_seed", &trajectory_seed, py::arg("master"), py::arg("index"));

  m.def(
      "verify",
      [](const std::string& suite, const py::dict& config) {
        const py::object dumps = py::module_::import("json").attr("dumps");
        const auto cfg = ExperimentConfig::from_json(nlohmann::json::parse(dumps(config).cast<std::string>()));
        std::vector<SuiteResult> results;
        {
          py::gil_scoped_release release;
          if (suite == "all") {
            results = verify_all(cfg);
          } else {
            results.push_back(run_named_suite(suite, cfg));
          }
        }
        py::list out;
        for (const auto& r : results) out.append(json_to_py(to_json(r)));
        return out;
      },
      py::arg("suite") = "all", py::arg("config") = py::dict());

  m.def(
      "acceptance",
      [](int k, unsigned threads) {
        SuiteResult r;
        {
          py::gil_scoped_release release;
          r = acceptance_criterion(k, threads);
        }
        return json_to_py(to_json(r));
      },
      py::arg("criterion"), py::arg("threads") = 0);
}
