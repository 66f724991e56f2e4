#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "csamn/experiment.hpp"
#include "csamn/oracle.hpp"
#include "csamn/report.hpp"

namespace py = pybind11;
using namespace csamn;

namespace {

py::dict decision_dict(const UavDecision& d) {
  py::dict out;
  out["power_w"] = d.power_w;
  out["leo_cpu_hz"] = d.leo_cpu_hz;
  out["dt_start_s"] = d.dt_start_s;
  out["offload_ratio"] = d.offload_ratio;
  return out;
}

py::list decision_list(const std::vector<UavDecision>& ds) {
  py::list out;
  for (const UavDecision& d : ds) out.append(decision_dict(d));
  return out;
}

py::dict energy_dict(const EnergyBreakdown& e) {
  py::dict out;
  out["total_j"] = e.total();
  out["uav_comm_j"] = e.uav_comm_j;
  out["uav_comp_j"] = e.uav_comp_j;
  out["leo_comp_j"] = e.leo_comp_j;
  return out;
}

py::dict result_dict(const ExperimentResult& r) {
  py::dict out;
  out["algorithm"] = to_string(r.algorithm);
  out["seed"] = r.seed;
  out["utility"] = r.utility;
  out["data_bits"] = r.data_bits;
  out["energy"] = energy_dict(r.energy);
  out["avg_ds_delay_s"] = r.avg_ds_delay_s;
  out["flagged_slots"] = r.flagged_slots;
  out["iterations"] = r.iterations;
  out["wall_clock_s"] = r.wall_clock_s;
  py::list slots;
  for (const SlotMetrics& m : r.slots) {
    py::dict s;
    s["slot"] = m.slot;
    s["utility"] = m.utility;
    s["data_bits"] = m.data_bits;
    s["energy"] = energy_dict(m.energy);
    s["ds_delay_s"] = m.ds_delay_s;
    s["flagged"] = m.flagged;
    s["iterations"] = m.iterations;
    s["notes"] = m.notes;
    s["decisions"] = decision_list(m.decisions);
    s["remaining_bits"] = m.remaining_bits;
    s["objective_trace"] = m.trace.objective;
    slots.append(s);
  }
  out["slots"] = slots;
  return out;
}

// Run and aggregate rows of a table, one dict per row.
py::list table_list(const SweepTable& t) {
  py::list out;
  for (const MetricRow& r : table_rows(t, false)) {
    py::dict row;
    row["record"] = r.record;
    row["algorithm"] = r.algorithm;
    row["axis"] = r.axis;
    row["axis_value"] = r.axis_value;
    row["seed"] = r.seed.empty() ? py::object(py::none()) : py::object(py::int_(std::stoull(r.seed)));
    for (std::size_t k = 0; k < kMetricNames.size(); ++k) row[kMetricNames[k]] = r.metrics[k];
    out.append(row);
  }
  return out;
}

std::vector<UavStorage> initial_storage(const ScenarioConfig& cfg) {
  return std::vector<UavStorage>(static_cast<std::size_t>(cfg.num_uavs),
                                 UavStorage{cfg.storage_capacity_bits, cfg.storage_remaining_bits});
}

ScenarioConfig with_overrides(ScenarioConfig cfg, std::optional<std::uint64_t> seed,
                              std::optional<std::string> algorithm) {
  if (seed) cfg.seed = *seed;
  if (algorithm) cfg.algorithm = parse_algorithm(*algorithm);
  return cfg;
}

std::vector<Algorithm> algorithms(const std::vector<std::string>& names) {
  std::vector<Algorithm> out;
  for (const std::string& n : names) out.push_back(parse_algorithm(n));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Core bindings of the csamn simulator.";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ModelError>(m, "ModelError", PyExc_ArithmeticError);

  py::class_<ScenarioConfig>(m, "Config")
      .def(py::init([](const std::map<std::string, std::string>& values) {
             ScenarioConfig cfg;
             for (const auto& [k, v] : values) set_config_value(cfg, k, v);
             cfg.validate();
             return cfg;
           }),
           py::arg("values") = std::map<std::string, std::string>{},
           "Defaults with the given key = value overrides.")
      .def_static("load", &load_config, py::arg("path"))
      .def_static("parse",
                  [](const std::string& text) {
                    std::istringstream in(text);
                    return parse_config(in);
                  },
                  py::arg("text"))
      .def("set", [](ScenarioConfig& c, const std::string& k, const std::string& v) { set_config_value(c, k, v); },
           py::arg("key"), py::arg("value"))
      .def("get", &get_config_value, py::arg("key"))
      .def("validate", &ScenarioConfig::validate)
      .def("to_text", &format_config)
      .def("__getitem__", &get_config_value)
      .def("__setitem__", [](ScenarioConfig& c, const std::string& k, py::object v) {
        set_config_value(c, k, py::str(v).cast<std::string>());
      })
      .def("copy", [](const ScenarioConfig& c) { return c; });

  m.def("config_keys", [] {
    py::dict out;
    for (const std::string& k : config_keys()) out[py::str(k)] = config_key_doc(k);
    return out;
  }, "Accepted configuration keys with their descriptions.");

  m.def("run",
        [](const ScenarioConfig& cfg, std::optional<std::uint64_t> seed, std::optional<std::string> algorithm) {
          const ScenarioConfig c = with_overrides(cfg, seed, algorithm);
          ExperimentResult r;
          {
            py::gil_scoped_release release;
            r = run_experiment(c);
          }
          return result_dict(r);
        },
        py::arg("config"), py::arg("seed") = py::none(), py::arg("algorithm") = py::none(),
        "Simulate the whole horizon and return totals plus per-slot metrics.");

  m.def("sweep",
        [](const ScenarioConfig& cfg, const std::string& axis, const std::vector<double>& values,
           const std::vector<std::uint64_t>& seeds, const std::vector<std::string>& algos, unsigned threads) {
          const std::vector<Algorithm> a = algorithms(algos);
          SweepTable t;
          {
            py::gil_scoped_release release;
            t = run_sweep(cfg, axis, values, seeds, a, threads);
          }
          return table_list(t);
        },
        py::arg("config"), py::arg("axis"), py::arg("values"), py::arg("seeds"),
        py::arg("algorithms") = std::vector<std::string>{"jcorm"}, py::arg("threads") = 0u);

  m.def("compare",
        [](const ScenarioConfig& cfg, const std::vector<std::uint64_t>& seeds, const std::vector<std::string>& algos,
           unsigned threads) {
          const std::vector<Algorithm> a = algorithms(algos);
          SweepTable t;
          {
            py::gil_scoped_release release;
            t = compare(cfg, a, seeds, threads);
          }
          return table_list(t);
        },
        py::arg("config"), py::arg("seeds"),
        py::arg("algorithms") = std::vector<std::string>{"jcorm", "atsm", "ga", "no-offload"},
        py::arg("threads") = 0u);

  m.def("solve_slot",
        [](const ScenarioConfig& cfg, std::optional<std::uint64_t> seed, int slot, std::optional<std::string> algorithm) {
          const ScenarioConfig c = with_overrides(cfg, seed, algorithm);
          const NetworkState st = generate_scenario(c, c.seed);
          const SlotContext ctx = slot_context(c, st, slot, initial_storage(c));
          const SlotSolution s = solve_slot(c, ctx, c.seed, slot);
          py::dict out;
          out["objective"] = s.objective;
          out["flagged"] = s.flagged;
          out["notes"] = s.notes;
          out["decisions"] = decision_list(s.decisions);
          out["objective_trace"] = s.trace.objective;
          out["iterations"] = s.trace.iterations;
          return out;
        },
        py::arg("config"), py::arg("seed") = py::none(), py::arg("slot") = 0, py::arg("algorithm") = py::none(),
        "Solve one slot from the initial storage state.");

  m.def("oracle_joint",
        [](const ScenarioConfig& cfg, std::optional<std::uint64_t> seed, int slot, int points, int levels) {
          const ScenarioConfig c = with_overrides(cfg, seed, std::nullopt);
          const NetworkState st = generate_scenario(c, c.seed);
          const SlotContext ctx = slot_context(c, st, slot, initial_storage(c));
          JointResult j;
          {
            py::gil_scoped_release release;
            j = grid_joint(ctx, GridSpec{points, levels});
          }
          py::dict out;
          out["feasible"] = j.feasible;
          out["objective"] = j.objective;
          out["normalized_objective"] = j.normalized_objective;
          out["evaluations"] = j.evaluations;
          out["decisions"] = decision_list(j.best);
          return out;
        },
        py::arg("config"), py::arg("seed") = py::none(), py::arg("slot") = 0, py::arg("points") = 25,
        py::arg("levels") = 4, "Brute-force joint grid search of one slot (at most 2 UAVs).");

  m.def("visibility_window", [](const ScenarioConfig& c) { return visibility_window(c.geometry); },
        py::arg("config"), "Satellite visibility window (s).");
  m.def("propagation_delay", [](const ScenarioConfig& c) { return propagation_delay(c.geometry); },
        py::arg("config"), "One-way UAV to satellite propagation delay (s).");

  m.def("dt_collection_step",
        [](double capacity_bits, double remaining_bits, double dt_start_s, double collect_rate_bps,
           double leo_rate_tol, double slot_len_s) {
          const DtStep s = dt_collection_step({capacity_bits, remaining_bits}, dt_start_s, collect_rate_bps,
                                              leo_rate_tol, slot_len_s);
          py::dict out;
          out["collected_bits"] = s.collected_bits;
          out["uplinked_bits"] = s.uplinked_bits;
          out["uplink_bound_bits"] = s.uplink_bound_bits;
          out["remaining_bits"] = s.next.remaining_bits;
          out["overflow"] = s.overflow;
          return out;
        },
        py::arg("capacity_bits"), py::arg("remaining_bits"), py::arg("dt_start_s"), py::arg("collect_rate_bps"),
        py::arg("leo_rate_tol"), py::arg("slot_len_s"), "One slot of DT collection and uplink for a UAV.");
}
