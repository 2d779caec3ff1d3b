// SPDX-License-Identifier: Apache-2.0
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "beamsim/channel.hpp"
#include "beamsim/matrix_io.hpp"
#include "beamsim/metrics.hpp"
#include "beamsim/precoding.hpp"
#include "beamsim/runner.hpp"
#include "beamsim/selection.hpp"

namespace py = pybind11;
using namespace beamsim;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Wideband beamspace mmWave MIMO simulation core";

  py::class_<SystemConfig>(m, "SystemConfig")
      .def(py::init<>())
      .def_readwrite("n_tx", &SystemConfig::n_tx)
      .def_readwrite("n_rx", &SystemConfig::n_rx)
      .def_readwrite("n_rf_tx", &SystemConfig::n_rf_tx)
      .def_readwrite("n_rf_rx", &SystemConfig::n_rf_rx)
      .def_readwrite("n_streams", &SystemConfig::n_streams)
      .def_readwrite("n_subcarriers", &SystemConfig::n_subcarriers)
      .def_readwrite("carrier_hz", &SystemConfig::carrier_hz)
      .def_readwrite("bandwidth_hz", &SystemConfig::bandwidth_hz)
      .def_readwrite("antenna_spacing_m", &SystemConfig::antenna_spacing_m)
      .def_readwrite("noise_power_w", &SystemConfig::noise_power_w)
      .def_readwrite("transmit_power_w", &SystemConfig::transmit_power_w)
      .def("spacing", &SystemConfig::spacing)
      .def("validate", &SystemConfig::validate);

  py::class_<ChannelConfig>(m, "ChannelConfig")
      .def(py::init<>())
      .def_readwrite("n_clusters", &ChannelConfig::n_clusters)
      .def_readwrite("n_subpaths", &ChannelConfig::n_subpaths)
      .def_readwrite("delay_window_s", &ChannelConfig::delay_window_s)
      .def_readwrite("subpath_delay_offset_s", &ChannelConfig::subpath_delay_offset_s)
      .def_readwrite("angle_spread_rad", &ChannelConfig::angle_spread_rad)
      .def_readwrite("pulse_rolloff", &ChannelConfig::pulse_rolloff)
      .def_readwrite("max_taps", &ChannelConfig::max_taps)
      .def("validate", &ChannelConfig::validate);

  py::class_<PowerModel>(m, "PowerModel")
      .def(py::init<>())
      .def_readwrite("p_rf_w", &PowerModel::p_rf_w)
      .def_readwrite("p_ps_w", &PowerModel::p_ps_w)
      .def_readwrite("p_switch_w", &PowerModel::p_switch_w)
      .def_readwrite("p_c_per_mops_w", &PowerModel::p_c_per_mops_w);

  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("uniform", &Rng::uniform)
      .def("normal_pair", &Rng::normal_pair);

  m.def("mix_seed", &mix_seed, py::arg("seed"), py::arg("index"));

  py::class_<Subpath>(m, "Subpath")
      .def_readwrite("gain", &Subpath::gain)
      .def_readwrite("delay_s", &Subpath::delay_s)
      .def_readwrite("aod_rad", &Subpath::aod_rad)
      .def_readwrite("aoa_rad", &Subpath::aoa_rad);

  py::class_<Cluster>(m, "Cluster")
      .def_readwrite("center_delay_s", &Cluster::center_delay_s)
      .def_readwrite("center_aod_rad", &Cluster::center_aod_rad)
      .def_readwrite("center_aoa_rad", &Cluster::center_aoa_rad)
      .def_readwrite("subpaths", &Cluster::subpaths);

  py::class_<PathSet>(m, "PathSet")
      .def(py::init<>())
      .def_readwrite("clusters", &PathSet::clusters)
      .def("subpath_count", &PathSet::subpath_count);

  py::class_<BeamspaceChannel>(m, "BeamspaceChannel")
      .def(py::init<>())
      .def_readwrite("mats", &BeamspaceChannel::mats)
      .def_readwrite("per_subcarrier_freq_hz", &BeamspaceChannel::per_subcarrier_freq_hz);

  py::class_<Pulse>(m, "Pulse")
      .def_readwrite("ts", &Pulse::ts)
      .def_readwrite("rolloff", &Pulse::rolloff)
      .def_readwrite("support_periods", &Pulse::support_periods)
      .def("__call__", &Pulse::operator());

  m.def("raised_cosine", &raised_cosine, py::arg("ts"), py::arg("rolloff") = 0.8);
  m.def("tap_count", &tap_count);
  m.def("sample_paths", &sample_paths, py::arg("cfg"), py::arg("channel_cfg"),
        py::arg("rng"));
  m.def("subcarrier_frequency", &subcarrier_frequency, py::arg("k"), py::arg("cfg"));
  m.def("spatial_angle", &spatial_angle);
  m.def("array_response", &array_response, py::arg("phi"), py::arg("n"));
  m.def("dirichlet_kernel", &dirichlet_kernel, py::arg("x"), py::arg("n"));
  m.def("frequency_gain", &frequency_gain);
  m.def("spatial_channel", &spatial_channel);
  m.def("beamspace_transform", &beamspace_transform);
  m.def("beamspace_direct", &beamspace_direct);
  m.def("beamspace_grid", &beamspace_grid);
  m.def("beam_power_profile", &beam_power_profile, py::arg("ch"), py::arg("k"));

  py::class_<SelectionPlan>(m, "SelectionPlan")
      .def(py::init<>())
      .def_readwrite("tx_beams", &SelectionPlan::tx_beams)
      .def_readwrite("rx_beams", &SelectionPlan::rx_beams)
      .def_readwrite("subarray_size_tx", &SelectionPlan::subarray_size_tx)
      .def_readwrite("subarray_size_rx", &SelectionPlan::subarray_size_rx);

  py::class_<ExhaustiveOptions>(m, "ExhaustiveOptions")
      .def(py::init<>())
      .def_readwrite("max_combinations", &ExhaustiveOptions::max_combinations)
      .def_readwrite("n_rf_tx", &ExhaustiveOptions::n_rf_tx)
      .def_readwrite("n_rf_rx", &ExhaustiveOptions::n_rf_rx);

  m.def("required_beam_count", &required_beam_count);
  m.def("pad_to_subarrays", &pad_to_subarrays);
  m.def("tx_beam_energies", &tx_beam_energies);
  m.def("rx_beam_energies", &rx_beam_energies);
  m.def("select_tx", &select_tx);
  m.def("select_rx", &select_rx);
  m.def("energy_max_plan", &energy_max_plan, py::arg("ch"), py::arg("n_beams_tx"),
        py::arg("n_beams_rx"), py::arg("n_rf_tx"), py::arg("n_rf_rx"));
  m.def("reduce_channel", &reduce_channel);
  m.def("exhaustive_select", &exhaustive_select, py::arg("ch"), py::arg("n_beams_tx"),
        py::arg("n_beams_rx"), py::arg("evaluator"),
        py::arg("options") = ExhaustiveOptions{});

  py::class_<PhasePrecoder>(m, "PhasePrecoder")
      .def(py::init<>())
      .def_readwrite("mat", &PhasePrecoder::mat)
      .def_readwrite("subarray_size", &PhasePrecoder::subarray_size)
      .def_readwrite("phase_pairs", &PhasePrecoder::phase_pairs)
      .def_readwrite("subproblem_bits", &PhasePrecoder::subproblem_bits)
      .def("n_streams", &PhasePrecoder::n_streams)
      .def("n_beams", &PhasePrecoder::n_beams);

  py::class_<BasebandPrecoder>(m, "BasebandPrecoder")
      .def(py::init<>())
      .def_readwrite("mats", &BasebandPrecoder::mats)
      .def_readwrite("power_alloc", &BasebandPrecoder::power_alloc)
      .def_readwrite("rank_deficient", &BasebandPrecoder::rank_deficient);

  py::enum_<PowerAllocation>(m, "PowerAllocation")
      .value("identity_high_snr", PowerAllocation::identity_high_snr)
      .value("waterfill", PowerAllocation::waterfill);

  py::class_<SicLayout>(m, "SicLayout")
      .def(py::init<int, int>(), py::arg("n_streams"), py::arg("subarray_size"))
      .def_readwrite("n_streams", &SicLayout::n_streams)
      .def_readwrite("subarray_size", &SicLayout::subarray_size);

  m.def("average_gram", &average_gram);
  m.def("factor", &factor);
  m.def("sic_precoder", &sic_precoder, py::arg("r"), py::arg("layout"),
        py::arg("snr_scale"));
  m.def("phase_pair", &phase_pair);
  m.def("baseband_precoder", &baseband_precoder, py::arg("reduced"), py::arg("fps"),
        py::arg("snr_scale"), py::arg("mode") = PowerAllocation::identity_high_snr);
  m.def("svd_baseline", &svd_baseline, py::arg("reduced"), py::arg("n_streams"));
  m.def("waterfill", &waterfill, py::arg("gains"), py::arg("total"));
  m.def("reconstruct_from_phases", &reconstruct_from_phases);

  py::enum_<Architecture>(m, "Architecture")
      .value("sic_phase_network", Architecture::sic_phase_network)
      .value("traditional_switch", Architecture::traditional_switch)
      .value("fully_digital", Architecture::fully_digital);

  py::class_<MetricsRecord>(m, "MetricsRecord")
      .def_readonly("mi_bits", &MetricsRecord::mi_bits)
      .def_readonly("power_w", &MetricsRecord::power_w)
      .def_readonly("ee", &MetricsRecord::ee)
      .def_readonly("complexity_ops", &MetricsRecord::complexity_ops);
  m.def("make_record", &make_record, py::arg("mi_bits"), py::arg("power_w"),
        py::arg("complexity_ops"));

  m.def("mutual_information", &mutual_information, py::arg("reduced"), py::arg("fps"),
        py::arg("fbb"), py::arg("rho"), py::arg("sigma2"), py::arg("n_streams"));
  m.def("mutual_information_svd", &mutual_information_svd, py::arg("reduced"),
        py::arg("fbb"), py::arg("rho"), py::arg("sigma2"), py::arg("n_streams"));
  m.def("capacity_fully_digital", &capacity_fully_digital);
  m.def("complexity_sic", &complexity_sic);
  m.def("complexity_svd", &complexity_svd);
  m.def("total_power", &total_power, py::arg("model"), py::arg("rho_w"), py::arg("n_rf"),
        py::arg("n_beams"), py::arg("complexity_ops"), py::arg("architecture"));
  m.def("energy_efficiency", &energy_efficiency);

  py::enum_<SweepAxis>(m, "SweepAxis")
      .value("snr_db", SweepAxis::snr_db)
      .value("transmit_power_w", SweepAxis::transmit_power_w)
      .value("bandwidth_hz", SweepAxis::bandwidth_hz)
      .value("n_streams", SweepAxis::n_streams)
      .value("n_beams", SweepAxis::n_beams);

  py::enum_<Scheme>(m, "Scheme")
      .value("sic", Scheme::sic)
      .value("svd_matched_rf", Scheme::svd_matched_rf)
      .value("svd_matched_beams", Scheme::svd_matched_beams)
      .value("svd_three_rf", Scheme::svd_three_rf)
      .value("fully_digital", Scheme::fully_digital);

  py::class_<SweepSpec>(m, "SweepSpec")
      .def(py::init<>())
      .def_readwrite("axis", &SweepSpec::axis)
      .def_readwrite("values", &SweepSpec::values)
      .def_readwrite("trials", &SweepSpec::trials)
      .def_readwrite("system", &SweepSpec::system)
      .def_readwrite("channel", &SweepSpec::channel)
      .def_readwrite("power", &SweepSpec::power)
      .def_readwrite("schemes", &SweepSpec::schemes)
      .def_readwrite("seed", &SweepSpec::seed)
      .def_readwrite("n_beams", &SweepSpec::n_beams)
      .def("validate", &SweepSpec::validate);

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("axis_value", &SweepRow::axis_value)
      .def_readonly("scheme", &SweepRow::scheme)
      .def_readonly("seed_index", &SweepRow::seed_index)
      .def_readonly("mi_bits", &SweepRow::mi_bits)
      .def_readonly("ee", &SweepRow::ee)
      .def_readonly("power_w", &SweepRow::power_w)
      .def_readonly("n_beams", &SweepRow::n_beams)
      .def_readonly("n_rf", &SweepRow::n_rf)
      .def_readonly("error", &SweepRow::error);

  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("axis", &SweepResult::axis)
      .def_readonly("rows", &SweepResult::rows);

  py::class_<BeamBudget>(m, "BeamBudget")
      .def_readonly("raw_tx", &BeamBudget::raw_tx)
      .def_readonly("padded_tx", &BeamBudget::padded_tx)
      .def_readonly("raw_rx", &BeamBudget::raw_rx)
      .def_readonly("padded_rx", &BeamBudget::padded_rx);

  m.def("beam_budget", &beam_budget, py::arg("cfg"), py::arg("channel_cfg"),
        py::arg("requested") = 0);
  m.def("run_sweep", &run_sweep, py::arg("spec"), py::arg("n_threads") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("csv_string", &csv_string);
  m.def("emit_csv", &emit_csv, py::arg("result"), py::arg("path"));
  m.def("load_spec", &load_spec, py::arg("path"));
  m.def("parse_spec", &parse_spec, py::arg("json_text"));

  m.def("save_matrix_stack", &save_matrix_stack, py::arg("path"), py::arg("mats"),
        py::arg("meta") = std::vector<double>{});
  m.def("load_matrix_stack",
        [](const std::string& path) {
          MatrixStack s = load_matrix_stack(path);
          return py::make_tuple(s.mats, s.meta);
        });
  m.def("save_channel", &save_channel);
  m.def("load_channel", &load_channel);

  m.def("to_string",
        [](Scheme s) { return to_string(s); });
  m.def("scheme_from_string", &scheme_from_string);
  m.def("axis_from_string", &axis_from_string);

  m.attr("SPEED_OF_LIGHT") = kSpeedOfLight;
}
