// Copyright 2026 The ddlrd Authors
// SPDX-License-Identifier: Apache-2.0

#include "ddlrd/arfima_model.hpp"
#include "ddlrd/generators.hpp"
#include "ddlrd/limit_diagnostics.hpp"
#include "ddlrd/mc_harness.hpp"
#include "ddlrd/noise.hpp"
#include "ddlrd/sample_statistics.hpp"
#include "ddlrd/spectral_analysis.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <span>

namespace py = pybind11;
using namespace ddlrd;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::span<const double> view(const Array& a)
{
    if (a.ndim() != 1) {
        throw std::invalid_argument("expected a one-dimensional array");
    }
    return {a.data(), static_cast<std::size_t>(a.size())};
}

Array to_array(const std::vector<double>& v)
{
    Array out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

ModelParams params_of(double d, const std::string& process)
{
    return convert_params(d, parse_process_kind(process));
}

py::dict record_dict(const DftRecord& r)
{
    py::dict o;
    o["j"] = r.j;
    o["x"] = r.x;
    o["a"] = r.a;
    o["b"] = r.b;
    o["i"] = r.i;
    o["f"] = r.f;
    o["a_norm"] = r.a_norm;
    o["b_norm"] = r.b_norm;
    o["i_norm"] = r.i_norm;
    return o;
}

py::dict ad_dict(const AdResult& r)
{
    py::dict o;
    o["statistic"] = r.statistic;
    o["modified"] = r.modified;
    o["p_value"] = r.p_value;
    o["n"] = r.n;
    return o;
}

py::dict ci_dict(const VarianceCi& c)
{
    py::dict o;
    o["s2"] = c.s2;
    o["lower"] = c.lower;
    o["upper"] = c.upper;
    o["reject_half"] = c.reject_half;
    o["n"] = c.n;
    return o;
}

AdVariant variant_of(const std::string& v)
{
    if (v == "composite") {
        return AdVariant::composite;
    }
    if (v == "simple") {
        return AdVariant::simple;
    }
    throw std::invalid_argument("ad variant must be composite or simple");
}

py::dict study_dict(const McStudy& study, const StudySummary& s)
{
    py::list freqs;
    for (const auto& f : s.frequencies) {
        py::dict o;
        o["j"] = f.j;
        o["label"] = f.label;
        o["variance"] = f.variance_a;
        o["ci"] = ci_dict(f.ci);
        o["ad_a"] = ad_dict(f.ad_a);
        o["ad_b"] = ad_dict(f.ad_b);
        o["median_i_norm"] = f.median_i_norm;
        o["mean_log_i_norm"] = f.mean_log_i_norm;
        freqs.append(o);
    }
    py::list lags;
    for (const auto& l : s.lags) {
        py::dict o;
        o["lag"] = l.lag;
        o["true_gamma"] = l.true_gamma;
        o["mean_gamma_hat"] = l.mean_gamma_hat;
        o["se_gamma_hat"] = l.se_gamma_hat;
        o["median_deviation"] = l.median_deviation;
        o["iqr_deviation"] = l.iqr_deviation;
        o["ad"] = ad_dict(l.ad_deviation);
        lags.append(o);
    }
    py::dict o;
    o["config"] = py::module_::import("json").attr("loads")(to_json(study.config).dump());
    o["frequencies"] = freqs;
    o["lags"] = lags;
    o["pearson"] = s.pearson;
    o["spearman"] = s.spearman;
    o["kept"] = s.kept;
    o["failures"] = study.failures;
    o["discard_total"] = s.discard_total;
    o["degenerate"] = s.degenerate;
    o["warnings"] = study.warnings;
    if (study.config.compute_gph) {
        o["gph_median"] = s.gph_median;
        o["gph_mean"] = s.gph_mean;
        o["gph_sd"] = s.gph_sd;
        o["gph_m"] = s.gph_m;
        o["gph_d"] = to_array(study.gph_d());
    }
    return o;
}

}  // namespace

PYBIND11_MODULE(_ddlrd, m)
{
    m.doc() = "Duration-driven long-memory processes: generators and Monte Carlo diagnostics.";

    py::register_exception<StudyFailure>(m, "StudyFailure", PyExc_RuntimeError);
    py::register_exception<GenerationError>(m, "GenerationError", PyExc_RuntimeError);

    py::class_<ModelParams>(m, "ModelParams")
        .def_readonly("d", &ModelParams::d)
        .def_readonly("hurst", &ModelParams::hurst)
        .def_readonly("alpha", &ModelParams::alpha)
        .def_readonly("sigma0_sq", &ModelParams::sigma0_sq)
        .def_readonly("sigma_eps_sq", &ModelParams::sigma_eps_sq)
        .def_readonly("sigma_w_sq", &ModelParams::sigma_w_sq)
        .def_readonly("mu", &ModelParams::mu)
        .def_property_readonly("process", [](const ModelParams& p) { return std::string(to_string(p.process)); })
        .def("__repr__", [](const ModelParams& p) {
            return "ModelParams(process='" + std::string(to_string(p.process)) + "', d=" + std::to_string(p.d) + ")";
        });

    m.def("convert_params", &params_of, py::arg("d"), py::arg("process") = "taqqu-levy");

    m.def(
        "acv",
        [](const ModelParams& p, const std::vector<std::int64_t>& lags) {
            std::vector<double> out;
            out.reserve(lags.size());
            for (auto t : lags) {
                out.push_back(acv(p, t));
            }
            return to_array(out);
        },
        py::arg("params"), py::arg("lags"), "ARFIMA(0,d,0) autocovariance at integer lags.");

    m.def(
        "spectral_density",
        [](const ModelParams& p, const Array& x) {
            std::vector<double> out;
            for (double v : view(x)) {
                out.push_back(spectral_density(p, v));
            }
            return to_array(out);
        },
        py::arg("params"), py::arg("x"));

    m.def(
        "simulate",
        [](const std::string& process, double d, std::int64_t n, std::uint64_t seed, const std::string& noise) {
            const ModelParams p = params_of(d, process);
            SamplePath path;
            {
                py::gil_scoped_release release;
                if (p.process == ProcessKind::parke) {
                    path = generate_parke(ParkeModel(p, NoiseDist::parse(noise)), n, seed);
                } else {
                    path = generate_taqqu_levy(TaqquLevyModel(p, NoiseDist::parse(noise)), n, seed);
                }
            }
            py::dict o;
            o["values"] = to_array(path.values);
            o["seed"] = path.seed;
            if (p.process == ProcessKind::parke) {
                o["j"] = path.meta.j;
                o["live_high_water"] = path.meta.live_high_water;
            } else {
                o["regime_count"] = path.meta.regime_count;
                o["discard_count"] = path.meta.discard_count;
                o["change_points"] = path.meta.change_points;
            }
            return o;
        },
        py::arg("process"), py::arg("d"), py::arg("n"), py::arg("seed"), py::arg("noise") = "gaussian");

    m.def("paper_grid", [](std::int64_t n) {
        const FrequencyGrid g = paper_grid(n);
        return py::make_tuple(g.indices, g.labels);
    });

    m.def(
        "dft",
        [](const Array& values, std::int64_t j, const ModelParams& p, bool mean_correct) {
            return record_dict(dft_at(view(values), j, p, DftOptions{mean_correct}));
        },
        py::arg("values"), py::arg("j"), py::arg("params"), py::arg("mean_correct") = false);

    m.def(
        "periodogram",
        [](const Array& values, const ModelParams& p, bool mean_correct) {
            const auto recs = full_periodogram(view(values), p, DftOptions{mean_correct});
            std::vector<double> x, a, b, i, f;
            for (const auto& r : recs) {
                x.push_back(r.x);
                a.push_back(r.a);
                b.push_back(r.b);
                i.push_back(r.i);
                f.push_back(r.f);
            }
            py::dict o;
            o["x"] = to_array(x);
            o["a"] = to_array(a);
            o["b"] = to_array(b);
            o["i"] = to_array(i);
            o["f"] = to_array(f);
            return o;
        },
        py::arg("values"), py::arg("params"), py::arg("mean_correct") = false, "All Fourier frequencies j = 1..n/2-1.");

    m.def(
        "sample_acf",
        [](const Array& values, std::int64_t max_lag) { return to_array(sample_acf(view(values), max_lag).gamma_hat); },
        py::arg("values"), py::arg("max_lag"));

    m.def(
        "anderson_darling",
        [](const Array& sample, const std::string& variant, double mean, double variance) {
            return ad_dict(anderson_darling(view(sample), variant_of(variant), mean, variance));
        },
        py::arg("sample"), py::arg("variant") = "composite", py::arg("mean") = 0.0, py::arg("variance") = 1.0);

    m.def(
        "variance_ci", [](const Array& sample, double level) { return ci_dict(variance_ci(view(sample), level)); },
        py::arg("sample"), py::arg("level") = 0.95);

    m.def(
        "gph",
        [](const Array& values, const ModelParams& p, std::int64_t m_, std::int64_t l) {
            const auto recs = full_periodogram(view(values), p);
            const std::int64_t bw = m_ > 0 ? m_ : default_gph_bandwidth(static_cast<std::int64_t>(values.size()));
            const GphEstimate e = gph(recs, bw, l);
            py::dict o;
            o["d_hat"] = e.d_hat;
            o["intercept"] = e.intercept;
            o["m"] = e.m;
            o["l"] = e.l;
            o["se_nominal"] = e.se_nominal;
            return o;
        },
        py::arg("values"), py::arg("params"), py::arg("m") = 0, py::arg("l") = 0);

    m.def(
        "run_study",
        [](const py::dict& config, const std::string& out_dir) {
            StudyConfig c;
            merge_json(c, nlohmann::json::parse(py::str(py::module_::import("json").attr("dumps")(config))
                                                    .cast<std::string>()));
            c.validate();
            McStudy study;
            StudySummary summary;
            {
                py::gil_scoped_release release;
                study = run_study(c);
                summary = summarize(study);
                if (!out_dir.empty()) {
                    write_study(study, summary, out_dir);
                }
            }
            return study_dict(study, summary);
        },
        py::arg("config"), py::arg("out_dir") = "",
        "Run a Monte Carlo study from a config dict with the same keys as the CLI JSON config.");
}
