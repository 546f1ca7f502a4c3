#include <cstdint>
#include <string>
#include <vector>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "levysim/covariance_struct.hpp"
#include "levysim/error_model.hpp"
#include "levysim/gaussian_source.hpp"
#include "levysim/levy_sim.hpp"
#include "levysim/linalg_kron.hpp"
#include "levysim/parallel.hpp"
#include "levysim/sde_demo.hpp"
#include "levysim/validation.hpp"

namespace py = pybind11;
using namespace levysim;

namespace {

Algorithm algo_from(const std::string& name) {
    if (name == "ia") return Algorithm::ia;
    if (name == "fs") return Algorithm::fs;
    if (name == "wik") return Algorithm::wik;
    throw py::value_error("algorithm must be 'ia', 'wik' or 'fs'");
}

Calculus calculus_from(const std::string& name) {
    if (name == "ito") return Calculus::ito;
    if (name == "strat") return Calculus::stratonovich;
    throw py::value_error("calculus must be 'ito' or 'strat'");
}

py::array_t<double> to_array(const FlatMatrix& a) {
    py::array_t<double> out({a.rows, a.cols});
    auto v = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) v(i, j) = a(i, j);
    return out;
}

py::dict report_dict(const McReport& r) {
    py::dict d;
    d["statistic"] = r.statistic;
    d["estimate"] = r.estimate;
    d["std_error"] = r.std_error;
    d["target"] = r.target;
    d["rule"] = r.rule_text();
    d["pass"] = r.pass;
    d["note"] = r.note;
    return d;
}

py::list report_list(const std::vector<McReport>& reps) {
    py::list out;
    for (const auto& r : reps) out.append(report_dict(r));
    return out;
}

// Realization r uses substream r of `seed`, as the CLI does.
py::tuple simulate(const std::string& algo, std::size_t m, double h, std::size_t n, std::size_t batch,
                   std::uint64_t seed, const std::string& calculus) {
    const Algorithm a = algo_from(algo);
    if (a == Algorithm::wik) throw py::value_error("only 'ia' and 'fs' are simulated");
    const Calculus c = calculus_from(calculus);
    py::array_t<double> dw({batch, m});
    py::array_t<double> integrals({batch, m, m});
    std::vector<double> dw_buf(batch * m);
    std::vector<double> int_buf(batch * m * m);
    {
        py::gil_scoped_release release;
        map_chunks<int>(batch, 256, [&](std::size_t begin, std::size_t end) {
            for (std::size_t r = begin; r < end; ++r) {
                NormalStream stream({seed, r});
                const Simulation sim = a == Algorithm::ia ? simulate_ia(m, h, n, stream) : simulate_fs(m, h, n, stream);
                const IntegralMatrix mat = convert(sim.integrals, c);
                for (std::size_t i = 0; i < m; ++i) {
                    dw_buf[r * m + i] = sim.increment.dw[i];
                    for (std::size_t j = 0; j < m; ++j) int_buf[(r * m + i) * m + j] = mat(i, j);
                }
            }
            return 0;
        });
    }
    std::copy(dw_buf.begin(), dw_buf.end(), dw.mutable_data());
    std::copy(int_buf.begin(), int_buf.end(), integrals.mutable_data());
    return py::make_tuple(dw, integrals);
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Lévy area and iterated Itô integral simulation";
    mod.attr("__version__") = LEVYSIM_VERSION;

    mod.def("simulate", &simulate, py::arg("algo"), py::arg("m"), py::arg("h"), py::arg("n"), py::arg("batch") = 1,
            py::arg("seed") = 20210121, py::arg("calculus") = "ito",
            "Returns (dW of shape (batch, m), I of shape (batch, m, m)).");

    mod.def("normals", [](std::uint64_t seed, std::uint64_t stream_id, std::size_t count) {
        NormalStream s({seed, stream_id});
        return draw_normal_vector(s, count);
    }, py::arg("seed"), py::arg("stream_id"), py::arg("count"));

    mod.def("tail_constants", [](std::size_t n) {
        const TailConstants t = tail_constants(n);
        return py::make_tuple(t.alpha, t.beta);
    }, py::arg("n"));

    mod.def("choose_n", &choose_n, py::arg("m"), py::arg("p"), py::arg("h"), py::arg("eps"));
    mod.def("choose_n_fs", &choose_n_fs, py::arg("p"), py::arg("h"), py::arg("eps"));
    mod.def("choose_n_wik", &choose_n_wik, py::arg("m"), py::arg("h"), py::arg("eps"));
    mod.def("cost", [](const std::string& algo, std::size_t m, double p, double h, double eps) {
        const CostReport c = cost(algo_from(algo), m, p, h, eps);
        return py::make_tuple(c.n, c.draws);
    }, py::arg("algo"), py::arg("m"), py::arg("p"), py::arg("h"), py::arg("eps"),
       "Returns (n, draws).");
    mod.def("l2_error_fs_exact", &l2_error_fs_exact, py::arg("h"), py::arg("n"));
    mod.def("l2_error_ia_bound", [](double h, std::size_t n, std::size_t m) {
        const IaL2Bound b = l2_error_ia_bound(h, n, m);
        py::dict d;
        d["max_entry"] = b.max_entry;
        d["frobenius"] = b.frobenius;
        d["max_entry_simplified"] = b.max_entry_simplified;
        d["frobenius_simplified"] = b.frobenius_simplified;
        return d;
    }, py::arg("h"), py::arg("n"), py::arg("m"));
    mod.def("gauss_abs_moment", &gauss_abs_moment, py::arg("p"), py::arg("sigma"));
    mod.def("chi2_abs_moment", &chi2_abs_moment, py::arg("p"), py::arg("c"));

    mod.def("pair_to_index", &pair_to_index, py::arg("i"), py::arg("j"), py::arg("m"));
    mod.def("cond_cov_direct", [](const std::vector<double>& x) { return to_array(cond_cov_direct(x).matrix); },
            py::arg("x"));
    mod.def("cond_cov_blocks", [](const std::vector<double>& x) { return to_array(cond_cov_blocks(x).matrix); },
            py::arg("x"));

    mod.def("coupled_fs_error_grid", [](double h, const std::vector<std::size_t>& ns, std::size_t K, std::size_t N,
                                        std::uint64_t seed) {
        std::vector<McReport> reps;
        {
            py::gil_scoped_release release;
            reps = coupled_fs_error_grid(h, ns, K, N, seed);
        }
        return report_list(reps);
    }, py::arg("h"), py::arg("ns"), py::arg("K"), py::arg("N"), py::arg("seed") = 20210121);
    mod.def("moment_suite", [](const std::string& algo, std::size_t m, double h, std::size_t n, std::size_t N,
                               std::uint64_t seed) {
        std::vector<McReport> reps;
        {
            py::gil_scoped_release release;
            reps = moment_suite(algo_from(algo), m, h, n, N, seed);
        }
        return report_list(reps);
    }, py::arg("algo"), py::arg("m"), py::arg("h"), py::arg("n"), py::arg("N"), py::arg("seed") = 20210121);
    mod.def("fit_slope", [](const std::vector<double>& xs, const std::vector<double>& ys) { return fit_slope(xs, ys); },
            py::arg("xs"), py::arg("ys"));

    mod.def("run_demo", [](double T, const std::vector<double>& h_list, std::size_t paths, std::size_t K,
                           std::uint64_t seed) {
        DemoConfig cfg;
        cfg.T = T;
        cfg.h_list = h_list;
        cfg.paths = paths;
        cfg.K = K;
        cfg.seed = seed;
        DemoResult r;
        {
            py::gil_scoped_release release;
            r = run_demo(cfg);
        }
        py::list rows;
        for (const DemoRow& row : r.rows) {
            py::dict d;
            d["h"] = row.h;
            d["n"] = row.n;
            d["rmse_milstein_ia"] = row.rmse_milstein_ia;
            d["rmse_milstein_fs"] = row.rmse_milstein_fs;
            d["rmse_euler"] = row.rmse_euler;
            rows.append(d);
        }
        py::dict out;
        out["rows"] = rows;
        out["slope_milstein_ia"] = r.slope_milstein_ia;
        out["slope_milstein_fs"] = r.slope_milstein_fs;
        out["slope_euler"] = r.slope_euler;
        return out;
    }, py::arg("T") = 1.0, py::arg("h_list"), py::arg("paths") = 1000, py::arg("K") = 2000,
       py::arg("seed") = 20210121);
}
