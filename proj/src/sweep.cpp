#include "lzsm/sweep.hpp"

#include "lzsm/effective.hpp"
#include "lzsm/floquet.hpp"
#include "lzsm/lindblad.hpp"
#include "lzsm/parallel.hpp"
#include "lzsm/svg.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

extern "C" void openblas_set_num_threads(int);

namespace lzsm {

void blas_threads(int n) { openblas_set_num_threads(n < 1 ? 1 : n); }

namespace {

using ojson = nlohmann::ordered_json;

constexpr const char* kVersion = "1.0.0";
constexpr const char* kCsvHeader =
    "axis1,axis2,delta_MHz,zeta_MHz,omega_MHz,F_MHz,n_avg,s21_re,s21_im,s21_abs,"
    "cutoff_used,harmonics_used,status";

std::string g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// error strings are shaped "token: detail"; the CSV status keeps the token
std::string error_token(const char* what) {
    std::string s(what ? what : "unknown");
    size_t cut = s.find(':');
    if (cut != std::string::npos) s = s.substr(0, cut);
    for (char& c : s)
        if (c == ',' || c == '\n' || c == ' ') c = '-';
    if (s.size() > 48) s.resize(48);
    return "error:" + s;
}

double want_number(const ojson& j, const std::string& key) {
    if (!j.at(key).is_number())
        throw std::invalid_argument("config-error: '" + key + "' must be a number");
    return j.at(key).get<double>();
}

int auto_cutoff(const ModelParams& p) {
    auto roots = semiclassical_photon_roots(p);
    double nsc = roots.empty() ? 0.0 : roots.back();
    return std::max(8, static_cast<int>(std::ceil(6.0 * nsc)) + 4);
}

void apply_axis(ModelParams& p, const std::string& name, double v, bool& power_axis,
                double& power_val) {
    if (name == "delta") p.delta = from_mhz(v);
    else if (name == "zeta") p.zeta = from_mhz(v);
    else if (name == "omega_mod") p.omega_mod = from_mhz(v);
    else if (name == "F") p.drive = from_mhz(v);
    else if (name == "power_dBm") { power_axis = true; power_val = v; }
    else throw std::invalid_argument("config-error: unknown axis '" + name + "'");
}

struct PointOutcome {
    double n_avg = std::nan("");
    cplx s21{std::nan(""), std::nan("")};
    int cutoff_used = 0;
    int harmonics_used = 0;
    std::string status = "ok";
};

PointOutcome evaluate_point(const SweepConfig& cfg, const ModelParams& p) {
    PointOutcome out;
    const double nan = std::nan("");
    auto fill_s21 = [&](cplx coherence) {
        if (p.drive > 0.0) out.s21 = s21_from_field(coherence, p.drive, p.kappa_ext);
        else out.s21 = cplx(nan, nan);
    };
    switch (cfg.method) {
        case Method::static_solver: {
            SteadyResult r = cfg.cutoff > 0 ? steady_state(p, cfg.cutoff)
                                            : steady_state_auto(p);
            out.n_avg = r.photon_number;
            fill_s21(r.coherence_a);
            out.cutoff_used = r.cutoff_used;
            if (r.cutoff_warning || !r.converged) out.status = "cutoff-warning";
            break;
        }
        case Method::effective: {
            EffectiveMode mode = effective_mode(p);
            ModelParams q = p;
            q.delta = mode.delta_eff;
            q.drive = std::abs(mode.drive_eff);
            q.zeta = 0.0;
            SteadyResult r = cfg.cutoff > 0 ? steady_state(q, cfg.cutoff)
                                            : steady_state_auto(q);
            out.n_avg = r.photon_number;
            if (q.drive > 0.0 && p.drive > 0.0)
                out.s21 = s21_from_field(r.coherence_a, q.drive, q.kappa_ext);
            else
                out.s21 = cplx(nan, nan);
            out.cutoff_used = r.cutoff_used;
            if (r.cutoff_warning || !r.converged) out.status = "cutoff-warning";
            break;
        }
        case Method::harmonic: {
            int cutoff = cfg.cutoff > 0 ? cfg.cutoff : auto_cutoff(p);
            HarmonicState h = harmonic_steady_state(p, cutoff, cfg.harmonics);
            HarmonicObservables obs = time_averaged_observables(h, p);
            out.n_avg = obs.photon_number;
            out.s21 = p.drive > 0.0 ? obs.s21 : cplx(nan, nan);
            out.cutoff_used = cutoff;
            out.harmonics_used = h.M;
            if (obs.cutoff_warning || !h.boundary_ok) out.status = "cutoff-warning";
            break;
        }
        case Method::floquet: {
            int cutoff = cfg.cutoff > 0 ? cfg.cutoff : auto_cutoff(p);
            FloquetMap fm = floquet_map(p, cutoff, cfg.map_steps, cfg.map_tol);
            FloquetSpectrum sp = floquet_liouvillian(fm);
            CMat avg = period_average(p, sp.rho_ss, 0.0);
            out.n_avg = expect(number(cutoff), avg).real();
            fill_s21(expect(destroy(cutoff), avg));
            out.cutoff_used = cutoff;
            if (top_two_population(avg) > 1e-6) out.status = "cutoff-warning";
            break;
        }
    }
    return out;
}

std::vector<cplx> read_eigenvalue_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("config-error: cannot open eigenvalue file " + path);
    std::string line;
    std::vector<cplx> vals;
    bool first = true;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line.rfind("re", 0) == 0) continue;  // header
        }
        double re, im;
        if (std::sscanf(line.c_str(), "%lf,%lf", &re, &im) != 2)
            throw std::invalid_argument("config-error: bad eigenvalue row '" + line + "'");
        vals.emplace_back(re, im);
    }
    if (vals.size() < 3)
        throw std::invalid_argument("config-error: eigenvalue file has fewer than 3 rows");
    return vals;
}

void write_metadata(const std::string& out_dir, const SweepConfig& cfg, size_t rows,
                    size_t failed, double wall_s) {
    ojson meta;
    meta["schema_version"] = cfg.schema_version;
    meta["task"] = cfg.task;
    meta["seed"] = cfg.seed;
    meta["rows"] = rows;
    meta["failed"] = failed;
    meta["wall_time_s"] = wall_s;
    meta["versions"] = {{"lzsm", kVersion},
                        {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                      std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                      std::to_string(EIGEN_MINOR_VERSION)}};
    meta["config"] = cfg.config_echo.empty() ? ojson::object()
                                             : ojson::parse(cfg.config_echo);
    std::ofstream f(out_dir + "/metadata.json");
    f << meta.dump(2) << '\n';
}

} // namespace

SweepConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("config-error: cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();

    ojson j;
    try {
        j = ojson::parse(ss.str());
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("config-error: invalid JSON: ") + e.what());
    }

    static const std::set<std::string> known_keys = {
        "schema_version", "task", "device", "delta", "zeta", "omega_mod", "F",
        "power_dBm", "axes", "method", "cutoff", "harmonics", "map_steps",
        "map_tol", "seed", "chaos", "output"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known_keys.count(it.key()))
            throw std::invalid_argument("config-error: unknown key '" + it.key() + "'");

    SweepConfig cfg;
    cfg.config_echo = ss.str();

    if (!j.contains("schema_version") || !j["schema_version"].is_number_integer() ||
        j["schema_version"].get<int>() != 1)
        throw std::invalid_argument("config-error: schema_version must be 1");

    if (j.contains("task")) {
        cfg.task = j["task"].get<std::string>();
        if (cfg.task != "spectro" && cfg.task != "lzsm" && cfg.task != "chaos")
            throw std::invalid_argument("config-error: task must be spectro, lzsm or chaos");
    }

    if (!j.contains("device"))
        throw std::invalid_argument("config-error: missing 'device'");
    const ojson& dev = j["device"];
    if (dev.is_string()) {
        std::string name = dev.get<std::string>();
        if (name == "KERR10") cfg.base = kerr10();
        else if (name == "KERR10_CHI5") cfg.base = kerr10_with_chi5();
        else if (name == "DUFFING32") cfg.base = duffing32();
        else
            throw std::invalid_argument("config-error: unknown device preset '" + name +
                                        "' (KERR10, KERR10_CHI5, DUFFING32)");
    } else if (dev.is_object()) {
        static const std::set<std::string> dev_keys = {
            "chi", "chi5", "kappa_int", "kappa_ext", "kappa_phi", "omega_wp"};
        for (auto it = dev.begin(); it != dev.end(); ++it)
            if (!dev_keys.count(it.key()))
                throw std::invalid_argument("config-error: unknown device key '" + it.key() + "'");
        for (const char* req : {"chi", "kappa_int", "kappa_ext", "kappa_phi", "omega_wp"})
            if (!dev.contains(req))
                throw std::invalid_argument(std::string("config-error: device block missing '") +
                                            req + "'");
        cfg.base.chi = from_mhz(want_number(dev, "chi"));
        cfg.base.chi5 = dev.contains("chi5") ? from_mhz(want_number(dev, "chi5")) : 0.0;
        cfg.base.kappa_int = from_mhz(want_number(dev, "kappa_int"));
        cfg.base.kappa_ext = from_mhz(want_number(dev, "kappa_ext"));
        cfg.base.kappa_phi = from_mhz(want_number(dev, "kappa_phi"));
        cfg.base.omega_d = from_mhz(want_number(dev, "omega_wp"));
    } else {
        throw std::invalid_argument("config-error: 'device' must be a preset name or a block");
    }

    if (j.contains("delta")) cfg.base.delta = from_mhz(want_number(j, "delta"));
    if (j.contains("zeta")) cfg.base.zeta = from_mhz(want_number(j, "zeta"));
    if (j.contains("omega_mod")) cfg.base.omega_mod = from_mhz(want_number(j, "omega_mod"));
    if (j.contains("F") && j.contains("power_dBm"))
        throw std::invalid_argument("config-error: give either 'F' or 'power_dBm', not both");
    if (j.contains("F")) cfg.base.drive = from_mhz(want_number(j, "F"));
    if (j.contains("power_dBm")) {
        cfg.power_dbm = want_number(j, "power_dBm");
        cfg.has_power = true;
    }

    if (j.contains("axes")) {
        if (!j["axes"].is_array() || j["axes"].empty() || j["axes"].size() > 2)
            throw std::invalid_argument("config-error: 'axes' must hold one or two entries");
        std::set<std::string> seen;
        for (const auto& a : j["axes"]) {
            Axis ax;
            ax.name = a.at("name").get<std::string>();
            static const std::set<std::string> axis_names = {"delta", "zeta", "omega_mod",
                                                             "F", "power_dBm"};
            if (!axis_names.count(ax.name))
                throw std::invalid_argument("config-error: unknown axis '" + ax.name + "'");
            if (!seen.insert(ax.name).second)
                throw std::invalid_argument("config-error: duplicate axis '" + ax.name + "'");
            ax.min = want_number(a, "min");
            ax.max = want_number(a, "max");
            ax.points = a.at("points").get<int>();
            if (ax.points < 1)
                throw std::invalid_argument("config-error: axis points must be >= 1");
            if (ax.min > ax.max)
                throw std::invalid_argument("config-error: axis min must be <= max");
            cfg.axes.push_back(ax);
        }
    }
    if (cfg.axes.empty() && cfg.task != "chaos")
        throw std::invalid_argument("config-error: sweep tasks need at least one axis");

    if (j.contains("method")) {
        std::string m = j["method"].get<std::string>();
        if (m == "static") cfg.method = Method::static_solver;
        else if (m == "harmonic") cfg.method = Method::harmonic;
        else if (m == "effective") cfg.method = Method::effective;
        else if (m == "floquet-map" || m == "floquet") cfg.method = Method::floquet;
        else
            throw std::invalid_argument(
                "config-error: method must be static, harmonic, effective or floquet-map");
    }

    auto int_or_auto = [&](const char* key, int floor_val) -> int {
        if (!j.contains(key)) return 0;
        if (j[key].is_string()) {
            if (j[key].get<std::string>() == "auto") return 0;
            throw std::invalid_argument(std::string("config-error: '") + key +
                                        "' must be an integer or \"auto\"");
        }
        int v = j[key].get<int>();
        if (v < floor_val)
            throw std::invalid_argument(std::string("config-error: '") + key + "' below " +
                                        std::to_string(floor_val));
        return v;
    };
    cfg.cutoff = int_or_auto("cutoff", 2);
    cfg.harmonics = int_or_auto("harmonics", 1);

    if (j.contains("map_steps")) {
        cfg.map_steps = j["map_steps"].get<int>();
        if (cfg.map_steps < 2)
            throw std::invalid_argument("config-error: map_steps must be >= 2");
    }
    if (j.contains("map_tol")) {
        cfg.map_tol = want_number(j, "map_tol");
        if (cfg.map_tol <= 0)
            throw std::invalid_argument("config-error: map_tol must be > 0");
    }
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("output")) cfg.output = j["output"].get<std::string>();

    if (j.contains("chaos")) {
        const ojson& c = j["chaos"];
        static const std::set<std::string> chaos_keys = {
            "source", "file", "rmt_n", "rmt_samples", "k_local", "bins",
            "half_plane", "ssqt"};
        for (auto it = c.begin(); it != c.end(); ++it)
            if (!chaos_keys.count(it.key()))
                throw std::invalid_argument("config-error: unknown chaos key '" + it.key() + "'");
        if (c.contains("source")) cfg.chaos.source = c["source"].get<std::string>();
        if (cfg.chaos.source != "floquet" && cfg.chaos.source != "ginibre" &&
            cfg.chaos.source != "uniform" && cfg.chaos.source != "file")
            throw std::invalid_argument(
                "config-error: chaos source must be floquet, ginibre, uniform or file");
        if (c.contains("file")) cfg.chaos.file = c["file"].get<std::string>();
        if (cfg.chaos.source == "file" && cfg.chaos.file.empty())
            throw std::invalid_argument("config-error: chaos source 'file' needs 'file'");
        if (c.contains("rmt_n")) cfg.chaos.rmt_n = c["rmt_n"].get<int>();
        if (c.contains("rmt_samples")) cfg.chaos.rmt_samples = c["rmt_samples"].get<int>();
        if (cfg.chaos.rmt_n < 8 || cfg.chaos.rmt_samples < 1)
            throw std::invalid_argument("config-error: rmt_n >= 8 and rmt_samples >= 1");
        if (c.contains("k_local")) cfg.chaos.k_local = c["k_local"].get<int>();
        if (cfg.chaos.k_local < 5)
            throw std::invalid_argument("config-error: k_local must be >= 5");
        if (c.contains("bins")) cfg.chaos.bins = c["bins"].get<int>();
        if (cfg.chaos.bins < 1)
            throw std::invalid_argument("config-error: bins must be >= 1");
        if (c.contains("half_plane")) cfg.chaos.half_plane = c["half_plane"].get<bool>();
        if (c.contains("ssqt")) cfg.chaos.run_ssqt = c["ssqt"].get<bool>();
    }

    // a static solve cannot host a modulation drive
    if (cfg.method == Method::static_solver) {
        bool zeta_swept = false;
        for (const auto& a : cfg.axes)
            if (a.name == "zeta" && (a.min != 0.0 || a.max != 0.0)) zeta_swept = true;
        if (cfg.base.zeta != 0.0 || zeta_swept)
            throw std::invalid_argument(
                "config-error: method 'static' requires zeta = 0 (use harmonic or floquet-map)");
    }

    cfg.base.validate();
    return cfg;
}

RunResult run(const SweepConfig& cfg, const std::string& out_dir, int jobs) {
    auto t_start = std::chrono::steady_clock::now();
    std::filesystem::create_directories(out_dir);

    if (cfg.axes.empty() || cfg.axes.size() > 2)
        return {{}, 2, "refused: sweep needs one or two axes"};

    const int n1 = cfg.axes[0].points;
    const int n2 = cfg.axes.size() > 1 ? cfg.axes[1].points : 1;
    RunResult res;
    res.rows.resize(static_cast<size_t>(n1) * n2);

    if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
    // single-threaded BLAS while points evaluate, whatever the worker count:
    // the CSV bytes must not depend on --jobs
    blas_threads(1);

    parallel_for(res.rows.size(), jobs, [&](size_t flat) {
        int i1 = static_cast<int>(flat) / n2;
        int i2 = static_cast<int>(flat) % n2;
        SweepRow& row = res.rows[flat];
        row.axis1 = cfg.axes[0].value(i1);
        row.axis2 = cfg.axes.size() > 1 ? cfg.axes[1].value(i2) : 0.0;

        ModelParams p = cfg.base;
        bool power_axis = cfg.has_power;
        double power_val = cfg.power_dbm;
        try {
            apply_axis(p, cfg.axes[0].name, row.axis1, power_axis, power_val);
            if (cfg.axes.size() > 1)
                apply_axis(p, cfg.axes[1].name, row.axis2, power_axis, power_val);
            if (power_axis)
                p.drive = drive_from_power(power_val, p.kappa_ext, p.omega_d + p.delta);
            row.delta_mhz = to_mhz(p.delta);
            row.zeta_mhz = to_mhz(p.zeta);
            row.omega_mhz = to_mhz(p.omega_mod);
            row.f_mhz = to_mhz(p.drive);

            PointOutcome out = evaluate_point(cfg, p);
            row.n_avg = out.n_avg;
            row.s21 = out.s21;
            row.cutoff_used = out.cutoff_used;
            row.harmonics_used = out.harmonics_used;
            row.status = out.status;
        } catch (const std::exception& e) {
            row.n_avg = std::nan("");
            row.s21 = cplx(std::nan(""), std::nan(""));
            row.status = error_token(e.what());
        }
    });
    blas_threads(static_cast<int>(std::thread::hardware_concurrency()));

    size_t failed = 0;
    for (const auto& r : res.rows)
        if (r.status.rfind("error", 0) == 0) ++failed;

    {
        std::ofstream csv(out_dir + "/results.csv");
        csv << kCsvHeader << '\n';
        for (const auto& r : res.rows) {
            csv << g12(r.axis1) << ',' << g12(r.axis2) << ',' << g12(r.delta_mhz) << ','
                << g12(r.zeta_mhz) << ',' << g12(r.omega_mhz) << ',' << g12(r.f_mhz) << ','
                << g12(r.n_avg) << ',' << g12(r.s21.real()) << ',' << g12(r.s21.imag())
                << ',' << g12(std::abs(r.s21)) << ',' << r.cutoff_used << ','
                << r.harmonics_used << ',' << r.status << '\n';
        }
    }

    // plot |S21| when a drive tone is present everywhere, photon number otherwise
    bool use_s21 = true;
    for (const auto& r : res.rows)
        if (r.status.rfind("error", 0) != 0 && !std::isfinite(std::abs(r.s21)))
            use_s21 = false;
    auto value_of = [&](const SweepRow& r) {
        return use_s21 ? std::abs(r.s21) : r.n_avg;
    };
    std::string value_label = use_s21 ? "|S21|" : "n_avg";

    if (cfg.axes.size() == 2) {
        std::vector<double> xs(n1), ys(n2);
        for (int i = 0; i < n1; ++i) xs[i] = cfg.axes[0].value(i);
        for (int i = 0; i < n2; ++i) ys[i] = cfg.axes[1].value(i);
        Eigen::MatrixXd vals(n2, n1);
        for (int i1 = 0; i1 < n1; ++i1)
            for (int i2 = 0; i2 < n2; ++i2)
                vals(i2, i1) = value_of(res.rows[static_cast<size_t>(i1) * n2 + i2]);
        svg::heatmap(out_dir + "/heatmap.svg", xs, ys, vals, cfg.axes[0].name,
                     cfg.axes[1].name, value_label);
    } else {
        std::vector<double> xs(n1), ys(n1);
        for (int i = 0; i < n1; ++i) {
            xs[i] = cfg.axes[0].value(i);
            ys[i] = value_of(res.rows[static_cast<size_t>(i)]);
        }
        svg::curve(out_dir + "/curves.svg", xs, ys, cfg.axes[0].name, value_label,
                   cfg.task);
    }

    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    write_metadata(out_dir, cfg, res.rows.size(), failed, wall);

    if (failed * 10 > res.rows.size()) {
        res.exit_code = 1;
        res.message = "degraded: " + std::to_string(failed) + " of " +
                      std::to_string(res.rows.size()) + " points failed";
    } else {
        res.message = "ok: " + std::to_string(res.rows.size()) + " points, " +
                      std::to_string(failed) + " failed";
    }
    return res;
}

RunResult chaos_run(const SweepConfig& cfg, const std::string& out_dir, int jobs, bool force) {
    auto t_start = std::chrono::steady_clock::now();
    (void)jobs;  // the chaos pipeline is serial by design (deterministic output)
    std::filesystem::create_directories(out_dir);
    RunResult res;

    std::vector<cplx> all_values;           // written to eigenvalues.csv
    std::vector<std::vector<cplx>> sets;    // statistics computed per set, pooled
    bool liouvillian_source = false;
    FloquetSpectrum spectrum;

    const ChaosConfig& ch = cfg.chaos;
    if (ch.source == "floquet") {
        liouvillian_source = true;
        int cutoff = cfg.cutoff > 0 ? cfg.cutoff : auto_cutoff(cfg.base);
        if (cutoff > 48 && !force) {
            double d2 = static_cast<double>(cutoff) * cutoff;
            double est_min = 12.0 * std::pow(d2 / 900.0, 3.0);
            res.exit_code = 2;
            res.message = "refused: cutoff " + std::to_string(cutoff) +
                          " means a " + std::to_string(static_cast<long>(d2)) + "^2 map (~" +
                          std::to_string(static_cast<long>(std::ceil(est_min))) +
                          " min per map on one core); rerun with --force to proceed";
            return res;
        }
        FloquetMap fm = floquet_map(cfg.base, cutoff, cfg.map_steps, cfg.map_tol);
        spectrum = floquet_liouvillian(fm);
        std::vector<cplx> evals;
        for (long j = 0; j < spectrum.eigenvalues.size(); ++j) {
            cplx l = spectrum.eigenvalues(j);
            if (std::isfinite(l.real()) && std::isfinite(l.imag())) evals.push_back(l);
        }
        all_values = evals;
        if (ch.half_plane) {
            std::vector<cplx> upper;
            for (const cplx& l : evals)
                if (l.imag() > 0.0) upper.push_back(l);
            sets.push_back(std::move(upper));
        } else {
            sets.push_back(std::move(evals));
        }
    } else if (ch.source == "ginibre") {
        for (int s = 0; s < ch.rmt_samples; ++s) {
            auto ev = ginibre_sample(ch.rmt_n, cfg.seed + static_cast<std::uint64_t>(s));
            all_values.insert(all_values.end(), ev.begin(), ev.end());
            sets.push_back(std::move(ev));
        }
    } else if (ch.source == "uniform") {
        for (int s = 0; s < ch.rmt_samples; ++s) {
            auto ev = uniform_sample(ch.rmt_n, cfg.seed + static_cast<std::uint64_t>(s));
            all_values.insert(all_values.end(), ev.begin(), ev.end());
            sets.push_back(std::move(ev));
        }
    } else {  // file
        auto ev = read_eigenvalue_csv(ch.file);
        all_values = ev;
        sets.push_back(std::move(ev));
    }

    {
        std::ofstream f(out_dir + "/eigenvalues.csv");
        f << "re,im\n";
        for (const cplx& v : all_values)
            f << g12(v.real()) << ',' << g12(v.imag()) << '\n';
    }
    {
        std::vector<double> re(all_values.size()), im(all_values.size());
        for (size_t i = 0; i < all_values.size(); ++i) {
            re[i] = all_values[i].real();
            im[i] = all_values[i].imag();
        }
        svg::scatter(out_dir + "/cloud.svg", re, im, "spectrum (" + ch.source + ")");
    }

    // pooled statistics: CSR per set, with the synthetic ensembles averaged
    // over their bulk only (the support boundary biases the angle statistics);
    // local unfolding per set with edge exclusion
    std::function<bool(const cplx&)> in_bulk;
    std::string bulk_desc = "none";
    if (ch.source == "ginibre") {
        in_bulk = [](const cplx& v) { return std::abs(v) <= 0.85; };
        bulk_desc = "disk |z| <= 0.85";
    } else if (ch.source == "uniform") {
        in_bulk = [](const cplx& v) {
            return std::min({v.real(), 1.0 - v.real(), v.imag(), 1.0 - v.imag()}) >= 0.08;
        };
        bulk_desc = "square margin 0.08";
    } else {
        in_bulk = [](const cplx&) { return true; };
    }
    double r_sum = 0.0, cos_sum = 0.0;
    long z_count = 0, degenerate = 0;
    std::vector<double> unfolded_pool, raw_pool;
    std::vector<char> edge_pool;
    long edge_count = 0;
    std::string stats_error;
    for (const auto& set : sets) {
        try {
            // neighbors come from the whole set; for Ginibre the averages are
            // restricted to the bulk so the spectral edge does not bias them
            CsrStats cs = complex_spacing_ratio(set);
            double r, c;
            long cnt;
            cs.restricted_means([&](int j) { return in_bulk(set[j]); }, r, c, cnt);
            r_sum += r * static_cast<double>(cnt);
            cos_sum += c * static_cast<double>(cnt);
            z_count += cnt;
            degenerate += cs.degenerate;

            UnfoldResult uf = unfold(set, ch.k_local);
            for (size_t i = 0; i < uf.unfolded.size(); ++i) {
                raw_pool.push_back(uf.raw[i]);
                edge_pool.push_back(uf.edge[i]);
                if (uf.edge[i]) { ++edge_count; continue; }
                unfolded_pool.push_back(uf.unfolded[i]);
            }
        } catch (const std::exception& e) {
            stats_error = e.what();
        }
    }

    {
        std::ofstream f(out_dir + "/spacings.csv");
        f << "raw,unfolded,edge\n";
        size_t u = 0;
        for (size_t i = 0; i < raw_pool.size(); ++i) {
            double unf = edge_pool[i] ? std::nan("") : unfolded_pool[u++];
            f << g12(raw_pool[i]) << ',' << g12(unf) << ',' << int(edge_pool[i]) << '\n';
        }
    }

    ojson csr_json;
    csr_json["source"] = ch.source;
    csr_json["eigenvalues"] = all_values.size();
    csr_json["sets"] = sets.size();
    csr_json["half_plane"] = liouvillian_source ? ch.half_plane : false;
    csr_json["bulk_filter"] = bulk_desc;
    csr_json["csr_count"] = z_count;
    csr_json["degenerate"] = degenerate;
    csr_json["edge_excluded"] = edge_count;
    csr_json["r_mean"] = z_count > 0 ? r_sum / z_count : 0.0;
    csr_json["cos_theta_mean"] = z_count > 0 ? cos_sum / z_count : 0.0;
    csr_json["minus_cos_theta_mean"] = z_count > 0 ? -cos_sum / z_count : 0.0;

    if (unfolded_pool.size() >= 100) {
        HistogramResult hist = histogram_and_distance(unfolded_pool, ch.bins);
        csr_json["ks_poisson"] = hist.ks_poisson;
        csr_json["ks_ginibre"] = hist.ks_ginibre;

        std::vector<svg::OverlayCurve> refs(2);
        refs[0].color = "#1f77b4";
        refs[0].label = "2D Poisson";
        refs[1].color = "#d62728";
        refs[1].label = "Ginibre";
        for (double s = 0.0; s <= hist.edges.back(); s += 0.01) {
            refs[0].xs.push_back(s);
            refs[0].ys.push_back(poisson2d_pdf(s));
            refs[1].xs.push_back(s);
            refs[1].ys.push_back(ginibre_pdf(s));
        }
        svg::histogram(out_dir + "/histogram.svg", hist.edges, hist.density, refs,
                       "unfolded spacing s", "p(s)", "spacing statistics (" + ch.source + ")");
    } else {
        csr_json["note"] = "too few non-edge spacings for a histogram";
        if (!stats_error.empty()) csr_json["stats_error"] = stats_error;
    }
    {
        std::ofstream f(out_dir + "/csr.json");
        f << csr_json.dump(2) << '\n';
    }

    if (liouvillian_source && ch.run_ssqt) {
        SsqtResult sr = ssqt(spectrum);
        ojson sj;
        sj["weighted_cos_theta"] = sr.weighted_cos_theta;
        sj["minus_weighted_cos_theta"] = -sr.weighted_cos_theta;
        sj["weighted_r"] = sr.weighted_r;
        sj["c_min"] = sr.c_min;
        sj["excluded_outliers"] = sr.excluded_outliers;
        sj["retained_weight"] = sr.retained_weight;
        sj["steady_purity"] = purity(spectrum.rho_ss);
        sj["states"] = ojson::array();
        for (const auto& st : sr.states)
            sj["states"].push_back({{"p", st.p},
                                    {"selected", st.selected},
                                    {"r_mean", st.r_mean},
                                    {"cos_theta_mean", st.cos_theta_mean}});
        std::ofstream f(out_dir + "/ssqt.json");
        f << sj.dump(2) << '\n';
    }

    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    write_metadata(out_dir, cfg, all_values.size(), 0, wall);
    res.message = "ok: " + std::to_string(all_values.size()) + " eigenvalues";
    return res;
}

} // namespace lzsm
