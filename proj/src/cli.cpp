#include "bohmcl/cli.hpp"

#include <CLI11.hpp>
#include <array>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "bohmcl/closed_form.hpp"
#include "bohmcl/fields.hpp"
#include "bohmcl/io.hpp"
#include "bohmcl/measures.hpp"
#include "bohmcl/trajectories.hpp"
#include "bohmcl/validation.hpp"

namespace bohmcl::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitValidation = 4;

struct RunConfig {
    std::string scenario_name = "sch";
    double gamma = 0.0;
    double temperature = 0.0;
    double mu = 0.5;
    double t_end = 10.0;
    double dt = 0.01;
    std::uint64_t seed = 12345;
    std::size_t n = 1000;
    bool n_given = false;
    std::string out_path;  // empty = standard output
    std::string svg_path;
    std::string config_path;

    std::vector<double> x10;
    std::vector<double> x20;
    std::vector<double> gamma_list;
    std::vector<double> temp_list;
    std::vector<double> mu_list;

    Scenario scenario() const { return scenario_from_string(scenario_name); }

    PhysParams params() const { return make_params(gamma, temperature, mu); }
};

// Flat key=value config file. Keys are the long option names; values from
// the command line always win.
void apply_config_file(const std::string& path, std::vector<std::string>& args) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open config file '" + path + "'");
    std::set<std::string> given;
    for (const std::string& a : args) {
        if (a.rfind("--", 0) == 0) {
            const auto eq = a.find('=');
            given.insert(eq == std::string::npos ? a.substr(2) : a.substr(2, eq - 2));
        }
    }
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || given.count(key)) continue;
        args.push_back("--" + key + "=" + value);
    }
}

void fill_scenario_defaults(RunConfig& cfg, bool gamma_given, bool temp_given) {
    if (cfg.scenario() != Scenario::Unitary) {
        if (!gamma_given) cfg.gamma = 0.1;
        if (!temp_given) cfg.temperature = 10.0;
    }
}

std::ofstream open_output(const std::string& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ParameterError("cannot open output file '" + path + "'");
    return file;
}

bool to_stdout(const std::string& path) { return path.empty() || path == "-"; }

void emit_svg_for_table(const io::NumericTable& table, const std::string& path) {
    if (table.header.size() < 2 || table.row_count() == 0)
        throw ParameterError("nothing to plot: need at least two columns and one row");
    std::vector<io::Series> series;
    for (std::size_t c = 1; c < table.header.size(); ++c)
        series.push_back({table.header[c], table.columns[0], table.columns[c]});
    std::ofstream svg = open_output(path);
    io::write_polyline_svg(svg, series, table.header.front(),
                           series.size() == 1 ? series.front().label : "value");
}

// SVG output always reflects the CSV numbers exactly: plot from the
// formatted cells, not from the unrounded values.
void emit_svg_for_rows(const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows,
                       const std::string& path) {
    io::NumericTable table;
    table.header = header;
    table.columns.assign(header.size(), {});
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c)
            table.columns[c].push_back(std::stod(row[c]));
    emit_svg_for_table(table, path);
}

// ---------------------------------------------------------------- eta --

int cmd_eta(const RunConfig& cfg, std::ostream& out) {
    const PhysParams params = cfg.params();
    const measures::EtaCurve curve = measures::sample_eta_curve(
        measures::eta_callable(cfg.scenario(), params), cfg.t_end, cfg.dt);

    std::vector<std::vector<std::string>> rows;
    rows.reserve(curve.times.size());
    for (std::size_t k = 0; k < curve.times.size(); ++k)
        rows.push_back({io::format_number(curve.times[k]), io::format_number(curve.values[k])});

    if (to_stdout(cfg.out_path)) {
        io::write_csv(out, {"t", "eta"}, rows);
    } else {
        std::ofstream file = open_output(cfg.out_path);
        io::write_csv(file, {"t", "eta"}, rows);
    }
    if (!cfg.svg_path.empty()) emit_svg_for_rows({"t", "eta"}, rows, cfg.svg_path);
    return kExitOk;
}

// --------------------------------------------------------------- traj --

int cmd_traj(const RunConfig& cfg, std::ostream& out) {
    const PhysParams params = cfg.params();
    std::vector<PositionPair> starts;
    if (!cfg.x10.empty()) {
        for (std::size_t i = 0; i < cfg.x10.size(); ++i) {
            double x2 = 0.0;
            if (cfg.x20.size() == 1)
                x2 = cfg.x20.front();
            else if (cfg.x20.size() == cfg.x10.size())
                x2 = cfg.x20[i];
            else if (!cfg.x20.empty())
                throw ParameterError("--x20 must have one value or match --x10 in length");
            starts.push_back({cfg.x10[i], x2});
        }
    } else if (cfg.n_given) {
        starts = traj::sample_initial(params.mu, cfg.n, cfg.seed).pairs;
    } else {
        throw ParameterError("traj needs initial points (--x10 ...) or an ensemble size (--n)");
    }
    if (starts.empty()) throw ParameterError("no initial points given");

    const auto field = make_velocity_field(cfg.scenario(), params);
    std::vector<traj::Trajectory> trajectories(starts.size());
    traj::parallel_for_indexed(starts.size(), [&](std::size_t i) {
        trajectories[i] = traj::integrate(*field, starts[i].x1, starts[i].x2, cfg.t_end, cfg.dt);
    });

    std::vector<std::string> header{"t"};
    for (std::size_t k = 0; k < starts.size(); ++k) {
        header.push_back("x1_" + std::to_string(k + 1));
        header.push_back("x2_" + std::to_string(k + 1));
    }
    std::vector<std::vector<std::string>> rows;
    const std::size_t steps = trajectories.front().times.size();
    rows.reserve(steps);
    for (std::size_t r = 0; r < steps; ++r) {
        std::vector<std::string> row{io::format_number(trajectories.front().times[r])};
        for (const auto& t : trajectories) {
            row.push_back(io::format_number(t.points[r].x1));
            row.push_back(io::format_number(t.points[r].x2));
        }
        rows.push_back(std::move(row));
    }

    if (to_stdout(cfg.out_path)) {
        io::write_csv(out, header, rows);
    } else {
        std::ofstream file = open_output(cfg.out_path);
        io::write_csv(file, header, rows);
    }
    if (!cfg.svg_path.empty()) emit_svg_for_rows(header, rows, cfg.svg_path);
    return kExitOk;
}

// --------------------------------------------------- fwhm and sweep ----

struct PointAnalytics {
    double t_peak = std::nan("");
    double peak = std::nan("");
    double width = std::nan("");
    std::size_t revivals = 0;
    std::string error;
};

PointAnalytics analyze_point(Scenario scenario, const PhysParams& params, double t_end,
                             double dt) {
    PointAnalytics a;
    try {
        const measures::EtaCurve curve =
            measures::sample_eta_curve(measures::eta_callable(scenario, params), t_end, dt);
        const measures::Peak peak = measures::find_peak(curve);
        a.t_peak = peak.t;
        a.peak = peak.value;
        a.width = measures::fwhm(curve).width;
        a.revivals = measures::find_revivals(curve).size();
    } catch (const NoPeakError& e) {
        a.error = std::string("no-peak: ") + e.what();
    }
    return a;
}

std::vector<std::array<double, 3>> parameter_grid(const RunConfig& cfg, std::ostream& err) {
    std::vector<double> gammas = cfg.gamma_list.empty() ? std::vector<double>{cfg.gamma}
                                                        : cfg.gamma_list;
    std::vector<double> temps =
        cfg.temp_list.empty() ? std::vector<double>{cfg.temperature} : cfg.temp_list;
    std::vector<double> mus = cfg.mu_list.empty() ? std::vector<double>{cfg.mu} : cfg.mu_list;
    std::vector<std::array<double, 3>> grid;
    std::set<std::array<double, 3>> seen;
    for (double g : gammas)
        for (double T : temps)
            for (double m : mus) {
                const std::array<double, 3> point{g, T, m};
                if (!seen.insert(point).second) {
                    err << "warning: duplicate parameter point gamma=" << io::format_number(g)
                        << " temp=" << io::format_number(T) << " mu=" << io::format_number(m)
                        << " skipped\n";
                    continue;
                }
                grid.push_back(point);
            }
    return grid;
}

int cmd_fwhm(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const Scenario scenario = cfg.scenario();
    const auto grid = parameter_grid(cfg, err);
    if (grid.empty()) throw ParameterError("empty parameter grid");

    std::vector<PointAnalytics> analytics(grid.size());
    std::optional<WindowError> window_error;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const PhysParams p = make_params(grid[i][0], grid[i][1], grid[i][2]);
        try {
            analytics[i] = analyze_point(scenario, p, cfg.t_end, cfg.dt);
        } catch (const WindowError& e) {
            window_error = e;
            break;
        }
        if (!analytics[i].error.empty())
            err << "warning: gamma=" << io::format_number(grid[i][0])
                << " temp=" << io::format_number(grid[i][1])
                << " mu=" << io::format_number(grid[i][2]) << ": " << analytics[i].error << "\n";
    }
    if (window_error) throw *window_error;

    const std::vector<std::string> header{"scenario", "gamma", "temp",       "mu",
                                          "t_peak",   "peak",  "fwhm",       "revivals"};
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        rows.push_back({to_string(scenario), io::format_number(grid[i][0]),
                        io::format_number(grid[i][1]), io::format_number(grid[i][2]),
                        io::format_number(analytics[i].t_peak), io::format_number(analytics[i].peak),
                        io::format_number(analytics[i].width),
                        std::to_string(analytics[i].revivals)});
    }
    io::write_csv(out, header, rows);
    if (!to_stdout(cfg.out_path)) {
        std::ofstream file = open_output(cfg.out_path);
        io::write_csv(file, header, rows);
    }
    return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const Scenario scenario = cfg.scenario();
    const auto grid = parameter_grid(cfg, err);
    if (grid.empty()) throw ParameterError("empty parameter grid");

    std::vector<PointAnalytics> analytics(grid.size());
    traj::parallel_for_indexed(grid.size(), [&](std::size_t i) {
        try {
            const PhysParams p = make_params(grid[i][0], grid[i][1], grid[i][2]);
            analytics[i] = analyze_point(scenario, p, cfg.t_end, cfg.dt);
        } catch (const Error& e) {
            analytics[i].error = e.what();
        }
    });

    const std::vector<std::string> header{"scenario", "gamma",    "temp", "mu",   "t_peak",
                                          "peak",     "fwhm",     "revivals",     "error"};
    std::vector<std::vector<std::string>> rows;
    std::size_t succeeded = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (analytics[i].error.empty()) ++succeeded;
        rows.push_back({to_string(scenario), io::format_number(grid[i][0]),
                        io::format_number(grid[i][1]), io::format_number(grid[i][2]),
                        io::format_number(analytics[i].t_peak), io::format_number(analytics[i].peak),
                        io::format_number(analytics[i].width),
                        std::to_string(analytics[i].revivals), analytics[i].error});
    }
    if (to_stdout(cfg.out_path)) {
        io::write_csv(out, header, rows);
    } else {
        std::ofstream file = open_output(cfg.out_path);
        io::write_csv(file, header, rows);
    }
    if (succeeded == 0) throw NumericalError("every sweep point failed");
    return kExitOk;
}

// ---------------------------------------------------------------- misc --

int cmd_validate(std::ostream& out) {
    const auto results = validation::run_all(&out);
    std::size_t passed = 0;
    for (const auto& r : results)
        if (r.pass) ++passed;
    out << passed << "/" << results.size() << " checks passed\n";
    return validation::all_passed(results) ? kExitOk : kExitValidation;
}

int cmd_plot(const std::string& csv_path, const std::string& svg_path) {
    std::ifstream in(csv_path);
    if (!in) throw ParameterError("cannot open CSV file '" + csv_path + "'");
    const io::NumericTable table = io::read_numeric_csv(in);
    emit_svg_for_table(table, svg_path);
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bohmian trajectories and velocity-sensitivity measures for a squeezed pair\n"
                 "under unitary or Caldeira-Leggett open-system dynamics"};
    app.require_subcommand(1);
    app.fallthrough(false);

    RunConfig cfg;
    std::string plot_csv;

    const auto add_common = [&cfg](CLI::App* cmd, bool needs_mu) {
        cmd->add_option("--scenario", cfg.scenario_name, "sch|distinct|common")
            ->check(CLI::IsMember({"sch", "distinct", "common"}));
        cmd->add_option("--gamma", cfg.gamma, "relaxation rate (default 0 for sch, else 0.1)");
        cmd->add_option("--temp", cfg.temperature, "bath temperature (default 0 for sch, else 10)");
        auto* mu = cmd->add_option("--mu", cfg.mu, "squeezing decay factor in (0,1]");
        if (needs_mu) mu->required();
        cmd->add_option("--t-end", cfg.t_end, "time horizon")->capture_default_str();
        cmd->add_option("--dt", cfg.dt, "time step")->capture_default_str();
        cmd->add_option("--seed", cfg.seed, "ensemble RNG seed")->capture_default_str();
        cmd->add_option("--n", cfg.n, "ensemble size")->capture_default_str();
        cmd->add_option("--out", cfg.out_path, "output CSV path (default: standard output)");
        cmd->add_option("--svg", cfg.svg_path, "also write an SVG plot to this path");
        cmd->add_option("--config", cfg.config_path, "flat key=value config file");
    };

    CLI::App* eta = app.add_subcommand("eta", "sample the nonlocality measure eta(t) as CSV");
    add_common(eta, true);

    CLI::App* traj_cmd = app.add_subcommand("traj", "integrate Bohmian trajectories as CSV");
    add_common(traj_cmd, true);
    traj_cmd->add_option("--x10", cfg.x10, "initial positions of particle 1");
    traj_cmd->add_option("--x20", cfg.x20, "initial positions of particle 2 (broadcasts)");

    CLI::App* fwhm_cmd =
        app.add_subcommand("fwhm", "peak/FWHM/revival table over a parameter sweep");
    add_common(fwhm_cmd, false);
    fwhm_cmd->add_option("--mu-list", cfg.mu_list, "sweep values for mu");
    fwhm_cmd->add_option("--temp-list", cfg.temp_list, "sweep values for temperature");
    fwhm_cmd->add_option("--gamma-list", cfg.gamma_list, "sweep values for gamma");
    fwhm_cmd->get_option("--mu")->required();

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "batch analytics over a parameter grid");
    add_common(sweep_cmd, false);
    sweep_cmd->add_option("--mu-list", cfg.mu_list, "sweep values for mu");
    sweep_cmd->add_option("--temp-list", cfg.temp_list, "sweep values for temperature");
    sweep_cmd->add_option("--gamma-list", cfg.gamma_list, "sweep values for gamma");
    sweep_cmd->get_option("--mu")->required();

    CLI::App* validate_cmd =
        app.add_subcommand("validate", "run the full self-validation suite");

    CLI::App* plot_cmd = app.add_subcommand("plot", "render a CSV file as an SVG polyline plot");
    plot_cmd->add_option("csv", plot_csv, "input CSV path")->required();
    plot_cmd->add_option("--svg", cfg.svg_path, "output SVG path")->required();

    std::vector<std::string> argv(args);
    // Honor a config file before parsing; command-line flags win.
    for (std::size_t i = 0; i < argv.size(); ++i) {
        std::string path;
        if (argv[i].rfind("--config=", 0) == 0)
            path = argv[i].substr(9);
        else if (argv[i] == "--config" && i + 1 < argv.size())
            path = argv[i + 1];
        if (!path.empty()) {
            try {
                apply_config_file(path, argv);
            } catch (const Error& e) {
                err << "error: " << e.what() << "\n";
                return kExitUsage;
            }
            break;
        }
    }

    try {
        std::vector<const char*> cargv{"bohmcl"};
        for (const auto& a : argv) cargv.push_back(a.c_str());
        app.parse(int(cargv.size()), cargv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    try {
        if (*eta || *traj_cmd || *fwhm_cmd || *sweep_cmd) {
            CLI::App* active = *eta ? eta : *traj_cmd ? traj_cmd : *fwhm_cmd ? fwhm_cmd : sweep_cmd;
            fill_scenario_defaults(cfg, active->count("--gamma") > 0,
                                   active->count("--temp") > 0);
            cfg.n_given = active->count("--n") > 0;
        }
        if (*eta) return cmd_eta(cfg, out);
        if (*traj_cmd) return cmd_traj(cfg, out);
        if (*fwhm_cmd) return cmd_fwhm(cfg, out, err);
        if (*sweep_cmd) return cmd_sweep(cfg, out, err);
        if (*validate_cmd) return cmd_validate(out);
        if (*plot_cmd) return cmd_plot(plot_csv, cfg.svg_path);
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}

}  // namespace bohmcl::cli
