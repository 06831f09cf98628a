// Command-line front end: Monte Carlo convergence experiments, design
// reports, Lipschitz constants and exact Haar moment operators.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "pfd/catalog.hpp"
#include "pfd/experiment.hpp"
#include "pfd/serialize.hpp"

namespace {

using namespace pfd;

std::vector<SchattenIndex> parse_p_list(const std::vector<std::string>& raw) {
    std::vector<SchattenIndex> out;
    for (const auto& s : raw) out.push_back(SchattenIndex::parse(s));
    if (out.empty()) {
        out = {SchattenIndex(1), SchattenIndex(2), SchattenIndex(3), SchattenIndex::infinity()};
    }
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw io_error("write to '" + path + "' failed");
}

int cmd_mc(int dA, int dB, int t, int n_samples, int n_runs, std::uint64_t seed,
           const std::vector<std::string>& p_raw, const std::vector<int>& checkpoints,
           const std::string& out_path, const std::string& summary_path, bool strict) {
    ExperimentConfig cfg;
    cfg.dA = dA;
    cfg.dB = dB;
    cfg.t = t;
    cfg.n_samples = n_samples;
    cfg.n_runs = n_runs;
    cfg.master_seed = seed;
    cfg.p_list = parse_p_list(p_raw);
    cfg.checkpoints = checkpoints;

    const ExperimentResult result = run_mc_experiment(cfg);

    std::ostringstream csv;
    write_trajectory_csv(csv, result.records);
    if (out_path.empty()) {
        std::cout << csv.str();
    } else {
        write_text(out_path, csv.str());
    }

    const std::string summary = experiment_summary_json(result).dump(2) + "\n";
    if (!summary_path.empty()) {
        write_text(summary_path, summary);
    } else if (!out_path.empty()) {
        std::cout << summary;
    }

    if (strict && result.total_violations() > 0) {
        std::cerr << "bound violations detected: " << result.total_violations() << "\n";
        return 1;
    }
    return 0;
}

int cmd_report(const std::string& path, const std::string& design, int t,
               const std::vector<std::string>& p_raw, std::optional<int> dA,
               std::optional<int> dB, const std::string& out_path) {
    Ensemble e = design.empty() ? load_ensemble(path) : known_design(design);
    const auto p_list = parse_p_list(p_raw);
    const int d = e.dim();

    Json out;
    out["kind"] = to_string(e.kind);
    out["dim"] = d;
    out["t"] = t;
    out["points"] = e.points.size();

    MomentOperator empirical, reference;
    switch (e.kind) {
        case EnsembleKind::pure_state:
            empirical = empirical_moment(e, t);
            reference = haar_projective_moment(d, t);
            out["frame_potential"] = frame_potential(e, t);
            out["welch_gap"] = welch_gap(e, t);
            break;
        case EnsembleKind::probability_vector:
            empirical = empirical_moment(e, t);
            reference = haar_simplex_moment(d, t);
            break;
        case EnsembleKind::density_matrix: {
            if (!dB) {
                throw validation_error(
                    "report: density-matrix ensembles need --dB for the induced-measure reference");
            }
            empirical = empirical_moment(e, t);
            reference = haar_mixed_moment(d, *dB, t);
            break;
        }
        case EnsembleKind::unitary:
            empirical = empirical_channel_moment(e, t);
            reference = haar_unitary_channel_moment(d, t);
            break;
    }

    Json deltas = Json::object();
    for (const auto& p : p_list) deltas[p.str()] = delta(reference, empirical, p);
    out["delta"] = std::move(deltas);

    // Bipartite dims turn the report into a full pushforward certification.
    if (e.kind == EnsembleKind::pure_state && dA && dB) {
        if (*dA * *dB != d) {
            throw validation_error("report: dA*dB must equal the ensemble dimension");
        }
        const auto map = PushforwardMap::ptrace(*dA, *dB, t);
        Json reports = Json::object();
        for (const auto& p : p_list) {
            reports[p.str()] = bound_report_to_json(certify(reference, empirical, map, p));
        }
        out["bound_reports"] = std::move(reports);
    }

    const std::string text = out.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_text(out_path, text);
    }
    return 0;
}

int cmd_bounds(int dA, int dB, int t, const std::vector<std::string>& p_raw,
               const std::string& out_path) {
    const auto p_list = parse_p_list(p_raw);
    Json per_p = Json::object();
    for (const auto& p : p_list) {
        const double obs1 = lipschitz_constant(LipschitzKind::ptrace_naive, dB, t, p);
        const double thm4 = lipschitz_constant(LipschitzKind::ptrace_sym, dB, t, p);
        if (thm4 > obs1 + kBoundTol) {
            throw computation_error("bounds: thm4 exceeds obs1, check sym_dim");
        }
        per_p[p.str()] = {{"simplex", lipschitz_constant(LipschitzKind::simplex, dA * dB, t, p)},
                          {"obs1_naive", obs1},
                          {"thm4_sym", thm4},
                          {"channel", lipschitz_constant(LipschitzKind::channel, dB, t, p)}};
    }
    Json out{{"dA", dA},
             {"dB", dB},
             {"t", t},
             {"sym_dim_A", sym_dim(dA, t)},
             {"sym_dim_B", sym_dim(dB, t)},
             {"constants", std::move(per_p)}};
    const std::string text = out.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_text(out_path, text);
    }
    return 0;
}

int cmd_haar(const std::string& space, std::optional<int> d, std::optional<int> dA,
             std::optional<int> dB, int t, const std::string& out_path) {
    MomentOperator m;
    if (space == "projective" || space == "simplex" || space == "channel") {
        int dim = 0;
        if (d) {
            dim = *d;
        } else if (dA && dB) {
            dim = *dA * *dB;
        } else {
            throw validation_error("haar: give -d, or --dA with --dB");
        }
        if (space == "projective") m = haar_projective_moment(dim, t);
        if (space == "simplex") m = haar_simplex_moment(dim, t);
        if (space == "channel") m = haar_unitary_channel_moment(dim, t);
    } else if (space == "mixed") {
        if (!dA || !dB) throw validation_error("haar: mixed space needs --dA and --dB");
        m = haar_mixed_moment(*dA, *dB, t);
    } else {
        throw validation_error("haar: unknown space '" + space + "'");
    }
    save_moment(m, out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Moment operators, pushforward designs and Lipschitz bound checks"};
    app.require_subcommand(1);

    // mc
    auto* mc = app.add_subcommand("mc", "Monte Carlo convergence experiment (CSV + summary JSON)");
    int dA = 2, dB = 2, t = 2, n_samples = 10'000, n_runs = 100;
    std::uint64_t seed = 0;
    std::vector<std::string> p_raw;
    std::vector<int> checkpoints;
    std::string out_path, summary_path;
    bool strict = false;
    mc->add_option("--dA", dA, "subsystem A dimension")->capture_default_str();
    mc->add_option("--dB", dB, "subsystem B dimension")->capture_default_str();
    mc->add_option("-t,--t", t, "design order")->capture_default_str();
    mc->add_option("-N,--samples", n_samples, "samples per run")->capture_default_str();
    mc->add_option("--runs", n_runs, "independent runs")->capture_default_str();
    mc->add_option("--seed", seed, "master seed")->capture_default_str();
    mc->add_option("--p", p_raw, "norm orders (default 1 2 3 inf)");
    mc->add_option("--checkpoints", checkpoints, "explicit checkpoint sample counts");
    mc->add_option("--out", out_path, "CSV output path (default stdout)");
    mc->add_option("--summary", summary_path, "summary JSON path");
    mc->add_flag("--strict", strict, "exit 1 when any bound is violated");

    // report
    auto* report = app.add_subcommand("report", "delta/frame-potential report for an ensemble");
    std::string ensemble_path, design_name, report_out;
    int report_t = 2;
    std::vector<std::string> report_p;
    int report_dA = 0, report_dB = 0;
    report->add_option("ensemble", ensemble_path, "ensemble JSON file");
    report->add_option("--design", design_name, "catalog design name instead of a file");
    report->add_option("-t,--t", report_t, "design order")->capture_default_str();
    report->add_option("--p", report_p, "norm orders (default 1 2 3 inf)");
    report->add_option("--dA", report_dA, "subsystem A dimension for bound reports");
    report->add_option("--dB", report_dB, "subsystem B dimension for bound reports");
    report->add_option("--out", report_out, "output path (default stdout)");

    // bounds
    auto* bounds = app.add_subcommand("bounds", "Lipschitz constants for all map kinds");
    int b_dA = 2, b_dB = 2, b_t = 2;
    std::vector<std::string> b_p;
    std::string b_out;
    bounds->add_option("--dA", b_dA, "subsystem A dimension")->capture_default_str();
    bounds->add_option("--dB", b_dB, "subsystem B dimension")->capture_default_str();
    bounds->add_option("-t,--t", b_t, "design order")->capture_default_str();
    bounds->add_option("--p", b_p, "norm orders (default 1 2 3 inf)");
    bounds->add_option("--out", b_out, "output path (default stdout)");

    // haar
    auto* haar = app.add_subcommand("haar", "write an exact Haar moment operator as JSON");
    std::string h_space = "projective", h_out;
    int h_d = 0, h_dA = 0, h_dB = 0, h_t = 2;
    haar->add_option("--space", h_space, "projective|simplex|mixed|channel")
        ->capture_default_str();
    haar->add_option("-d,--dim", h_d, "full local dimension");
    haar->add_option("--dA", h_dA, "subsystem A dimension");
    haar->add_option("--dB", h_dB, "subsystem B dimension");
    haar->add_option("-t,--t", h_t, "design order")->capture_default_str();
    haar->add_option("--out", h_out, "output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (mc->parsed()) {
            return cmd_mc(dA, dB, t, n_samples, n_runs, seed, p_raw, checkpoints, out_path,
                          summary_path, strict);
        }
        if (report->parsed()) {
            if (ensemble_path.empty() == design_name.empty()) {
                throw validation_error("report: give an ensemble file or --design, not both");
            }
            return cmd_report(ensemble_path, design_name, report_t, report_p,
                              report_dA > 0 ? std::optional<int>(report_dA) : std::nullopt,
                              report_dB > 0 ? std::optional<int>(report_dB) : std::nullopt,
                              report_out);
        }
        if (bounds->parsed()) return cmd_bounds(b_dA, b_dB, b_t, b_p, b_out);
        if (haar->parsed()) {
            return cmd_haar(h_space, h_d > 0 ? std::optional<int>(h_d) : std::nullopt,
                            h_dA > 0 ? std::optional<int>(h_dA) : std::nullopt,
                            h_dB > 0 ? std::optional<int>(h_dB) : std::nullopt, h_t, h_out);
        }
    } catch (const io_error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 3;
    } catch (const validation_error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}
