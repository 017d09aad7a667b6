#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "carl/carleman_dae.hpp"
#include "carl/carleman_ode.hpp"
#include "carl/fixtures.hpp"
#include "carl/io.hpp"
#include "carl/sim.hpp"
#include "carl/spectral.hpp"

namespace {

using nlohmann::json;

struct Options {
    std::string fixture;
    std::string model_path;
    std::string reference_path;
    int order = 2;
    double T = 10.0;
    double dt = 0.01;
    std::vector<double> x0;
    std::string out_dir;
    std::string format = "csv";
    bool lifted = false;
    bool compare_spectrum = false;
};

carl::ModelSpec load_model(const Options& opt) {
    if (!opt.fixture.empty() && !opt.model_path.empty())
        throw std::invalid_argument("give either --fixture or --model, not both");
    if (!opt.fixture.empty()) return carl::fixture_model(opt.fixture);
    if (!opt.model_path.empty()) return carl::parse_model(carl::read_file(opt.model_path));
    throw std::invalid_argument("one of --fixture or --model is required");
}

std::string render(const carl::Matrix& m, const Options& opt) {
    return opt.format == "json" ? carl::matrix_to_json(m) : carl::matrix_to_csv(m);
}

void emit(const carl::Matrix& m, const Options& opt, const std::string& stem) {
    if (opt.out_dir.empty()) {
        std::cout << render(m, opt);
        return;
    }
    std::filesystem::create_directories(opt.out_dir);
    std::string ext = opt.format == "json" ? ".json" : ".csv";
    carl::write_file(opt.out_dir + "/" + stem + ext, render(m, opt));
}

json eq_json(const carl::Equilibrium& eq) {
    return json{{"x_sep", eq.x_sep},
                {"z_sep", eq.z_sep},
                {"residual_norm", eq.residual_norm},
                {"newton_iters", eq.newton_iters}};
}

/// Base matrices A_{1,k} of a pure-ODE model's lifted system.
std::vector<carl::Matrix> ode_base_row(const carl::CoefficientSet& c, int order) {
    std::vector<carl::Matrix> a1(static_cast<std::size_t>(order) + 1);
    for (int k = 1; k <= order; ++k) a1[static_cast<std::size_t>(k)] = c.G[k];
    return a1;
}

/// First-order state matrix G11 - G14 H14^{-1} H11 (G11 when there are no constraints).
carl::Matrix first_order_matrix(const carl::CoefficientSet& c) {
    if (c.M == 0) return c.G[1];
    return c.G[1] - c.G[4] * carl::lu_solve(carl::lu_factor(c.H[4]), c.H[1]);
}

/// Lifted model matrix at the given order: A_nord for pure ODEs, condensed-free
/// F~11 for DAEs (order 1 collapses to the first-order matrix in both cases).
carl::Matrix lifted_matrix(const carl::ModelSpec& model, const carl::CoefficientSet& c,
                           int order) {
    if (order == 1) return first_order_matrix(c);
    if (model.n_algebraics() == 0)
        return carl::build_extended_ode(ode_base_row(c, order), c.N, order).a_nord;
    carl::GBlocks gb = carl::build_g_blocks(c, order);
    carl::HBlocks hb = carl::build_h_blocks(c, order);
    return carl::kron_reduce(carl::assemble(c, gb, hb, order)).ftilde11;
}

std::vector<double> default_perturbation(const Options& opt, std::size_t n) {
    if (opt.x0.empty()) return std::vector<double>(n, -0.05);
    if (opt.x0.size() != n)
        throw std::invalid_argument("--x0 must list one perturbation per state");
    return opt.x0;
}

int run_check(const Options& opt) {
    carl::ModelSpec model = load_model(opt);
    carl::Equilibrium eq = carl::find_equilibrium(model);
    carl::CoefficientSet c = carl::coefficient_matrices(model, eq);
    json out;
    out["name"] = model.name;
    out["equilibrium"] = eq_json(eq);
    out["det_H14"] = c.det_H14;
    out["regular"] = c.det_H14 != 0.0;
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_coeffs(const Options& opt) {
    carl::ModelSpec model = load_model(opt);
    carl::Equilibrium eq = carl::find_equilibrium(model);
    carl::CoefficientSet c = carl::coefficient_matrices(model, eq);
    Options dir_opt = opt;
    if (dir_opt.out_dir.empty()) dir_opt.out_dir = ".";
    for (int j = 1; j <= 9; ++j) {
        emit(c.G[j], dir_opt, "G_1_" + std::to_string(j));
        emit(c.H[j], dir_opt, "H_1_" + std::to_string(j));
    }
    carl::write_file(dir_opt.out_dir + "/equilibrium.json", eq_json(eq).dump(2) + "\n");
    std::cerr << "wrote 18 coefficient blocks and equilibrium.json to " << dir_opt.out_dir
              << "\n";
    return 0;
}

int run_build_ode(const Options& opt) {
    carl::ModelSpec model = load_model(opt);
    if (model.n_algebraics() != 0)
        throw std::invalid_argument(
            "build-ode expects a pure ODE model (no algebraics); use build-dae");
    carl::Equilibrium eq = carl::find_equilibrium(model);
    carl::CoefficientSet c = carl::coefficient_matrices(model, eq);
    carl::CarlemanOdeSystem sys = carl::build_extended_ode(ode_base_row(c, opt.order), c.N,
                                                           opt.order);
    emit(sys.a_nord, opt, "A_nord");
    return 0;
}

int run_build_dae(const Options& opt) {
    carl::ModelSpec model = load_model(opt);
    carl::Equilibrium eq = carl::find_equilibrium(model);
    carl::CoefficientSet c = carl::coefficient_matrices(model, eq);
    carl::CarlemanDaeSystem sys =
        carl::assemble(c, carl::build_g_blocks(c, opt.order), carl::build_h_blocks(c, opt.order),
                       opt.order);
    Options dir_opt = opt;
    if (dir_opt.out_dir.empty()) dir_opt.out_dir = ".";
    emit(sys.F11, dir_opt, "F11");
    emit(sys.F12, dir_opt, "F12");
    emit(sys.F21, dir_opt, "F21");
    emit(sys.F22, dir_opt, "F22");
    std::cerr << "wrote F11, F12, F21, F22 to " << dir_opt.out_dir << "\n";
    return 0;
}

int run_reduce(const Options& opt) {
    carl::ModelSpec model = load_model(opt);
    carl::Equilibrium eq = carl::find_equilibrium(model);
    carl::CoefficientSet c = carl::coefficient_matrices(model, eq);
    carl::CarlemanDaeSystem sys =
        carl::assemble(c, carl::build_g_blocks(c, opt.order), carl::build_h_blocks(c, opt.order),
                       opt.order);
    carl::ReducedOde red = carl::kron_reduce(sys);
    if (opt.out_dir.empty()) {
        std::cout << render(red.ftilde11, opt);
    } else {
        emit(red.ftilde11, opt, "Ftilde11");
        for (std::size_t j = 0; j < red.htilde.size(); ++j)
            emit(red.htilde[j], opt, "Htilde_1_" + std::to_string(j + 1));
        json diag{{"det_H14", red.det_H14},
                  {"det_F22", red.det_F22},
                  {"cond_F22", red.cond_F22}};
        carl::write_file(opt.out_dir + "/diagnostics.json", diag.dump(2) + "\n");
    }
    return 0;
}

int run_simulate(const Options& opt) {
    carl::ModelSpec model = load_model(opt);
    carl::Equilibrium eq = carl::find_equilibrium(model);
    std::vector<double> dx0 = default_perturbation(opt, model.n_states());
    std::vector<double> x0(eq.x_sep);
    for (std::size_t i = 0; i < x0.size(); ++i) x0[i] += dx0[i];

    carl::Trajectory tr;
    if (opt.lifted) {
        carl::CoefficientSet c = carl::coefficient_matrices(model, eq);
        carl::Matrix a = lifted_matrix(model, c, opt.order);
        tr = carl::simulate_linear(a, dx0, eq.x_sep, opt.order, opt.T, opt.dt);
    } else {
        tr = carl::simulate_dae(model, x0, eq.z_sep, opt.T, opt.dt);
    }
    std::string csv = carl::trajectory_to_csv(tr);
    if (opt.out_dir.empty()) {
        std::cout << csv;
    } else {
        std::filesystem::create_directories(opt.out_dir);
        carl::write_file(opt.out_dir + "/trajectory.csv", csv);
    }
    return 0;
}

int run_spectrum(const Options& opt) {
    carl::ModelSpec model = load_model(opt);
    carl::Equilibrium eq = carl::find_equilibrium(model);
    carl::CoefficientSet c = carl::coefficient_matrices(model, eq);

    carl::Matrix a = lifted_matrix(model, c, opt.order);
    std::vector<carl::Complex> eigs;
    if (opt.order == 1) {
        eigs = carl::eigenvalues(a);
    } else {
        carl::MonomialBasis basis = carl::MonomialBasis::lifted_state(c.N, opt.order);
        eigs = carl::eigenvalues(carl::condense(a, basis, basis).matrix);
    }
    carl::SpectrumReport rep = carl::mode_report(eigs, model.name);

    json out;
    out["source"] = rep.source;
    out["order"] = opt.order;
    for (const carl::Mode& m : rep.modes) {
        json jm{{"re", m.eigenvalue.real()}, {"im", m.eigenvalue.imag()},
                {"damping", m.damping}};
        if (m.frequency_hz) jm["frequency_hz"] = *m.frequency_hz;
        out["modes"].push_back(jm);
    }
    if (opt.compare_spectrum) {
        std::vector<carl::Complex> base = carl::eigenvalues(first_order_matrix(c));
        std::vector<carl::Complex> expected = carl::combination_spectrum(base, opt.order);
        carl::MatchReport match = carl::match_spectra(eigs, expected, 1e-6);
        out["match"] = {{"max_distance", match.max_distance}, {"pass", match.pass}};
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_compare(const Options& opt) {
    carl::ModelSpec model = load_model(opt);
    carl::Equilibrium eq = carl::find_equilibrium(model);
    carl::CoefficientSet c = carl::coefficient_matrices(model, eq);
    std::vector<double> dx0 = default_perturbation(opt, model.n_states());
    std::vector<double> x0(eq.x_sep);
    for (std::size_t i = 0; i < x0.size(); ++i) x0[i] += dx0[i];

    carl::Trajectory nonlinear = carl::simulate_dae(model, x0, eq.z_sep, opt.T, opt.dt);
    json out{{"name", model.name}, {"T", opt.T}, {"dt", opt.dt}};
    for (int order = 1; order <= opt.order; ++order) {
        carl::Matrix a = lifted_matrix(model, c, order);
        carl::Trajectory lifted =
            carl::simulate_linear(a, dx0, eq.x_sep, order, opt.T, opt.dt);
        carl::CompareReport rep = carl::compare(lifted, nonlinear);
        out["orders"].push_back(
            json{{"order", order}, {"rms", rep.rms}, {"max_abs", rep.max_abs}});
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_validate(const Options& opt) {
    carl::ModelSpec model = load_model(opt);
    if (model.n_algebraics() == 0)
        throw std::invalid_argument("validate expects a DAE model with a reference ODE twin");

    carl::ModelSpec reference = [&] {
        if (!opt.reference_path.empty())
            return carl::parse_model(carl::read_file(opt.reference_path));
        std::string twin = carl::fixture_ode_twin(opt.fixture);
        if (twin.empty())
            throw std::invalid_argument(
                "no bundled reference ODE for this model; pass --reference");
        return carl::fixture_model(twin);
    }();

    carl::Equilibrium eq = carl::find_equilibrium(model);
    carl::CoefficientSet c = carl::coefficient_matrices(model, eq);
    carl::Equilibrium eq_ref = carl::find_equilibrium(reference);
    carl::CoefficientSet c_ref = carl::coefficient_matrices(reference, eq_ref);

    carl::CarlemanDaeSystem sys =
        carl::assemble(c, carl::build_g_blocks(c, opt.order), carl::build_h_blocks(c, opt.order),
                       opt.order);
    carl::ReducedOde red = carl::kron_reduce(sys);
    carl::CarlemanOdeSystem ode =
        carl::build_extended_ode(ode_base_row(c_ref, opt.order), c_ref.N, opt.order);
    double err = carl::validate_against_ode(red, ode);

    json out{{"name", model.name},
             {"reference", reference.name},
             {"order", opt.order},
             {"error_percent", err}};
    carl::DetReport det = carl::det_product_check(c);
    out["determinant_check"] = {{"det_F22_direct", det.det_direct},
                                {"det_F22_product", det.det_product},
                                {"rel_error", det.rel_error}};
    for (const auto& [name, rel] : det.identity_rel_errors)
        out["determinant_check"]["identities"][name] = rel;
    std::cout << out.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Carleman lifting of nonlinear DAE systems: squared extension, Kron "
                 "reduction, and spectral/simulation verification"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* sub, bool needs_order) {
        sub->add_option("--fixture", opt.fixture,
                        "bundled model: test1 | test1-ode | test2 | test2-ode | test3");
        sub->add_option("--model", opt.model_path, "path to a JSON model document");
        if (needs_order)
            sub->add_option("--order", opt.order, "truncation order")
                ->check(CLI::Range(1, 3));
        sub->add_option("--out", opt.out_dir, "output directory (default: stdout)");
        sub->add_option("--format", opt.format, "csv | json")
            ->check(CLI::IsMember({"csv", "json"}));
        return sub;
    };
    auto add_sim = [&](CLI::App* sub) {
        sub->add_option("--T", opt.T, "horizon in seconds")->check(CLI::PositiveNumber);
        sub->add_option("--dt", opt.dt, "step in seconds")->check(CLI::PositiveNumber);
        sub->add_option("--x0", opt.x0,
                        "initial state perturbation from the equilibrium (default -0.05 each)")
            ->delimiter(',');
    };

    add_common(app.add_subcommand("check", "parse, find the equilibrium, check regularity"),
               false);
    add_common(app.add_subcommand("coeffs", "dump all 18 coefficient blocks"), false);
    add_common(app.add_subcommand("build-ode", "lifted matrix of a pure ODE model"), true);
    add_common(app.add_subcommand("build-dae", "squared extended DAE blocks F11..F22"), true);
    add_common(app.add_subcommand("reduce", "Kron-reduce to the equivalent lifted ODE"), true);
    CLI::App* sim = add_common(
        app.add_subcommand("simulate", "integrate the nonlinear DAE (or --lifted model)"), true);
    add_sim(sim);
    sim->add_flag("--lifted", opt.lifted, "simulate the lifted linear model instead");
    CLI::App* spect = add_common(
        app.add_subcommand("spectrum", "eigenvalues, frequencies, and damping factors"), true);
    spect->add_flag("--compare", opt.compare_spectrum,
                   "also match against the combination spectrum");
    CLI::App* cmp = add_common(
        app.add_subcommand("compare", "RMS of lifted models vs the nonlinear run"), true);
    add_sim(cmp);
    CLI::App* val = add_common(
        app.add_subcommand("validate", "lifted-matrix error vs the reference ODE twin"), true);
    val->add_option("--reference", opt.reference_path, "path to the reference ODE document");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("check")) return run_check(opt);
        if (app.got_subcommand("coeffs")) return run_coeffs(opt);
        if (app.got_subcommand("build-ode")) return run_build_ode(opt);
        if (app.got_subcommand("build-dae")) return run_build_dae(opt);
        if (app.got_subcommand("reduce")) return run_reduce(opt);
        if (app.got_subcommand("simulate")) return run_simulate(opt);
        if (app.got_subcommand("spectrum")) return run_spectrum(opt);
        if (app.got_subcommand("compare")) return run_compare(opt);
        if (app.got_subcommand("validate")) return run_validate(opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const carl::parse_error& e) {
        std::cerr << "model error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
