// Experiment runner: channel simulation, reduced-vs-direct generator
// comparison, and the numerical verification suites, driven by JSON configs.
//
// Exit codes: 0 success, 1 property failure, 2 usage/config error,
// 3 runtime abort (integration failure).

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "gksl/acsp.hpp"
#include "gksl/bloch.hpp"
#include "gksl/brackets.hpp"
#include "gksl/channels.hpp"
#include "gksl/dynamics.hpp"
#include "gksl/liealg.hpp"
#include "gksl/matrix.hpp"
#include "gksl/verify.hpp"

using json = nlohmann::json;
using namespace gksl;

namespace {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// config parsing, with field-path error messages

ComplexMatrix parse_matrix(const json& j, int n, const std::string& path) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        throw config_error(path + ": expected " + std::to_string(n) + " rows of [re,im] pairs");
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i) {
        const json& row = j[i];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw config_error(path + "[" + std::to_string(i) + "]: expected " +
                               std::to_string(n) + " entries");
        for (int k = 0; k < n; ++k) {
            const json& e = row[k];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                throw config_error(path + "[" + std::to_string(i) + "][" + std::to_string(k) +
                                   "]: expected [re, im]");
            m(i, k) = cplx(e[0].get<double>(), e[1].get<double>());
        }
    }
    if (!m.all_finite()) throw config_error(path + ": non-finite entries");
    return m;
}

double require_number(const json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key) || !j[key].is_number())
        throw config_error(path + "." + key + ": expected a number");
    return j[key].get<double>();
}

struct ExperimentConfig {
    int n = 2;
    ComplexMatrix hamiltonian;
    std::vector<ChannelSpec> channels;
    DensityMatrix initial;
    SimulationConfig sim;
    bool contact = false;
    std::uint64_t seed = 0;
    std::string output_path;
};

ComplexMatrix parse_hamiltonian(const json& cfg, int n) {
    if (!cfg.contains("hamiltonian") || cfg["hamiltonian"].is_null()) return ComplexMatrix(n);
    const json& h = cfg["hamiltonian"];
    if (h.is_object()) {
        if (h.contains("omega_z")) {
            if (n != 2) throw config_error("config.hamiltonian.omega_z: needs n = 2");
            if (!h["omega_z"].is_number())
                throw config_error("config.hamiltonian.omega_z: expected a number");
            return 0.5 * h["omega_z"].get<double>() * pauli::z();
        }
        throw config_error("config.hamiltonian: unknown preset (known: omega_z)");
    }
    const ComplexMatrix m = parse_matrix(h, n, "config.hamiltonian");
    if (!m.is_hermitian(kHermTol)) throw config_error("config.hamiltonian: not Hermitian");
    return m;
}

std::vector<ChannelSpec> parse_channels(const json& cfg, int n) {
    std::vector<ChannelSpec> out;
    if (!cfg.contains("channels") || cfg["channels"].is_null()) return out;
    const json& arr = cfg["channels"];
    if (!arr.is_array()) throw config_error("config.channels: expected a list");
    for (size_t i = 0; i < arr.size(); ++i) {
        const std::string path = "config.channels[" + std::to_string(i) + "]";
        const json& ch = arr[i];
        if (!ch.is_object()) throw config_error(path + ": expected an object");
        const double gamma = require_number(ch, "gamma", path);
        if (gamma < 0.0) throw config_error(path + ".gamma: must be >= 0");
        if (ch.contains("name")) {
            const std::string name = ch["name"].get<std::string>();
            ChannelCatalogEntry entry;
            try {
                entry = make_channel(name, gamma);
            } catch (const error&) {
                throw config_error(path + ".name: unknown preset '" + name + "'");
            }
            if (entry.dim != n)
                throw config_error(path + ": preset '" + name + "' needs n = " +
                                   std::to_string(entry.dim));
            for (auto& c : entry.channels) out.push_back(std::move(c));
        } else if (ch.contains("matrix")) {
            out.emplace_back(parse_matrix(ch["matrix"], n, path + ".matrix"), gamma);
        } else {
            throw config_error(path + ": needs either 'name' or 'matrix'");
        }
    }
    return out;
}

DensityMatrix parse_initial(const json& cfg, int n) {
    if (!cfg.contains("initial")) throw config_error("config.initial: missing");
    const json& init = cfg["initial"];
    const Basis basis = standard_basis(n);
    try {
        if (init.is_string()) {
            const std::string name = init.get<std::string>();
            if (name == "maximally_mixed")
                return DensityMatrix(ComplexMatrix::identity(n) * (1.0 / n));
            if (name == "ground") {
                ComplexMatrix rho(n);
                rho(n - 1, n - 1) = 1.0;
                return DensityMatrix(rho);
            }
            if (name == "plus_x") {
                if (n != 2) throw config_error("config.initial: 'plus_x' needs n = 2");
                return DensityMatrix(0.5 * (ComplexMatrix::identity(2) + pauli::x()));
            }
            throw config_error("config.initial: unknown state '" + name +
                               "' (known: plus_x, ground, maximally_mixed)");
        }
        if (init.is_array() && !init.empty() && init[0].is_number()) {
            if (static_cast<int>(init.size()) != n * n - 1)
                throw config_error("config.initial: Bloch vector needs " +
                                   std::to_string(n * n - 1) + " components");
            std::vector<double> r;
            for (const auto& v : init) {
                if (!v.is_number()) throw config_error("config.initial: non-numeric component");
                r.push_back(v.get<double>());
            }
            return from_bloch(BlochVector(n, std::move(r)), basis);
        }
        return DensityMatrix(parse_matrix(init, n, "config.initial"));
    } catch (const state_domain_error& e) {
        throw config_error(std::string("config.initial: not a valid state (") + e.what() + ")");
    }
}

ExperimentConfig parse_config_file(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw config_error("cannot open config file: " + file);
    json cfg;
    try {
        cfg = json::parse(in);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("config parse error: ") + e.what());
    }
    ExperimentConfig ec;
    if (!cfg.contains("n") || !cfg["n"].is_number_integer())
        throw config_error("config.n: expected an integer >= 2");
    ec.n = cfg["n"].get<int>();
    if (ec.n < 2) throw config_error("config.n: expected an integer >= 2");
    ec.hamiltonian = parse_hamiltonian(cfg, ec.n);
    ec.channels = parse_channels(cfg, ec.n);
    ec.initial = parse_initial(cfg, ec.n);
    ec.sim.t_final = require_number(cfg, "t_final", "config");
    ec.sim.dt = require_number(cfg, "dt", "config");
    if (cfg.contains("record_every")) {
        if (!cfg["record_every"].is_number_integer() || cfg["record_every"].get<int>() < 1)
            throw config_error("config.record_every: expected an integer >= 1");
        ec.sim.record_every = cfg["record_every"].get<int>();
    }
    if (cfg.contains("renormalize")) {
        if (!cfg["renormalize"].is_boolean())
            throw config_error("config.renormalize: expected a boolean");
        ec.sim.renormalize = cfg["renormalize"].get<bool>();
    }
    if (cfg.contains("contact")) {
        if (!cfg["contact"].is_boolean()) throw config_error("config.contact: expected a boolean");
        ec.contact = cfg["contact"].get<bool>();
    }
    if (cfg.contains("seed")) {
        if (!cfg["seed"].is_number_integer()) throw config_error("config.seed: expected an integer");
        ec.seed = cfg["seed"].get<std::uint64_t>();
    }
    if (cfg.contains("output_path")) {
        if (!cfg["output_path"].is_string())
            throw config_error("config.output_path: expected a string");
        ec.output_path = cfg["output_path"].get<std::string>();
    }
    try {
        ec.sim.validate();
    } catch (const error& e) {
        throw config_error(std::string("config: ") + e.what());
    }
    return ec;
}

// write-to-temp-then-rename so aborted runs leave no partial files
void write_file_atomically(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw config_error("cannot write output file: " + tmp);
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

void emit(const std::string& output_path, const std::string& content) {
    if (output_path.empty())
        std::cout << content;
    else
        write_file_atomically(output_path, content);
}

// ---------------------------------------------------------------------------
// simulate

int cmd_simulate(const std::string& config_file, const std::string& output_flag) {
    const ExperimentConfig ec = parse_config_file(config_file);
    const Basis basis = standard_basis(ec.n);

    Trajectory traj;
    if (ec.contact) {
        const ComplexMatrix* L = nullptr;
        double gamma = 0.0;
        if (ec.channels.size() != 1 || !ec.channels[0].L.is_hermitian(kHermTol))
            throw config_error("config.contact: needs exactly one Hermitian channel");
        L = &ec.channels[0].L;
        gamma = ec.channels[0].gamma;
        const double z0 = 0.5 * hs_inner(ec.initial.matrix(), ec.initial.matrix()).real();
        traj = simulate_contact(ec.initial, z0, ec.hamiltonian, *L, gamma, ec.sim);
    } else {
        traj = simulate(ec.initial, ec.hamiltonian, ec.channels, ec.sim);
    }

    std::string csv = "t";
    for (int a = 1; a <= basis.count(); ++a) csv += ",r_" + std::to_string(a);
    csv += ",purity,trace_err,min_eig";
    if (ec.contact) csv += ",z";
    csv += "\n";
    for (size_t k = 0; k < traj.size(); ++k) {
        csv += fmt(traj.times[k]);
        for (const double r : coefficients(traj.states[k], basis)) csv += "," + fmt(r);
        csv += "," + fmt(traj.purity[k]);
        csv += "," + fmt(traj.trace_error[k]);
        csv += "," + fmt(traj.min_eig[k]);
        if (ec.contact) csv += "," + fmt(traj.contact_z[k]);
        csv += "\n";
    }

    const std::string out = output_flag.empty() ? ec.output_path : output_flag;
    emit(out, csv);
    return 0;
}

// ---------------------------------------------------------------------------
// compare

int cmd_compare(const std::string& config_file, const std::string& output_flag,
                double threshold) {
    const ExperimentConfig ec = parse_config_file(config_file);
    ComparisonReport report;
    try {
        report = compare_generators(ec.initial, ec.hamiltonian, ec.channels, ec.sim);
    } catch (const precondition_error& e) {
        throw config_error(std::string("config.channels: ") + e.what());
    }
    json j;
    j["max_deviation"] = report.max_deviation;
    j["times_checked"] = report.times_checked;
    j["n"] = report.n;
    j["m"] = report.m;
    j["threshold"] = threshold;
    const std::string out = output_flag.empty() ? ec.output_path : output_flag;
    emit(out, j.dump(2) + "\n");
    return report.max_deviation <= threshold ? 0 : 1;
}

// ---------------------------------------------------------------------------
// verify suites

struct PropertyResult {
    std::string name;
    bool pass = false;
    json measured;
};

void run_bounds_suite(int n, long trials, std::uint64_t seed, std::vector<PropertyResult>& out) {
    const CurvatureReport rep = curvature_bound_check(n, trials, seed);
    out.push_back({"curvature_bound_ratio_le_1",
                   rep.violations == 0,
                   {{"max_ratio", rep.max_ratio},
                    {"trials", rep.trials},
                    {"violations", rep.violations}}});
}

void run_equivariance_suite(int n, long trials, std::uint64_t seed,
                            std::vector<PropertyResult>& out) {
    const Basis basis = standard_basis(n);
    const long twirl_n = trials > 0 ? trials : 10000;

    // an equivariant tensor passes through the twirl untouched
    const BilinearMapTensor f = bracket_tensor(basis);
    const BilinearMapTensor f_tw = twirl(f, n, std::min<long>(twirl_n, 2000), seed);
    const double self_dev = (f_tw - f).frobenius() / f.frobenius();
    out.push_back({"twirl_fixes_equivariant_tensor", self_dev <= 1e-3,
                   {{"relative_deviation", self_dev}}});

    // defect decreases with sample count
    Rng rng(seed);
    BilinearMapTensor random_t(n);
    for (auto& v : random_t.c) v = rng.gaussian();
    random_t *= 1.0 / random_t.frobenius();
    std::vector<double> defects;
    for (long N : {100L, 1000L, 10000L})
        defects.push_back(equivariance_defect(twirl(random_t, n, N, seed + 1), 100, seed + 2));
    const bool monotone = defects[0] > defects[1] && defects[1] > defects[2];
    out.push_back({"twirl_defect_decreases_in_samples", monotone,
                   {{"defect_100", defects[0]},
                    {"defect_1000", defects[1]},
                    {"defect_10000", defects[2]}}});

    if (n == 2) {
        // every twirled tensor lands on the bracket line
        double worst = 0.0;
        for (int t = 0; t < 20; ++t) {
            BilinearMapTensor c(n);
            for (auto& v : c.c) v = rng.gaussian();
            c *= 1.0 / c.frobenius();
            const BilinearMapTensor cbar = twirl(c, n, twirl_n, seed + 100 + t);
            worst = std::max(worst, project_to_line(cbar, f).second);
        }
        out.push_back({"twirl_converges_to_bracket_line", worst <= 1e-2,
                       {{"max_off_line_residual", worst}, {"tensors", 20}, {"samples", twirl_n}}});
    }

    // torsion-generated maps factor through ad_L
    const ComplexMatrix L =
        n == 2 ? pauli::z() : traceless_part(random_hermitian(n, seed + 5).matrix());
    const RealMatrix a = ad_matrix(L, basis);
    double worst_fact = 0.0;
    for (int t = 0; t < 10; ++t) {
        RealMatrix k(a.rows, a.rows);
        Rng krng(seed + 200 + t);
        for (auto& v : k.a) v = krng.gaussian();
        worst_fact = std::max(worst_fact, factorization_residual(a * k * a, L, basis).residual);
    }
    out.push_back(
        {"torsion_generated_maps_factor_through_ad", worst_fact <= 1e-6,
         {{"max_relative_residual", worst_fact}}});

    // isotropy-twirled candidates restrict to scalar multiples of (ad_L)^2
    const ComplexMatrix lu = n == 3 ? standard_basis(3).elements[2] : L;
    const UniquenessReport uq = uniqueness_check(n, lu, 10, seed + 3);
    json blocks = json::array();
    for (const auto& b : uq.blocks)
        blocks.push_back({{"levels", {b.level_i, b.level_j}},
                          {"adsq_eigenvalue", b.adsq_eigenvalue},
                          {"max_residual", b.max_residual},
                          {"scalar_first_candidate", b.scalars.empty() ? 0.0 : b.scalars[0]}});
    out.push_back({"restricted_candidates_scalar_per_block", uq.max_residual <= 1e-10,
                   {{"max_residual", uq.max_residual}, {"blocks", blocks}}});
}

void run_rates_suite(std::uint64_t seed, std::vector<PropertyResult>& out) {
    const Basis b3 = standard_basis(3);
    const ComplexMatrix l3 = b3.elements[2];

    const std::vector<double> spec = ad_squared_spectrum(l3, b3);
    const std::vector<double> expect = {0, 0, 1, 1, 1, 1, 4, 4};
    double dev = 0.0;
    for (size_t i = 0; i < spec.size(); ++i) dev = std::max(dev, std::abs(spec[i] - expect[i]));
    out.push_back({"adsq_spectrum_lambda3", dev <= 1e-10, {{"max_deviation", dev}}});

    const std::vector<double> spec8 = ad_squared_spectrum(b3.elements[7], b3);
    const std::vector<double> expect8 = {0, 0, 0, 0, 3, 3, 3, 3};
    double dev8 = 0.0;
    for (size_t i = 0; i < spec8.size(); ++i)
        dev8 = std::max(dev8, std::abs(spec8[i] - expect8[i]));
    out.push_back({"adsq_spectrum_lambda8", dev8 <= 1e-10, {{"max_deviation", dev8}}});

    // simulated per-component decay exponents against (gamma/2) * spectrum
    const double gamma = 1.0;
    DensityMatrix rho0 = random_density(3, seed + 11);
    SimulationConfig cfg;
    cfg.t_final = 0.5;
    cfg.dt = 1e-3;
    cfg.record_every = 50;
    const Trajectory traj =
        simulate(rho0, ComplexMatrix(3), {ChannelSpec(l3, gamma)}, cfg);

    const std::map<int, double> rates =
        qutrit_dephasing_rates(QutritDephasingChannel::lambda3, gamma);
    double worst_rel = 0.0;
    double worst_const = 0.0;
    for (int comp = 1; comp <= 8; ++comp) {
        std::vector<double> vals;
        for (const auto& st : traj.states) vals.push_back(coefficients(st, b3)[comp - 1]);
        const double want = rates.at(comp);
        if (want == 0.0) {
            for (double v : vals) worst_const = std::max(worst_const, std::abs(v - vals.front()));
        } else {
            const double fitted = fit_exponential_rate(traj.times, vals);
            worst_rel = std::max(worst_rel, std::abs(fitted - want) / want);
        }
    }
    out.push_back({"lambda3_decay_exponent_fits", worst_rel <= 1e-4 && worst_const <= 1e-10,
                   {{"max_relative_rate_error", worst_rel},
                    {"max_conserved_component_drift", worst_const}}});
}

void run_brackets_suite(int n, long trials, std::uint64_t seed,
                        std::vector<PropertyResult>& out) {
    const ComplexMatrix L =
        n == 2 ? pauli::z() : traceless_part(random_hermitian(n, seed + 1).matrix());
    const double gamma = 0.7;
    const long cases = trials > 0 ? std::min<long>(trials, 1000) : 1000;

    double sym_dev = 0.0, pos_violation = 0.0, form_dev = 0.0, lp_antisym = 0.0;
    double contraction_dev = 0.0;
    for (long t = 0; t < cases; ++t) {
        const ComplexMatrix x = random_hermitian(n, seed + 10 + t).matrix();
        const ComplexMatrix y = random_hermitian(n, seed + 20000 + t).matrix();
        sym_dev = std::max(sym_dev,
                           std::abs(acsp_metric(x, y, L, gamma) - acsp_metric(y, x, L, gamma)));
        pos_violation = std::max(pos_violation, acsp_metric(x, x, L, gamma));
        form_dev = std::max(form_dev, std::abs(acsp_metric(x, y, L, gamma) -
                                               acsp_metric_double_comm(x, y, L, gamma)));
        const DensityMatrix rho = random_density(n, seed + 40000 + t);
        lp_antisym = std::max(
            lp_antisym,
            std::abs(lie_poisson(x, y, rho.matrix()) + lie_poisson(y, x, rho.matrix())));
        auto [lhs, rhs] = contraction_rate(rho.matrix(), L, gamma);
        contraction_dev = std::max(contraction_dev, std::abs(lhs - rhs));
    }
    out.push_back({"metric_bracket_symmetry", sym_dev <= 1e-12, {{"max_asymmetry", sym_dev}}});
    out.push_back({"metric_bracket_negative_semidefinite", pos_violation <= 0.0,
                   {{"max_self_bracket", pos_violation}}});
    out.push_back({"metric_bracket_two_forms_agree", form_dev <= 1e-12,
                   {{"max_deviation", form_dev}}});
    out.push_back({"lie_poisson_antisymmetry", lp_antisym <= 1e-12,
                   {{"max_deviation", lp_antisym}}});
    out.push_back({"contraction_identity", contraction_dev <= 1e-12,
                   {{"max_deviation", contraction_dev}}});

    // kernel characterization, both directions
    auto [lpar, lperp] = commutant_projection(L, random_hermitian(n, seed + 7).matrix());
    const double in_kernel = std::abs(acsp_metric(lpar, lpar, L, gamma));
    const double out_kernel = acsp_metric(lperp, lperp, L, gamma);
    const bool kernel_ok = in_kernel <= 1e-20 && out_kernel < -1e-12;
    out.push_back({"metric_bracket_kernel_is_commutant", kernel_ok,
                   {{"commutant_self_bracket", in_kernel},
                    {"transverse_self_bracket", out_kernel}}});

    // term-by-term metriplectic decomposition
    double decomp_dev = 0.0;
    for (long t = 0; t < 100; ++t) {
        const ComplexMatrix H = random_hermitian(n, seed + 60000 + t).matrix();
        const DensityMatrix rho = random_density(n, seed + 70000 + t);
        const ComplexMatrix whole = metriplectic_field(rho.matrix(), H, L, gamma);
        const ComplexMatrix parts =
            lie_poisson_field(H, rho.matrix()) + metric_field(L, gamma, rho.matrix());
        decomp_dev = std::max(decomp_dev, (whole - parts).max_abs());
    }
    out.push_back({"metriplectic_field_decomposition", decomp_dev <= 1e-14,
                   {{"max_deviation", decomp_dev}}});
}

int cmd_verify(const std::string& suite, int n, long trials, std::uint64_t seed,
               const std::string& output_flag) {
    std::vector<PropertyResult> props;
    if (suite == "bounds") {
        run_bounds_suite(n, trials > 0 ? trials : 10000, seed, props);
    } else if (suite == "equivariance") {
        run_equivariance_suite(n, trials, seed, props);
    } else if (suite == "rates") {
        run_rates_suite(seed, props);
    } else if (suite == "brackets") {
        run_brackets_suite(n, trials, seed, props);
    } else if (suite == "all") {
        run_bounds_suite(n, trials > 0 ? trials : 10000, seed, props);
        run_equivariance_suite(n, trials, seed, props);
        run_rates_suite(seed, props);
        run_brackets_suite(n, trials, seed, props);
    } else {
        std::cerr << "unknown suite '" << suite
                  << "' (known: brackets, equivariance, bounds, rates, all)\n";
        return 2;
    }

    bool all_pass = true;
    json out;
    out["suite"] = suite;
    out["n"] = n;
    out["seed"] = seed;
    out["trials"] = trials;
    out["properties"] = json::array();
    for (const auto& p : props) {
        out["properties"].push_back(
            {{"name", p.name}, {"pass", p.pass}, {"measured", p.measured}});
        all_pass = all_pass && p.pass;
    }
    out["pass"] = all_pass;
    emit(output_flag, out.dump(2) + "\n");
    return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// channels listing

std::string format_matrix(const ComplexMatrix& m) {
    std::string s;
    for (int i = 0; i < m.dim(); ++i) {
        s += "    [";
        for (int j = 0; j < m.dim(); ++j) {
            const cplx v = m(i, j);
            char buf[80];
            if (v.imag() == 0.0)
                std::snprintf(buf, sizeof(buf), "%g", v.real());
            else
                std::snprintf(buf, sizeof(buf), "%g%+gi", v.real(), v.imag());
            s += buf;
            if (j + 1 < m.dim()) s += ", ";
        }
        s += "]\n";
    }
    return s;
}

int cmd_channels() {
    for (const auto& name : channel_catalog_names()) {
        const ChannelCatalogEntry entry = make_channel(name, 1.0);
        std::cout << name << " (n = " << entry.dim << ")\n";
        std::cout << "  convention: " << entry.convention << "\n";
        for (const auto& ch : entry.channels) {
            std::cout << "  L = " << ch.label << ", rate multiplier " << ch.gamma
                      << " at gamma = 1:\n";
            std::cout << format_matrix(ch.L);
        }
        std::cout << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GKSL channel dynamics: simulation, generator comparison, verification"};
    app.require_subcommand(1);

    std::string config_path, output_path, suite = "all";
    double threshold = 1e-10;
    int n = 2;
    long trials = 0;
    std::uint64_t seed = 0;

    CLI::App* sim = app.add_subcommand("simulate", "integrate a channel configuration to CSV");
    sim->add_option("--config", config_path, "JSON experiment config")->required();
    sim->add_option("--output", output_path, "output CSV path (default: config output_path/stdout)");

    CLI::App* cmp = app.add_subcommand(
        "compare", "integrate the reduced and direct generators, report max deviation");
    cmp->add_option("--config", config_path, "JSON experiment config")->required();
    cmp->add_option("--output", output_path, "output JSON path");
    cmp->add_option("--threshold", threshold, "pass threshold on max deviation");

    CLI::App* ver = app.add_subcommand("verify", "run a numerical verification suite");
    ver->add_option("--suite", suite, "brackets | equivariance | bounds | rates | all");
    ver->add_option("--n", n, "Hilbert-space dimension");
    ver->add_option("--trials", trials, "sample count (suite dependent default)");
    ver->add_option("--seed", seed, "master seed");
    ver->add_option("--output", output_path, "output JSON path");

    app.add_subcommand("channels", "list the channel presets and their conventions");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) return cmd_simulate(config_path, output_path);
        if (cmp->parsed()) return cmd_compare(config_path, output_path, threshold);
        if (ver->parsed()) return cmd_verify(suite, n, trials, seed, output_path);
        return cmd_channels();
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const integration_error& e) {
        std::cerr << "integration abort: " << e.what() << "\n";
        return 3;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
