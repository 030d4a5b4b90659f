// fpenergy: exact energy workbench over prime fields.
//
// Subcommands: energy, verify, cover, sample, sweep. Every command is
// deterministic given its flags; all randomness flows from --seed.
// Exit codes: 0 success, 1 usage/input error, 2 property violation.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fpe/analysis.hpp"
#include "fpe/covering.hpp"
#include "fpe/energy.hpp"
#include "fpe/experiments.hpp"
#include "fpe/parallel.hpp"
#include "fpe/rng.hpp"
#include "fpe/setspec.hpp"
#include "fpe/spectral.hpp"

using json = nlohmann::ordered_json;
using namespace fpe;

namespace {

// ------------------------------------------------------- serialization

json exact_json(u128 v) {
    if (v <= u128(UINT64_MAX)) return json(uint64_t(v));
    return json(u128_to_string(v));  // beyond 64 bits: decimal string
}

json rat_json(const Rat128& r) {
    return json{{"num", exact_json(r.num)}, {"den", exact_json(r.den)}, {"approx", r.to_double()}};
}

std::string real12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

const char* kind_name(Kind k) { return k == Kind::Multiplicative ? "multiplicative" : "additive"; }
const char* method_name(Method m) { return m == Method::Brute ? "brute" : "convolution"; }

struct CsvWriter {
    std::ostringstream out;
    explicit CsvWriter(const std::vector<std::string>& header) {
        for (size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
        out << "\n";
    }
    void row(const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
        out << "\n";
    }
    void write_to(const std::filesystem::path& path) const {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + path.string());
        f << out.str();
    }
};

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// ---------------------------------------------------------- subcommands

struct EnergyArgs {
    uint32_t p = 0;
    std::string set_spec;
    std::string op = "mul";
    int k = 2;
    std::string method = "auto";
};

int cmd_energy(const EnergyArgs& a) {
    FieldPtr field = make_field(a.p);
    FpSet A = parse_set_spec(a.set_spec, field);
    const Kind kind = a.op == "mul" ? Kind::Multiplicative : Kind::Additive;
    const Method method = a.method == "brute"  ? Method::Brute
                          : a.method == "conv" ? Method::Convolution
                                               : Method::Auto;
    EnergyValue ev = energy(A, a.k, kind, method);

    // inequality checks over the largest computable profile prefix
    bool lower_chain = true, monotonicity = true, range = true;
    int kcheck = std::max(a.k, 3);
    while (kcheck > 2 && !(A.empty() || pow_fits(A.size(), unsigned(2 * kcheck)))) --kcheck;
    if (!A.empty() && kcheck >= 2) {
        auto profile = energy_profile(A, kcheck, kind);
        const u128 n = A.size();
        for (size_t i = 0; i < profile.size(); ++i) {
            const unsigned kk = unsigned(profile[i].k);
            range = range && profile[i].value >= pow_ck(n, kk) &&
                    profile[i].value <= pow_ck(n, 2 * kk - 1);
            if (i + 1 < profile.size()) {
                lower_chain = lower_chain && profile[i + 1].value >= mul_ck(n, profile[i].value);
                monotonicity = monotonicity && mul_ck(profile[i + 1].value, pow_ck(n, 2 * kk)) <=
                                                   mul_ck(profile[i].value, pow_ck(n, 2 * kk + 2));
            }
        }
    }

    emit(json{{"p", a.p},
              {"set_spec", a.set_spec},
              {"kind", kind_name(kind)},
              {"k", a.k},
              {"value", exact_json(ev.value)},
              {"method", method_name(ev.used)},
              {"size", A.size()},
              {"checks", json{{"lower_chain", lower_chain},
                              {"monotonicity", monotonicity},
                              {"range", range}}}});
    return 0;
}

struct VerifyArgs {
    std::string check;
    uint32_t p = 0;
    int trials = 100;
    double density = 0.5;
    uint64_t seed = 1;
    unsigned jobs = 1;
};

int cmd_verify(const VerifyArgs& a) {
    FieldPtr field = make_field(a.p);
    struct Outcome {
        bool skipped = false;
        bool violated = false;
        json detail;
    };
    std::vector<Outcome> outcomes(size_t(a.trials));
    std::vector<double> stats(size_t(a.trials), 0.0);

    parallel_for(size_t(a.trials), a.jobs, [&](size_t t) {
        Outcome& out = outcomes[t];
        FpSet A = FpSet::mod_p(field);
        for (uint32_t x = 1; x < a.p; ++x)
            if (bernoulli_element(a.seed, t, x, a.density)) A.insert(x);
        if (a.check == "olson") A.insert(1);
        if (A.empty()) {
            out.skipped = true;
            return;
        }
        if (a.check == "eq2") {
            Eq2Report rep = check_eq2(A);
            if (!rep.holds) {
                out.violated = true;
                out.detail = json{{"trial", t}, {"size", A.size()}, {"lhs", exact_json(rep.lhs)}};
            }
        } else if (a.check == "prop32" || a.check == "chain") {
            auto profile = energy_profile(A, 4, Kind::Multiplicative);
            const u128 n = A.size();
            for (size_t i = 0; i + 1 < profile.size(); ++i) {
                const unsigned k = unsigned(profile[i].k);
                const bool ok = a.check == "chain"
                                    ? profile[i + 1].value >= mul_ck(n, profile[i].value)
                                    : mul_ck(profile[i + 1].value, pow_ck(n, 2 * k)) <=
                                          mul_ck(profile[i].value, pow_ck(n, 2 * k + 2));
                if (!ok) {
                    out.violated = true;
                    out.detail = json{{"trial", t}, {"size", A.size()}, {"k", k}};
                }
            }
        } else if (a.check == "plancherel") {
            Spectrum s = dft_indicator(A);
            const double residual = plancherel_residual(s, a.p);
            stats[t] = residual / (double(a.p) * double(A.size()));
            if (residual > 1e-6 * double(a.p) * double(A.size())) {
                out.violated = true;
                out.detail = json{{"trial", t}, {"size", A.size()}, {"residual", residual}};
            }
        } else if (a.check == "tbound") {
            auto [rstar, tstar] = max_t(A);
            const u128 e4 = energy(A, 4, Kind::Multiplicative).value;
            const double bound = std::sqrt(double(a.p) * double(A.size()) * u128_to_double(e4));
            stats[t] = bound > 0 ? tstar / bound : 0.0;
            if (tstar > bound * (1.0 + 1e-9)) {
                out.violated = true;
                out.detail =
                    json{{"trial", t}, {"size", A.size()}, {"t_max", tstar}, {"bound", bound},
                         {"r_argmax", rstar}};
            }
        } else if (a.check == "cube") {
            const u128 cube = iterate_product(A, 3).size();
            const u128 e3 = energy(A, 3, Kind::Multiplicative).value;
            if (mul_ck(cube, e3) < pow_ck(u128(A.size()), 6)) {
                out.violated = true;
                out.detail = json{{"trial", t}, {"size", A.size()}};
            }
        } else if (a.check == "olson") {
            const int j = olson_bound(A);
            auto kmin = covering_exponent(A, j);
            if (!kmin.has_value()) {
                out.violated = true;
                out.detail = json{{"trial", t}, {"size", A.size()}, {"olson_j", j}};
            }
        } else {
            throw std::invalid_argument("unknown check '" + a.check + "'");
        }
    });

    size_t violations = 0, skipped = 0;
    json counterexamples = json::array();
    for (const Outcome& out : outcomes) {
        if (out.skipped) ++skipped;
        if (out.violated) {
            ++violations;
            if (counterexamples.size() < 10) counterexamples.push_back(out.detail);
        }
    }
    double worst_stat = 0.0;
    for (double s : stats) worst_stat = std::max(worst_stat, s);

    json summary{{"check", a.check},
                 {"p", a.p},
                 {"trials", a.trials},
                 {"density", a.density},
                 {"seed", a.seed},
                 {"checked", a.trials - int(skipped)},
                 {"skipped", skipped},
                 {"violations", violations},
                 {"counterexamples", counterexamples}};
    if (a.check == "plancherel") summary["max_relative_residual"] = worst_stat;
    if (a.check == "tbound") summary["max_bound_ratio"] = worst_stat;
    emit(summary);
    return violations == 0 ? 0 : 2;
}

struct CoverArgs {
    uint32_t p = 0;
    std::string set_spec;
    int kmax = 0;
};

int cmd_cover(const CoverArgs& a) {
    FieldPtr field = make_field(a.p);
    FpSet A = parse_set_spec(a.set_spec, field);
    CoveringReport rep = theorem51_report(A, a.kmax);
    json j{{"p", a.p},
           {"set_spec", a.set_spec},
           {"size", A.size()},
           {"K", rat_json(rep.K)},
           {"has_one", rep.has_one},
           {"hyp_size", rep.hyp_size},
           {"hypotheses_hold", rep.hypotheses_hold},
           {"cube_size", rep.cube_size},
           {"cube_bound", rat_json(rep.cube_bound)},
           {"cube_lower_bound", rat_json(cube_lower_bound(A))},
           {"gen_order", rep.gen_order},
           {"k_min", rep.k_min ? json(*rep.k_min) : json(nullptr)},
           {"olson_j", rep.has_one ? json(rep.olson_j) : json(nullptr)},
           {"twelve_k", rep.twelve_k},
           {"four_k", rep.four_k},
           {"e3", exact_json(rep.e3)},
           {"cube_energy_bound", rep.cube_energy_bound},
           {"cube_conclusion", rep.cube_conclusion},
           {"covering_conclusion", rep.covering_conclusion},
           {"cube_iter_conclusion", rep.cube_iter_conclusion}};
    if (!rep.has_one) j["note"] = "1 not in A: the covering guarantee does not apply";
    emit(j);
    return 0;
}

json cell_json(const CellStats& cs) {
    json tails = json::array();
    for (size_t i = 0; i < cs.lambdas.size(); ++i)
        tails.push_back(json{{"lambda", cs.lambdas[i]},
                             {"threshold", cs.thresholds[i]},
                             {"tail_fraction", cs.tail_fractions[i]},
                             {"tail_bound", kKimVuB * std::exp(-cs.lambdas[i])}});
    return json{
        {"mode", cs.cfg.mode == SampleConfig::Mode::IntervalAdditive ? "interval" : "modp"},
        {"N", cs.cfg.N},
        {"rho", cs.cfg.rho},
        {"nrho", double(cs.cfg.N) * cs.cfg.rho},
        {"seed", cs.cfg.seed},
        {"trials", cs.cfg.trials},
        {"s_n", exact_json(cs.s_n)},
        {"e0_exact", cs.e0_exact},
        {"e0_solution_form", cs.e0_solution_form},
        {"e0_asymptotic", cs.e0_asymptotic},
        {"estar", cs.estar},
        {"mean", cs.mean},
        {"stddev", cs.stddev},
        {"rel_dev", cs.rel_dev},
        {"kimvu", tails}};
}

const std::vector<std::string> kRowHeader{"N",        "rho", "trial",    "set_size",
                                          "F",        "E0_exact",        "rel_dev"};

void append_rows(CsvWriter& csv, const CellStats& cs) {
    for (const TrialRow& r : cs.rows)
        csv.row({std::to_string(cs.cfg.N), real12(cs.cfg.rho), std::to_string(r.trial),
                 std::to_string(r.set_size), u128_to_string(r.f), real12(cs.e0_exact),
                 real12(r.rel_dev)});
}

// --out falls back to FPENERGY_OUT when unset
std::string effective_out(const std::string& flag) {
    if (!flag.empty()) return flag;
    const char* env = std::getenv("FPENERGY_OUT");
    return env ? env : "";
}

struct SampleArgs {
    int64_t N = 0;
    double rho = 0;
    int trials = 0;
    uint64_t seed = 0;
    std::string mode = "interval";
    uint32_t p = 0;
    std::string out;
    unsigned jobs = 1;
};

int cmd_sample(const SampleArgs& a) {
    SampleConfig cfg;
    cfg.N = a.N;
    cfg.rho = a.rho;
    cfg.trials = a.trials;
    cfg.seed = a.seed;
    if (a.mode == "modp") {
        cfg.mode = SampleConfig::Mode::ModPMultiplicative;
        if (a.p == 0) throw std::invalid_argument("--mode modp requires --p");
        cfg.field = make_field(a.p);
    }
    CellStats cs = run_cell(cfg, a.jobs);
    json summary = cell_json(cs);
    const std::string out = effective_out(a.out);
    if (!out.empty()) {
        std::filesystem::create_directories(out);
        CsvWriter csv(kRowHeader);
        append_rows(csv, cs);
        csv.write_to(std::filesystem::path(out) / "sample_rows.csv");
        std::ofstream(std::filesystem::path(out) / "sample_summary.json")
            << summary.dump(2) << "\n";
        summary["rows_csv"] = (std::filesystem::path(out) / "sample_rows.csv").string();
    }
    emit(summary);
    return 0;
}

struct SweepArgs {
    std::string mode = "concentration";
    std::string grid;
    std::string p_list, c_list;
    int64_t N_override = 0;
    int trials = 200;
    uint64_t seed = 0;
    std::string out;
    unsigned jobs = 1;
};

std::vector<double> parse_list(const std::string& s, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad " + what + " entry '" + tok + "'");
        }
    }
    if (out.empty()) throw std::invalid_argument(what + " list is empty");
    return out;
}

int cmd_sweep_concentration(const SweepArgs& a) {
    // grid syntax: N=2000,5000,10000;Nrho=50,100,200
    std::vector<double> Ns, nrhos;
    std::stringstream ss(a.grid);
    std::string part;
    while (std::getline(ss, part, ';')) {
        const size_t eq = part.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("bad grid component '" + part + "' (want key=v1,v2,...)");
        const std::string key = part.substr(0, eq);
        if (key == "N")
            Ns = parse_list(part.substr(eq + 1), "N");
        else if (key == "Nrho")
            nrhos = parse_list(part.substr(eq + 1), "Nrho");
        else
            throw std::invalid_argument("unknown grid key '" + key + "'");
    }
    if (Ns.empty() || nrhos.empty()) throw std::invalid_argument("grid needs both N= and Nrho=");

    std::vector<SampleConfig> grid;
    for (double N : Ns)
        for (double nrho : nrhos) {
            SampleConfig cfg;
            cfg.N = int64_t(N);
            cfg.rho = nrho / N;
            cfg.trials = a.trials;
            cfg.seed = a.seed;
            grid.push_back(cfg);
        }
    SweepResult res = concentration_sweep(grid, a.jobs);

    json cells = json::array();
    for (const CellStats& cs : res.cells) cells.push_back(cell_json(cs));
    json summary{{"mode", "concentration"}, {"grid", a.grid}, {"trials", a.trials},
                 {"seed", a.seed},          {"slope", res.slope}, {"intercept", res.intercept},
                 {"cells", cells}};

    const std::string out = effective_out(a.out);
    if (!out.empty()) {
        std::filesystem::create_directories(out);
        CsvWriter csv(kRowHeader);
        for (const CellStats& cs : res.cells) append_rows(csv, cs);
        csv.write_to(std::filesystem::path(out) / "sweep_rows.csv");
        std::ofstream(std::filesystem::path(out) / "sweep_summary.json")
            << summary.dump(2) << "\n";
    }
    emit(summary);
    return 0;
}

int cmd_sweep_candidate(const SweepArgs& a) {
    std::vector<double> ps = parse_list(a.p_list, "p");
    std::vector<double> cs_list = parse_list(a.c_list, "c");

    json rows = json::array();
    CsvWriter csv({"p", "c", "N", "rho", "size", "eta", "mu", "varrho", "ratio4_3", "in_U",
                   "eq2_holds", "chain_ok", "prop_ok"});
    for (double pv : ps) {
        FieldPtr field = make_field(uint32_t(pv));
        const int64_t N = a.N_override > 0
                              ? a.N_override
                              : int64_t(std::floor(std::pow(double(field->p()), 0.75)));
        for (double c : cs_list) {
            CandidateReport rep = construct_candidate(field, N, c, a.seed);
            rows.push_back(json{{"p", rep.p},
                                {"c", rep.c},
                                {"N", rep.N},
                                {"rho", rep.rho},
                                {"size", rep.size},
                                {"eta", rep.profile.eta},
                                {"mu", rep.profile.mu},
                                {"varrho", rep.profile.varrho},
                                {"ratio4_3", rat_json(rep.profile.ratio4_3)},
                                {"growth_stat", rat_json(rep.profile.growth_stat)},
                                {"in_U", rep.in_u},
                                {"eq2_holds", rep.eq2.holds},
                                {"chain_ok", rep.chain_ok},
                                {"prop_ok", rep.prop_ok}});
            csv.row({std::to_string(rep.p), real12(rep.c), std::to_string(rep.N), real12(rep.rho),
                     std::to_string(rep.size), real12(rep.profile.eta), real12(rep.profile.mu),
                     real12(rep.profile.varrho), real12(rep.profile.ratio4_3.to_double()),
                     rep.in_u ? "1" : "0", rep.eq2.holds ? "1" : "0", rep.chain_ok ? "1" : "0",
                     rep.prop_ok ? "1" : "0"});
        }
    }
    json summary{{"mode", "candidate"}, {"seed", a.seed}, {"rows", rows}};
    const std::string out = effective_out(a.out);
    if (!out.empty()) {
        std::filesystem::create_directories(out);
        csv.write_to(std::filesystem::path(out) / "candidates.csv");
        std::ofstream(std::filesystem::path(out) / "candidates_summary.json")
            << summary.dump(2) << "\n";
    }
    emit(summary);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact energy workbench over prime fields"};
    app.require_subcommand(1);

    EnergyArgs ea;
    CLI::App* energy_cmd = app.add_subcommand("energy", "k-fold additive/multiplicative energy");
    energy_cmd->add_option("--p", ea.p, "prime modulus")->required();
    energy_cmd
        ->add_option("--set", ea.set_spec, "set spec (list:/interval:/geom:/subgroup:/random:)")
        ->required();
    energy_cmd->add_option("--op", ea.op, "mul or add")->check(CLI::IsMember({"mul", "add"}));
    energy_cmd->add_option("--k", ea.k, "fold count, k >= 2")->required();
    energy_cmd->add_option("--method", ea.method, "auto, brute or conv")
        ->check(CLI::IsMember({"auto", "brute", "conv"}));

    VerifyArgs va;
    CLI::App* verify_cmd = app.add_subcommand("verify", "run a property suite on random subsets");
    verify_cmd->add_option("--check", va.check, "eq2|prop32|chain|plancherel|tbound|cube|olson")
        ->required()
        ->check(CLI::IsMember({"eq2", "prop32", "chain", "plancherel", "tbound", "cube", "olson"}));
    verify_cmd->add_option("--p", va.p, "prime modulus")->required();
    verify_cmd->add_option("--trials", va.trials, "number of random subsets");
    verify_cmd->add_option("--density", va.density, "Bernoulli density of the subsets");
    verify_cmd->add_option("--seed", va.seed, "seed for the subset stream");
    verify_cmd->add_option("--jobs", va.jobs, "worker threads");

    CoverArgs ca;
    CLI::App* cover_cmd = app.add_subcommand("cover", "multiplicative covering report");
    cover_cmd->add_option("--p", ca.p, "prime modulus")->required();
    cover_cmd->add_option("--set", ca.set_spec, "set spec")->required();
    cover_cmd->add_option("--kmax", ca.kmax, "iteration cap (default: past ceil(12K))");

    SampleArgs sa;
    CLI::App* sample_cmd = app.add_subcommand("sample", "Bernoulli sampling with solution counts");
    sample_cmd->add_option("--N", sa.N, "ambient interval size")->required();
    sample_cmd->add_option("--rho", sa.rho, "inclusion probability")->required();
    sample_cmd->add_option("--trials", sa.trials, "number of trials")->required();
    sample_cmd->add_option("--seed", sa.seed, "seed (required: no hidden entropy)")->required();
    sample_cmd->add_option("--mode", sa.mode, "interval or modp")
        ->check(CLI::IsMember({"interval", "modp"}));
    sample_cmd->add_option("--p", sa.p, "prime modulus for modp mode");
    sample_cmd->add_option("--out", sa.out, "directory for CSV rows + JSON summary");
    sample_cmd->add_option("--jobs", sa.jobs, "worker threads");

    SweepArgs wa;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "grid sweeps: concentration or candidate");
    sweep_cmd->add_option("--mode", wa.mode, "concentration or candidate")
        ->check(CLI::IsMember({"concentration", "candidate"}));
    sweep_cmd->add_option("--grid", wa.grid, "concentration grid, e.g. N=2000,5000;Nrho=50,100");
    sweep_cmd->add_option("--p", wa.p_list, "candidate mode: comma-separated primes");
    sweep_cmd->add_option("--c", wa.c_list, "candidate mode: comma-separated exponents");
    sweep_cmd->add_option("--N", wa.N_override, "candidate mode: override N (default p^(3/4))");
    sweep_cmd->add_option("--trials", wa.trials, "trials per cell");
    sweep_cmd->add_option("--seed", wa.seed, "seed (required: no hidden entropy)")->required();
    sweep_cmd->add_option("--out", wa.out, "directory for CSV rows + JSON summary");
    sweep_cmd->add_option("--jobs", wa.jobs, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help path
        emit(json{{"error", e.what()}});
        return 1;
    }

    try {
        if (energy_cmd->parsed()) return cmd_energy(ea);
        if (verify_cmd->parsed()) return cmd_verify(va);
        if (cover_cmd->parsed()) return cmd_cover(ca);
        if (sample_cmd->parsed()) return cmd_sample(sa);
        if (sweep_cmd->parsed()) {
            if (wa.mode == "concentration") {
                if (wa.grid.empty())
                    throw std::invalid_argument("concentration sweep requires --grid");
                if (effective_out(wa.out).empty())
                    throw std::invalid_argument(
                        "concentration sweep requires --out (or FPENERGY_OUT)");
                return cmd_sweep_concentration(wa);
            }
            if (wa.p_list.empty() || wa.c_list.empty())
                throw std::invalid_argument("candidate sweep requires --p and --c");
            return cmd_sweep_candidate(wa);
        }
    } catch (const std::exception& e) {
        emit(json{{"error", e.what()}});
        return 1;
    }
    return 1;
}
