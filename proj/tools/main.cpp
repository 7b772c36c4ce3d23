#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hyperaff/io.hpp"
#include "hyperaff/orbit.hpp"
#include "hyperaff/pipeline.hpp"

namespace {

using nlohmann::json;
using namespace hyperaff;

constexpr int kExitHypercyclic = 0;
constexpr int kExitNotHypercyclic = 1;
constexpr int kExitNotAbelian = 2;
constexpr int kExitBadWitness = 3;
constexpr int kExitInconclusive = 4;
constexpr int kExitFileError = 10;
constexpr int kExitInternal = 11;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string cnumber_str(const CNumber& c) { return c.str(); }

json vector_json(const CVector& v) {
    json out = json::array();
    for (const auto& c : v) out.push_back(cnumber_str(c));
    return out;
}

json matrix_json(const CMatrix& m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(cnumber_str(m.at(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Hypercyclic: return "Hypercyclic";
        case Outcome::NotHypercyclic: return "NotHypercyclic";
        default: return "Inconclusive";
    }
}

json report_json(const DecisionReport& rep) {
    json j;
    j["schema"] = 1;
    j["outcome"] = outcome_name(rep.outcome);
    j["certified"] = rep.certified;
    j["heuristic"] = !rep.certified;
    j["n"] = rep.n;
    j["p"] = rep.p;
    if (rep.shortcut_applied) j["shortcut"] = rep.shortcut_reason;
    if (rep.normal_form) {
        j["eta"] = rep.normal_form->partition.eta;
        j["w0"] = vector_json(rep.normal_form->w0);
        j["P"] = matrix_json(rep.normal_form->P);
    }
    if (!rep.witnesses.empty()) {
        json ws = json::array();
        for (const auto& w : rep.witnesses) {
            json e;
            e["A"] = matrix_json(w.fprime.A);
            e["a"] = vector_json(w.fprime.a);
            e["branch_shifts"] = w.branch_shifts;
            e["psi_shift"] = w.psi_shift;
            ws.push_back(std::move(e));
        }
        j["witnesses"] = std::move(ws);
    }
    if (rep.density) {
        json d;
        d["result"] = rep.density->result == Density::Dense ? "Dense" : "NotDense";
        d["certified"] = rep.density->certified;
        d["detail"] = rep.density->detail;
        if (!rep.density->integer_witness.empty()) {
            json s = json::array();
            for (const auto& x : rep.density->integer_witness) s.push_back(x.str());
            d["integer_witness"] = std::move(s);
        }
        if (!rep.density->det_linear_form.empty()) {
            json c = json::array();
            for (const auto& x : rep.density->det_linear_form) c.push_back(x.str());
            d["det_linear_form"] = std::move(c);
        }
        j["density"] = std::move(d);
    }
    j["detail"] = rep.detail;
    return j;
}

void print_report(const DecisionReport& rep) {
    std::cout << "outcome: " << outcome_name(rep.outcome)
              << (rep.certified ? " (certified)" : " (heuristic)") << "\n";
    std::cout << "n = " << rep.n << ", p = " << rep.p << "\n";
    if (rep.shortcut_applied) std::cout << "shortcut: " << rep.shortcut_reason << "\n";
    if (rep.normal_form) {
        std::cout << "eta = (";
        for (std::size_t i = 0; i < rep.normal_form->partition.eta.size(); ++i)
            std::cout << (i ? "," : "") << rep.normal_form->partition.eta[i];
        std::cout << "), r = " << rep.normal_form->partition.r() << "\n";
        std::cout << "w0 = [";
        for (std::size_t i = 0; i < rep.normal_form->w0.size(); ++i)
            std::cout << (i ? ", " : "") << rep.normal_form->w0[i].str();
        std::cout << "]\n";
    }
    if (rep.density) {
        std::cout << "density: "
                  << (rep.density->result == Density::Dense ? "Dense" : "NotDense") << " — "
                  << rep.density->detail << "\n";
        if (!rep.density->integer_witness.empty()) {
            std::cout << "integer witness s = [";
            for (std::size_t i = 0; i < rep.density->integer_witness.size(); ++i)
                std::cout << (i ? ", " : "") << rep.density->integer_witness[i].str();
            std::cout << "]\n";
        }
        if (!rep.density->det_linear_form.empty()) {
            std::cout << "det linear form coefficients:\n";
            for (const auto& c : rep.density->det_linear_form)
                std::cout << "  " << c.str() << "\n";
        }
    }
    if (!rep.detail.empty()) std::cout << "detail: " << rep.detail << "\n";
}

int run_validate(const std::string& path) {
    ProblemFile pf;
    try {
        pf = parse_problem(slurp(path));
    } catch (const std::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitFileError;
    }
    auto check = check_abelian(pf.generators);
    if (!check.abelian) {
        std::cerr << "generators " << check.first + 1 << " and " << check.second + 1
                  << " do not commute\n";
        return kExitNotAbelian;
    }
    for (std::size_t k = 0; k < pf.generators.size(); ++k) {
        if (!is_invertible(pf.generators[k])) {
            std::cerr << "generator " << k + 1 << " is not invertible\n";
            return kExitFileError;
        }
    }
    if (!pf.witnesses.empty()) {
        if (pf.witnesses.size() != pf.generators.size()) {
            std::cerr << "witness count != generator count\n";
            return kExitBadWitness;
        }
        for (std::size_t k = 0; k < pf.witnesses.size(); ++k) {
            double dev = witness_deviation(pf.generators[k], pf.witnesses[k]);
            if (dev > 1e-9 * (1 + phi(pf.generators[k]).max_abs())) {
                std::cerr << "witness " << k + 1
                          << " fails exp check, max entry deviation " << dev << "\n";
                return kExitBadWitness;
            }
        }
    }
    std::cout << "valid: " << pf.generators.size() << " commuting invertible generators on C^"
              << pf.n << "\n";
    return 0;
}

PipelineOptions options_from_file(const ProblemFile& pf) {
    PipelineOptions opts;
    if (pf.mode == "numeric") opts.force_numeric = true;
    opts.supplied_witnesses = pf.witnesses;
    if (pf.normal_form_P) {
        opts.trusted_P = pf.normal_form_P;
        opts.trusted_partition = pf.normal_form_eta;
    }
    return opts;
}

int run_decide(const std::string& path, const std::string& mode_flag, double eig_tol,
               long long lattice_bound, bool as_json, bool accept_heuristic) {
    ProblemFile pf;
    try {
        pf = parse_problem(slurp(path));
    } catch (const std::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitFileError;
    }
    PipelineOptions opts = options_from_file(pf);
    if (!mode_flag.empty()) opts.force_numeric = mode_flag == "numeric";
    if (eig_tol > 0) opts.normal_form.eig_tol = eig_tol;
    if (lattice_bound > 0) opts.density.witness_bound = Int(lattice_bound);
    DecisionReport rep;
    try {
        rep = decide_hypercyclic(pf.generators, opts);
    } catch (const NotAbelianError& e) {
        std::cerr << e.what() << "\n";
        return kExitNotAbelian;
    } catch (const std::exception& e) {
        std::cerr << "decision failed: " << e.what() << "\n";
        return kExitInternal;
    }
    if (mode_flag == "exact" && !rep.certified) {
        std::cerr << "exact mode requested but only a heuristic verdict is available\n";
        return kExitInconclusive;
    }
    if (rep.outcome == Outcome::Hypercyclic && !rep.certified && !accept_heuristic)
        rep.outcome = Outcome::Inconclusive;
    if (as_json)
        std::cout << report_json(rep).dump(2) << "\n";
    else
        print_report(rep);
    switch (rep.outcome) {
        case Outcome::Hypercyclic: return kExitHypercyclic;
        case Outcome::NotHypercyclic: return kExitNotHypercyclic;
        default: return kExitInconclusive;
    }
}

int run_normal_form(const std::string& path, bool as_json) {
    ProblemFile pf;
    try {
        pf = parse_problem(slurp(path));
    } catch (const std::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitFileError;
    }
    try {
        NormalForm nf = pf.normal_form_P
                            ? trusted_normal_form(pf.generators, *pf.normal_form_P,
                                                  *pf.normal_form_eta)
                            : find_normal_form(pf.generators);
        if (as_json) {
            json j;
            j["schema"] = 1;
            j["eta"] = nf.partition.eta;
            j["P"] = matrix_json(nf.P);
            j["w0"] = vector_json(nf.w0);
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "eta = (";
            for (std::size_t i = 0; i < nf.partition.eta.size(); ++i)
                std::cout << (i ? "," : "") << nf.partition.eta[i];
            std::cout << ")\nP =\n";
            for (std::size_t i = 0; i < nf.P.rows(); ++i) {
                for (std::size_t j = 0; j < nf.P.cols(); ++j)
                    std::cout << (j ? "  " : "  ") << nf.P.at(i, j).str();
                std::cout << "\n";
            }
            std::cout << "w0 = [";
            for (std::size_t i = 0; i < nf.w0.size(); ++i)
                std::cout << (i ? ", " : "") << nf.w0[i].str();
            std::cout << "]\n";
        }
        return 0;
    } catch (const NotAbelianError& e) {
        std::cerr << e.what() << "\n";
        return kExitNotAbelian;
    } catch (const std::exception& e) {
        std::cerr << "normal form failed: " << e.what() << "\n";
        return kExitInternal;
    }
}

int run_witness(const std::string& path, bool as_json) {
    ProblemFile pf;
    try {
        pf = parse_problem(slurp(path));
    } catch (const std::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitFileError;
    }
    try {
        if (!pf.witnesses.empty()) {
            // verification-only path
            json out = json::array();
            for (std::size_t k = 0; k < pf.witnesses.size(); ++k) {
                double dev = witness_deviation(pf.generators[k], pf.witnesses[k]);
                if (dev > 1e-9 * (1 + phi(pf.generators[k]).max_abs())) {
                    std::cerr << "witness " << k + 1 << " fails, deviation " << dev << "\n";
                    return kExitBadWitness;
                }
                out.push_back(json{{"generator", k + 1}, {"deviation", dev}});
                if (!as_json)
                    std::cout << "witness " << k + 1 << ": ok, deviation " << dev << "\n";
            }
            if (as_json) std::cout << json{{"schema", 1}, {"witnesses", out}}.dump(2) << "\n";
            return 0;
        }
        NormalForm nf = find_normal_form(pf.generators);
        json out = json::array();
        for (std::size_t k = 0; k < pf.generators.size(); ++k) {
            LogWitness w = log_witness(pf.generators[k], nf);
            if (as_json) {
                json e;
                e["A"] = matrix_json(w.fprime.A);
                e["a"] = vector_json(w.fprime.a);
                e["branch_shifts"] = w.branch_shifts;
                e["psi_shift"] = w.psi_shift;
                out.push_back(std::move(e));
            } else {
                std::cout << "f'_" << k + 1 << ": B =\n";
                for (std::size_t i = 0; i < w.fprime.A.rows(); ++i) {
                    for (std::size_t j = 0; j < w.fprime.A.cols(); ++j)
                        std::cout << "  " << w.fprime.A.at(i, j).str();
                    std::cout << "\n";
                }
                std::cout << "  b = [";
                for (std::size_t i = 0; i < w.fprime.a.size(); ++i)
                    std::cout << (i ? ", " : "") << w.fprime.a[i].str();
                std::cout << "]  (psi shift " << w.psi_shift << ")\n";
            }
        }
        if (as_json) std::cout << json{{"schema", 1}, {"witnesses", out}}.dump(2) << "\n";
        return 0;
    } catch (const NotAbelianError& e) {
        std::cerr << e.what() << "\n";
        return kExitNotAbelian;
    } catch (const std::exception& e) {
        std::cerr << "witness computation failed: " << e.what() << "\n";
        return kExitInternal;
    }
}

int run_simulate(const std::string& path, std::size_t budget, double box, std::size_t grid,
                 std::uint64_t seed, const std::string& csv_path, bool inverses) {
    ProblemFile pf;
    try {
        pf = parse_problem(slurp(path));
    } catch (const std::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitFileError;
    }
    SimConfig cfg;
    cfg.max_samples = budget;
    cfg.box_radius = box;
    cfg.grid = grid;
    cfg.seed = seed;
    cfg.include_inverses = inverses;
    cfg.checkpoints = {budget / 100, budget / 10, budget};
    try {
        NormalForm nf = find_normal_form(pf.generators);
        for (const auto& c : nf.w0) cfg.start.push_back(c.approx());
    } catch (const std::exception&) {
        cfg.start.assign(pf.n, {0.0, 0.0});
    }
    CoverageResult result = run_simulation(pf.generators, cfg);
    std::string csv = coverage_csv(result);
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) {
            std::cerr << "cannot write " << csv_path << "\n";
            return kExitFileError;
        }
        out << csv;
    }
    std::cout << csv;
    std::cout << "# heuristic evidence only, never a certificate\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hypercyclicity decision for abelian affine semigroups on C^n"};
    app.require_subcommand(1);

    std::string file, mode, csv_path;
    double eig_tol = -1, box = 2.0;
    long long lattice_bound = -1;
    bool as_json = false, accept_heuristic = false;
    std::size_t budget = 100000, grid = 8;
    std::uint64_t seed = 0;

    auto* validate = app.add_subcommand("validate", "check a problem file");
    validate->add_option("file", file)->required();

    auto* decide = app.add_subcommand("decide", "decide hypercyclicity");
    decide->add_option("file", file)->required();
    decide->add_option("--mode", mode)->check(CLI::IsMember({"exact", "numeric", "auto"}));
    decide->add_option("--eig-tol", eig_tol);
    decide->add_option("--lattice-bound", lattice_bound);
    decide->add_flag("--json", as_json);
    decide->add_flag("--accept-heuristic", accept_heuristic);

    auto* nf = app.add_subcommand("normal-form", "compute the conjugating P and eta");
    nf->add_option("file", file)->required();
    nf->add_flag("--json", as_json);

    auto* wit = app.add_subcommand("witness", "compute or verify log witnesses");
    wit->add_option("file", file)->required();
    wit->add_flag("--json", as_json);

    auto* sim = app.add_subcommand("simulate", "sample the orbit and report coverage");
    sim->add_option("file", file)->required();
    sim->add_option("--budget", budget);
    sim->add_option("--box", box);
    sim->add_option("--grid", grid);
    sim->add_option("--seed", seed);
    sim->add_option("--csv", csv_path);
    bool inverses = false;
    sim->add_flag("--inverses", inverses,
                  "sample the group orbit (apply inverses too)");

    CLI11_PARSE(app, argc, argv);

    if (validate->parsed()) return run_validate(file);
    if (decide->parsed())
        return run_decide(file, mode == "auto" ? "" : mode, eig_tol, lattice_bound, as_json,
                          accept_heuristic);
    if (nf->parsed()) return run_normal_form(file, as_json);
    if (wit->parsed()) return run_witness(file, as_json);
    if (sim->parsed()) return run_simulate(file, budget, box, grid, seed, csv_path, inverses);
    return kExitInternal;
}
