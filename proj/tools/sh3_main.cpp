// Command-line front end: spectrum tables, transition classification,
// reduced-system and PDE simulation, phase diagrams and radius scans.
//
// Exit codes: 0 ok, 2 validation error, 3 degenerate/indeterminate result
// (including cycle searches that end without a cycle), 4 numerical escape.

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sh3/errors.hpp"
#include "sh3/manifold.hpp"
#include "sh3/params.hpp"
#include "sh3/pde.hpp"
#include "sh3/reduced.hpp"
#include "sh3/spectrum.hpp"
#include "sh3/sweep.hpp"
#include "sh3/transition.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitIndeterminate = 3;
constexpr int kExitEscape = 4;

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os << content;
}

void emit(const std::string& content, const std::string& path) {
    if (path.empty())
        std::cout << content;
    else
        write_file(path, content);
}

json complex_json(std::complex<double> z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json report_json(const sh3::ClassificationReport& rep) {
    json j;
    j["partition"] = sh3::to_string(rep.analysis.partition_class);
    j["k"] = rep.analysis.k;
    j["multiplicity"] = rep.analysis.multiplicity;
    j["lambda0"] = rep.analysis.lambda0;
    j["type"] = sh3::to_string(rep.ttype);
    j["bifurcation"] = rep.bifurcation;
    if (const auto* s = std::get_if<sh3::SingleHopfNumbers>(&rep.numbers)) {
        j["numbers"] = {{"P", complex_json(s->P)}, {"beta_k", complex_json(s->beta_k)}};
    } else if (const auto* d = std::get_if<sh3::DoubleHopfNumbers>(&rep.numbers)) {
        j["numbers"] = {{"A", complex_json(d->A)},   {"B", complex_json(d->B)},
                        {"C", complex_json(d->C)},   {"D", complex_json(d->D)},
                        {"eta1", d->eta1},           {"eta2", d->eta2},
                        {"eta3", d->eta3},           {"m1", d->m1},
                        {"m2", d->m2}};
    }
    return j;
}

std::vector<double> parse_doubles(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stod(tok));
    return out;
}

// Problem parameters shared by every subcommand. They live on the top-level
// app (with fallthrough) so a flat "key = value" config file binds them and
// flags may appear on either side of the subcommand name.
struct Common {
    double ell = 2.0 * std::numbers::pi;
    double sigma = 0.0;
    double b = 0.0;
    double lambda = 0.0;
    int i4_k = 0;  // when > 0, resolves ell = i4_length(i4_k)

    sh3::SystemParams params() const {
        sh3::SystemParams p{i4_k > 0 ? sh3::i4_length(i4_k) : ell, sigma, b, lambda};
        p.validate();
        return p;
    }
};

void add_common(CLI::App& app, Common& c) {
    app.add_option("--ell", c.ell, "domain length");
    app.add_option("--i4-k", c.i4_k, "resolve ell to the k-th double-crossing length");
    app.add_option("--sigma", c.sigma, "dispersion coefficient");
    app.add_option("--b", c.b, "quadratic coefficient");
    app.add_option("--lambda", c.lambda, "control parameter");
}

sh3::ReducedSystem make_field(const std::string& name, const sh3::SystemParams& p) {
    if (name == "cubic") return sh3::make_planar_cubic(p, sh3::CubicCoeffs::AtLambda0);
    if (name == "cubic-lambda") return sh3::make_planar_cubic(p, sh3::CubicCoeffs::AtLambda);
    if (name == "full") return sh3::make_planar_full_projection(p);
    throw CLI::ValidationError("--field", "unknown field: " + name);
}

sh3::SpectralField make_init(const std::string& spec, int n_modes, double ell) {
    std::stringstream ss(spec);
    std::string kind;
    std::getline(ss, kind, ':');
    std::vector<std::string> args;
    for (std::string tok; std::getline(ss, tok, ':');) args.push_back(tok);

    if (kind == "zero") return sh3::zero_field(n_modes, ell);
    if (kind == "constant")
        return sh3::constant_field(n_modes, ell, args.empty() ? 0.0 : std::stod(args[0]));
    if (kind == "cosine") {
        const int k = args.empty() ? 1 : std::stoi(args[0]);
        const double amp = args.size() > 1 ? std::stod(args[1]) : 1.0;
        return sh3::cosine_field(n_modes, ell, k, amp);
    }
    if (kind == "random") {
        const std::uint64_t seed = args.empty() ? 0 : std::stoull(args[0]);
        const double amp = args.size() > 1 ? std::stod(args[1]) : 1e-3;
        return sh3::random_field(n_modes, ell, seed, amp);
    }
    throw CLI::ValidationError("--init", "unknown profile: " + kind);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Swift-Hohenberg with third-order dispersion: transition analysis toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key = value configuration file (# comments)");
    app.allow_config_extras(CLI::config_extras_mode::error);

    Common common;
    add_common(app, common);

    // --- spectrum ---
    auto* sp = app.add_subcommand("spectrum", "eigenvalue table (n, Re beta_n, Im beta_n)");
    int sp_nmax = 8;
    std::string sp_out;
    sp->add_option("--n-max", sp_nmax, "largest |n| listed");
    sp->add_option("--out", sp_out, "output CSV path (default stdout)");

    // --- classify ---
    auto* cl = app.add_subcommand("classify", "transition type and numbers as JSON");
    std::string cl_out;
    cl->add_option("--out", cl_out, "output JSON path (default stdout)");

    // --- simulate ---
    auto* si = app.add_subcommand("simulate", "integrate a reduced system or the PDE");
    std::string si_kind = "planar-cubic";
    std::string si_init = "0.9,0";
    std::string si_dir = "forward";
    std::string si_out;
    double si_tend = 100.0, si_dtmax = 0.01, si_tol = 1e-9, si_dt = 1e-3;
    int si_stride = 10, si_modes = 64;
    si->add_option("--kind", si_kind,
                   "real1d | planar-cubic | planar-cubic-lambda | planar-full | "
                   "real-complex | double-hopf | pde");
    si->add_option("--init", si_init, "comma-separated initial state (pde: profile spec)");
    si->add_option("--direction", si_dir, "forward | backward");
    si->add_option("--t-end", si_tend, "integration time");
    si->add_option("--dt-max", si_dtmax, "max adaptive step");
    si->add_option("--tol", si_tol, "local error tolerance");
    si->add_option("--dt", si_dt, "PDE time step");
    si->add_option("--n-modes", si_modes, "PDE spectral resolution");
    si->add_option("--record-stride", si_stride, "record every n-th step");
    si->add_option("--out", si_out, "trajectory CSV path (default stdout)");

    // --- limit-cycle ---
    auto* lc = app.add_subcommand("limit-cycle", "Poincare-section cycle search");
    std::string lc_field = "cubic", lc_init = "0.9,0", lc_dir = "forward";
    double lc_tmax = 4000.0;
    lc->add_option("--field", lc_field, "cubic | cubic-lambda | full");
    lc->add_option("--init", lc_init, "initial (u1,u2)");
    lc->add_option("--direction", lc_dir, "forward | backward");
    lc->add_option("--t-max", lc_tmax, "search time budget");

    // --- phase-diagram ---
    auto* pd = app.add_subcommand("phase-diagram", "classify over a (sigma, b) grid");
    std::string pd_sigma = "0:10:101", pd_b = "0:2:101";
    std::string pd_out = "phase_diagram.csv", pd_bout = "boundary.csv";
    int pd_threads = 0;
    pd->add_option("--sigma-range", pd_sigma, "lo:hi:count");
    pd->add_option("--b-range", pd_b, "lo:hi:count");
    pd->add_option("--threads", pd_threads, "sweep parallelism (0 = SH3_THREADS/auto)");
    pd->add_option("--out", pd_out, "grid CSV path");
    pd->add_option("--boundary-out", pd_bout, "boundary CSV path");

    // --- radius-scan ---
    auto* rs = app.add_subcommand("radius-scan", "cycle radius vs lambda");
    std::string rs_lambdas = "1e-4,3e-4,1e-3,3e-3,1e-2";
    std::string rs_method = "cubic", rs_out;
    rs->add_option("--lambdas", rs_lambdas, "comma-separated lambda values");
    rs->add_option("--method", rs_method, "cubic | cubic-lambda | full");
    rs->add_option("--out", rs_out, "output CSV path (default stdout)");

    // --- pde ---
    auto* pe = app.add_subcommand("pde", "pseudospectral simulation of the full equation");
    std::string pe_init = "cosine:1:0.9", pe_out, pe_meta, pe_mode_out;
    double pe_dt = 1e-3, pe_tend = 100.0;
    int pe_modes = 64, pe_every = 100, pe_mode_k = 1;
    bool pe_no_dealias = false, pe_linear = false;
    pe->add_option("--init", pe_init, "zero | constant:v | cosine:k:amp | random:seed:amp");
    pe->add_option("--dt", pe_dt, "time step");
    pe->add_option("--t-end", pe_tend, "simulation time");
    pe->add_option("--n-modes", pe_modes, "spectral resolution N");
    pe->add_option("--record-every", pe_every, "snapshot stride in steps");
    pe->add_flag("--no-dealias", pe_no_dealias, "disable the 2/3 rule");
    pe->add_flag("--linear-only", pe_linear, "drop the nonlinearity (test mode)");
    pe->add_option("--out", pe_out, "final field snapshot CSV (x,u)");
    pe->add_option("--meta-out", pe_meta, "run metadata JSON");
    pe->add_option("--mode-k", pe_mode_k, "mode index for the amplitude history");
    pe->add_option("--mode-out", pe_mode_out, "mode amplitude history CSV (t,u1,u2)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (sp->parsed()) {
            const sh3::SystemParams p = common.params();
            if (sp_nmax < 0) throw std::invalid_argument("--n-max must be >= 0");
            std::string out = "n,re,im\n";
            for (int n = -sp_nmax; n <= sp_nmax; ++n) {
                const std::complex<double> beta = sh3::growth_rate(n, p);
                out += std::to_string(n) + "," + fmt17(beta.real()) + "," + fmt17(beta.imag()) +
                       "\n";
            }
            emit(out, sp_out);
        }

        if (cl->parsed()) {
            const sh3::SystemParams p = common.params();
            json j;
            int code = kExitOk;
            try {
                j = report_json(sh3::classify(p.ell, p.sigma, p.b));
            } catch (const sh3::DegenerateTransitionNumber& e) {
                j = {{"type", "degenerate"}, {"error", e.what()}};
                code = kExitIndeterminate;
            } catch (const sh3::IndeterminateBranch& e) {
                j = {{"type", "indeterminate"}, {"error", e.what()}};
                code = kExitIndeterminate;
            }
            emit(j.dump(2) + "\n", cl_out);
            return code;
        }

        if (si->parsed()) {
            const sh3::SystemParams p = common.params();
            const sh3::Direction dir =
                si_dir == "backward" ? sh3::Direction::Backward : sh3::Direction::Forward;

            if (si_kind == "pde") {
                sh3::PdeRunOptions opts;
                opts.dt = si_dt;
                opts.t_end = si_tend;
                opts.record_every = si_stride;
                const sh3::SpectralField init = make_init(si_init, si_modes, p.ell);
                const sh3::PdeRun run = sh3::simulate(init, p, opts);
                const int k = std::max(1, sh3::analyze(p.ell).k);
                std::string out = "t,u1,u2\n";
                for (size_t i = 0; i < run.times.size(); ++i) {
                    const auto [u1, u2] = sh3::mode_amplitudes(run.fields[i], k);
                    out += fmt17(run.times[i]) + "," + fmt17(u1) + "," + fmt17(u2) + "\n";
                }
                emit(out, si_out);
                if (run.escaped) {
                    std::cerr << "pde: escaped to non-finite state near t = " << run.t_escape
                              << "\n";
                    return kExitEscape;
                }
                return kExitOk;
            }

            sh3::ReducedSystem sys;
            if (si_kind == "real1d")
                sys = sh3::make_real1d(p);
            else if (si_kind == "planar-cubic")
                sys = sh3::make_planar_cubic(p, sh3::CubicCoeffs::AtLambda0);
            else if (si_kind == "planar-cubic-lambda")
                sys = sh3::make_planar_cubic(p, sh3::CubicCoeffs::AtLambda);
            else if (si_kind == "planar-full")
                sys = sh3::make_planar_full_projection(p);
            else if (si_kind == "real-complex")
                sys = sh3::make_real_complex_3d(p);
            else if (si_kind == "double-hopf")
                sys = sh3::make_double_hopf_4d(p);
            else
                throw CLI::ValidationError("--kind", "unknown system: " + si_kind);

            const std::vector<double> u0 = parse_doubles(si_init);
            sh3::IntegrateOptions opts;
            opts.t_end = si_tend;
            opts.dt_max = si_dtmax;
            opts.tol = si_tol;
            opts.record_stride = si_stride;

            // Stream rows so partial output survives an escape.
            std::ostringstream rows;
            rows << "t";
            for (int i = 1; i <= sys.dim; ++i) rows << ",u" << i;
            rows << "\n";
            auto observer = [&rows](double t, const std::vector<double>& u) {
                rows << fmt17(t);
                for (double v : u) rows << "," << fmt17(v);
                rows << "\n";
            };
            try {
                sh3::integrate(sys, u0, opts, dir, observer);
            } catch (const sh3::NonFiniteState& e) {
                emit(rows.str(), si_out);
                std::cerr << "simulate: " << e.what() << "\n";
                return kExitEscape;
            }
            emit(rows.str(), si_out);
            return kExitOk;
        }

        if (lc->parsed()) {
            const sh3::SystemParams p = common.params();
            const sh3::ReducedSystem sys = make_field(lc_field, p);
            const sh3::Direction dir =
                lc_dir == "backward" ? sh3::Direction::Backward : sh3::Direction::Forward;
            sh3::CycleOptions opts;
            opts.t_max = lc_tmax;
            try {
                const sh3::LimitCycle cyc =
                    sh3::find_limit_cycle(sys, parse_doubles(lc_init), dir, opts);
                json j{{"radius", cyc.radius},
                       {"mean_radius", cyc.mean_radius},
                       {"period", cyc.period},
                       {"stability", cyc.stable ? "stable" : "unstable"}};
                std::cout << j.dump(2) << "\n";
            } catch (const sh3::NoCycleFound& e) {
                std::cerr << "limit-cycle: " << e.what() << "\n";
                return kExitIndeterminate;
            }
            return kExitOk;
        }

        if (pd->parsed()) {
            const sh3::SystemParams p = common.params();
            const std::vector<double> sr = parse_doubles(
                [&] { std::string s = pd_sigma; for (char& ch : s) if (ch == ':') ch = ','; return s; }());
            const std::vector<double> br = parse_doubles(
                [&] { std::string s = pd_b; for (char& ch : s) if (ch == ':') ch = ','; return s; }());
            if (sr.size() != 3 || br.size() != 3)
                throw std::invalid_argument("ranges must be lo:hi:count");
            sh3::GridSpec grid{sr[0], sr[1], static_cast<int>(sr[2]),
                               br[0], br[1], static_cast<int>(br[2])};
            const sh3::PhaseDiagram diagram = sh3::phase_diagram(p.ell, grid, pd_threads);
            write_file(pd_out, sh3::phase_diagram_csv(diagram));
            write_file(pd_bout, sh3::boundary_csv(diagram));
            std::cerr << "phase-diagram: " << grid.sigma_count * grid.b_count << " cells, "
                      << diagram.boundary.size() << " boundary points\n";
            return kExitOk;
        }

        if (rs->parsed()) {
            const sh3::SystemParams p = common.params();
            sh3::RadiusMethod method = sh3::RadiusMethod::Cubic;
            if (rs_method == "cubic-lambda") method = sh3::RadiusMethod::CubicAtLambda;
            else if (rs_method == "full") method = sh3::RadiusMethod::FullProjection;
            else if (rs_method != "cubic")
                throw CLI::ValidationError("--method", "unknown method: " + rs_method);
            const auto rows =
                sh3::radius_scan(p.ell, p.sigma, p.b, parse_doubles(rs_lambdas), method);
            emit(sh3::radius_scan_csv(rows, method), rs_out);
            return kExitOk;
        }

        if (pe->parsed()) {
            const sh3::SystemParams p = common.params();
            sh3::PdeRunOptions opts;
            opts.dt = pe_dt;
            opts.t_end = pe_tend;
            opts.record_every = pe_every;
            opts.dealias = !pe_no_dealias;
            opts.linear_only = pe_linear;

            const sh3::SpectralField init = make_init(pe_init, pe_modes, p.ell);
            const sh3::PdeRun run = sh3::simulate(init, p, opts);

            if (!pe_out.empty() || pe_mode_out.empty())
                emit(sh3::field_csv(run.fields.back()), pe_out);
            if (!pe_mode_out.empty()) {
                std::string out = "t,u1,u2\n";
                for (size_t i = 0; i < run.times.size(); ++i) {
                    const auto [u1, u2] = sh3::mode_amplitudes(run.fields[i], pe_mode_k);
                    out += fmt17(run.times[i]) + "," + fmt17(u1) + "," + fmt17(u2) + "\n";
                }
                write_file(pe_mode_out, out);
            }
            if (!pe_meta.empty()) {
                json meta{{"ell", p.ell},          {"sigma", p.sigma},
                          {"b", p.b},              {"lambda", p.lambda},
                          {"n_modes", pe_modes},   {"dt", opts.dt},
                          {"t_end", opts.t_end},   {"dealias", opts.dealias},
                          {"escaped", run.escaped}, {"t_escape", run.t_escape},
                          {"init", pe_init}};
                write_file(pe_meta, meta.dump(2) + "\n");
            }
            if (run.escaped) {
                std::cerr << "pde: escaped to non-finite state near t = " << run.t_escape << "\n";
                return kExitEscape;
            }
            return kExitOk;
        }
    } catch (const sh3::AmbiguousPartition& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const sh3::WrongClass& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const sh3::NonzeroB& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const sh3::DegenerateTransitionNumber& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIndeterminate;
    } catch (const sh3::IndeterminateBranch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIndeterminate;
    } catch (const sh3::NonFiniteState& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEscape;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
