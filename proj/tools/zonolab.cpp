// zonolab: compute / verify / sample / search front end for zonotope
// functionals given by generator vectors.
//
// Exit codes: 0 success (no violation), 1 violation or finding,
// 2 usage/config error, 3 internal numeric failure.

#include "CLI11.hpp"

#include "zonolab/functionals.hpp"
#include "zonolab/generator_set.hpp"
#include "zonolab/inequalities.hpp"
#include "zonolab/io.hpp"
#include "zonolab/radii.hpp"
#include "zonolab/rng.hpp"
#include "zonolab/search.hpp"
#include "zonolab/stochastic.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace zonolab;

namespace {

int resolve_workers(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("ZONOLAB_WORKERS")) {
        int w = std::atoi(env);
        if (w > 0) return w;
    }
    return 1;
}

std::string iso_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

// Every run emits a manifest. Timestamps stay out of the reports themselves
// so reports are byte-identical across reruns.
json make_manifest(const std::string& command_line, const std::string& config_digest,
                   std::uint64_t seed, const std::string& started, const std::string& finished) {
    json m;
    m["schema_version"] = kSchemaVersion;
    m["command_line"] = command_line;
    m["config_digest"] = config_digest;
    m["seed"] = seed;
    m["rng_version"] = kRngVersion;
    m["tool_version"] = kToolVersion;
    m["started_at"] = started;
    m["finished_at"] = finished;
    return m;
}

void emit_manifest(const json& manifest, const std::string& path) {
    if (path.empty()) {
        std::cerr << manifest.dump() << "\n";
    } else {
        write_file(path, manifest.dump(2) + "\n");
    }
}

GeneratorSet load_generator_set(const std::string& path) {
    std::string text = read_file(path);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, col] = line_column(text, e.byte);
        throw ConfigError(path + ":" + std::to_string(line) + ":" + std::to_string(col) +
                          ": JSON parse error: " + e.what());
    }
    return generator_set_from_json(j);
}

std::string signs_to_string(const SignVector& s) {
    std::string out;
    for (int8_t v : s.signs) out += (v > 0 ? '+' : '-');
    return out;
}

json certificate_json(const CircumradiusCertificate& c) {
    json j;
    j["value"] = c.value;
    j["witness_signs"] = signs_to_string(c.witness);
    return j;
}

json certificate_json(const InradiusCertificate& c) {
    json j;
    j["value"] = c.value;
    json n = json::array();
    for (int i = 0; i < c.normal.size(); ++i) n.push_back(c.normal(i));
    j["witness_normal"] = n;
    return j;
}

// ---------------------------------------------------------------- compute --

struct ComputeOptions {
    std::string input;
    std::string output;
    std::string csv;
    std::string manifest;
    bool all = false;
    bool radii = false;
    bool steiner = false;
    bool proj_body = false;
    bool allow_large = false;
    int vk = -1;
    int power_k = 0;
    double alpha = 2.0;
};

int run_compute(const ComputeOptions& opt, const std::string& command_line) {
    std::string started = iso_timestamp();
    GeneratorSet gs = load_generator_set(opt.input);

    json rep;
    rep["schema_version"] = kSchemaVersion;
    rep["input_digest"] = generator_set_digest(gs);
    rep["label"] = gs.label ? json(*gs.label) : json(nullptr);
    rep["n"] = gs.size();
    rep["dim"] = gs.dim;
    {
        // canonical vs centered framing: the centered form is the translate
        // of Z by -(1/2) sum p_i
        CenteredForm cf = center(gs);
        json t = json::array();
        for (int i = 0; i < cf.translate.size(); ++i) t.push_back(cf.translate(i));
        rep["centering_translate"] = t;
    }

    if (opt.all || opt.vk >= 0) {
        if (opt.all) {
            FunctionalsReport fr = functionals_report(gs, opt.allow_large);
            json frj = functionals_report_to_json(fr);
            rep["intrinsic_volumes"] = frj["intrinsic_volumes"];
            rep["mean_width"] = frj["mean_width"];
            rep["surface_area"] = frj["surface_area"];
            rep["methods"] = frj["methods"];
            if (!opt.csv.empty()) {
                bool fresh = !fs::exists(opt.csv) || fs::file_size(opt.csv) == 0;
                std::ofstream out(opt.csv, std::ios::app);
                if (fresh) out << functionals_csv_header(gs.dim) << "\n";
                out << functionals_csv_row(fr) << "\n";
            }
        } else {
            rep["V_" + std::to_string(opt.vk)] = intrinsic_volume(gs, opt.vk, opt.allow_large);
        }
    }
    if (opt.radii || opt.all) {
        RatioReport rr = ratio_report(gs, opt.allow_large);
        json radii;
        radii["circumradius"] = certificate_json(rr.cirr);
        radii["inradius"] = certificate_json(rr.ir);
        radii["ratio_minus_one"] = rr.ratio_minus_one;
        rep["radii"] = radii;
    }
    if (opt.steiner || opt.all) {
        SteinerPolynomial sp = steiner_polynomial(gs, opt.allow_large);
        json cs = json::array();
        for (double c : sp.coeffs) cs.push_back(c);
        rep["steiner_coefficients"] = cs;
    }
    if (opt.power_k > 0) {
        PowerKVolume pk = power_k_volume(gs, opt.power_k, opt.alpha, opt.allow_large);
        json p;
        p["k"] = pk.k;
        p["alpha"] = pk.alpha;
        p["value"] = pk.value;
        rep["power_k_volume"] = p;
    }
    if (opt.proj_body) rep["projection_body"] = generator_set_to_json(projection_body(gs));

    std::string text = rep.dump(2) + "\n";
    if (opt.output.empty())
        std::cout << text;
    else
        write_file(opt.output, text);

    emit_manifest(make_manifest(command_line, rep["input_digest"].get<std::string>(), 0,
                                started, iso_timestamp()),
                  opt.manifest);
    return 0;
}

// ----------------------------------------------------------------- verify --

struct VerifyOptions {
    std::string suite;
    long trials = 1000;
    long samples = 100000;
    int d = 3;
    int n = 6;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int workers = 0;
    std::string csv;
    std::string summary;
    std::string manifest;
};

std::vector<std::string> verify_suite_names() {
    std::vector<std::string> names = suite_names();
    names.insert(names.end(), {"maclaurin", "vector-maclaurin", "lemma6", "expected-volume",
                               "cauchy", "kubota", "steiner-mc", "planar-bounds",
                               "thm5-counterexample"});
    return names;
}

int run_verify(VerifyOptions opt, const std::string& command_line) {
    std::string started = iso_timestamp();
    int workers = resolve_workers(opt.workers);
    if (!opt.seed_set) opt.seed = std::random_device{}();

    json summary;
    summary["schema_version"] = kSchemaVersion;
    summary["suite"] = opt.suite;
    summary["seed"] = opt.seed;
    summary["rng_version"] = kRngVersion;
    std::ostringstream csv;
    int violations = 0;

    auto finish = [&](int exit_code) {
        summary["violations"] = violations;
        std::string text = summary.dump(2) + "\n";
        if (opt.summary.empty())
            std::cout << text;
        else
            write_file(opt.summary, text);
        if (!opt.csv.empty()) write_file(opt.csv, csv.str());
        emit_manifest(make_manifest(command_line, hex64(fnv1a64(opt.suite)), opt.seed,
                                    started, iso_timestamp()),
                      opt.manifest);
        return exit_code;
    };

    auto theorem_names = suite_names();
    if (std::find(theorem_names.begin(), theorem_names.end(), opt.suite) !=
        theorem_names.end()) {
        SuiteResult r = verify_theorem_suite(suite_from_name(opt.suite),
                                             static_cast<int>(opt.trials), opt.seed, opt.d,
                                             workers);
        csv << "trial,lhs,rhs,slack,equality,digest\n";
        for (std::size_t i = 0; i < r.verdicts.size(); ++i) {
            const auto& v = r.verdicts[i];
            csv << i << ',' << format_double(v.lhs) << ',' << format_double(v.rhs) << ','
                << format_double(v.slack) << ',' << (v.equality_within_tol ? 1 : 0) << ','
                << v.input_digest << "\n";
        }
        violations = r.violations;
        summary["min_slack"] = r.min_slack;
        summary["argmin_digest"] = r.argmin_digest;
        if (!r.note.empty()) summary["note"] = r.note;
        return finish(violations == 0 ? 0 : 1);
    }

    if (opt.suite == "maclaurin") {
        CounterRng rng(opt.seed);
        double min_slack = std::numeric_limits<double>::infinity();
        csv << "trial,m,min_step_slack\n";
        for (long t = 0; t < opt.trials; ++t) {
            int m = 2 + static_cast<int>(rng.next_u64() % 11);
            std::vector<double> xs;
            for (int i = 0; i < m; ++i) xs.push_back(std::exp(2.0 * rng.next_gaussian()));
            auto chain = maclaurin_chain(xs);
            double worst = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k + 1 < chain.size(); ++k)
                worst = std::min(worst, chain[k] - chain[k + 1] + 1e-12 * chain[k]);
            if (worst < 0) ++violations;
            min_slack = std::min(min_slack, worst);
            csv << t << ',' << m << ',' << format_double(worst) << "\n";
        }
        summary["min_slack"] = min_slack;
        return finish(violations == 0 ? 0 : 1);
    }

    if (opt.suite == "vector-maclaurin") {
        CounterRng rng(opt.seed);
        double min_slack = std::numeric_limits<double>::infinity();
        csv << "trial,k,lhs,rhs,slack\n";
        for (long t = 0; t < opt.trials; ++t) {
            int n = std::max(opt.d, 3) + static_cast<int>(rng.next_u64() % 4);
            GeneratorSet gs = random_unit_generators(n, opt.d, opt.seed + 1000 + t);
            for (int k = 2; k <= opt.d; ++k) {
                InequalityVerdict v = vector_maclaurin(gs, k, 2.0);
                if (!v.holds) ++violations;
                min_slack = std::min(min_slack, v.slack);
                csv << t << ',' << k << ',' << format_double(v.lhs) << ','
                    << format_double(v.rhs) << ',' << format_double(v.slack) << "\n";
            }
        }
        summary["min_slack"] = min_slack;
        return finish(violations == 0 ? 0 : 1);
    }

    if (opt.suite == "lemma6") {
        MCEstimate est = expected_random_wedge(opt.d, opt.samples, opt.seed, workers);
        summary["estimate"] = est.mean;
        summary["std_error"] = est.std_error;
        summary["closed_form"] = est.reference;
        bool ok = std::abs(est.mean - est.reference) <= 4.0 * est.std_error;
        if (!ok) ++violations;
        csv << "quantity,estimate,std_error,closed_form\n";
        csv << "wedge_expectation," << format_double(est.mean) << ','
            << format_double(est.std_error) << ',' << format_double(est.reference) << "\n";
        return finish(ok ? 0 : 1);
    }

    if (opt.suite == "expected-volume") {
        MCEstimate est =
            expected_volume_random_zonotope(opt.n, opt.d, opt.samples, opt.seed, workers);
        summary["estimate"] = est.mean;
        summary["std_error"] = est.std_error;
        summary["closed_form"] = est.reference;
        bool ok = std::abs(est.mean - est.reference) <= 4.0 * est.std_error;
        if (!ok) ++violations;
        return finish(ok ? 0 : 1);
    }

    if (opt.suite == "cauchy" || opt.suite == "kubota" || opt.suite == "steiner-mc") {
        GeneratorSet cube = make_cube(opt.d, 1.0);
        MCEstimate est;
        if (opt.suite == "cauchy") {
            est = cauchy_surface_integral(cube, opt.samples, opt.seed, workers);
        } else if (opt.suite == "kubota") {
            est = kubota_intrinsic_integral(cube, 1, 2, opt.samples, opt.seed, workers);
        } else {
            SteinerMCResult r = steiner_mc_volume(cube, 0.5, opt.samples, opt.seed, workers);
            est = r.estimate;
            summary["resampled_points"] = r.resampled_points;
        }
        summary["estimate"] = est.mean;
        summary["std_error"] = est.std_error;
        summary["reference"] = est.reference;
        bool ok = std::abs(est.mean - est.reference) <= 4.0 * est.std_error;
        if (!ok) ++violations;
        return finish(ok ? 0 : 1);
    }

    if (opt.suite == "planar-bounds") {
        csv << probe_csv_header() << "\n";
        std::vector<int> ns;
        for (int n = 2; n <= 64; ++n) ns.push_back(n);
        auto rows = asymptotic_probe(ProbeFamily::planar_regular, 2, ns, opt.seed);
        double min_slack = std::numeric_limits<double>::infinity();
        for (const auto& r : rows) {
            csv << probe_csv_row(r) << "\n";
            if (r.quantity == "V_2/V_i(B)-1@ir=1") {
                double slack = r.value - r.bound_vol;
                min_slack = std::min(min_slack, slack);
                if (slack < -1e-12) ++violations;
            }
            if (r.quantity == "1-V_1/V_i(B)@cirr=1") {
                double lemma7 = M_PI * M_PI / (24.0 * r.n * r.n) -
                                std::pow(M_PI, 4) / (1920.0 * std::pow(r.n, 4));
                double slack = r.value - lemma7;
                min_slack = std::min(min_slack, slack);
                if (slack < -1e-12) ++violations;
            }
        }
        summary["min_slack"] = min_slack;
        return finish(violations == 0 ? 0 : 1);
    }

    if (opt.suite == "thm5-counterexample") {
        Thm5Counterexample ce = thm5_counterexample(opt.d);
        summary["cirr_regular"] = ce.cirr_reg;
        summary["cirr_prime"] = ce.cirr_prime;
        summary["width_regular"] = ce.width_reg;
        summary["width_prime"] = ce.width_prime;
        bool widths_equal = std::abs(ce.width_prime - ce.width_reg) <= 1e-12 * ce.width_reg;
        bool cirr_below = ce.cirr_prime < ce.cirr_reg - 1e-8;
        if (!(widths_equal && cirr_below)) ++violations;
        return finish(violations == 0 ? 0 : 1);
    }

    std::ostringstream names;
    for (const auto& n : verify_suite_names()) names << "\n  " << n;
    throw ConfigError("unknown suite '" + opt.suite + "'; available:" + names.str());
}

// ----------------------------------------------------------------- sample --

struct SampleOptions {
    std::string family;
    std::string n_spec = "8";
    int d = 3;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string out_dir = ".";
    std::string manifest;
};

std::vector<int> parse_n_spec(const std::string& spec) {
    std::vector<int> ns;
    auto dots = spec.find("..");
    if (dots == std::string::npos) {
        ns.push_back(std::stoi(spec));
    } else {
        int lo = std::stoi(spec.substr(0, dots));
        int hi = std::stoi(spec.substr(dots + 2));
        if (lo > hi) throw ConfigError("sample: bad n range " + spec);
        for (int n = lo; n <= hi; ++n) ns.push_back(n);
    }
    return ns;
}

int run_sample(SampleOptions opt, const std::string& command_line) {
    std::string started = iso_timestamp();
    if (!opt.seed_set) opt.seed = std::random_device{}();
    ProbeFamily family = probe_family_from_name(opt.family);
    if (family == ProbeFamily::fibonacci_sphere && opt.d != 3)
        throw ConfigError("sample: fibonacci-sphere requires --d 3");
    if (family == ProbeFamily::planar_regular) opt.d = 2;
    std::vector<int> ns = parse_n_spec(opt.n_spec);

    fs::create_directories(opt.out_dir);
    for (int n : ns) {
        GeneratorSet gs;
        switch (family) {
            case ProbeFamily::random_uniform:
                gs = random_unit_generators(n, opt.d, opt.seed + n);
                break;
            case ProbeFamily::planar_regular:
                gs = make_regular_zonogon(n, 1.0);
                break;
            case ProbeFamily::fibonacci_sphere:
                gs = fibonacci_sphere_generators(n);
                break;
        }
        std::string name = opt.family + "_n" + std::to_string(n) + "_d" +
                           std::to_string(gs.dim) + "_seed" + std::to_string(opt.seed) +
                           ".json";
        write_file((fs::path(opt.out_dir) / name).string(),
                   generator_set_to_json(gs).dump(2) + "\n");
    }

    auto rows = asymptotic_probe(family, opt.d, ns, opt.seed);
    std::ostringstream csv;
    csv << probe_csv_header() << "\n";
    for (const auto& r : rows) csv << probe_csv_row(r) << "\n";
    write_file((fs::path(opt.out_dir) / (opt.family + "_probe.csv")).string(), csv.str());

    emit_manifest(make_manifest(command_line, hex64(fnv1a64(opt.family + opt.n_spec)),
                                opt.seed, started, iso_timestamp()),
                  opt.manifest);
    return 0;
}

// ----------------------------------------------------------------- search --

int run_search_cmd(const std::string& config_path, const std::string& run_dir,
                   int workers_flag, const std::string& command_line) {
    std::string started = iso_timestamp();
    std::string text = read_file(config_path);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, col] = line_column(text, e.byte);
        throw ConfigError(config_path + ":" + std::to_string(line) + ":" +
                          std::to_string(col) + ": JSON parse error: " + e.what());
    }
    bool seed_given = j.contains("seed");
    SearchConfig cfg = search_config_from_json(j);
    if (!seed_given) cfg.seed = std::random_device{}();

    int workers = resolve_workers(workers_flag);
    SearchOutcome out = constrained_minimize(cfg, workers);

    fs::create_directories(run_dir);
    write_file((fs::path(run_dir) / "config.json").string(),
               search_config_to_json(cfg).dump(2) + "\n");
    write_file((fs::path(run_dir) / "outcome.json").string(),
               search_outcome_to_json(out).dump(2) + "\n");
    std::ostringstream trace;
    trace << "restart,best_value,best_iter\n";
    for (const auto& t : out.trace)
        trace << t.restart << ',' << format_double(t.best_value) << ',' << t.best_iter << "\n";
    write_file((fs::path(run_dir) / "trace.csv").string(), trace.str());

    emit_manifest(make_manifest(command_line, search_config_digest(cfg), cfg.seed, started,
                                iso_timestamp()),
                  (fs::path(run_dir) / "run_manifest.json").string());
    std::cout << "objective_value " << format_double(out.objective_value) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::string command_line;
    for (int i = 0; i < argc; ++i) {
        if (i) command_line += ' ';
        command_line += argv[i];
    }

    CLI::App app{"zonotope functionals, verification suites, and extremal search"};
    app.require_subcommand(1);

    ComputeOptions copt;
    CLI::App* compute = app.add_subcommand("compute", "evaluate functionals of a generator set");
    compute->add_option("input", copt.input, "GeneratorSet JSON file")->required();
    compute->add_flag("--all", copt.all, "all intrinsic volumes, width, surface, radii, steiner");
    compute->add_option("--vk", copt.vk, "single intrinsic volume V_k");
    compute->add_flag("--radii", copt.radii, "circumradius/inradius certificates");
    compute->add_flag("--steiner", copt.steiner, "steiner polynomial coefficients");
    compute->add_option("--power-k", copt.power_k, "total k-volume of power alpha");
    compute->add_option("--alpha", copt.alpha, "exponent for --power-k (default 2)");
    compute->add_flag("--projection-body", copt.proj_body, "emit the projection body");
    compute->add_flag("--allow-large", copt.allow_large, "override enumeration budgets");
    compute->add_option("-o,--output", copt.output, "report path (default stdout)");
    compute->add_option("--csv", copt.csv, "append a CSV row here");
    compute->add_option("--manifest", copt.manifest, "manifest path (default stderr)");

    VerifyOptions vopt;
    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", vopt.suite, "suite name")->required();
    verify->add_option("--trials", vopt.trials, "trial count");
    verify->add_option("--samples", vopt.samples, "monte carlo samples");
    verify->add_option("--d", vopt.d, "dimension");
    verify->add_option("--n", vopt.n, "generator count");
    verify->add_option("--seed", vopt.seed, "seed (recorded; random when omitted)")
        ->each([&vopt](const std::string&) { vopt.seed_set = true; });
    verify->add_option("--workers", vopt.workers, "worker cap (ZONOLAB_WORKERS fallback)");
    verify->add_option("--csv", vopt.csv, "per-trial CSV path");
    verify->add_option("--summary", vopt.summary, "JSON summary path (default stdout)");
    verify->add_option("--manifest", vopt.manifest, "manifest path (default stderr)");

    SampleOptions sopt;
    CLI::App* sample = app.add_subcommand("sample", "generate fixture families and probe tables");
    sample->add_option("family", sopt.family,
                       "random-uniform | planar-regular | fibonacci-sphere")
        ->required();
    sample->add_option("--n", sopt.n_spec, "count or range, e.g. 8 or 2..64");
    sample->add_option("--d", sopt.d, "dimension");
    sample->add_option("--seed", sopt.seed, "seed (recorded; random when omitted)")
        ->each([&sopt](const std::string&) { sopt.seed_set = true; });
    sample->add_option("--out", sopt.out_dir, "output directory");
    sample->add_option("--manifest", sopt.manifest, "manifest path (default stderr)");

    std::string search_config, search_dir = "run";
    int search_workers = 0;
    CLI::App* search = app.add_subcommand("search", "run an extremal search from a config");
    search->add_option("config", search_config, "SearchConfig JSON file")->required();
    search->add_option("--out", search_dir, "run directory");
    search->add_option("--workers", search_workers, "worker cap (ZONOLAB_WORKERS fallback)");

    try {
        app.parse(argc, argv);
        if (compute->parsed()) return run_compute(copt, command_line);
        if (verify->parsed()) return run_verify(vopt, command_line);
        if (sample->parsed()) return run_sample(sopt, command_line);
        if (search->parsed())
            return run_search_cmd(search_config, search_dir, search_workers, command_line);
        return 2;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const BoundExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ZonolabError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
