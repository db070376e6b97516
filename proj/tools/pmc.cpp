// Command-line entry point: build, certify, sample, dumps.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include <boost/math/distributions/beta.hpp>

#include "pmc/codes.hpp"
#include "pmc/decode.hpp"
#include "pmc/sampling.hpp"

using namespace pmc;

namespace {

enum Exit { kOk = 0, kUsage = 2, kResource = 3, kCertify = 4 };

struct Options {
    std::string circuit;
    std::vector<double> p;
    std::vector<int> T{1};
    int rounds = 0;
    std::string idle = "none";
    std::string decoder = "ec";
    std::optional<std::uint64_t> seed;
    std::uint64_t shots = 100000;
    int wmax = 16;
    double epsilon = 0.1;
    int workers = 0;
    int max_degree = 3;
    std::uint64_t budget = 50'000'000;
    std::string out;
};

const std::vector<std::string> kExperimentNames = {"53-square", "53-straightline", "52", "xx", "closed", "data-only"};

bool is_idle_experiment(const std::string& name) {
    return name == "53-square" || name == "53-straightline" || name == "52";
}

Experiment resolve(const Options& o, int T) {
    IdleConvention idle = idle_from_string(o.idle);
    if (std::filesystem::is_regular_file(o.circuit)) {
        std::ifstream in(o.circuit);
        std::stringstream ss;
        ss << in.rdbuf();
        Experiment e = make_circuit_experiment(parse_circuit(ss.str()), idle);
        e.name = std::filesystem::path(o.circuit).filename().string();
        return e;
    }
    if (o.rounds > 0) {
        Experiment e = make_window_experiment(round_kind_from_string(o.circuit), o.rounds, idle);
        e.name = o.circuit + "-window" + std::to_string(o.rounds);
        return e;
    }
    if (std::find(kExperimentNames.begin(), kExperimentNames.end(), o.circuit) != kExperimentNames.end())
        return make_experiment(o.circuit, T, idle);
    auto names = circuit_names();
    if (std::find(names.begin(), names.end(), o.circuit) != names.end()) {
        Experiment e = make_circuit_experiment(build_by_name(o.circuit), idle);
        e.name = o.circuit;
        return e;
    }
    throw UsageError("unknown circuit '" + o.circuit + "'");
}

struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;
    explicit Output(const std::string& path) {
        if (path.empty() || path == "-") return;
        file.open(path);
        if (!file) throw UsageError("cannot write '" + path + "'");
        os = &file;
    }
};

int cmd_build(const std::string& name, const Options& o) {
    Circuit c = build_by_name(name);
    Output out(o.out);
    *out.os << serialize_circuit(c);
    std::cerr << name << ": " << c.n_steps() << " steps, " << c.n_meas() << " measurements\n";
    return kOk;
}

int cmd_certify(const Options& o) {
    Experiment e = resolve(o, o.T.front());
    ErrorModel dem = build_error_model(e, o.workers);
    LookupTable t = build_lookup(dem, 1, 200'000'000, true);
    std::size_t uncorrected = 0, rejected = 0;
    for (std::size_t v = 0; v < dem.n_variants(); ++v) {
        if (dem.pre[v].any()) {
            ++rejected;
            continue;
        }
        if (e.failed(t.find(dem.syndrome[v])->logical ^ dem.logical[v])) ++uncorrected;
    }
    DistanceResult d = fault_distance(dem, o.max_degree);
    bool correctable = t.collisions.empty() && uncorrected == 0;
    bool distance_ok = d.d_f == 0 || d.d_f >= 3;

    std::cout << "circuit " << e.name << "\n";
    std::cout << "locations " << dem.n_locations() << ", variants " << dem.n_variants() << ", detectors "
              << e.detectors.size() << ", pre-selection checks " << e.pre_detectors.size() << "\n";
    std::cout << "degree-1 collisions " << t.collisions.size() << ", uncorrected " << uncorrected << ", pre-rejected "
              << rejected << "\n";
    auto one_line = [&](const std::vector<std::size_t>& vs) {
        std::string s = format_fault_config(dem.config(e.circuit, vs));
        std::replace(s.begin(), s.end(), '\n', ';');
        return s.empty() ? std::string("(no fault)") : s;
    };
    for (auto& c : t.collisions)
        std::cout << "  collision S " << c.syndrome.hex() << ": " << one_line(c.rep_a) << "  vs  " << one_line(c.rep_b) << "\n";
    if (d.d_f > 0)
        std::cout << "d_f = " << d.d_f << "\n";
    else
        std::cout << "d_f > " << d.searched << "\n";
    if (!d.witness.empty()) std::cout << "witness\n" << format_fault_config(dem.config(e.circuit, d.witness));
    std::cout << (correctable ? "degree-1 correctable" : "not degree-1 correctable") << "\n";

    nlohmann::json j = {{"circuit", e.name},
                        {"locations", dem.n_locations()},
                        {"detectors", e.detectors.size()},
                        {"collisions", t.collisions.size()},
                        {"uncorrected", uncorrected},
                        {"d_f", d.d_f},
                        {"searched", d.searched},
                        {"correctable", correctable}};
    if (!o.out.empty()) {
        Output out(o.out);
        *out.os << j.dump() << "\n";
    } else {
        std::cout << "json " << j.dump() << "\n";
    }
    return correctable && distance_ok ? kOk : kCertify;
}

int cmd_sample(const std::string& method, const Options& o) {
    if (!o.seed) throw UsageError("sampling needs --seed");
    if (o.p.empty()) throw UsageError("sampling needs --p");
    if (method != "direct" && method != "stratified") throw UsageError("unknown sampler '" + method + "'");
    DecoderMode mode = decoder_from_string(o.decoder);
    Output out(o.out);
    *out.os << csv_header() << "\n";
    for (int T : o.T) {
        Experiment e = resolve(o, T);
        ErrorModel dem = build_error_model(e, o.workers);
        ExperimentDecoder dec(e, dem);
        ShotRunner runner(e, dem, dec, mode);
        const bool norm = is_idle_experiment(o.circuit) && o.rounds == 0;
        auto scale = [&](double x) { return norm ? normalize_idle(x, T) : x; };
        CsvRow row;
        row.circuit = o.circuit;
        row.T = T;
        row.idle = o.idle;
        row.postselect = mode == DecoderMode::ec_postselect;
        if (method == "direct") {
            for (std::size_t i = 0; i < o.p.size(); ++i) {
                DirectEstimate d = run_direct(runner, o.p[i], o.shots, *o.seed + i, o.workers);
                boost::math::beta_distribution<> post(0.5 + double(d.tally.failures),
                                                      0.5 + double(d.tally.accepted() - d.tally.failures));
                row.p = o.p[i];
                row.shots = d.tally.shots;
                row.failures = d.tally.failures;
                row.rejections = d.tally.rejections();
                row.p_logical = scale(d.median);
                row.sigma = scale(boost::math::standard_deviation(post));
                row.upper_bound = scale(d.ci_hi);
                row.ci_lo = scale(d.ci_lo);
                row.ci_hi = scale(d.ci_hi);
                write_csv_row(*out.os, row);
                std::cerr << o.circuit << " p=" << o.p[i] << " T=" << T << ": pre-rejected " << d.tally.pre_rejected
                          << ", post-rejected " << d.tally.post_rejected << "\n";
            }
        } else {
            StratifiedOptions so;
            so.p_grid = o.p;
            so.w_max = o.wmax;
            so.epsilon = o.epsilon;
            so.workers = o.workers;
            so.budget = o.budget;
            StratifiedEstimate est = run_stratified(runner, so, *o.seed);
            Tally tot = est.totals();
            if (!est.converged) std::cerr << "warning: not converged within the shot budget; upper_bound set to 1\n";
            for (auto& c : est.curve) {
                row.p = c.p;
                row.shots = tot.shots;
                row.failures = tot.failures;
                row.rejections = tot.rejections();
                row.p_logical = scale(c.mean);
                row.sigma = scale(c.sigma);
                row.upper_bound = est.converged ? scale(c.upper_bound) : 1.0;
                row.ci_lo = scale(std::max(0.0, c.mean - 1.96 * c.sigma));
                row.ci_hi = scale(c.mean + 1.96 * c.sigma);
                write_csv_row(*out.os, row);
            }
        }
    }
    return kOk;
}

int cmd_dumps(const std::string& what, const Options& o) {
    Experiment e = resolve(o, o.T.front());
    Output out(o.out);
    if (what == "detectors") {
        *out.os << dump_detectors(e.detectors);
    } else if (what == "table") {
        ErrorModel dem = build_error_model(e, o.workers);
        *out.os << export_table(build_lookup(dem, 1, 200'000'000, true));
    } else if (what == "faults") {
        for (auto& l : fault_locations(e.circuit, e.noise(0.0)))
            for (auto& f : enumerate_variants(e.circuit, l)) *out.os << format_fault_config(FaultConfig{{f}});
    } else if (what == "circuit") {
        *out.os << serialize_circuit(e.circuit);
    } else {
        throw UsageError("unknown dump '" + what + "'");
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pairwise-measurement circuits for small codes"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* s) {
        s->add_option("--circuit", o.circuit, "experiment name, circuit name, or circuit file");
        s->add_option("--T", o.T, "logical idles (comma list)")->delimiter(',');
        s->add_option("--rounds", o.rounds, "noisy rounds of an ideal-padded window");
        s->add_option("--idle", o.idle, "idle noise")->check(CLI::IsMember({"none", "untouched"}));
        s->add_option("--workers", o.workers, "threads (0: all cores)");
        s->add_option("--out", o.out, "output file");
    };
    std::string name, method, what;
    auto* build = app.add_subcommand("build", "write a circuit in the text format");
    build->add_option("name", name, "circuit name")->required();
    build->add_option("--out", o.out, "output file");
    auto* list = app.add_subcommand("list", "list circuit and experiment names");
    auto* certify = app.add_subcommand("certify", "detectors, degree-1 correctability and fault distance");
    common(certify);
    certify->add_option("--max-degree", o.max_degree, "largest degree searched for d_f");
    auto* sample = app.add_subcommand("sample", "estimate logical failure rates");
    sample->add_option("method", method, "direct or stratified")->required();
    common(sample);
    sample->add_option("--p", o.p, "physical error rates (comma list)")->delimiter(',');
    sample->add_option("--decoder", o.decoder, "ec or ec-postselect");
    sample->add_option("--seed", o.seed, "master seed");
    sample->add_option("--shots", o.shots, "shots per point (direct)");
    sample->add_option("--wmax", o.wmax, "largest sampled degree (stratified)");
    sample->add_option("--epsilon", o.epsilon, "relative error target (stratified)");
    sample->add_option("--budget", o.budget, "shot budget (stratified)");
    auto* dumps = app.add_subcommand("dumps", "dump detectors, lookup table, faults or circuit");
    dumps->add_option("what", what, "detectors, table, faults or circuit")->required();
    common(dumps);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }
    try {
        if (*build) return cmd_build(name, o);
        if (*list) {
            for (auto& n : circuit_names()) std::cout << "circuit " << n << "\n";
            for (auto& n : kExperimentNames) std::cout << "experiment " << n << "\n";
            return kOk;
        }
        if (o.circuit.empty()) throw UsageError("--circuit is required");
        if (*certify) return cmd_certify(o);
        if (*sample) return cmd_sample(method, o);
        if (*dumps) return cmd_dumps(what, o);
    } catch (const ResourceError& e) {
        std::cerr << "resource: " << e.what() << "\n";
        return kResource;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
