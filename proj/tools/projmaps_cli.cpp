// projmaps: command-line front end.
//
//   projmaps analyze <file> [--json] [--probe-primes 101,103,107] [--seed N]
//   projmaps limit <file> --c a0,...,an --b b0,...,bn
//   projmaps decompose <file> [--all-blocks]
//   projmaps verify --n N --m M --coeffs -1,0,1 [--sample K] [--seed N]
//   projmaps figure <file> --out path
//
// Exit codes: 0 success, 1 parse or usage error, 2 not a morphism,
// 3 indeterminate resultant, 4 verification counterexample, 5 other failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "projmaps/projmaps.hpp"

namespace {

using namespace projmaps;

constexpr int kOk = 0;
constexpr int kParse = 1;
constexpr int kNotMorphism = 2;
constexpr int kIndeterminate = 3;
constexpr int kCounterexample = 4;
constexpr int kFailure = 5;

int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::DegreeMismatch:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::ZeroMap: return kParse;
    case ErrorCode::NotAMorphism: return kNotMorphism;
    case ErrorCode::IndeterminateResultant: return kIndeterminate;
    default: return kFailure;
    }
}

std::string read_file(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != ' ') {
            cur += ch;
        }
    }
    if (!cur.empty() || !out.empty()) out.push_back(cur);
    return out;
}

WeightVector parse_weights(const std::string& text, const char* what) {
    WeightVector out;
    for (const auto& item : split_list(text)) {
        Rational q = parse_rational(item);
        if (q.get_den() != 1 || !q.get_num().fits_slong_p())
            throw Error(ErrorCode::ParseError, std::string(what) + " weights must be integers");
        out.push_back(q.get_num().get_si());
    }
    return out;
}

void print_text_report(const ProjectiveMap& f, const ClassificationReport& rep, const std::vector<ProbeReport>& probes) {
    std::cout << "map: " << format_map(f) << "\n";
    std::cout << "n = " << f.n() << ", m = " << f.m() << ", topological degree " << f.topological_degree().get_str()
              << "\n";
    std::cout << "resultant: " << (rep.resultant.value ? to_string(*rep.resultant.value) : "indeterminate")
              << "  (normalized so Res(x_0^m, ..., x_n^m) = 1)\n";
    std::cout << "is_morphism: " << (rep.is_morphism ? "true" : "false") << "\n";
    std::cout << "m > n+1: " << (rep.m_gt_n_plus_1 ? "true" : "false") << "\n";
    if (rep.stabilizer.unipotent_warning)
        std::cout << "warning: m <= n+1, unipotent stabilizers are not excluded\n";
    std::cout << "stabilizer: dim " << rep.stabilizer.dim << ", torus_rank " << rep.stabilizer.torus_rank << "\n";
    for (const auto& a : rep.blocks) {
        std::cout << "block V'={" << format_weights({a.block.variables.begin(), a.block.variables.end()})
                  << "} H'={" << format_weights({a.block.components.begin(), a.block.components.end()})
                  << "} [" << to_string(a.block.certified_by) << "]\n";
        std::cout << "  subgroup c=(" << format_weights(a.subgroup.c) << ") b=(" << format_weights(a.subgroup.b)
                  << ")\n";
        std::cout << "  limit " << format_map(a.limit.limit) << ", K=" << a.limit.K << ", dropped "
                  << a.limit.dropped_terms << ", limit_is_morphism "
                  << (a.limit.limit_is_morphism ? (*a.limit.limit_is_morphism ? "true" : "false") : "indeterminate")
                  << "\n";
    }
    for (const auto& o : rep.detection.obstructions)
        std::cout << "obstruction: V'={" << format_weights({o.variables.begin(), o.variables.end()}) << "} carries "
                  << o.components.size() << " components\n";
    for (const auto& p : probes)
        std::cout << "probe p=" << p.prime << ": " << p.zeros_found.size() << " common zeros\n";
    std::cout << "classification: " << to_string(rep.label);
    if (rep.label == Classification::NoDiagonalDegeneration) std::cout << " (in the given coordinates)";
    std::cout << "\n";
}

int cmd_analyze(const std::string& path, bool json, const std::string& primes_text, std::uint64_t seed,
                int coordinate_samples) {
    auto f = parse_map(read_file(path));
    ResultantOptions opts;
    opts.seed = seed;
    ClassificationReport rep;
    try {
        rep = classify(f, opts);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::IndeterminateResultant) {
            std::cerr << e.what() << "\n";
            if (json) {
                Json j;
                j["map"] = map_to_json(f);
                j["resultant"] = "indeterminate";
                j["seed"] = seed;
                std::cout << j.dump(2) << "\n";
            }
            return kIndeterminate;
        }
        throw;
    }

    std::vector<Residue> primes;
    if (!primes_text.empty()) {
        for (const auto& p : split_list(primes_text)) {
            if (p.empty()) continue;
            primes.push_back(std::stoull(p));
        }
    } else if (f.n() <= 3) {
        primes = default_probe_primes();
    }
    std::vector<ProbeReport> probes;
    for (auto p : primes) {
        try {
            probes.push_back(ff_zero_probe(f, p));
        } catch (const Error& e) {
            std::cerr << "probe skipped: " << e.what() << "\n";
        }
    }

    std::optional<CoordinateSample> sampled;
    if (coordinate_samples > 0 && rep.label == Classification::NoDiagonalDegeneration)
        sampled = sample_coordinates(f, coordinate_samples, seed, opts);

    if (json) {
        Json j = classification_to_json(f, rep);
        Json pj = Json::array();
        for (const auto& p : probes) pj.push_back(probe_to_json(p, rep.resultant));
        j["probes"] = std::move(pj);
        if (coordinate_samples > 0) {
            Json s;
            s["samples"] = coordinate_samples;
            s["found"] = sampled.has_value();
            if (sampled) s["classification"] = std::string(to_string(sampled->report.label));
            j["coordinate_sampling"] = std::move(s);
        }
        j["seed"] = seed;
        std::cout << j.dump(2) << "\n";
    } else {
        print_text_report(f, rep, probes);
        if (sampled)
            std::cout << "coordinate sampling: " << to_string(sampled->report.label)
                      << " after a random change of coordinates\n";
    }

    if (!rep.is_morphism) {
        auto unc = uncovered_vertices(rep.vertex_coverage);
        std::cerr << "NotAMorphism: the components have a common zero";
        if (!unc.empty()) {
            std::cerr << "; uncovered vertex";
            for (int i : unc) std::cerr << " " << i;
            std::cerr << " (no component contains x_i^m, so e_i is a common zero)";
        }
        std::cerr << "\n";
        return kNotMorphism;
    }
    return kOk;
}

int cmd_limit(const std::string& path, const std::string& c_text, const std::string& b_text) {
    auto f = parse_map(read_file(path));
    OnePS s{parse_weights(c_text, "--c"), parse_weights(b_text, "--b")};
    if (static_cast<int>(s.c.size()) != f.num_vars() || static_cast<int>(s.b.size()) != f.num_vars())
        throw Error(ErrorCode::DimensionMismatch,
                    "--c and --b need " + std::to_string(f.num_vars()) + " integers each");
    auto r = limit_map(f, s);
    Json j;
    j["limit"] = map_to_json(r.limit);
    j["K"] = r.K;
    j["dropped_terms"] = r.dropped_terms;
    j["support_shrank"] = r.support_shrank;
    j["limit_is_morphism"] = tri_state(r.limit_is_morphism);
    j["subgroup"] = one_ps_to_json(s);
    std::cout << j.dump(2) << "\n";
    return kOk;
}

int cmd_decompose(const std::string& path, bool all_blocks) {
    auto f = parse_map(read_file(path));
    DecompositionTree tree;
    try {
        tree = decompose_fully(f);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NotAMorphism) {
            std::cerr << e.what() << "\n";
            return kNotMorphism;
        }
        throw;
    }
    Json j = decomposition_to_json(tree);
    if (all_blocks) {
        Json types = Json::array();
        for (const auto& t : all_splitting_types(f)) types.push_back(t);
        j["all_splitting_types"] = std::move(types);
    }
    std::cout << j.dump(2) << "\n";
    return kOk;
}

int cmd_verify(int n, int m, const std::string& coeffs_text, std::optional<std::uint64_t> sample, std::uint64_t seed,
               bool allow_large, unsigned threads, bool json) {
    VerifyConfig cfg;
    cfg.n = n;
    cfg.m = m;
    cfg.coeffs.clear();
    for (const auto& c : split_list(coeffs_text)) cfg.coeffs.push_back(parse_rational(c));
    cfg.sample = sample;
    cfg.seed = seed;
    cfg.allow_large = allow_large;
    cfg.threads = threads;
    auto rep = run_verify(cfg);

    if (json) {
        Json j;
        j["n"] = n;
        j["m"] = m;
        j["mode"] = rep.exhaustive ? "exhaustive" : "sample";
        j["seed"] = seed;
        j["instances"] = rep.instances;
        j["zero_maps"] = rep.zero_maps;
        j["morphisms"] = rep.morphisms;
        j["non_morphisms"] = rep.non_morphisms;
        j["indeterminate"] = rep.indeterminate;
        Json suites = Json::array();
        for (const auto& s : rep.suites) {
            Json sj;
            sj["name"] = s.name;
            sj["checked"] = s.checked;
            sj["failures"] = s.failures;
            if (s.first_failure) {
                sj["first_failure_instance"] = *s.first_failure;
                sj["first_failure_map"] = s.first_failure_map;
            }
            suites.push_back(std::move(sj));
        }
        j["suites"] = std::move(suites);
        j["passed"] = rep.passed();
        j["timing"] = {{"seconds", rep.seconds}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "verify n=" << n << " m=" << m << " coeffs {" << coeffs_text << "} "
                  << (rep.exhaustive ? "exhaustive" : "sample") << " seed=" << seed << "\n";
        std::cout << "instances " << rep.instances << ": morphisms " << rep.morphisms << ", non-morphisms "
                  << rep.non_morphisms << ", zero maps " << rep.zero_maps << ", indeterminate " << rep.indeterminate
                  << "\n";
        for (const auto& s : rep.suites) {
            std::cout << "  " << s.name << ": " << s.checked << " checked, " << s.failures << " failures";
            if (s.first_failure) std::cout << " (first: #" << *s.first_failure << " " << s.first_failure_map << ")";
            std::cout << "\n";
        }
        std::cout << (rep.passed() ? "PASS" : "FAIL") << " (zero-failure verdict)\n";
        std::cout << "timing: " << rep.seconds << " s\n";
    }
    return rep.passed() ? kOk : kCounterexample;
}

int cmd_figure(const std::string& path, const std::string& out) {
    auto f = parse_map(read_file(path));
    Json j = figure_data(f);
    std::ofstream o(out);
    if (!o) throw Error(ErrorCode::ParseError, "cannot write '" + out + "'");
    o << j.dump(2) << "\n";
    std::cout << "wrote " << out << " (" << j["faces"].size() << " block faces"
              << (j.contains("hyperplanes") ? ", hyperplane data" : "") << ")\n";
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact analysis of homogeneous polynomial maps between projective spaces"};
    app.require_subcommand(1);

    std::string path, primes, c_text, b_text, coeffs = "0,1", out;
    bool json = false, all_blocks = false, allow_large = false;
    std::uint64_t seed = 0, sample = 0;
    int n = 1, m = 2, coordinate_samples = 0;
    unsigned threads = 0;

    auto* analyze = app.add_subcommand("analyze", "certify the morphism property and classify");
    analyze->add_option("file", path, "map document (JSON), or - for stdin")->required();
    analyze->add_flag("--json", json, "machine-readable report");
    analyze->add_option("--probe-primes", primes, "comma-separated primes for the finite-field probe");
    analyze->add_option("--seed", seed, "seed for resultant retries and coordinate sampling");
    analyze->add_option("--sample-coords", coordinate_samples, "random coordinate changes to try (heuristic)");

    auto* limit = app.add_subcommand("limit", "limit of the map under a one-parameter subgroup");
    limit->add_option("file", path)->required();
    limit->add_option("--c", c_text, "source weights c0,...,cn")->required()->allow_extra_args(false);
    limit->add_option("--b", b_text, "target weights b0,...,bn")->required()->allow_extra_args(false);

    auto* decompose = app.add_subcommand("decompose", "recursive restriction/quotient splitting");
    decompose->add_option("file", path)->required();
    decompose->add_flag("--all-blocks", all_blocks, "also list splitting types over every block choice");

    auto* verify = app.add_subcommand("verify", "check the structural laws over a box of maps");
    verify->add_option("--n", n)->required();
    verify->add_option("--m", m)->required();
    verify->add_option("--coeffs", coeffs, "coefficient set, comma-separated");
    auto* sample_opt = verify->add_option("--sample", sample, "seeded sample size instead of enumeration");
    verify->add_option("--seed", seed);
    verify->add_option("--threads", threads);
    verify->add_flag("--allow-large", allow_large, "override the 10^7 candidate guard");
    verify->add_flag("--json", json);

    auto* figure = app.add_subcommand("figure", "lattice data of Newton polytopes for n = 2");
    figure->add_option("file", path)->required();
    figure->add_option("--out", out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kParse;
    }

    try {
        if (*analyze) return cmd_analyze(path, json, primes, seed, coordinate_samples);
        if (*limit) return cmd_limit(path, c_text, b_text);
        if (*decompose) return cmd_decompose(path, all_blocks);
        if (*verify)
            return cmd_verify(n, m, coeffs, *sample_opt ? std::optional<std::uint64_t>(sample) : std::nullopt, seed,
                              allow_large, threads, json);
        if (*figure) return cmd_figure(path, out);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kOk;
}
