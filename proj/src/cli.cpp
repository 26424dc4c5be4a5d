#include "ptmatch/cli.hpp"

#include "ptmatch/engine.hpp"
#include "ptmatch/errors.hpp"
#include "ptmatch/io.hpp"
#include "ptmatch/oracle.hpp"
#include "ptmatch/wordgen.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace ptmatch {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitPattern = 3;
constexpr int kExitBadArgument = 4;
constexpr int kExitMismatch = 5;

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << content;
}

ParamValuation parse_valuation(const std::string& text) {
    ParamValuation v;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t eq = item.find('=');
        if (eq == std::string::npos) {
            throw DomainError("valuation entries look like name=value");
        }
        v[item.substr(0, eq)] = parse_rational(item.substr(eq + 1));
    }
    if (v.empty()) throw DomainError("empty valuation");
    return v;
}

struct RunStats {
    std::size_t states = 0;
    std::size_t matches = 0;
    double parse_seconds = 0.0;
    double comp_seconds = 0.0;
};

void print_stats_header(std::ostream& out) {
    out << "length\ttimeframe\tstates\tmatches\tparse_s\tcomp_s\n";
}

void print_stats_row(std::ostream& out, const TimedWord& w, const RunStats& stats) {
    out << w.size() << "\t" << (w.empty() ? "0" : decimal_string(w.events().back().time)) << "\t"
        << stats.states << "\t" << stats.matches << "\t" << stats.parse_seconds << "\t"
        << stats.comp_seconds << "\n";
}

std::string opt_result_text(const OptResult& result) {
    if (!result.feasible) return "infeasible: the pattern never matches";
    if (result.unbounded) {
        return result.parameter + " unbounded " +
               (result.direction == OptDirection::Max ? "above" : "below");
    }
    std::string op;
    std::string kind;
    if (result.direction == OptDirection::Min) {
        op = result.strict ? ">" : ">=";
        kind = result.strict ? "(infimum, not attained)" : "(minimum, attained)";
    } else {
        op = result.strict ? "<" : "<=";
        kind = result.strict ? "(supremum, not attained)" : "(maximum, attained)";
    }
    return result.parameter + " " + op + " " + fraction_string(*result.bound) + " " + kind;
}

// ----------------------------------------------------------------------------
// subcommands
// ----------------------------------------------------------------------------

struct MatchArgs {
    std::string pattern_path, word_path, valuation, out_path;
    bool subsumption = false;
    bool print_matches = false;
};

int cmd_match(const MatchArgs& args) {
    auto parse_start = std::chrono::steady_clock::now();
    Pta pattern = parse_pattern_text(read_file(args.pattern_path));
    TimedWord word = parse_word(read_file(args.word_path));
    RunStats stats;
    stats.parse_seconds = seconds_since(parse_start);

    EngineOptions options;
    options.subsumption = args.subsumption;

    auto comp_start = std::chrono::steady_clock::now();
    MatchSet result = args.valuation.empty()
                          ? ptpm(pattern, word, options)
                          : ptpm_fixed(pattern, word, parse_valuation(args.valuation), options);
    stats.comp_seconds = seconds_since(comp_start);
    stats.states = result.stats.states_explored;
    stats.matches = result.stats.matches;

    if (!args.out_path.empty()) {
        ResultStats file_stats{stats.states, stats.matches, stats.comp_seconds};
        write_file(args.out_path, write_result(result.set, file_stats).dump(2) + "\n");
    }
    if (args.print_matches) std::cout << result_text(result.set);
    print_stats_header(std::cout);
    print_stats_row(std::cout, word, stats);
    return kExitOk;
}

struct OptArgs {
    std::string pattern_path, word_path, parameter, direction;
};

int cmd_opt(const OptArgs& args) {
    Pta pattern = parse_pattern_text(read_file(args.pattern_path));
    TimedWord word = parse_word(read_file(args.word_path));
    OptDirection direction;
    if (args.direction == "min") direction = OptDirection::Min;
    else if (args.direction == "max") direction = OptDirection::Max;
    else throw DomainError("--direction must be min or max");

    auto comp_start = std::chrono::steady_clock::now();
    OptResult result = ptpm_opt(pattern, word, args.parameter, direction);
    double comp = seconds_since(comp_start);

    std::cout << opt_result_text(result) << "\n";
    std::cout << "states\tcomp_s\n" << result.stats.states_explored << "\t" << comp << "\n";
    return kExitOk;
}

struct OracleArgs {
    std::string pattern_path, word_path, valuation, compare_path;
};

int cmd_oracle(const OracleArgs& args) {
    Pta pattern = parse_pattern_text(read_file(args.pattern_path));
    TimedWord word = parse_word(read_file(args.word_path));
    ParamValuation v = parse_valuation(args.valuation);

    DisjPoly expected = brute_force_match_set(word, pattern, v);
    if (args.compare_path.empty()) {
        std::cout << result_text(expected);
        return kExitOk;
    }

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(args.compare_path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid result JSON: ") + e.what());
    }
    DisjPoly stored = parse_result(doc).set;
    // pin the valuation into a parametric result; fixed results already
    // live over {t, t_prime}
    for (const auto& [name, value] : v) {
        if (stored.space()->index_of(name) >= 0) stored = stored.substitute(name, value);
    }
    if (stored.space()->dim() != 2) {
        throw DomainError("compared result still has free parameters beyond t, t_prime");
    }

    DisjPoly missing = expected.difference(stored);
    DisjPoly spurious = stored.difference(expected);
    if (missing.empty_set() && spurious.empty_set()) {
        std::cout << "SEMANTICALLY-EQUAL\n";
        return kExitOk;
    }
    std::cout << "MISMATCH\n";
    if (!missing.empty_set()) {
        std::cout << "missing from stored result:\n" << result_text(missing);
    }
    if (!spurious.empty_set()) {
        std::cout << "spurious in stored result:\n" << result_text(spurious);
    }
    return kExitMismatch;
}

struct GenArgs {
    std::string mode, out_path;
    std::size_t events = 0;
    std::uint32_t seed = 1;
};

int cmd_gen(const GenArgs& args) {
    TimedWord word;
    if (args.mode == "blowup") {
        if (args.events < 2 || args.events % 2 != 0) {
            throw ParseError("--events must be even and >= 2");
        }
        word = generate_blowup_word(args.events, args.seed);
    } else if (args.mode == "gear") {
        word = generate_gear_word(args.events, args.seed);
    } else {
        throw DomainError("mode must be blowup or gear");
    }
    std::string text = write_word(word);
    if (args.out_path.empty()) std::cout << text;
    else write_file(args.out_path, text);
    return kExitOk;
}

struct ProjectArgs {
    std::string input_path, vars, box, out_path, gnuplot_path;
};

int cmd_project(const ProjectArgs& args) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(args.input_path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid result JSON: ") + e.what());
    }
    DisjPoly set = parse_result(doc).set;

    std::size_t comma = args.vars.find(',');
    if (comma == std::string::npos) throw DomainError("--vars must be two names: X,Y");
    std::string var_x = args.vars.substr(0, comma);
    std::string var_y = args.vars.substr(comma + 1);

    std::vector<Rational> box;
    std::istringstream in(args.box);
    std::string item;
    while (std::getline(in, item, ',')) box.push_back(parse_rational(item));
    if (box.size() != 4) throw DomainError("--box must be x0,x1,y0,y1");

    std::vector<Polygon2D> polygons = project_2d(set, var_x, var_y, box[0], box[1], box[2], box[3]);
    std::string csv = polygons_csv(polygons);
    if (args.out_path.empty()) std::cout << csv;
    else write_file(args.out_path, csv);
    if (!args.gnuplot_path.empty()) {
        write_file(args.gnuplot_path,
                   polygons_gnuplot(args.out_path.empty() ? "projection.csv" : args.out_path,
                                    var_x, var_y));
    }
    return kExitOk;
}

struct BenchArgs {
    std::string pattern_path, words_dir, mode = "match", parameter, direction = "min", out_path;
    bool subsumption = false;
};

int cmd_bench(const BenchArgs& args) {
    Pta pattern = parse_pattern_text(read_file(args.pattern_path));

    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(args.words_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".tw") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());

    std::ostringstream csv;
    csv << "word,length,timeframe,states,matches,result,parse_s,comp_s\n";
    std::cout << "word\tlength\ttimeframe\tstates\tmatches\tresult\tparse_s\tcomp_s\n";
    int exit_code = kExitOk;
    for (const auto& path : files) {
        try {
            auto parse_start = std::chrono::steady_clock::now();
            TimedWord word = parse_word(read_file(path.string()));
            double parse_s = seconds_since(parse_start);
            std::string timeframe = word.empty() ? "0" : decimal_string(word.events().back().time);

            auto comp_start = std::chrono::steady_clock::now();
            std::size_t states = 0, matches = 0;
            std::string outcome;
            if (args.mode == "match") {
                EngineOptions options;
                options.subsumption = args.subsumption;
                MatchSet result = ptpm(pattern, word, options);
                states = result.stats.states_explored;
                matches = result.stats.matches;
            } else if (args.mode == "opt") {
                if (args.parameter.empty()) throw DomainError("opt mode needs --param");
                OptResult result = ptpm_opt(pattern, word, args.parameter,
                                            args.direction == "max" ? OptDirection::Max
                                                                    : OptDirection::Min);
                states = result.stats.states_explored;
                outcome = opt_result_text(result);
            } else {
                throw DomainError("--mode must be match or opt");
            }
            double comp_s = seconds_since(comp_start);

            std::cout << path.filename().string() << "\t" << word.size() << "\t" << timeframe
                      << "\t" << states << "\t" << matches << "\t" << outcome << "\t" << parse_s
                      << "\t" << comp_s << "\n";
            csv << path.filename().string() << "," << word.size() << "," << timeframe << ","
                << states << "," << matches << "," << outcome << "," << parse_s << "," << comp_s
                << "\n";
        } catch (const Error& e) {
            std::cout << path.filename().string() << "\terror: " << e.what() << "\n";
            csv << path.filename().string() << ",error\n";
            if (exit_code == kExitOk) exit_code = kExitParse;
        }
    }
    if (!args.out_path.empty()) write_file(args.out_path, csv.str());
    return exit_code;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"parametric timed pattern matching over event logs"};
    app.require_subcommand(1);

    MatchArgs match_args;
    CLI::App* match = app.add_subcommand("match", "compute the full match set");
    match->add_option("--pattern", match_args.pattern_path, "pattern (.pat.json)")->required();
    match->add_option("--word", match_args.word_path, "timed word (.tw)")->required();
    match->add_option("--valuation", match_args.valuation, "fix parameters, e.g. p1=1,p2=1");
    match->add_option("--out", match_args.out_path, "result file (.match.json)");
    match->add_flag("--subsumption", match_args.subsumption, "drop included disjuncts");
    match->add_flag("--print-matches", match_args.print_matches, "print disjuncts to stdout");

    OptArgs opt_args;
    CLI::App* opt = app.add_subcommand("opt", "optimize one parameter over all matches");
    opt->add_option("--pattern", opt_args.pattern_path)->required();
    opt->add_option("--word", opt_args.word_path)->required();
    opt->add_option("--param", opt_args.parameter)->required();
    opt->add_option("--direction", opt_args.direction, "min or max")->required();

    OracleArgs oracle_args;
    CLI::App* oracle = app.add_subcommand("oracle", "brute-force check at a fixed valuation");
    oracle->add_option("--pattern", oracle_args.pattern_path)->required();
    oracle->add_option("--word", oracle_args.word_path)->required();
    oracle->add_option("--valuation", oracle_args.valuation)->required();
    oracle->add_option("--compare", oracle_args.compare_path, "stored .match.json to verify");

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "generate a benchmark word");
    gen->add_option("mode", gen_args.mode, "blowup or gear")->required();
    gen->add_option("--events", gen_args.events)->required();
    gen->add_option("--seed", gen_args.seed);
    gen->add_option("--out", gen_args.out_path);

    ProjectArgs project_args;
    CLI::App* project = app.add_subcommand("project", "project a result onto two variables");
    project->add_option("--input", project_args.input_path)->required();
    project->add_option("--vars", project_args.vars, "X,Y")->required();
    project->add_option("--box", project_args.box, "x0,x1,y0,y1")->required();
    project->add_option("--out", project_args.out_path);
    project->add_option("--gnuplot", project_args.gnuplot_path);

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "stats table over a directory of words");
    bench->add_option("--pattern", bench_args.pattern_path)->required();
    bench->add_option("--words", bench_args.words_dir)->required();
    bench->add_option("--mode", bench_args.mode, "match or opt");
    bench->add_option("--param", bench_args.parameter);
    bench->add_option("--direction", bench_args.direction);
    bench->add_option("--out", bench_args.out_path);
    bench->add_flag("--subsumption", bench_args.subsumption);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitBadArgument;
    }

    try {
        if (match->parsed()) return cmd_match(match_args);
        if (opt->parsed()) return cmd_opt(opt_args);
        if (oracle->parsed()) return cmd_oracle(oracle_args);
        if (gen->parsed()) return cmd_gen(gen_args);
        if (project->parsed()) return cmd_project(project_args);
        if (bench->parsed()) return cmd_bench(bench_args);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const PatternError& e) {
        std::cerr << "ill-formed pattern: " << e.what() << "\n";
        return kExitPattern;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadArgument;
    }
    return kExitBadArgument;
}

} // namespace ptmatch
